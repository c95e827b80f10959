//! Exact-arithmetic calculus for modules over preprojective algebras of ADE
//! quivers and the polytope combinatorics attached to them: reflection
//! functors, chamber-weight modules and their Hom-dimension functions, BZ data
//! with tropical relations, crystal operators, and conormal sampling of
//! generic component points — with the two sides cross-validating each other.
//!
//! The core is generic over the scalar field through [`field::Field`]; the
//! default instantiation is the prime field [`Fp`], with exact rationals
//! ([`Rat`]) as an independent oracle for cross-field checks.

pub mod cartan;
pub mod crystal;
pub mod error;
pub mod field;
pub mod json;
pub mod linalg;
pub mod ngamma;
pub mod pimod;
pub mod polytope;
pub mod quiver;
pub mod reflect;
pub mod sampler;
pub mod verify;

pub use error::{Error, Result};
pub use field::{Field, PrimeField, Rationals, DEFAULT_PRIME};

/// Prime-field scalar context (the production mode).
pub type Fp = field::PrimeField;
/// Exact-rational scalar context (the cross-check oracle).
pub type Rat = field::Rationals;

pub type FpMatrix = linalg::Matrix<Fp>;
pub type RatMatrix = linalg::Matrix<Rat>;
pub type FpPiModule = pimod::PiModule<Fp>;
pub type RatPiModule = pimod::PiModule<Rat>;
pub type FpKQModule = pimod::KQModule<Fp>;
pub type RatKQModule = pimod::KQModule<Rat>;
pub type FpCtx = ngamma::ModuleCtx<Fp>;
pub type RatCtx = ngamma::ModuleCtx<Rat>;
