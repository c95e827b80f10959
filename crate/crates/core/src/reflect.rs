//! Reflection functors on preprojective modules, the classical BGP functors on
//! path-algebra modules, and the sign-twist between the two.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::pimod::{KQModule, LocalData, PiModule};

/// Replace the space at `v` by the kernel of the aggregated incoming map; the
/// new incoming map factors the old outgoing one through that kernel and the
/// new outgoing map is the inclusion. The result has trivial socle at `v`.
pub fn sigma<F: Field>(m: &PiModule<F>, v: usize) -> Result<PiModule<F>> {
    m.validate()?;
    let ld = LocalData::at(m, v);
    let kernel = ld.m_in.kernel_basis();
    // corestriction of m_out onto the kernel: kernel * y = m_out
    let y = kernel.solve(&ld.m_out)?;
    let new_in = y.mul(&ld.m_in);
    let out = ld.reassemble(m, v, kernel.cols(), &new_in, &kernel);
    debug_assert!(out.validate().is_ok());
    debug_assert_eq!(out.socle_at(v).0, 0);
    Ok(out)
}

/// Dual construction: the space at `v` becomes the cokernel of the aggregated
/// outgoing map. The result has trivial head at `v`.
pub fn sigma_star<F: Field>(m: &PiModule<F>, v: usize) -> Result<PiModule<F>> {
    m.validate()?;
    let ld = LocalData::at(m, v);
    let f = m.field.clone();
    // projection with kernel = image of m_out
    let proj = ld.m_out.transpose().kernel_basis().transpose();
    let q = proj.rows();
    // a section of the projection, then the induced map coker -> M_v
    let section = proj.solve(&Matrix::identity(f, q))?;
    let induced_in = ld.m_in.mul(&section);
    debug_assert_eq!(induced_in.mul(&proj), ld.m_in);
    let new_out = ld.m_out.mul(&induced_in);
    let out = ld.reassemble(m, v, q, &proj, &new_out);
    debug_assert!(out.validate().is_ok());
    debug_assert_eq!(out.head_at(v).0, 0);
    Ok(out)
}

/// The canonical morphisms `sigma_star(M) -> M -> sigma(M)`: identity away
/// from `v`, the induced cokernel/kernel maps at `v`. Returns both target
/// modules along with the per-vertex matrices of the two morphisms.
pub struct CanonicalMorphisms<F: Field> {
    pub star_module: PiModule<F>,
    pub from_star: Vec<Matrix<F>>,
    pub module: PiModule<F>,
    pub to_sigma: Vec<Matrix<F>>,
}

pub fn canonical_morphisms<F: Field>(m: &PiModule<F>, v: usize) -> Result<CanonicalMorphisms<F>> {
    let f = m.field.clone();
    let ld = LocalData::at(m, v);

    let kernel = ld.m_in.kernel_basis();
    let y = kernel.solve(&ld.m_out)?;
    let new_in = y.mul(&ld.m_in);
    let sig = ld.reassemble(m, v, kernel.cols(), &new_in, &kernel);

    let proj = ld.m_out.transpose().kernel_basis().transpose();
    let q = proj.rows();
    let section = proj.solve(&Matrix::identity(f.clone(), q))?;
    let induced_in = ld.m_in.mul(&section);
    let new_out = ld.m_out.mul(&induced_in);
    let star = ld.reassemble(m, v, q, &proj, &new_out);

    let mut from_star: Vec<Matrix<F>> = (0..m.quiver.n)
        .map(|u| Matrix::identity(f.clone(), m.dims[u]))
        .collect();
    from_star[v] = induced_in;
    let mut to_sigma: Vec<Matrix<F>> = (0..m.quiver.n)
        .map(|u| Matrix::identity(f.clone(), m.dims[u]))
        .collect();
    to_sigma[v] = y;

    Ok(CanonicalMorphisms { star_module: star, from_star, module: sig, to_sigma })
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum BgpDirection {
    Plus,
    Minus,
}

/// BGP reflection at a source (`Minus`) or sink (`Plus`) of the oriented
/// quiver; the output lives over the quiver reflected at `v`.
pub fn bgp<F: Field>(m: &KQModule<F>, v: usize, dir: BgpDirection) -> Result<KQModule<F>> {
    let f = m.field.clone();
    let q = &m.quiver;
    match dir {
        BgpDirection::Minus => {
            if !q.is_source(v) {
                return Err(Error::NotSource(v));
            }
            let outgoing: Vec<usize> = (0..q.arrows.len()).filter(|&k| q.arrows[k].0 == v).collect();
            let blocks: Vec<&Matrix<F>> = outgoing.iter().map(|&k| &m.maps[k]).collect();
            let stacked = if blocks.is_empty() {
                Matrix::zero(f.clone(), 0, m.dims[v])
            } else {
                Matrix::vstack(f.clone(), &blocks)
            };
            // cokernel of the combined outgoing map
            let proj = stacked.transpose().kernel_basis().transpose();
            let new_dim = proj.rows();
            let mut dims = m.dims.clone();
            dims[v] = new_dim;
            let mut maps = m.maps.clone();
            let mut off = 0;
            for &k in &outgoing {
                let t = q.arrows[k].1;
                // new arrow t -> v: include the summand, then project
                maps[k] = proj.col_slice(off, off + m.dims[t]);
                off += m.dims[t];
            }
            KQModule::new(f, q.reflect_at(v), dims, maps)
        }
        BgpDirection::Plus => {
            if !q.is_sink(v) {
                return Err(Error::NotSink(v));
            }
            let incoming: Vec<usize> = (0..q.arrows.len()).filter(|&k| q.arrows[k].1 == v).collect();
            let blocks: Vec<&Matrix<F>> = incoming.iter().map(|&k| &m.maps[k]).collect();
            let joined = if blocks.is_empty() {
                Matrix::zero(f.clone(), m.dims[v], 0)
            } else {
                Matrix::hstack(f.clone(), &blocks)
            };
            // kernel of the combined incoming map
            let kernel = joined.kernel_basis();
            let new_dim = kernel.cols();
            let mut dims = m.dims.clone();
            dims[v] = new_dim;
            let mut maps = m.maps.clone();
            let mut off = 0;
            for &k in &incoming {
                let s = q.arrows[k].0;
                // new arrow v -> s: the kernel inclusion followed by projection
                maps[k] = kernel.row_slice(off, off + m.dims[s]);
                off += m.dims[s];
            }
            KQModule::new(f, q.reflect_at(v), dims, maps)
        }
    }
}

/// Pull back along the algebra isomorphism that negates every doubled arrow
/// terminating at the source `v` and reclassifies the arrows at `v`. The
/// result is a valid module over the preprojective algebra of the reflected
/// quiver with the same underlying matrices up to sign.
pub fn upsilon_pullback<F: Field>(m: &PiModule<F>, v: usize) -> Result<PiModule<F>> {
    let q = &m.quiver;
    if !q.is_source(v) {
        return Err(Error::NotSource(v));
    }
    let reflected = q.reflect_at(v);
    let mut fwd = Vec::with_capacity(q.arrows.len());
    let mut bwd = Vec::with_capacity(q.arrows.len());
    for (k, &(s, _)) in q.arrows.iter().enumerate() {
        if s == v {
            // arrow k: v -> t becomes k': t -> v. In the doubled quiver the
            // arrow terminating at v is the old reversal; it picks up the sign.
            fwd.push(m.bwd[k].neg());
            bwd.push(m.fwd[k].clone());
        } else {
            fwd.push(m.fwd[k].clone());
            bwd.push(m.bwd[k].clone());
        }
    }
    let out = PiModule::new(m.field.clone(), reflected, m.dims.clone(), fwd, bwd)?;
    out.validate()?;
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::pimod::{hom_dim, is_isomorphic, is_module_map};
    use crate::quiver::Quiver;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp() -> PrimeField {
        PrimeField::default_prime()
    }

    fn a3q() -> Quiver {
        Quiver::new(3, vec![(1, 0), (1, 2)])
    }

    #[test]
    fn sigma_of_zero_and_simple() {
        let f = fp();
        let z = PiModule::zero(f, a3q(), vec![0, 0, 0]);
        assert_eq!(sigma(&z, 1).unwrap().dims, vec![0, 0, 0]);
        assert_eq!(sigma_star(&z, 1).unwrap().dims, vec![0, 0, 0]);
        // sigma kills the simple at its own vertex
        let s = PiModule::simple(f, a3q(), 1);
        assert_eq!(sigma(&s, 1).unwrap().total_dim(), 0);
        assert_eq!(sigma_star(&s, 1).unwrap().total_dim(), 0);
    }

    #[test]
    fn sigma_on_semisimple_builds_the_two_arrow_module() {
        let f = fp();
        let s1 = PiModule::simple(f, a3q(), 0);
        let s3 = PiModule::simple(f, a3q(), 2);
        let m = s1.direct_sum(&s3);
        let out = sigma(&m, 1).unwrap();
        assert_eq!(out.dims, vec![1, 2, 1]);
        assert_eq!(out.socle_at(1).0, 0);
        assert_eq!(out.head_at(0).0, 1);
        assert_eq!(out.head_at(2).0, 1);
        // and sigma_star builds the dual shape
        let out2 = sigma_star(&m, 1).unwrap();
        assert_eq!(out2.dims, vec![1, 2, 1]);
        assert_eq!(out2.head_at(1).0, 0);
    }

    #[test]
    fn canonical_morphisms_are_morphisms() {
        let f = fp();
        let s1 = PiModule::simple(f, a3q(), 0);
        let s3 = PiModule::simple(f, a3q(), 2);
        let m = s1.direct_sum(&s3);
        let cm = canonical_morphisms(&m, 1).unwrap();
        assert!(is_module_map(&cm.star_module, &m, &cm.from_star));
        assert!(is_module_map(&m, &cm.module, &cm.to_sigma));

        // with trivial socle at v the map into sigma is injective
        let hex = {
            let fwd = vec![Matrix::from_i64(f, 1, 2, &[1, 0]), Matrix::from_i64(f, 1, 2, &[1, 0])];
            let bwd = vec![Matrix::from_i64(f, 2, 1, &[0, 1]), Matrix::from_i64(f, 2, 1, &[0, -1])];
            PiModule::new(f, a3q(), vec![1, 2, 1], fwd, bwd).unwrap()
        };
        let m2 = sigma(&hex, 1).unwrap(); // trivial 1-socle by construction
        let cm2 = canonical_morphisms(&m2, 1).unwrap();
        let total_rank: usize = cm2.to_sigma.iter().map(|m| m.rank()).sum();
        assert_eq!(total_rank, m2.total_dim());
    }

    #[test]
    fn bgp_on_a2() {
        let f = fp();
        let q = Quiver::new(2, vec![(0, 1)]);
        // source 0: the simple there dies
        let s1 = KQModule::simple(f, q.clone(), 0);
        let out = bgp(&s1, 0, BgpDirection::Minus).unwrap();
        assert_eq!(out.total_dim(), 0);
        // the full indecomposable reflects to the simple
        let m = KQModule::new(f, q.clone(), vec![1, 1], vec![Matrix::from_i64(f, 1, 1, &[1])]).unwrap();
        let out = bgp(&m, 0, BgpDirection::Minus).unwrap();
        assert_eq!(out.dimvec(), vec![0, 1]);
        // zero maps to zero
        let z = KQModule::zero(f, q.clone(), vec![0, 0]);
        assert_eq!(bgp(&z, 0, BgpDirection::Minus).unwrap().total_dim(), 0);
        // direction preconditions
        assert!(bgp(&s1, 1, BgpDirection::Minus).is_err());
        assert!(bgp(&s1, 0, BgpDirection::Plus).is_err());
    }

    #[test]
    fn upsilon_squares_to_identity_on_matrices() {
        let f = fp();
        let q = Quiver::new(2, vec![(0, 1)]);
        let m = PiModule::new(
            f,
            q.clone(),
            vec![1, 1],
            vec![Matrix::from_i64(f, 1, 1, &[3])],
            vec![Matrix::zero(f, 1, 1)],
        )
        .unwrap();
        let once = upsilon_pullback(&m, 0).unwrap();
        assert_eq!(once.quiver, q.reflect_at(0));
        let twice = upsilon_pullback(&once, 1).unwrap();
        assert_eq!(twice.quiver, q);
        assert_eq!(twice.fwd, m.fwd);
        assert_eq!(twice.bwd, m.bwd);

        let z = PiModule::zero(f, q.clone(), vec![1, 2]);
        let pulled = upsilon_pullback(&z, 0).unwrap();
        assert!(pulled.fwd.iter().all(|m| m.is_zero()));
    }

    #[test]
    fn bgp_matches_sigma_through_the_twist() {
        // On a random valid A2 module T over Q with source 0:
        // bgp_plus of (upsilon-pullback of T restricted) = (sigma T) restricted.
        let f = fp();
        let q = Quiver::new(2, vec![(0, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for seed in 0..20u64 {
            let t = crate::sampler::random_pi_module(&f, &q, 3, seed);
            let lhs = bgp(&upsilon_pullback(&t, 0).unwrap().restrict_to_q(), 0, BgpDirection::Plus).unwrap();
            let rhs = sigma(&t, 0).unwrap().restrict_to_q();
            assert_eq!(lhs.quiver, rhs.quiver);
            assert!(
                matches!(is_isomorphic(&lhs, &rhs, 12, &mut rng), crate::pimod::IsoVerdict::Yes),
                "twist comparison failed at seed {seed}"
            );
        }
    }

    #[test]
    fn adjunction_and_dimension_laws_smoke() {
        let f = fp();
        let q = a3q();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for seed in 0..10u64 {
            let m = crate::sampler::random_pi_module(&f, &q, 3, seed);
            let n = crate::sampler::random_pi_module(&f, &q, 3, seed + 1000);
            for v in 0..3 {
                assert_eq!(hom_dim(&m, &sigma(&n, v).unwrap()), hom_dim(&sigma_star(&m, v).unwrap(), &n));
                let soc = m.socle_at(v).0 as i64;
                let hd = m.head_at(v).0 as i64;
                let mut soc_vec = m.dimvec();
                soc_vec[v] -= soc;
                let mut hd_vec = m.dimvec();
                hd_vec[v] -= hd;
                assert_eq!(sigma(&sigma_star(&m, v).unwrap(), v).unwrap().dimvec(), soc_vec);
                assert_eq!(sigma_star(&sigma(&m, v).unwrap(), v).unwrap().dimvec(), hd_vec);
            }
            let _ = &mut rng;
        }
    }
}
