//! Generic points of the irreducible components of the relation variety via
//! the conormal construction: freeze the path-algebra part, solve the linear
//! system the relations impose on the reversed maps, and draw random kernel
//! elements. Component hyperplane data are entrywise minima over samples.

use crate::cartan::AdaptMode;
use crate::crystal::CrystalElt;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::ngamma::{beta_sequence, ModuleCtx};
use crate::pimod::{hom_dim, KQModule, PiModule};
use crate::polytope::{lusztig_datum, polytope_of_module, validate_bz, HyperplaneDatum};
use crate::quiver::Quiver;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// The linear system on the reversed-arrow maps cut out by the preprojective
/// relations once the forward maps are frozen. Unknowns are the entries of the
/// reversed matrices, arrow by arrow, row-major.
fn conormal_system<F: Field>(x: &KQModule<F>) -> (Matrix<F>, Vec<usize>) {
    let f = x.field.clone();
    let q = &x.quiver;
    let dims = &x.dims;
    let mut offsets = Vec::with_capacity(q.arrows.len());
    let mut total = 0usize;
    for &(s, t) in &q.arrows {
        offsets.push(total);
        total += dims[s] * dims[t];
    }
    let rows: usize = dims.iter().map(|d| d * d).sum();
    let mut sys = Matrix::zero(f.clone(), rows, total);
    let mut row_base = 0usize;
    for v in 0..q.n {
        let dv = dims[v];
        for (k, &(s, t)) in q.arrows.iter().enumerate() {
            let xk = &x.maps[k];
            if t == v {
                // + X_k * Y_k, coefficient of Y_k[w, c] in entry (r, c)
                for r in 0..dv {
                    for c in 0..dv {
                        for w in 0..dims[s] {
                            let coeff = xk.get(r, w).clone();
                            if f.is_zero(&coeff) {
                                continue;
                            }
                            let col = offsets[k] + w * dims[t] + c;
                            let row = row_base + r * dv + c;
                            let prev = sys.get(row, col).clone();
                            sys.set(row, col, f.add(&prev, &coeff));
                        }
                    }
                }
            }
            if s == v {
                // - Y_k * X_k, coefficient of Y_k[r, w] in entry (r, c)
                for r in 0..dv {
                    for c in 0..dv {
                        for w in 0..dims[t] {
                            let coeff = f.neg(xk.get(w, c));
                            if f.is_zero(&coeff) {
                                continue;
                            }
                            let col = offsets[k] + r * dims[t] + w;
                            let row = row_base + r * dv + c;
                            let prev = sys.get(row, col).clone();
                            sys.set(row, col, f.add(&prev, &coeff));
                        }
                    }
                }
            }
        }
        row_base += dv * dv;
    }
    (sys, offsets)
}

/// A random point of the conormal fiber over `x`: reversed maps drawn from the
/// kernel of the relation system. The result restricts back to `x`.
pub fn conormal_sample<F: Field>(x: &KQModule<F>, seed: u64) -> PiModule<F> {
    let f = x.field.clone();
    let q = &x.quiver;
    let (sys, offsets) = conormal_system(x);
    let solution = sys.random_kernel_element(seed);
    let bwd: Vec<Matrix<F>> = q
        .arrows
        .iter()
        .enumerate()
        .map(|(k, &(s, t))| {
            Matrix::from_fn(f.clone(), x.dims[s], x.dims[t], |r, c| {
                solution[offsets[k] + r * x.dims[t] + c].clone()
            })
        })
        .collect();
    let m = x.embed(bwd).expect("kernel elements satisfy the relations");
    m
}

/// Random path-algebra module: given dimensions, uniform forward maps.
pub fn random_kq_module<F: Field>(field: &F, quiver: &Quiver, dims: &[usize], rng: &mut impl Rng) -> KQModule<F> {
    let maps = quiver
        .arrows
        .iter()
        .map(|&(s, t)| Matrix::from_fn(field.clone(), dims[t], dims[s], |_, _| field.sample(rng)))
        .collect();
    KQModule::new(field.clone(), quiver.clone(), dims.to_vec(), maps).expect("shapes by construction")
}

/// Random valid preprojective module: random dimensions and forward maps, then
/// a random conormal point over them. Deterministic in the seed.
pub fn random_pi_module<F: Field>(field: &F, quiver: &Quiver, max_dim: usize, seed: u64) -> PiModule<F> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let dims: Vec<usize> = (0..quiver.n).map(|_| rng.gen_range(0..=max_dim)).collect();
    let x = random_kq_module(field, quiver, &dims, &mut rng);
    conormal_sample(&x, rng.gen())
}

/// Direct sum of indecomposables with the multiplicities of the component's
/// tuple in a sink-adapted word: the distinguished point of the orbit whose
/// conormal closure is the component.
pub fn generic_kq_point<F: Field>(ctx: &ModuleCtx<F>, b: &CrystalElt, word: &[usize]) -> Result<KQModule<F>> {
    // the word must be sink-adapted to the orientation
    let mut q = ctx.quiver.clone();
    for &c in word {
        if !q.is_sink(c) {
            return Err(Error::NotAdapted);
        }
        q = q.reflect_at(c);
    }
    let tuple = lusztig_datum(&ctx.rs, &b.datum, word)?;
    let betas = beta_sequence(&ctx.rs, word);
    let mut acc = KQModule::zero(ctx.field.clone(), ctx.quiver.clone(), vec![0; ctx.rs.rank()]);
    for (r, beta) in betas.iter().enumerate() {
        if tuple.n[r] == 0 {
            continue;
        }
        let piece = ctx.indecomposable(beta)?;
        for _ in 0..tuple.n[r] {
            acc = acc.direct_sum(&piece);
        }
    }
    Ok(acc)
}

/// Estimated generic hyperplane datum of the component of `b`: entrywise
/// minimum of the module data over `k` conormal samples (Hom dimensions are
/// upper semicontinuous, so the generic value is the minimum). Per-sample
/// seeds come from distinct streams of one master generator.
pub fn component_bz<F: Field>(ctx: &ModuleCtx<F>, b: &CrystalElt, k: usize, master_seed: u64) -> Result<HyperplaneDatum> {
    assert!(k >= 1);
    let word = ctx.sink_word().to_vec();
    let x = generic_kq_point(ctx, b, &word)?;
    let mut best: Option<HyperplaneDatum> = None;
    for s in 0..k {
        let mut rng = ChaCha8Rng::seed_from_u64(master_seed);
        rng.set_stream(s as u64);
        let t = conormal_sample(&x, rng.gen());
        let datum = polytope_of_module(ctx, &t);
        best = Some(match best {
            None => datum,
            Some(acc) => acc.entrywise_min(&datum),
        });
    }
    let datum = best.unwrap();
    if !validate_bz(&ctx.rs, &datum)?.is_valid() {
        return Err(Error::SamplingFailed);
    }
    Ok(datum)
}

/// Samples grouped by their exact hyperplane datum.
#[derive(Clone, Debug)]
pub struct StrataReport {
    pub total: usize,
    pub strata: Vec<(HyperplaneDatum, usize)>,
}

pub fn stratify<F: Field>(ctx: &ModuleCtx<F>, samples: &[PiModule<F>]) -> Result<StrataReport> {
    use std::collections::BTreeMap;
    if let Some(first) = samples.first() {
        if samples.iter().any(|m| m.dims != first.dims) {
            return Err(Error::Invalid("mixed dimension-vectors".into()));
        }
    }
    let mut groups: BTreeMap<HyperplaneDatum, usize> = BTreeMap::new();
    for m in samples {
        let datum = polytope_of_module(ctx, m);
        debug_assert_eq!(datum.weight(&ctx.rs).unwrap().0, m.dimvec());
        *groups.entry(datum).or_insert(0) += 1;
    }
    Ok(StrataReport { total: samples.len(), strata: groups.into_iter().collect() })
}

#[derive(Clone, Copy, Debug)]
pub struct DimensionAudit {
    pub orbit_dim: i64,
    pub fiber_dim: i64,
    pub rep_dim: i64,
    pub lagrangian_dim: i64,
}

impl DimensionAudit {
    pub fn ok(&self) -> bool {
        self.orbit_dim + self.fiber_dim == self.rep_dim && self.orbit_dim + self.fiber_dim == self.lagrangian_dim
    }
}

/// Exact integer accounting: orbit dimension plus conormal fiber dimension
/// must equal both the dimension of the representation space and the common
/// dimension of the relation variety's components.
pub fn dimension_audit<F: Field>(x: &KQModule<F>) -> Result<DimensionAudit> {
    let q = &x.quiver;
    let nu = x.dimvec();
    let g_dim: i64 = nu.iter().map(|d| d * d).sum();
    let rep_dim: i64 = q.arrows.iter().map(|&(s, t)| nu[s] * nu[t]).sum();
    let (sys, _) = conormal_system(x);
    let fiber_dim = sys.cols() as i64 - sys.rank() as i64;
    let orbit_dim = g_dim - hom_dim(x, x) as i64;
    let lagrangian_dim = g_dim - q.sym_form(&nu, &nu) / 2;
    let audit = DimensionAudit { orbit_dim, fiber_dim, rep_dim, lagrangian_dim };
    if !audit.ok() {
        return Err(Error::Invalid(format!("dimension audit mismatch: {audit:?}")));
    }
    Ok(audit)
}

/// Adapted-word convenience used by callers that only have a context.
pub fn sink_word<F: Field>(ctx: &ModuleCtx<F>) -> Vec<usize> {
    ctx.rs
        .adapted_word(&ctx.quiver, AdaptMode::Sink)
        .expect("sink-adapted word exists")
}
