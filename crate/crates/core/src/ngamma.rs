//! Modules attached to chamber weights and the Hom-dimension functions they
//! define, plus the indecomposable path-algebra modules built by reflection
//! recursion.
//!
//! `nhat(gamma)` is the unique stable extended-quiver module with dimension
//! vector `(w l - l, l)` for the minimal factorization `gamma = w(l)`,
//! constructed by applying reflection functors along a reduced word of `w` to
//! the module concentrated at the primed vertices. `n_of(gamma)` drops the
//! primed part; for a non-chamber weight it is assembled as a direct sum of
//! chamber pieces over the factorization of `l` into fundamental weights.

use crate::cartan::{AdaptMode, RootSystem, RootVec, WeightVec};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::pimod::{hom_dim, KQModule, PiModule};
use crate::quiver::Quiver;
use crate::reflect::{bgp, sigma, BgpDirection};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

pub struct ModuleCtx<F: Field> {
    pub rs: RootSystem,
    pub quiver: Quiver,
    pub xquiver: Quiver,
    pub field: F,
    nhat_cache: Mutex<HashMap<Vec<i64>, Arc<PiModule<F>>>>,
    n_cache: Mutex<HashMap<Vec<i64>, Arc<PiModule<F>>>>,
    indec_cache: Mutex<HashMap<Vec<i64>, Arc<KQModule<F>>>>,
    sink_word: OnceLock<Vec<usize>>,
    source_word: OnceLock<Vec<usize>>,
}

impl<F: Field> ModuleCtx<F> {
    pub fn new(rs: RootSystem, quiver: Quiver, field: F) -> Result<Self> {
        quiver.check_orientation(rs.dynkin())?;
        let xquiver = quiver.extended();
        Ok(ModuleCtx {
            rs,
            quiver,
            xquiver,
            field,
            nhat_cache: Mutex::new(HashMap::new()),
            n_cache: Mutex::new(HashMap::new()),
            indec_cache: Mutex::new(HashMap::new()),
            sink_word: OnceLock::new(),
            source_word: OnceLock::new(),
        })
    }

    pub fn with_default_orientation(rs: RootSystem, field: F) -> Self {
        let quiver = Quiver::default_orientation(rs.dynkin(), rs.rank());
        Self::new(rs, quiver, field).expect("default orientation always matches")
    }

    pub fn sink_word(&self) -> &[usize] {
        self.sink_word
            .get_or_init(|| self.rs.adapted_word(&self.quiver, AdaptMode::Sink).expect("sink-adapted word exists"))
    }

    pub fn source_word(&self) -> &[usize] {
        self.source_word
            .get_or_init(|| self.rs.adapted_word(&self.quiver, AdaptMode::Source).expect("source-adapted word exists"))
    }

    pub fn simple(&self, v: usize) -> PiModule<F> {
        PiModule::simple(self.field.clone(), self.quiver.clone(), v)
    }

    pub fn simple_extended(&self, v: usize) -> PiModule<F> {
        PiModule::simple(self.field.clone(), self.xquiver.clone(), v)
    }

    /// The stable extended-quiver module of `gamma`, built along the canonical
    /// reduced word of the minimal `w` with `gamma = w(lambda)`.
    pub fn nhat(&self, gamma: &WeightVec) -> Arc<PiModule<F>> {
        if let Some(hit) = self.nhat_cache.lock().unwrap().get(&gamma.0) {
            return hit.clone();
        }
        let (w, lambda) = self.rs.antidominant_factorization(gamma);
        let module = Arc::new(self.nhat_along(w.word(), &lambda));
        self.nhat_cache.lock().unwrap().insert(gamma.0.clone(), module.clone());
        module
    }

    /// Same construction along an explicit reduced word (used to check that
    /// the result does not depend on the word).
    pub fn nhat_along(&self, word: &[usize], lambda: &WeightVec) -> PiModule<F> {
        assert!(self.rs.is_antidominant(lambda));
        let n = self.rs.rank();
        let mut dims = vec![0usize; 2 * n];
        for i in 0..n {
            dims[n + i] = (-lambda.0[i]) as usize;
        }
        let mut module = PiModule::zero(self.field.clone(), self.xquiver.clone(), dims);
        for &j in word.iter().rev() {
            module = sigma(&module, j).expect("reflection of a valid module");
        }
        module
    }

    /// Drops the primed vertices; valid because the reversed extension arrows
    /// act by zero on a stable module built over an antidominant weight.
    pub fn drop_primed(&self, m: &PiModule<F>) -> PiModule<F> {
        assert_eq!(m.quiver, self.xquiver);
        let n = self.rs.rank();
        let base_arrows = self.quiver.arrows.len();
        for k in 0..n {
            assert!(m.bwd[base_arrows + k].is_zero(), "extension arrow acts nontrivially");
        }
        let out = PiModule::new(
            self.field.clone(),
            self.quiver.clone(),
            m.dims[..n].to_vec(),
            m.fwd[..base_arrows].to_vec(),
            m.bwd[..base_arrows].to_vec(),
        )
        .expect("shapes restrict");
        debug_assert!(out.validate().is_ok());
        out
    }

    /// `N(gamma)`: zero for antidominant weights, the stable module with its
    /// primed part removed for chamber weights, and a direct sum of chamber
    /// pieces in general.
    pub fn n_of(&self, gamma: &WeightVec) -> Arc<PiModule<F>> {
        if let Some(hit) = self.n_cache.lock().unwrap().get(&gamma.0) {
            return hit.clone();
        }
        let (w, lambda) = self.rs.antidominant_factorization(gamma);
        let mut acc = PiModule::zero(self.field.clone(), self.quiver.clone(), vec![0; self.rs.rank()]);
        for i in 0..self.rs.rank() {
            let mult = -lambda.0[i];
            if mult == 0 {
                continue;
            }
            let piece_weight = self.rs.act_weight(&w, &self.rs.fundamental_weight(i).neg());
            let piece = self.drop_primed(&self.nhat(&piece_weight));
            for _ in 0..mult {
                acc = acc.direct_sum(&piece);
            }
        }
        let module = Arc::new(acc);
        self.n_cache.lock().unwrap().insert(gamma.0.clone(), module.clone());
        module
    }

    /// `dim Hom(N(gamma), T)`.
    pub fn d_gamma(&self, gamma: &WeightVec, t: &PiModule<F>) -> i64 {
        if self.rs.is_antidominant(gamma) {
            return 0;
        }
        hom_dim(self.n_of(gamma).as_ref(), t) as i64
    }

    /// The unique indecomposable module of the oriented quiver with the given
    /// positive root as dimension vector, by reflection recursion along the
    /// sink-adapted word.
    pub fn indecomposable(&self, beta: &RootVec) -> Result<Arc<KQModule<F>>> {
        if !self.rs.positive_roots().contains(beta) {
            return Err(Error::NotPositiveRoot(beta.0.clone()));
        }
        if let Some(hit) = self.indec_cache.lock().unwrap().get(&beta.0) {
            return Ok(hit.clone());
        }
        let word = self.sink_word().to_vec();
        let betas = beta_sequence(&self.rs, &word);
        let r = betas.iter().position(|b| b == beta).expect("positive root appears in the enumeration");
        // quivers along the reflection chain
        let mut quivers = vec![self.quiver.clone()];
        for &j in word.iter().take(r) {
            quivers.push(quivers.last().unwrap().reflect_at(j));
        }
        let mut module = KQModule::simple(self.field.clone(), quivers[r].clone(), word[r]);
        for m in (0..r).rev() {
            module = bgp(&module, word[m], BgpDirection::Minus)?;
            debug_assert_eq!(module.quiver, quivers[m]);
        }
        debug_assert_eq!(module.dimvec(), beta.0);
        debug_assert_eq!(hom_dim(&module, &module), 1);
        let module = Arc::new(module);
        self.indec_cache.lock().unwrap().insert(beta.0.clone(), module.clone());
        Ok(module)
    }
}

/// `beta_r = s_{i_1} .. s_{i_{r-1}} (alpha_{i_r})` for a reduced word of w0;
/// enumerates every positive root exactly once.
pub fn beta_sequence(rs: &RootSystem, word: &[usize]) -> Vec<RootVec> {
    let mut out = Vec::with_capacity(word.len());
    let mut prefix = rs.identity_elt();
    for (r, &i) in word.iter().enumerate() {
        out.push(rs.act_root(&prefix, &rs.simple_root(i)));
        if r + 1 < word.len() {
            prefix = rs.mul(&prefix, &rs.simple_elt(i));
        }
    }
    out
}
