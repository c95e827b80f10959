//! Pseudo-Weyl polytopes by hyperplane and vertex data, edge inequalities,
//! tropical relations over hexagons, and the piecewise-linear parametrizations
//! by reduced words of the longest element.

use crate::cartan::{Hexagon, RootSystem, RootVec, WeightVec, WordMove};
use crate::error::{Error, Result};
use crate::field::{Field, Rationals};
use crate::linalg::Matrix;
use crate::ngamma::{beta_sequence, ModuleCtx};
use crate::pimod::PiModule;

/// Total map from the chamber weights to the integers, laid out in the root
/// system's canonical chamber order.
#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct HyperplaneDatum {
    pub values: Vec<i64>,
}

impl HyperplaneDatum {
    pub fn zero(rs: &RootSystem) -> Self {
        HyperplaneDatum { values: vec![0; rs.chamber_weights().len()] }
    }

    pub fn get(&self, rs: &RootSystem, gamma: &WeightVec) -> i64 {
        let idx = rs.chamber_index(gamma).expect("not a chamber weight");
        self.values[idx]
    }

    pub fn set(&mut self, rs: &RootSystem, gamma: &WeightVec, value: i64) {
        let idx = rs.chamber_index(gamma).expect("not a chamber weight");
        self.values[idx] = value;
    }

    pub fn entrywise_min(&self, other: &Self) -> Self {
        HyperplaneDatum {
            values: self.values.iter().zip(&other.values).map(|(a, b)| *a.min(b)).collect(),
        }
    }

    /// The vertex at the antidominant chamber, i.e. the weight of the polytope.
    pub fn weight(&self, rs: &RootSystem) -> Result<RootVec> {
        solve_vertex(rs, self, rs.w0())
    }
}

/// Vertices indexed by Weyl group elements (enumeration order).
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct VertexDatum {
    pub mu: Vec<RootVec>,
}

/// A reduced word of the longest element together with a nonnegative tuple.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LusztigDatum {
    pub word: Vec<usize>,
    pub n: Vec<i64>,
}

impl LusztigDatum {
    pub fn new(rs: &RootSystem, word: Vec<usize>, n: Vec<i64>) -> Result<Self> {
        if word.len() != rs.num_positive_roots() || &rs.from_word(&word) != rs.w0() {
            return Err(Error::NotReducedWord(word));
        }
        if n.len() != word.len() || n.iter().any(|&v| v < 0) {
            return Err(Error::Invalid(format!("bad Lusztig tuple {n:?}")));
        }
        Ok(LusztigDatum { word, n })
    }

    pub fn weight(&self, rs: &RootSystem) -> RootVec {
        let betas = beta_sequence(rs, &self.word);
        let mut acc = RootVec::zero(rs.rank());
        for (nk, beta) in self.n.iter().zip(&betas) {
            acc = acc.add(&RootVec(beta.0.iter().map(|c| c * nk).collect()));
        }
        acc
    }
}

/// `A_gamma = dim Hom(N(gamma), T)` over all chamber weights.
pub fn polytope_of_module<F: Field>(ctx: &ModuleCtx<F>, t: &PiModule<F>) -> HyperplaneDatum {
    let values = ctx
        .rs
        .chamber_weights()
        .iter()
        .map(|gamma| ctx.d_gamma(gamma, t))
        .collect::<Vec<_>>()
        .to_vec();
    HyperplaneDatum { values }
}

/// First failing edge inequality, if any.
pub fn edge_check(rs: &RootSystem, a: &HyperplaneDatum) -> Result<()> {
    let elts = rs.elements()?;
    for ineq in rs.edge_ineqs()? {
        let mut v = a.values[ineq.pos[0]] + a.values[ineq.pos[1]];
        for &ni in &ineq.neg {
            v -= a.values[ni];
        }
        if v < 0 {
            return Err(Error::NotPseudoWeyl {
                word: elts[ineq.w].word().to_vec(),
                i: ineq.i,
                value: v,
            });
        }
    }
    Ok(())
}

#[derive(Clone, Debug, Default)]
pub struct BzReport {
    /// chamber indices of nonzero values at the antidominant fundamental weights
    pub bz1_failures: Vec<usize>,
    /// (Weyl index, vertex) of failing edge inequalities
    pub edge_failures: Vec<(usize, usize)>,
    /// indices into the hexagon list where the tropical relation fails
    pub violated_hexagons: Vec<usize>,
}

impl BzReport {
    pub fn is_valid(&self) -> bool {
        self.bz1_failures.is_empty() && self.edge_failures.is_empty() && self.violated_hexagons.is_empty()
    }
}

pub fn tropical_relation_holds(a: &HyperplaneDatum, h: &Hexagon) -> bool {
    let lhs = a.values[h.lhs[0]] + a.values[h.lhs[1]];
    let rhs = (a.values[h.rhs_a[0]] + a.values[h.rhs_a[1]]).max(a.values[h.rhs_b[0]] + a.values[h.rhs_b[1]]);
    lhs == rhs
}

/// Exhaustive BZ check: zero at antidominant fundamental weights, the edge
/// inequalities, and the tropical relation at every hexagon.
pub fn validate_bz(rs: &RootSystem, a: &HyperplaneDatum) -> Result<BzReport> {
    let mut report = BzReport::default();
    for i in 0..rs.rank() {
        let gamma = rs.fundamental_weight(i).neg();
        let idx = rs.chamber_index(&gamma).unwrap();
        if a.values[idx] != 0 {
            report.bz1_failures.push(idx);
        }
    }
    for ineq in rs.edge_ineqs()? {
        let mut v = a.values[ineq.pos[0]] + a.values[ineq.pos[1]];
        for &ni in &ineq.neg {
            v -= a.values[ni];
        }
        if v < 0 {
            report.edge_failures.push((ineq.w, ineq.i));
        }
    }
    for (hi, h) in rs.hexagons()?.iter().enumerate() {
        if !tropical_relation_holds(a, h) {
            report.violated_hexagons.push(hi);
        }
    }
    Ok(report)
}

/// The vertex of the chamber of `w`: the unique solution of the rank-many
/// equations `<-w w_i, mu> = A_{-w w_i}`. Integral because the system is
/// unimodular over the weight basis.
pub fn solve_vertex(rs: &RootSystem, a: &HyperplaneDatum, w: &crate::cartan::WeylElt) -> Result<RootVec> {
    let n = rs.rank();
    let f = Rationals;
    let mut rows = Vec::with_capacity(n);
    let mut rhs = Vec::with_capacity(n);
    for i in 0..n {
        let gamma = rs.act_weight(w, &rs.fundamental_weight(i)).neg();
        rows.push(gamma.0.clone());
        let idx = rs
            .chamber_index(&gamma)
            .ok_or_else(|| Error::Invalid("vertex equation outside the chamber set".into()))?;
        rhs.push(a.values[idx]);
    }
    let lhs = Matrix::from_rows(f, &rows);
    let rhs = Matrix::col_vec(f, &rhs);
    let x = lhs.solve(&rhs)?;
    let mut mu = Vec::with_capacity(n);
    for i in 0..n {
        mu.push(
            f.to_i64(x.get(i, 0))
                .ok_or_else(|| Error::Invalid("non-integral vertex".into()))?,
        );
    }
    Ok(RootVec(mu))
}

/// All vertices; requires the edge inequalities (a pseudo-Weyl polytope).
pub fn vertices_from_hyperplanes(rs: &RootSystem, a: &HyperplaneDatum) -> Result<VertexDatum> {
    edge_check(rs, a)?;
    let mu = rs
        .elements()?
        .iter()
        .map(|w| solve_vertex(rs, a, w))
        .collect::<Result<Vec<_>>>()?;
    Ok(VertexDatum { mu })
}

/// Reads the tuple of a hyperplane datum along a reduced word of w0 from the
/// successive vertex differences down the corresponding path of chambers.
pub fn lusztig_datum(rs: &RootSystem, a: &HyperplaneDatum, word: &[usize]) -> Result<LusztigDatum> {
    if word.len() != rs.num_positive_roots() || &rs.from_word(word) != rs.w0() {
        return Err(Error::NotReducedWord(word.to_vec()));
    }
    edge_check(rs, a)?;
    let betas = beta_sequence(rs, word);
    let mut n = Vec::with_capacity(word.len());
    let mut prefix = rs.identity_elt();
    let mut prev = solve_vertex(rs, a, rs.w0())?;
    for (k, &j) in word.iter().enumerate() {
        prefix = rs.mul(&prefix, &rs.simple_elt(j));
        let wk = rs.mul(&prefix, rs.w0());
        let cur = solve_vertex(rs, a, &wk)?;
        let diff = prev.sub(&cur);
        let beta = &betas[k];
        let pivot = beta.0.iter().position(|&c| c != 0).expect("zero root");
        let q = diff.0[pivot] / beta.0[pivot];
        let expect = RootVec(beta.0.iter().map(|c| c * q).collect());
        if expect != diff {
            return Err(Error::NonCollinear { diff: diff.0, root: beta.0.clone() });
        }
        if q < 0 {
            return Err(Error::Invalid(format!("negative edge length {q} at position {k}")));
        }
        n.push(q);
        prev = cur;
    }
    Ok(LusztigDatum { word: word.to_vec(), n })
}

fn apply_move_to_tuple(n: &mut [i64], mv: WordMove) {
    match mv {
        WordMove::Swap(k) => n.swap(k, k + 1),
        WordMove::Braid(k) => {
            let (p, q, r) = (n[k], n[k + 1], n[k + 2]);
            let q2 = p.min(r);
            n[k] = r + q - q2;
            n[k + 1] = q2;
            n[k + 2] = p + q - q2;
        }
    }
}

/// The transitioned tuple at every node of the reduced-word graph of w0,
/// indexed like the graph. One breadth-first pass from the datum's word.
pub fn transitions_to_all_words(rs: &RootSystem, datum: &LusztigDatum) -> Result<Vec<Vec<i64>>> {
    let graph = rs.w0_word_graph();
    let src = *graph
        .index
        .get(&datum.word)
        .ok_or_else(|| Error::NotReducedWord(datum.word.clone()))?;
    let mut tuples: Vec<Option<Vec<i64>>> = vec![None; graph.words.len()];
    tuples[src] = Some(datum.n.clone());
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(src);
    while let Some(cur) = queue.pop_front() {
        let base = tuples[cur].clone().unwrap();
        for &(next, mv) in &graph.edges[cur] {
            if tuples[next].is_none() {
                let mut t = base.clone();
                apply_move_to_tuple(&mut t, mv);
                tuples[next] = Some(t);
                queue.push_back(next);
            }
        }
    }
    Ok(tuples.into_iter().map(|t| t.expect("word graph is connected")).collect())
}

/// Piecewise-linear change of parametrization between reduced words, composed
/// along braid moves.
pub fn transition(rs: &RootSystem, datum: &LusztigDatum, target: &[usize]) -> Result<LusztigDatum> {
    if target.len() != rs.num_positive_roots() || &rs.from_word(target) != rs.w0() {
        return Err(Error::NotReducedWord(target.to_vec()));
    }
    if target == datum.word.as_slice() {
        return Ok(datum.clone());
    }
    let graph = rs.w0_word_graph();
    let tuples = transitions_to_all_words(rs, datum)?;
    let tgt = *graph
        .index
        .get(target)
        .ok_or_else(|| Error::NotReducedWord(target.to_vec()))?;
    Ok(LusztigDatum { word: target.to_vec(), n: tuples[tgt].clone() })
}

/// Rebuilds the hyperplane datum of a Lusztig datum: for every Weyl element,
/// transition to a word extending `w w0`, read the vertex by partial sums of
/// the root enumeration, and pair against the chamber weights of `w`.
pub fn polytope_from_lusztig(rs: &RootSystem, datum: &LusztigDatum) -> Result<HyperplaneDatum> {
    let elts = rs.elements()?;
    let graph = rs.w0_word_graph();
    let tuples = transitions_to_all_words(rs, datum)?;
    let mut a = HyperplaneDatum::zero(rs);
    let mut written = vec![false; a.values.len()];
    for (wi, w) in elts.iter().enumerate() {
        let (k, jword) = rs.ext_word(wi)?;
        let node = *graph.index.get(jword).expect("extension word is reduced");
        let n = &tuples[node];
        let betas = beta_sequence(rs, jword);
        let mut mu = RootVec::zero(rs.rank());
        for r in *k..jword.len() {
            if n[r] != 0 {
                mu = mu.add(&RootVec(betas[r].0.iter().map(|c| c * n[r]).collect()));
            }
        }
        for i in 0..rs.rank() {
            let gamma = rs.act_weight(w, &rs.fundamental_weight(i)).neg();
            let idx = rs.chamber_index(&gamma).unwrap();
            let value = rs.pair(&gamma, &mu);
            if written[idx] {
                debug_assert_eq!(a.values[idx], value, "inconsistent hyperplane rebuild");
            } else {
                a.values[idx] = value;
                written[idx] = true;
            }
        }
    }
    debug_assert!(written.iter().all(|&b| b));
    Ok(a)
}

/// The datum of the dual module side: `A*_gamma = A_{-gamma} + <gamma, wt>`.
/// Involutive; for module polytopes this is the polytope of the dual module.
pub fn star(rs: &RootSystem, a: &HyperplaneDatum) -> Result<HyperplaneDatum> {
    let nu = a.weight(rs)?;
    let mut out = HyperplaneDatum::zero(rs);
    for (idx, gamma) in rs.chamber_weights().iter().enumerate() {
        let neg_idx = rs.chamber_index(&gamma.neg()).expect("chamber weights are symmetric");
        out.values[idx] = a.values[neg_idx] + rs.pair(gamma, &nu);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::Family;
    use crate::field::PrimeField;

    fn a2_ctx() -> ModuleCtx<PrimeField> {
        let rs = RootSystem::new(Family::A, 2).unwrap();
        ModuleCtx::with_default_orientation(rs, PrimeField::default_prime())
    }

    fn running_module(ctx: &ModuleCtx<PrimeField>) -> PiModule<PrimeField> {
        let f = ctx.field;
        PiModule::new(
            f,
            ctx.quiver.clone(),
            vec![1, 1],
            vec![Matrix::from_i64(f, 1, 1, &[1])],
            vec![Matrix::zero(f, 1, 1)],
        )
        .unwrap()
    }

    fn running_datum(ctx: &ModuleCtx<PrimeField>) -> HyperplaneDatum {
        polytope_of_module(ctx, &running_module(ctx))
    }

    #[test]
    fn running_example_values() {
        let ctx = a2_ctx();
        let a = running_datum(&ctx);
        let rs = &ctx.rs;
        assert_eq!(a.get(rs, &WeightVec(vec![1, 0])), 1);
        assert_eq!(a.get(rs, &WeightVec(vec![0, 1])), 1);
        assert_eq!(a.get(rs, &WeightVec(vec![-1, 1])), 1);
        assert_eq!(a.get(rs, &WeightVec(vec![1, -1])), 0);
        assert_eq!(a.get(rs, &WeightVec(vec![-1, 0])), 0);
        assert_eq!(a.get(rs, &WeightVec(vec![0, -1])), 0);
        assert_eq!(a.weight(rs).unwrap(), RootVec(vec![1, 1]));
    }

    #[test]
    fn zero_module_gives_zero_datum() {
        let ctx = a2_ctx();
        let z = PiModule::zero(ctx.field, ctx.quiver.clone(), vec![0, 0]);
        let a = polytope_of_module(&ctx, &z);
        assert!(a.values.iter().all(|&v| v == 0));
        assert!(validate_bz(&ctx.rs, &a).unwrap().is_valid());
    }

    #[test]
    fn vertices_of_running_example() {
        let ctx = a2_ctx();
        let rs = &ctx.rs;
        let a = running_datum(&ctx);
        let vd = vertices_from_hyperplanes(rs, &a).unwrap();
        let mu_of = |word: &[usize]| {
            let w = rs.from_word(word);
            vd.mu[rs.elt_index(&w).unwrap()].clone()
        };
        assert_eq!(mu_of(&[]), RootVec(vec![0, 0]));
        assert_eq!(mu_of(&[0]), RootVec(vec![0, 0]));
        assert_eq!(mu_of(&[1]), RootVec(vec![0, 1]));
        assert_eq!(mu_of(&[1, 0]), RootVec(vec![0, 1]));
        assert_eq!(mu_of(&[0, 1]), RootVec(vec![1, 1]));
        assert_eq!(mu_of(&[0, 1, 0]), RootVec(vec![1, 1]));
        // all-zero datum: every vertex at the origin
        let zero = HyperplaneDatum::zero(rs);
        let vd = vertices_from_hyperplanes(rs, &zero).unwrap();
        assert!(vd.mu.iter().all(|m| m.is_zero()));
    }

    #[test]
    fn tropical_relation_on_running_example() {
        let ctx = a2_ctx();
        let rs = &ctx.rs;
        let a = running_datum(&ctx);
        let report = validate_bz(rs, &a).unwrap();
        assert!(report.is_valid());

        let mut bumped = a.clone();
        bumped.set(rs, &WeightVec(vec![-1, 1]), 2);
        let report = validate_bz(rs, &bumped).unwrap();
        assert_eq!(report.violated_hexagons.len(), 1);
    }

    #[test]
    fn lusztig_data_of_running_example() {
        let ctx = a2_ctx();
        let rs = &ctx.rs;
        let a = running_datum(&ctx);
        let d1 = lusztig_datum(rs, &a, &[0, 1, 0]).unwrap();
        assert_eq!(d1.n, vec![1, 0, 1]);
        let d2 = lusztig_datum(rs, &a, &[1, 0, 1]).unwrap();
        assert_eq!(d2.n, vec![0, 1, 0]);
        assert_eq!(d1.weight(rs), RootVec(vec![1, 1]));

        let zero = HyperplaneDatum::zero(rs);
        assert_eq!(lusztig_datum(rs, &zero, &[0, 1, 0]).unwrap().n, vec![0, 0, 0]);
    }

    #[test]
    fn transition_braid_move() {
        let ctx = a2_ctx();
        let rs = &ctx.rs;
        let d = LusztigDatum::new(rs, vec![1, 0, 1], vec![0, 1, 0]).unwrap();
        let t = transition(rs, &d, &[0, 1, 0]).unwrap();
        assert_eq!(t.n, vec![1, 0, 1]);
        // round trip
        let back = transition(rs, &t, &[1, 0, 1]).unwrap();
        assert_eq!(back.n, d.n);
        // weight preserved
        assert_eq!(d.weight(rs), t.weight(rs));
    }

    #[test]
    fn rebuild_running_example_from_lusztig() {
        let ctx = a2_ctx();
        let rs = &ctx.rs;
        let a = running_datum(&ctx);
        let d = LusztigDatum::new(rs, vec![0, 1, 0], vec![1, 0, 1]).unwrap();
        let rebuilt = polytope_from_lusztig(rs, &d).unwrap();
        assert_eq!(rebuilt, a);
        let zero = LusztigDatum::new(rs, vec![0, 1, 0], vec![0, 0, 0]).unwrap();
        assert!(polytope_from_lusztig(rs, &zero).unwrap().values.iter().all(|&v| v == 0));
    }

    #[test]
    fn star_matches_dual_module() {
        let ctx = a2_ctx();
        let rs = &ctx.rs;
        let t = running_module(&ctx);
        let a = polytope_of_module(&ctx, &t);
        let starred = star(rs, &a).unwrap();
        assert_eq!(starred, polytope_of_module(&ctx, &t.dual()));
        assert_eq!(star(rs, &starred).unwrap(), a);
        assert_eq!(starred.get(rs, &WeightVec(vec![1, -1])), 1);
        assert_eq!(starred.get(rs, &WeightVec(vec![-1, 1])), 0);
        assert_eq!(starred.get(rs, &WeightVec(vec![1, 0])), 1);
        let zero = HyperplaneDatum::zero(rs);
        assert_eq!(star(rs, &zero).unwrap(), zero);
    }

    #[test]
    fn bad_words_rejected() {
        let ctx = a2_ctx();
        let rs = &ctx.rs;
        let a = running_datum(&ctx);
        assert!(lusztig_datum(rs, &a, &[0, 1]).is_err());
        assert!(lusztig_datum(rs, &a, &[0, 0, 1]).is_err());
        assert!(LusztigDatum::new(rs, vec![0, 1, 0], vec![1, -1, 0]).is_err());
    }
}
