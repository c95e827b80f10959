//! The crystal realized on polytopes whose hyperplane data satisfy the BZ
//! conditions: the structure functions, raising and lowering operators, the
//! star involution, Saito reflections, and bounded generation of the crystal
//! graph from the point polytope.

use crate::cartan::{RootSystem, RootVec};
use crate::error::{Error, Result};
use crate::polytope::{
    lusztig_datum, polytope_from_lusztig, star as datum_star, validate_bz, HyperplaneDatum,
    LusztigDatum,
};
use std::collections::HashMap;

/// A crystal element in canonical form: the full hyperplane datum, so that
/// deduplication does not depend on a choice of reduced word.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct CrystalElt {
    pub datum: HyperplaneDatum,
}

impl CrystalElt {
    pub fn new(rs: &RootSystem, datum: HyperplaneDatum) -> Result<Self> {
        let report = validate_bz(rs, &datum)?;
        if !report.is_valid() {
            return Err(Error::Invalid(format!(
                "not a BZ datum: {} edge failures, {} tropical violations",
                report.edge_failures.len(),
                report.violated_hexagons.len()
            )));
        }
        Ok(CrystalElt { datum })
    }

    /// The point polytope: the highest-weight element.
    pub fn unit(rs: &RootSystem) -> Self {
        CrystalElt { datum: HyperplaneDatum::zero(rs) }
    }

    pub fn weight(&self, rs: &RootSystem) -> RootVec {
        self.datum.weight(rs).expect("BZ datum has an integral weight")
    }

    pub fn from_lusztig(rs: &RootSystem, d: &LusztigDatum) -> Result<Self> {
        Self::new(rs, polytope_from_lusztig(rs, d)?)
    }

    pub fn lusztig(&self, rs: &RootSystem, word: &[usize]) -> Result<LusztigDatum> {
        lusztig_datum(rs, &self.datum, word)
    }
}

/// Length of the top edge in the `i` direction:
/// `A_{w_i} + A_{s_i w_i} + sum_{j ~ i} a_ij A_{w_j}`.
pub fn phi(rs: &RootSystem, p: &CrystalElt, i: usize) -> i64 {
    let omega = rs.fundamental_weight(i);
    let s_omega = rs.act_weight(&rs.simple_elt(i), &omega);
    let mut c = p.datum.get(rs, &omega) + p.datum.get(rs, &s_omega);
    for j in rs.adjacent(i) {
        c -= p.datum.get(rs, &rs.fundamental_weight(j));
    }
    c
}

pub fn epsilon(rs: &RootSystem, p: &CrystalElt, i: usize) -> i64 {
    let wt = p.weight(rs);
    let pairing: i64 = (0..rs.rank()).map(|j| rs.cartan(i, j) * wt.0[j]).sum();
    phi(rs, p, i) - pairing
}

fn lusztig_at_letter(rs: &RootSystem, p: &CrystalElt, i: usize) -> Result<LusztigDatum> {
    let word = rs.w0_word_starting_with(i);
    p.lusztig(rs, &word)
}

/// Raising operator: bump the leading tuple entry along any word starting with
/// `i`; total on BZ data.
pub fn e_tilde(rs: &RootSystem, p: &CrystalElt, i: usize) -> Result<CrystalElt> {
    let mut d = lusztig_at_letter(rs, p, i)?;
    debug_assert_eq!(d.n[0], phi(rs, p, i));
    d.n[0] += 1;
    CrystalElt::from_lusztig(rs, &d)
}

/// Lowering operator; undefined when the `i`-edge has length zero.
pub fn f_tilde(rs: &RootSystem, p: &CrystalElt, i: usize) -> Result<Option<CrystalElt>> {
    let mut d = lusztig_at_letter(rs, p, i)?;
    debug_assert_eq!(d.n[0], phi(rs, p, i));
    if d.n[0] == 0 {
        return Ok(None);
    }
    d.n[0] -= 1;
    Ok(Some(CrystalElt::from_lusztig(rs, &d)?))
}

pub fn f_tilde_max(rs: &RootSystem, p: &CrystalElt, i: usize) -> Result<CrystalElt> {
    let mut d = lusztig_at_letter(rs, p, i)?;
    d.n[0] = 0;
    CrystalElt::from_lusztig(rs, &d)
}

pub fn star(rs: &RootSystem, p: &CrystalElt) -> Result<CrystalElt> {
    CrystalElt::new(rs, datum_star(rs, &p.datum)?)
}

/// Saito reflection on elements with `phi_i = 0`: rotate the Lusztig datum of
/// a word starting with `i` to the word `(i_2, .., i_N, i_1*)`. The weight of
/// the result is `s_i` of the input weight.
pub fn saito(rs: &RootSystem, p: &CrystalElt, i: usize) -> Result<CrystalElt> {
    if phi(rs, p, i) != 0 {
        return Err(Error::OperatorUndefined("Saito reflection needs phi_i = 0"));
    }
    let d = lusztig_at_letter(rs, p, i)?;
    debug_assert_eq!(d.n[0], 0);
    let mut word: Vec<usize> = d.word[1..].to_vec();
    word.push(rs.dynkin_star(i));
    let mut n: Vec<i64> = d.n[1..].to_vec();
    n.push(0);
    let rotated = LusztigDatum::new(rs, word, n)?;
    let out = CrystalElt::from_lusztig(rs, &rotated)?;
    debug_assert_eq!(out.weight(rs), rs.act_root(&rs.simple_elt(i), &p.weight(rs)));
    Ok(out)
}

/// The defining composite `e_i^{epsilon_i(b*)} ((f_i^*)^max b)`; used to
/// cross-check the rotation form of the Saito reflection.
pub fn saito_via_operators(rs: &RootSystem, p: &CrystalElt, i: usize) -> Result<CrystalElt> {
    if phi(rs, p, i) != 0 {
        return Err(Error::OperatorUndefined("Saito reflection needs phi_i = 0"));
    }
    let starred = star(rs, p)?;
    let count = epsilon(rs, &starred, i);
    if count < 0 {
        return Err(Error::Invalid("negative epsilon on the starred element".into()));
    }
    let mut cur = star(rs, &f_tilde_max(rs, &starred, i)?)?;
    for _ in 0..count {
        cur = e_tilde(rs, &cur, i)?;
    }
    Ok(cur)
}

#[derive(Clone, Debug)]
pub struct CrystalGraph {
    pub nodes: Vec<CrystalElt>,
    pub weights: Vec<RootVec>,
    /// `(from, to, i)` meaning the lowering operator `i` sends `from` to `to`
    pub edges: Vec<(usize, usize, usize)>,
    pub index: HashMap<Vec<i64>, usize>,
}

impl CrystalGraph {
    pub fn node_of(&self, p: &CrystalElt) -> Option<usize> {
        self.index.get(&p.datum.values).copied()
    }
}

/// Breadth-first generation from the point polytope, applying every raising
/// operator while the weight height stays within the bound. Edges record the
/// lowering operators between generated nodes.
pub fn generate(rs: &RootSystem, height_bound: i64) -> Result<CrystalGraph> {
    let unit = CrystalElt::unit(rs);
    let mut nodes = vec![unit.clone()];
    let mut weights = vec![RootVec::zero(rs.rank())];
    let mut index = HashMap::new();
    index.insert(unit.datum.values.clone(), 0usize);
    let mut queue = std::collections::VecDeque::new();
    queue.push_back(0usize);
    while let Some(cur) = queue.pop_front() {
        if weights[cur].height() >= height_bound {
            continue;
        }
        let p = nodes[cur].clone();
        for i in 0..rs.rank() {
            let up = e_tilde(rs, &p, i)?;
            if !index.contains_key(&up.datum.values) {
                let id = nodes.len();
                index.insert(up.datum.values.clone(), id);
                weights.push(up.weight(rs));
                nodes.push(up);
                queue.push_back(id);
            }
        }
    }
    let mut edges = Vec::new();
    for (id, p) in nodes.iter().enumerate() {
        for i in 0..rs.rank() {
            if phi(rs, p, i) > 0 {
                let down = f_tilde(rs, p, i)?.expect("phi > 0");
                let target = index[&down.datum.values];
                edges.push((id, target, i));
            }
        }
    }
    Ok(CrystalGraph { nodes, weights, edges, index })
}

/// DOT rendering: nodes labeled by weight and by the tuple in a fixed word.
pub fn to_dot(rs: &RootSystem, graph: &CrystalGraph) -> String {
    let word = rs.w0().word().to_vec();
    let mut out = String::from("digraph crystal {\n  rankdir=BT;\n");
    for (id, node) in graph.nodes.iter().enumerate() {
        let wt = &graph.weights[id];
        let tuple = node
            .lusztig(rs, &word)
            .map(|d| format!("{:?}", d.n))
            .unwrap_or_else(|_| "?".into());
        out.push_str(&format!(
            "  n{id} [label=\"wt={:?} n{:?}={}\"];\n",
            wt.0,
            word.iter().map(|w| w + 1).collect::<Vec<_>>(),
            tuple
        ));
    }
    for &(from, to, i) in &graph.edges {
        out.push_str(&format!("  n{from} -> n{to} [label=\"{}\"];\n", i + 1));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartan::{Family, WeightVec};
    use crate::field::PrimeField;
    use crate::ngamma::ModuleCtx;
    use crate::polytope::polytope_of_module;

    fn a2() -> RootSystem {
        RootSystem::new(Family::A, 2).unwrap()
    }

    fn running_elt(rs: &RootSystem) -> CrystalElt {
        let d = LusztigDatum::new(rs, vec![0, 1, 0], vec![1, 0, 1]).unwrap();
        CrystalElt::from_lusztig(rs, &d).unwrap()
    }

    #[test]
    fn phi_examples() {
        let rs = a2();
        let unit = CrystalElt::unit(&rs);
        assert_eq!(phi(&rs, &unit, 0), 0);
        assert_eq!(phi(&rs, &unit, 1), 0);
        let p = running_elt(&rs);
        assert_eq!(phi(&rs, &p, 0), 1);
        assert_eq!(phi(&rs, &p, 1), 1);
        assert_eq!(epsilon(&rs, &p, 0), 1 - 1);
    }

    #[test]
    fn raising_from_unit_gives_a_simple() {
        let rs = a2();
        let unit = CrystalElt::unit(&rs);
        let up = e_tilde(&rs, &unit, 0).unwrap();
        assert_eq!(up.weight(&rs), RootVec(vec![1, 0]));
        assert_eq!(up.lusztig(&rs, &[0, 1, 0]).unwrap().n, vec![1, 0, 0]);
        // the module of weight a_1 has this polytope
        let ctx = ModuleCtx::with_default_orientation(a2(), PrimeField::default_prime());
        let s1 = ctx.simple(0);
        assert_eq!(up.datum, polytope_of_module(&ctx, &s1));
        // lowering undoes it
        let back = f_tilde(&rs, &up, 0).unwrap().unwrap();
        assert_eq!(back, CrystalElt::unit(&rs));
        assert!(f_tilde(&rs, &unit, 0).unwrap().is_none());
    }

    #[test]
    fn f_tilde_max_on_running_example() {
        let rs = a2();
        let p = running_elt(&rs);
        let dropped = f_tilde_max(&rs, &p, 0).unwrap();
        assert_eq!(dropped.weight(&rs), RootVec(vec![0, 1]));
        assert_eq!(dropped.lusztig(&rs, &[0, 1, 0]).unwrap().n, vec![0, 0, 1]);
    }

    #[test]
    fn operator_laws_and_locality() {
        let rs = a2();
        let graph = generate(&rs, 3).unwrap();
        for p in &graph.nodes {
            for i in 0..2 {
                let up = e_tilde(&rs, p, i).unwrap();
                assert_eq!(phi(&rs, &up, i), phi(&rs, p, i) + 1);
                assert_eq!(up.weight(&rs), p.weight(&rs).add(&rs.simple_root(i)));
                assert_eq!(f_tilde(&rs, &up, i).unwrap().unwrap(), *p);
                // locality: values at pairing <= 0 unchanged
                for (idx, gamma) in rs.chamber_weights().iter().enumerate() {
                    if rs.pair(gamma, &rs.simple_root(i)) <= 0 {
                        assert_eq!(up.datum.values[idx], p.datum.values[idx]);
                    }
                }
            }
        }
    }

    #[test]
    fn saito_worked_example() {
        let rs = a2();
        // the polytope of the simple at vertex 1: tuple (0,0,1) on (1,2,1)
        let d = LusztigDatum::new(&rs, vec![0, 1, 0], vec![0, 0, 1]).unwrap();
        let p = CrystalElt::from_lusztig(&rs, &d).unwrap();
        assert_eq!(phi(&rs, &p, 0), 0);
        let out = saito(&rs, &p, 0).unwrap();
        // rotated word (2,1,2), tuple (0,1,0); weight s_1(a_2) = a_1 + a_2
        assert_eq!(out.lusztig(&rs, &[1, 0, 1]).unwrap().n, vec![0, 1, 0]);
        assert_eq!(out.weight(&rs), RootVec(vec![1, 1]));
        assert_eq!(out, running_elt(&rs));
        // unit is fixed
        let unit = CrystalElt::unit(&rs);
        assert_eq!(saito(&rs, &unit, 0).unwrap(), unit);
        // defined only at phi = 0
        assert!(saito(&rs, &running_elt(&rs), 0).is_err());
    }

    #[test]
    fn saito_agrees_with_operator_composite() {
        let rs = a2();
        let graph = generate(&rs, 4).unwrap();
        for p in &graph.nodes {
            for i in 0..2 {
                if phi(&rs, p, i) != 0 {
                    continue;
                }
                let a = saito(&rs, p, i).unwrap();
                let b = saito_via_operators(&rs, p, i).unwrap();
                assert_eq!(a, b);
                assert_eq!(a.weight(&rs), rs.act_root(&rs.simple_elt(i), &p.weight(&rs)));
            }
        }
    }

    #[test]
    fn star_properties_on_generated_elements() {
        let rs = a2();
        let graph = generate(&rs, 4).unwrap();
        for p in &graph.nodes {
            let sp = star(&rs, p).unwrap();
            assert_eq!(star(&rs, &sp).unwrap(), *p);
            assert_eq!(sp.weight(&rs), p.weight(&rs));
            for i in 0..2 {
                if phi(&rs, p, i) == 0 {
                    assert!(epsilon(&rs, &sp, i) >= 0);
                }
                // the characterizing max-formula for phi
                let fs = star(&rs, &f_tilde_max(&rs, &sp, i).unwrap()).unwrap();
                let wt = p.weight(&rs);
                let pairing: i64 = (0..rs.rank()).map(|j| rs.cartan(i, j) * wt.0[j]).sum();
                let expect = phi(&rs, &fs, i).max(pairing - phi(&rs, &sp, i));
                assert_eq!(phi(&rs, p, i), expect);
            }
        }
    }

    #[test]
    fn generation_counts() {
        let rs1 = RootSystem::new(Family::A, 1).unwrap();
        let g = generate(&rs1, 3).unwrap();
        assert_eq!(g.nodes.len(), 4);
        assert_eq!(g.edges.len(), 3);

        let rs = a2();
        let g = generate(&rs, 2).unwrap();
        // weights 0, a1, a2, 2a1, 2a2, a1+a2 (x2)
        assert_eq!(g.nodes.len(), 7);
        let multiplicity = |wt: &[i64]| g.weights.iter().filter(|w| w.0 == wt).count();
        assert_eq!(multiplicity(&[1, 1]), 2);
        assert_eq!(multiplicity(&[2, 0]), 1);
        assert_eq!(multiplicity(&[0, 0]), 1);

        let g0 = generate(&rs, 0).unwrap();
        assert_eq!(g0.nodes.len(), 1);
    }

    #[test]
    fn all_generated_data_are_bz() {
        let rs = a2();
        let g = generate(&rs, 4).unwrap();
        for p in &g.nodes {
            assert!(validate_bz(&rs, &p.datum).unwrap().is_valid());
        }
        let _ = WeightVec(vec![0, 0]);
    }
}
