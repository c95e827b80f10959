//! ADE root systems and Weyl groups: lattices, pairings, reflections, reduced
//! words with their braid-move graph, chamber weights, adapted orderings.
//!
//! Conventions. Roots live in the simple-root basis (`RootVec`), weights in the
//! fundamental-weight basis (`WeightVec`). A `WeylElt` acts on column vectors;
//! its cached word `(j_1, .., j_k)` means `s_{j_1} ∘ .. ∘ s_{j_k}` (rightmost
//! letter acts first). Equality of group elements is equality of action
//! matrices; words are canonical lexicographically-least reduced words.

use crate::error::{Error, Result};
use crate::quiver::Quiver;
use std::collections::{HashMap, VecDeque};
use std::sync::OnceLock;

#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub enum Family {
    A,
    D,
    E,
}

impl Family {
    pub fn letter(self) -> char {
        match self {
            Family::A => 'A',
            Family::D => 'D',
            Family::E => 'E',
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct RootVec(pub Vec<i64>);

#[derive(Clone, PartialEq, Eq, Debug, Hash, PartialOrd, Ord)]
pub struct WeightVec(pub Vec<i64>);

impl RootVec {
    pub fn zero(n: usize) -> Self {
        RootVec(vec![0; n])
    }

    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    pub fn add(&self, other: &Self) -> Self {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        RootVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        RootVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

impl WeightVec {
    pub fn zero(n: usize) -> Self {
        WeightVec(vec![0; n])
    }

    pub fn add(&self, other: &Self) -> Self {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        WeightVec(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn neg(&self) -> Self {
        WeightVec(self.0.iter().map(|a| -a).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(|&a| a == 0)
    }
}

/// Weyl group element: integer action matrices on both coordinate systems plus
/// the canonical (lex-least) reduced word.
#[derive(Clone, Debug)]
pub struct WeylElt {
    wt_mat: Vec<i64>,
    rt_mat: Vec<i64>,
    word: Vec<usize>,
}

impl PartialEq for WeylElt {
    fn eq(&self, other: &Self) -> bool {
        self.wt_mat == other.wt_mat
    }
}

impl Eq for WeylElt {}

impl std::hash::Hash for WeylElt {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.wt_mat.hash(state);
    }
}

impl WeylElt {
    pub fn word(&self) -> &[usize] {
        &self.word
    }

    pub fn len(&self) -> usize {
        self.word.len()
    }

    pub fn is_identity(&self) -> bool {
        self.word.is_empty()
    }
}

// Row-major n x n integer matrix helpers.
fn mat_id(n: usize) -> Vec<i64> {
    let mut m = vec![0i64; n * n];
    for i in 0..n {
        m[i * n + i] = 1;
    }
    m
}

fn mat_mul(n: usize, a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut out = vec![0i64; n * n];
    for i in 0..n {
        for k in 0..n {
            let v = a[i * n + k];
            if v == 0 {
                continue;
            }
            for j in 0..n {
                out[i * n + j] += v * b[k * n + j];
            }
        }
    }
    out
}

fn mat_vec(n: usize, m: &[i64], v: &[i64]) -> Vec<i64> {
    (0..n).map(|i| (0..n).map(|j| m[i * n + j] * v[j]).sum()).collect()
}

/// One triple `(w, i, j)` indexing a hexagonal 2-face: `i`, `j` adjacent and
/// both `w s_i`, `w s_j` longer than `w`. The six chamber-weight indices of the
/// tropical relation are precomputed.
#[derive(Clone, Debug)]
pub struct Hexagon {
    pub w: usize,
    pub i: usize,
    pub j: usize,
    /// indices of -w s_i w_i and -w s_j w_j
    pub lhs: [usize; 2],
    /// indices of -w w_i and -w s_i s_j w_j
    pub rhs_a: [usize; 2],
    /// indices of -w s_j s_i w_i and -w w_j
    pub rhs_b: [usize; 2],
}

/// One edge inequality `A_{-w w_i} + A_{-w s_i w_i} - sum_{j ~ i} A_{-w w_j} >= 0`
/// as chamber-weight indices.
#[derive(Clone, Debug)]
pub struct EdgeIneq {
    pub w: usize,
    pub i: usize,
    pub pos: [usize; 2],
    pub neg: Vec<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum WordMove {
    /// Exchange commuting letters at positions `k`, `k+1`.
    Swap(usize),
    /// Replace `(i, j, i)` by `(j, i, j)` at positions `k..k+3` (adjacent `i`, `j`).
    Braid(usize),
}

/// All reduced words of one element, with braid-move edges. Connected by
/// Matsumoto's theorem, which is how the enumeration works in the first place.
#[derive(Clone, Debug)]
pub struct WordGraph {
    pub words: Vec<Vec<usize>>,
    pub index: HashMap<Vec<usize>, usize>,
    pub edges: Vec<Vec<(usize, WordMove)>>,
}

impl WordGraph {
    pub fn apply_move(word: &[usize], mv: WordMove, cartan: impl Fn(usize, usize) -> i64) -> Option<Vec<usize>> {
        let mut w = word.to_vec();
        match mv {
            WordMove::Swap(k) => {
                if k + 1 >= w.len() || cartan(w[k], w[k + 1]) != 0 {
                    return None;
                }
                w.swap(k, k + 1);
            }
            WordMove::Braid(k) => {
                if k + 2 >= w.len() || w[k] != w[k + 2] || cartan(w[k], w[k + 1]) != -1 {
                    return None;
                }
                let (i, j) = (w[k], w[k + 1]);
                w[k] = j;
                w[k + 1] = i;
                w[k + 2] = j;
            }
        }
        Some(w)
    }
}

struct WeylEnum {
    elts: Vec<WeylElt>,
    index: HashMap<Vec<i64>, usize>,
}

struct ChamberTable {
    /// sorted by coordinates, so datum layouts are canonical
    list: Vec<WeightVec>,
    index: HashMap<Vec<i64>, usize>,
    /// (fundamental weight index, minimal Weyl element) per chamber weight
    cert: Vec<(usize, WeylElt)>,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum AdaptMode {
    Sink,
    Source,
}

pub struct RootSystem {
    family: Family,
    rank: usize,
    edges: Vec<(usize, usize)>,
    cartan: Vec<i64>,
    simple_wt: Vec<Vec<i64>>,
    simple_rt: Vec<Vec<i64>>,
    positive_roots: Vec<RootVec>,
    w0: WeylElt,
    weyl: Option<WeylEnum>,
    chambers: ChamberTable,
    hexagons: OnceLock<Vec<Hexagon>>,
    edge_ineqs: OnceLock<Vec<EdgeIneq>>,
    w0_graph: OnceLock<WordGraph>,
    /// per Weyl element w: (l(w w0), reduced word of w0 whose prefix of that
    /// length is a reduced word of w w0)
    ext_words: OnceLock<Vec<(usize, Vec<usize>)>>,
}

impl std::fmt::Debug for RootSystem {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "RootSystem({}{})", self.family.letter(), self.rank)
    }
}

pub fn dynkin_edges(family: Family, rank: usize) -> Result<Vec<(usize, usize)>> {
    let bad = || Error::InvalidRank { family: family.letter(), rank };
    match family {
        Family::A => {
            if rank < 1 {
                return Err(bad());
            }
            Ok((0..rank.saturating_sub(1)).map(|i| (i, i + 1)).collect())
        }
        Family::D => {
            if rank < 4 {
                return Err(bad());
            }
            let mut e: Vec<(usize, usize)> = (0..rank - 2).map(|i| (i, i + 1)).collect();
            e.push((rank - 3, rank - 1));
            Ok(e)
        }
        Family::E => {
            if !(6..=8).contains(&rank) {
                return Err(bad());
            }
            // Bourbaki labels 1..rank (0-based here): chain 1-3-4-5-6(-7(-8)),
            // with node 2 hanging off node 4.
            let mut e = vec![(0, 2), (2, 3), (3, 4), (4, 5), (1, 3)];
            if rank >= 7 {
                e.push((5, 6));
            }
            if rank == 8 {
                e.push((6, 7));
            }
            Ok(e)
        }
    }
}

pub fn weyl_order(family: Family, rank: usize) -> u64 {
    fn fact(n: u64) -> u64 {
        (1..=n).product()
    }
    match family {
        Family::A => fact(rank as u64 + 1),
        Family::D => (1 << (rank - 1)) * fact(rank as u64),
        Family::E => match rank {
            6 => 51_840,
            7 => 2_903_040,
            _ => 696_729_600,
        },
    }
}

const ENUM_CAP: u64 = 51_840;

pub fn parse_type(s: &str) -> Result<(Family, usize)> {
    let err = || Error::Invalid(format!("cannot parse root system type {s:?} (expected e.g. A3, D4, E6)"));
    let mut chars = s.chars();
    let fam = match chars.next().ok_or_else(err)? {
        'A' | 'a' => Family::A,
        'D' | 'd' => Family::D,
        'E' | 'e' => Family::E,
        _ => return Err(err()),
    };
    let rank: usize = chars.as_str().parse().map_err(|_| err())?;
    Ok((fam, rank))
}

impl RootSystem {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let edges = dynkin_edges(family, rank)?;
        let n = rank;
        let mut cartan = vec![0i64; n * n];
        for i in 0..n {
            cartan[i * n + i] = 2;
        }
        for &(a, b) in &edges {
            cartan[a * n + b] = -1;
            cartan[b * n + a] = -1;
        }

        // Simple reflection matrices in both coordinate systems.
        let mut simple_wt = Vec::with_capacity(n);
        let mut simple_rt = Vec::with_capacity(n);
        for i in 0..n {
            let mut p = mat_id(n);
            for k in 0..n {
                p[k * n + i] -= cartan[k * n + i];
            }
            simple_wt.push(p);
            let mut q = mat_id(n);
            for j in 0..n {
                q[i * n + j] -= cartan[i * n + j];
            }
            simple_rt.push(q);
        }

        let positive_roots = positive_roots_of(n, &cartan, &simple_rt);

        let mut rs = RootSystem {
            family,
            rank,
            edges,
            cartan,
            simple_wt,
            simple_rt,
            positive_roots,
            w0: WeylElt { wt_mat: mat_id(n), rt_mat: mat_id(n), word: vec![] },
            weyl: None,
            chambers: ChamberTable { list: vec![], index: HashMap::new(), cert: vec![] },
            hexagons: OnceLock::new(),
            edge_ineqs: OnceLock::new(),
            w0_graph: OnceLock::new(),
            ext_words: OnceLock::new(),
        };

        rs.w0 = rs.longest_element();
        debug_assert_eq!(rs.w0.len(), rs.positive_roots.len());

        if rs.is_enumerable() {
            rs.weyl = Some(rs.enumerate_weyl());
        }
        rs.chambers = rs.build_chambers();
        Ok(rs)
    }

    pub fn from_type(s: &str) -> Result<Self> {
        let (f, r) = parse_type(s)?;
        Self::new(f, r)
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn type_name(&self) -> String {
        format!("{}{}", self.family.letter(), self.rank)
    }

    pub fn dynkin(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn cartan(&self, i: usize, j: usize) -> i64 {
        self.cartan[i * self.rank + j]
    }

    pub fn adjacent(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.rank).filter(move |&j| j != i && self.cartan(i, j) == -1)
    }

    pub fn num_positive_roots(&self) -> usize {
        self.positive_roots.len()
    }

    pub fn positive_roots(&self) -> &[RootVec] {
        &self.positive_roots
    }

    pub fn simple_root(&self, i: usize) -> RootVec {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        RootVec(v)
    }

    pub fn fundamental_weight(&self, i: usize) -> WeightVec {
        let mut v = vec![0; self.rank];
        v[i] = 1;
        WeightVec(v)
    }

    /// Duality pairing `<w_i, a_j> = delta_ij`.
    pub fn pair(&self, w: &WeightVec, r: &RootVec) -> i64 {
        w.0.iter().zip(&r.0).map(|(a, b)| a * b).sum()
    }

    /// The W-invariant symmetric form on the root lattice (the Cartan form).
    pub fn sym(&self, a: &RootVec, b: &RootVec) -> i64 {
        self.pair(&self.root_to_weight(a), b)
    }

    pub fn root_to_weight(&self, r: &RootVec) -> WeightVec {
        WeightVec(mat_vec(self.rank, &self.cartan, &r.0))
    }

    /// Inverse of the Cartan embedding; `None` when the weight is not in the
    /// root lattice.
    pub fn weight_to_root(&self, w: &WeightVec) -> Option<RootVec> {
        use crate::field::{Field, Rationals};
        use crate::linalg::Matrix;
        let n = self.rank;
        let f = Rationals;
        let c = Matrix::from_i64(f, n, n, &self.cartan);
        let rhs = Matrix::col_vec(f, &w.0);
        let x = c.solve(&rhs).ok()?;
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(f.to_i64(x.get(i, 0))?);
        }
        Some(RootVec(out))
    }

    pub fn is_dominant(&self, w: &WeightVec) -> bool {
        w.0.iter().all(|&c| c >= 0)
    }

    pub fn is_antidominant(&self, w: &WeightVec) -> bool {
        w.0.iter().all(|&c| c <= 0)
    }

    // ---- Weyl elements ----

    pub fn identity_elt(&self) -> WeylElt {
        WeylElt { wt_mat: mat_id(self.rank), rt_mat: mat_id(self.rank), word: vec![] }
    }

    pub fn simple_elt(&self, i: usize) -> WeylElt {
        WeylElt {
            wt_mat: self.simple_wt[i].clone(),
            rt_mat: self.simple_rt[i].clone(),
            word: vec![i],
        }
    }

    fn is_negative_root_vec(v: &[i64]) -> bool {
        // roots have coherent signs; any negative coordinate marks a negative root
        v.iter().any(|&c| c < 0)
    }

    fn rt_len(&self, rt: &[i64]) -> usize {
        self.positive_roots
            .iter()
            .filter(|b| Self::is_negative_root_vec(&mat_vec(self.rank, rt, &b.0)))
            .count()
    }

    fn lex_least_word_of_rt(&self, rt: &[i64]) -> Vec<usize> {
        let n = self.rank;
        let mut v = rt.to_vec();
        let mut len = self.rt_len(&v);
        let mut word = Vec::with_capacity(len);
        while len > 0 {
            let mut advanced = false;
            for j in 0..n {
                let cand = mat_mul(n, &self.simple_rt[j], &v);
                let l = self.rt_len(&cand);
                if l < len {
                    word.push(j);
                    v = cand;
                    len = l;
                    advanced = true;
                    break;
                }
            }
            assert!(advanced, "descent walk stuck");
        }
        word
    }

    fn elt_from_mats(&self, wt_mat: Vec<i64>, rt_mat: Vec<i64>) -> WeylElt {
        let word = self.lex_least_word_of_rt(&rt_mat);
        WeylElt { wt_mat, rt_mat, word }
    }

    /// Group element of a word; the cached word is canonicalized.
    pub fn from_word(&self, word: &[usize]) -> WeylElt {
        let n = self.rank;
        let mut wt = mat_id(n);
        let mut rt = mat_id(n);
        for &j in word {
            assert!(j < n, "letter {j} out of range");
            wt = mat_mul(n, &wt, &self.simple_wt[j]);
            rt = mat_mul(n, &rt, &self.simple_rt[j]);
        }
        self.elt_from_mats(wt, rt)
    }

    pub fn is_reduced(&self, word: &[usize]) -> bool {
        self.from_word(word).len() == word.len()
    }

    pub fn mul(&self, a: &WeylElt, b: &WeylElt) -> WeylElt {
        let n = self.rank;
        self.elt_from_mats(mat_mul(n, &a.wt_mat, &b.wt_mat), mat_mul(n, &a.rt_mat, &b.rt_mat))
    }

    pub fn inv(&self, a: &WeylElt) -> WeylElt {
        let rev: Vec<usize> = a.word.iter().rev().copied().collect();
        self.from_word(&rev)
    }

    pub fn act_weight(&self, w: &WeylElt, v: &WeightVec) -> WeightVec {
        WeightVec(mat_vec(self.rank, &w.wt_mat, &v.0))
    }

    pub fn act_root(&self, w: &WeylElt, v: &RootVec) -> RootVec {
        RootVec(mat_vec(self.rank, &w.rt_mat, &v.0))
    }

    /// `l(w s_i) > l(w)`, i.e. `w(a_i)` is positive.
    pub fn right_ascent(&self, w: &WeylElt, i: usize) -> bool {
        !Self::is_negative_root_vec(&(0..self.rank).map(|k| w.rt_mat[k * self.rank + i]).collect::<Vec<_>>())
    }

    pub fn w0(&self) -> &WeylElt {
        &self.w0
    }

    /// The involution `i -> i*` with `w0(a_i) = -a_{i*}`.
    pub fn dynkin_star(&self, i: usize) -> usize {
        let col: Vec<i64> = (0..self.rank).map(|k| -self.w0.rt_mat[k * self.rank + i]).collect();
        for j in 0..self.rank {
            let mut e = vec![0i64; self.rank];
            e[j] = 1;
            if col == e {
                return j;
            }
        }
        unreachable!("w0 does not send a simple root to minus a simple root");
    }

    fn longest_element(&self) -> WeylElt {
        // Walk rho to the antidominant chamber; the collected letters, applied
        // in order, give w0 reversed.
        let n = self.rank;
        let mut mu = vec![1i64; n];
        let mut letters = Vec::new();
        loop {
            let Some(i) = (0..n).find(|&i| mu[i] > 0) else { break };
            mu = mat_vec(n, &self.simple_wt[i], &mu);
            letters.push(i);
        }
        letters.reverse();
        self.from_word(&letters)
    }

    // ---- enumeration ----

    pub fn is_enumerable(&self) -> bool {
        self.rank <= 6 && weyl_order(self.family, self.rank) <= ENUM_CAP
    }

    pub fn weyl_order(&self) -> u64 {
        weyl_order(self.family, self.rank)
    }

    fn enumerate_weyl(&self) -> WeylEnum {
        let n = self.rank;
        let id = self.identity_elt();
        let mut elts = vec![id.clone()];
        let mut index = HashMap::new();
        index.insert(id.wt_mat.clone(), 0);
        let mut queue = VecDeque::new();
        queue.push_back(0usize);
        while let Some(cur) = queue.pop_front() {
            let (wt, rt, word) = {
                let e = &elts[cur];
                (e.wt_mat.clone(), e.rt_mat.clone(), e.word.clone())
            };
            for j in 0..n {
                let nwt = mat_mul(n, &self.simple_wt[j], &wt);
                if index.contains_key(&nwt) {
                    continue;
                }
                let nrt = mat_mul(n, &self.simple_rt[j], &rt);
                let mut nword = Vec::with_capacity(word.len() + 1);
                nword.push(j);
                nword.extend_from_slice(&word);
                index.insert(nwt.clone(), elts.len());
                queue.push_back(elts.len());
                elts.push(WeylElt { wt_mat: nwt, rt_mat: nrt, word: nword });
            }
        }
        WeylEnum { elts, index }
    }

    pub fn elements(&self) -> Result<&[WeylElt]> {
        self.weyl
            .as_ref()
            .map(|w| w.elts.as_slice())
            .ok_or(Error::NeedsWeylEnumeration("elements"))
    }

    pub fn elt_index(&self, w: &WeylElt) -> Result<usize> {
        let e = self.weyl.as_ref().ok_or(Error::NeedsWeylEnumeration("elt_index"))?;
        e.index
            .get(&w.wt_mat)
            .copied()
            .ok_or_else(|| Error::Invalid("element not in this Weyl group".into()))
    }

    // ---- chamber weights ----

    fn build_chambers(&self) -> ChamberTable {
        let n = self.rank;
        let mut set: Vec<WeightVec> = Vec::new();
        let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
        for i in 0..n {
            let start = self.fundamental_weight(i);
            let mut queue = VecDeque::new();
            if seen.insert(start.0.clone(), ()).is_none() {
                set.push(start.clone());
                queue.push_back(start);
            }
            while let Some(cur) = queue.pop_front() {
                for j in 0..n {
                    let next = WeightVec(mat_vec(n, &self.simple_wt[j], &cur.0));
                    if seen.insert(next.0.clone(), ()).is_none() {
                        set.push(next.clone());
                        queue.push_back(next);
                    }
                }
            }
        }
        set.sort();
        let mut index = HashMap::new();
        for (k, w) in set.iter().enumerate() {
            index.insert(w.0.clone(), k);
        }
        let cert = set.iter().map(|g| self.chamber_cert_of(g)).collect();
        ChamberTable { list: set, index, cert }
    }

    /// `(i, w)` with `gamma = w(omega_i)`, `w` the unique minimal-length choice.
    fn chamber_cert_of(&self, gamma: &WeightVec) -> (usize, WeylElt) {
        // Peel the least negative coordinate; this reads off the lex-least
        // reduced word of the minimal coset representative.
        let n = self.rank;
        let mut mu = gamma.0.clone();
        let mut word = Vec::new();
        loop {
            match (0..n).find(|&j| mu[j] < 0) {
                None => break,
                Some(j) => {
                    word.push(j);
                    mu = mat_vec(n, &self.simple_wt[j], &mu);
                }
            }
        }
        let i = (0..n)
            .find(|&i| mu == self.fundamental_weight(i).0)
            .expect("weight is not in a fundamental-weight orbit");
        (i, self.from_word(&word))
    }

    pub fn chamber_weights(&self) -> &[WeightVec] {
        &self.chambers.list
    }

    pub fn chamber_index(&self, gamma: &WeightVec) -> Option<usize> {
        self.chambers.index.get(&gamma.0).copied()
    }

    pub fn chamber_cert(&self, idx: usize) -> &(usize, WeylElt) {
        &self.chambers.cert[idx]
    }

    pub fn is_chamber_weight(&self, gamma: &WeightVec) -> bool {
        self.chamber_index(gamma).is_some()
    }

    // ---- factorization ----

    /// `gamma = w(lambda)` with `lambda` antidominant and `w` of minimal
    /// length (hence unique), word the lex-least reduced word.
    pub fn antidominant_factorization(&self, gamma: &WeightVec) -> (WeylElt, WeightVec) {
        let n = self.rank;
        let mut mu = gamma.0.clone();
        let mut word = Vec::new();
        loop {
            match (0..n).find(|&j| mu[j] > 0) {
                None => break,
                Some(j) => {
                    word.push(j);
                    mu = mat_vec(n, &self.simple_wt[j], &mu);
                }
            }
        }
        (self.from_word(&word), WeightVec(mu))
    }

    // ---- reduced words ----

    /// Braid-move graph of all reduced words of `w`.
    pub fn word_graph_of(&self, w: &WeylElt) -> WordGraph {
        self.word_graph_from(w.word().to_vec())
    }

    fn word_graph_from(&self, start: Vec<usize>) -> WordGraph {
        let cartan = |i: usize, j: usize| self.cartan(i, j);
        let len = start.len();
        let mut words = vec![start.clone()];
        let mut index = HashMap::new();
        index.insert(start, 0usize);
        let mut edges: Vec<Vec<(usize, WordMove)>> = vec![vec![]];
        let mut queue = VecDeque::new();
        queue.push_back(0usize);
        while let Some(cur) = queue.pop_front() {
            let word = words[cur].clone();
            let mut moves = Vec::new();
            for k in 0..len.saturating_sub(1) {
                moves.push(WordMove::Swap(k));
            }
            for k in 0..len.saturating_sub(2) {
                moves.push(WordMove::Braid(k));
            }
            for mv in moves {
                let Some(next) = WordGraph::apply_move(&words[cur], mv, cartan) else { continue };
                let ni = match index.get(&next) {
                    Some(&ni) => ni,
                    None => {
                        let ni = words.len();
                        index.insert(next.clone(), ni);
                        words.push(next);
                        edges.push(vec![]);
                        queue.push_back(ni);
                        ni
                    }
                };
                if !edges[cur].iter().any(|&(t, m)| t == ni && m == mv) {
                    edges[cur].push((ni, mv));
                }
            }
            let _ = word;
        }
        WordGraph { words, index, edges }
    }

    pub fn w0_word_graph(&self) -> &WordGraph {
        self.w0_graph.get_or_init(|| self.word_graph_of(&self.w0))
    }

    /// Up to `limit` distinct reduced words of `w` (BFS over braid moves).
    pub fn some_reduced_words(&self, w: &WeylElt, limit: usize) -> Vec<Vec<usize>> {
        let cartan = |i: usize, j: usize| self.cartan(i, j);
        let start = w.word().to_vec();
        let len = start.len();
        let mut out = vec![start.clone()];
        let mut seen: HashMap<Vec<usize>, ()> = HashMap::new();
        seen.insert(start, ());
        let mut qi = 0usize;
        while qi < out.len() && out.len() < limit {
            let cur = out[qi].clone();
            qi += 1;
            for k in 0..len.saturating_sub(1) {
                if let Some(nx) = WordGraph::apply_move(&cur, WordMove::Swap(k), cartan) {
                    if seen.insert(nx.clone(), ()).is_none() {
                        out.push(nx);
                        if out.len() >= limit {
                            return out;
                        }
                    }
                }
            }
            for k in 0..len.saturating_sub(2) {
                if let Some(nx) = WordGraph::apply_move(&cur, WordMove::Braid(k), cartan) {
                    if seen.insert(nx.clone(), ()).is_none() {
                        out.push(nx);
                        if out.len() >= limit {
                            return out;
                        }
                    }
                }
            }
        }
        out
    }

    /// Lex-least reduced word of w0 beginning with the letter `i`.
    pub fn w0_word_starting_with(&self, i: usize) -> Vec<usize> {
        let rest = self.mul(&self.simple_elt(i), &self.w0);
        let mut word = vec![i];
        word.extend_from_slice(rest.word());
        debug_assert_eq!(word.len(), self.w0.len());
        word
    }

    // ---- adapted words ----

    /// Reduced word of w0 whose letters are successive sinks (resp. sources)
    /// of the iteratively re-oriented quiver. Greedy: least admissible vertex
    /// that is also a descent of the remaining element.
    pub fn adapted_word(&self, quiver: &Quiver, mode: AdaptMode) -> Result<Vec<usize>> {
        let n = self.rank;
        let total = self.num_positive_roots();
        let mut q = quiver.clone();
        let mut v = self.w0.clone();
        let mut word = Vec::with_capacity(total);
        for _ in 0..total {
            let candidates: Vec<usize> = match mode {
                AdaptMode::Sink => q.sinks(),
                AdaptMode::Source => q.sources(),
            };
            let pick = candidates.into_iter().find(|&c| {
                // left descent of v: l(s_c v) < l(v)
                let sv = self.mul(&self.simple_elt(c), &v);
                sv.len() < v.len()
            });
            let Some(c) = pick else { return Err(Error::NotAdapted) };
            word.push(c);
            v = self.mul(&self.simple_elt(c), &v);
            q = q.reflect_at(c);
            let _ = n;
        }
        debug_assert!(v.is_identity());
        Ok(word)
    }

    // ---- hexagons and edge inequalities ----

    fn neg_w_omega_index(&self, w: &WeylElt, i: usize) -> usize {
        let g = self.act_weight(w, &self.fundamental_weight(i)).neg();
        self.chamber_index(&g).expect("chamber weight missing from table")
    }

    pub fn hexagons(&self) -> Result<&[Hexagon]> {
        self.elements()?;
        Ok(self.hexagons.get_or_init(|| {
            let elts = self.elements().unwrap();
            let mut out = Vec::new();
            for (wi, w) in elts.iter().enumerate() {
                for i in 0..self.rank {
                    for j in (i + 1)..self.rank {
                        if self.cartan(i, j) != -1 {
                            continue;
                        }
                        if !(self.right_ascent(w, i) && self.right_ascent(w, j)) {
                            continue;
                        }
                        let wsi = self.mul(w, &self.simple_elt(i));
                        let wsj = self.mul(w, &self.simple_elt(j));
                        let wsij = self.mul(&wsi, &self.simple_elt(j));
                        let wsji = self.mul(&wsj, &self.simple_elt(i));
                        out.push(Hexagon {
                            w: wi,
                            i,
                            j,
                            lhs: [self.neg_w_omega_index(&wsi, i), self.neg_w_omega_index(&wsj, j)],
                            rhs_a: [self.neg_w_omega_index(w, i), self.neg_w_omega_index(&wsij, j)],
                            rhs_b: [self.neg_w_omega_index(&wsji, i), self.neg_w_omega_index(w, j)],
                        });
                    }
                }
            }
            out
        })
        .as_slice())
    }

    pub fn edge_ineqs(&self) -> Result<&[EdgeIneq]> {
        self.elements()?;
        Ok(self.edge_ineqs.get_or_init(|| {
            let elts = self.elements().unwrap();
            let mut out = Vec::new();
            for (wi, w) in elts.iter().enumerate() {
                for i in 0..self.rank {
                    let wsi = self.mul(w, &self.simple_elt(i));
                    let pos = [self.neg_w_omega_index(w, i), self.neg_w_omega_index(&wsi, i)];
                    let neg = self.adjacent(i).map(|j| self.neg_w_omega_index(w, j)).collect();
                    out.push(EdgeIneq { w: wi, i, pos, neg });
                }
            }
            out
        })
        .as_slice())
    }

    /// For each Weyl element `w`: a reduced word of w0 whose prefix of length
    /// `l(w w0)` multiplies to `w w0` (lex-least prefix, then a greedy-descent
    /// completion). Used to read vertices out of Lusztig data.
    pub fn ext_word(&self, w_idx: usize) -> Result<&(usize, Vec<usize>)> {
        self.elements()?;
        let table = self.ext_words.get_or_init(|| {
            let elts = self.elements().unwrap();
            elts.iter()
                .map(|w| {
                    let u = self.mul(w, &self.w0);
                    let tail = self.mul(&self.inv(&u), &self.w0);
                    let mut word = u.word().to_vec();
                    word.extend_from_slice(tail.word());
                    debug_assert_eq!(word.len(), self.w0.len());
                    (u.len(), word)
                })
                .collect()
        });
        Ok(&table[w_idx])
    }
}

fn positive_roots_of(n: usize, _cartan: &[i64], simple_rt: &[Vec<i64>]) -> Vec<RootVec> {
    let mut seen: HashMap<Vec<i64>, ()> = HashMap::new();
    let mut queue = VecDeque::new();
    let mut out = Vec::new();
    for i in 0..n {
        let mut v = vec![0i64; n];
        v[i] = 1;
        seen.insert(v.clone(), ());
        out.push(RootVec(v.clone()));
        queue.push_back(v);
    }
    while let Some(v) = queue.pop_front() {
        for j in 0..n {
            let w = mat_vec(n, &simple_rt[j], &v);
            if w.iter().all(|&c| c >= 0) && seen.insert(w.clone(), ()).is_none() {
                out.push(RootVec(w.clone()));
                queue.push_back(w);
            }
        }
    }
    out.sort_by(|a, b| (a.height(), &a.0).cmp(&(b.height(), &b.0)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quiver::Quiver;

    fn a2() -> RootSystem {
        RootSystem::new(Family::A, 2).unwrap()
    }

    #[test]
    fn counts_small_types() {
        let rs = a2();
        assert_eq!(rs.num_positive_roots(), 3);
        assert_eq!(rs.elements().unwrap().len(), 6);
        assert_eq!(rs.chamber_weights().len(), 6);

        let rs3 = RootSystem::new(Family::A, 3).unwrap();
        assert_eq!(rs3.num_positive_roots(), 6);
        assert_eq!(rs3.elements().unwrap().len(), 24);

        let d4 = RootSystem::new(Family::D, 4).unwrap();
        assert_eq!(d4.num_positive_roots(), 12);
        assert_eq!(d4.elements().unwrap().len(), 192);
        assert_eq!(d4.weyl_order(), 192);
    }

    #[test]
    fn invalid_ranks_rejected() {
        assert!(RootSystem::new(Family::A, 0).is_err());
        assert!(RootSystem::new(Family::D, 3).is_err());
        assert!(RootSystem::new(Family::E, 5).is_err());
        assert!(RootSystem::new(Family::E, 9).is_err());
    }

    #[test]
    fn pairing_examples() {
        let rs = a2();
        assert_eq!(rs.pair(&rs.fundamental_weight(0), &rs.simple_root(0)), 1);
        assert_eq!(rs.pair(&rs.fundamental_weight(0), &rs.simple_root(1)), 0);
        assert_eq!(rs.sym(&rs.simple_root(0), &rs.simple_root(1)), -1);
        assert_eq!(rs.sym(&rs.simple_root(0), &rs.simple_root(0)), 2);
    }

    #[test]
    fn action_examples() {
        let rs = a2();
        let s1 = rs.simple_elt(0);
        assert_eq!(rs.act_root(&s1, &rs.simple_root(0)), rs.simple_root(0).neg());
        // s_1(w_1) = w_2 - w_1
        assert_eq!(rs.act_weight(&s1, &rs.fundamental_weight(0)), WeightVec(vec![-1, 1]));
        // w_0(w_1) = -w_2
        assert_eq!(rs.act_weight(rs.w0(), &rs.fundamental_weight(0)), WeightVec(vec![0, -1]));
        assert_eq!(rs.w0().len(), 3);
    }

    #[test]
    fn word_invariants_and_products() {
        let rs = RootSystem::new(Family::A, 3).unwrap();
        for w in rs.elements().unwrap() {
            assert_eq!(rs.from_word(w.word()), *w);
            assert_eq!(rs.rt_len(&w.rt_mat), w.len());
        }
        let a = rs.from_word(&[0, 1]);
        let b = rs.from_word(&[2, 1]);
        let ab = rs.mul(&a, &b);
        assert_eq!(ab, rs.from_word(&[0, 1, 2, 1]));
        assert!(rs.mul(&a, &rs.inv(&a)).is_identity());
    }

    #[test]
    fn pair_is_w_invariant() {
        let rs = RootSystem::new(Family::A, 3).unwrap();
        for w in rs.elements().unwrap().iter().step_by(3) {
            for gi in 0..3 {
                for ri in 0..3 {
                    let g = rs.fundamental_weight(gi);
                    let r = rs.simple_root(ri);
                    assert_eq!(rs.pair(&rs.act_weight(w, &g), &rs.act_root(w, &r)), rs.pair(&g, &r));
                }
            }
        }
    }

    #[test]
    fn reduced_word_graphs() {
        let rs = a2();
        let g = rs.w0_word_graph();
        assert_eq!(g.words.len(), 2);
        assert!(g.index.contains_key(&vec![0usize, 1, 0]));
        assert!(g.index.contains_key(&vec![1usize, 0, 1]));
        assert_eq!(g.edges[0].len(), 1);

        let rs3 = RootSystem::new(Family::A, 3).unwrap();
        assert_eq!(rs3.w0_word_graph().words.len(), 16);
        let s1 = rs3.simple_elt(0);
        assert_eq!(rs3.word_graph_of(&s1).words.len(), 1);
    }

    #[test]
    fn adapted_words_a2() {
        let rs = a2();
        let q = Quiver::new(2, vec![(0, 1)]);
        assert_eq!(rs.adapted_word(&q, AdaptMode::Sink).unwrap(), vec![1, 0, 1]);
        assert_eq!(rs.adapted_word(&q, AdaptMode::Source).unwrap(), vec![0, 1, 0]);
        let rs1 = RootSystem::new(Family::A, 1).unwrap();
        let q1 = Quiver::new(1, vec![]);
        assert_eq!(rs1.adapted_word(&q1, AdaptMode::Sink).unwrap(), vec![0]);
    }

    #[test]
    fn adapted_words_are_adapted_and_reduced() {
        for (fam, rank) in [(Family::A, 3), (Family::D, 4)] {
            let rs = RootSystem::new(fam, rank).unwrap();
            let q = Quiver::default_orientation(rs.dynkin(), rank);
            for mode in [AdaptMode::Sink, AdaptMode::Source] {
                let word = rs.adapted_word(&q, mode).unwrap();
                assert_eq!(word.len(), rs.num_positive_roots());
                assert_eq!(&rs.from_word(&word), rs.w0());
                let mut cur = q.clone();
                for &c in &word {
                    match mode {
                        AdaptMode::Sink => assert!(cur.sinks().contains(&c)),
                        AdaptMode::Source => assert!(cur.sources().contains(&c)),
                    }
                    cur = cur.reflect_at(c);
                }
            }
        }
    }

    #[test]
    fn antidominant_factorization_examples() {
        let rs = a2();
        let (w, lam) = rs.antidominant_factorization(&WeightVec(vec![-1, 0]));
        assert!(w.is_identity());
        assert_eq!(lam, WeightVec(vec![-1, 0]));

        // w_2 - w_1 = s_2(-w_2)
        let (w, lam) = rs.antidominant_factorization(&WeightVec(vec![-1, 1]));
        assert_eq!(w.word(), &[1]);
        assert_eq!(lam, WeightVec(vec![0, -1]));

        let (w, lam) = rs.antidominant_factorization(&WeightVec(vec![0, 0]));
        assert!(w.is_identity());
        assert!(lam.is_zero());
    }

    #[test]
    fn chamber_table_structure() {
        for (fam, rank, expect) in [(Family::A, 2, 6), (Family::A, 3, 14), (Family::D, 4, 48)] {
            let rs = RootSystem::new(fam, rank).unwrap();
            assert_eq!(rs.chamber_weights().len(), expect);
            let mut orbit_total = 0;
            for i in 0..rank {
                let mut count = 0;
                for g in rs.chamber_weights() {
                    let (fi, w) = {
                        let idx = rs.chamber_index(g).unwrap();
                        rs.chamber_cert(idx).clone()
                    };
                    if fi == i {
                        count += 1;
                        assert_eq!(rs.act_weight(&w, &rs.fundamental_weight(fi)), *g);
                    }
                }
                orbit_total += count;
            }
            assert_eq!(orbit_total, rs.chamber_weights().len());
            // every chamber weight has a unique antidominant conjugate -w_j
            for g in rs.chamber_weights() {
                let (_, lam) = rs.antidominant_factorization(g);
                assert_eq!(lam.0.iter().filter(|&&c| c != 0).count(), 1);
                assert_eq!(lam.0.iter().sum::<i64>(), -1);
            }
        }
    }

    #[test]
    fn hexagons_satisfy_defining_conditions() {
        let rs = RootSystem::new(Family::A, 3).unwrap();
        let elts = rs.elements().unwrap();
        for h in rs.hexagons().unwrap() {
            assert_eq!(rs.cartan(h.i, h.j), -1);
            let w = &elts[h.w];
            assert!(rs.right_ascent(w, h.i));
            assert!(rs.right_ascent(w, h.j));
        }
        // A2 has exactly one hexagon, at the identity.
        assert_eq!(a2().hexagons().unwrap().len(), 1);
    }

    #[test]
    fn dynkin_star_and_w0() {
        let rs = a2();
        assert_eq!(rs.dynkin_star(0), 1);
        assert_eq!(rs.dynkin_star(1), 0);
        let d4 = RootSystem::new(Family::D, 4).unwrap();
        for i in 0..4 {
            assert_eq!(d4.dynkin_star(i), i); // -1 is in W(D4)
        }
        // w0 maps the dominant cone to the antidominant cone
        let rho = WeightVec(vec![1, 1, 1, 1]);
        assert!(d4.is_antidominant(&d4.act_weight(d4.w0(), &rho)));
    }

    #[test]
    fn large_types_constructible_without_enumeration() {
        let e8 = RootSystem::new(Family::E, 8).unwrap();
        assert!(!e8.is_enumerable());
        assert_eq!(e8.num_positive_roots(), 120);
        assert_eq!(e8.w0().len(), 120);
        assert!(e8.elements().is_err());
        let e6 = RootSystem::new(Family::E, 6).unwrap();
        assert!(e6.is_enumerable());
    }
}
