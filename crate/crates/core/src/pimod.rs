//! Modules over the preprojective algebra of a (possibly extended) quiver and
//! over the path algebra of the oriented quiver: validity, duality, Hom/Ext
//! dimensions, socles and heads, direct sums, randomized isomorphism testing.
//!
//! A `PiModule` stores one matrix per arrow of the doubled quiver: `fwd[k]` is
//! the map of arrow `k` and `bwd[k]` the map of its reversal `k*`. The sign
//! function is `+1` on forward arrows and `-1` on reversed ones, and the
//! preprojective relation at vertex `v` reads
//! `sum_{t(a)=v} eps(a) M_a M_{a*} = 0` over arrows of the doubled quiver.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::linalg::Matrix;
use crate::quiver::Quiver;
use rand::Rng;

#[derive(Clone, PartialEq, Debug)]
pub struct PiModule<F: Field> {
    pub field: F,
    pub quiver: Quiver,
    pub dims: Vec<usize>,
    pub fwd: Vec<Matrix<F>>,
    pub bwd: Vec<Matrix<F>>,
}

#[derive(Clone, PartialEq, Debug)]
pub struct KQModule<F: Field> {
    pub field: F,
    pub quiver: Quiver,
    pub dims: Vec<usize>,
    pub maps: Vec<Matrix<F>>,
}

/// Shared shape of both module kinds: a dimension vector plus one matrix per
/// constraint-carrying arrow. Lets the Hom solver and the isomorphism test
/// work uniformly.
pub trait ArrowMaps<F: Field> {
    fn field(&self) -> &F;
    fn dims(&self) -> &[usize];
    /// `(src, dst, map)` triples; for preprojective modules both directions.
    fn arrow_maps(&self) -> Vec<(usize, usize, &Matrix<F>)>;
}

impl<F: Field> ArrowMaps<F> for PiModule<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn arrow_maps(&self) -> Vec<(usize, usize, &Matrix<F>)> {
        let mut v = Vec::with_capacity(2 * self.quiver.arrows.len());
        for (k, &(s, t)) in self.quiver.arrows.iter().enumerate() {
            v.push((s, t, &self.fwd[k]));
            v.push((t, s, &self.bwd[k]));
        }
        v
    }
}

impl<F: Field> ArrowMaps<F> for KQModule<F> {
    fn field(&self) -> &F {
        &self.field
    }

    fn dims(&self) -> &[usize] {
        &self.dims
    }

    fn arrow_maps(&self) -> Vec<(usize, usize, &Matrix<F>)> {
        self.quiver
            .arrows
            .iter()
            .enumerate()
            .map(|(k, &(s, t))| (s, t, &self.maps[k]))
            .collect()
    }
}

impl<F: Field> PiModule<F> {
    pub fn zero(field: F, quiver: Quiver, dims: Vec<usize>) -> Self {
        assert_eq!(dims.len(), quiver.n);
        let fwd = quiver
            .arrows
            .iter()
            .map(|&(s, t)| Matrix::zero(field.clone(), dims[t], dims[s]))
            .collect();
        let bwd = quiver
            .arrows
            .iter()
            .map(|&(s, t)| Matrix::zero(field.clone(), dims[s], dims[t]))
            .collect();
        PiModule { field, quiver, dims, fwd, bwd }
    }

    pub fn simple(field: F, quiver: Quiver, v: usize) -> Self {
        let mut dims = vec![0; quiver.n];
        dims[v] = 1;
        Self::zero(field, quiver, dims)
    }

    pub fn new(field: F, quiver: Quiver, dims: Vec<usize>, fwd: Vec<Matrix<F>>, bwd: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != quiver.n || fwd.len() != quiver.arrows.len() || bwd.len() != quiver.arrows.len() {
            return Err(Error::ShapeMismatch("module data does not match the quiver".into()));
        }
        for (k, &(s, t)) in quiver.arrows.iter().enumerate() {
            if fwd[k].rows() != dims[t] || fwd[k].cols() != dims[s] {
                return Err(Error::ShapeMismatch(format!("arrow {k}: expected {}x{}", dims[t], dims[s])));
            }
            if bwd[k].rows() != dims[s] || bwd[k].cols() != dims[t] {
                return Err(Error::ShapeMismatch(format!("arrow {k}*: expected {}x{}", dims[s], dims[t])));
            }
        }
        Ok(PiModule { field, quiver, dims, fwd, bwd })
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dimvec(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    /// Checks the preprojective relation at every vertex; reports the first
    /// violating vertex.
    pub fn validate(&self) -> Result<()> {
        for v in 0..self.quiver.n {
            let acc = self.relation_at(v);
            if !acc.is_zero() {
                return Err(Error::RelationViolation { vertex: v });
            }
        }
        Ok(())
    }

    fn relation_at(&self, v: usize) -> Matrix<F> {
        let f = &self.field;
        let mut acc = Matrix::zero(f.clone(), self.dims[v], self.dims[v]);
        for (k, &(s, t)) in self.quiver.arrows.iter().enumerate() {
            if t == v {
                acc = acc.add(&self.fwd[k].mul(&self.bwd[k]));
            }
            if s == v {
                acc = acc.sub(&self.bwd[k].mul(&self.fwd[k]));
            }
        }
        acc
    }

    /// Transpose every matrix and re-key by the arrow involution.
    pub fn dual(&self) -> Self {
        let fwd = self.bwd.iter().map(|m| m.transpose()).collect();
        let bwd = self.fwd.iter().map(|m| m.transpose()).collect();
        PiModule { field: self.field.clone(), quiver: self.quiver.clone(), dims: self.dims.clone(), fwd, bwd }
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.quiver, other.quiver, "direct sum across different quivers");
        let f = self.field.clone();
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let fwd = self
            .fwd
            .iter()
            .zip(&other.fwd)
            .map(|(a, b)| Matrix::block_diag(f.clone(), &[a, b]))
            .collect();
        let bwd = self
            .bwd
            .iter()
            .zip(&other.bwd)
            .map(|(a, b)| Matrix::block_diag(f.clone(), &[a, b]))
            .collect();
        PiModule { field: f, quiver: self.quiver.clone(), dims, fwd, bwd }
    }

    /// Forget the reversed arrows. Only meaningful for plain quivers.
    pub fn restrict_to_q(&self) -> KQModule<F> {
        assert!(!self.quiver.is_extended(), "restrict is for modules over the plain quiver");
        KQModule {
            field: self.field.clone(),
            quiver: self.quiver.clone(),
            dims: self.dims.clone(),
            maps: self.fwd.clone(),
        }
    }

    /// Stability for extended-quiver modules: trivial socle at every unprimed
    /// vertex, i.e. the aggregated outgoing map (including `d_i`) is injective.
    pub fn is_stable(&self) -> bool {
        assert!(self.quiver.is_extended());
        (0..self.quiver.base).all(|v| self.socle_at(v).0 == 0)
    }

    /// `(dim soc_i, embedding K^d -> M_i)`: the kernel of the aggregated
    /// outgoing map at `v`.
    pub fn socle_at(&self, v: usize) -> (usize, Matrix<F>) {
        let ld = LocalData::at(self, v);
        let k = ld.m_out.kernel_basis();
        (k.cols(), k)
    }

    /// `(dim hd_i, projection M_i -> K^c)`: the cokernel of the aggregated
    /// incoming map at `v`.
    pub fn head_at(&self, v: usize) -> (usize, Matrix<F>) {
        let ld = LocalData::at(self, v);
        let p = ld.m_in.transpose().kernel_basis().transpose();
        (p.rows(), p)
    }
}

impl<F: Field> KQModule<F> {
    pub fn zero(field: F, quiver: Quiver, dims: Vec<usize>) -> Self {
        assert_eq!(dims.len(), quiver.n);
        let maps = quiver
            .arrows
            .iter()
            .map(|&(s, t)| Matrix::zero(field.clone(), dims[t], dims[s]))
            .collect();
        KQModule { field, quiver, dims, maps }
    }

    pub fn simple(field: F, quiver: Quiver, v: usize) -> Self {
        let mut dims = vec![0; quiver.n];
        dims[v] = 1;
        Self::zero(field, quiver, dims)
    }

    pub fn new(field: F, quiver: Quiver, dims: Vec<usize>, maps: Vec<Matrix<F>>) -> Result<Self> {
        if dims.len() != quiver.n || maps.len() != quiver.arrows.len() {
            return Err(Error::ShapeMismatch("module data does not match the quiver".into()));
        }
        for (k, &(s, t)) in quiver.arrows.iter().enumerate() {
            if maps[k].rows() != dims[t] || maps[k].cols() != dims[s] {
                return Err(Error::ShapeMismatch(format!("arrow {k}: expected {}x{}", dims[t], dims[s])));
            }
        }
        Ok(KQModule { field, quiver, dims, maps })
    }

    pub fn total_dim(&self) -> usize {
        self.dims.iter().sum()
    }

    pub fn dimvec(&self) -> Vec<i64> {
        self.dims.iter().map(|&d| d as i64).collect()
    }

    pub fn direct_sum(&self, other: &Self) -> Self {
        assert_eq!(self.quiver, other.quiver);
        let f = self.field.clone();
        let dims = self.dims.iter().zip(&other.dims).map(|(a, b)| a + b).collect();
        let maps = self
            .maps
            .iter()
            .zip(&other.maps)
            .map(|(a, b)| Matrix::block_diag(f.clone(), &[a, b]))
            .collect();
        KQModule { field: f, quiver: self.quiver.clone(), dims, maps }
    }

    /// Attach reversed-arrow maps; fails if the preprojective relations break.
    pub fn embed(&self, bwd: Vec<Matrix<F>>) -> Result<PiModule<F>> {
        let m = PiModule::new(
            self.field.clone(),
            self.quiver.clone(),
            self.dims.clone(),
            self.maps.clone(),
            bwd,
        )?;
        m.validate()?;
        Ok(m)
    }

    /// Socle at a vertex: kernel of the aggregated outgoing maps (over E only).
    pub fn socle_at(&self, v: usize) -> (usize, Matrix<F>) {
        let f = self.field.clone();
        let outs: Vec<&Matrix<F>> = self
            .quiver
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, &(s, _))| s == v)
            .map(|(k, _)| &self.maps[k])
            .collect();
        let stacked = if outs.is_empty() {
            Matrix::zero(f.clone(), 0, self.dims[v])
        } else {
            Matrix::vstack(f.clone(), &outs)
        };
        let k = stacked.kernel_basis();
        (k.cols(), k)
    }

    /// Head at a vertex: cokernel of the aggregated incoming maps.
    pub fn head_at(&self, v: usize) -> (usize, Matrix<F>) {
        let f = self.field.clone();
        let ins: Vec<&Matrix<F>> = self
            .quiver
            .arrows
            .iter()
            .enumerate()
            .filter(|(_, &(_, t))| t == v)
            .map(|(k, _)| &self.maps[k])
            .collect();
        let joined = if ins.is_empty() {
            Matrix::zero(f.clone(), self.dims[v], 0)
        } else {
            Matrix::hstack(f.clone(), &ins)
        };
        let p = joined.transpose().kernel_basis().transpose();
        (p.rows(), p)
    }
}

/// The aggregated picture at one vertex: the sum of the spaces at the sources
/// of all doubled arrows ending there, with the signed incoming map and the
/// unsigned outgoing map. The preprojective relation at the vertex is
/// `m_in * m_out = 0`.
pub struct LocalData<F: Field> {
    /// `(arrow index, forward?, component width)` in scan order
    pub components: Vec<(usize, bool, usize)>,
    pub offsets: Vec<usize>,
    pub dim_tilde: usize,
    pub m_in: Matrix<F>,
    pub m_out: Matrix<F>,
}

impl<F: Field> LocalData<F> {
    pub fn at(m: &PiModule<F>, v: usize) -> Self {
        let f = m.field.clone();
        let mut components = Vec::new();
        let mut in_blocks: Vec<Matrix<F>> = Vec::new();
        let mut out_blocks: Vec<Matrix<F>> = Vec::new();
        for (k, &(s, t)) in m.quiver.arrows.iter().enumerate() {
            if t == v {
                // forward arrow k ends at v: eps = +1, star map is bwd[k]
                components.push((k, true, m.dims[s]));
                in_blocks.push(m.fwd[k].clone());
                out_blocks.push(m.bwd[k].clone());
            }
            if s == v {
                // reversed arrow k* ends at v: eps = -1, star map is fwd[k]
                components.push((k, false, m.dims[t]));
                in_blocks.push(m.bwd[k].neg());
                out_blocks.push(m.fwd[k].clone());
            }
        }
        let mut offsets = Vec::with_capacity(components.len());
        let mut acc = 0;
        for &(_, _, w) in &components {
            offsets.push(acc);
            acc += w;
        }
        let m_in = if in_blocks.is_empty() {
            Matrix::zero(f.clone(), m.dims[v], 0)
        } else {
            let refs: Vec<&Matrix<F>> = in_blocks.iter().collect();
            Matrix::hstack(f.clone(), &refs)
        };
        let m_out = if out_blocks.is_empty() {
            Matrix::zero(f.clone(), 0, m.dims[v])
        } else {
            let refs: Vec<&Matrix<F>> = out_blocks.iter().collect();
            Matrix::vstack(f.clone(), &refs)
        };
        LocalData { components, offsets, dim_tilde: acc, m_in, m_out }
    }

    /// Rebuild a module from `m` with vertex `v` replaced: `new_in` maps the
    /// aggregated space to the new one, `new_out` embeds it back.
    pub fn reassemble(&self, m: &PiModule<F>, v: usize, new_dim: usize, new_in: &Matrix<F>, new_out: &Matrix<F>) -> PiModule<F> {
        let mut out = m.clone();
        out.dims[v] = new_dim;
        for (ci, &(k, forward, width)) in self.components.iter().enumerate() {
            let off = self.offsets[ci];
            let in_block = new_in.col_slice(off, off + width);
            let out_block = new_out.row_slice(off, off + width);
            if forward {
                out.fwd[k] = in_block; // eps = +1
                out.bwd[k] = out_block;
            } else {
                out.bwd[k] = in_block.neg(); // eps = -1
                out.fwd[k] = out_block;
            }
        }
        out
    }
}

// ---- Hom machinery ----

/// Constraint matrix whose null space is the space of module homomorphisms.
fn hom_system<F: Field, M: ArrowMaps<F>>(m: &M, n: &M) -> (Matrix<F>, Vec<usize>) {
    let f = m.field().clone();
    let md = m.dims();
    let nd = n.dims();
    assert_eq!(md.len(), nd.len(), "modules over different quivers");
    let nv = md.len();
    let mut offsets = Vec::with_capacity(nv);
    let mut total = 0usize;
    for v in 0..nv {
        offsets.push(total);
        total += nd[v] * md[v];
    }
    let ma = m.arrow_maps();
    let na = n.arrow_maps();
    assert_eq!(ma.len(), na.len());
    let rows: usize = ma.iter().map(|&(s, t, _)| nd[t] * md[s]).sum();
    let mut sys = Matrix::zero(f.clone(), rows, total);
    let mut row = 0usize;
    for (&(s, t, mmap), &(_, _, nmap)) in ma.iter().zip(na.iter()) {
        // f_t * M_a - N_a * f_s = 0, entry (u, v)
        for u in 0..nd[t] {
            for v in 0..md[s] {
                for w in 0..md[t] {
                    // coefficient of f_t[u, w]
                    let c = mmap.get(w, v).clone();
                    if !f.is_zero(&c) {
                        let col = offsets[t] + u * md[t] + w;
                        let prev = sys.get(row, col).clone();
                        sys.set(row, col, f.add(&prev, &c));
                    }
                }
                for w in 0..nd[s] {
                    // coefficient of f_s[w, v]
                    let c = f.neg(nmap.get(u, w));
                    if !f.is_zero(&c) {
                        let col = offsets[s] + w * md[s] + v;
                        let prev = sys.get(row, col).clone();
                        sys.set(row, col, f.add(&prev, &c));
                    }
                }
                row += 1;
            }
        }
    }
    (sys, offsets)
}

pub fn hom_dim<F: Field, M: ArrowMaps<F>>(m: &M, n: &M) -> usize {
    let total: usize = m.dims().iter().zip(n.dims()).map(|(a, b)| a * b).sum();
    if total == 0 {
        return 0;
    }
    let (sys, _) = hom_system(m, n);
    total - sys.rank()
}

/// A basis of the Hom space, each element given as one matrix per vertex.
pub fn hom_basis<F: Field, M: ArrowMaps<F>>(m: &M, n: &M) -> Vec<Vec<Matrix<F>>> {
    let f = m.field().clone();
    let md = m.dims();
    let nd = n.dims();
    let (sys, offsets) = hom_system(m, n);
    let kb = sys.kernel_basis();
    (0..kb.cols())
        .map(|c| {
            (0..md.len())
                .map(|v| {
                    Matrix::from_fn(f.clone(), nd[v], md[v], |r, k| kb.get(offsets[v] + r * md[v] + k, c).clone())
                })
                .collect()
        })
        .collect()
}

pub fn is_module_map<F: Field, M: ArrowMaps<F>>(m: &M, n: &M, maps: &[Matrix<F>]) -> bool {
    let ma = m.arrow_maps();
    let na = n.arrow_maps();
    ma.iter()
        .zip(na.iter())
        .all(|(&(s, t, mm), &(_, _, nm))| maps[t].mul(mm) == nm.mul(&maps[s]))
}

/// `dim Ext^1` through the homological dimension formula for the preprojective
/// algebra: `hom(M,N) + hom(N,M) - <dim M, dim N>`. A negative value signals
/// an invalid module or an unlucky prime and is surfaced as an error.
pub fn ext1_dim<F: Field>(m: &PiModule<F>, n: &PiModule<F>) -> Result<usize> {
    let form = m.quiver.sym_form(&m.dimvec(), &n.dimvec());
    let value = hom_dim(m, n) as i64 + hom_dim(n, m) as i64 - form;
    if value < 0 {
        return Err(Error::NegativeExt);
    }
    Ok(value as usize)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum IsoVerdict {
    Yes,
    No(&'static str),
    Inconclusive,
}

impl IsoVerdict {
    pub fn is_yes(self) -> bool {
        matches!(self, IsoVerdict::Yes)
    }
}

/// Randomized isomorphism test. "Yes" is certified by an explicit invertible
/// intertwiner, "No" by an exact invariant; after `attempts` failed draws the
/// verdict is `Inconclusive`, never silently coerced.
pub fn is_isomorphic<F: Field, M: ArrowMaps<F>, R: Rng + ?Sized>(
    m: &M,
    n: &M,
    attempts: usize,
    rng: &mut R,
) -> IsoVerdict {
    if m.dims() != n.dims() {
        return IsoVerdict::No("dimension vectors differ");
    }
    if m.dims().iter().all(|&d| d == 0) {
        return IsoVerdict::Yes;
    }
    let h_mn = hom_dim(m, n);
    if h_mn != hom_dim(n, m) || h_mn != hom_dim(m, m) || hom_dim(m, m) != hom_dim(n, n) {
        return IsoVerdict::No("Hom dimensions distinguish the modules");
    }
    if h_mn == 0 {
        return IsoVerdict::No("no nonzero homomorphisms");
    }
    let f = m.field().clone();
    let basis = hom_basis(m, n);
    let nv = m.dims().len();
    for _ in 0..attempts {
        let coeffs: Vec<F::Elem> = (0..basis.len()).map(|_| f.sample(rng)).collect();
        let mut cand: Vec<Matrix<F>> = (0..nv)
            .map(|v| Matrix::zero(f.clone(), n.dims()[v], m.dims()[v]))
            .collect();
        for (b, c) in basis.iter().zip(&coeffs) {
            if f.is_zero(c) {
                continue;
            }
            for v in 0..nv {
                cand[v] = cand[v].add(&b[v].scale(c));
            }
        }
        if cand.iter().all(|mat| mat.rank() == mat.rows()) {
            debug_assert!(is_module_map(m, n, &cand));
            return IsoVerdict::Yes;
        }
    }
    IsoVerdict::Inconclusive
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn fp() -> PrimeField {
        PrimeField::default_prime()
    }

    /// The A3 quiver of the running examples: arrows 1 <- 2 -> 3 (0-indexed:
    /// a: 1 -> 0, b: 1 -> 2).
    fn a3_paper_quiver() -> Quiver {
        Quiver::new(3, vec![(1, 0), (1, 2)])
    }

    /// Dimension-vector (1,2,1) module: top basis vector of the middle space
    /// maps out to both ends, the ends map back onto the bottom basis vector
    /// with a sign on one side.
    fn hexagonal_module() -> PiModule<PrimeField> {
        let f = fp();
        let q = a3_paper_quiver();
        let fwd = vec![
            Matrix::from_i64(f, 1, 2, &[1, 0]),
            Matrix::from_i64(f, 1, 2, &[1, 0]),
        ];
        let bwd = vec![
            Matrix::from_i64(f, 2, 1, &[0, 1]),
            Matrix::from_i64(f, 2, 1, &[0, -1]),
        ];
        PiModule::new(f, q, vec![1, 2, 1], fwd, bwd).unwrap()
    }

    #[test]
    fn validate_example_module() {
        let m = hexagonal_module();
        assert!(m.validate().is_ok());
        assert!(PiModule::zero(fp(), a3_paper_quiver(), vec![2, 3, 1]).validate().is_ok());
    }

    #[test]
    fn validate_detects_broken_sign() {
        let mut m = hexagonal_module();
        m.bwd[1] = Matrix::from_i64(fp(), 2, 1, &[0, 1]);
        match m.validate() {
            Err(Error::RelationViolation { vertex }) => assert_eq!(vertex, 1),
            other => panic!("expected violation at vertex 1, got {other:?}"),
        }
    }

    #[test]
    fn dual_involution_and_validity() {
        let m = hexagonal_module();
        let d = m.dual();
        assert!(d.validate().is_ok());
        assert_eq!(d.dual(), m);
        let s = PiModule::simple(fp(), a3_paper_quiver(), 1);
        assert_eq!(s.dual(), s);
    }

    #[test]
    fn hom_and_ext_dimensions() {
        let f = fp();
        let q = Quiver::new(2, vec![(0, 1)]);
        let s1 = PiModule::simple(f, q.clone(), 0);
        let s2 = PiModule::simple(f, q.clone(), 1);
        assert_eq!(hom_dim(&s1, &s1), 1);
        assert_eq!(hom_dim(&s1, &s2), 0);
        assert_eq!(ext1_dim(&s1, &s2).unwrap(), 1);
        assert_eq!(ext1_dim(&s1, &s1).unwrap(), 0);
    }

    #[test]
    fn socle_and_head() {
        let f = fp();
        let q = Quiver::new(2, vec![(0, 1)]);
        // M_a = 1, starred map 0: socle sits at vertex 1, head at vertex 0...
        let m = PiModule::new(
            f,
            q.clone(),
            vec![1, 1],
            vec![Matrix::from_i64(f, 1, 1, &[1])],
            vec![Matrix::zero(f, 1, 1)],
        )
        .unwrap();
        assert_eq!(m.socle_at(1).0, 1);
        assert_eq!(m.socle_at(0).0, 0);
        assert_eq!(m.head_at(0).0, 1);
        assert_eq!(m.head_at(1).0, 0);

        let s1 = PiModule::simple(f, q.clone(), 0);
        assert_eq!(s1.head_at(0).0, 1);
        assert_eq!(s1.socle_at(1).0, 0);

        // socle/head dimensions agree with Hom against simples
        for v in 0..2 {
            let s = PiModule::simple(f, q.clone(), v);
            assert_eq!(m.socle_at(v).0, hom_dim(&s, &m));
            assert_eq!(m.head_at(v).0, hom_dim(&m, &s));
        }
    }

    #[test]
    fn direct_sum_additivity() {
        let f = fp();
        let q = a3_paper_quiver();
        let s1 = PiModule::simple(f, q.clone(), 0);
        let s2 = PiModule::simple(f, q.clone(), 1);
        let m = hexagonal_module();
        let sum = s1.direct_sum(&s2);
        assert_eq!(sum.dimvec(), vec![1, 1, 0]);
        assert!(sum.validate().is_ok());
        assert_eq!(hom_dim(&sum, &m), hom_dim(&s1, &m) + hom_dim(&s2, &m));
        let z = PiModule::zero(f, q, vec![0, 0, 0]);
        assert_eq!(m.direct_sum(&z), m);
    }

    #[test]
    fn isomorphism_verdicts() {
        let f = fp();
        let q = Quiver::new(2, vec![(0, 1)]);
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let s1 = PiModule::simple(f, q.clone(), 0);
        let s2 = PiModule::simple(f, q.clone(), 1);
        assert!(is_isomorphic(&s1, &s1, 8, &mut rng).is_yes());
        assert_eq!(is_isomorphic(&s1, &s2, 8, &mut rng), IsoVerdict::No("dimension vectors differ"));

        // nontrivial extension vs. semisimple of the same dimension vector
        let ext = PiModule::new(
            f,
            q.clone(),
            vec![1, 1],
            vec![Matrix::from_i64(f, 1, 1, &[1])],
            vec![Matrix::zero(f, 1, 1)],
        )
        .unwrap();
        let semi = s1.direct_sum(&s2);
        assert!(matches!(is_isomorphic(&ext, &semi, 8, &mut rng), IsoVerdict::No(_)));
    }

    #[test]
    fn restrict_embed_round_trip() {
        let f = fp();
        let q = Quiver::new(2, vec![(0, 1)]);
        let x = KQModule::new(f, q.clone(), vec![1, 1], vec![Matrix::from_i64(f, 1, 1, &[1])]).unwrap();
        let m = x.embed(vec![Matrix::zero(f, 1, 1)]).unwrap();
        assert_eq!(m.restrict_to_q(), x);
        // relation-violating starred maps are rejected
        assert!(x.embed(vec![Matrix::from_i64(f, 1, 1, &[1])]).is_err());
    }

    #[test]
    fn stability_examples() {
        let f = fp();
        let q = Quiver::new(2, vec![(0, 1)]).extended();
        // concentrated at a primed vertex: stable
        let mut dims = vec![0, 0, 0, 0];
        dims[2] = 1;
        assert!(PiModule::zero(f, q.clone(), dims).is_stable());
        // a simple at an unprimed vertex: not stable
        assert!(!PiModule::simple(f, q, 0).is_stable());
    }

    #[test]
    fn crawley_bovey_symmetry_of_hom_under_duality() {
        let m = hexagonal_module();
        let s = PiModule::simple(fp(), a3_paper_quiver(), 1);
        assert_eq!(hom_dim(&m, &s), hom_dim(&s.dual(), &m.dual()));
        assert_eq!(hom_dim(&s, &m), hom_dim(&m.dual(), &s.dual()));
    }
}
