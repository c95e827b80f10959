//! Dense exact linear algebra: reduced row echelon form, rank, kernel bases,
//! general solves. Deterministic first-nonzero pivoting throughout, so kernel
//! and cokernel bases are reproducible across runs.

use crate::error::{Error, Result};
use crate::field::Field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Clone, PartialEq)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> std::fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            write!(f, "{:?}", &self.data[r * self.cols..(r + 1) * self.cols])?;
            if r + 1 < self.rows {
                write!(f, "; ")?;
            }
        }
        write!(f, "]")
    }
}

impl<F: Field> Matrix<F> {
    pub fn zero(field: F, rows: usize, cols: usize) -> Self {
        let data = vec![field.zero(); rows * cols];
        Matrix { field, rows, cols, data }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zero(field, n, n);
        for i in 0..n {
            let one = m.field.one();
            m.set(i, i, one);
        }
        m
    }

    pub fn from_fn(field: F, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> F::Elem) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                data.push(f(r, c));
            }
        }
        Matrix { field, rows, cols, data }
    }

    /// Row-major integer entries, reduced into the field.
    pub fn from_i64(field: F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        let data = entries.iter().map(|&n| field.from_i64(n)).collect();
        Matrix { field, rows, cols, data }
    }

    pub fn from_rows(field: F, rows: &[Vec<i64>]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        let flat: Vec<i64> = rows.iter().flat_map(|row| {
            assert_eq!(row.len(), c, "ragged rows");
            row.iter().copied()
        }).collect();
        Self::from_i64(field, r, c, &flat)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.field.clone(), self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn neg(&self) -> Self {
        Self::from_fn(self.field.clone(), self.rows, self.cols, |r, c| self.field.neg(self.get(r, c)))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "add shape");
        Self::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.add(self.get(r, c), other.get(r, c))
        })
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "sub shape");
        Self::from_fn(self.field.clone(), self.rows, self.cols, |r, c| {
            self.field.sub(self.get(r, c), other.get(r, c))
        })
    }

    pub fn scale(&self, k: &F::Elem) -> Self {
        Self::from_fn(self.field.clone(), self.rows, self.cols, |r, c| self.field.mul(self.get(r, c), k))
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "mul shape {}x{} * {}x{}", self.rows, self.cols, other.rows, other.cols);
        let f = &self.field;
        let mut out = Self::zero(self.field.clone(), self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                for c in 0..other.cols {
                    let t = f.mul(a, other.get(k, c));
                    let s = f.add(out.get(r, c), &t);
                    out.set(r, c, s);
                }
            }
        }
        out
    }

    /// Horizontal concatenation; all parts must share the row count.
    pub fn hstack(field: F, parts: &[&Self]) -> Self {
        let rows = parts.first().map_or(0, |m| m.rows);
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.rows, rows, "hstack rows");
            for r in 0..rows {
                for c in 0..m.cols {
                    out.set(r, off + c, m.get(r, c).clone());
                }
            }
            off += m.cols;
        }
        out
    }

    pub fn vstack(field: F, parts: &[&Self]) -> Self {
        let cols = parts.first().map_or(0, |m| m.cols);
        let rows = parts.iter().map(|m| m.rows).sum();
        let mut out = Self::zero(field, rows, cols);
        let mut off = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "vstack cols");
            for r in 0..m.rows {
                for c in 0..cols {
                    out.set(off + r, c, m.get(r, c).clone());
                }
            }
            off += m.rows;
        }
        out
    }

    pub fn block_diag(field: F, parts: &[&Self]) -> Self {
        let rows = parts.iter().map(|m| m.rows).sum();
        let cols = parts.iter().map(|m| m.cols).sum();
        let mut out = Self::zero(field, rows, cols);
        let (mut ro, mut co) = (0, 0);
        for m in parts {
            for r in 0..m.rows {
                for c in 0..m.cols {
                    out.set(ro + r, co + c, m.get(r, c).clone());
                }
            }
            ro += m.rows;
            co += m.cols;
        }
        out
    }

    /// Columns `lo..hi` as a new matrix.
    pub fn col_slice(&self, lo: usize, hi: usize) -> Self {
        Self::from_fn(self.field.clone(), self.rows, hi - lo, |r, c| self.get(r, lo + c).clone())
    }

    pub fn row_slice(&self, lo: usize, hi: usize) -> Self {
        Self::from_fn(self.field.clone(), hi - lo, self.cols, |r, c| self.get(lo + r, c).clone())
    }

    /// In-place Gauss-Jordan to reduced row echelon form. Returns pivot columns.
    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let mut pivots = Vec::new();
        let mut lead = 0usize;
        for col in 0..self.cols {
            if lead >= self.rows {
                break;
            }
            let mut pivot_row = None;
            for r in lead..self.rows {
                if !f.is_zero(self.get(r, col)) {
                    pivot_row = Some(r);
                    break;
                }
            }
            let Some(pr) = pivot_row else { continue };
            if pr != lead {
                for c in 0..self.cols {
                    self.data.swap(pr * self.cols + c, lead * self.cols + c);
                }
            }
            let inv = f.inv(self.get(lead, col));
            for c in col..self.cols {
                let v = f.mul(self.get(lead, c), &inv);
                self.set(lead, c, v);
            }
            for r in 0..self.rows {
                if r == lead || f.is_zero(self.get(r, col)) {
                    continue;
                }
                let factor = self.get(r, col).clone();
                for c in col..self.cols {
                    let t = f.mul(&factor, self.get(lead, c));
                    let v = f.sub(self.get(r, c), &t);
                    self.set(r, c, v);
                }
            }
            pivots.push(col);
            lead += 1;
        }
        pivots
    }

    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Columns form a basis of the null space; the free coordinates are taken
    /// in ascending column order, which fixes the basis deterministically.
    pub fn kernel_basis(&self) -> Self {
        let f = self.field.clone();
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let free: Vec<usize> = (0..self.cols).filter(|c| !is_pivot[*c]).collect();
        let mut out = Self::zero(f.clone(), self.cols, free.len());
        for (k, &fc) in free.iter().enumerate() {
            out.set(fc, k, f.one());
            for (prow, &pc) in pivots.iter().enumerate() {
                let v = f.neg(r.get(prow, fc));
                out.set(pc, k, v);
            }
        }
        out
    }

    /// Some solution X of `self * X = rhs`, free coordinates set to zero.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        if rhs.rows != self.rows {
            return Err(Error::ShapeMismatch(format!(
                "solve: lhs {}x{}, rhs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let f = self.field.clone();
        let mut aug = Self::hstack(f.clone(), &[self, rhs]);
        let pivots = aug.rref_in_place();
        // A pivot in the rhs block means an inconsistent row.
        if pivots.iter().any(|&p| p >= self.cols) {
            return Err(Error::NoSolution);
        }
        let mut x = Self::zero(f, self.cols, rhs.cols);
        for (prow, &pc) in pivots.iter().enumerate() {
            for c in 0..rhs.cols {
                x.set(pc, c, aug.get(prow, self.cols + c).clone());
            }
        }
        Ok(x)
    }

    /// Uniformly random combination of the kernel basis, deterministic in `seed`.
    pub fn random_kernel_element(&self, seed: u64) -> Vec<F::Elem> {
        let basis = self.kernel_basis();
        let f = &self.field;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let coeffs: Vec<F::Elem> = (0..basis.cols()).map(|_| f.sample(&mut rng)).collect();
        (0..basis.rows())
            .map(|r| {
                let mut acc = f.zero();
                for (c, k) in coeffs.iter().enumerate() {
                    acc = f.add(&acc, &f.mul(basis.get(r, c), k));
                }
                acc
            })
            .collect()
    }

    pub fn col_vec(field: F, entries: &[i64]) -> Self {
        Self::from_i64(field, entries.len(), 1, entries)
    }

    pub fn entries(&self) -> &[F::Elem] {
        &self.data
    }

    pub fn map_entries<G: Field>(&self, field: G, mut f: impl FnMut(&F::Elem) -> G::Elem) -> Matrix<G> {
        Matrix::from_fn(field, self.rows, self.cols, |r, c| f(self.get(r, c)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    fn fp() -> PrimeField {
        PrimeField::default_prime()
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(Matrix::identity(fp(), 3).rank(), 3);
        assert_eq!(Matrix::zero(fp(), 2, 5).rank(), 0);
        assert_eq!(Matrix::from_i64(Rationals, 2, 2, &[1, 2, 2, 4]).rank(), 1);
    }

    #[test]
    fn kernel_shapes() {
        let id = Matrix::identity(fp(), 4);
        assert_eq!(id.kernel_basis().cols(), 0);
        let z = Matrix::zero(fp(), 1, 3);
        assert_eq!(z.kernel_basis().cols(), 3);
        let m = Matrix::from_i64(fp(), 1, 2, &[1, 1]);
        let k = m.kernel_basis();
        assert_eq!(k.cols(), 1);
        assert!(m.mul(&k).is_zero());
    }

    #[test]
    fn solve_cases() {
        let f = fp();
        let id = Matrix::identity(f, 2);
        let b = Matrix::col_vec(f, &[3, 1]);
        assert_eq!(id.solve(&b).unwrap(), b);

        let z = Matrix::zero(f, 2, 2);
        assert!(matches!(z.solve(&b), Err(Error::NoSolution)));

        let a = Matrix::from_i64(f, 2, 2, &[1, 1, 0, 1]);
        let x = a.solve(&b).unwrap();
        assert_eq!(x, Matrix::col_vec(f, &[2, 1]));
    }

    #[test]
    fn random_kernel_is_in_kernel_and_deterministic() {
        let f = fp();
        let id = Matrix::identity(f, 3);
        assert!(id.random_kernel_element(5).iter().all(|x| f.is_zero(x)));

        let z = Matrix::zero(f, 1, 2);
        let v1 = z.random_kernel_element(42);
        let v2 = z.random_kernel_element(42);
        assert_eq!(v1, v2);
        let m = Matrix::from_i64(f, 2, 4, &[1, 2, 3, 4, 0, 1, 0, 1]);
        let v = m.random_kernel_element(7);
        let vm = Matrix::from_fn(f, 4, 1, |r, _| v[r]);
        assert!(m.mul(&vm).is_zero());
    }

    #[test]
    fn rank_nullity_on_dense_samples() {
        use rand::Rng;
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..50 {
            let r = rng.gen_range(0..6);
            let c = rng.gen_range(0..6);
            let m = Matrix::from_fn(f, r, c, |_, _| f.sample(&mut rng));
            let k = m.kernel_basis();
            assert_eq!(m.rank() + k.cols(), c);
            if k.cols() > 0 {
                assert!(m.mul(&k).is_zero());
                assert_eq!(k.rank(), k.cols());
            }
        }
    }

    #[test]
    fn prime_and_rational_ranks_agree_on_small_integers() {
        use rand::Rng;
        let f = fp();
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..30 {
            let r = rng.gen_range(1..5);
            let c = rng.gen_range(1..5);
            let ints: Vec<i64> = (0..r * c).map(|_| rng.gen_range(-9..=9)).collect();
            let a = Matrix::from_i64(f, r, c, &ints);
            let b = Matrix::from_i64(Rationals, r, c, &ints);
            assert_eq!(a.rank(), b.rank());
        }
    }
}
