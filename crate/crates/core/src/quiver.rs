//! Quivers on Dynkin diagrams, their Nakajima extensions, and the bilinear
//! forms read off the arrow set.

use crate::error::{Error, Result};

/// An oriented quiver. For an extended quiver, vertex `base + i` is the primed
/// partner of `i` and the trailing `base` arrows are the `d_i : i -> i'`.
#[derive(Clone, PartialEq, Eq, Debug, Hash)]
pub struct Quiver {
    pub n: usize,
    pub arrows: Vec<(usize, usize)>,
    pub base: usize,
}

impl Quiver {
    pub fn new(n: usize, arrows: Vec<(usize, usize)>) -> Self {
        for &(s, t) in &arrows {
            assert!(s < n && t < n && s != t, "bad arrow {s}->{t}");
        }
        Quiver { n, arrows, base: n }
    }

    /// Arrows oriented along increasing vertex label, one per Dynkin edge.
    pub fn default_orientation(edges: &[(usize, usize)], rank: usize) -> Self {
        Quiver::new(rank, edges.to_vec())
    }

    pub fn is_extended(&self) -> bool {
        self.base < self.n
    }

    /// Adds a primed copy of every vertex and an arrow `d_i : i -> i'`.
    pub fn extended(&self) -> Quiver {
        assert!(!self.is_extended(), "already extended");
        let n = self.n;
        let mut arrows = self.arrows.clone();
        for i in 0..n {
            arrows.push((i, n + i));
        }
        Quiver { n: 2 * n, arrows, base: n }
    }

    /// The base quiver an extended quiver was built from.
    pub fn base_quiver(&self) -> Quiver {
        assert!(self.is_extended());
        Quiver::new(self.base, self.arrows[..self.arrows.len() - self.base].to_vec())
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.arrows.iter().all(|&(_, t)| t != v) && self.arrows.iter().any(|&(s, _)| s == v))
            .collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.n)
            .filter(|&v| self.arrows.iter().all(|&(s, _)| s != v))
            .collect()
    }

    pub fn is_source(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(_, t)| t != v)
    }

    pub fn is_sink(&self, v: usize) -> bool {
        self.arrows.iter().all(|&(s, _)| s != v)
    }

    /// Reverses every arrow incident to `v`.
    pub fn reflect_at(&self, v: usize) -> Quiver {
        let arrows = self
            .arrows
            .iter()
            .map(|&(s, t)| if s == v || t == v { (t, s) } else { (s, t) })
            .collect();
        Quiver { n: self.n, arrows, base: self.base }
    }

    /// Symmetric form `2 sum mu_i nu_i - sum_{a in H} mu_s nu_t` of the doubled
    /// quiver; for an extended quiver this includes the `d_i` arrows.
    pub fn sym_form(&self, mu: &[i64], nu: &[i64]) -> i64 {
        assert_eq!(mu.len(), self.n);
        assert_eq!(nu.len(), self.n);
        let mut acc: i64 = mu.iter().zip(nu).map(|(a, b)| 2 * a * b).sum();
        for &(s, t) in &self.arrows {
            acc -= mu[s] * nu[t] + mu[t] * nu[s];
        }
        acc
    }

    /// Euler form of the oriented quiver.
    pub fn euler_form(&self, mu: &[i64], nu: &[i64]) -> i64 {
        let mut acc: i64 = mu.iter().zip(nu).map(|(a, b)| a * b).sum();
        for &(s, t) in &self.arrows {
            acc -= mu[s] * nu[t];
        }
        acc
    }

    /// Checks this quiver is an orientation of the given edge set.
    pub fn check_orientation(&self, edges: &[(usize, usize)]) -> Result<()> {
        let mut want: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        want.sort_unstable();
        let mut got: Vec<(usize, usize)> = self.arrows.iter().map(|&(s, t)| (s.min(t), s.max(t))).collect();
        got.sort_unstable();
        if want == got {
            Ok(())
        } else {
            Err(Error::Invalid("orientation does not match the Dynkin diagram".into()))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sources_sinks_reflect() {
        let q = Quiver::new(3, vec![(1, 0), (1, 2)]);
        assert_eq!(q.sources(), vec![1]);
        assert_eq!(q.sinks(), vec![0, 2]);
        let r = q.reflect_at(1);
        assert_eq!(r.arrows, vec![(0, 1), (2, 1)]);
        assert_eq!(r.sinks(), vec![1]);
    }

    #[test]
    fn extension_layout() {
        let q = Quiver::new(2, vec![(0, 1)]);
        let x = q.extended();
        assert_eq!(x.n, 4);
        assert_eq!(x.base, 2);
        assert_eq!(x.arrows, vec![(0, 1), (0, 2), (1, 3)]);
        assert_eq!(x.base_quiver(), q);
    }

    #[test]
    fn forms() {
        // A2, arrow 0 -> 1: Cartan form off-diagonal is -1.
        let q = Quiver::new(2, vec![(0, 1)]);
        assert_eq!(q.sym_form(&[1, 0], &[0, 1]), -1);
        assert_eq!(q.sym_form(&[1, 0], &[1, 0]), 2);
        assert_eq!(q.euler_form(&[1, 0], &[0, 1]), -1);
        assert_eq!(q.euler_form(&[0, 1], &[1, 0]), 0);
    }
}
