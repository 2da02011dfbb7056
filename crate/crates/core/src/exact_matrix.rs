//! Dense matrices over the Gaussian rationals, plus exact linear spans.

use std::fmt;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::scalar::GaussRational;

/// A d x d matrix with exact Gaussian-rational entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    dim: usize,
    entries: Vec<GaussRational>,
}

impl ExactMatrix {
    pub fn zero(dim: usize) -> Self {
        ExactMatrix {
            dim,
            entries: vec![GaussRational::default(); dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = ExactMatrix::zero(dim);
        for i in 0..dim {
            *m.get_mut(i, i) = GaussRational::from_integer(1);
        }
        m
    }

    /// Permutation matrix: column j carries a 1 in row perm(j).
    pub fn permutation(perm: &Perm) -> Self {
        let n = perm.len();
        let mut m = ExactMatrix::zero(n);
        for j in 0..n {
            *m.get_mut(perm.apply(j), j) = GaussRational::from_integer(1);
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &GaussRational {
        &self.entries[i * self.dim + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut GaussRational {
        &mut self.entries[i * self.dim + j]
    }

    pub fn add(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a + b)
            .collect();
        Ok(ExactMatrix {
            dim: self.dim,
            entries,
        })
    }

    pub fn sub(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_dim(other)?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| a - b)
            .collect();
        Ok(ExactMatrix {
            dim: self.dim,
            entries,
        })
    }

    pub fn mul(&self, other: &ExactMatrix) -> Result<ExactMatrix> {
        self.check_dim(other)?;
        let d = self.dim;
        let mut out = ExactMatrix::zero(d);
        for i in 0..d {
            for k in 0..d {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..d {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussRational) -> ExactMatrix {
        ExactMatrix {
            dim: self.dim,
            entries: self.entries.iter().map(|a| a * c).collect(),
        }
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> ExactMatrix {
        let d = self.dim;
        let mut out = ExactMatrix::zero(d);
        for i in 0..d {
            for j in 0..d {
                *out.get_mut(i, j) = self.get(j, i).conj();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|c| c.is_zero())
    }

    pub fn row_sums(&self) -> Vec<GaussRational> {
        (0..self.dim)
            .map(|i| {
                let mut acc = GaussRational::default();
                for j in 0..self.dim {
                    acc += self.get(i, j);
                }
                acc
            })
            .collect()
    }

    pub fn col_sums(&self) -> Vec<GaussRational> {
        (0..self.dim)
            .map(|j| {
                let mut acc = GaussRational::default();
                for i in 0..self.dim {
                    acc += self.get(i, j);
                }
                acc
            })
            .collect()
    }

    pub fn entry_sum(&self) -> GaussRational {
        let mut acc = GaussRational::default();
        for e in &self.entries {
            acc += e;
        }
        acc
    }

    pub fn flatten(&self) -> Vec<GaussRational> {
        self.entries.clone()
    }

    fn check_dim(&self, other: &ExactMatrix) -> Result<()> {
        if self.dim != other.dim {
            return Err(Error::DimensionMismatch(self.dim, other.dim));
        }
        Ok(())
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.dim {
            write!(f, "[")?;
            for j in 0..self.dim {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

/// A linear subspace of Q(i)^n kept in reduced echelon form.
///
/// Membership tests and dimension counts are exact; no floating point.
#[derive(Debug, Clone, Default)]
pub struct VectorSpan {
    rows: Vec<Vec<GaussRational>>,
    pivots: Vec<usize>,
}

impl VectorSpan {
    pub fn new() -> Self {
        VectorSpan::default()
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Vec<GaussRational>) -> Vec<GaussRational> {
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !v[p].is_zero() {
                let factor = v[p].clone();
                for (x, r) in v.iter_mut().zip(row) {
                    *x -= &(&factor * r);
                }
            }
        }
        v
    }

    /// Insert a vector; returns true if it enlarged the span.
    pub fn insert(&mut self, v: Vec<GaussRational>) -> bool {
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|c| !c.is_zero()) else {
            return false;
        };
        let inv = v[p].inv();
        for x in v.iter_mut() {
            *x *= &inv;
        }
        // back-substitute into existing rows to keep the form reduced
        for (row, _) in self.rows.iter_mut().zip(&self.pivots) {
            if !row[p].is_zero() {
                let factor = row[p].clone();
                for (x, r) in row.iter_mut().zip(&v) {
                    *x -= &(&factor * r);
                }
            }
        }
        self.rows.push(v);
        self.pivots.push(p);
        true
    }

    pub fn contains(&self, v: &[GaussRational]) -> bool {
        self.reduce(v.to_vec()).iter().all(|c| c.is_zero())
    }

    /// Coordinates of v in terms of the inserted basis order are not kept;
    /// only containment and dimension are exposed.
    pub fn contains_all(&self, other: &VectorSpan) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64) -> GaussRational {
        GaussRational::from_integer(n)
    }

    #[test]
    fn matrix_ring() {
        let p = ExactMatrix::permutation(&Perm::transposition(3, 0, 2).unwrap());
        let id = ExactMatrix::identity(3);
        assert_eq!(p.mul(&p).unwrap(), id);
        assert_eq!(p.adjoint(), p);
        assert!(p.sub(&p).unwrap().is_zero());
        assert!(p.mul(&ExactMatrix::zero(2)).is_err());
    }

    #[test]
    fn span_rank() {
        let mut s = VectorSpan::new();
        assert!(s.insert(vec![q(1), q(2), q(0)]));
        assert!(s.insert(vec![q(0), q(1), q(1)]));
        assert!(!s.insert(vec![q(2), q(5), q(1)]));
        assert_eq!(s.dim(), 2);
        assert!(s.contains(&[q(1), q(3), q(1)]));
        assert!(!s.contains(&[q(0), q(0), q(1)]));
    }
}
