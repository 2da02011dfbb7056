//! Sparse Laurent polynomials over the Gaussian rationals.

use std::collections::BTreeMap;
use std::fmt;

use num::Complex;

use crate::scalar::GaussRational;

/// A finite sum of c_w * z^w with exact coefficients; zero coefficients are
/// never stored.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, GaussRational>,
}

impl LaurentPoly {
    pub fn zero() -> Self {
        LaurentPoly::default()
    }

    pub fn one() -> Self {
        LaurentPoly::monomial(0, GaussRational::from_integer(1))
    }

    /// c * z^w.
    pub fn monomial(exponent: i64, coeff: GaussRational) -> Self {
        let mut coeffs = BTreeMap::new();
        if !coeff.is_zero() {
            coeffs.insert(exponent, coeff);
        }
        LaurentPoly { coeffs }
    }

    pub fn constant(c: GaussRational) -> Self {
        LaurentPoly::monomial(0, c)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, GaussRational> {
        &self.coeffs
    }

    pub fn coeff(&self, exponent: i64) -> GaussRational {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn add(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut coeffs = self.coeffs.clone();
        for (&w, c) in &other.coeffs {
            let entry = coeffs.entry(w).or_default();
            *entry += c;
            if entry.is_zero() {
                coeffs.remove(&w);
            }
        }
        LaurentPoly { coeffs }
    }

    pub fn sub(&self, other: &LaurentPoly) -> LaurentPoly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&w, c)| (w, -c)).collect(),
        }
    }

    pub fn mul(&self, other: &LaurentPoly) -> LaurentPoly {
        let mut out = BTreeMap::<i64, GaussRational>::new();
        for (&w1, c1) in &self.coeffs {
            for (&w2, c2) in &other.coeffs {
                let entry = out.entry(w1 + w2).or_default();
                *entry += &(c1 * c2);
            }
        }
        out.retain(|_, c| !c.is_zero());
        LaurentPoly { coeffs: out }
    }

    pub fn scale(&self, c: &GaussRational) -> LaurentPoly {
        if c.is_zero() {
            return LaurentPoly::zero();
        }
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&w, v)| (w, v * c)).collect(),
        }
    }

    /// The *-operation on C(T): conjugate coefficients and invert z.
    pub fn star(&self) -> LaurentPoly {
        LaurentPoly {
            coeffs: self.coeffs.iter().map(|(&w, c)| (-w, c.conj())).collect(),
        }
    }

    /// Numeric evaluation at a point of the circle.
    pub fn eval_complex(&self, z: Complex<f64>) -> Complex<f64> {
        self.coeffs
            .iter()
            .map(|(&w, c)| c.to_complex_f64() * z.powi(w as i32))
            .sum()
    }

    /// Exact evaluation at z = 1: the sum of the coefficients.
    pub fn eval_at_one(&self) -> GaussRational {
        let mut acc = GaussRational::default();
        for c in self.coeffs.values() {
            acc += c;
        }
        acc
    }

    /// Exact evaluation at a Gaussian-rational point with z^-1 = conj(z),
    /// i.e. a fourth root of unity.
    pub fn eval_exact(&self, z: &GaussRational) -> GaussRational {
        let mut acc = GaussRational::default();
        for (&w, c) in &self.coeffs {
            acc += &(c * &z.pow(w));
        }
        acc
    }
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        let mut first = true;
        for (&w, c) in &self.coeffs {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match w {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})z")?,
                _ => write!(f, "({c})z^{w}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> LaurentPoly {
        LaurentPoly::monomial(1, GaussRational::from_integer(1))
    }

    #[test]
    fn ring_ops() {
        let p = z().add(&LaurentPoly::one());
        let q = p.mul(&p);
        assert_eq!(q.coeff(0), GaussRational::from_integer(1));
        assert_eq!(q.coeff(1), GaussRational::from_integer(2));
        assert_eq!(q.coeff(2), GaussRational::from_integer(1));
        assert!(p.sub(&p).is_zero());
    }

    #[test]
    fn star_inverts_z() {
        let p = LaurentPoly::monomial(3, GaussRational::i());
        let s = p.star();
        assert_eq!(s.coeff(-3), GaussRational::i().conj());
        // z * z^* = 1 on the circle
        assert_eq!(z().mul(&z().star()), LaurentPoly::one());
    }

    #[test]
    fn evaluation() {
        let p = z().add(&LaurentPoly::one());
        assert_eq!(p.eval_at_one(), GaussRational::from_integer(2));
        let i = GaussRational::i();
        assert_eq!(p.eval_exact(&i), &GaussRational::from_integer(1) + &i);
        let num = p.eval_complex(Complex::new(0.0, 1.0));
        assert!((num - Complex::new(1.0, 1.0)).norm() < 1e-12);
    }
}
