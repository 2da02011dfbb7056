//! The Koopman representation in the finite-level matrix model.
//!
//! At level k the crossed-product subalgebra A_k is identified with
//! continuous M_{n_k}-valued functions on the circle; elements are stored
//! as n_k x n_k matrices of Laurent polynomials with exact coefficients.

use std::collections::BTreeMap;

use num::Complex;
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::exact_matrix::{ExactMatrix, VectorSpan};
use crate::full_group::{sigma_element, FullGroupElement};
use crate::laurent::LaurentPoly;
use crate::odometer::{ClopenSet, OdometerType};
use crate::perm::Perm;
use crate::scalar::GaussRational;

/// An element of the level-k algebra: a matrix of Laurent polynomials.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LaurentMatrix {
    level: usize,
    dim: usize,
    entries: Vec<LaurentPoly>,
}

impl LaurentMatrix {
    pub fn zero(space: &OdometerType, level: usize) -> Result<Self> {
        let n = space.n(level)? as usize;
        Ok(LaurentMatrix {
            level,
            dim: n,
            entries: vec![LaurentPoly::zero(); n * n],
        })
    }

    pub fn identity(space: &OdometerType, level: usize) -> Result<Self> {
        let mut m = LaurentMatrix::zero(space, level)?;
        for i in 0..m.dim {
            *m.get_mut(i, i) = LaurentPoly::one();
        }
        Ok(m)
    }

    pub fn level(&self) -> usize {
        self.level
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn get(&self, i: usize, j: usize) -> &LaurentPoly {
        &self.entries[i * self.dim + j]
    }

    pub fn get_mut(&mut self, i: usize, j: usize) -> &mut LaurentPoly {
        &mut self.entries[i * self.dim + j]
    }

    fn check_level(&self, other: &LaurentMatrix) -> Result<()> {
        if self.level != other.level || self.dim != other.dim {
            return Err(Error::LevelMismatch(self.level, other.level));
        }
        Ok(())
    }

    pub fn add(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        self.check_level(other)?;
        Ok(LaurentMatrix {
            level: self.level,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        })
    }

    pub fn sub(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        self.check_level(other)?;
        Ok(LaurentMatrix {
            level: self.level,
            dim: self.dim,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.sub(b))
                .collect(),
        })
    }

    pub fn mul(&self, other: &LaurentMatrix) -> Result<LaurentMatrix> {
        self.check_level(other)?;
        let n = self.dim;
        let mut out = LaurentMatrix {
            level: self.level,
            dim: n,
            entries: vec![LaurentPoly::zero(); n * n],
        };
        for i in 0..n {
            for k in 0..n {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let prod = a.mul(b);
                        *out.get_mut(i, j) = out.get(i, j).add(&prod);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn scale(&self, c: &GaussRational) -> LaurentMatrix {
        LaurentMatrix {
            level: self.level,
            dim: self.dim,
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
        }
    }

    /// The adjoint: conjugate transpose with z inverted.
    pub fn adjoint(&self) -> LaurentMatrix {
        let n = self.dim;
        let mut out = LaurentMatrix {
            level: self.level,
            dim: n,
            entries: vec![LaurentPoly::zero(); n * n],
        };
        for i in 0..n {
            for j in 0..n {
                *out.get_mut(i, j) = self.get(j, i).star();
            }
        }
        out
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(|p| p.is_zero())
    }

    /// Numeric evaluation at a point of the circle (1e-12 tolerance on |z|).
    pub fn eval_complex(&self, z: Complex<f64>) -> Result<Vec<Vec<Complex<f64>>>> {
        if (z.norm() - 1.0).abs() > 1e-12 {
            return Err(Error::NotOnCircle);
        }
        Ok((0..self.dim)
            .map(|i| (0..self.dim).map(|j| self.get(i, j).eval_complex(z)).collect())
            .collect())
    }

    /// Exact evaluation at a fourth root of unity.
    pub fn eval_exact(&self, z: &GaussRational) -> Result<ExactMatrix> {
        let one = GaussRational::from_integer(1);
        let minus_one = GaussRational::from_integer(-1);
        let i = GaussRational::i();
        let minus_i = -&i;
        if *z != one && *z != minus_one && *z != i && *z != minus_i {
            return Err(Error::NotExactPoint);
        }
        let mut out = ExactMatrix::zero(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                *out.get_mut(r, c) = self.get(r, c).eval_exact(z);
            }
        }
        Ok(out)
    }

    /// Exact fiber at z = 1.
    pub fn eval_at_one(&self) -> ExactMatrix {
        let mut out = ExactMatrix::zero(self.dim);
        for r in 0..self.dim {
            for c in 0..self.dim {
                *out.get_mut(r, c) = self.get(r, c).eval_at_one();
            }
        }
        out
    }
}

/// The projection 1_A as a diagonal 0/1 matrix at level k.
pub fn indicator(space: &OdometerType, set: &ClopenSet, level: usize) -> Result<LaurentMatrix> {
    let labels = set.labels_at(space, level)?;
    let mut m = LaurentMatrix::zero(space, level)?;
    for &l in &labels {
        *m.get_mut(l as usize, l as usize) = LaurentPoly::one();
    }
    Ok(m)
}

/// The image of delta_m = pi(T^m) at level k.
///
/// Column j carries a single entry z^w in row (j+m) mod n_k, where w is the
/// winding floor((j+m)/n_k); m = 0 gives the identity and negative powers
/// are adjoints of positive ones.
pub fn delta(space: &OdometerType, m: i64, level: usize) -> Result<LaurentMatrix> {
    let n = space.n(level)? as i64;
    let mut out = LaurentMatrix::zero(space, level)?;
    for j in 0..n {
        let r = (j + m).rem_euclid(n) as usize;
        let w = (j + m).div_euclid(n);
        *out.get_mut(r, j as usize) =
            LaurentPoly::monomial(w, GaussRational::from_integer(1));
    }
    Ok(out)
}

/// The Koopman matrix of a full-group element at level k.
///
/// Column l carries z^w in row (l + c(l)) mod n_k with winding
/// w = floor((l + c(l)) / n_k); this is the matrix form of the sum of
/// 1_{T^{c}(U)} delta_c over the cylinders.
pub fn koopman_matrix(
    space: &OdometerType,
    g: &FullGroupElement,
    level: usize,
) -> Result<LaurentMatrix> {
    let c = g.cocycle_at(space, level)?;
    let n = c.len() as i64;
    let mut out = LaurentMatrix::zero(space, level)?;
    for (l, &cl) in c.iter().enumerate() {
        let target = l as i64 + cl;
        let r = target.rem_euclid(n) as usize;
        let w = target.div_euclid(n);
        *out.get_mut(r, l) = LaurentPoly::monomial(w, GaussRational::from_integer(1));
    }
    Ok(out)
}

/// Embed a level-k matrix into level k+1.
///
/// Determined by sending each cylinder indicator to the sum of its
/// refinements and each delta_m to delta_m at the deeper level.
pub fn refine_matrix(space: &OdometerType, m: &LaurentMatrix) -> Result<LaurentMatrix> {
    let level = m.level();
    let n = space.n(level)? as i64;
    let n2 = space.n(level + 1)? as i64;
    let mut out = LaurentMatrix::zero(space, level + 1)?;
    for i in 0..n {
        for j in 0..n {
            for (&w, c) in m.get(i as usize, j as usize).coeffs() {
                // the basis element e_{i,j} z^w is 1_{U(k,i)} delta_t
                let t = i - j + w * n;
                let mut i2 = i;
                while i2 < n2 {
                    let j2 = (i2 - t).rem_euclid(n2);
                    let w2 = (j2 + t).div_euclid(n2);
                    let add = LaurentPoly::monomial(w2, c.clone());
                    let cur = out.get(i2 as usize, j2 as usize).add(&add);
                    *out.get_mut(i2 as usize, j2 as usize) = cur;
                    i2 += n;
                }
            }
        }
    }
    Ok(out)
}

/// The character tau: the vector state at the constant function 1_X.
///
/// tau(M) = (1/n_k) * sum of all entries of the z = 1 fiber. Takes the
/// value 1 on the Koopman image of every full-group element and agrees
/// with the invariant measure on indicators.
pub fn tau(m: &LaurentMatrix) -> GaussRational {
    let sum = m.eval_at_one().entry_sum();
    &sum * &GaussRational::from_ratio(1, m.dim() as i64)
}

/// Whether the z = 1 fiber has all row sums and column sums equal to one
/// common value.
pub fn in_bk(m: &LaurentMatrix) -> bool {
    let fiber = m.eval_at_one();
    let rows = fiber.row_sums();
    let cols = fiber.col_sums();
    let first = &rows[0];
    rows.iter().all(|r| r == first) && cols.iter().all(|c| c == first)
}

/// The system of matrix units E_{i,j} = 1_{T^i(A)} delta_{i-j} attached to
/// an n-disjoint clopen set.
pub fn matrix_units(
    space: &OdometerType,
    set: &ClopenSet,
    n: usize,
    level: usize,
) -> Result<Vec<Vec<LaurentMatrix>>> {
    if !set.is_n_disjoint(space, n) {
        return Err(Error::NotNDisjoint { n });
    }
    let mut units = Vec::with_capacity(n);
    for i in 0..n {
        let tower = set.translate(space, i as i64);
        let ind = indicator(space, &tower, level)?;
        let mut row = Vec::with_capacity(n);
        for j in 0..n {
            row.push(ind.mul(&delta(space, i as i64 - j as i64, level)?)?);
        }
        units.push(row);
    }
    Ok(units)
}

/// The two sides of the hereditary-kernel identity, plus the witness for
/// the (T, T^-1) case.
#[derive(Debug, Clone)]
pub struct HereditaryIdentity {
    /// (1 - pi(g)) 1_A (1 - pi(h)), computed from full Koopman matrices.
    pub lhs: LaurentMatrix,
    /// (1 - delta_n) 1_A (1 - delta_m) with the constants read off g and h.
    pub rhs: LaurentMatrix,
    /// The power n with g|_A = T^n.
    pub power_g: i64,
    /// The power m with h on h^-1(A) equal to T^m.
    pub power_h: i64,
    /// For n = 1, m = -1: the element 1 - pi(sigma_A^{(01)}).
    pub witness: Option<LaurentMatrix>,
}

/// Compute (1 - pi(g)) 1_A (1 - pi(h)) and its delta form.
///
/// Requires A 2-disjoint, g acting as a constant power of T on A and h as
/// a constant power on h^-1(A).
pub fn hereditary_identity(
    space: &OdometerType,
    g: &FullGroupElement,
    h: &FullGroupElement,
    set: &ClopenSet,
) -> Result<HereditaryIdentity> {
    if !set.is_n_disjoint(space, 2) {
        return Err(Error::NotNDisjoint { n: 2 });
    }
    let level = set
        .level()
        .max(g.level())
        .max(h.level());

    let constant_on = |e: &FullGroupElement, labels: &std::collections::BTreeSet<u64>| -> Result<i64> {
        let c = e.cocycle_at(space, level)?;
        let mut value = None;
        for &l in labels {
            match value {
                None => value = Some(c[l as usize]),
                Some(v) if v == c[l as usize] => {}
                Some(_) => return Err(Error::NotConstantOnCylinder),
            }
        }
        Ok(value.unwrap_or(0))
    };

    let labels_a = set.labels_at(space, level)?;
    let power_g = constant_on(g, &labels_a)?;
    let preimage = h.inverse(space).act(space, set);
    let labels_pre = preimage.labels_at(space, level)?;
    let power_h = constant_on(h, &labels_pre)?;

    let one = LaurentMatrix::identity(space, level)?;
    let ind = indicator(space, set, level)?;
    let lhs = one
        .sub(&koopman_matrix(space, g, level)?)?
        .mul(&ind)?
        .mul(&one.sub(&koopman_matrix(space, h, level)?)?)?;
    let rhs = one
        .sub(&delta(space, power_g, level)?)?
        .mul(&ind)?
        .mul(&one.sub(&delta(space, power_h, level)?)?)?;

    let witness = if power_g == 1 && power_h == -1 && !set.is_empty() {
        let swap = sigma_element(space, set, &Perm::transposition(2, 0, 1)?)?;
        Some(one.sub(&koopman_matrix(space, &swap, level)?)?)
    } else {
        None
    };

    Ok(HereditaryIdentity {
        lhs,
        rhs,
        power_g,
        power_h,
        witness,
    })
}

/// Outcome of the finite-level kernel-span certificate.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KernelSpanOutcome {
    /// d lies in the exact span of { 1 - pi(g) : g in sample }.
    InSpan,
    /// d lies in the span of the pi(g) but not of the 1 - pi(g).
    NotInSpan,
    /// d is outside the sample's span; the finite sample decides nothing.
    Inconclusive,
}

/// Certify membership of a tau-null element in span{ 1 - pi(g) } over a
/// finite sample of group elements, by exact linear algebra on Laurent
/// coefficients.
pub fn kernel_span_check(
    space: &OdometerType,
    sample: &[FullGroupElement],
    d: &LaurentMatrix,
) -> Result<KernelSpanOutcome> {
    if !tau(d).is_zero() {
        return Err(Error::NonzeroTau);
    }
    let level = d.level();
    let images: Vec<LaurentMatrix> = sample
        .iter()
        .map(|g| koopman_matrix(space, g, level))
        .collect::<Result<_>>()?;
    let one = LaurentMatrix::identity(space, level)?;

    // common coordinate system over (row, col, exponent)
    let mut keys: std::collections::BTreeSet<(usize, usize, i64)> = std::collections::BTreeSet::new();
    let mut collect = |m: &LaurentMatrix| {
        for i in 0..m.dim() {
            for j in 0..m.dim() {
                for &w in m.get(i, j).coeffs().keys() {
                    keys.insert((i, j, w));
                }
            }
        }
    };
    for m in &images {
        collect(m);
    }
    collect(&one);
    collect(d);
    let keys: Vec<(usize, usize, i64)> = keys.into_iter().collect();
    let coords = |m: &LaurentMatrix| -> Vec<GaussRational> {
        keys.iter().map(|&(i, j, w)| m.get(i, j).coeff(w)).collect()
    };

    let mut image_span = VectorSpan::new();
    let mut kernel_span = VectorSpan::new();
    for m in &images {
        image_span.insert(coords(m));
        kernel_span.insert(coords(&one.sub(m)?));
    }
    let dv = coords(d);
    if kernel_span.contains(&dv) {
        Ok(KernelSpanOutcome::InSpan)
    } else if image_span.contains(&dv) {
        Ok(KernelSpanOutcome::NotInSpan)
    } else {
        Ok(KernelSpanOutcome::Inconclusive)
    }
}

impl Serialize for LaurentMatrix {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr {
            level: usize,
            entries: Vec<Vec<BTreeMap<String, GaussRational>>>,
        }
        let entries = (0..self.dim)
            .map(|i| {
                (0..self.dim)
                    .map(|j| {
                        self.get(i, j)
                            .coeffs()
                            .iter()
                            .map(|(&w, c)| (w.to_string(), c.clone()))
                            .collect()
                    })
                    .collect()
            })
            .collect();
        Repr {
            level: self.level,
            entries,
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentMatrix {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            level: usize,
            entries: Vec<Vec<BTreeMap<String, GaussRational>>>,
        }
        let r = Repr::deserialize(d)?;
        let n = r.entries.len();
        let mut entries = Vec::with_capacity(n * n);
        for row in &r.entries {
            if row.len() != n {
                return Err(D::Error::custom("entries must form a square matrix"));
            }
            for cell in row {
                let mut poly = LaurentPoly::zero();
                for (ws, c) in cell {
                    let w: i64 = ws
                        .parse()
                        .map_err(|_| D::Error::custom(format!("bad exponent {ws:?}")))?;
                    poly = poly.add(&LaurentPoly::monomial(w, c.clone()));
                }
                entries.push(poly);
            }
        }
        Ok(LaurentMatrix {
            level: r.level,
            dim: n,
            entries,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::full_group::return_element;

    fn space24() -> OdometerType {
        OdometerType::new(vec![2, 4]).unwrap()
    }

    fn z_poly(w: i64) -> LaurentPoly {
        LaurentPoly::monomial(w, GaussRational::from_integer(1))
    }

    #[test]
    fn indicator_examples() {
        let sp = space24();
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let m = indicator(&sp, &u10, 1).unwrap();
        assert_eq!(*m.get(0, 0), LaurentPoly::one());
        assert!(m.get(1, 1).is_zero());
        let full = indicator(&sp, &sp.full_set(), 1).unwrap();
        assert_eq!(full, LaurentMatrix::identity(&sp, 1).unwrap());
        let empty = indicator(&sp, &sp.empty_set(), 2).unwrap();
        assert!(empty.is_zero());
        // projection
        assert_eq!(m.mul(&m).unwrap(), m);
    }

    #[test]
    fn delta_examples() {
        let sp = space24();
        let d1 = delta(&sp, 1, 1).unwrap();
        assert_eq!(*d1.get(0, 1), z_poly(1));
        assert_eq!(*d1.get(1, 0), LaurentPoly::one());
        assert!(d1.get(0, 0).is_zero() && d1.get(1, 1).is_zero());
        assert_eq!(delta(&sp, 0, 1).unwrap(), LaurentMatrix::identity(&sp, 1).unwrap());
        let d2 = delta(&sp, 2, 1).unwrap();
        assert_eq!(d2, d1.mul(&d1).unwrap());
        assert_eq!(*d2.get(0, 0), z_poly(1));
        // unitarity and adjoint
        assert_eq!(d1.adjoint(), delta(&sp, -1, 1).unwrap());
        assert_eq!(
            d1.mul(&delta(&sp, -1, 1).unwrap()).unwrap(),
            LaurentMatrix::identity(&sp, 1).unwrap()
        );
    }

    #[test]
    fn koopman_matrix_examples() {
        let sp = space24();
        let t = FullGroupElement::power_of_t(&sp, 1);
        assert_eq!(koopman_matrix(&sp, &t, 1).unwrap(), delta(&sp, 1, 1).unwrap());
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let ta = return_element(&sp, &u10);
        let m = koopman_matrix(&sp, &ta, 1).unwrap();
        assert_eq!(*m.get(0, 0), z_poly(1));
        assert_eq!(*m.get(1, 1), LaurentPoly::one());
        assert!(m.get(0, 1).is_zero() && m.get(1, 0).is_zero());
        assert_eq!(
            koopman_matrix(&sp, &FullGroupElement::identity(), 2).unwrap(),
            LaurentMatrix::identity(&sp, 2).unwrap()
        );
    }

    #[test]
    fn refine_matrix_examples() {
        let sp = space24();
        let id1 = LaurentMatrix::identity(&sp, 1).unwrap();
        assert_eq!(
            refine_matrix(&sp, &id1).unwrap(),
            LaurentMatrix::identity(&sp, 2).unwrap()
        );
        assert_eq!(
            refine_matrix(&sp, &delta(&sp, 1, 1).unwrap()).unwrap(),
            delta(&sp, 1, 2).unwrap()
        );
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let refined = refine_matrix(&sp, &indicator(&sp, &u10, 1).unwrap()).unwrap();
        assert_eq!(refined, indicator(&sp, &u10, 2).unwrap());
        // no level 3 in this chain
        assert!(refine_matrix(&sp, &refined).is_err());
    }

    #[test]
    fn eval_examples() {
        let sp = space24();
        let d1 = delta(&sp, 1, 1).unwrap();
        let at_one = d1.eval_at_one();
        assert_eq!(at_one, ExactMatrix::permutation(&Perm::transposition(2, 0, 1).unwrap()));
        let i = GaussRational::i();
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let ta = koopman_matrix(&sp, &return_element(&sp, &u10), 1).unwrap();
        let at_i = ta.eval_exact(&i).unwrap();
        assert_eq!(*at_i.get(0, 0), i);
        assert_eq!(*at_i.get(1, 1), GaussRational::from_integer(1));
        assert!(d1.eval_complex(Complex::new(2.0, 0.0)).is_err());
        assert!(d1.eval_exact(&GaussRational::from_integer(2)).is_err());
    }

    #[test]
    fn tau_examples() {
        let sp = space24();
        for m in [-2i64, 0, 1, 3] {
            assert!(tau(&delta(&sp, m, 2).unwrap()).is_one());
        }
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let a = ClopenSet::from_labels(&sp, 2, [0, 1, 3]).unwrap();
        for set in [&u10, &a] {
            let ind = indicator(&sp, set, 2).unwrap();
            let measure = set.measure(&sp);
            let value = tau(&ind);
            assert_eq!(value.re, measure);
            assert!(num::Zero::is_zero(&value.im));
        }
    }

    #[test]
    fn in_bk_examples() {
        let sp = space24();
        assert!(in_bk(&delta(&sp, 1, 1).unwrap()));
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        assert!(!in_bk(&indicator(&sp, &u10, 1).unwrap()));
    }

    #[test]
    fn matrix_units_examples() {
        let sp = space24();
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let units = matrix_units(&sp, &u10, 2, 1).unwrap();
        let e00 = &units[0][0];
        assert_eq!(*e00, indicator(&sp, &u10, 1).unwrap());
        assert_eq!(units[0][1].mul(&units[1][0]).unwrap(), *e00);
        assert!(units[0][1].mul(&units[0][1]).unwrap().is_zero());
        assert_eq!(units[0][1].adjoint(), units[1][0]);
        let u20 = ClopenSet::cylinder(&sp, 2, 0).unwrap();
        assert!(matrix_units(&sp, &u20, 5, 2).is_err());
    }

    #[test]
    fn hereditary_examples() {
        let sp = space24();
        let u10 = ClopenSet::cylinder(&sp, 1, 0).unwrap();
        let t = FullGroupElement::power_of_t(&sp, 1);
        let t_inv = FullGroupElement::power_of_t(&sp, -1);
        let hid = hereditary_identity(&sp, &t, &t_inv, &u10).unwrap();
        assert_eq!(hid.lhs, hid.rhs);
        assert_eq!(hid.lhs, hid.witness.unwrap());

        let id = FullGroupElement::identity();
        let hid0 = hereditary_identity(&sp, &id, &id, &u10).unwrap();
        assert!(hid0.lhs.is_zero());

        let u20 = ClopenSet::cylinder(&sp, 2, 0).unwrap();
        let t2 = FullGroupElement::power_of_t(&sp, 2);
        let hid2 = hereditary_identity(&sp, &t2, &t_inv, &u20).unwrap();
        assert_eq!(hid2.lhs, hid2.rhs);
    }

    #[test]
    fn kernel_span_examples() {
        let sp = space24();
        let mut sample = vec![
            FullGroupElement::power_of_t(&sp, 1),
            FullGroupElement::power_of_t(&sp, -1),
            FullGroupElement::from_cocycle(&sp, 1, vec![1, -1]).unwrap(),
        ];
        let pg = koopman_matrix(&sp, &sample[0], 1).unwrap();
        let ph = koopman_matrix(&sp, &sample[2], 1).unwrap();
        let d = pg.sub(&ph).unwrap();
        assert_eq!(
            kernel_span_check(&sp, &sample, &d).unwrap(),
            KernelSpanOutcome::InSpan
        );
        let one = LaurentMatrix::identity(&sp, 1).unwrap();
        assert_eq!(
            kernel_span_check(&sp, &sample, &one),
            Err(Error::NonzeroTau)
        );
        let d2 = pg.sub(&one).unwrap();
        assert_eq!(
            kernel_span_check(&sp, &sample, &d2).unwrap(),
            KernelSpanOutcome::InSpan
        );
        // something far outside the sample span
        sample.truncate(1);
        let outside = delta(&sp, 5, 1).unwrap().sub(&one).unwrap();
        assert_eq!(
            kernel_span_check(&sp, &sample, &outside).unwrap(),
            KernelSpanOutcome::Inconclusive
        );
    }

    #[test]
    fn serde_round_trip() {
        let sp = space24();
        let m = delta(&sp, 1, 1).unwrap();
        let j = serde_json::to_string(&m).unwrap();
        let back: LaurentMatrix = serde_json::from_str(&j).unwrap();
        assert_eq!(back, m);
    }
}
