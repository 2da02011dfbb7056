//! Exact Gaussian-rational scalars: numbers `re + im*i` with rational parts.

use std::fmt;
use std::ops::{Add, AddAssign, Mul, MulAssign, Neg, Sub, SubAssign};
use std::str::FromStr;

use num::{BigInt, BigRational, Complex, One, Signed, Zero};
use serde::de::Error as _;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::Error;

/// An element of Q(i), stored as exact rational real and imaginary parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct GaussRational {
    pub re: BigRational,
    pub im: BigRational,
}

impl GaussRational {
    pub fn new(re: BigRational, im: BigRational) -> Self {
        GaussRational { re, im }
    }

    pub fn from_integer(n: i64) -> Self {
        GaussRational {
            re: BigRational::from_integer(BigInt::from(n)),
            im: BigRational::zero(),
        }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        GaussRational {
            re: BigRational::new(BigInt::from(num), BigInt::from(den)),
            im: BigRational::zero(),
        }
    }

    /// The imaginary unit i.
    pub fn i() -> Self {
        GaussRational {
            re: BigRational::zero(),
            im: BigRational::one(),
        }
    }

    pub fn conj(&self) -> Self {
        GaussRational {
            re: self.re.clone(),
            im: -self.im.clone(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    /// Multiplicative inverse; panics on zero.
    pub fn inv(&self) -> Self {
        let norm = &self.re * &self.re + &self.im * &self.im;
        assert!(!norm.is_zero(), "division by zero in GaussRational");
        GaussRational {
            re: &self.re / &norm,
            im: -&self.im / &norm,
        }
    }

    pub fn to_complex_f64(&self) -> Complex<f64> {
        fn approx(r: &BigRational) -> f64 {
            let n = r.numer();
            let d = r.denom();
            // exact for the small magnitudes used here
            let nf: f64 = n.to_string().parse().unwrap_or(f64::NAN);
            let df: f64 = d.to_string().parse().unwrap_or(f64::NAN);
            nf / df
        }
        Complex::new(approx(&self.re), approx(&self.im))
    }

    /// True if the value lies on the unit circle, i.e. re^2 + im^2 = 1.
    pub fn on_unit_circle(&self) -> bool {
        (&self.re * &self.re + &self.im * &self.im).is_one()
    }

    /// Exact power for Gaussian rationals (used at fourth roots of unity).
    pub fn pow(&self, e: i64) -> Self {
        if e == 0 {
            return GaussRational::from_integer(1);
        }
        let base = if e < 0 { self.inv() } else { self.clone() };
        let mut acc = GaussRational::from_integer(1);
        for _ in 0..e.unsigned_abs() {
            acc = &acc * &base;
        }
        acc
    }
}

impl Add for &GaussRational {
    type Output = GaussRational;
    fn add(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re + &rhs.re,
            im: &self.im + &rhs.im,
        }
    }
}

impl Sub for &GaussRational {
    type Output = GaussRational;
    fn sub(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re - &rhs.re,
            im: &self.im - &rhs.im,
        }
    }
}

impl Mul for &GaussRational {
    type Output = GaussRational;
    fn mul(self, rhs: &GaussRational) -> GaussRational {
        GaussRational {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Neg for &GaussRational {
    type Output = GaussRational;
    fn neg(self) -> GaussRational {
        GaussRational {
            re: -self.re.clone(),
            im: -self.im.clone(),
        }
    }
}

impl AddAssign<&GaussRational> for GaussRational {
    fn add_assign(&mut self, rhs: &GaussRational) {
        self.re += &rhs.re;
        self.im += &rhs.im;
    }
}

impl SubAssign<&GaussRational> for GaussRational {
    fn sub_assign(&mut self, rhs: &GaussRational) {
        self.re -= &rhs.re;
        self.im -= &rhs.im;
    }
}

impl MulAssign<&GaussRational> for GaussRational {
    fn mul_assign(&mut self, rhs: &GaussRational) {
        *self = &*self * rhs;
    }
}

impl fmt::Display for GaussRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            write!(f, "{}", self.re)
        } else if self.re.is_zero() {
            write!(f, "{}i", self.im)
        } else if self.im.is_negative() {
            write!(f, "{}{}i", self.re, self.im)
        } else {
            write!(f, "{}+{}i", self.re, self.im)
        }
    }
}

fn parse_rational(s: &str) -> Result<BigRational, Error> {
    BigRational::from_str(s).map_err(|e| Error::Malformed(format!("bad rational {s:?}: {e}")))
}

impl Serialize for GaussRational {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        #[derive(Serialize)]
        struct Repr<'a> {
            re: String,
            im: String,
            #[serde(skip)]
            _p: &'a (),
        }
        Repr {
            re: self.re.to_string(),
            im: self.im.to_string(),
            _p: &(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for GaussRational {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Repr {
            re: String,
            im: String,
        }
        let r = Repr::deserialize(d)?;
        Ok(GaussRational {
            re: parse_rational(&r.re).map_err(D::Error::custom)?,
            im: parse_rational(&r.im).map_err(D::Error::custom)?,
        })
    }
}
