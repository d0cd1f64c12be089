//! Exact-or-approximate scalar arithmetic.
//!
//! Payoffs, discount factors, and derived quantities flow through [`Real`],
//! which performs exact big-rational arithmetic as long as every operand is
//! exact and drops to `f64` as soon as any approximate operand enters an
//! expression. Comparisons between exact values are exact; comparisons
//! involving an approximate value treat magnitudes within [`TOLERANCE`] of
//! each other as equal.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Absolute tolerance for comparisons that involve an approximate value.
pub const TOLERANCE: f64 = 1e-12;

/// A scalar that is either an exact rational or an `f64` approximation.
#[derive(Clone)]
pub enum Real {
    Exact(BigRational),
    Approx(f64),
}

impl Real {
    pub fn int(n: i64) -> Real {
        Real::Exact(BigRational::from_integer(BigInt::from(n)))
    }

    /// Exact ratio `numer / denom`. Panics if `denom` is zero.
    pub fn ratio(numer: i64, denom: i64) -> Real {
        assert!(denom != 0, "zero denominator");
        Real::Exact(BigRational::new(BigInt::from(numer), BigInt::from(denom)))
    }

    pub fn zero() -> Real {
        Real::Exact(BigRational::zero())
    }

    pub fn one() -> Real {
        Real::Exact(BigRational::one())
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Real::Exact(_))
    }

    /// The underlying rational, if this value is exact.
    pub fn as_exact(&self) -> Option<&BigRational> {
        match self {
            Real::Exact(r) => Some(r),
            Real::Approx(_) => None,
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Real::Exact(r) => r.to_f64().unwrap_or(f64::NAN),
            Real::Approx(x) => *x,
        }
    }

    /// True for exact values and for finite floats.
    pub fn is_finite(&self) -> bool {
        match self {
            Real::Exact(_) => true,
            Real::Approx(x) => x.is_finite(),
        }
    }

    pub fn abs(&self) -> Real {
        match self {
            Real::Exact(r) => Real::Exact(r.abs()),
            Real::Approx(x) => Real::Approx(x.abs()),
        }
    }

    /// Integer power. Stays exact on exact values.
    pub fn pow(&self, exp: u32) -> Real {
        match self {
            Real::Exact(r) => Real::Exact(r.pow(exp as i32)),
            Real::Approx(x) => Real::Approx(x.powi(exp as i32)),
        }
    }

    /// Three-way comparison; equality is tolerant iff either side is approximate.
    pub fn cmp_eps(&self, other: &Real) -> Ordering {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a.cmp(b),
            _ => {
                let (x, y) = (self.to_f64(), other.to_f64());
                if (x - y).abs() <= TOLERANCE {
                    Ordering::Equal
                } else {
                    x.partial_cmp(&y).expect("comparison with a non-finite value")
                }
            }
        }
    }

    pub fn eq_eps(&self, other: &Real) -> bool {
        self.cmp_eps(other) == Ordering::Equal
    }

    pub fn gt_eps(&self, other: &Real) -> bool {
        self.cmp_eps(other) == Ordering::Greater
    }

    pub fn ge_eps(&self, other: &Real) -> bool {
        self.cmp_eps(other) != Ordering::Less
    }

    pub fn lt_eps(&self, other: &Real) -> bool {
        self.cmp_eps(other) == Ordering::Less
    }
}

impl From<i64> for Real {
    fn from(n: i64) -> Real {
        Real::int(n)
    }
}

impl From<f64> for Real {
    fn from(x: f64) -> Real {
        Real::Approx(x)
    }
}

/// Accepts `p/q` (exact), a bare integer (exact), or a decimal (approximate).
impl FromStr for Real {
    type Err = Error;

    fn from_str(s: &str) -> Result<Real, Error> {
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let numer: BigInt = n
                .trim()
                .parse()
                .map_err(|_| Error::Param(format!("bad rational numerator `{n}`")))?;
            let denom: BigInt = d
                .trim()
                .parse()
                .map_err(|_| Error::Param(format!("bad rational denominator `{d}`")))?;
            if denom.is_zero() {
                return Err(Error::Param(format!("zero denominator in `{s}`")));
            }
            return Ok(Real::Exact(BigRational::new(numer, denom)));
        }
        if let Ok(n) = s.parse::<BigInt>() {
            return Ok(Real::Exact(BigRational::from_integer(n)));
        }
        match s.parse::<f64>() {
            Ok(x) if x.is_finite() => Ok(Real::Approx(x)),
            _ => Err(Error::Param(format!("cannot parse `{s}` as a number"))),
        }
    }
}

/// Numeric equality without tolerance: exact values compare as rationals,
/// anything else compares as `f64`.
impl PartialEq for Real {
    fn eq(&self, other: &Real) -> bool {
        match (self, other) {
            (Real::Exact(a), Real::Exact(b)) => a == b,
            _ => self.to_f64() == other.to_f64(),
        }
    }
}

macro_rules! real_binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait for &Real {
            type Output = Real;
            fn $method(self, rhs: &Real) -> Real {
                match (self, rhs) {
                    (Real::Exact(a), Real::Exact(b)) => Real::Exact(a $op b),
                    _ => Real::Approx(self.to_f64() $op rhs.to_f64()),
                }
            }
        }
        impl $trait for Real {
            type Output = Real;
            fn $method(self, rhs: Real) -> Real {
                &self $op &rhs
            }
        }
    };
}

real_binop!(Add, add, +);
real_binop!(Sub, sub, -);
real_binop!(Mul, mul, *);
real_binop!(Div, div, /);

impl Neg for &Real {
    type Output = Real;
    fn neg(self) -> Real {
        match self {
            Real::Exact(r) => Real::Exact(-r),
            Real::Approx(x) => Real::Approx(-x),
        }
    }
}

impl Neg for Real {
    type Output = Real;
    fn neg(self) -> Real {
        -&self
    }
}

impl fmt::Display for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(r) if r.is_integer() => write!(f, "{}", r.numer()),
            Real::Exact(r) => write!(f, "{}/{}", r.numer(), r.denom()),
            Real::Approx(x) => write!(f, "{x}"),
        }
    }
}

impl fmt::Debug for Real {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Real::Exact(_) => write!(f, "{self}"),
            Real::Approx(_) => write!(f, "~{self}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_arithmetic_stays_exact() {
        let a = Real::ratio(8, 15);
        let b = Real::ratio(7, 15);
        let sum = &a + &b;
        assert!(sum.is_exact());
        assert_eq!(sum, Real::one());
        assert_eq!(&a * &Real::int(15), Real::int(8));
    }

    #[test]
    fn mixed_arithmetic_drops_to_approx() {
        let a = Real::int(1);
        let b = Real::Approx(0.5);
        let sum = &a + &b;
        assert!(!sum.is_exact());
        assert!((sum.to_f64() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn comparison_is_exact_on_rationals() {
        // 1/3 differs from a nearby rational by less than the float tolerance,
        // but exact comparison still separates them.
        let third = Real::ratio(1, 3);
        let near = &third + &Real::Exact(BigRational::new(BigInt::from(1), BigInt::from(10).pow(15)));
        assert!(near.gt_eps(&third));
        assert!(!near.eq_eps(&third));
    }

    #[test]
    fn comparison_is_tolerant_on_floats() {
        let a = Real::Approx(1.0);
        let b = Real::Approx(1.0 + 1e-13);
        assert!(a.eq_eps(&b));
        assert!(a.lt_eps(&Real::Approx(1.0 + 1e-9)));
    }

    #[test]
    fn parses_rationals_integers_and_decimals() {
        let r: Real = "8/15".parse().unwrap();
        assert_eq!(r, Real::ratio(8, 15));
        let n: Real = "-42".parse().unwrap();
        assert_eq!(n, Real::int(-42));
        let x: Real = "0.6".parse().unwrap();
        assert!(!x.is_exact());
        assert!((x.to_f64() - 0.6).abs() < 1e-15);
        assert!("1/0".parse::<Real>().is_err());
        assert!("abc".parse::<Real>().is_err());
    }

    #[test]
    fn display_round_trips_the_interesting_cases() {
        assert_eq!(Real::ratio(8, 15).to_string(), "8/15");
        assert_eq!(Real::ratio(-3, 6).to_string(), "-1/2");
        assert_eq!(Real::int(90).to_string(), "90");
        assert_eq!(Real::Approx(0.5).to_string(), "0.5");
    }

    #[test]
    fn powers_and_negation() {
        assert_eq!(Real::ratio(1, 3).pow(2), Real::ratio(1, 9));
        assert_eq!(-Real::int(7), Real::int(-7));
        assert_eq!(Real::ratio(-2, 3).abs(), Real::ratio(2, 3));
    }
}
