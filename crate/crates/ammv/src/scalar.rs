use std::fmt::{Debug, Display};
use std::ops::Neg;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Num, One, Signed, ToPrimitive, Zero};

/// Field-like scalar usable by the exact and floating evaluators.
pub trait Scalar: Clone + Debug + Num + Neg<Output = Self> + Send + Sync {
    fn from_i64(v: i64) -> Self;

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_i64(n) / Self::from_i64(d)
    }

    fn powu(&self, e: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }
}

/// Ordered real scalar with the elementary functions needed by quadrature,
/// series acceleration and integer relation search.
pub trait Real: Scalar + PartialOrd + Display {
    fn from_f64(v: f64) -> Self;
    fn to_f64(&self) -> f64;
    fn from_rational(r: &BigRational) -> Self;
    fn pi() -> Self;
    fn ln2() -> Self;
    fn sqrt(&self) -> Self;
    fn ln(&self) -> Self;
    fn exp(&self) -> Self;
    fn sin(&self) -> Self;
    fn cos(&self) -> Self;
    fn tan(&self) -> Self;
    fn atan(&self) -> Self;
    fn abs(&self) -> Self;
    fn floor(&self) -> Self;
    /// Relative rounding unit at the current working precision.
    fn epsilon() -> Self;
    /// Decimal digits carried by the current working precision.
    fn working_digits() -> u32;

    fn round(&self) -> Self {
        (self.clone() + Self::from_ratio(1, 2)).floor()
    }

    fn max_of(a: Self, b: Self) -> Self {
        if a >= b {
            a
        } else {
            b
        }
    }
}

impl Scalar for f64 {
    fn from_i64(v: i64) -> Self {
        v as f64
    }
}

impl Scalar for f32 {
    fn from_i64(v: i64) -> Self {
        v as f32
    }
}

impl Scalar for BigRational {
    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}

impl Real for f64 {
    fn from_f64(v: f64) -> Self {
        v
    }
    fn to_f64(&self) -> f64 {
        *self
    }
    fn from_rational(r: &BigRational) -> Self {
        r.to_f64().unwrap_or(f64::NAN)
    }
    fn pi() -> Self {
        std::f64::consts::PI
    }
    fn ln2() -> Self {
        std::f64::consts::LN_2
    }
    fn sqrt(&self) -> Self {
        f64::sqrt(*self)
    }
    fn ln(&self) -> Self {
        f64::ln(*self)
    }
    fn exp(&self) -> Self {
        f64::exp(*self)
    }
    fn sin(&self) -> Self {
        f64::sin(*self)
    }
    fn cos(&self) -> Self {
        f64::cos(*self)
    }
    fn tan(&self) -> Self {
        f64::tan(*self)
    }
    fn atan(&self) -> Self {
        f64::atan(*self)
    }
    fn abs(&self) -> Self {
        f64::abs(*self)
    }
    fn floor(&self) -> Self {
        f64::floor(*self)
    }
    fn epsilon() -> Self {
        f64::EPSILON
    }
    fn working_digits() -> u32 {
        15
    }
}

/// Exact rational `2^e` for any signed exponent.
pub fn pow2(e: i64) -> BigRational {
    let p = BigInt::one() << e.unsigned_abs();
    if e >= 0 {
        BigRational::from_integer(p)
    } else {
        BigRational::new(BigInt::one(), p)
    }
}

pub fn rat(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

pub fn rational_is_integer(r: &BigRational) -> bool {
    r.denom().is_one()
}

pub fn rational_abs(r: &BigRational) -> BigRational {
    r.abs()
}

impl Scalar for num_complex::Complex<BigRational> {
    fn from_i64(v: i64) -> Self {
        num_complex::Complex::new(BigRational::from_i64(v), BigRational::zero())
    }
}
