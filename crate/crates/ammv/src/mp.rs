//! Multiprecision real numbers backed by MPFR.
//!
//! Values created from integers, rationals or constants use the calling
//! thread's working precision; arithmetic results take the larger precision
//! of their operands.

use std::cell::Cell;
use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Rem, Sub, SubAssign};

use num_rational::BigRational;
use num_traits::{Num, One, Zero};
use rug::float::Constant;
use rug::ops::PowAssign;
use rug::Float;

use crate::scalar::{Real, Scalar};

const DEFAULT_BITS: u32 = 128;

thread_local! {
    static PRECISION: Cell<u32> = const { Cell::new(DEFAULT_BITS) };
}

pub fn precision() -> u32 {
    PRECISION.with(|p| p.get())
}

pub fn set_precision(bits: u32) {
    PRECISION.with(|p| p.set(bits.max(32)));
}

/// Runs `f` with the thread's working precision set to `bits`.
pub fn with_precision<R>(bits: u32, f: impl FnOnce() -> R) -> R {
    let old = precision();
    set_precision(bits);
    let out = f();
    set_precision(old);
    out
}

/// Binary precision for `digits` decimal digits plus `guard` extra bits.
pub fn bits_for_digits(digits: u32, guard: u32) -> u32 {
    (digits as f64 * std::f64::consts::LOG2_10).ceil() as u32 + guard
}

#[derive(Clone, PartialEq, PartialOrd)]
pub struct Mp(pub Float);

impl Mp {
    pub fn new(v: Float) -> Self {
        Mp(v)
    }

    pub fn with_prec(bits: u32) -> Self {
        Mp(Float::new(bits))
    }

    pub fn from_u64(v: u64) -> Self {
        Mp(Float::with_val(precision(), v))
    }

    pub fn prec(&self) -> u32 {
        self.0.prec()
    }

    pub fn inner(&self) -> &Float {
        &self.0
    }

    pub fn zeta_u(n: u32) -> Self {
        Mp(Float::with_val(precision(), Float::zeta_u(n)))
    }

    pub fn catalan() -> Self {
        Mp(Float::with_val(precision(), Constant::Catalan))
    }

    /// `1 / m^s`, computed at the working precision.
    pub fn inv_pow(m: u64, s: u32) -> Self {
        let mut x = Float::with_val(precision(), m);
        x.pow_assign(s);
        x.recip_mut();
        Mp(x)
    }

    pub fn powi(&self, e: i32) -> Self {
        let mut x = self.0.clone();
        x.pow_assign(e);
        Mp(x)
    }

    pub fn is_finite(&self) -> bool {
        self.0.is_finite()
    }

    /// Decimal exponent of the value, or `None` for zero.
    pub fn log10_abs(&self) -> Option<f64> {
        if self.0.is_zero() {
            return None;
        }
        let l = Float::with_val(53, self.0.abs_ref()).log10();
        Some(l.to_f64())
    }

    pub fn parse_decimal(text: &str) -> Option<Self> {
        let p = Float::parse(text.trim()).ok()?;
        Some(Mp(Float::with_val(precision(), p)))
    }

    /// Scientific notation with `digits` significant digits.
    pub fn to_sci(&self, digits: usize) -> String {
        self.0.to_string_radix(10, Some(digits.max(2)))
    }

    /// Fixed notation rounded to `digits` digits after the point.
    pub fn to_fixed(&self, digits: usize) -> String {
        let sci = self.0.to_string_radix(10, Some(digits + 40));
        fixed_from_sci(&sci, digits)
    }
}

fn fixed_from_sci(sci: &str, digits: usize) -> String {
    let (mant, exp) = match sci.split_once('e') {
        Some((m, e)) => (m, e.parse::<i64>().unwrap_or(0)),
        None => (sci, 0),
    };
    let (neg, mant) = match mant.strip_prefix('-') {
        Some(m) => (true, m),
        None => (false, mant),
    };
    let (ip, fp) = mant.split_once('.').unwrap_or((mant, ""));
    let all: String = format!("{ip}{fp}");
    let point = ip.len() as i64 + exp;
    let mut int_part = String::new();
    let mut frac_part = String::new();
    if point <= 0 {
        int_part.push('0');
        frac_part.push_str(&"0".repeat((-point) as usize));
        frac_part.push_str(&all);
    } else if point as usize >= all.len() {
        int_part.push_str(&all);
        int_part.push_str(&"0".repeat(point as usize - all.len()));
    } else {
        int_part.push_str(&all[..point as usize]);
        frac_part.push_str(&all[point as usize..]);
    }
    while frac_part.len() <= digits {
        frac_part.push('0');
    }
    let up = frac_part.as_bytes()[digits] >= b'5';
    frac_part.truncate(digits);
    if up {
        let mut d: Vec<u8> = format!("{int_part}{frac_part}").into_bytes();
        let mut k = d.len();
        loop {
            if k == 0 {
                d.insert(0, b'1');
                break;
            }
            k -= 1;
            if d[k] == b'9' {
                d[k] = b'0';
            } else {
                d[k] += 1;
                break;
            }
        }
        let split = d.len() - digits;
        int_part = String::from_utf8(d[..split].to_vec()).unwrap();
        frac_part = String::from_utf8(d[split..].to_vec()).unwrap();
    }
    let sign = if neg { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int_part}")
    } else {
        format!("{sign}{int_part}.{frac_part}")
    }
}

impl fmt::Debug for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sci(20))
    }
}

impl fmt::Display for Mp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = f.precision().unwrap_or(20);
        write!(f, "{}", self.to_sci(digits))
    }
}

fn join_prec(a: &Mp, b: &Mp) -> u32 {
    a.0.prec().max(b.0.prec())
}

macro_rules! binop {
    ($tr:ident, $m:ident, $op:tt) => {
        impl $tr<Mp> for Mp {
            type Output = Mp;
            fn $m(self, rhs: Mp) -> Mp {
                let p = join_prec(&self, &rhs);
                Mp(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl<'a> $tr<&'a Mp> for Mp {
            type Output = Mp;
            fn $m(self, rhs: &'a Mp) -> Mp {
                let p = join_prec(&self, rhs);
                Mp(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
        impl<'a> $tr<&'a Mp> for &'a Mp {
            type Output = Mp;
            fn $m(self, rhs: &'a Mp) -> Mp {
                let p = join_prec(self, rhs);
                Mp(Float::with_val(p, &self.0 $op &rhs.0))
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);
binop!(Div, div, /);
binop!(Rem, rem, %);

impl AddAssign<&Mp> for Mp {
    fn add_assign(&mut self, rhs: &Mp) {
        if rhs.0.prec() > self.0.prec() {
            self.0.set_prec(rhs.0.prec());
        }
        self.0 += &rhs.0;
    }
}

impl AddAssign for Mp {
    fn add_assign(&mut self, rhs: Mp) {
        *self += &rhs;
    }
}

impl SubAssign<&Mp> for Mp {
    fn sub_assign(&mut self, rhs: &Mp) {
        if rhs.0.prec() > self.0.prec() {
            self.0.set_prec(rhs.0.prec());
        }
        self.0 -= &rhs.0;
    }
}

impl MulAssign<&Mp> for Mp {
    fn mul_assign(&mut self, rhs: &Mp) {
        if rhs.0.prec() > self.0.prec() {
            self.0.set_prec(rhs.0.prec());
        }
        self.0 *= &rhs.0;
    }
}

impl Neg for Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(-self.0)
    }
}

impl Neg for &Mp {
    type Output = Mp;
    fn neg(self) -> Mp {
        Mp(-self.0.clone())
    }
}

impl Zero for Mp {
    fn zero() -> Self {
        Mp(Float::with_val(precision(), 0))
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Mp {
    fn one() -> Self {
        Mp(Float::with_val(precision(), 1))
    }
}

impl Num for Mp {
    type FromStrRadixErr = &'static str;
    fn from_str_radix(s: &str, radix: u32) -> Result<Self, Self::FromStrRadixErr> {
        let p = Float::parse_radix(s, radix as i32).map_err(|_| "invalid float literal")?;
        Ok(Mp(Float::with_val(precision(), p)))
    }
}

impl Scalar for Mp {
    fn from_i64(v: i64) -> Self {
        Mp(Float::with_val(precision(), v))
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        let mut x = Float::with_val(precision(), n);
        x /= d;
        Mp(x)
    }
}

impl Real for Mp {
    fn from_f64(v: f64) -> Self {
        Mp(Float::with_val(precision(), v))
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
    fn from_rational(r: &BigRational) -> Self {
        let p = precision();
        let n = Float::with_val(p + 64, Float::parse(r.numer().to_str_radix(10)).expect("integer literal"));
        let d = Float::with_val(p + 64, Float::parse(r.denom().to_str_radix(10)).expect("integer literal"));
        Mp(Float::with_val(p, &n / &d))
    }
    fn pi() -> Self {
        Mp(Float::with_val(precision(), Constant::Pi))
    }
    fn ln2() -> Self {
        Mp(Float::with_val(precision(), Constant::Log2))
    }
    fn sqrt(&self) -> Self {
        Mp(self.0.clone().sqrt())
    }
    fn ln(&self) -> Self {
        Mp(self.0.clone().ln())
    }
    fn exp(&self) -> Self {
        Mp(self.0.clone().exp())
    }
    fn sin(&self) -> Self {
        Mp(self.0.clone().sin())
    }
    fn cos(&self) -> Self {
        Mp(self.0.clone().cos())
    }
    fn tan(&self) -> Self {
        Mp(self.0.clone().tan())
    }
    fn atan(&self) -> Self {
        Mp(self.0.clone().atan())
    }
    fn abs(&self) -> Self {
        Mp(self.0.clone().abs())
    }
    fn floor(&self) -> Self {
        Mp(self.0.clone().floor())
    }
    fn epsilon() -> Self {
        let mut x = Float::with_val(precision(), 1);
        x >>= precision();
        Mp(x)
    }
    fn working_digits() -> u32 {
        (precision() as f64 / std::f64::consts::LOG2_10).floor() as u32
    }
}

impl Scalar for num_complex::Complex<Mp> {
    fn from_i64(v: i64) -> Self {
        num_complex::Complex::new(Mp::from_i64(v), Mp::zero())
    }
}

impl PartialEq<f64> for Mp {
    fn eq(&self, other: &f64) -> bool {
        self.0 == *other
    }
}

impl PartialOrd<f64> for Mp {
    fn partial_cmp(&self, other: &f64) -> Option<Ordering> {
        self.0.partial_cmp(other)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn precision_follows_thread_setting() {
        let x = with_precision(300, Mp::pi);
        assert_eq!(x.prec(), 300);
        assert_eq!(Mp::one().prec(), precision());
    }

    #[test]
    fn arithmetic_takes_wider_precision() {
        let a = with_precision(64, || Mp::from_i64(1));
        let b = with_precision(256, || Mp::from_i64(3));
        assert_eq!((a / b).prec(), 256);
    }

    #[test]
    fn fixed_formatting() {
        let x = with_precision(200, || Mp::from_ratio(-1, 8));
        assert_eq!(x.to_fixed(5), "-0.12500");
        let y = with_precision(200, || Mp::from_i64(1234));
        assert_eq!(y.to_fixed(2), "1234.00");
        let z = with_precision(200, || Mp::from_ratio(1, 3000));
        assert_eq!(z.to_fixed(6), "0.000333");
        let r = with_precision(200, || Mp::from_ratio(-19999, 20000));
        assert_eq!(r.to_fixed(3), "-1.000");
        assert_eq!(with_precision(200, || Mp::from_ratio(2, 3)).to_fixed(4), "0.6667");
    }

    #[test]
    fn rational_conversion_is_correctly_rounded() {
        let r = crate::scalar::rat(22, 7);
        let x = with_precision(200, || Mp::from_rational(&r));
        let y = with_precision(200, || Mp::from_ratio(22, 7));
        assert_eq!(x, y);
    }
}
