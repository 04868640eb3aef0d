//! Tanh-sinh quadrature over a small catalogue of smooth integrands.

use std::fmt;

use num_rational::BigRational;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::mp::{with_precision, Mp};
use crate::scalar::{Real, Scalar};

use super::{Evaluator, PrecReal};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Integrand {
    /// `x^a · arctan^b(x)`
    XPowArctan { a: u32, b: u32 },
    /// `arctan^b(x) / x`
    ArctanOverX { b: u32 },
    /// `x^a · cot(x)`
    XPowCot { a: u32 },
}

impl Integrand {
    pub fn eval<R: Real>(&self, x: &R) -> R {
        match *self {
            Integrand::XPowArctan { a, b } => x.powu(a) * x.atan().powu(b),
            Integrand::ArctanOverX { b } => {
                if x.is_zero() {
                    return if b == 1 { R::one() } else { R::zero() };
                }
                x.atan().powu(b) / x.clone()
            }
            Integrand::XPowCot { a } => x.powu(a) * x.cos() / x.sin(),
        }
    }

    fn check(&self, lo: &Bound) -> Result<()> {
        match *self {
            Integrand::ArctanOverX { b: 0 } => Err(Error::Domain("arctan^0(x)/x is not integrable at 0".into())),
            Integrand::XPowCot { a: 0 } if lo.is_zero() => Err(Error::Domain("cot(x) is not integrable at 0".into())),
            _ => Ok(()),
        }
    }
}

impl fmt::Display for Integrand {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Integrand::XPowArctan { a, b } => write!(f, "x^{a}*arctan(x)^{b}"),
            Integrand::ArctanOverX { b } => write!(f, "arctan(x)^{b}/x"),
            Integrand::XPowCot { a } => write!(f, "x^{a}*cot(x)"),
        }
    }
}

/// Interval endpoints inside `[0, π/2]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Bound {
    Rational(BigRational),
    PiOver4,
    PiOver2,
}

impl Bound {
    pub fn zero() -> Self {
        Bound::Rational(BigRational::zero())
    }

    pub fn one() -> Self {
        Bound::Rational(BigRational::from_integer(1.into()))
    }

    fn is_zero(&self) -> bool {
        matches!(self, Bound::Rational(r) if r.is_zero())
    }

    pub fn value<R: Real>(&self) -> R {
        match self {
            Bound::Rational(r) => R::from_rational(r),
            Bound::PiOver4 => R::pi() / R::from_i64(4),
            Bound::PiOver2 => R::pi() / R::from_i64(2),
        }
    }
}

/// `∫_lo^hi f` by tanh-sinh with step halving until two successive levels
/// agree to `tol`. Returns the value and the last difference.
pub fn tanh_sinh<R: Real>(f: impl Fn(&R) -> R, lo: &R, hi: &R, tol: f64, max_level: u32) -> Option<(R, f64)> {
    let hw = (hi.clone() - lo.clone()) / R::from_i64(2);
    if hw.is_zero() {
        return Some((R::zero(), 0.0));
    }
    let half_pi = R::pi() / R::from_i64(2);
    // nodes whose distance to an endpoint falls below the working precision are dropped
    let bits = R::working_digits() as f64 * std::f64::consts::LOG2_10;
    let u_max = (bits + 8.0) * std::f64::consts::LN_2 / 2.0;
    let t_max = (2.0 * u_max / std::f64::consts::PI).asinh();

    // Contribution of the node pair at ±t.
    let pair = |t: &R| -> R {
        let et = t.exp();
        let cosh = (et.clone() + R::one() / et.clone()) / R::from_i64(2);
        let sinh = (et.clone() - R::one() / et) / R::from_i64(2);
        let u = half_pi.clone() * sinh;
        let e2u = (u * R::from_i64(2)).exp();
        let denom = R::one() + e2u.clone();
        let dist = hw.clone() * R::from_i64(2) / denom.clone();
        let w = hw.clone() * half_pi.clone() * cosh * R::from_i64(4) * e2u / (denom.clone() * denom);
        let left = lo.clone() + dist.clone();
        let right = hi.clone() - dist;
        w * (f(&left) + f(&right))
    };

    let mut h = 1.0f64;
    let mid = lo.clone() + hw.clone();
    let mut sum = hw.clone() * half_pi.clone() * f(&mid);
    let mut k = 1u64;
    while (k as f64) * h <= t_max {
        sum = sum + pair(&R::from_i64(k as i64));
        k += 1;
    }
    let mut prev = sum.clone() * R::from_f64(h);
    for _ in 1..=max_level {
        h /= 2.0;
        let hh = R::from_f64(h);
        let mut k = 1u64;
        while (k as f64) * h <= t_max {
            sum = sum + pair(&(hh.clone() * R::from_i64(k as i64)));
            k += 2;
        }
        let cur = sum.clone() * hh;
        let diff = (cur.clone() - prev).abs().to_f64();
        if diff <= tol {
            return Some((cur, diff));
        }
        prev = cur;
    }
    None
}

impl Evaluator {
    pub fn quadrature_1d(&self, f: Integrand, lo: &Bound, hi: &Bound, digits: u32) -> Result<PrecReal> {
        self.check_digits(digits)?;
        f.check(lo)?;
        if let (Bound::Rational(a), Bound::Rational(b)) = (lo, hi) {
            if a.is_negative() || b.is_negative() {
                return Err(Error::Domain("interval outside [0, pi/2]".into()));
            }
        }
        // a few extra digits so the agreement test is not defeated by rounding
        with_precision(self.bits(digits + 5), || {
            let a: Mp = lo.value();
            let b: Mp = hi.value();
            if a > b || b > Mp::pi() / Mp::from_i64(2) + Mp::epsilon() {
                return Err(Error::Domain("interval outside [0, pi/2]".into()));
            }
            let tol = 10f64.powi(-(digits as i32));
            let (v, err) = tanh_sinh(|x: &Mp| f.eval(x), &a, &b, tol, 12)
                .ok_or_else(|| Error::Budget(format!("quadrature of {f} did not converge")))?;
            Ok(PrecReal { value: v, err, digits })
        })
    }
}

pub fn quadrature_1d(f: Integrand, lo: &Bound, hi: &Bound, digits: u32) -> Result<PrecReal> {
    super::default_evaluator().quadrature_1d(f, lo, hi, digits)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(v: &PrecReal, expect: Mp, tol: f64) {
        let d = (v.value.clone() - expect).abs().to_f64();
        assert!(d < tol, "{v}: {d:e}");
    }

    #[test]
    fn catalogue_values() {
        let v = quadrature_1d(Integrand::XPowArctan { a: 0, b: 1 }, &Bound::zero(), &Bound::one(), 30).unwrap();
        close(&v, with_precision(160, || Mp::pi() / Mp::from_i64(4) - Mp::ln2() / Mp::from_i64(2)), 1e-30);
        let v = quadrature_1d(Integrand::ArctanOverX { b: 1 }, &Bound::zero(), &Bound::one(), 30).unwrap();
        close(&v, with_precision(160, Mp::catalan), 1e-30);
        let v = quadrature_1d(Integrand::XPowArctan { a: 0, b: 0 }, &Bound::zero(), &Bound::one(), 30).unwrap();
        close(&v, Mp::from_i64(1), 1e-30);
        let v = quadrature_1d(Integrand::XPowCot { a: 1 }, &Bound::zero(), &Bound::PiOver2, 30).unwrap();
        close(&v, with_precision(160, || Mp::pi() / Mp::from_i64(2) * Mp::ln2()), 1e-30);
    }

    #[test]
    fn generic_over_f64() {
        let (v, _) = tanh_sinh(|x: &f64| x.atan(), &0.0, &1.0, 1e-13, 8).unwrap();
        assert!((v - (std::f64::consts::FRAC_PI_4 - std::f64::consts::LN_2 / 2.0)).abs() < 1e-13);
    }

    #[test]
    fn rejects_divergent() {
        assert!(quadrature_1d(Integrand::XPowCot { a: 0 }, &Bound::zero(), &Bound::PiOver4, 10).is_err());
        assert!(quadrature_1d(Integrand::ArctanOverX { b: 0 }, &Bound::zero(), &Bound::one(), 10).is_err());
    }
}
