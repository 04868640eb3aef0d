//! Classical constants: π, log 2, Catalan, ζ(n), β(n) and convergent
//! polylogarithms.

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use rug::Float;

use crate::error::{Error, Result};
use crate::monomial::{ClosedForm, Const, Monomial};
use crate::mp::{precision, Mp};
use crate::scalar::{rat, Real, Scalar};

/// `Σ_{k≥0} (−1)^k a_k` by the Cohen–Rodriguez Villegas–Zagier acceleration.
/// `a_k` should be a totally monotone sequence such as `1/(k+1)^s`.
pub fn alternating_sum(a: impl Fn(u64) -> Mp) -> Mp {
    let bits = precision();
    let n = (bits as f64 * 0.3010 * 1.31).ceil() as u64 + 8;
    let sqrt8 = Mp::from_i64(8).sqrt();
    let mut d = (Mp::from_i64(3) + sqrt8).powi(n as i32);
    d = (d.clone() + Mp::one() / d) / Mp::from_i64(2);
    let mut b = Mp::from_i64(-1);
    let mut c = -d.clone();
    let mut s = Mp::zero();
    for k in 0..n {
        c = b.clone() - c;
        s += &(c.clone() * a(k));
        let num = Mp::from_i64(((k + n) as i64) * (k as i64 - n as i64));
        let den = Mp::from_ratio((2 * k + 1) as i64 * (k + 1) as i64, 2);
        b = b * num / den;
    }
    s / d
}

/// Dirichlet eta `Σ (−1)^{n−1}/n^s`.
pub fn eta(s: u32) -> Mp {
    if s == 1 {
        return Mp::ln2();
    }
    alternating_sum(|k| Mp::inv_pow(k + 1, s))
}

type Key = (u8, u32, u32);

fn cache() -> &'static Mutex<HashMap<Key, Float>> {
    static C: OnceLock<Mutex<HashMap<Key, Float>>> = OnceLock::new();
    C.get_or_init(|| Mutex::new(HashMap::new()))
}

fn cached(kind: u8, n: u32, f: impl FnOnce() -> Mp) -> Mp {
    let bits = precision();
    let key = (kind, n, bits);
    if let Some(v) = cache().lock().expect("constant cache").get(&key) {
        return Mp(v.clone());
    }
    let v = f();
    cache().lock().expect("constant cache").insert(key, v.0.clone());
    v
}

/// `ζ(n)` for `n ≥ 2`.
pub fn zeta(n: u32) -> Mp {
    assert!(n >= 2, "zeta pole at 1");
    cached(0, n, || {
        let e = eta(n);
        let f = Mp::one() - Mp::one() / Mp::from_i64(2).powi(n as i32 - 1);
        e / f
    })
}

/// Dirichlet beta `Σ_{k≥0} (−1)^k/(2k+1)^n`.
pub fn beta(n: u32) -> Mp {
    assert!(n >= 1);
    cached(1, n, || {
        if n == 1 {
            Mp::pi() / Mp::from_i64(4)
        } else {
            alternating_sum(|k| Mp::inv_pow(2 * k + 1, n))
        }
    })
}

pub fn catalan() -> Mp {
    beta(2)
}

pub fn constant_value(c: Const) -> Mp {
    match c {
        Const::Pi => Mp::pi(),
        Const::Log2 => Mp::ln2(),
        Const::Zeta(n) => zeta(n),
        Const::Beta(n) => beta(n),
        Const::LiHalf(n) => polylog_series(n, &Complex::new(rat(1, 2), rat(0, 1))).expect("|1/2| < 1").0.re,
        Const::ImLiHalfI(n) => polylog_series(n, &Complex::new(rat(1, 2), rat(1, 2))).expect("|(1+i)/2| < 1").0.im,
    }
}

pub fn monomial_value(m: &Monomial) -> Mp {
    m.factors()
        .fold(Mp::one(), |acc, (c, e)| acc * constant_value(c).powi(e as i32))
}

pub fn closed_form_value(f: &ClosedForm) -> Mp {
    f.evaluate(Mp::from_rational, monomial_value)
}

fn gauss_to_mp(z: &Complex<BigRational>) -> Complex<Mp> {
    Complex::new(Mp::from_rational(&z.re), Mp::from_rational(&z.im))
}

/// `Li_k(z)` for `|z| < 1` by the defining series; returns the value and a
/// geometric tail bound.
pub fn polylog_series(k: u32, z: &Complex<BigRational>) -> Result<(Complex<Mp>, f64)> {
    let r2 = (&z.re * &z.re + &z.im * &z.im).to_f64().unwrap_or(f64::INFINITY);
    if r2 >= 1.0 {
        return Err(Error::Domain(format!("polylog series needs |z| < 1, got |z|^2 = {r2}")));
    }
    let r = r2.sqrt();
    let zc = gauss_to_mp(z);
    let target = (precision() as f64) * std::f64::consts::LN_2;
    let mut pow = zc.clone();
    let mut sum = Complex::new(Mp::zero(), Mp::zero());
    let mut n = 1u64;
    loop {
        let w = Mp::inv_pow(n, k);
        sum = sum + Complex::new(pow.re.clone() * &w, pow.im.clone() * &w);
        // |z|^n / (1 - |z|) bounds the remaining terms
        let tail = (n as f64 + 1.0) * r.ln() - (1.0 - r).ln();
        if r == 0.0 || -tail > target + 10.0 {
            let bound = if r == 0.0 { 0.0 } else { tail.exp() };
            return Ok((sum, bound));
        }
        pow = pow * zc.clone();
        n += 1;
    }
}

/// `log 2` through the alternating acceleration; an independent route used to
/// cross-check the library constant.
pub fn log2_by_series() -> Mp {
    alternating_sum(|k| Mp::one() / Mp::from_i64(k as i64 + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::with_precision;

    fn close(a: &Mp, b: &Mp, tol: f64) -> bool {
        (a.clone() - b.clone()).abs().to_f64().abs() < tol
    }

    #[test]
    fn against_mpfr() {
        with_precision(240, || {
            for n in 2..9 {
                assert!(close(&zeta(n), &Mp::zeta_u(n), 1e-60), "zeta({n})");
            }
            assert!(close(&catalan(), &Mp::catalan(), 1e-60));
            assert!(close(&log2_by_series(), &Mp::ln2(), 1e-60));
            assert!(close(&beta(1), &alternating_sum(|k| Mp::one() / Mp::from_i64(2 * k as i64 + 1)), 1e-60));
        });
    }

    #[test]
    fn published_digits() {
        with_precision(200, || {
            let g = Mp::parse_decimal("0.915965594177219015054603514932384110774").unwrap();
            assert!(close(&catalan(), &g, 1e-38));
            let b4 = Mp::parse_decimal("0.988944551741105336108422633228377821315").unwrap();
            assert!(close(&beta(4), &b4, 1e-38));
            let z3 = Mp::parse_decimal("1.202056903159594285399738161511449990765").unwrap();
            assert!(close(&zeta(3), &z3, 1e-38));
        });
    }

    #[test]
    fn polylog_half() {
        with_precision(200, || {
            let half = Complex::new(BigRational::new(1.into(), 2.into()), BigRational::zero());
            let (v, bound) = polylog_series(4, &half).unwrap();
            let expect = Mp::parse_decimal("0.517479061673899386330758161898862945622").unwrap();
            assert!(close(&v.re, &expect, 1e-38));
            assert!(v.im.is_zero());
            assert!(bound < 1e-50);
            let one = Complex::new(BigRational::one(), BigRational::zero());
            assert!(polylog_series(2, &one).is_err());
        });
    }
}
