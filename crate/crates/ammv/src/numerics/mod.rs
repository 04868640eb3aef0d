//! Arbitrary-precision evaluation of indices, words, colored values and
//! classical constants.

pub mod constants;
pub mod engine;
pub mod oracle;
pub mod quadrature;

use std::collections::HashMap;
use std::fmt;
use std::io::{BufRead, Write};
use std::path::Path;
use std::sync::{OnceLock, RwLock};

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::index::{Index, Parity, Sign};
use crate::mp::{bits_for_digits, with_precision, Mp};
use crate::scalar::{Real, Scalar};
use crate::words::{q_map, word_to_cmzv, CmzvIndex, Word};

use constants::{beta, eta, polylog_series, zeta};
use engine::{nested_adaptive, Level};

pub use oracle::{tail_bound, truncated_oracle};

/// A value with a heuristic absolute error bound.
#[derive(Clone, Debug)]
pub struct PrecReal {
    pub value: Mp,
    pub err: f64,
    pub digits: u32,
}

impl PrecReal {
    pub fn exact(value: Mp, digits: u32) -> Self {
        PrecReal { value, err: 0.0, digits }
    }

    pub fn meets(&self, digits: u32) -> bool {
        self.err.is_finite() && self.err <= 10f64.powi(-(digits as i32))
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    pub fn decimal(&self) -> String {
        self.value.to_sci(self.digits as usize + 1)
    }
}

impl fmt::Display for PrecReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} +/- {:.1e}", self.decimal(), self.err)
    }
}

#[derive(Clone, Debug)]
pub struct EvalConfig {
    /// Smallest cutoff of the extrapolation ladder (a multiple of 4).
    pub n0: u64,
    /// Largest ladder length; the top cutoff is `n0·2^max_levels`.
    pub max_levels: u32,
    pub guard_bits: u32,
    /// Permit requests above [`EvalConfig::DIGIT_LIMIT`] digits.
    pub allow_high_precision: bool,
}

impl EvalConfig {
    pub const DIGIT_LIMIT: u32 = 60;
}

impl Default for EvalConfig {
    fn default() -> Self {
        EvalConfig { n0: 64, max_levels: 12, guard_bits: 40, allow_high_precision: false }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConstantId {
    Pi,
    Log2,
    Catalan,
    Zeta(u32),
    Beta(u32),
}

/// Memoizing evaluator; safe to share between threads.
#[derive(Debug, Default)]
pub struct Evaluator {
    pub config: EvalConfig,
    cache: RwLock<HashMap<(String, u32), PrecReal>>,
}

impl Evaluator {
    pub fn new(config: EvalConfig) -> Self {
        Evaluator { config, cache: RwLock::new(HashMap::new()) }
    }

    fn check_digits(&self, digits: u32) -> Result<()> {
        if digits > EvalConfig::DIGIT_LIMIT && !self.config.allow_high_precision {
            return Err(Error::Budget(format!(
                "{digits} digits requested; more than {} needs an explicit override",
                EvalConfig::DIGIT_LIMIT
            )));
        }
        Ok(())
    }

    pub fn bits(&self, digits: u32) -> u32 {
        bits_for_digits(digits, self.config.guard_bits)
    }

    fn start_level(&self, digits: u32) -> u32 {
        (3 + digits / 5).min(self.config.max_levels)
    }

    pub fn eval_index(&self, i: &Index, digits: u32) -> Result<PrecReal> {
        self.check_digits(digits)?;
        if !i.is_admissible() {
            return Err(Error::Inadmissible(i.to_string()));
        }
        let key = (i.to_string(), digits);
        if let Some(v) = self.cache.read().expect("cache lock").get(&key) {
            return Ok(v.clone());
        }
        let v = with_precision(self.bits(digits), || self.compute_index(i, digits));
        self.cache.write().expect("cache lock").insert(key, v.clone());
        Ok(v)
    }

    fn compute_index(&self, i: &Index, digits: u32) -> PrecReal {
        let c = i.comps();
        match c.len() {
            0 => PrecReal::exact(Mp::one(), digits),
            1 => PrecReal::exact(depth_one(c[0].s, c[0].sigma, c[0].eps), digits),
            _ => {
                let levels: Vec<Level> = c
                    .iter()
                    .map(|comp| {
                        let comp = *comp;
                        Level { s: comp.s, phase: Box::new(move |m| (comp.phase(m), 0)) }
                    })
                    .collect();
                let tol = 10f64.powi(-(digits as i32));
                let r = nested_adaptive::<Mp>(&levels, self.config.n0, self.start_level(digits), self.config.max_levels, tol);
                PrecReal { value: r.value, err: r.err, digits }
            }
        }
    }

    /// `∫ w = sign · M(q(w))`.
    pub fn eval_word(&self, w: &Word, digits: u32) -> Result<PrecReal> {
        let (sg, i) = q_map(w)?;
        let mut v = self.eval_index(&i, digits)?;
        if sg < 0 {
            v.value = -v.value;
        }
        Ok(v)
    }

    /// Real and imaginary parts of `Li_k(z)` at fourth roots of unity.
    pub fn eval_cmzv(&self, c: &CmzvIndex, digits: u32) -> Result<(PrecReal, PrecReal)> {
        self.check_digits(digits)?;
        if !c.is_admissible() {
            return Err(Error::Inadmissible(c.to_string()));
        }
        Ok(with_precision(self.bits(digits), || {
            let (v, err) = match c.depth() {
                0 => (Complex::new(Mp::one(), Mp::zero()), 0.0),
                1 => (cmzv_depth_one(c.k[0], c.z[0].0), 0.0),
                _ => {
                    let levels: Vec<Level> = c
                        .k
                        .iter()
                        .zip(&c.z)
                        .map(|(&k, &z)| Level { s: k, phase: Box::new(move |m| z.pow(m)) })
                        .collect();
                    let tol = 10f64.powi(-(digits as i32));
                    let r = nested_adaptive::<Complex<Mp>>(&levels, self.config.n0, self.start_level(digits), self.config.max_levels, tol);
                    (r.value, r.err)
                }
            };
            (PrecReal { value: v.re, err, digits }, PrecReal { value: v.im, err, digits })
        }))
    }

    /// `Σ c · Li(k; z)` over the level-four decomposition of a word, as
    /// real and imaginary parts.
    pub fn eval_word_via_cmzv(&self, w: &Word, digits: u32) -> Result<(PrecReal, PrecReal)> {
        let bits = self.bits(digits);
        let (mut re, mut im) = with_precision(bits, || (Mp::zero(), Mp::zero()));
        let mut err = 0.0;
        for (c, k) in &word_to_cmzv(w)? {
            let (a, b) = self.eval_cmzv(c, digits)?;
            with_precision(bits, || {
                let kr = Mp::from_rational(&k.re);
                let ki = Mp::from_rational(&k.im);
                err += (kr.abs().to_f64() + ki.abs().to_f64()) * a.err.max(b.err);
                re += &(kr.clone() * a.value.clone() - ki.clone() * b.value.clone());
                im += &(kr * b.value + ki * a.value);
            });
        }
        Ok((PrecReal { value: re, err, digits }, PrecReal { value: im, err, digits }))
    }

    pub fn eval_constant(&self, c: ConstantId, digits: u32) -> Result<PrecReal> {
        self.check_digits(digits)?;
        let v = with_precision(self.bits(digits), || match c {
            ConstantId::Pi => Ok(Mp::pi()),
            ConstantId::Log2 => Ok(Mp::ln2()),
            ConstantId::Catalan => Ok(beta(2)),
            ConstantId::Zeta(n) if n >= 2 => Ok(zeta(n)),
            ConstantId::Beta(n) if n >= 1 => Ok(beta(n)),
            other => Err(Error::Domain(format!("{other:?}"))),
        })?;
        Ok(PrecReal::exact(v, digits))
    }

    /// `Li_k(z)` for a Gaussian rational `|z| < 1`.
    pub fn eval_polylog(&self, k: u32, z: &Complex<BigRational>, digits: u32) -> Result<(PrecReal, PrecReal)> {
        self.check_digits(digits)?;
        with_precision(self.bits(digits), || {
            let (v, bound) = polylog_series(k, z)?;
            Ok((PrecReal { value: v.re, err: bound, digits }, PrecReal { value: v.im, err: bound, digits }))
        })
    }

    pub fn cached_len(&self) -> usize {
        self.cache.read().expect("cache lock").len()
    }

    /// Reads `index \t digits \t value \t err` lines into the cache.
    pub fn load_cache(&self, path: &Path) -> Result<usize> {
        if !path.exists() {
            return Ok(0);
        }
        let f = std::io::BufReader::new(std::fs::File::open(path)?);
        let mut n = 0;
        let mut cache = self.cache.write().expect("cache lock");
        for (lineno, line) in f.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split('\t').collect();
            let bad = || Error::parse(lineno + 1, format!("bad cache record `{line}`"));
            if parts.len() != 4 {
                return Err(bad());
            }
            let i: Index = parts[0].parse()?;
            let digits: u32 = parts[1].parse().map_err(|_| bad())?;
            let value = with_precision(self.bits(digits), || Mp::parse_decimal(parts[2])).ok_or_else(bad)?;
            let err: f64 = parts[3].parse().map_err(|_| bad())?;
            cache.insert((i.to_string(), digits), PrecReal { value, err, digits });
            n += 1;
        }
        Ok(n)
    }

    pub fn save_cache(&self, path: &Path) -> Result<()> {
        let cache = self.cache.read().expect("cache lock");
        let mut keys: Vec<&(String, u32)> = cache.keys().collect();
        keys.sort();
        let mut f = std::io::BufWriter::new(std::fs::File::create(path)?);
        for k in keys {
            let v = &cache[k];
            writeln!(f, "{}\t{}\t{}\t{:e}", k.0, k.1, v.value.to_sci(k.1 as usize + 10), v.err)?;
        }
        f.flush()?;
        Ok(())
    }
}

/// Closed forms of the single sums.
fn depth_one(s: u32, sigma: Sign, eps: Parity) -> Mp {
    let two_pow = |e: i32| Mp::from_i64(2).powi(e);
    match (eps, sigma) {
        (Parity::Even, Sign::Plus) => two_pow(1 - s as i32) * zeta(s),
        (Parity::Even, Sign::Minus) => -(two_pow(1 - s as i32) * eta(s)),
        (Parity::Odd, Sign::Plus) => Mp::from_i64(2) * (Mp::one() - two_pow(-(s as i32))) * zeta(s),
        (Parity::Odd, Sign::Minus) => -(Mp::from_i64(2) * beta(s)),
    }
}

/// `Li_k(i^a)`.
fn cmzv_depth_one(k: u32, a: u8) -> Complex<Mp> {
    match a {
        0 => Complex::new(zeta(k), Mp::zero()),
        2 => Complex::new(-eta(k), Mp::zero()),
        _ => {
            let re = -(eta(k) / Mp::from_i64(2).powi(k as i32));
            let im = if a == 1 { beta(k) } else { -beta(k) };
            Complex::new(re, im)
        }
    }
}

pub fn default_evaluator() -> &'static Evaluator {
    static E: OnceLock<Evaluator> = OnceLock::new();
    E.get_or_init(Evaluator::default)
}

pub fn eval_index(i: &Index, digits: u32) -> Result<PrecReal> {
    default_evaluator().eval_index(i, digits)
}

pub fn eval_word(w: &Word, digits: u32) -> Result<PrecReal> {
    default_evaluator().eval_word(w, digits)
}

pub fn eval_cmzv(c: &CmzvIndex, digits: u32) -> Result<(PrecReal, PrecReal)> {
    default_evaluator().eval_cmzv(c, digits)
}

pub fn eval_constant(c: ConstantId, digits: u32) -> Result<PrecReal> {
    default_evaluator().eval_constant(c, digits)
}

/// `Σ c·value` over a combination of indices, with summed error bounds.
pub fn eval_lincomb(ev: &Evaluator, c: &crate::LinComb<Index>, digits: u32) -> Result<PrecReal> {
    let bits = ev.bits(digits);
    let mut total = with_precision(bits, Mp::zero);
    let mut err = 0.0;
    for (i, k) in c {
        let v = ev.eval_index(i, digits)?;
        let kk = with_precision(bits, || Mp::from_rational(k));
        err += v.err * k.to_f64().unwrap_or(f64::INFINITY).abs();
        total += &(kk * v.value);
    }
    Ok(PrecReal { value: total, err, digits })
}

pub fn is_zero_value(v: &PrecReal) -> bool {
    v.value.is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(t: &str) -> Index {
        t.parse().unwrap()
    }

    fn near(v: &PrecReal, expect: &str, tol: f64) {
        let e = with_precision(v.value.prec(), || Mp::parse_decimal(expect).unwrap());
        let d = (v.value.clone() - e).abs().to_f64();
        assert!(d < tol, "{v} vs {expect}: {d:e}");
    }

    #[test]
    fn single_sums() {
        near(&eval_index(&m("M(2)"), 30).unwrap(), "0.822467033424113218236207583323012594609", 1e-30);
        near(&eval_index(&m("M(cb1)"), 30).unwrap(), "-1.57079632679489661923132169163975144209", 1e-30);
        near(&eval_index(&m("M(b1)"), 30).unwrap(), "-0.693147180559945309417232121458176568075", 1e-30);
        near(&eval_index(&m("M(b2)"), 30).unwrap(), "-0.411233516712056609118103791661506297305", 1e-30);
        near(&eval_index(&m("M(c2)"), 30).unwrap(), "2.46740110027233965470862274996903778383", 1e-30);
    }

    #[test]
    fn depth_one_matches_oracle() {
        for t in ["M(2)", "M(b2)", "M(c2)", "M(cb2)", "M(c3)", "M(cb3)", "M(b3)", "M(b1)", "M(cb1)", "M(3,2)", "M(cb2,c2)"] {
            let i = m(t);
            let v = eval_index(&i, 20).unwrap().to_f64();
            let o: f64 = truncated_oracle(&i, 4000);
            assert!((v - o).abs() <= tail_bound(&i, 4000).unwrap(), "{t}");
        }
    }

    #[test]
    fn regularization_anchor() {
        let a = eval_index(&m("M(c2,b1)"), 20).unwrap();
        let b = eval_index(&m("M(cb2,cb1)"), 20).unwrap();
        let c = eval_index(&m("M(b2,c1)"), 20).unwrap();
        let lhs = a.value + b.value;
        let d = (lhs.clone() - c.value.clone()).abs().to_f64();
        assert!(d < 1e-15, "{d:e}");
        assert!((c.to_f64() + 0.7739912).abs() < 1e-6);
    }

    #[test]
    fn cmzv_values() {
        let li = |t: &str| eval_cmzv(&t.parse().unwrap(), 25).unwrap();
        let (re, im) = li("Li[2;-1]");
        near(&re, "-0.822467033424113218236207583323012594609", 1e-25);
        assert!(im.value.is_zero());
        let (re, im) = li("Li[1;I]");
        near(&re, "-0.346573590279972654708616060729088284037", 1e-25);
        near(&im, "0.785398163397448309615660845819875721049", 1e-25);
        let (re, _) = li("Li[2;1]");
        near(&re, "1.64493406684822643647241516664602518922", 1e-25);
    }

    #[test]
    fn word_decomposition_matches() {
        for t in ["w0 w+1^-1", "w-1^-1", "w0 w-1^+1", "w0 w-1^-1 w+1^-1", "w-1^+1 w+1^+1"] {
            let w: Word = t.parse().unwrap();
            let direct = eval_word(&w, 20).unwrap();
            let (re, im) = default_evaluator().eval_word_via_cmzv(&w, 20).unwrap();
            let d = (re.value - direct.value).abs().to_f64();
            assert!(d < 1e-15, "{t}: {d:e}");
            assert!(im.value.abs().to_f64() < 1e-15);
        }
    }

    #[test]
    fn budget_guard() {
        assert!(matches!(eval_index(&m("M(2)"), 61), Err(Error::Budget(_))));
        let ev = Evaluator::new(EvalConfig { allow_high_precision: true, ..EvalConfig::default() });
        assert!(ev.eval_index(&m("M(2)"), 80).unwrap().meets(80));
        assert!(matches!(eval_index(&m("M(1,2)"), 10), Err(Error::Inadmissible(_))));
    }

    #[test]
    fn constants() {
        near(&eval_constant(ConstantId::Beta(2), 30).unwrap(), "0.915965594177219015054603514932384110774", 1e-30);
        let half = Complex::new(BigRational::new(1.into(), 2.into()), BigRational::zero());
        let (v, _) = default_evaluator().eval_polylog(4, &half, 30).unwrap();
        near(&v, "0.517479061673899386330758161898862945622", 1e-30);
    }
}
