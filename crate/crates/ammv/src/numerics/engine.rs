//! Nested-tail summation with Richardson extrapolation.
//!
//! For `Σ_{m₁>⋯>m_r>0} Π f_j(m_j)` the tails `R_j(k) = Σ_{m>k} f_j(m) R_{j−1}(m)`
//! (with `R_0 ≡ 1`) are built outermost first. Each level's total `R_j(0)` is
//! extrapolated from partial sums at `N = N₀·2^i`, after which the tail is
//! known exactly up to the cutoff. Phases of period 4 and cutoffs divisible
//! by 4 keep every tail a power series in `1/N`.

use num_complex::Complex;
use num_traits::Zero;

use crate::mp::Mp;
use crate::scalar::{Real, Scalar};

pub trait SeriesValue: Scalar {
    fn magnitude(&self) -> f64;
    fn from_gauss(re: i64, im: i64) -> Self;
    fn mul_real(&self, r: &Mp) -> Self;
}

impl SeriesValue for Mp {
    fn magnitude(&self) -> f64 {
        Real::abs(self).to_f64()
    }
    fn from_gauss(re: i64, im: i64) -> Self {
        debug_assert_eq!(im, 0);
        Mp::from_i64(re)
    }
    fn mul_real(&self, r: &Mp) -> Self {
        self * r
    }
}

impl SeriesValue for Complex<Mp> {
    fn magnitude(&self) -> f64 {
        self.re.magnitude().hypot(self.im.magnitude())
    }
    fn from_gauss(re: i64, im: i64) -> Self {
        Complex::new(Mp::from_i64(re), Mp::from_i64(im))
    }
    fn mul_real(&self, r: &Mp) -> Self {
        Complex::new(&self.re * r, &self.im * r)
    }
}

/// One nesting level: exponent and a period-4 phase returning a Gaussian
/// integer.
pub struct Level {
    pub s: u32,
    pub phase: Box<dyn Fn(u64) -> (i64, i64) + Send + Sync>,
}

#[derive(Clone, Debug)]
pub struct Extrapolated<S> {
    pub value: S,
    pub err: f64,
    pub n_max: u64,
}

/// Richardson tableau for partial sums at cutoffs in ratio 2; returns the
/// last diagonal entry and its distance to the previous one.
pub fn richardson<S: SeriesValue>(seq: &[S]) -> (S, f64) {
    let l = seq.len();
    assert!(l >= 2, "need at least two partial sums");
    let mut prev: Vec<S> = vec![seq[0].clone()];
    let mut last_diag = seq[0].clone();
    let mut diag = seq[0].clone();
    for (i, x) in seq.iter().enumerate().skip(1) {
        let mut row = vec![x.clone()];
        for k in 1..=i {
            let f = S::from_i64((1i64 << k) - 1);
            let t = row[k - 1].clone() + (row[k - 1].clone() - prev[k - 1].clone()) / f;
            row.push(t);
        }
        last_diag = diag;
        diag = row[i].clone();
        prev = row;
    }
    let d = (diag.clone() - last_diag).magnitude();
    (diag, d)
}

/// Evaluates the nested sum with cutoffs `n0·2^i`, `i = 0..=levels`.
pub fn nested_sum<S: SeriesValue>(terms: &[Level], n0: u64, levels: u32) -> Extrapolated<S> {
    assert!(n0 % 4 == 0, "cutoffs must be multiples of 4");
    let n_max = n0 << levels;
    let n = n_max as usize;
    // R_{j-1}(m) for m in 0..=n
    let mut tail: Vec<S> = Vec::new();
    let mut err_total = 0.0f64;
    let mut value = S::zero();
    let mut inv_cache: Vec<(u32, Vec<Mp>)> = Vec::new();
    for (j, lv) in terms.iter().enumerate() {
        if !inv_cache.iter().any(|(s, _)| *s == lv.s) {
            let v: Vec<Mp> = (0..=n as u64)
                .map(|m| if m == 0 { Mp::zero() } else { Mp::inv_pow(m, lv.s) })
                .collect();
            inv_cache.push((lv.s, v));
        }
        let inv = &inv_cache.iter().find(|(s, _)| *s == lv.s).expect("cached").1;
        let mut partial = vec![S::zero(); n + 1];
        let mut acc = S::zero();
        let mut abs_sum = 0.0f64;
        for m in 1..=n {
            let (re, im) = (lv.phase)(m as u64);
            if re != 0 || im != 0 {
                let mut t = S::from_gauss(re, im).mul_real(&inv[m]);
                if j > 0 {
                    t = t * tail[m].clone();
                }
                abs_sum += t.magnitude();
                acc = acc + t;
            }
            partial[m] = acc.clone();
        }
        let seq: Vec<S> = (0..=levels).map(|i| partial[(n0 << i) as usize].clone()).collect();
        let (c, d) = richardson(&seq);
        // an error δ in R_{j-1} moves this level by at most δ·Σ|f_j|
        let inner = if j > 0 { err_total * abs_sum.max(1.0) } else { 0.0 };
        err_total = 10.0 * d + inner;
        if j + 1 < terms.len() {
            tail = partial.into_iter().map(|p| c.clone() - p).collect();
        }
        value = c;
    }
    Extrapolated { value, err: err_total, n_max }
}

/// Doubles the largest cutoff until the error estimate drops below `tol` or
/// `max_levels` is reached.
pub fn nested_adaptive<S: SeriesValue>(terms: &[Level], n0: u64, start: u32, max_levels: u32, tol: f64) -> Extrapolated<S> {
    let mut lv = start.min(max_levels);
    loop {
        let r = nested_sum::<S>(terms, n0, lv);
        if r.err < tol || lv >= max_levels {
            return r;
        }
        lv += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mp::with_precision;
    use crate::numerics::constants::zeta;

    #[test]
    fn zeta_two_by_extrapolation() {
        with_precision(160, || {
            let lv = vec![Level { s: 2, phase: Box::new(|_| (1, 0)) }];
            let r: Extrapolated<Mp> = nested_sum(&lv, 64, 8);
            let d = (r.value.clone() - zeta(2)).magnitude();
            assert!(d < 1e-25, "{d}");
            assert!(r.err >= d);
        });
    }

    #[test]
    fn double_sum_needs_nested_tails() {
        // ζ(2,1) = ζ(3)
        with_precision(160, || {
            let lv = vec![
                Level { s: 2, phase: Box::new(|_| (1, 0)) },
                Level { s: 1, phase: Box::new(|_| (1, 0)) },
            ];
            let r: Extrapolated<Mp> = nested_sum(&lv, 64, 8);
            let d = (r.value.clone() - zeta(3)).magnitude();
            assert!(d < 1e-20, "{d}");
        });
    }
}
