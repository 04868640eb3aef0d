//! PSLQ integer relation detection.

use num_bigint::BigInt;
use num_traits::Zero;
use rug::Float;

use crate::error::{Error, Result};
use crate::mp::{with_precision, Mp};
use crate::numerics::PrecReal;
use crate::scalar::{Real, Scalar};

/// Largest coefficient bound accepted; vectors are carried in `f64`-exact integers.
pub const MAX_COEFF_BITS: u32 = 52;

fn round_i64<R: Real>(x: &R) -> i64 {
    x.round().to_f64() as i64
}

/// Runs PSLQ on `x` at the current working precision. Returns an integer
/// vector `c` with `|c_k| < 2^max_coeff_bits` and `|Σ c_k x_k| ≤ tol`.
pub fn pslq_raw<R: Real>(x: &[R], tol: &R, max_coeff_bits: u32, max_steps: usize) -> Option<Vec<i64>> {
    let n = x.len();
    if n < 2 {
        return None;
    }
    let bound = 2f64.powi(max_coeff_bits as i32);
    for (k, v) in x.iter().enumerate() {
        if v.abs() <= *tol {
            let mut c = vec![0i64; n];
            c[k] = 1;
            return Some(c);
        }
    }
    let gamma = R::from_ratio(4, 3).sqrt();
    // partial norms s_k = sqrt(Σ_{j≥k} x_j²), normalized by s_0
    let mut s = vec![R::zero(); n];
    let mut acc = R::zero();
    for k in (0..n).rev() {
        acc = acc + x[k].clone() * x[k].clone();
        s[k] = acc.sqrt();
    }
    let t = s[0].clone();
    let mut y: Vec<R> = x.iter().map(|v| v.clone() / t.clone()).collect();
    for v in s.iter_mut() {
        *v = v.clone() / t.clone();
    }
    let mut h = vec![vec![R::zero(); n - 1]; n];
    for i in 0..n {
        for j in 0..(n - 1).min(i + 1) {
            h[i][j] = if i == j {
                s[j + 1].clone() / s[j].clone()
            } else {
                -(y[i].clone() * y[j].clone()) / (s[j].clone() * s[j + 1].clone())
            };
        }
    }
    let mut a: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    let mut b = a.clone();

    let reduce = |i: usize, j: usize, h: &mut Vec<Vec<R>>, y: &mut Vec<R>, a: &mut Vec<Vec<i64>>, b: &mut Vec<Vec<i64>>| -> Option<()> {
        if h[j][j].is_zero() {
            return Some(());
        }
        let t = round_i64(&(h[i][j].clone() / h[j][j].clone()));
        if t == 0 {
            return Some(());
        }
        let tr = R::from_i64(t);
        y[j] = y[j].clone() + tr.clone() * y[i].clone();
        for k in 0..=j {
            h[i][k] = h[i][k].clone() - tr.clone() * h[j][k].clone();
        }
        for k in 0..n {
            a[i][k] = a[i][k].checked_sub(t.checked_mul(a[j][k])?)?;
            b[k][j] = b[k][j].checked_add(t.checked_mul(b[k][i])?)?;
        }
        Some(())
    };

    for i in 1..n {
        for j in (0..i).rev() {
            reduce(i, j, &mut h, &mut y, &mut a, &mut b)?;
        }
    }

    for _ in 0..max_steps {
        let mut m = 0;
        let mut best = R::zero();
        let mut g = gamma.clone();
        for i in 0..n - 1 {
            let v = g.clone() * h[i][i].abs();
            if v > best {
                best = v;
                m = i;
            }
            g = g * gamma.clone();
        }
        y.swap(m, m + 1);
        h.swap(m, m + 1);
        a.swap(m, m + 1);
        for row in b.iter_mut() {
            row.swap(m, m + 1);
        }
        if m + 2 < n {
            let t0 = (h[m][m].clone() * h[m][m].clone() + h[m][m + 1].clone() * h[m][m + 1].clone()).sqrt();
            if t0.is_zero() {
                break;
            }
            let t1 = h[m][m].clone() / t0.clone();
            let t2 = h[m][m + 1].clone() / t0;
            for row in h.iter_mut().skip(m) {
                let (t3, t4) = (row[m].clone(), row[m + 1].clone());
                row[m] = t1.clone() * t3.clone() + t2.clone() * t4.clone();
                row[m + 1] = -(t2.clone() * t3) + t1.clone() * t4;
            }
        }
        for i in m + 1..n {
            for j in (0..=(i - 1).min(m + 1)).rev() {
                reduce(i, j, &mut h, &mut y, &mut a, &mut b)?;
            }
        }
        for k in 0..n {
            if y[k].abs() < *tol {
                let c: Vec<i64> = (0..n).map(|r| b[r][k]).collect();
                if c.iter().all(|v| (v.abs() as f64) < bound) {
                    return Some(c);
                }
            }
        }
        // any relation has norm at least 1/max|H_jj|
        let mut hmax = R::zero();
        for (j, row) in h.iter().enumerate().take(n - 1) {
            let v = row[j].abs();
            if v > hmax {
                hmax = v;
            }
        }
        if hmax.is_zero() {
            break;
        }
        if (R::one() / hmax).to_f64() > bound * (n as f64).sqrt() {
            return None;
        }
    }
    None
}

fn sign_normalize(c: &mut [i64]) {
    if c.iter().find(|v| **v != 0).is_some_and(|v| *v < 0) {
        for v in c.iter_mut() {
            *v = -*v;
        }
    }
}

/// PSLQ on evaluated values at `digits`; any hit is re-verified by direct dot
/// product at full precision and must satisfy `|Σ c v| < 10^(-digits/2)`.
pub fn pslq(values: &[PrecReal], digits: u32, max_coeff_bits: u32) -> Result<Option<Vec<BigInt>>> {
    if values.len() < 2 {
        return Err(Error::Domain("pslq needs at least two values".into()));
    }
    if max_coeff_bits > MAX_COEFF_BITS {
        return Err(Error::Domain(format!("coefficient bound 2^{max_coeff_bits} exceeds 2^{MAX_COEFF_BITS}")));
    }
    let need = values.len() as f64 * max_coeff_bits as f64 * std::f64::consts::LOG10_2;
    if need > digits as f64 {
        return Err(Error::Domain(format!(
            "precision insufficient: {} values with 2^{max_coeff_bits} coefficients need about {} digits, have {digits}",
            values.len(),
            need.ceil()
        )));
    }
    let lim = 10f64.powi(-(digits as i32));
    for (k, v) in values.iter().enumerate() {
        if v.err > lim {
            return Err(Error::Domain(format!("value {k} carries error {:e} > 1e-{digits}", v.err)));
        }
    }
    let bits = crate::mp::bits_for_digits(digits, 8);
    let half = 10f64.powi(-(digits as i32) / 2);
    let found = with_precision(bits, || {
        let x: Vec<Mp> = values.iter().map(|v| Mp(Float::with_val(bits, &v.value.0))).collect();
        let tol = Mp::from_f64(10f64.powi(-(digits as i32) * 3 / 4));
        pslq_raw(&x, &tol, max_coeff_bits, 2000 * values.len())
    });
    let Some(mut c) = found else { return Ok(None) };
    sign_normalize(&mut c);
    let dot = with_precision(bits, || {
        let mut s = Mp::zero();
        for (k, v) in c.iter().zip(values) {
            s += &(Mp::from_i64(*k) * v.value.clone());
        }
        s.abs().to_f64()
    });
    if dot >= half {
        return Ok(None);
    }
    Ok(Some(c.into_iter().map(BigInt::from).collect()))
}
