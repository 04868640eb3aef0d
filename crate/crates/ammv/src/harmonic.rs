//! Finite alternating multiple T- and S-harmonic sums.

use num_rational::BigRational;
use serde::{Deserialize, Serialize};

use crate::index::Sign;
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HarmonicFamily {
    T,
    S,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct HarmonicSumSpec {
    pub family: HarmonicFamily,
    pub sigma: Vec<Sign>,
    pub k: Vec<u32>,
    pub n: u64,
}

impl HarmonicSumSpec {
    pub fn new(family: HarmonicFamily, sigma: Vec<Sign>, k: Vec<u32>, n: u64) -> Self {
        assert_eq!(sigma.len(), k.len(), "sign and exponent lists differ in length");
        HarmonicSumSpec { family, sigma, k, n }
    }

    /// All signs positive.
    pub fn plain(family: HarmonicFamily, k: Vec<u32>, n: u64) -> Self {
        let sigma = vec![Sign::Plus; k.len()];
        Self::new(family, sigma, k, n)
    }
}

/// Exact value of the sum.
pub fn harmonic_sum(h: &HarmonicSumSpec) -> BigRational {
    harmonic_sum_in::<BigRational>(h)
}

/// Evaluates the sum through the one-step recursions, innermost level first.
pub fn harmonic_sum_in<S: Scalar>(h: &HarmonicSumSpec) -> S {
    let n = h.n as usize;
    let d = h.k.len();
    // g[j] holds the inner sum of the current depth evaluated at upper index j
    let mut g: Vec<S> = vec![S::one(); n + 1];
    for e in 1..=d {
        let pos = d - e;
        let k = h.k[pos];
        let sig = h.sigma[pos];
        // (odd denominator, upper limit n) or (even denominator, upper limit n-1)
        let odd_den = match h.family {
            HarmonicFamily::T => e % 2 == 1,
            HarmonicFamily::S => e % 2 == 0,
        };
        let mut next = vec![S::zero(); n + 1];
        let mut acc = S::zero();
        for top in 1..=n {
            // term j = top for the odd-denominator case, j = top-1 otherwise
            let j = if odd_den { top } else { top - 1 };
            if j >= 1 {
                let den = if odd_den { 2 * j as i64 - 1 } else { 2 * j as i64 };
                let mut t = S::from_i64(2) * g[j].clone() / S::from_i64(den).powu(k);
                if sig == Sign::Minus && j % 2 == 1 {
                    t = -t;
                }
                acc = acc + t;
            }
            next[top] = acc.clone();
        }
        g = next;
    }
    if n == 0 {
        return if d == 0 { S::one() } else { S::zero() };
    }
    g[n].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_traits::{One, Zero};

    #[test]
    fn spec_examples() {
        let h = HarmonicSumSpec::plain(HarmonicFamily::T, vec![2], 1);
        assert_eq!(harmonic_sum(&h), rat(2, 1));
        let e = HarmonicSumSpec::plain(HarmonicFamily::T, vec![], 7);
        assert!(harmonic_sum(&e).is_one());
        let s = HarmonicSumSpec::plain(HarmonicFamily::S, vec![1, 1], 1);
        assert!(harmonic_sum(&s).is_zero());
    }

    #[test]
    fn small_values() {
        // T_2(1) = 2(1 + 1/3)
        let h = HarmonicSumSpec::plain(HarmonicFamily::T, vec![1], 2);
        assert_eq!(harmonic_sum(&h), rat(8, 3));
        // S_2(1) = 2/2
        let s = HarmonicSumSpec::plain(HarmonicFamily::S, vec![1], 2);
        assert_eq!(harmonic_sum(&s), rat(1, 1));
        // T_2(b1) = 2(-1 + 1/3)
        let t = HarmonicSumSpec::new(HarmonicFamily::T, vec![Sign::Minus], vec![1], 2);
        assert_eq!(harmonic_sum(&t), rat(-4, 3));
    }
}
