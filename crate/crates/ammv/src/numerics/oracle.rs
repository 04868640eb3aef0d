//! Direct truncation of the defining series, in any scalar.

use crate::index::Index;
use crate::scalar::Scalar;

/// `Σ_{N ≥ m₁ > ⋯ > m_r > 0} Π phase_j(m_j)/m_j^{s_j}`.
pub fn truncated_oracle<S: Scalar>(i: &Index, n: u64) -> S {
    let c = i.comps();
    let n = n as usize;
    // q[k] = sum over k > m_j > ... > m_r > 0 for the current j
    let mut q: Vec<S> = vec![S::one(); n + 2];
    for comp in c.iter().rev() {
        let mut next = vec![S::zero(); n + 2];
        let mut acc = S::zero();
        for k in 1..=n + 1 {
            let m = k - 1;
            if m >= 1 {
                let ph = comp.phase(m as u64);
                if ph != 0 {
                    let den = S::from_i64(m as i64).powu(comp.s);
                    acc = acc + S::from_i64(ph) * q[m].clone() / den;
                }
            }
            next[k] = acc.clone();
        }
        q = next;
    }
    q[n + 1].clone()
}

/// Bound on `|M(i) − truncated_oracle(i, n)|` when one is available: every
/// `s_j ≥ 2`, or a convergent single sum with `s = 1`.
pub fn tail_bound(i: &Index, n: u64) -> Option<f64> {
    let c = i.comps();
    let first = c.first()?;
    let n = n.max(1) as f64;
    if c.iter().all(|x| x.s >= 2) {
        let s1 = first.s as f64;
        // inner sums are bounded by 2ζ(2)
        let inner = (2.0 * std::f64::consts::PI.powi(2) / 6.0).powi(c.len() as i32 - 1);
        return Some(2.0 / ((s1 - 1.0) * n.powf(s1 - 1.0)) * inner);
    }
    if c.len() == 1 && !first.is_divergent() {
        // blocks of four terms alternate in sign
        return Some(8.0 / n);
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_rational::BigRational;

    fn m(t: &str) -> Index {
        t.parse().unwrap()
    }

    #[test]
    fn hand_values() {
        assert_eq!(truncated_oracle::<BigRational>(&m("M(2)"), 2), rat(1, 2));
        assert_eq!(truncated_oracle::<BigRational>(&m("M(cb1)"), 4), rat(-4, 3));
        assert_eq!(truncated_oracle::<BigRational>(&Index::empty(), 9), rat(1, 1));
    }

    #[test]
    fn double_loop() {
        let i = m("M(c3,b2)");
        let mut brute = rat(0, 1);
        for m1 in 1..=4u64 {
            for m2 in 1..m1 {
                let a = i.comps()[0].phase(m1) * i.comps()[1].phase(m2);
                if a != 0 {
                    brute += rat(a, (m1.pow(3) * m2.pow(2)) as i64);
                }
            }
        }
        assert_eq!(truncated_oracle::<BigRational>(&i, 4), brute);
        let f: f64 = truncated_oracle(&i, 4);
        assert!((f - num_traits::ToPrimitive::to_f64(&brute).unwrap()).abs() < 1e-15);
    }
}
