//! Finite formal linear combinations over an ordered basis.

use std::collections::btree_map;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LinComb<B: Ord, C = BigRational> {
    terms: BTreeMap<B, C>,
}

impl<B: Ord, C> Default for LinComb<B, C> {
    fn default() -> Self {
        LinComb { terms: BTreeMap::new() }
    }
}

impl<B: Ord + Clone, C: Scalar> LinComb<B, C> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn term(b: B, c: C) -> Self {
        let mut out = Self::new();
        out.add_term(b, c);
        out
    }

    pub fn basis(b: B) -> Self {
        Self::term(b, C::one())
    }

    pub fn add_term(&mut self, b: B, c: C) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(b) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let v = e.get().clone() + c;
                if v.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = v;
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &C) {
        for (b, v) in &other.terms {
            self.add_term(b.clone(), v.clone() * c.clone());
        }
    }

    pub fn scale(&self, c: &C) -> Self {
        let mut out = Self::new();
        out.add_scaled(self, c);
        out
    }

    pub fn coeff(&self, b: &B) -> C {
        self.terms.get(b).cloned().unwrap_or_else(C::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, B, C> {
        self.terms.iter()
    }

    pub fn keys(&self) -> impl Iterator<Item = &B> {
        self.terms.keys()
    }

    pub fn into_terms(self) -> BTreeMap<B, C> {
        self.terms
    }

    /// Applies a linear map given on basis elements.
    pub fn map_linear<B2: Ord + Clone>(&self, mut f: impl FnMut(&B) -> LinComb<B2, C>) -> LinComb<B2, C> {
        let mut out = LinComb::new();
        for (b, c) in &self.terms {
            out.add_scaled(&f(b), c);
        }
        out
    }

    /// Bilinear extension of a product given on basis pairs.
    pub fn product<B2: Ord + Clone, B3: Ord + Clone>(
        &self,
        other: &LinComb<B2, C>,
        mut f: impl FnMut(&B, &B2) -> LinComb<B3, C>,
    ) -> LinComb<B3, C> {
        let mut out = LinComb::new();
        for (a, ca) in &self.terms {
            for (b, cb) in &other.terms {
                out.add_scaled(&f(a, b), &(ca.clone() * cb.clone()));
            }
        }
        out
    }

    pub fn map_coeffs<C2: Scalar>(&self, f: impl Fn(&C) -> C2) -> LinComb<B, C2> {
        let mut out = LinComb::new();
        for (b, c) in &self.terms {
            out.add_term(b.clone(), f(c));
        }
        out
    }

    /// `Σ c · value(b)` in any scalar the coefficients embed into.
    pub fn evaluate<S: Scalar>(&self, coeff: impl Fn(&C) -> S, mut value: impl FnMut(&B) -> S) -> S {
        self.terms
            .iter()
            .fold(S::zero(), |acc, (b, c)| acc + coeff(c) * value(b))
    }
}

impl<B: Ord + Clone, C: Scalar> FromIterator<(B, C)> for LinComb<B, C> {
    fn from_iter<I: IntoIterator<Item = (B, C)>>(iter: I) -> Self {
        let mut out = Self::new();
        for (b, c) in iter {
            out.add_term(b, c);
        }
        out
    }
}

impl<'a, B: Ord, C> IntoIterator for &'a LinComb<B, C> {
    type Item = (&'a B, &'a C);
    type IntoIter = btree_map::Iter<'a, B, C>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<B: Ord + Clone, C: Scalar> AddAssign<&LinComb<B, C>> for LinComb<B, C> {
    fn add_assign(&mut self, rhs: &LinComb<B, C>) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), c.clone());
        }
    }
}

impl<B: Ord + Clone, C: Scalar> AddAssign for LinComb<B, C> {
    fn add_assign(&mut self, rhs: LinComb<B, C>) {
        for (b, c) in rhs.terms {
            self.add_term(b, c);
        }
    }
}

impl<B: Ord + Clone, C: Scalar> SubAssign<&LinComb<B, C>> for LinComb<B, C> {
    fn sub_assign(&mut self, rhs: &LinComb<B, C>) {
        for (b, c) in &rhs.terms {
            self.add_term(b.clone(), -c.clone());
        }
    }
}

impl<B: Ord + Clone, C: Scalar> Add for LinComb<B, C> {
    type Output = Self;
    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<B: Ord + Clone, C: Scalar> Sub for LinComb<B, C> {
    type Output = Self;
    fn sub(mut self, rhs: Self) -> Self {
        self -= &rhs;
        self
    }
}

impl<B: Ord + Clone, C: Scalar> Neg for LinComb<B, C> {
    type Output = Self;
    fn neg(self) -> Self {
        self.scale(&-C::one())
    }
}

impl<B: Ord + Clone, C: Scalar> Mul<&C> for LinComb<B, C> {
    type Output = Self;
    fn mul(self, rhs: &C) -> Self {
        self.scale(rhs)
    }
}

/// Integer vector `v / g` with `g = gcd(v)` and the sign chosen so the first
/// entry is positive.
pub fn primitive_integer_vector(coeffs: &[BigRational]) -> Vec<BigInt> {
    use num_integer::Integer;
    let l = coeffs
        .iter()
        .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    let ints: Vec<BigInt> = coeffs.iter().map(|c| (c * &l).to_integer()).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, v| acc.gcd(v));
    if g.is_zero() {
        return ints;
    }
    let flip = ints.iter().find(|v| !v.is_zero()).map_or(false, |v| v.is_negative());
    ints.into_iter()
        .map(|v| {
            let q = v / &g;
            if flip {
                -q
            } else {
                q
            }
        })
        .collect()
}

fn fmt_rational_coeff(f: &mut fmt::Formatter<'_>, c: &BigRational, first: bool) -> fmt::Result {
    let neg = c.is_negative();
    let a = c.abs();
    match (first, neg) {
        (true, true) => f.write_str("-")?,
        (true, false) => {}
        (false, true) => f.write_str(" - ")?,
        (false, false) => f.write_str(" + ")?,
    }
    if !a.is_one() {
        write!(f, "{a}*")?;
    }
    Ok(())
}

impl<B: Ord + fmt::Display> fmt::Display for LinComb<B, BigRational> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            fmt_rational_coeff(f, c, k == 0)?;
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

pub fn format_gaussian(c: &Complex<BigRational>) -> String {
    match (c.re.is_zero(), c.im.is_zero()) {
        (_, true) => c.re.to_string(),
        (true, false) => {
            if c.im.is_one() {
                "I".into()
            } else if (-&c.im).is_one() {
                "-I".into()
            } else {
                format!("{}*I", c.im)
            }
        }
        (false, false) => {
            let sign = if c.im.is_negative() { "-" } else { "+" };
            format!("({}{}{}*I)", c.re, sign, c.im.abs())
        }
    }
}

impl<B: Ord + fmt::Display> fmt::Display for LinComb<B, Complex<BigRational>> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (b, c)) in self.terms.iter().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            write!(f, "{}*{b}", format_gaussian(c))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn cancellation_removes_terms() {
        let mut a: LinComb<u32> = LinComb::term(1, rat(1, 2));
        a.add_term(2, rat(3, 1));
        a.add_term(1, rat(-1, 2));
        assert_eq!(a.len(), 1);
        assert_eq!(a.coeff(&2), rat(3, 1));
        assert!(a.coeff(&1).is_zero());
        let z = a.clone() - a;
        assert!(z.is_zero());
    }

    #[test]
    fn primitive_vector() {
        let v = primitive_integer_vector(&[rat(-1, 2), rat(1, 3), rat(0, 1)]);
        assert_eq!(v, vec![BigInt::from(3), BigInt::from(-2), BigInt::from(0)]);
    }

    #[test]
    fn display() {
        let mut a: LinComb<String> = LinComb::term("x".into(), rat(-1, 1));
        a.add_term("y".into(), rat(2, 1));
        assert_eq!(a.to_string(), "-x + 2*y");
    }
}
