//! Formal monomials in π, log 2, ζ(n), β(n) and a few polylogarithm values.

use std::collections::BTreeMap;
use std::fmt;

use num_rational::BigRational;
use num_traits::One;

use crate::lincomb::LinComb;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Const {
    Pi,
    Log2,
    Zeta(u32),
    /// Dirichlet beta; `Beta(2)` is Catalan's constant.
    Beta(u32),
    /// `Li_k(1/2)`.
    LiHalf(u32),
    /// `Im Li_k((1+i)/2)`.
    ImLiHalfI(u32),
}

impl Const {
    pub fn weight(self) -> u32 {
        match self {
            Const::Pi | Const::Log2 => 1,
            Const::Zeta(n) | Const::Beta(n) | Const::LiHalf(n) | Const::ImLiHalfI(n) => n,
        }
    }
}

impl fmt::Display for Const {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Const::Pi => f.write_str("pi"),
            Const::Log2 => f.write_str("log2"),
            Const::Zeta(n) => write!(f, "zeta({n})"),
            Const::Beta(2) => f.write_str("G"),
            Const::Beta(n) => write!(f, "beta({n})"),
            Const::LiHalf(n) => write!(f, "Li{n}(1/2)"),
            Const::ImLiHalfI(n) => write!(f, "ImLi{n}((1+i)/2)"),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial(BTreeMap<Const, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn of(c: Const) -> Self {
        Monomial::pow(c, 1)
    }

    pub fn pow(c: Const, e: u32) -> Self {
        let mut m = BTreeMap::new();
        if e > 0 {
            m.insert(c, e);
        }
        Monomial(m)
    }

    pub fn from_factors(f: &[(Const, u32)]) -> Self {
        f.iter().fold(Monomial::one(), |acc, &(c, e)| acc.mul(&Monomial::pow(c, e)))
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn mul(&self, o: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (c, e) in &o.0 {
            *m.entry(*c).or_insert(0) += e;
        }
        Monomial(m)
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().map(|(c, e)| c.weight() * e).sum()
    }

    pub fn factors(&self) -> impl Iterator<Item = (Const, u32)> + '_ {
        self.0.iter().map(|(c, e)| (*c, *e))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, (c, e)) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str("*")?;
            }
            if *e == 1 {
                write!(f, "{c}")?;
            } else {
                write!(f, "{c}^{e}")?;
            }
        }
        Ok(())
    }
}

/// Rational combination of constant monomials.
pub type ClosedForm = LinComb<Monomial>;

pub fn cf(c: BigRational, factors: &[(Const, u32)]) -> ClosedForm {
    LinComb::term(Monomial::from_factors(factors), c)
}

pub fn cf_mul(a: &ClosedForm, b: &ClosedForm) -> ClosedForm {
    a.product(b, |x, y| LinComb::basis(x.mul(y)))
}

pub fn cf_one() -> ClosedForm {
    LinComb::term(Monomial::one(), BigRational::one())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn weights_and_display() {
        let m = Monomial::from_factors(&[(Const::Pi, 2), (Const::Beta(2), 1), (Const::Pi, 1)]);
        assert_eq!(m.weight(), 5);
        assert_eq!(m.to_string(), "pi^3*G");
        assert!(Monomial::pow(Const::Log2, 0).is_one());
    }
}
