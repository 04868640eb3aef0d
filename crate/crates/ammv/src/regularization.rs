//! Shuffle and stuffle regularization into polynomials in `T`, the comparison
//! map ρ, and regularized double-shuffle relations.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

use crate::algebra::{finite_dbsf, shuffle, stuff, stuffle, stuffle_lin, Provenance, Relation};
use crate::error::{Error, Result};
use crate::index::{Component, Index, Parity, Sign};
use crate::lincomb::LinComb;
use crate::monomial::{Const, Monomial};
use crate::scalar::{factorial, pow2};
use crate::words::{p_map_any, q_map_any, Letter, Word};

/// A constant monomial times an index value.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Term {
    pub c: Monomial,
    pub i: Index,
}

impl Term {
    pub fn index(i: Index) -> Self {
        Term { c: Monomial::one(), i }
    }

    pub fn weight(&self) -> u32 {
        self.c.weight() + self.i.weight()
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.c.is_one(), self.i.is_empty()) {
            (true, _) => write!(f, "{}", self.i),
            (false, true) => write!(f, "{}", self.c),
            (false, false) => write!(f, "{}*{}", self.c, self.i),
        }
    }
}

/// Polynomial in `T` with coefficients in `LinComb<Term>`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct TPoly {
    coeffs: BTreeMap<u32, LinComb<Term>>,
}

impl TPoly {
    pub fn zero() -> Self {
        TPoly::default()
    }

    pub fn constant(c: LinComb<Term>) -> Self {
        let mut p = TPoly::zero();
        p.add_at(0, &c);
        p
    }

    pub fn index(i: Index) -> Self {
        TPoly::constant(LinComb::basis(Term::index(i)))
    }

    /// `T + a·log 2`.
    pub fn t_plus_log2(a: i64) -> Self {
        let mut p = TPoly::zero();
        p.add_at(1, &LinComb::basis(Term::index(Index::empty())));
        p.add_at(0, &LinComb::term(Term { c: Monomial::of(Const::Log2), i: Index::empty() }, BigRational::from_integer(a.into())));
        p
    }

    pub fn add_at(&mut self, deg: u32, c: &LinComb<Term>) {
        let e = self.coeffs.entry(deg).or_default();
        *e += c;
        if e.is_zero() {
            self.coeffs.remove(&deg);
        }
    }

    pub fn coeff(&self, deg: u32) -> LinComb<Term> {
        self.coeffs.get(&deg).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<u32> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &LinComb<Term>)> {
        self.coeffs.iter().map(|(d, c)| (*d, c))
    }

    pub fn add_scaled(&mut self, o: &TPoly, c: &BigRational) {
        for (d, v) in &o.coeffs {
            self.add_at(*d, &v.scale(c));
        }
    }

    pub fn scale(&self, c: &BigRational) -> TPoly {
        let mut p = TPoly::zero();
        p.add_scaled(self, c);
        p
    }

    /// Product in which index parts multiply by stuffle; used only when one
    /// factor has empty indices throughout.
    pub fn mul_scalar_poly(&self, o: &TPoly) -> TPoly {
        let mut p = TPoly::zero();
        for (d1, a) in &self.coeffs {
            for (d2, b) in &o.coeffs {
                let prod = a.product(b, |x, y| {
                    let i = if x.i.is_empty() {
                        y.i.clone()
                    } else {
                        debug_assert!(y.i.is_empty());
                        x.i.clone()
                    };
                    LinComb::basis(Term { c: x.c.mul(&y.c), i })
                });
                p.add_at(d1 + d2, &prod);
            }
        }
        p
    }

    pub fn sub(&self, o: &TPoly) -> TPoly {
        let mut p = self.clone();
        p.add_scaled(o, &-BigRational::one());
        p
    }
}

impl fmt::Display for TPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return f.write_str("0");
        }
        for (k, (d, c)) in self.coeffs.iter().rev().enumerate() {
            if k > 0 {
                f.write_str(" + ")?;
            }
            match d {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*T")?,
                _ => write!(f, "({c})*T^{d}")?,
            }
        }
        Ok(())
    }
}

fn divergent_letter(l: Letter) -> bool {
    l.is_divergent_start()
}

/// Shuffle-regularized value of a word not ending in `ω₀`.
pub fn shuffle_reg(w: &Word) -> Result<TPoly> {
    if w.letters().last() == Some(&Letter::W0) {
        return Err(Error::Domain(format!("{w} ends with w0")));
    }
    let mut memo = HashMap::new();
    shuffle_reg_rec(w, &mut memo)
}

pub fn shuffle_reg_lin(c: &LinComb<Word>) -> Result<TPoly> {
    let mut memo = HashMap::new();
    let mut out = TPoly::zero();
    for (w, k) in c {
        out.add_scaled(&shuffle_reg_rec(w, &mut memo)?, k);
    }
    Ok(out)
}

fn shuffle_reg_rec(w: &Word, memo: &mut HashMap<Word, TPoly>) -> Result<TPoly> {
    if let Some(p) = memo.get(w) {
        return Ok(p.clone());
    }
    let l = w.letters();
    let k = l.iter().take_while(|x| divergent_letter(**x)).count();
    let out = if k == 0 {
        let (sg, i) = q_map_any(w)?;
        TPoly::index(i).scale(&BigRational::from_integer(sg.into()))
    } else {
        let y = l[0];
        if l[..k].iter().any(|x| *x != y) {
            return Err(Error::MixedPrefix(w.to_string()));
        }
        let val = match y {
            Letter::W(Sign::Plus, Parity::Even) => TPoly::t_plus_log2(-1),
            _ => TPoly::t_plus_log2(1),
        };
        let v = &l[k..];
        let shorter = Word(l[1..].to_vec());
        let mut acc = val.mul_scalar_poly(&shuffle_reg_rec(&shorter, memo)?);
        for p in 1..=v.len() {
            let mut nw: Vec<Letter> = l[..k - 1].to_vec();
            nw.extend_from_slice(&v[..p]);
            nw.push(y);
            nw.extend_from_slice(&v[p..]);
            let nw = Word(nw);
            debug_assert!(nw.letters().iter().take_while(|x| divergent_letter(**x)).count() < k);
            acc = acc.sub(&shuffle_reg_rec(&nw, memo)?);
        }
        acc.scale(&BigRational::new(BigInt::one(), BigInt::from(k)))
    };
    memo.insert(w.clone(), out.clone());
    Ok(out)
}

fn stuffle_value(z: &Component) -> TPoly {
    match z.eps {
        Parity::Even => TPoly::t_plus_log2(0),
        Parity::Odd => TPoly::t_plus_log2(2),
    }
}

/// Stuffle-regularized value of any index.
pub fn stuffle_reg(i: &Index) -> Result<TPoly> {
    let mut memo = HashMap::new();
    stuffle_reg_rec(i, &mut memo)
}

pub fn stuffle_reg_lin(c: &LinComb<Index>) -> Result<TPoly> {
    let mut memo = HashMap::new();
    let mut out = TPoly::zero();
    for (i, k) in c {
        out.add_scaled(&stuffle_reg_rec(i, &mut memo)?, k);
    }
    Ok(out)
}

fn stuffle_reg_rec(i: &Index, memo: &mut HashMap<Index, TPoly>) -> Result<TPoly> {
    if let Some(p) = memo.get(i) {
        return Ok(p.clone());
    }
    let c = i.comps();
    let k = i.divergent_prefix();
    let out = if k == 0 {
        TPoly::index(i.clone())
    } else {
        let z = c[0];
        if c[..k].iter().any(|x| *x != z) {
            return Err(Error::MixedPrefix(i.to_string()));
        }
        let rest = &c[k..];
        let two = BigRational::from_integer(2.into());
        let mut acc = stuffle_value(&z).mul_scalar_poly(&stuffle_reg_rec(&Index::new(c[1..].to_vec()), memo)?);
        let sub = |comps: Vec<Component>, f: &BigRational, acc: &mut TPoly, memo: &mut HashMap<Index, TPoly>| -> Result<()> {
            let j = Index::new(comps);
            debug_assert!(j.divergent_prefix() < k);
            let r = stuffle_reg_rec(&j, memo)?;
            acc.add_scaled(&r, &-f.clone());
            Ok(())
        };
        // z inserted after rest[..p]
        for p in 1..=rest.len() {
            let mut v = c[..k - 1].to_vec();
            v.extend_from_slice(&rest[..p]);
            v.push(z);
            v.extend_from_slice(&rest[p..]);
            sub(v, &BigRational::one(), &mut acc, memo)?;
        }
        // z stuffed into another z of the block
        let zz = stuff(&z, &z).expect("equal parities");
        for a in 0..k.saturating_sub(1) {
            let mut v = vec![z; a];
            v.push(zz);
            v.extend(std::iter::repeat(z).take(k - 2 - a));
            v.extend_from_slice(rest);
            sub(v, &two, &mut acc, memo)?;
        }
        // z stuffed into a component of rest
        for p in 0..rest.len() {
            if let Some(m) = stuff(&rest[p], &z) {
                let mut v = c[..k - 1].to_vec();
                v.extend_from_slice(&rest[..p]);
                v.push(m);
                v.extend_from_slice(&rest[p + 1..]);
                sub(v, &two, &mut acc, memo)?;
            }
        }
        acc.scale(&BigRational::new(BigInt::one(), BigInt::from(k)))
    };
    memo.insert(i.clone(), out.clone());
    Ok(out)
}

/// Coefficients `a_j` of `exp(Σ_{n≥2} (−1)^n ζ(n) u^n / n)` up to `u^n`.
pub fn rho_coefficients(n: u32) -> Vec<LinComb<Monomial>> {
    let mut a: Vec<LinComb<Monomial>> = vec![LinComb::basis(Monomial::one())];
    for j in 1..=n {
        let mut s = LinComb::new();
        for m in 2..=j {
            let sign = if m % 2 == 0 { 1 } else { -1 };
            let zeta = Monomial::of(Const::Zeta(m));
            for (mono, c) in &a[(j - m) as usize] {
                s.add_term(mono.mul(&zeta), c * BigRational::from_integer(sign.into()));
            }
        }
        a.push(s.scale(&BigRational::new(BigInt::one(), BigInt::from(j))));
    }
    a
}

/// `ρ(T^n) = n! Σ_j a_j (T − log 2)^{n−j}/(n−j)!`, extended linearly.
pub fn rho(p: &TPoly) -> TPoly {
    let n_max = p.degree().unwrap_or(0);
    let a = rho_coefficients(n_max);
    let mut out = TPoly::zero();
    for (n, c) in p.iter() {
        let mut image = TPoly::zero();
        let nf = BigRational::from_integer(factorial(n));
        for j in 0..=n {
            let e = n - j;
            // (T - log2)^e / e!
            let mut pow = TPoly::constant(LinComb::basis(Term::index(Index::empty())));
            for _ in 0..e {
                pow = pow.mul_scalar_poly(&TPoly::t_plus_log2(-1));
            }
            let coeff = a[j as usize].map_linear(|m| LinComb::basis(Term { c: m.clone(), i: Index::empty() }));
            let scaled = pow
                .mul_scalar_poly(&TPoly::constant(coeff))
                .scale(&(nf.clone() / BigRational::from_integer(factorial(e))));
            image.add_scaled(&scaled, &BigRational::one());
        }
        out.add_scaled(&image.mul_scalar_poly(&TPoly::constant(c.clone())), &BigRational::one());
    }
    out
}

/// Realizes a constant monomial as a homogeneous combination of indices:
/// `log 2 ↦ −M(b1)`, `ζ(n) ↦ 2^{n−1} M(n)`.
pub fn constant_to_index(c: &Monomial) -> Result<LinComb<Index>> {
    let mut acc: LinComb<Index> = LinComb::basis(Index::empty());
    for (k, e) in c.factors() {
        let f = match k {
            Const::Log2 => LinComb::term(
                Index::new(vec![Component::new(1, Sign::Minus, Parity::Even)]),
                -BigRational::one(),
            ),
            Const::Zeta(n) => LinComb::term(
                Index::new(vec![Component::new(n, Sign::Plus, Parity::Even)]),
                pow2(n as i64 - 1),
            ),
            other => return Err(Error::Domain(format!("{other} has no index realization here"))),
        };
        for _ in 0..e {
            acc = stuffle_lin(&acc, &f);
        }
    }
    Ok(acc)
}

/// Expands every constant of a `Term` combination into indices.
pub fn terms_to_indices(c: &LinComb<Term>) -> Result<LinComb<Index>> {
    let mut out = LinComb::new();
    for (t, k) in c {
        let ci = constant_to_index(&t.c)?;
        out.add_scaled(&stuffle_lin(&ci, &LinComb::basis(t.i.clone())), k);
    }
    Ok(out)
}

fn signed_word(i: &Index) -> LinComb<Word> {
    let (sg, w) = p_map_any(i);
    LinComb::term(w, BigRational::from_integer(sg.into()))
}

fn relations_from_difference(diff: &TPoly, max_weight: u32) -> Result<Vec<Relation>> {
    let mut out = Vec::new();
    for (_, c) in diff.iter() {
        if let Some(t) = c.keys().find(|t| t.weight() > max_weight) {
            return Err(Error::Budget(format!("constant expansion of {t} exceeds weight {max_weight}")));
        }
        let rel = Relation::new(terms_to_indices(c)?, Provenance::RegDbsf)?;
        if !rel.is_trivial() {
            out.push(rel);
        }
    }
    Ok(out)
}

/// Regularized double-shuffle relations generated by `(i, j)`: one per
/// `T`-degree, from the concatenation `i·j` and from the product `i·j`.
/// Pairs whose carriers have mixed divergent prefixes yield `MixedPrefix`.
pub fn reg_dbsf(i: &Index, j: &Index) -> Result<Vec<Relation>> {
    if i.weight() + j.weight() < 2 {
        return Ok(Vec::new());
    }
    if i.is_admissible() {
        let r = finite_dbsf(i, j)?;
        return Ok(if r.is_trivial() { Vec::new() } else { vec![r] });
    }
    if !j.is_admissible() {
        return Err(Error::Inadmissible(j.to_string()));
    }
    let w = i.weight() + j.weight();
    let mut out = Vec::new();

    let x = i.concat(j);
    let lhs = shuffle_reg_lin(&signed_word(&x))?;
    let rhs = rho(&stuffle_reg(&x)?);
    out.extend(relations_from_difference(&lhs.sub(&rhs), w)?);

    if !j.is_empty() {
        let (si, wi) = p_map_any(i);
        let (sj, wj) = p_map_any(j);
        let prod = shuffle(&wi, &wj).scale(&BigRational::from_integer((si * sj).into()));
        let lhs = shuffle_reg_lin(&prod)?;
        let rhs = rho(&stuffle_reg_lin(&stuffle(i, j))?);
        out.extend(relations_from_difference(&lhs.sub(&rhs), w)?);
    }
    out.retain(|r| !r.is_trivial());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::p_map;

    fn m(t: &str) -> Index {
        t.parse().unwrap()
    }

    fn term(c: &[(Const, u32)], i: &str) -> Term {
        Term { c: Monomial::from_factors(c), i: m(i) }
    }

    fn r(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    #[test]
    fn shuffle_reg_example() {
        let (sg, w) = p_map_any(&m("M(c1,b2)"));
        assert_eq!(sg, 1);
        let p = shuffle_reg(&w).unwrap();
        let mut c1 = LinComb::new();
        c1.add_term(term(&[], "M(b2)"), r(1));
        assert_eq!(p.coeff(1), c1);
        let mut c0 = LinComb::new();
        c0.add_term(term(&[(Const::Log2, 1)], "M(b2)"), r(1));
        c0.add_term(term(&[], "M(c2,b1)"), r(-1));
        c0.add_term(term(&[], "M(cb2,cb1)"), r(-1));
        assert_eq!(p.coeff(0), c0);
        assert_eq!(p.degree(), Some(1));
    }

    #[test]
    fn single_divergent_letters() {
        let p = shuffle_reg(&"w+1^+1".parse().unwrap()).unwrap();
        assert_eq!(p, TPoly::t_plus_log2(-1));
        let q = stuffle_reg(&m("M(1)")).unwrap();
        assert_eq!(q, TPoly::t_plus_log2(0));
        let q = stuffle_reg(&m("M(c1)")).unwrap();
        assert_eq!(q, TPoly::t_plus_log2(2));
    }

    #[test]
    fn stuffle_reg_example() {
        let p = stuffle_reg(&m("M(c1,b2)")).unwrap();
        let mut c0 = LinComb::new();
        c0.add_term(term(&[(Const::Log2, 1)], "M(b2)"), r(2));
        c0.add_term(term(&[], "M(b2,c1)"), r(-1));
        assert_eq!(p.coeff(0), c0);
        assert_eq!(p.coeff(1), LinComb::basis(term(&[], "M(b2)")));
    }

    #[test]
    fn admissible_inputs_are_constant() {
        for w in 1..=3 {
            for i in crate::index::enumerate_admissible(w) {
                assert_eq!(stuffle_reg(&i).unwrap(), TPoly::index(i.clone()));
                let (sg, word) = p_map(&i).unwrap();
                let p = shuffle_reg(&word).unwrap().scale(&r(sg));
                assert_eq!(p, TPoly::index(i));
            }
        }
    }

    #[test]
    fn rho_examples() {
        let one = TPoly::index(Index::empty());
        assert_eq!(rho(&one), one);
        assert_eq!(rho(&TPoly::t_plus_log2(2)), TPoly::t_plus_log2(1));
        let t2 = TPoly::t_plus_log2(0).mul_scalar_poly(&TPoly::t_plus_log2(0));
        let mut expect = TPoly::t_plus_log2(-1).mul_scalar_poly(&TPoly::t_plus_log2(-1));
        expect.add_at(0, &LinComb::basis(Term { c: Monomial::of(Const::Zeta(2)), i: Index::empty() }));
        assert_eq!(rho(&t2), expect);
    }

    #[test]
    fn rho_coefficient_series() {
        // exp(ζ(2)u²/2 − ζ(3)u³/3 + ...) : a_2 = ζ(2)/2, a_3 = −ζ(3)/3
        let a = rho_coefficients(4);
        assert_eq!(a[1], LinComb::new());
        assert_eq!(a[2], LinComb::term(Monomial::of(Const::Zeta(2)), BigRational::new(1.into(), 2.into())));
        assert_eq!(a[3], LinComb::term(Monomial::of(Const::Zeta(3)), BigRational::new((-1).into(), 3.into())));
        let mut a4 = LinComb::new();
        a4.add_term(Monomial::of(Const::Zeta(4)), BigRational::new(1.into(), 4.into()));
        a4.add_term(Monomial::pow(Const::Zeta(2), 2), BigRational::new(1.into(), 8.into()));
        assert_eq!(a[4], a4);
    }

    #[test]
    fn constants_as_indices() {
        assert_eq!(constant_to_index(&Monomial::of(Const::Log2)).unwrap(), LinComb::term(m("M(b1)"), r(-1)));
        assert_eq!(constant_to_index(&Monomial::of(Const::Zeta(2))).unwrap(), LinComb::term(m("M(2)"), r(2)));
        let got = constant_to_index(&Monomial::from_factors(&[(Const::Log2, 1), (Const::Zeta(2), 1)])).unwrap();
        assert_eq!(got, stuffle(&m("M(b1)"), &m("M(2)")).scale(&r(-2)));
    }

    #[test]
    fn weight_three_anchor() {
        let rels = reg_dbsf(&m("M(c1)"), &m("M(b2)")).unwrap();
        let mut target = LinComb::new();
        target.add_term(m("M(c2,b1)"), r(1));
        target.add_term(m("M(cb2,cb1)"), r(1));
        target.add_term(m("M(b2,c1)"), r(-1));
        let target = Relation::new(target, Provenance::RegDbsf).unwrap();
        assert!(rels.iter().any(|x| x.terms == target.terms), "{rels:?}");
    }

    #[test]
    fn euler_relation() {
        // ζ(2,1) = ζ(3) reads M(2,1) = 2M(3)
        let rels = reg_dbsf(&m("M(1)"), &m("M(2)")).unwrap();
        let mut target = LinComb::new();
        target.add_term(m("M(3)"), r(2));
        target.add_term(m("M(2,1)"), r(-1));
        let target = Relation::new(target, Provenance::RegDbsf).unwrap();
        assert!(rels.iter().any(|x| x.terms == target.terms), "{rels:?}");
    }

    #[test]
    fn mixed_prefix_is_reported() {
        let w: Word = "w+1^+1 w+1^-1 w0 w-1^-1".parse().unwrap();
        assert!(matches!(shuffle_reg(&w), Err(Error::MixedPrefix(_))));
        assert!(matches!(stuffle_reg(&m("M(1,c1,2)")), Err(Error::MixedPrefix(_))));
    }
}
