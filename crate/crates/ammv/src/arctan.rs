//! Arctangent integrals: cotangent moments, `A(p) = ∫₀¹ arctan^p`, the
//! `x^k arctan^p` evaluations through T- and S-harmonic sums and the
//! T-/S-value relations coming from `∫ arctan^p(x)/x`.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::harmonic::{harmonic_sum, HarmonicFamily, HarmonicSumSpec};
use crate::index::{specialize, Family, FamilyIndex, Index, Parity, Sign};
use crate::lincomb::LinComb;
use crate::monomial::{cf, ClosedForm, Const, Monomial};
use crate::mp::{with_precision, Mp};
use crate::numerics::constants::closed_form_value;
use crate::numerics::quadrature::{Bound, Integrand};
use crate::numerics::{eval_lincomb, Evaluator};
use crate::scalar::{binomial, factorial, pow2, rat, Real, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Upper {
    HalfPi,
    QuarterPi,
}

fn int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn fact(n: u32) -> BigRational {
    int(factorial(n))
}

fn sign(e: u32) -> BigRational {
    if e % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

fn pi_pow(e: u32) -> (Const, u32) {
    (Const::Pi, e)
}

/// `∫₀^upper x^p cot(x) dx`.
pub fn cot_moment(p: u32, upper: Upper) -> ClosedForm {
    assert!(p >= 1, "cotangent moments start at p = 1");
    let four_p = pow2(2 * p as i64);
    let pre = match upper {
        Upper::HalfPi => pow2(-(p as i64)),
        Upper::QuarterPi => rat(1, 2) / &four_p,
    };
    let mut out = cf(pre.clone(), &[pi_pow(p), (Const::Log2, 1)]);
    for k in 1..=p / 2 {
        let c = fact(p) * sign(k) * (pow2(2 * k as i64) - BigRational::one())
            / (fact(p - 2 * k) * pow2(2 * k as i64))
            * &pre;
        out += cf(c, &[pi_pow(p - 2 * k), (Const::Zeta(2 * k + 1), 1)]);
    }
    if upper == Upper::QuarterPi {
        for k in 1..=(p + 1) / 2 {
            let c = -(fact(p) * sign(k) * pow2(2 * k as i64) / fact(p + 1 - 2 * k)) * &pre;
            out += cf(c, &[pi_pow(p + 1 - 2 * k), (Const::Beta(2 * k), 1)]);
        }
    }
    if p % 2 == 0 {
        out += cf(fact(p) * sign(p / 2) * pow2(-(p as i64)), &[(Const::Zeta(p + 1), 1)]);
    }
    out
}

/// `A(p) = ∫₀¹ arctan^p(x) dx`.
pub fn arctan_power_integral(p: u32) -> ClosedForm {
    assert!(p >= 1, "A(p) needs p >= 1");
    let mut out = cf(pow2(-2 * p as i64), &[pi_pow(p)]);
    out += cf(-rat(p as i64, 1) * pow2(-(p as i64)), &[pi_pow(p - 1), (Const::Log2, 1)]);
    for k in 1..p {
        let between = cot_moment(k, Upper::HalfPi) - cot_moment(k, Upper::QuarterPi);
        let c = -rat(p as i64, 1) * sign(k) * int(binomial(p - 1, k)) * pow2(-((p - 1 - k) as i64));
        let scaled = crate::monomial::cf_mul(&cf(c, &[pi_pow(p - 1 - k)]), &between);
        out += scaled;
    }
    out
}

/// The depth-`p` M-value form of `A(p)`.
pub fn arctan_power_mmv(p: u32) -> LinComb<Index> {
    assert!(p >= 1, "A(p) needs p >= 1");
    let build = |head: &[Parity]| -> Index {
        let mut par: Vec<Parity> = head.to_vec();
        while par.len() < p as usize {
            par.push(if (p as usize - par.len()) % 2 == 0 { Parity::Even } else { Parity::Odd });
        }
        let comps = par
            .iter()
            .enumerate()
            .map(|(j, &e)| crate::index::Component::new(1, if j == 0 { Sign::Minus } else { Sign::Plus }, e))
            .collect();
        Index::new(comps)
    };
    let pre = fact(p) * pow2(-(p as i64));
    let mut out = LinComb::new();
    if p % 2 == 0 {
        let c = pre * sign(p / 2);
        out.add_term(build(&[]), c.clone());
        out.add_term(build(&[Parity::Odd, Parity::Odd]), c);
    } else {
        let c = pre * sign((p + 1) / 2);
        out.add_term(build(&[Parity::Odd]), c.clone());
        out.add_term(build(&[Parity::Even]), -c);
    }
    out
}

fn ones(family: Family, head: u32, n_ones: usize, last_bar: bool) -> FamilyIndex {
    let mut comps = vec![(head, Sign::Plus)];
    comps.extend(std::iter::repeat((1, Sign::Plus)).take(n_ones));
    if last_bar {
        comps.push((1, Sign::Minus));
    }
    FamilyIndex::new(family, comps)
}

/// `∫₀¹ arctan^r(x)/x dx` as a T-value, with the known closed form for small `r`.
#[derive(Clone, Debug)]
pub struct ArctanOverX {
    pub coefficient: BigRational,
    pub value: FamilyIndex,
    pub closed_form: Option<ClosedForm>,
}

pub fn arctan_over_x(r: u32) -> ArctanOverX {
    assert!(r >= 1, "r must be positive");
    let value = FamilyIndex::new(
        Family::UpperT,
        std::iter::once((2, Sign::Minus)).chain(std::iter::repeat((1, Sign::Plus)).take(r as usize - 1)).collect(),
    );
    let coefficient = sign((r + 1) / 2) * fact(r) * pow2(-(r as i64));
    let g = Const::Beta(2);
    let closed_form = match r {
        1 => Some(cf(rat(1, 1), &[(g, 1)])),
        2 => Some(cf(rat(1, 2), &[pi_pow(1), (g, 1)]) + cf(rat(-7, 8), &[(Const::Zeta(3), 1)])),
        3 => Some(cf(rat(9, 8), &[(Const::Zeta(2), 1), (g, 1)]) + cf(rat(-3, 2), &[(Const::Beta(4), 1)])),
        4 => Some(
            cf(rat(93, 32), &[(Const::Zeta(5), 1)])
                + cf(rat(-3, 2), &[pi_pow(1), (Const::Beta(4), 1)])
                + cf(rat(1, 16), &[pi_pow(3), (g, 1)]),
        ),
        _ => None,
    };
    ArctanOverX { coefficient, value, closed_form }
}

impl ArctanOverX {
    pub fn as_indices(&self) -> LinComb<Index> {
        let (c, i) = specialize(&self.value).expect("T(b2,1,...) is admissible");
        LinComb::term(i, c * &self.coefficient)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum XnVariant {
    /// `x^{2n−2} arctan^{2m}`
    EvenEven,
    /// `x^{2n−2} arctan^{2m−1}`
    EvenOdd,
    /// `x^{2n−1} arctan^{2m}`
    OddEven,
    /// `x^{2n−1} arctan^{2m−1}`
    OddOdd,
}

impl XnVariant {
    pub const ALL: [XnVariant; 4] = [XnVariant::EvenEven, XnVariant::EvenOdd, XnVariant::OddEven, XnVariant::OddOdd];

    /// `(power of x, power of arctan)`.
    pub fn exponents(self, n: u32, m: u32) -> (u32, u32) {
        match self {
            XnVariant::EvenEven => (2 * n - 2, 2 * m),
            XnVariant::EvenOdd => (2 * n - 2, 2 * m - 1),
            XnVariant::OddEven => (2 * n - 1, 2 * m),
            XnVariant::OddOdd => (2 * n - 1, 2 * m - 1),
        }
    }

    pub fn code(self) -> &'static str {
        match self {
            XnVariant::EvenEven => "ee",
            XnVariant::EvenOdd => "eo",
            XnVariant::OddEven => "oe",
            XnVariant::OddOdd => "oo",
        }
    }
}

impl fmt::Display for XnVariant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for XnVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        XnVariant::ALL
            .into_iter()
            .find(|v| v.code() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown variant `{s}`, expected ee, eo, oe or oo")))
    }
}

#[derive(Clone, Debug)]
pub struct Residual {
    pub lhs: Mp,
    pub rhs: Mp,
    pub residual: f64,
    /// Accumulated numerical error bound of both sides.
    pub err: f64,
}

impl Residual {
    fn new(lhs: Mp, lhs_err: f64, rhs: Mp, rhs_err: f64) -> Self {
        let residual = (lhs.clone() - rhs.clone()).abs().to_f64();
        Residual { lhs, rhs, residual, err: lhs_err + rhs_err }
    }
}

/// Harmonic sum with unit exponents; `bar` negates the last sign.
fn hs(family: HarmonicFamily, depth: u32, bar: bool, n: u32) -> BigRational {
    if depth == 0 {
        return BigRational::one();
    }
    let mut sigma = vec![Sign::Plus; depth as usize];
    if bar {
        sigma[depth as usize - 1] = Sign::Minus;
    }
    harmonic_sum(&HarmonicSumSpec::new(family, sigma, vec![1; depth as usize], n as u64))
}

/// Right-hand sides of the four `x^k arctan^p` evaluations, as
/// `Σ rational · t(1̄)^e · A(a)` with `a = 0` meaning no A factor.
fn xn_rhs_terms(n: u32, m: u32, v: XnVariant) -> Vec<(BigRational, u32, u32)> {
    use HarmonicFamily::{S, T};
    let sn = sign(n);
    let mut out: Vec<(BigRational, u32, u32)> = Vec::new();
    let mut push = |c: BigRational, e: u32, a: u32| {
        if !c.is_zero() {
            out.push((c, e, a));
        }
    };
    match v {
        XnVariant::EvenEven => {
            let d = rat(2 * n as i64 - 1, 1);
            let f = fact(2 * m) * &sn / &d;
            push((BigRational::one() + &sn) / &d, 2 * m, 0);
            push(sign(n + m) * fact(2 * m) / (pow2(2 * m as i64) * &d) * hs(T, 2 * m, true, n), 0, 0);
            for u in 0..m {
                push(-(&f * sign(u) * hs(T, 2 * u, false, n) / (fact(2 * m - 2 * u) * pow2(2 * u as i64))), 0, 2 * m - 2 * u);
            }
            for w in 1..m {
                let c = &f * sign(w) / (pow2(2 * w as i64) * fact(2 * m - 2 * w));
                push(c * (hs(T, 2 * w, false, n) + hs(T, 2 * w, true, n)), 2 * m - 2 * w, 0);
            }
            for w in 0..m {
                let c = &f * sign(w) / (pow2(2 * w as i64 + 1) * fact(2 * m - 2 * w - 1));
                push(c * (hs(S, 2 * w + 1, false, n) - hs(S, 2 * w + 1, true, n)), 2 * m - 2 * w - 1, 0);
            }
        }
        XnVariant::EvenOdd => {
            let d = rat(2 * n as i64 - 1, 1);
            let f = fact(2 * m - 1) * &sn / &d;
            push(-(BigRational::one() + &sn) / &d, 2 * m - 1, 0);
            push(-(sign(n + m) * fact(2 * m - 1) / (pow2(2 * m as i64 - 1) * &d) * hs(S, 2 * m - 1, true, n)), 0, 0);
            for u in 0..m {
                push(-(&f * sign(u) * hs(T, 2 * u, false, n) / (fact(2 * m - 2 * u - 1) * pow2(2 * u as i64))), 0, 2 * m - 2 * u - 1);
            }
            for w in 1..m {
                let c = &f * sign(w + 1) / (pow2(2 * w as i64) * fact(2 * m - 2 * w - 1));
                push(c * (hs(T, 2 * w, false, n) + hs(T, 2 * w, true, n)), 2 * m - 2 * w - 1, 0);
            }
            for w in 1..m {
                let c = &f * sign(w) / (pow2(2 * w as i64 - 1) * fact(2 * m - 2 * w));
                push(c * (hs(S, 2 * w - 1, false, n) - hs(S, 2 * w - 1, true, n)), 2 * m - 2 * w, 0);
            }
        }
        XnVariant::OddEven => {
            let d = rat(2 * n as i64, 1);
            let f = fact(2 * m) * &sn / &d;
            push((BigRational::one() - &sn) / &d, 2 * m, 0);
            push(sign(n + m) * fact(2 * m) / (pow2(2 * m as i64) * &d) * hs(S, 2 * m, true, n), 0, 0);
            for u in 0..m {
                push(&f * sign(u) * hs(T, 2 * u + 1, false, n) / (fact(2 * m - 2 * u - 1) * pow2(2 * u as i64 + 1)), 0, 2 * m - 2 * u - 1);
            }
            for w in 0..m {
                let c = &f * sign(w) / (pow2(2 * w as i64 + 1) * fact(2 * m - 2 * w - 1));
                push(c * (hs(T, 2 * w + 1, false, n) + hs(T, 2 * w + 1, true, n)), 2 * m - 2 * w - 1, 0);
            }
            for w in 1..m {
                let c = &f * sign(w + 1) / (pow2(2 * w as i64) * fact(2 * m - 2 * w));
                push(c * (hs(S, 2 * w, false, n) - hs(S, 2 * w, true, n)), 2 * m - 2 * w, 0);
            }
        }
        XnVariant::OddOdd => {
            let d = rat(2 * n as i64, 1);
            let f = fact(2 * m - 1) * &sn / &d;
            push(-(BigRational::one() - &sn) / &d, 2 * m - 1, 0);
            push(sign(n + m) * fact(2 * m - 1) / (pow2(2 * m as i64 - 1) * &d) * hs(T, 2 * m - 1, true, n), 0, 0);
            for u in 1..m {
                push(-(&f * sign(u) * hs(T, 2 * u - 1, false, n) / (fact(2 * m - 2 * u) * pow2(2 * u as i64 - 1))), 0, 2 * m - 2 * u);
            }
            for w in 1..m {
                let c = &f * sign(w) / (pow2(2 * w as i64 - 1) * fact(2 * m - 2 * w));
                push(c * (hs(T, 2 * w - 1, false, n) + hs(T, 2 * w - 1, true, n)), 2 * m - 2 * w, 0);
            }
            for w in 1..m {
                let c = &f * sign(w) / (pow2(2 * w as i64) * fact(2 * m - 2 * w - 1));
                push(c * (hs(S, 2 * w, false, n) - hs(S, 2 * w, true, n)), 2 * m - 2 * w - 1, 0);
            }
        }
    }
    out
}

/// `t(1̄) = −π/4`.
fn t_bar_one() -> Mp {
    -(Mp::pi() / Mp::from_i64(4))
}

fn a_value(p: u32) -> Mp {
    if p == 0 {
        Mp::one()
    } else {
        closed_form_value(&arctan_power_integral(p))
    }
}

/// Quadrature against the harmonic-sum form of `∫₀¹ x^k arctan^p(x) dx`.
pub fn verify_xn_arctan(ev: &Evaluator, n: u32, m: u32, v: XnVariant, digits: u32) -> Result<Residual> {
    if n == 0 || m == 0 {
        return Err(Error::Domain("n and m must be positive".into()));
    }
    let (a, b) = v.exponents(n, m);
    let lhs = ev.quadrature_1d(Integrand::XPowArctan { a, b }, &Bound::zero(), &Bound::one(), digits)?;
    let rhs = with_precision(ev.bits(digits + 5), || {
        let t = t_bar_one();
        xn_rhs_terms(n, m, v).into_iter().fold(Mp::zero(), |acc, (c, e, ap)| {
            acc + Mp::from_rational(&c) * t.powi(e as i32) * a_value(ap)
        })
    });
    Ok(Residual::new(lhs.value, lhs.err, rhs, 0.0))
}

/// Which of the two `∫ arctan^p(x)/x` relations: `p = 2m` or `p = 2m + 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerParity {
    Even,
    Odd,
}

/// Right-hand side of the T-/S-value relation as
/// `Σ rational · t(1̄)^e · A(a) · X` where `X` is a family value or one.
fn amtv_amsv_terms(m: u32, parity: PowerParity) -> Vec<(BigRational, u32, u32, Option<FamilyIndex>)> {
    use Family::{UpperT as T, S};
    let mut out = Vec::new();
    let t2 = |k: usize| ones(T, 2, k, false);
    let t2b = |k: usize| ones(T, 2, k, true);
    let s2 = |k: usize| ones(S, 2, k, false);
    let s2b = |k: usize| ones(S, 2, k, true);
    // t(2) + t(2̄) is carried by a marker family value of depth one
    let lower = |sg: Sign| FamilyIndex::new(Family::LowerT, vec![(2, sg)]);
    match parity {
        PowerParity::Even => {
            let f = fact(2 * m - 1);
            for sg in [Sign::Minus, Sign::Plus] {
                out.push((BigRational::one(), 2 * m - 1, 0, Some(lower(sg))));
            }
            out.push((sign(m) * &f / pow2(2 * m as i64), 0, 0, Some(s2b(2 * m as usize - 2))));
            for u in 0..m {
                let c = &f * sign(u) / (fact(2 * m - 2 * u - 1) * pow2(2 * u as i64 + 1));
                out.push((c, 0, 2 * m - 2 * u - 1, Some(t2(2 * u as usize))));
            }
            for v in 1..m {
                let c = -(&f * sign(v + 1) / (pow2(2 * v as i64 + 1) * fact(2 * m - 2 * v - 1)));
                out.push((c.clone(), 2 * m - 2 * v - 1, 0, Some(t2(2 * v as usize))));
                out.push((c, 2 * m - 2 * v - 1, 0, Some(t2b(2 * v as usize - 1))));
            }
            for v in 1..m {
                let c = -(&f * sign(v) / (pow2(2 * v as i64) * fact(2 * m - 2 * v)));
                out.push((c.clone(), 2 * m - 2 * v, 0, Some(s2(2 * v as usize - 1))));
                out.push((-c, 2 * m - 2 * v, 0, Some(s2b(2 * v as usize - 2))));
            }
        }
        PowerParity::Odd => {
            let f = fact(2 * m);
            for sg in [Sign::Minus, Sign::Plus] {
                out.push((-BigRational::one(), 2 * m, 0, Some(lower(sg))));
            }
            out.push((-(sign(m) * &f / pow2(2 * m as i64 + 1)), 0, 0, Some(t2b(2 * m as usize - 1))));
            for u in 0..m {
                let c = &f * sign(u) / (fact(2 * m - 2 * u) * pow2(2 * u as i64 + 1));
                out.push((c, 0, 2 * m - 2 * u, Some(t2(2 * u as usize))));
            }
            for v in 1..m {
                let c = -(&f * sign(v) / (pow2(2 * v as i64 + 1) * fact(2 * m - 2 * v)));
                out.push((c.clone(), 2 * m - 2 * v, 0, Some(t2(2 * v as usize))));
                out.push((c, 2 * m - 2 * v, 0, Some(t2b(2 * v as usize - 1))));
            }
            for v in 0..m {
                let c = -(&f * sign(v) / (pow2(2 * v as i64 + 2) * fact(2 * m - 2 * v - 1)));
                out.push((c.clone(), 2 * m - 2 * v - 1, 0, Some(s2(2 * v as usize + 1))));
                out.push((-c, 2 * m - 2 * v - 1, 0, Some(s2b(2 * v as usize))));
            }
        }
    }
    out
}

/// Quadrature of `∫₀¹ arctan^p(x)/x` against the T-/S-value relation.
pub fn verify_amtv_amsv_relation(ev: &Evaluator, m: u32, parity: PowerParity, digits: u32) -> Result<Residual> {
    if m == 0 {
        return Err(Error::Domain("m must be positive".into()));
    }
    let b = match parity {
        PowerParity::Even => 2 * m,
        PowerParity::Odd => 2 * m + 1,
    };
    let lhs = ev.quadrature_1d(Integrand::ArctanOverX { b }, &Bound::zero(), &Bound::one(), digits)?;
    let bits = ev.bits(digits + 5);
    let mut rhs = with_precision(bits, Mp::zero);
    let mut err = 0.0;
    for (c, e, ap, x) in amtv_amsv_terms(m, parity) {
        let (xv, xe) = match x {
            None => (with_precision(bits, Mp::one), 0.0),
            Some(fi) => {
                let (k, i) = specialize(&fi)?;
                let v = eval_lincomb(ev, &LinComb::term(i, k), digits)?;
                (v.value, v.err)
            }
        };
        let scale = with_precision(bits, || Mp::from_rational(&c) * t_bar_one().powi(e as i32) * a_value(ap));
        err += xe * scale.abs().to_f64();
        rhs += &(scale * xv);
    }
    Ok(Residual::new(lhs.value, lhs.err, rhs, err))
}

/// A closed form `value = closed form`, with the left side a
/// combination of family values.
#[derive(Clone, Debug)]
pub struct ValueIdentity {
    pub id: &'static str,
    pub lhs: Vec<(BigRational, FamilyIndex)>,
    pub rhs: ClosedForm,
}

impl ValueIdentity {
    pub fn lhs_indices(&self) -> Result<LinComb<Index>> {
        let mut out = LinComb::new();
        for (c, f) in &self.lhs {
            let (k, i) = specialize(f)?;
            out.add_term(i, k * c);
        }
        Ok(out)
    }

    pub fn check(&self, ev: &Evaluator, digits: u32) -> Result<Residual> {
        let l = eval_lincomb(ev, &self.lhs_indices()?, digits)?;
        let r = with_precision(ev.bits(digits), || closed_form_value(&self.rhs));
        Ok(Residual::new(l.value, l.err, r, 0.0))
    }
}

/// Closed forms of `S(2,{1}_{2m−2},1̄)` and `T(2,{1}_{2m−1},1̄)` for `m = 1, 2`.
pub fn depth_tower_closed_forms() -> Vec<ValueIdentity> {
    let g = Const::Beta(2);
    let one = |f: FamilyIndex| vec![(BigRational::one(), f)];
    vec![
        ValueIdentity {
            id: "S(2,b1)",
            lhs: one(ones(Family::S, 2, 0, true)),
            rhs: cf(rat(7, 2), &[(Const::Zeta(3), 1)])
                + cf(rat(-1, 1), &[pi_pow(1), (g, 1)])
                + cf(rat(-1, 4), &[pi_pow(2), (Const::Log2, 1)]),
        },
        ValueIdentity {
            id: "T(2,1,b1)",
            lhs: one(ones(Family::UpperT, 2, 1, true)),
            rhs: cf(rat(-6, 1), &[(Const::Beta(4), 1)]) + cf(rat(3, 1), &[(Const::Zeta(2), 1), (g, 1)]),
        },
        ValueIdentity {
            id: "S(2,1,1,b1)",
            lhs: one(ones(Family::S, 2, 2, true)),
            rhs: cf(rat(31, 4), &[(Const::Zeta(5), 1)])
                + cf(rat(-15, 8), &[(Const::Zeta(4), 1), (Const::Log2, 1)])
                + cf(rat(-63, 32), &[(Const::Zeta(2), 1), (Const::Zeta(3), 1)])
                + cf(rat(-1, 1), &[pi_pow(1), (Const::Beta(4), 1)]),
        },
        ValueIdentity {
            id: "T(2,1,1,1,b1)",
            lhs: one(ones(Family::UpperT, 2, 3, true)),
            rhs: cf(rat(15, 4), &[(Const::Zeta(4), 1), (g, 1)])
                + cf(rat(3, 1), &[(Const::Zeta(2), 1), (Const::Beta(4), 1)])
                + cf(rat(-10, 1), &[(Const::Beta(6), 1)]),
        },
    ]
}

/// The displayed values of `A(1)…A(4)`.
pub fn displayed_arctan_powers() -> Vec<(u32, ClosedForm)> {
    let g = Const::Beta(2);
    let l = Const::Log2;
    vec![
        (1, cf(rat(1, 4), &[pi_pow(1)]) + cf(rat(-1, 2), &[(l, 1)])),
        (2, cf(rat(1, 16), &[pi_pow(2)]) + cf(rat(1, 4), &[pi_pow(1), (l, 1)]) + cf(rat(-1, 1), &[(g, 1)])),
        (
            3,
            cf(rat(1, 64), &[pi_pow(3)])
                + cf(rat(3, 32), &[pi_pow(2), (l, 1)])
                + cf(rat(-3, 4), &[pi_pow(1), (g, 1)])
                + cf(rat(63, 64), &[(Const::Zeta(3), 1)]),
        ),
        (
            4,
            cf(rat(1, 256), &[pi_pow(4)])
                + cf(rat(1, 32), &[pi_pow(3), (l, 1)])
                + cf(rat(-3, 8), &[pi_pow(2), (g, 1)])
                + cf(rat(-9, 64), &[pi_pow(1), (Const::Zeta(3), 1)])
                + cf(rat(3, 1), &[(Const::Beta(4), 1)]),
        ),
    ]
}

/// Rewrites `ζ(2k)` through `π^{2k}` so symbolic comparisons see one form.
pub fn normalize(f: &ClosedForm) -> ClosedForm {
    f.map_linear(|m| {
        let mut acc = LinComb::term(Monomial::one(), BigRational::one());
        for (c, e) in m.factors() {
            let piece = match c {
                Const::Zeta(n) if n % 2 == 0 => cf(even_zeta_ratio(n), &[pi_pow(n)]),
                other => cf(BigRational::one(), &[(other, 1)]),
            };
            for _ in 0..e {
                acc = crate::monomial::cf_mul(&acc, &piece);
            }
        }
        acc
    })
}

/// `ζ(2k)/π^{2k}` from the Bernoulli recursion.
fn even_zeta_ratio(n: u32) -> BigRational {
    let b = bernoulli(n);
    let k = n / 2;
    // ζ(2k) = (−1)^{k+1} B_{2k} (2π)^{2k} / (2 (2k)!)
    sign(k + 1) * b * pow2(n as i64) / (rat(2, 1) * fact(n))
}

fn bernoulli(n: u32) -> BigRational {
    let mut b: Vec<BigRational> = vec![BigRational::one()];
    for m in 1..=n {
        let mut s = BigRational::zero();
        for k in 0..m {
            s += int(binomial(m + 1, k)) * &b[k as usize];
        }
        b.push(-s / rat(m as i64 + 1, 1));
    }
    b[n as usize].clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::default_evaluator;

    #[test]
    fn cot_moment_small_cases() {
        assert_eq!(cot_moment(1, Upper::HalfPi), cf(rat(1, 2), &[pi_pow(1), (Const::Log2, 1)]));
        let two = normalize(&cot_moment(2, Upper::HalfPi));
        let expect = cf(rat(1, 4), &[pi_pow(2), (Const::Log2, 1)]) + cf(rat(-7, 8), &[(Const::Zeta(3), 1)]);
        assert_eq!(two, expect);
        let q = cot_moment(1, Upper::QuarterPi);
        let expect = cf(rat(1, 8), &[pi_pow(1), (Const::Log2, 1)]) + cf(rat(1, 2), &[(Const::Beta(2), 1)]);
        assert_eq!(q, expect);
    }

    #[test]
    fn arctan_powers_match_display() {
        for (p, shown) in displayed_arctan_powers() {
            assert_eq!(normalize(&arctan_power_integral(p)), normalize(&shown), "A({p})");
        }
    }

    #[test]
    fn even_zeta() {
        assert_eq!(even_zeta_ratio(2), rat(1, 6));
        assert_eq!(even_zeta_ratio(4), rat(1, 90));
        assert_eq!(even_zeta_ratio(6), rat(1, 945));
    }

    #[test]
    fn mmv_form_of_small_powers() {
        let two = arctan_power_mmv(2);
        let expect: LinComb<Index> =
            [("M(b1,c1)", rat(-1, 2)), ("M(cb1,c1)", rat(-1, 2))].iter().map(|(t, c)| (t.parse().unwrap(), c.clone())).collect();
        assert_eq!(two, expect);
        let three = arctan_power_mmv(3);
        assert_eq!(three.coeff(&"M(cb1,1,c1)".parse().unwrap()), rat(3, 4));
        assert_eq!(three.coeff(&"M(b1,1,c1)".parse().unwrap()), rat(-3, 4));
    }

    #[test]
    fn arctan_over_x_coefficients() {
        let r2 = arctan_over_x(2);
        assert_eq!(r2.coefficient, rat(-1, 2));
        assert_eq!(r2.value.to_string(), "T(b2,1)");
        assert_eq!(arctan_over_x(1).coefficient, rat(-1, 2));
    }

    #[test]
    fn xn_first_cases() {
        let ev = default_evaluator();
        for v in XnVariant::ALL {
            let r = verify_xn_arctan(ev, 1, 1, v, 25).unwrap();
            assert!(r.residual < 1e-22, "{v}: {:e}", r.residual);
        }
    }

    #[test]
    fn relation_m1() {
        let ev = default_evaluator();
        for p in [PowerParity::Even, PowerParity::Odd] {
            let r = verify_amtv_amsv_relation(ev, 1, p, 20).unwrap();
            assert!(r.residual < 1e-15, "{p:?}: {:e}", r.residual);
        }
    }
}
