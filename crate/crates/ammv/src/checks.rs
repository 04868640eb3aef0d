//! The fixed identity catalogue, grouped in suites.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::algebra::{shuffle_indices, stuffle, Provenance, Relation};
use crate::arctan::{
    arctan_over_x, depth_tower_closed_forms, displayed_arctan_powers, verify_amtv_amsv_relation, verify_xn_arctan,
    PowerParity, XnVariant,
};
use crate::error::{Error, Result};
use crate::expr::{eval_expr, identity_residual, parse_expr};
use crate::index::Index;
use crate::lincomb::LinComb;
use crate::mp::with_precision;
use crate::numerics::constants::closed_form_value;
use crate::numerics::quadrature::{Bound, Integrand};
use crate::numerics::{eval_lincomb, Evaluator};
use crate::regularization::reg_dbsf;
use crate::scalar::{rat, Real};
use crate::words::{dual_word, p_map, words_to_indices};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Suite {
    Products,
    Regularization,
    Duality,
    Arctan,
    Parity,
    Values,
}

impl Suite {
    pub const ALL: [Suite; 6] =
        [Suite::Products, Suite::Regularization, Suite::Duality, Suite::Arctan, Suite::Parity, Suite::Values];

    pub fn as_str(self) -> &'static str {
        match self {
            Suite::Products => "products",
            Suite::Regularization => "regularization",
            Suite::Duality => "duality",
            Suite::Arctan => "arctan",
            Suite::Parity => "parity",
            Suite::Values => "values",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown suite `{s}`")))
    }
}

/// Pass threshold of a numeric check at a given working precision.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Tol {
    /// `10^(-digits/2)`
    Half,
    /// `max(10^(-digits/2), 1e-8)` for deep values
    Relaxed,
    Fixed(f64),
}

impl Tol {
    pub fn at(self, digits: u32) -> f64 {
        let half = 10f64.powi(-(digits as i32) / 2);
        match self {
            Tol::Half => half,
            Tol::Relaxed => half.max(1e-8),
            Tol::Fixed(t) => t,
        }
    }
}

#[derive(Clone, Debug, Default)]
pub struct Outcome {
    pub residual: Option<f64>,
    /// Result of an exact comparison, if the check has one.
    pub exact: Option<bool>,
    pub detail: String,
}

impl Outcome {
    fn numeric(residual: f64) -> Self {
        Outcome { residual: Some(residual), ..Default::default() }
    }

    fn symbolic(ok: bool, detail: impl Into<String>) -> Self {
        Outcome { exact: Some(ok), detail: detail.into(), ..Default::default() }
    }
}

type Runner = Arc<dyn Fn(&Evaluator, u32) -> Result<Outcome> + Send + Sync>;

#[derive(Clone)]
pub struct Check {
    pub id: String,
    pub suite: Suite,
    pub tol: Tol,
    run: Runner,
}

impl fmt::Debug for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Check").field("id", &self.id).field("suite", &self.suite).finish()
    }
}

impl Check {
    fn new(id: impl Into<String>, suite: Suite, tol: Tol, run: impl Fn(&Evaluator, u32) -> Result<Outcome> + Send + Sync + 'static) -> Self {
        Check { id: id.into(), suite, tol, run: Arc::new(run) }
    }

    pub fn run(&self, ev: &Evaluator, digits: u32) -> CheckResult {
        let t = Instant::now();
        let out = (self.run)(ev, digits);
        let elapsed = t.elapsed();
        let tol = self.tol.at(digits);
        let (pass, residual, detail, budget) = match out {
            Ok(o) => {
                let ok = o.exact.unwrap_or(true) && o.residual.map_or(true, |r| r < tol);
                (ok, o.residual, o.detail, false)
            }
            Err(e) => (false, None, e.to_string(), matches!(e, Error::Budget(_))),
        };
        CheckResult { id: self.id.clone(), suite: self.suite, pass, residual, tol, detail, elapsed, budget }
    }
}

#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: String,
    pub suite: Suite,
    pub pass: bool,
    pub residual: Option<f64>,
    pub tol: f64,
    pub detail: String,
    pub elapsed: Duration,
    /// The check stopped on an exhausted evaluation budget.
    pub budget: bool,
}

impl CheckResult {
    pub const HEADER: &'static str = "id\tsuite\tstatus\tresidual\ttol\tseconds\tdetail";

    pub fn tsv(&self) -> String {
        let res = self.residual.map_or("-".to_string(), |r| format!("{r:.3e}"));
        format!(
            "{}\t{}\t{}\t{}\t{:.0e}\t{:.3}\t{}",
            self.id,
            self.suite,
            if self.pass { "PASS" } else { "FAIL" },
            res,
            self.tol,
            self.elapsed.as_secs_f64(),
            self.detail
        )
    }
}

/// Runs checks in parallel; results keep catalogue order.
pub fn run_checks(ev: &Evaluator, checks: &[Check], digits: u32) -> Vec<CheckResult> {
    checks.par_iter().map(|c| c.run(ev, digits)).collect()
}

pub fn catalogue() -> Vec<Check> {
    let mut out = Vec::new();
    out.extend(products());
    out.extend(regularization());
    out.extend(duality());
    out.extend(arctan());
    out.extend(parity());
    out.extend(values());
    out
}

pub fn suite(s: Suite) -> Vec<Check> {
    catalogue().into_iter().filter(|c| c.suite == s).collect()
}

pub fn find(id: &str) -> Option<Check> {
    catalogue().into_iter().find(|c| c.id == id)
}

fn m(t: &str) -> Index {
    t.parse().expect("catalogue index")
}

fn comb(items: &[(i64, &str)]) -> LinComb<Index> {
    items.iter().map(|(c, t)| (m(t), rat(*c, 1))).collect()
}

fn compare(got: &LinComb<Index>, expect: &LinComb<Index>) -> Outcome {
    if got == expect {
        Outcome::symbolic(true, format!("{} terms", got.len()))
    } else {
        Outcome::symbolic(false, format!("got {got}"))
    }
}

fn products() -> Vec<Check> {
    let s = Suite::Products;
    vec![
        Check::new("sh-cb1-cb2", s, Tol::Half, |_, _| {
            Ok(compare(&shuffle_indices(&m("M(cb1)"), &m("M(cb2)"))?, &comb(&[(-1, "M(b1,c2)"), (-2, "M(b2,c1)")])))
        }),
        Check::new("sh-b3-c2", s, Tol::Half, |_, _| {
            let expect =
                comb(&[(1, "M(cb3,cb2)"), (1, "M(c2,b3)"), (2, "M(c3,b2)"), (3, "M(c4,b1)"), (3, "M(cb4,cb1)")]);
            Ok(compare(&shuffle_indices(&m("M(b3)"), &m("M(c2)"))?, &expect))
        }),
        Check::new("st-b2.3.cb4-cb2", s, Tol::Half, |_, _| {
            let expect = comb(&[
                (1, "M(b2,3,cb4,cb2)"),
                (1, "M(b2,3,cb2,cb4)"),
                (1, "M(b2,cb2,3,cb4)"),
                (1, "M(cb2,b2,3,cb4)"),
                (2, "M(b2,3,c6)"),
            ]);
            Ok(compare(&stuffle(&m("M(b2,3,cb4)"), &m("M(cb2)")), &expect))
        }),
        Check::new("st-b1.cb2-3.cb2", s, Tol::Half, |_, _| {
            let expect = comb(&[
                (1, "M(b1,cb2,3,cb2)"),
                (1, "M(3,cb2,b1,cb2)"),
                (2, "M(b1,3,cb2,cb2)"),
                (2, "M(3,b1,cb2,cb2)"),
                (2, "M(b1,3,c4)"),
                (2, "M(3,b1,c4)"),
                (4, "M(b4,cb2,cb2)"),
                (4, "M(b4,c4)"),
            ]);
            Ok(compare(&stuffle(&m("M(b1,cb2)"), &m("M(3,cb2)")), &expect))
        }),
        Check::new("prod-num-cb1-cb2", s, Tol::Half, |ev, d| {
            let (i, j) = (m("M(cb1)"), m("M(cb2)"));
            let a = ev.eval_index(&i, d)?;
            let b = ev.eval_index(&j, d)?;
            let p = with_precision(ev.bits(d), || a.value.clone() * b.value.clone());
            let sh = eval_lincomb(ev, &shuffle_indices(&i, &j)?, d)?;
            let st = eval_lincomb(ev, &stuffle(&i, &j), d)?;
            let r1 = (p.clone() - sh.value).abs().to_f64();
            let r2 = (p - st.value).abs().to_f64();
            Ok(Outcome { residual: Some(r1.max(r2)), exact: None, detail: format!("shuffle {r1:.1e} stuffle {r2:.1e}") })
        }),
    ]
}

fn regularization() -> Vec<Check> {
    let s = Suite::Regularization;
    vec![
        Check::new("reg-w3: -0.7739912", s, Tol::Fixed(1e-6), |ev, d| {
            let a = eval_lincomb(ev, &comb(&[(1, "M(c2,b1)"), (1, "M(cb2,cb1)")]), d)?;
            let b = ev.eval_index(&m("M(b2,c1)"), d)?;
            let anchor = -0.773_991_2;
            let r = (a.to_f64() - anchor).abs().max((b.to_f64() - anchor).abs());
            Ok(Outcome { residual: Some(r), exact: None, detail: format!("{:.10}", b.to_f64()) })
        }),
        Check::new("reg-w3-agree", s, Tol::Half, |ev, d| {
            let rel = comb(&[(1, "M(c2,b1)"), (1, "M(cb2,cb1)"), (-1, "M(b2,c1)")]);
            Ok(Outcome::numeric(eval_lincomb(ev, &rel, d)?.value.abs().to_f64()))
        }),
        Check::new("reg-w3-symbolic", s, Tol::Half, |_, _| {
            let want = Relation::new(comb(&[(1, "M(c2,b1)"), (1, "M(cb2,cb1)"), (-1, "M(b2,c1)")]), Provenance::RegDbsf)?;
            let rels = reg_dbsf(&m("M(c1)"), &m("M(b2)"))?;
            let hit = rels.iter().any(|r| r.terms == want.terms);
            Ok(Outcome::symbolic(hit, format!("{} relations from M(c1) * M(b2)", rels.len())))
        }),
    ]
}

const DUALITY: [(&str, &str, &[(i64, &str)]); 4] = [
    (
        "D1",
        "M(cb2,c1,cb1)",
        &[
            (1, "M(c2,c1,c1)"),
            (1, "M(c2,1,c1)"),
            (1, "M(2,cb1,cb1)"),
            (1, "M(b2,b1,c1)"),
            (1, "M(cb2,c1,cb1)"),
            (-1, "M(2,1,c1)"),
            (-1, "M(c2,cb1,cb1)"),
            (-1, "M(2,c1,c1)"),
            (-1, "M(cb2,cb1,c1)"),
        ],
    ),
    ("D2", "M(2,c1,cb2)", &[(1, "M(cb1,b1,c3)"), (1, "M(cb1,b1,c1,c2)"), (1, "M(b1,cb1,1,c2)")]),
    ("D3", "M(b2,b3,cb1)", &[(-1, "M(b1,cb2,1,c1,c1)"), (-1, "M(cb1,b2,c1,1,c1)"), (1, "M(b1,cb2,1,cb1,cb1)")]),
    ("D4", "M(cb3,c1,b2,c1)", &[(1, "M(3,cb1,b1,1,c1)"), (1, "M(c3,b1,cb1,1,c1)"), (-1, "M(3,cb1,1,b1,c1)")]),
];

fn duality() -> Vec<Check> {
    let s = Suite::Duality;
    let mut out = Vec::new();
    for (id, lhs, rhs) in DUALITY {
        out.push(Check::new(format!("{id}-symbolic"), s, Tol::Half, move |_, _| {
            let (sign, w) = p_map(&m(lhs))?;
            let got = words_to_indices(&dual_word(&w)?)?.scale(&rat(sign, 1));
            Ok(compare(&got, &comb(rhs)))
        }));
        out.push(Check::new(format!("{id}-numeric"), s, Tol::Half, move |ev, d| {
            let mut c = comb(rhs);
            c.add_term(m(lhs), rat(-1, 1));
            Ok(Outcome::numeric(eval_lincomb(ev, &c, d)?.value.abs().to_f64()))
        }));
    }
    out
}

fn quad_vs(ev: &Evaluator, f: Integrand, cf: &crate::monomial::ClosedForm, d: u32) -> Result<Outcome> {
    let q = ev.quadrature_1d(f, &Bound::zero(), &Bound::one(), d)?;
    let c = with_precision(ev.bits(d), || closed_form_value(cf));
    Ok(Outcome::numeric((q.value - c).abs().to_f64()))
}

fn arctan() -> Vec<Check> {
    let s = Suite::Arctan;
    let mut out = Vec::new();
    for (p, cf) in displayed_arctan_powers() {
        out.push(Check::new(format!("A{p}"), s, Tol::Half, move |ev, d| {
            quad_vs(ev, Integrand::XPowArctan { a: 0, b: p }, &cf, d)
        }));
    }
    for r in 1..=4 {
        out.push(Check::new(format!("AX{r}"), s, Tol::Half, move |ev, d| {
            let a = arctan_over_x(r);
            quad_vs(ev, Integrand::ArctanOverX { b: r }, a.closed_form.as_ref().expect("r <= 4"), d)
        }));
    }
    for id in depth_tower_closed_forms() {
        let tol = if id.lhs[0].1.depth() > 3 { Tol::Relaxed } else { Tol::Half };
        out.push(Check::new(format!("tower-{}", id.id), s, tol, move |ev, d| {
            Ok(Outcome::numeric(id.check(ev, d)?.residual))
        }));
    }
    for n in 1..=3 {
        for k in 1..=3 {
            for v in XnVariant::ALL {
                out.push(Check::new(format!("xn-{n}{k}-{v}"), s, Tol::Half, move |ev, d| {
                    Ok(Outcome::numeric(verify_xn_arctan(ev, n, k, v, d)?.residual))
                }));
            }
        }
    }
    for k in 1..=2 {
        for (p, name) in [(PowerParity::Even, "even"), (PowerParity::Odd, "odd")] {
            let tol = if k > 1 { Tol::Relaxed } else { Tol::Half };
            out.push(Check::new(format!("ts-rel-{name}-{k}"), s, tol, move |ev, d| {
                Ok(Outcome::numeric(verify_amtv_amsv_relation(ev, k, p, d)?.residual))
            }));
        }
    }
    out
}

/// `(id, lhs, rhs, deep)`; deep identities use the relaxed tolerance.
pub const PARITY: [(&str, &str, &str, bool); 4] = [
    (
        "P1",
        "M_{-1,1,1}^{1,-1,-1}(1,2,1)",
        "-2*log2*M_{1,-1}^{-1,1}(2,1) - 1/2*pi*M_{1,-1}^{1,-1}(2,1) + M_{1,-1}^{-1,1}(3,1) - 2*M_{1,1}^{-1,-1}(3,1) \
         - M_{1,1}^{-1,-1}(2,2) + 35/4*log2*zeta(3) - 1/2*pi^2*log2^2 - 1/16*pi^4",
        false,
    ),
    (
        "P2",
        "M_{-1,1,-1}^{-1,1,1}(1,2,2)",
        "-1/12*pi^2*M_{1,-1}^{1,-1}(2,1) - 1/2*pi*M_{1,-1}^{1,1}(2,2) + M_{1,-1}^{1,-1}(2,3) + 2*M_{1,-1}^{1,-1}(3,2) \
         + 3*M_{1,-1}^{1,-1}(4,1) + M_{-1,-1}^{1,-1}(4,1) + 7/4*G*zeta(3)",
        false,
    ),
    (
        "P3",
        "M_{-1,-1,1}^{1,1,-1}(1,2,1)",
        "-2*log2*M_{-1,-1}^{1,1}(2,1) - M_{-1,1}^{1,-1}(2,2) - 2*M_{-1,1}^{1,-1}(3,1) - M_{1,1}^{1,-1}(3,1) \
         - 27/8*log2*zeta(3) + 1/4*pi^2*log2^2",
        false,
    ),
    (
        "P4",
        "M_{1,1,-1}^{1,-1,-1}(2,2,1)",
        "1/8*pi^2*M_{1,-1}^{-1,-1}(2,1) + 1/2*pi*M_{1,1}^{1,-1}(2,2) + log2*M_{-1,1}^{-1,1}(2,2) + M_{1,-1}^{-1,-1}(2,3) \
         + M_{-1,1}^{-1,1}(3,2) + 2*M_{1,-1}^{-1,-1}(3,2) + 3*M_{1,-1}^{-1,-1}(4,1) + 7*G*zeta(3) \
         + 7/2*pi*log2*zeta(3) - 6*log2*beta(4) - 1/12*pi^2*log2*G - 1/24*pi^5",
        false,
    ),
];

fn parity() -> Vec<Check> {
    PARITY.iter().map(|&(id, l, r, deep)| identity(id, Suite::Parity, l, r, deep)).collect()
}

/// Closed forms and reductions of T-, S-, t- and M-values.
pub const VALUES: &[(&str, &str, &str, bool)] = &[
    ("T(b1,2)", "T(b1,2)", "G*pi - 7/2*zeta(3)", false),
    ("S(b1,1)", "S(b1,1)", "-2*G + pi*log2", false),
    ("S(b1,b1)", "S(b1,b1)", "-2*G + 1/2*pi*log2", false),
    ("T(b1,2,1)", "T(b1,2,1)", "-1/4*G*pi^2 + 6*beta(4) - 7/8*pi*zeta(3)", false),
    ("T(b1,1,2)", "T(b1,1,2)", "-6*beta(4) + 7/4*pi*zeta(3)", false),
    ("S(b1,1,1)", "S(b1,1,1)", "1/4*pi^2*log2 - 21/16*zeta(3)", false),
    ("S(b1,1,b1)", "S(b1,1,b1)", "1/8*pi^2*log2 - 7/8*zeta(3)", false),
    ("T(b1,2,1,1)", "T(b1,2,1,1)", "-1/24*G*pi^3 + 3*pi*beta(4) - 31/4*zeta(5)", false),
    ("T(b1,1,1,2)", "T(b1,1,1,2)", "pi*beta(4) + 7/16*pi^2*zeta(3) - 31/4*zeta(5)", false),
    ("T(b1,1,2,1)", "T(b1,1,2,1)", "-3*pi*beta(4) - 7/32*pi^2*zeta(3) + 93/8*zeta(5)", false),
    ("S(b1,1,1,1)", "S(b1,1,1,1)", "-2*beta(4) - 1/24*pi^3*log2 + 3/4*pi*zeta(3)", false),
    ("S(b1,1,1,b1)", "S(b1,1,1,b1)", "-2*beta(4) - 1/48*pi^3*log2 + 21/32*pi*zeta(3)", false),
    ("T(b1,2,1,1,1)", "T(b1,2,1,1,1)", "1/192*G*pi^4 - 3/4*pi^2*beta(4) + 10*beta(6) - 31/32*pi*zeta(5)", true),
    ("T(b1,1,1,1,2)", "T(b1,1,1,1,2)", "-10*beta(6) - 7/96*pi^3*zeta(3) + 31/8*pi*zeta(5)", true),
    ("T(b1,1,2,1,1)", "T(b1,1,2,1,1)", "3/4*pi^2*beta(4) - 20*beta(6) + 31/8*pi*zeta(5)", true),
    ("T(b1,1,1,2,1)", "T(b1,1,1,2,1)", "-1/4*pi^2*beta(4) + 20*beta(6) + 7/192*pi^3*zeta(3) - 93/16*pi*zeta(5)", true),
    ("S(b1,1,1,1,1)", "S(b1,1,1,1,1)", "-1/192*pi^4*log2 + 3/16*pi^2*zeta(3) - 465/256*zeta(5)", true),
    ("S(b1,1,1,1,b1)", "S(b1,1,1,1,b1)", "-1/384*pi^4*log2 + 21/128*pi^2*zeta(3) - 217/128*zeta(5)", true),
    ("T(b2,1,b1)", "T(b2,1,b1)", "-4*G^2 + 1/32*pi^4", false),
    ("T(b2,1,1,1,b1)", "T(b2,1,1,1,b1)", "1/2*pi^2*G^2 + 5/1536*pi^6 - 8*G*beta(4)", true),
    (
        "S(b2,1,1)",
        "S(b2,1,1)",
        "-2*G^2 - 53/1440*pi^4 + 2*G*pi*log2 - 1/6*pi^2*log2^2 + 1/6*log2^4 + 4*Li4(1/2)",
        false,
    ),
    (
        "S(b2,1,b1)",
        "S(b2,1,b1)",
        "-2*G^2 - 61/5760*pi^4 + G*pi*log2 - 1/12*pi^2*log2^2 + 1/12*log2^4 + 2*Li4(1/2)",
        false,
    ),
    ("T(b3,1,b1)", "T(b3,1,b1)", "-1/8*pi^3*G - 7/32*pi^2*zeta(3) + 93/16*zeta(5)", false),
    (
        "S(b3,1,b1)",
        "S(b3,1,b1)",
        "2*Li5(1/2) - 589/256*zeta(5) - 7/8*zeta(3)*log2^2 - 1/60*log2^5 + 1/36*pi^2*log2^3 + 151/5760*pi^4*log2",
        false,
    ),
    ("tt(b2,b1)", "tt(b2,b1)", "1/4*pi^2*log2 - 7/4*zeta(3)", false),
    ("tt(b2,b1)-red", "tt(b2,b1)", "-1/2*tt(3) + 1/2*tt(2,1)", false),
    ("tt(b1,1,b1)", "tt(b1,1,b1)", "-G*pi + 21/8*zeta(3)", false),
    ("tt(b1,b1,1)", "tt(b1,b1,1)", "-G*pi - 1/8*pi^2*log2 + 35/16*zeta(3)", false),
    ("tt(b1,b1,1)-red", "tt(b1,b1,1)", "-1/2*tt(3) - tt(b1,b2) - 3/4*tt(2,1)", false),
    ("tt(b1,b1,b1)", "tt(b1,b1,b1)", "1/48*pi^3", false),
    (
        "tt(b2,b1,1)",
        "tt(b2,b1,1)",
        "-2*G^2 - 23/1440*pi^4 + 5/24*pi^2*log2^2 + 1/6*log2^4 + 4*Li4(1/2)",
        false,
    ),
    (
        "tt(b1,b2,b1)",
        "tt(b1,b2,b1)",
        "-16*beta(4) + 16*ImLi4((1+i)/2) + 3/16*pi^3*log2 + 1/12*pi*log2^3 + 7/8*pi*zeta(3)",
        false,
    ),
    ("T(b2,b1)", "T(b2,b1)", "-3/16*pi^3 + 8*ImLi3((1+i)/2) + 4*G*log2 - 1/4*pi*log2^2", false),
    ("T(b1,1,1,b1)", "T(b1,1,1,b1)", "-1/4*G*pi^2 + 2*beta(4)", false),
    ("T(b1,1,1,b1)-red", "T(b1,1,1,b1)", "1/2*T(b4) + 3/2*T(b3,b1)", false),
    ("T(b1,1,b1,b1)", "T(b1,1,b1,b1)", "-1/4*G*pi^2 + 6*beta(4) - 7/8*pi*zeta(3)", false),
    ("T(b1,1,b1,b1)-red", "T(b1,1,b1,b1)", "2*T(b3,b1) + T(3,b1)", false),
    (
        "T(b3,b1,1)",
        "T(b3,b1,1)",
        "-7/128*pi^5 + 2*pi^2*ImLi3((1+i)/2) + G*pi^2*log2 - 1/16*pi^3*log2^2",
        false,
    ),
    ("S(b1,2)", "S(b1,2)", "11/96*pi^3 - 4*ImLi3((1+i)/2) - 2*G*log2 + 1/8*pi*log2^2", false),
    (
        "S(b1,b1,2)",
        "S(b1,b1,2)",
        "-6*beta(4) + 8*ImLi4((1+i)/2) + 4*ImLi3((1+i)/2)*log2 + G*log2^2 - 1/12*pi*log2^3",
        false,
    ),
    (
        "S(b1,1,b1,b1)",
        "S(b1,1,b1,b1)",
        "2*G^2 + 9/64*pi^4 - 6*pi*ImLi3((1+i)/2) - 2*G*pi*log2 + 3/16*pi^2*log2^2 - 7/4*log2*zeta(3)",
        false,
    ),
    (
        "S(b2,1,1,1,1)",
        "S(b2,1,1,1,1)",
        "31/20160*pi^6 - 4*G*beta(4) - 1/12*G*pi^3*log2 + 2*pi*beta(4)*log2 + 2*Z(b5,1) + 3/2*G*pi*zeta(3) \
         - 33/16*zeta(3)^2 - 31/8*log2*zeta(5)",
        true,
    ),
    (
        "S(b2,1,1,1,b1)",
        "S(b2,1,1,1,b1)",
        "443/322560*pi^6 - 4*G*beta(4) - 1/24*G*pi^3*log2 + pi*beta(4)*log2 + Z(b5,1) + 21/16*G*pi*zeta(3) \
         - 195/128*zeta(3)^2 - 31/16*log2*zeta(5)",
        true,
    ),
    (
        "S(4,1,b1)",
        "S(4,1,b1)",
        "Z(b5,1) + 1/12*pi^2*Li4(1/2) - 83/128*zeta(3)^2 + 7/32*pi^2*zeta(3)*log2 - 31/16*zeta(5)*log2 \
         + 227/967680*pi^6 + 1/288*pi^2*log2^4 - 1/288*pi^4*log2^2",
        false,
    ),
    (
        "T(b3,2,b1)",
        "T(b3,2,b1)",
        "12*G*beta(4) - 1/2*pi^2*G^2 - 1/8*pi^3*G*log2 - 1/4*pi^3*ImLi3((1+i)/2) + pi^2*Li4(1/2) \
         + 7/8*pi^2*zeta(3)*log2 - 257/23040*pi^6 + 1/24*pi^2*log2^4 - 13/384*pi^4*log2^2",
        false,
    ),
    ("S(b1,1,1,1,1,1)", "S(b1,1,1,1,1,1)", "-2*beta(6) + 1/1920*pi^5*log2 - 1/32*pi^3*zeta(3) + 15/16*pi*zeta(5)", true),
    (
        "S(b1,1,1,1,1,b1)",
        "S(b1,1,1,1,1,b1)",
        "-2*beta(6) + 1/3840*pi^5*log2 - 7/256*pi^3*zeta(3) + 465/512*pi*zeta(5)",
        true,
    ),
    ("tt(b2,b1,1)-red", "tt(b2,b1,1)", "-5/8*tt(4) - tt(b2,b2) - 1/4*tt(3,1) + 3/4*tt(2,1,1)", false),
    (
        "tt(b2,b1,b1,b1)",
        "tt(b2,b1,b1,b1)",
        "-91/5760*pi^4*log2 + 1/72*pi^2*log2^3 + 1/60*log2^5 - 2*Li5(1/2) + 29/128*pi^2*zeta(3) - 155/256*zeta(5)",
        false,
    ),
    (
        "T(b3,1,1,1)",
        "T(b3,1,1,1)",
        "-509/322560*pi^6 - 1/96*pi^4*log2^2 + 1/96*pi^2*log2^4 + Z(b5,1) + 1/4*pi^2*Li4(1/2) \
         + 7/32*pi^2*log2*zeta(3) - 97/128*zeta(3)^2",
        false,
    ),
    ("T(b3,1,1,1)-red", "T(b3,1,1,1)", "-5/48*T(6) - T(b5,1) + T(5,1) - 1/4*T(4,1,1)", false),
    ("T(b1,2,1,1,1)-red", "T(b1,2,1,1,1)", "-1/2*T(b1,b5) + 13/2*T(b5,b1) + T(5,b1)", true),
    ("S(b3,1,b1)-red", "S(b3,1,b1)", "-31/112*S(5) - 13/112*S(3,2) - 3/16*S(4,1) + 1/4*S(3,1,1)", false),
    (
        "S(b3,1,2)",
        "S(b3,1,2)",
        "247/967680*pi^6 + 1/288*pi^4*log2^2 - 1/288*pi^2*log2^4 - 1/12*pi^2*Li4(1/2) - 7/96*pi^2*log2*zeta(3) \
         + 7/16*zeta(3)^2",
        false,
    ),
    ("Li4(1/2)", "Li4(1/2)", "1/2*Z(b3,1) + 1/96*pi^4 + 1/24*pi^2*log2^2 - 1/24*log2^4 - 7/8*log2*zeta(3)", false),
    (
        "MB4-a",
        "M_{-1,-1,1}^{1,1,-1}(2,1,1)",
        "91/1920*pi^4 + 1/4*pi^2*log2^2 - 1/4*log2^4 - 6*Li4(1/2) - 7/2*log2*zeta(3)",
        false,
    ),
    (
        "MB4-a-red",
        "M_{-1,-1,1}^{1,1,-1}(2,1,1)",
        "-11/8*M_{1}^{1}(4) - 12*M_{-1,1}^{1,1}(3,1) - 4*M_{1,-1}^{1,1}(3,1)",
        false,
    ),
    (
        "MB4-b",
        "M_{-1,1,-1,1}^{-1,1,1,-1}(1,1,1,1)",
        "-1/12*G*pi^2 - 2*beta(4) + 1/16*pi^3*log2 + 7/16*pi*zeta(3)",
        false,
    ),
    (
        "MB4-c",
        "M_{-1,1,-1,1}^{-1,-1,1,-1}(1,1,1,1)",
        "1/3*G*pi^2 + 2*beta(4) - 1/16*pi^3*log2 - 7/8*pi*zeta(3)",
        false,
    ),
    (
        "MB4-c-red",
        "M_{-1,1,-1,1}^{-1,-1,1,-1}(1,1,1,1)",
        "-3/4*M_{-1}^{-1}(4) - 1/2*M_{-1,1}^{-1,1}(3,1) - 7/4*M_{-1,-1}^{1,-1}(3,1) + 1/2*M_{1,-1}^{1,-1}(3,1)",
        false,
    ),
    (
        "MB4-d",
        "M_{-1,-1,-1,1}^{1,1,-1,-1}(1,1,1,1)",
        "-2/3*G*pi^2 - 30*beta(4) + 32*ImLi4((1+i)/2) + 1/4*pi^3*log2 + 8*ImLi3((1+i)/2)*log2 - 1/12*pi*log2^3 \
         + 21/8*pi*zeta(3)",
        false,
    ),
];

fn identity(id: &'static str, suite: Suite, lhs: &'static str, rhs: &'static str, deep: bool) -> Check {
    let tol = if deep { Tol::Relaxed } else { Tol::Half };
    Check::new(id, suite, tol, move |ev, d| Ok(Outcome::numeric(identity_residual(ev, lhs, rhs, d)?.1)))
}

fn values() -> Vec<Check> {
    VALUES.iter().map(|&(id, l, r, deep)| identity(id, Suite::Values, l, r, deep)).collect()
}

/// Value of an expression in the catalogue syntax.
pub fn eval_text(ev: &Evaluator, text: &str, digits: u32) -> Result<crate::numerics::PrecReal> {
    eval_expr(ev, &parse_expr(text)?, digits)
}
