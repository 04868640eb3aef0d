//! Numerical independence checks of the conjectural bases at low weight.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::expr::{eval_expr, identity_residual, parse_expr};
use crate::numerics::{Evaluator, PrecReal};

use super::pslq::pslq;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BasisFamily {
    MB,
    TLower,
    TUpper,
    SB,
}

impl BasisFamily {
    pub const ALL: [BasisFamily; 4] = [BasisFamily::MB, BasisFamily::TLower, BasisFamily::TUpper, BasisFamily::SB];

    pub fn name(self) -> &'static str {
        match self {
            BasisFamily::MB => "MB",
            BasisFamily::TLower => "tB",
            BasisFamily::TUpper => "TB",
            BasisFamily::SB => "SB",
        }
    }

    /// The listed basis at weight `w ≤ 3`.
    pub fn members(self, w: u32) -> Result<&'static [&'static str]> {
        use BasisFamily::*;
        Ok(match (self, w) {
            (_, 0) => &[],
            (MB, 1) => &["M(b1)", "M(cb1)"],
            (MB, 2) => &["M(2)", "M(cb2)", "M(b1,1)", "M(cb1,1)"],
            (MB, 3) => &["M(3)", "M(cb3)", "M(2,b1)", "M(2,cb1)", "M(b2,c1)", "M(cb2,1)", "M(b1,1,1)", "M(cb1,1,1)"],
            (TLower, 1) => &["t(b1)"],
            (TLower, 2) => &["t(2)", "t(b2)", "t(b1,1)"],
            (TLower, 3) => &["t(3)", "t(b3)", "t(2,1)", "t(2,b1)", "t(b1,b2)", "t(b1,1,1)"],
            (TUpper, 1) => &["T(b1)"],
            (TUpper, 2) => &["T(2)", "T(b2)"],
            (TUpper, 3) => &["T(3)", "T(b3)", "T(2,b1)", "T(b2,1)"],
            (SB, 1) => &["S(b1)"],
            (SB, 2) => &["S(2)", "S(b1,1)", "S(b1,b1)"],
            (SB, 3) => &["S(3)", "S(2,1)", "S(2,b1)", "S(b2,1)", "S(b2,b1)", "S(b1,b2)"],
            _ => return Err(Error::Budget(format!("basis checks stop at weight 3, got {w}"))),
        })
    }

    /// Listed reductions `(lhs, rhs)` at weight `w`.
    pub fn reductions(self, w: u32) -> &'static [(&'static str, &'static str)] {
        use BasisFamily::*;
        match (self, w) {
            (MB, 1) => &[("M(b1)", "-log2"), ("M(cb1)", "-1/2*pi")],
            (MB, 2) => &[("M(2)", "1/12*pi^2"), ("M(cb2)", "-2*G")],
            (TLower, 3) => &[
                ("tt(b2,b1)", "-1/2*tt(3) + 1/2*tt(2,1)"),
                ("tt(b2,b1)", "1/4*pi^2*log2 - 7/4*zeta(3)"),
                ("tt(b1,1,b1)", "-tt(b1,b2) - 1/2*tt(2,1)"),
                ("tt(b1,1,b1)", "-G*pi + 21/8*zeta(3)"),
                ("tt(b1,b1,1)", "-1/2*tt(3) - tt(b1,b2) - 3/4*tt(2,1)"),
                ("tt(b1,b1,1)", "-G*pi - 1/8*pi^2*log2 + 35/16*zeta(3)"),
                ("tt(b1,b1,b1)", "-1/3*tt(b3)"),
            ],
            (TUpper, 3) => &[
                ("T(b2,b1)", "-2*T(b3) + 2*T(2,b1)"),
                ("T(b2,b1)", "-3/16*pi^3 + 8*ImLi3((1+i)/2) + 4*G*log2 - 1/4*pi*log2^2"),
            ],
            (SB, 2) => &[("S(b1,1)", "-2*G + pi*log2"), ("S(b1,b1)", "-2*G + 1/2*pi*log2")],
            (SB, 3) => &[
                ("S(b1,2)", "-2/3*S(b2,b1) + 1/3*S(b2,1)"),
                ("S(b1,2)", "11/96*pi^3 - 4*ImLi3((1+i)/2) - 2*G*log2 + 1/8*pi*log2^2"),
            ],
            _ => &[],
        }
    }
}

impl fmt::Display for BasisFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for BasisFamily {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        BasisFamily::ALL
            .into_iter()
            .find(|b| b.name() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown basis family `{s}` (MB, tB, TB, SB)")))
    }
}

#[derive(Clone, Debug)]
pub struct Reduction {
    pub lhs: String,
    pub rhs: String,
    pub residual: f64,
}

#[derive(Clone, Debug)]
pub struct BasisReport {
    pub family: BasisFamily,
    pub weight: u32,
    pub digits: u32,
    pub bound_bits: u32,
    pub members: Vec<(String, PrecReal)>,
    /// Relation found among all members, if any.
    pub joint: Option<Vec<BigInt>>,
    /// Pairs `(a, b)` with a relation.
    pub pairwise: Vec<(usize, usize, Vec<BigInt>)>,
    pub reductions: Vec<Reduction>,
}

impl BasisReport {
    pub fn independent(&self) -> bool {
        self.joint.is_none() && self.pairwise.is_empty()
    }

    pub fn reductions_hold(&self, tol: f64) -> bool {
        self.reductions.iter().all(|r| r.residual < tol)
    }
}

/// Evaluates a listed basis, runs pslq jointly and on every pair with
/// coefficient bound `2^bound_bits`, and checks the listed reductions.
pub fn basis_check(ev: &Evaluator, family: BasisFamily, weight: u32, digits: u32, bound_bits: u32) -> Result<BasisReport> {
    let names = family.members(weight)?;
    let mut members = Vec::with_capacity(names.len());
    for n in names {
        // a few guard digits so the pslq precondition on the errors holds
        let v = eval_expr(ev, &parse_expr(n)?, digits + 3)?;
        members.push((n.to_string(), v));
    }
    let values: Vec<PrecReal> = members.iter().map(|(_, v)| v.clone()).collect();
    let joint = if values.len() >= 2 { pslq(&values, digits, bound_bits)? } else { None };
    let mut pairwise = Vec::new();
    for a in 0..values.len() {
        for b in a + 1..values.len() {
            if let Some(c) = pslq(&[values[a].clone(), values[b].clone()], digits, bound_bits)? {
                pairwise.push((a, b, c));
            }
        }
    }
    let mut reductions = Vec::new();
    for (l, r) in family.reductions(weight) {
        let (_, residual) = identity_residual(ev, l, r, digits)?;
        reductions.push(Reduction { lhs: l.to_string(), rhs: r.to_string(), residual });
    }
    Ok(BasisReport { family, weight, digits, bound_bits, members, joint, pairwise, reductions })
}
