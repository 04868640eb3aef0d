//! Relation generation from double shuffle and duality, with numeric validation.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_traits::Zero;
use rayon::prelude::*;

use crate::algebra::{finite_dbsf, Provenance, Relation};
use crate::error::{Error, Result};
use crate::index::{compositions, enumerate_admissible, Component, Index, Parity, Sign};
use crate::lincomb::LinComb;
use crate::numerics::{Evaluator, PrecReal};
use crate::regularization::reg_dbsf;
use crate::words::{dual_word, words_to_indices, Letter, Word};
use crate::mp::{with_precision, Mp};
use crate::scalar::Real;

use super::store::{threshold, RelationStore};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Source {
    FiniteDbsf,
    RegDbsf,
    Duality,
}

impl Source {
    pub const ALL: [Source; 3] = [Source::FiniteDbsf, Source::RegDbsf, Source::Duality];

    pub fn as_str(self) -> &'static str {
        match self {
            Source::FiniteDbsf => "finite-dbsf",
            Source::RegDbsf => "reg-dbsf",
            Source::Duality => "duality",
        }
    }
}

impl fmt::Display for Source {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Source {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Source::ALL
            .into_iter()
            .find(|x| x.as_str() == s)
            .ok_or_else(|| Error::parse(0, format!("unknown source `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct Rejected {
    pub relation: Relation,
    pub residual: Option<f64>,
    pub reason: String,
}

/// Generators whose relations could not be formed.
#[derive(Clone, Debug)]
pub struct Skipped {
    pub generator: String,
    pub error: Error,
}

#[derive(Clone, Debug, Default)]
pub struct Harvest {
    pub weight: u32,
    pub digits: u32,
    pub accepted: Vec<Relation>,
    pub rejected: Vec<Rejected>,
    pub skipped: Vec<Skipped>,
}

impl Harvest {
    /// Inserts the accepted relations into a store.
    pub fn apply(&self, store: &mut RelationStore) -> Result<usize> {
        store.extend(self.accepted.iter().cloned())
    }
}

/// Indices of weight `w` with a divergent leading component.
pub fn enumerate_divergent(w: u32) -> Vec<Index> {
    let mut out = Vec::new();
    for comp in compositions(w) {
        if comp[0] != 1 {
            continue;
        }
        let r = comp.len();
        for mask in 0..(1u32 << (2 * r)) {
            let comps: Vec<Component> = comp
                .iter()
                .enumerate()
                .map(|(j, &s)| {
                    let sigma = if mask >> (2 * j) & 1 == 1 { Sign::Minus } else { Sign::Plus };
                    let eps = if mask >> (2 * j + 1) & 1 == 1 { Parity::Odd } else { Parity::Even };
                    Component::new(s, sigma, eps)
                })
                .collect();
            let i = Index::new(comps);
            if !i.is_admissible() {
                out.push(i);
            }
        }
    }
    out.sort();
    out
}

/// Admissible words of weight `w` ending in an odd letter.
pub fn duality_words(w: u32) -> Vec<Word> {
    (0..w)
        .map(|_| Letter::ALL.iter().copied())
        .multi_cartesian_product()
        .map(Word)
        .filter(|x| x.is_admissible() && matches!(x.0.last(), Some(Letter::W(_, Parity::Odd))))
        .collect()
}

pub fn duality_relation(x: &Word) -> Result<Relation> {
    let mut c = LinComb::basis(x.clone());
    c -= &dual_word(x)?;
    Relation::new(words_to_indices(&c)?, Provenance::Duality)
}

type Generated = std::result::Result<Vec<Relation>, Skipped>;

fn generate(weight: u32, sources: &[Source]) -> Vec<Generated> {
    let mut jobs: Vec<Box<dyn Fn() -> Generated + Send + Sync>> = Vec::new();
    if sources.contains(&Source::FiniteDbsf) {
        for wi in 1..=weight / 2 {
            let a = enumerate_admissible(wi);
            let b = enumerate_admissible(weight - wi);
            for (x, i) in a.iter().enumerate() {
                for (y, j) in b.iter().enumerate() {
                    if wi * 2 == weight && y < x {
                        continue;
                    }
                    let (i, j) = (i.clone(), j.clone());
                    jobs.push(Box::new(move || {
                        finite_dbsf(&i, &j)
                            .map(|r| vec![r])
                            .map_err(|error| Skipped { generator: format!("{i} * {j}"), error })
                    }));
                }
            }
        }
    }
    if sources.contains(&Source::RegDbsf) && weight >= 2 {
        for wi in 1..=weight {
            let js = if wi == weight { vec![Index::empty()] } else { enumerate_admissible(weight - wi) };
            for i in enumerate_divergent(wi) {
                for j in &js {
                    let (i, j) = (i.clone(), j.clone());
                    jobs.push(Box::new(move || {
                        reg_dbsf(&i, &j).map_err(|error| Skipped { generator: format!("reg {i} * {j}"), error })
                    }));
                }
            }
        }
    }
    if sources.contains(&Source::Duality) {
        for x in duality_words(weight) {
            jobs.push(Box::new(move || {
                duality_relation(&x)
                    .map(|r| vec![r])
                    .map_err(|error| Skipped { generator: format!("dual {x}"), error })
            }));
        }
    }
    jobs.par_iter().map(|f| f()).collect()
}

/// Generates every relation of weight `weight` from `sources` and validates
/// each one at `digits` against `10^-(digits-8)`.
pub fn harvest(ev: &Evaluator, weight: u32, sources: &[Source], digits: u32) -> Result<Harvest> {
    if weight == 0 {
        return Err(Error::Domain("harvest needs weight >= 1".into()));
    }
    let mut out = Harvest { weight, digits, ..Default::default() };
    let mut seen = BTreeSet::new();
    let mut candidates = Vec::new();
    for g in generate(weight, sources) {
        match g {
            Ok(rels) => {
                for r in rels {
                    if !r.is_trivial() && r.weight == weight && seen.insert(r.terms.clone()) {
                        candidates.push(r);
                    }
                }
            }
            Err(s) => {
                log::info!("skipped {}: {}", s.generator, s.error);
                out.skipped.push(s);
            }
        }
    }
    let symbols: BTreeSet<Index> = candidates.iter().flat_map(|r| r.terms.keys().cloned()).collect();
    let values: BTreeMap<Index, Result<PrecReal>> = symbols
        .into_par_iter()
        .map(|i| {
            let v = ev.eval_index(&i, digits);
            (i, v)
        })
        .collect();
    let tol = threshold(digits);
    let bits = ev.bits(digits);
    for mut r in candidates {
        let res: Result<f64> = with_precision(bits, || {
            let mut s = Mp::zero();
            for (i, c) in &r.terms {
                let v = values[i].as_ref().map_err(Clone::clone)?;
                s += &(Mp::from_rational(c) * v.value.clone());
            }
            Ok(s.abs().to_f64())
        });
        match res {
            Ok(x) if x < tol => {
                r.residual = Some(format!("{x:.3e}"));
                r.digits = digits;
                out.accepted.push(r);
            }
            Ok(x) => {
                log::warn!("rejected {r}: residual {x:e}");
                out.rejected.push(Rejected { relation: r, residual: Some(x), reason: "residual above threshold".into() });
            }
            Err(e) => {
                log::warn!("rejected {r}: {e}");
                out.rejected.push(Rejected { relation: r, residual: None, reason: e.to_string() });
            }
        }
    }
    Ok(out)
}

/// Harvests weights `1..=max_weight` into `store`.
pub fn harvest_into(
    ev: &Evaluator,
    store: &mut RelationStore,
    max_weight: u32,
    sources: &[Source],
    digits: u32,
) -> Result<Vec<Harvest>> {
    let mut out = Vec::new();
    for w in 1..=max_weight {
        let h = harvest(ev, w, sources, digits)?;
        h.apply(store)?;
        out.push(h);
    }
    Ok(out)
}
