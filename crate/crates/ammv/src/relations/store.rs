//! Append-only, weight-partitioned store of validated relations.

use std::collections::BTreeMap;
use std::fs::{File, OpenOptions};
use std::io::{BufRead, BufReader, Write};
use std::path::Path;

use crate::algebra::{Relation, RelationRecord};
use crate::error::{Error, Result};
use crate::index::{enumerate_admissible, Index};
use crate::numerics::{eval_lincomb, Evaluator};
use crate::scalar::Real;

use super::echelon::Echelon;

/// `10^-(digits-8)`.
pub fn threshold(digits: u32) -> f64 {
    10f64.powi(-(digits as i32 - 8))
}

/// Residual `|Σ c·M|` of a relation at `digits`.
pub fn residual(ev: &Evaluator, r: &Relation, digits: u32) -> Result<f64> {
    Ok(eval_lincomb(ev, &r.terms, digits)?.value.abs().to_f64())
}

#[derive(Debug, Default)]
pub struct RelationStore {
    by_weight: BTreeMap<u32, Vec<Relation>>,
    echelons: BTreeMap<u32, Echelon>,
}

impl RelationStore {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn len(&self) -> usize {
        self.by_weight.values().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn weights(&self) -> impl Iterator<Item = u32> + '_ {
        self.by_weight.keys().copied()
    }

    pub fn at_weight(&self, w: u32) -> &[Relation] {
        self.by_weight.get(&w).map_or(&[], Vec::as_slice)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Relation> {
        self.by_weight.values().flatten()
    }

    pub fn echelon(&self, w: u32) -> Option<&Echelon> {
        self.echelons.get(&w)
    }

    fn echelon_mut(&mut self, w: u32) -> &mut Echelon {
        self.echelons.entry(w).or_insert_with(|| Echelon::new(&enumerate_admissible(w)))
    }

    /// Inserts a relation whose recorded residual is below the threshold for
    /// its digits. Returns whether it was new to the echelon form.
    pub fn insert(&mut self, rel: Relation) -> Result<bool> {
        if rel.is_trivial() {
            return Err(Error::Domain("trivial relation".into()));
        }
        let r: f64 = rel
            .residual
            .as_deref()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| Error::Domain(format!("unvalidated relation {rel}")))?;
        if rel.digits == 0 || !(r < threshold(rel.digits)) {
            return Err(Error::Domain(format!("residual {r:e} above threshold for {rel}")));
        }
        let w = rel.weight;
        let fresh = self.echelon_mut(w).insert_relation(&rel);
        self.by_weight.entry(w).or_default().push(rel);
        Ok(fresh)
    }

    /// Evaluates and inserts; on failure returns the residual.
    pub fn validate_and_insert(&mut self, ev: &Evaluator, mut rel: Relation, digits: u32) -> Result<std::result::Result<bool, f64>> {
        let r = residual(ev, &rel, digits)?;
        if r >= threshold(digits) {
            return Ok(Err(r));
        }
        rel.residual = Some(format!("{r:.3e}"));
        rel.digits = digits;
        self.insert(rel).map(Ok)
    }

    pub fn extend(&mut self, rels: impl IntoIterator<Item = Relation>) -> Result<usize> {
        let mut n = 0;
        for r in rels {
            self.insert(r)?;
            n += 1;
        }
        Ok(n)
    }

    pub fn rank(&self, w: u32) -> usize {
        self.echelons.get(&w).map_or(0, Echelon::rank)
    }

    pub fn symbols(w: u32) -> Vec<Index> {
        enumerate_admissible(w)
    }

    /// Reads a JSON-lines file; every record is revalidated by `insert`.
    pub fn load(path: &Path) -> Result<RelationStore> {
        let mut store = RelationStore::new();
        if !path.exists() {
            return Ok(store);
        }
        let f = BufReader::new(File::open(path)?);
        for (n, line) in f.lines().enumerate() {
            let line = line?;
            if line.trim().is_empty() {
                continue;
            }
            let rec: RelationRecord =
                serde_json::from_str(&line).map_err(|e| Error::parse(n, format!("store line {}: {e}", n + 1)))?;
            store.insert(Relation::from_record(&rec)?)?;
        }
        Ok(store)
    }

    /// Appends relations to a JSON-lines file.
    pub fn append_to(path: &Path, rels: &[Relation]) -> Result<()> {
        let mut f = OpenOptions::new().create(true).append(true).open(path)?;
        for r in rels {
            let line = serde_json::to_string(&r.to_record()).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(f, "{line}")?;
        }
        Ok(())
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        if path.exists() {
            std::fs::remove_file(path)?;
        }
        let all: Vec<Relation> = self.iter().cloned().collect();
        Self::append_to(path, &all)
    }
}
