//! Exact row echelon form over Z with fraction-free elimination.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::algebra::Relation;
use crate::index::Index;
use crate::lincomb::{primitive_integer_vector, LinComb};
use num_rational::BigRational;

type Row = BTreeMap<usize, BigInt>;

/// Rows keyed by pivot column; columns follow the canonical symbol order.
#[derive(Clone, Debug, Default)]
pub struct Echelon {
    columns: BTreeMap<Index, usize>,
    rows: BTreeMap<usize, Row>,
}

impl Echelon {
    /// Columns are assigned in the order of `symbols` after sorting.
    pub fn new(symbols: &[Index]) -> Self {
        let mut s = symbols.to_vec();
        s.sort();
        s.dedup();
        let columns = s.into_iter().enumerate().map(|(k, i)| (i, k)).collect();
        Echelon { columns, rows: BTreeMap::new() }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn columns(&self) -> usize {
        self.columns.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = &Index> {
        let by_col: BTreeMap<usize, &Index> = self.columns.iter().map(|(i, &k)| (k, i)).collect();
        self.rows.keys().map(move |k| by_col[k])
    }

    fn to_row(&self, c: &LinComb<Index>) -> Option<Row> {
        let coeffs: Vec<BigRational> = c.iter().map(|(_, k)| k.clone()).collect();
        let ints = primitive_integer_vector(&coeffs);
        let mut row = Row::new();
        for ((i, _), k) in c.iter().zip(ints) {
            if !k.is_zero() {
                row.insert(*self.columns.get(i)?, k);
            }
        }
        Some(row)
    }

    /// Reduces a vector against the current rows; `None` if a symbol lies
    /// outside the column set.
    pub fn reduce(&self, c: &LinComb<Index>) -> Option<Row> {
        let row = self.to_row(c)?;
        Some(self.reduce_row(row))
    }

    fn reduce_row(&self, mut row: Row) -> Row {
        let mut from = 0usize;
        loop {
            let next = row.range(from..).find(|(col, _)| self.rows.contains_key(col)).map(|(c, v)| (*c, v.clone()));
            let Some((col, a)) = next else { return row };
            let pivot = &self.rows[&col];
            let p = &pivot[&col];
            let g = a.gcd(p);
            let (fa, fp) = (p / &g, &a / &g);
            for v in row.values_mut() {
                *v *= &fa;
            }
            for (k, v) in pivot {
                let e = row.entry(*k).or_insert_with(BigInt::zero);
                *e -= v * &fp;
            }
            row.retain(|_, v| !v.is_zero());
            make_primitive(&mut row);
            from = col + 1;
        }
    }

    /// Inserts a combination; returns whether it raised the rank.
    pub fn insert(&mut self, c: &LinComb<Index>) -> bool {
        let Some(row) = self.reduce(c) else { return false };
        self.insert_reduced(row)
    }

    fn insert_reduced(&mut self, row: Row) -> bool {
        match row.keys().next().copied() {
            None => false,
            Some(col) => {
                self.rows.insert(col, row);
                true
            }
        }
    }

    pub fn insert_relation(&mut self, r: &Relation) -> bool {
        self.insert(&r.terms)
    }

    /// Adds a unit vector for `i`.
    pub fn insert_symbol(&mut self, i: &Index) -> bool {
        match self.columns.get(i) {
            None => false,
            Some(&k) => {
                let row = self.reduce_row(Row::from([(k, BigInt::from(1))]));
                self.insert_reduced(row)
            }
        }
    }

    pub fn contains(&self, c: &LinComb<Index>) -> bool {
        self.reduce(c).is_some_and(|r| r.is_empty())
    }
}

fn make_primitive(row: &mut Row) {
    let g = row.values().fold(BigInt::zero(), |g, v| g.gcd(v));
    if g.is_zero() {
        return;
    }
    let neg = row.values().next().is_some_and(|v| v.is_negative());
    let g = if neg { -g } else { g };
    for v in row.values_mut() {
        *v = &*v / &g;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rational;

    fn m(t: &str) -> Index {
        t.parse().unwrap()
    }

    fn lc(terms: &[(&str, i64)]) -> LinComb<Index> {
        terms.iter().map(|(i, c)| (m(i), rational(*c))).collect()
    }

    #[test]
    fn rank_of_dependent_rows() {
        let syms = [m("M(b1)"), m("M(cb1)"), m("M(2)")];
        let mut e = Echelon::new(&syms);
        assert!(e.insert(&lc(&[("M(b1)", 2), ("M(cb1)", 4)])));
        assert!(!e.insert(&lc(&[("M(b1)", -1), ("M(cb1)", -2)])));
        assert!(e.insert(&lc(&[("M(cb1)", 3), ("M(2)", 1)])));
        assert!(!e.insert(&lc(&[("M(b1)", 1), ("M(cb1)", -1), ("M(2)", -1)])));
        assert_eq!(e.rank(), 2);
        assert!(e.insert_symbol(&m("M(2)")));
        assert_eq!(e.rank(), 3);
        assert!(!e.insert_symbol(&m("M(b1)")));
    }

    #[test]
    fn unknown_symbol_is_rejected() {
        let mut e = Echelon::new(&[m("M(b1)")]);
        assert!(!e.insert(&lc(&[("M(2)", 1)])));
        assert_eq!(e.rank(), 0);
    }
}
