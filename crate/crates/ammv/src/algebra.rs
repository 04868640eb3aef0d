//! Shuffle and stuffle products and double-shuffle relations.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::index::{Component, Index};
use crate::lincomb::{primitive_integer_vector, LinComb};
use crate::words::{p_map, q_map, Letter, Word};

/// Chen shuffle product.
pub fn shuffle(u: &Word, v: &Word) -> LinComb<Word> {
    let a = u.letters();
    let b = v.letters();
    // table[i][j] = shuffle of a[i..] with b[j..], as (reversed) words with counts
    let mut table: Vec<Vec<HashMap<Vec<Letter>, u64>>> = vec![vec![HashMap::new(); b.len() + 1]; a.len() + 1];
    for i in (0..=a.len()).rev() {
        for j in (0..=b.len()).rev() {
            let mut cell: HashMap<Vec<Letter>, u64> = HashMap::new();
            if i == a.len() && j == b.len() {
                cell.insert(Vec::new(), 1);
            }
            if i < a.len() {
                for (w, c) in &table[i + 1][j] {
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.push(a[i]);
                    nw.extend_from_slice(w);
                    *cell.entry(nw).or_insert(0) += c;
                }
            }
            if j < b.len() {
                for (w, c) in &table[i][j + 1] {
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.push(b[j]);
                    nw.extend_from_slice(w);
                    *cell.entry(nw).or_insert(0) += c;
                }
            }
            table[i][j] = cell;
        }
    }
    table[0][0]
        .drain()
        .map(|(w, c)| (Word(w), BigRational::from_integer(BigInt::from(c))))
        .collect()
}

/// Stuffed component `a ⊕ b`; defined only for equal parities.
pub fn stuff(a: &Component, b: &Component) -> Option<Component> {
    (a.eps == b.eps).then(|| Component::new(a.s + b.s, a.sigma.mul(b.sigma), a.eps))
}

/// Quasi-shuffle product on indices; merged terms carry a factor 2.
pub fn stuffle(i: &Index, j: &Index) -> LinComb<Index> {
    let a = i.comps();
    let b = j.comps();
    let mut table: Vec<Vec<Vec<(Vec<Component>, BigInt)>>> = vec![vec![Vec::new(); b.len() + 1]; a.len() + 1];
    for x in (0..=a.len()).rev() {
        for y in (0..=b.len()).rev() {
            let mut cell: Vec<(Vec<Component>, BigInt)> = Vec::new();
            if x == a.len() && y == b.len() {
                cell.push((Vec::new(), BigInt::one()));
            }
            let mut push = |head: Component, rest: &[(Vec<Component>, BigInt)], f: i64| {
                for (w, c) in rest {
                    let mut nw = Vec::with_capacity(w.len() + 1);
                    nw.push(head);
                    nw.extend_from_slice(w);
                    cell.push((nw, c * f));
                }
            };
            if x < a.len() {
                push(a[x], &table[x + 1][y], 1);
            }
            if y < b.len() {
                push(b[y], &table[x][y + 1], 1);
            }
            if x < a.len() && y < b.len() {
                if let Some(m) = stuff(&a[x], &b[y]) {
                    push(m, &table[x + 1][y + 1], 2);
                }
            }
            table[x][y] = cell;
        }
    }
    std::mem::take(&mut table[0][0])
        .into_iter()
        .map(|(w, c)| (Index::new(w), BigRational::from_integer(c)))
        .collect()
}

/// Stuffle extended bilinearly.
pub fn stuffle_lin(a: &LinComb<Index>, b: &LinComb<Index>) -> LinComb<Index> {
    a.product(b, stuffle)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Provenance {
    FiniteDbsf,
    RegDbsf,
    Duality,
    ProductExpansion,
    Pslq,
}

impl Provenance {
    pub fn as_str(self) -> &'static str {
        match self {
            Provenance::FiniteDbsf => "finite-dbsf",
            Provenance::RegDbsf => "reg-dbsf",
            Provenance::Duality => "duality",
            Provenance::ProductExpansion => "product-expansion",
            Provenance::Pslq => "pslq",
        }
    }
}

impl fmt::Display for Provenance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Provenance {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "finite-dbsf" => Provenance::FiniteDbsf,
            "reg-dbsf" => Provenance::RegDbsf,
            "duality" => Provenance::Duality,
            "product-expansion" => Provenance::ProductExpansion,
            "pslq" => Provenance::Pslq,
            _ => return Err(Error::parse(0, format!("unknown provenance `{s}`"))),
        })
    }
}

/// Homogeneous rational relation `Σ c_k M(I_k) = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub weight: u32,
    pub terms: LinComb<Index>,
    pub provenance: Provenance,
    pub residual: Option<String>,
    pub digits: u32,
}

impl Relation {
    /// Normalizes to a primitive integer vector with positive leading coefficient.
    pub fn new(terms: LinComb<Index>, provenance: Provenance) -> Result<Relation> {
        let mut weight = None;
        for i in terms.keys() {
            if !i.is_admissible() {
                return Err(Error::Inadmissible(format!("{i} in relation")));
            }
            match weight {
                None => weight = Some(i.weight()),
                Some(w) if w != i.weight() => {
                    return Err(Error::Domain(format!("relation mixes weights {w} and {}", i.weight())))
                }
                _ => {}
            }
        }
        let coeffs: Vec<BigRational> = terms.iter().map(|(_, c)| c.clone()).collect();
        let ints = primitive_integer_vector(&coeffs);
        let terms = terms
            .keys()
            .cloned()
            .zip(ints)
            .map(|(i, c)| (i, BigRational::from_integer(c)))
            .collect();
        Ok(Relation { weight: weight.unwrap_or(0), terms, provenance, residual: None, digits: 0 })
    }

    pub fn is_trivial(&self) -> bool {
        self.terms.is_zero()
    }

    pub fn to_record(&self) -> RelationRecord {
        RelationRecord {
            weight: self.weight,
            terms: self
                .terms
                .iter()
                .map(|(i, c)| TermRecord { coeff: c.to_string(), index: i.to_string() })
                .collect(),
            provenance: self.provenance,
            residual: self.residual.clone().unwrap_or_default(),
            digits: self.digits,
        }
    }

    pub fn from_record(r: &RelationRecord) -> Result<Relation> {
        let mut terms = LinComb::new();
        for t in &r.terms {
            let c: BigRational = t
                .coeff
                .parse()
                .map_err(|_| Error::parse(0, format!("bad coefficient `{}`", t.coeff)))?;
            terms.add_term(t.index.parse()?, c);
        }
        let mut rel = Relation::new(terms, r.provenance)?;
        rel.residual = (!r.residual.is_empty()).then(|| r.residual.clone());
        rel.digits = r.digits;
        Ok(rel)
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = 0", self.terms)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermRecord {
    pub coeff: String,
    pub index: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RelationRecord {
    pub weight: u32,
    pub terms: Vec<TermRecord>,
    pub provenance: Provenance,
    pub residual: String,
    pub digits: u32,
}

/// `q(p(i) ⧢ p(j))` with the junction signs folded in.
pub fn shuffle_indices(i: &Index, j: &Index) -> Result<LinComb<Index>> {
    if i.is_empty() {
        return Ok(LinComb::basis(j.clone()));
    }
    if j.is_empty() {
        return Ok(LinComb::basis(i.clone()));
    }
    let (si, wi) = p_map(i)?;
    let (sj, wj) = p_map(j)?;
    let sign = BigRational::from_integer(BigInt::from(si * sj));
    let mut out = LinComb::new();
    for (w, c) in &shuffle(&wi, &wj) {
        let (sg, k) = q_map(w)?;
        out.add_term(k, c * &sign * BigRational::from_integer(sg.into()));
    }
    Ok(out)
}

/// Finite double-shuffle relation of two admissible indices.
pub fn finite_dbsf(i: &Index, j: &Index) -> Result<Relation> {
    for x in [i, j] {
        if !x.is_admissible() {
            return Err(Error::Inadmissible(x.to_string()));
        }
    }
    let sh = shuffle_indices(i, j)?;
    let st = stuffle(i, j);
    Relation::new(sh - st, Provenance::FiniteDbsf)
}

pub fn rational(n: i64) -> BigRational {
    if n == 0 {
        BigRational::zero()
    } else {
        BigRational::from_integer(n.into())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::words::words_to_indices;

    fn m(t: &str) -> Index {
        t.parse().unwrap()
    }

    fn comb(items: &[(i64, &str)]) -> LinComb<Index> {
        items.iter().map(|(c, t)| (m(t), rational(*c))).collect()
    }

    #[test]
    fn shuffle_examples() {
        let (s1, a) = p_map(&m("M(cb1)")).unwrap();
        let (s2, b) = p_map(&m("M(cb2)")).unwrap();
        assert_eq!(s1 * s2, 1);
        let words = shuffle(&a, &b);
        let w1: Word = "w-1^-1 w0 w-1^-1".parse().unwrap();
        let w2: Word = "w0 w-1^-1 w-1^-1".parse().unwrap();
        assert_eq!(words, [(w1, rational(1)), (w2, rational(2))].into_iter().collect());
        assert_eq!(words_to_indices(&words).unwrap(), comb(&[(-1, "M(b1,c2)"), (-2, "M(b2,c1)")]));

        let got = shuffle_indices(&m("M(b3)"), &m("M(c2)")).unwrap();
        let expect = comb(&[(1, "M(cb3,cb2)"), (1, "M(c2,b3)"), (2, "M(c3,b2)"), (3, "M(c4,b1)"), (3, "M(cb4,cb1)")]);
        assert_eq!(got, expect);
    }

    #[test]
    fn stuffle_examples() {
        let got = stuffle(&m("M(b2,3,cb4)"), &m("M(cb2)"));
        let expect = comb(&[
            (1, "M(b2,3,cb4,cb2)"),
            (1, "M(b2,3,cb2,cb4)"),
            (1, "M(b2,cb2,3,cb4)"),
            (1, "M(cb2,b2,3,cb4)"),
            (2, "M(b2,3,c6)"),
        ]);
        assert_eq!(got, expect);
        let got = stuffle(&m("M(b1,cb2)"), &m("M(3,cb2)"));
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
        assert_eq!(got, expect);
    }

    #[test]
    fn unit_laws() {
        let u: Word = "w0 w-1^+1".parse().unwrap();
        assert_eq!(shuffle(&u, &Word::empty()), LinComb::basis(u));
        let i = m("M(b2,c1)");
        assert_eq!(stuffle(&i, &Index::empty()), LinComb::basis(i.clone()));
        assert!(finite_dbsf(&i, &Index::empty()).unwrap().is_trivial());
    }

    #[test]
    fn zeta_two_squared() {
        // 4 M(2)^2 = ζ(2)^2, and ζ(2)^2 = 2ζ(2,2) + ζ(4) = 4ζ(3,1) + 2ζ(2,2)
        let r = finite_dbsf(&m("M(2)"), &m("M(2)")).unwrap();
        assert_eq!(r.weight, 4);
        assert!(r.terms.keys().all(|i| i.comps().iter().all(|c| !c.eps.is_odd())));
        // M(2)^2 = 4M(3,1) + 2M(2,2) by shuffle and 2M(2,2) + 2M(4) by stuffle,
        // i.e. ζ(4) = 4ζ(3,1)
        assert_eq!(r.terms, comb(&[(1, "M(4)"), (-2, "M(3,1)")]));
    }

    #[test]
    fn relation_normalization() {
        let r = Relation::new(comb(&[(-2, "M(2)"), (4, "M(b2)")]), Provenance::Pslq).unwrap();
        assert_eq!(r.terms, comb(&[(1, "M(2)"), (-2, "M(b2)")]));
        let rec = r.to_record();
        let back = Relation::from_record(&rec).unwrap();
        assert_eq!(back, r);
        assert!(Relation::new(comb(&[(1, "M(1,2)")]), Provenance::Pslq).is_err());
        assert!(Relation::new(comb(&[(1, "M(2)"), (1, "M(3)")]), Provenance::Pslq).is_err());
    }
}
