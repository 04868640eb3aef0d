//! Validated dimension upper bounds per weight and family.

use std::fmt;

use crate::index::{compositions, enumerate_admissible, specialize, Family, FamilyIndex, Index, Sign};

use super::echelon::Echelon;
use super::store::RelationStore;

/// Conjectured `dim AMMV_w = 2^w`.
pub fn conjectured_ammv(w: u32) -> u64 {
    1u64 << w
}

/// Conjectured dimension of a family subspace at weight `w`.
pub fn conjectured_family(f: Family, w: u32) -> u64 {
    if w <= 1 {
        return 1;
    }
    match f {
        Family::Zeta => {
            let (mut a, mut b) = (1u64, 1u64);
            for _ in 1..w {
                (a, b) = (b, a + b);
            }
            b
        }
        Family::LowerT => 3 << (w - 2),
        Family::UpperT => {
            let mut d = vec![1u64, 1, 2];
            while d.len() <= w as usize {
                let n = d.len();
                d.push(d[n - 1] + d[n - 2] + d[n - 3]);
            }
            d[w as usize]
        }
        Family::S => {
            let mut d = 3u64;
            for n in 3..=w as u64 {
                d = 2 * d - 2 * ((n + 1) / 2) + 4;
            }
            d
        }
    }
}

/// All admissible family values of weight `w`.
pub fn family_symbols(f: Family, w: u32) -> Vec<FamilyIndex> {
    let mut out = Vec::new();
    for comp in compositions(w) {
        let r = comp.len();
        for mask in 0..(1u32 << r) {
            let comps = comp
                .iter()
                .enumerate()
                .map(|(j, &s)| (s, if mask >> j & 1 == 1 { Sign::Minus } else { Sign::Plus }))
                .collect();
            let fi = FamilyIndex::new(f, comps);
            if fi.is_admissible() {
                out.push(fi);
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyDim {
    pub family: Family,
    pub symbols: usize,
    pub bound: usize,
    pub conjectured: u64,
}

impl FamilyDim {
    pub fn gap(&self) -> i64 {
        self.bound as i64 - self.conjectured as i64
    }
}

/// Upper bounds from a validated relation set; never claimed to be dimensions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DimReport {
    pub weight: u32,
    pub symbols: usize,
    pub rank: usize,
    pub bound: usize,
    pub conjectured: u64,
    pub families: Vec<FamilyDim>,
}

impl DimReport {
    pub fn gap(&self) -> i64 {
        self.bound as i64 - self.conjectured as i64
    }

    /// Whether every bound sits at or above its conjectured value.
    pub fn consistent(&self) -> bool {
        self.gap() >= 0 && self.families.iter().all(|f| f.gap() >= 0 && f.bound <= self.bound)
    }

    pub const HEADER: &'static str = "w\tspace\tsymbols\tbound\tconjectured\tgap";

    pub fn rows(&self) -> Vec<String> {
        let mut out = vec![format!(
            "{}\tAMMV\t{}\t{}\t{}\t{}",
            self.weight,
            self.symbols,
            self.bound,
            self.conjectured,
            self.gap()
        )];
        for f in &self.families {
            out.push(format!(
                "{}\t{}\t{}\t{}\t{}\t{}",
                self.weight,
                f.family.name(),
                f.symbols,
                f.bound,
                f.conjectured,
                f.gap()
            ));
        }
        out
    }
}

impl fmt::Display for DimReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", Self::HEADER)?;
        for r in self.rows() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

fn family_indices(f: Family, w: u32) -> Vec<Index> {
    family_symbols(f, w).iter().filter_map(|fi| specialize(fi).ok().map(|(_, i)| i)).collect()
}

/// Exact rank of the stored relations at `w` and the induced bounds.
pub fn rank_and_dims(weight: u32, store: &RelationStore) -> DimReport {
    if weight == 0 {
        return DimReport {
            weight,
            symbols: 1,
            rank: 0,
            bound: 1,
            conjectured: 1,
            families: Family::ALL
                .iter()
                .map(|&family| FamilyDim { family, symbols: 1, bound: 1, conjectured: 1 })
                .collect(),
        };
    }
    let symbols = enumerate_admissible(weight);
    let mut ech = Echelon::new(&symbols);
    for r in store.at_weight(weight) {
        ech.insert_relation(r);
    }
    let rank = ech.rank();
    let families = Family::ALL
        .iter()
        .map(|&family| {
            let idx = family_indices(family, weight);
            let mut e = ech.clone();
            let bound = idx.iter().filter(|i| e.insert_symbol(i)).count();
            FamilyDim { family, symbols: idx.len(), bound, conjectured: conjectured_family(family, weight) }
        })
        .collect();
    DimReport {
        weight,
        symbols: symbols.len(),
        rank,
        bound: symbols.len() - rank,
        conjectured: conjectured_ammv(weight),
        families,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjectured_tables() {
        let rows: [(Family, [u64; 9]); 4] = [
            (Family::Zeta, [1, 1, 2, 3, 5, 8, 13, 21, 34]),
            (Family::LowerT, [1, 1, 3, 6, 12, 24, 48, 96, 192]),
            (Family::UpperT, [1, 1, 2, 4, 7, 13, 24, 44, 81]),
            (Family::S, [1, 1, 3, 6, 12, 22, 42, 80, 156]),
        ];
        for (f, vals) in rows {
            for (w, v) in vals.iter().enumerate() {
                assert_eq!(conjectured_family(f, w as u32), *v, "{f:?} w={w}");
            }
        }
        assert_eq!(conjectured_ammv(6), 64);
    }

    #[test]
    fn weight_zero_and_one() {
        let store = RelationStore::new();
        let d0 = rank_and_dims(0, &store);
        assert_eq!((d0.bound, d0.conjectured), (1, 1));
        let d1 = rank_and_dims(1, &store);
        assert_eq!((d1.symbols, d1.rank, d1.bound, d1.conjectured), (2, 0, 2, 2));
        assert!(d1.consistent());
    }

    #[test]
    fn family_symbol_counts() {
        assert_eq!(family_symbols(Family::Zeta, 1).len(), 1);
        assert_eq!(family_symbols(Family::UpperT, 2).len(), 4);
    }
}
