//! Decorated compositions `(s_j, σ_j, ε_j)` and their text notation.
//!
//! A component prints as `[c][b]s`: `c` marks an odd parity, `b` a negative
//! sign. `M(b2,3,cb4)` is the index `(2,−,even),(3,+,even),(4,−,odd)`.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_rational::BigRational;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::pow2;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn from_i64(v: i64) -> Sign {
        if v < 0 {
            Sign::Minus
        } else {
            Sign::Plus
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Sign::Plus => 1,
            Sign::Minus => -1,
        }
    }

    pub fn mul(self, other: Sign) -> Sign {
        if self == other {
            Sign::Plus
        } else {
            Sign::Minus
        }
    }

    pub fn is_minus(self) -> bool {
        self == Sign::Minus
    }
}

/// Parity decoration; `Even` is ε = +1, `Odd` is ε = −1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    pub fn from_i64(v: i64) -> Parity {
        if v < 0 {
            Parity::Odd
        } else {
            Parity::Even
        }
    }

    pub fn to_i64(self) -> i64 {
        match self {
            Parity::Even => 1,
            Parity::Odd => -1,
        }
    }

    pub fn mul(self, other: Parity) -> Parity {
        if self == other {
            Parity::Even
        } else {
            Parity::Odd
        }
    }

    pub fn is_odd(self) -> bool {
        self == Parity::Odd
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Component {
    pub s: u32,
    pub sigma: Sign,
    pub eps: Parity,
}

impl Component {
    pub fn new(s: u32, sigma: Sign, eps: Parity) -> Self {
        assert!(s >= 1, "component exponent must be positive");
        Component { s, sigma, eps }
    }

    /// `(1, +, ·)`: the components that make a leading position divergent.
    pub fn is_divergent(&self) -> bool {
        self.s == 1 && self.sigma == Sign::Plus
    }

    /// Phase factor `(1 + ε(−1)^m) σ^{(2m+1−ε)/4}` as an integer in {−2, 0, 2}.
    pub fn phase(&self, m: u64) -> i64 {
        let sig = self.sigma.to_i64();
        match self.eps {
            Parity::Even if m % 2 == 0 => 2 * if (m / 2) % 2 == 1 { sig } else { 1 },
            Parity::Odd if m % 2 == 1 => 2 * if ((m + 1) / 2) % 2 == 1 { sig } else { 1 },
            _ => 0,
        }
    }
}

impl fmt::Display for Component {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.eps.is_odd() {
            f.write_str("c")?;
        }
        if self.sigma.is_minus() {
            f.write_str("b")?;
        }
        write!(f, "{}", self.s)
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Index {
    comps: Vec<Component>,
}

impl Index {
    pub fn new(comps: Vec<Component>) -> Self {
        Index { comps }
    }

    pub fn empty() -> Self {
        Index { comps: Vec::new() }
    }

    /// Builds an index from `(s, σ, ε)` triples with `±1` decorations.
    pub fn from_triples(t: &[(u32, i64, i64)]) -> Self {
        Index::new(
            t.iter()
                .map(|&(s, sg, ep)| Component::new(s, Sign::from_i64(sg), Parity::from_i64(ep)))
                .collect(),
        )
    }

    pub fn comps(&self) -> &[Component] {
        &self.comps
    }

    pub fn into_comps(self) -> Vec<Component> {
        self.comps
    }

    pub fn weight(&self) -> u32 {
        self.comps.iter().map(|c| c.s).sum()
    }

    pub fn depth(&self) -> usize {
        self.comps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comps.is_empty()
    }

    pub fn is_admissible(&self) -> bool {
        self.comps.first().map_or(true, |c| !c.is_divergent())
    }

    /// Number of leading divergent components.
    pub fn divergent_prefix(&self) -> usize {
        self.comps.iter().take_while(|c| c.is_divergent()).count()
    }

    pub fn concat(&self, other: &Index) -> Index {
        let mut comps = self.comps.clone();
        comps.extend_from_slice(&other.comps);
        Index { comps }
    }

    pub fn parse(text: &str) -> Result<Index> {
        text.parse()
    }
}

pub fn measures(i: &Index) -> (u32, usize) {
    (i.weight(), i.depth())
}

pub fn format_index(i: &Index) -> String {
    i.to_string()
}

pub fn parse_index(text: &str) -> Result<Index> {
    text.parse()
}

impl Ord for Index {
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight()
            .cmp(&other.weight())
            .then(self.depth().cmp(&other.depth()))
            .then_with(|| {
                let a = self.comps.iter().map(|c| c.s);
                let b = other.comps.iter().map(|c| c.s);
                a.cmp(b)
            })
            .then_with(|| {
                let a = self.comps.iter().map(|c| c.sigma);
                let b = other.comps.iter().map(|c| c.sigma);
                a.cmp(b)
            })
            .then_with(|| {
                let a = self.comps.iter().map(|c| c.eps);
                let b = other.comps.iter().map(|c| c.eps);
                a.cmp(b)
            })
    }
}

impl PartialOrd for Index {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("M(")?;
        for (k, c) in self.comps.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for Index {
    type Err = Error;

    fn from_str(text: &str) -> Result<Index> {
        let (name, comps) = parse_call(text, true)?;
        if name != "M" {
            return Err(Error::parse(0, format!("expected M(...), found family `{name}`")));
        }
        Ok(Index::new(comps))
    }
}

impl Serialize for Index {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Index {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// Parses `Name(comp,...)`; `allow_check` permits the `c` prefix.
fn parse_call(text: &str, allow_check: bool) -> Result<(String, Vec<Component>)> {
    let bytes = text.as_bytes();
    let mut pos = 0;
    while pos < bytes.len() && bytes[pos].is_ascii_whitespace() {
        pos += 1;
    }
    let start = pos;
    while pos < bytes.len() && bytes[pos].is_ascii_alphabetic() {
        pos += 1;
    }
    if pos == start {
        return Err(Error::parse(pos, "expected family name"));
    }
    let name = text[start..pos].to_string();
    if bytes.get(pos) != Some(&b'(') {
        return Err(Error::parse(pos, "expected `(`"));
    }
    pos += 1;
    let mut comps = Vec::new();
    let skip_ws = |pos: &mut usize| {
        while *pos < bytes.len() && bytes[*pos].is_ascii_whitespace() {
            *pos += 1;
        }
    };
    skip_ws(&mut pos);
    if bytes.get(pos) == Some(&b')') {
        pos += 1;
    } else {
        loop {
            skip_ws(&mut pos);
            let mut eps = Parity::Even;
            let mut sigma = Sign::Plus;
            if bytes.get(pos) == Some(&b'c') {
                if !allow_check {
                    return Err(Error::parse(pos, "parity mark `c` only allowed in M(...)"));
                }
                eps = Parity::Odd;
                pos += 1;
            }
            if bytes.get(pos) == Some(&b'b') {
                sigma = Sign::Minus;
                pos += 1;
            }
            let ds = pos;
            while pos < bytes.len() && bytes[pos].is_ascii_digit() {
                pos += 1;
            }
            if ds == pos {
                return Err(Error::parse(pos, "expected digits"));
            }
            let s: u32 = text[ds..pos]
                .parse()
                .map_err(|_| Error::parse(ds, "exponent out of range"))?;
            if s == 0 {
                return Err(Error::parse(ds, "zero part"));
            }
            comps.push(Component { s, sigma, eps });
            skip_ws(&mut pos);
            match bytes.get(pos) {
                Some(b',') => pos += 1,
                Some(b')') => {
                    pos += 1;
                    break;
                }
                _ => return Err(Error::parse(pos, "expected `,` or `)`")),
            }
        }
    }
    skip_ws(&mut pos);
    if pos != bytes.len() {
        return Err(Error::parse(pos, "trailing input"));
    }
    Ok((name, comps))
}

/// All admissible indices of weight `w`, in canonical order.
pub fn enumerate_admissible(w: u32) -> Vec<Index> {
    let mut out = Vec::new();
    if w == 0 {
        out.push(Index::empty());
        return out;
    }
    for comp in compositions(w) {
        let r = comp.len();
        for mask in 0..(1u32 << (2 * r)) {
            let comps: Vec<Component> = comp
                .iter()
                .enumerate()
                .map(|(j, &s)| {
                    let sigma = if mask >> (2 * j) & 1 == 1 { Sign::Minus } else { Sign::Plus };
                    let eps = if mask >> (2 * j + 1) & 1 == 1 { Parity::Odd } else { Parity::Even };
                    Component { s, sigma, eps }
                })
                .collect();
            let i = Index::new(comps);
            if i.is_admissible() {
                out.push(i);
            }
        }
    }
    out.sort();
    out
}

pub fn compositions(w: u32) -> Vec<Vec<u32>> {
    if w == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in 1..=w {
        for mut rest in compositions(w - first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    /// Alternating multiple zeta values `ζ(k; σ)`.
    Zeta,
    /// Alternating multiple t-values.
    LowerT,
    /// Alternating multiple T-values.
    UpperT,
    /// Alternating multiple S-values.
    S,
}

impl Family {
    pub const ALL: [Family; 4] = [Family::Zeta, Family::LowerT, Family::UpperT, Family::S];

    pub fn symbol(self) -> &'static str {
        match self {
            Family::Zeta => "Z",
            Family::LowerT => "t",
            Family::UpperT => "T",
            Family::S => "S",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Family::Zeta => "AMZV",
            Family::LowerT => "AMtV",
            Family::UpperT => "AMTV",
            Family::S => "AMSV",
        }
    }

    fn from_symbol(s: &str) -> Option<Family> {
        match s {
            "Z" => Some(Family::Zeta),
            "t" => Some(Family::LowerT),
            "T" => Some(Family::UpperT),
            "S" => Some(Family::S),
            _ => None,
        }
    }

    /// Parity pattern of position `j` (0-based) in depth `r`.
    pub fn parity_at(self, j: usize, r: usize) -> Parity {
        match self {
            Family::Zeta => Parity::Even,
            Family::LowerT => Parity::Odd,
            Family::UpperT => {
                if (r - j) % 2 == 1 {
                    Parity::Odd
                } else {
                    Parity::Even
                }
            }
            Family::S => {
                if (r - j) % 2 == 0 {
                    Parity::Odd
                } else {
                    Parity::Even
                }
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FamilyIndex {
    pub family: Family,
    pub comps: Vec<(u32, Sign)>,
}

impl FamilyIndex {
    pub fn new(family: Family, comps: Vec<(u32, Sign)>) -> Self {
        FamilyIndex { family, comps }
    }

    pub fn is_admissible(&self) -> bool {
        match self.comps.first() {
            None => false,
            Some(&(k, s)) => !(k == 1 && s == Sign::Plus),
        }
    }

    pub fn weight(&self) -> u32 {
        self.comps.iter().map(|c| c.0).sum()
    }

    pub fn depth(&self) -> usize {
        self.comps.len()
    }
}

impl fmt::Display for FamilyIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}(", self.family.symbol())?;
        for (k, (s, sg)) in self.comps.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            if sg.is_minus() {
                f.write_str("b")?;
            }
            write!(f, "{s}")?;
        }
        f.write_str(")")
    }
}

impl FromStr for FamilyIndex {
    type Err = Error;

    fn from_str(text: &str) -> Result<FamilyIndex> {
        let (name, comps) = parse_call(text, false)?;
        let family = Family::from_symbol(&name)
            .ok_or_else(|| Error::parse(0, format!("unknown family `{name}`")))?;
        if comps.is_empty() {
            return Err(Error::parse(text.len(), "family values need at least one part"));
        }
        Ok(FamilyIndex::new(family, comps.into_iter().map(|c| (c.s, c.sigma)).collect()))
    }
}

/// Writes a family value as `c · M(I)`.
pub fn specialize(f: &FamilyIndex) -> Result<(BigRational, Index)> {
    if !f.is_admissible() {
        return Err(Error::Inadmissible(f.to_string()));
    }
    let r = f.depth();
    let w = f.weight() as i64;
    let comps = f
        .comps
        .iter()
        .enumerate()
        .map(|(j, &(s, sigma))| Component::new(s, sigma, f.family.parity_at(j, r)))
        .collect();
    let c = match f.family {
        Family::Zeta => pow2(w - r as i64),
        Family::LowerT => pow2(-(r as i64)),
        Family::UpperT | Family::S => BigRational::one(),
    };
    Ok((c, Index::new(comps)))
}

/// Parses `M(...)` or any family text into `c · M(I)`.
pub fn parse_symbol(text: &str) -> Result<(BigRational, Index)> {
    let trimmed = text.trim_start();
    if trimmed.starts_with("M(") {
        return Ok((BigRational::one(), trimmed.parse()?));
    }
    let f: FamilyIndex = text.parse()?;
    specialize(&f)
}
