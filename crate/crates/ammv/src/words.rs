//! Iterated-integral words over the five letters `ω₀, ω_σ^ε`, the maps between
//! words and indices, duality, and decomposition into level-4 colored values.

use std::fmt;
use std::str::FromStr;

use num_complex::Complex;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::index::{Component, Index, Parity, Sign};
use crate::lincomb::LinComb;

pub type GaussRational = Complex<BigRational>;

/// `W0 = dt/t`; `W(σ, ε)` is `ω_σ^ε`:
/// `ω_{+}^{−} = 2dt/(1−t²)`, `ω_{−}^{−} = −2dt/(1+t²)`,
/// `ω_{+}^{+} = 2t dt/(1−t²)`, `ω_{−}^{+} = −2t dt/(1+t²)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Letter {
    W0,
    W(Sign, Parity),
}

impl Letter {
    pub const ALL: [Letter; 5] = [
        Letter::W0,
        Letter::W(Sign::Plus, Parity::Even),
        Letter::W(Sign::Plus, Parity::Odd),
        Letter::W(Sign::Minus, Parity::Even),
        Letter::W(Sign::Minus, Parity::Odd),
    ];

    pub fn is_divergent_start(self) -> bool {
        matches!(self, Letter::W(Sign::Plus, _))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Letter::W0 => f.write_str("w0"),
            Letter::W(s, e) => write!(
                f,
                "w{}1^{}1",
                if s.is_minus() { "-" } else { "+" },
                if e.is_odd() { "-" } else { "+" }
            ),
        }
    }
}

impl FromStr for Letter {
    type Err = Error;
    fn from_str(t: &str) -> Result<Letter> {
        let sign = |c: &str| match c {
            "+" => Some(1),
            "-" => Some(-1),
            _ => None,
        };
        if t == "w0" {
            return Ok(Letter::W0);
        }
        let bad = || Error::parse(0, format!("unknown letter `{t}`"));
        let rest = t.strip_prefix('w').ok_or_else(bad)?;
        let (a, b) = rest.split_once('^').ok_or_else(bad)?;
        let sa = a.strip_suffix('1').and_then(sign).ok_or_else(bad)?;
        let sb = b.strip_suffix('1').and_then(sign).ok_or_else(bad)?;
        Ok(Letter::W(Sign::from_i64(sa), Parity::from_i64(sb)))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn empty() -> Self {
        Word(Vec::new())
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn weight(&self) -> usize {
        self.0.len()
    }

    pub fn depth(&self) -> usize {
        self.0.iter().filter(|l| **l != Letter::W0).count()
    }

    pub fn is_admissible(&self) -> bool {
        let head_ok = self.0.first().map_or(true, |l| !l.is_divergent_start());
        let tail_ok = self.0.last() != Some(&Letter::W0);
        head_ok && tail_ok
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn prepend(&self, l: Letter) -> Word {
        let mut v = Vec::with_capacity(self.0.len() + 1);
        v.push(l);
        v.extend_from_slice(&self.0);
        Word(v)
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("1");
        }
        for (k, l) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = Error;
    fn from_str(t: &str) -> Result<Word> {
        let t = t.trim();
        if t == "1" || t.is_empty() {
            return Ok(Word::empty());
        }
        let mut out = Vec::new();
        let mut pos = 0;
        for tok in t.split_whitespace() {
            let at = t[pos..].find(tok).map_or(pos, |k| pos + k);
            let l = tok.parse::<Letter>().map_err(|_| Error::parse(at, format!("unknown letter `{tok}`")))?;
            out.push(l);
            pos = at + tok.len();
        }
        Ok(Word(out))
    }
}

/// Word of an index with the folded junction sign, for any nonempty or empty
/// index (divergent ones included).
pub fn p_map_any(i: &Index) -> (i64, Word) {
    let c = i.comps();
    let r = c.len();
    let mut letters = Vec::with_capacity(i.weight() as usize);
    let mut sign = 1i64;
    let mut tau = Sign::Plus;
    for j in 0..r {
        tau = tau.mul(c[j].sigma);
        letters.extend(std::iter::repeat(Letter::W0).take(c[j].s as usize - 1));
        let e = if j + 1 < r {
            if tau == Sign::Minus && c[j + 1].eps == Parity::Odd && c[j].eps == Parity::Even {
                sign = -sign;
            }
            c[j].eps.mul(c[j + 1].eps)
        } else {
            c[j].eps
        };
        letters.push(Letter::W(tau, e));
    }
    (sign, Word(letters))
}

/// `M(i) = sign · ∫ w`.
pub fn p_map(i: &Index) -> Result<(i64, Word)> {
    if i.is_empty() || !i.is_admissible() {
        return Err(Error::Inadmissible(i.to_string()));
    }
    Ok(p_map_any(i))
}

/// Index of a word with its sign, allowing a divergent start; the word must
/// not end with `ω₀`.
pub fn q_map_any(w: &Word) -> Result<(i64, Index)> {
    if w.0.last() == Some(&Letter::W0) {
        return Err(Error::Inadmissible(format!("{w} ends with w0")));
    }
    let mut s = Vec::new();
    let mut tau = Vec::new();
    let mut e = Vec::new();
    let mut run = 1u32;
    for l in &w.0 {
        match l {
            Letter::W0 => run += 1,
            Letter::W(sg, ep) => {
                s.push(run);
                tau.push(*sg);
                e.push(*ep);
                run = 1;
            }
        }
    }
    let r = s.len();
    // suffix products of the letter parities
    let mut suffix = vec![Parity::Even; r + 1];
    for j in (0..r).rev() {
        suffix[j] = e[j].mul(suffix[j + 1]);
    }
    let mut sign = 1i64;
    for j in 0..r.saturating_sub(1) {
        if tau[j] == Sign::Minus && e[j] == Parity::Odd && suffix[j + 1] == Parity::Odd {
            sign = -sign;
        }
    }
    let comps = (0..r)
        .map(|j| {
            let prev = if j == 0 { Sign::Plus } else { tau[j - 1] };
            Component::new(s[j], tau[j].mul(prev), suffix[j])
        })
        .collect();
    Ok((sign, Index::new(comps)))
}

/// `∫ w = sign · M(i)`.
pub fn q_map(w: &Word) -> Result<(i64, Index)> {
    if !w.is_admissible() {
        return Err(Error::Inadmissible(w.to_string()));
    }
    q_map_any(w)
}

/// Pushes a combination of admissible words through `q`.
pub fn words_to_indices(c: &LinComb<Word>) -> Result<LinComb<Index>> {
    let mut out = LinComb::new();
    for (w, k) in c {
        let (sg, i) = q_map(w)?;
        out.add_term(i, k * BigRational::from_integer(sg.into()));
    }
    Ok(out)
}

fn dual_letter(l: Letter) -> Vec<(i64, Letter)> {
    use Letter::*;
    use Parity::*;
    use Sign::*;
    match l {
        W0 => vec![(1, W(Plus, Odd))],
        W(Plus, Odd) => vec![(1, W0)],
        W(Minus, Odd) => vec![(1, W(Minus, Odd))],
        W(Plus, Even) => vec![(1, W0), (1, W(Plus, Even)), (-1, W(Plus, Odd))],
        W(Minus, Even) => vec![(1, W(Plus, Even)), (-1, W(Plus, Odd)), (-1, W(Minus, Even))],
    }
}

/// Duality: reverse the word and substitute letterwise under `t ↦ (1−t)/(1+t)`.
pub fn dual_word(w: &Word) -> Result<LinComb<Word>> {
    if !w.is_admissible() || !matches!(w.0.last(), Some(Letter::W(_, Parity::Odd))) {
        return Err(Error::Domain(format!("duality needs an admissible word ending in w±1^-1: {w}")));
    }
    let mut acc: Vec<(i64, Vec<Letter>)> = vec![(1, Vec::new())];
    for l in w.0.iter().rev() {
        let subs = dual_letter(*l);
        let mut next = Vec::with_capacity(acc.len() * subs.len());
        for (c, v) in &acc {
            for (d, m) in &subs {
                let mut nv = v.clone();
                nv.push(*m);
                next.push((c * d, nv));
            }
        }
        acc = next;
    }
    Ok(acc
        .into_iter()
        .map(|(c, v)| (Word(v), BigRational::from_integer(c.into())))
        .collect())
}

/// A fourth root of unity `i^k`, stored as `k mod 4`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Root4(pub u8);

impl Root4 {
    pub fn new(k: i64) -> Self {
        Root4(k.rem_euclid(4) as u8)
    }

    pub fn one() -> Self {
        Root4(0)
    }

    pub fn mul(self, o: Root4) -> Root4 {
        Root4((self.0 + o.0) % 4)
    }

    /// `z^n` as a Gaussian integer `(re, im)`.
    pub fn pow(self, n: u64) -> (i64, i64) {
        match (self.0 as u64 * (n % 4)) % 4 {
            0 => (1, 0),
            1 => (0, 1),
            2 => (-1, 0),
            _ => (0, -1),
        }
    }
}

impl fmt::Display for Root4 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self.0 {
            0 => "1",
            1 => "I",
            2 => "-1",
            _ => "-I",
        })
    }
}

impl FromStr for Root4 {
    type Err = Error;
    fn from_str(t: &str) -> Result<Root4> {
        match t.trim() {
            "1" => Ok(Root4(0)),
            "I" | "i" => Ok(Root4(1)),
            "-1" => Ok(Root4(2)),
            "-I" | "-i" => Ok(Root4(3)),
            other => Err(Error::parse(0, format!("not a fourth root of unity: `{other}`"))),
        }
    }
}

/// `Li_k(z) = Σ_{n₁>⋯>n_r>0} Π z_j^{n_j} / n_j^{k_j}` with `z_j ∈ {±1, ±i}`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CmzvIndex {
    pub k: Vec<u32>,
    pub z: Vec<Root4>,
}

impl CmzvIndex {
    pub fn new(k: Vec<u32>, z: Vec<Root4>) -> Self {
        assert_eq!(k.len(), z.len());
        CmzvIndex { k, z }
    }

    pub fn is_admissible(&self) -> bool {
        !(self.k.first() == Some(&1) && self.z.first() == Some(&Root4::one()))
    }

    pub fn weight(&self) -> u32 {
        self.k.iter().sum()
    }

    pub fn depth(&self) -> usize {
        self.k.len()
    }
}

impl fmt::Display for CmzvIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let k: Vec<String> = self.k.iter().map(|x| x.to_string()).collect();
        let z: Vec<String> = self.z.iter().map(|x| x.to_string()).collect();
        write!(f, "Li[{};{}]", k.join(","), z.join(","))
    }
}

impl FromStr for CmzvIndex {
    type Err = Error;
    fn from_str(t: &str) -> Result<CmzvIndex> {
        let body = t
            .trim()
            .strip_prefix("Li[")
            .and_then(|s| s.strip_suffix(']'))
            .ok_or_else(|| Error::parse(0, "expected Li[k..;z..]"))?;
        let (ks, zs) = body.split_once(';').ok_or_else(|| Error::parse(3, "expected `;`"))?;
        let k: Vec<u32> = if ks.trim().is_empty() {
            Vec::new()
        } else {
            ks.split(',')
                .map(|x| x.trim().parse::<u32>().ok().filter(|v| *v > 0))
                .collect::<Option<_>>()
                .ok_or_else(|| Error::parse(3, "bad exponent"))?
        };
        let z: Vec<Root4> = if zs.trim().is_empty() {
            Vec::new()
        } else {
            zs.split(',').map(|x| x.parse()).collect::<Result<_>>()?
        };
        if k.len() != z.len() {
            return Err(Error::parse(0, "exponent and root lists differ in length"));
        }
        Ok(CmzvIndex { k, z })
    }
}

fn gauss(re: i64, im: i64) -> GaussRational {
    Complex::new(
        BigRational::from_integer(re.into()),
        BigRational::from_integer(im.into()),
    )
}

/// Expansion of a form letter over `f_b = dt/(b − t)`, `b = i^a`.
fn letter_fractions(l: Letter) -> Vec<(GaussRational, u8)> {
    use Parity::*;
    use Sign::*;
    match l {
        Letter::W0 => unreachable!(),
        Letter::W(Plus, Odd) => vec![(gauss(1, 0), 0), (gauss(-1, 0), 2)],
        Letter::W(Plus, Even) => vec![(gauss(1, 0), 0), (gauss(1, 0), 2)],
        Letter::W(Minus, Odd) => vec![(gauss(0, -1), 1), (gauss(0, 1), 3)],
        Letter::W(Minus, Even) => vec![(gauss(1, 0), 1), (gauss(1, 0), 3)],
    }
}

/// Writes `∫ w` as a `Q(i)`-combination of level-4 colored values.
pub fn word_to_cmzv(w: &Word) -> Result<LinComb<CmzvIndex, GaussRational>> {
    if !w.is_admissible() {
        return Err(Error::Inadmissible(w.to_string()));
    }
    let mut ks = Vec::new();
    let mut forms = Vec::new();
    let mut run = 1u32;
    for l in &w.0 {
        if *l == Letter::W0 {
            run += 1;
        } else {
            ks.push(run);
            forms.push(letter_fractions(*l));
            run = 1;
        }
    }
    let mut acc: Vec<(GaussRational, Vec<u8>)> = vec![(GaussRational::one(), Vec::new())];
    for f in &forms {
        let mut next = Vec::new();
        for (c, bs) in &acc {
            for (d, b) in f {
                let mut nb = bs.clone();
                nb.push(*b);
                next.push((c * d, nb));
            }
        }
        acc = next;
    }
    let mut out = LinComb::new();
    for (c, bs) in acc {
        let z = bs
            .iter()
            .enumerate()
            .map(|(j, &b)| {
                let prev = if j == 0 { 0 } else { bs[j - 1] as i64 };
                Root4::new(prev - b as i64)
            })
            .collect();
        if !c.is_zero() {
            out.add_term(CmzvIndex::new(ks.clone(), z), c);
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(t: &str) -> Word {
        t.parse().unwrap()
    }

    fn m(t: &str) -> Index {
        t.parse().unwrap()
    }

    #[test]
    fn p_map_examples() {
        assert_eq!(p_map(&m("M(c3,b2)")).unwrap(), (1, w("w0 w0 w+1^-1 w0 w-1^+1")));
        assert_eq!(
            p_map(&m("M(b2,3,cb4)")).unwrap(),
            (-1, w("w0 w-1^+1 w0 w0 w-1^-1 w0 w0 w0 w+1^-1"))
        );
        assert_eq!(p_map(&m("M(cb1)")).unwrap(), (1, w("w-1^-1")));
        assert!(p_map(&m("M(1,2)")).is_err());
        assert!(p_map(&Index::empty()).is_err());
    }

    #[test]
    fn q_map_examples() {
        assert_eq!(q_map(&w("w0 w0 w+1^-1 w0 w-1^+1")).unwrap(), (1, m("M(c3,b2)")));
        assert_eq!(q_map(&w("w-1^-1")).unwrap(), (1, m("M(cb1)")));
        let word = w("w0 w-1^+1 w-1^-1 w-1^-1 w0 w+1^+1");
        let (sg, i) = q_map(&word).unwrap();
        assert_eq!(sg, -1);
        assert_eq!(i, Index::from_triples(&[(2, -1, 1), (1, 1, 1), (1, 1, -1), (2, -1, 1)]));
        assert!(q_map(&w("w+1^-1 w0 w-1^-1")).is_err());
        assert!(q_map(&w("w-1^-1 w0")).is_err());
    }

    #[test]
    fn tokens_round_trip() {
        for l in Letter::ALL {
            assert_eq!(l.to_string().parse::<Letter>().unwrap(), l);
        }
        assert!("w+2^-1".parse::<Letter>().is_err());
        match "w0 wx".parse::<Word>() {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 3),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn self_dual_word() {
        let x = w("w0 w+1^-1");
        assert_eq!(dual_word(&x).unwrap(), LinComb::basis(x));
        assert!(dual_word(&w("w0 w-1^+1")).is_err());
    }

    #[test]
    fn duality_example_three_terms() {
        let (sg, word) = p_map(&m("M(2,c1,cb2)")).unwrap();
        assert_eq!(sg, 1);
        let rhs = words_to_indices(&dual_word(&word).unwrap()).unwrap();
        let mut expect = LinComb::new();
        for t in ["M(cb1,b1,c3)", "M(cb1,b1,c1,c2)", "M(b1,cb1,1,c2)"] {
            expect.add_term(m(t), BigRational::one());
        }
        assert_eq!(rhs, expect);
    }

    #[test]
    fn cmzv_examples() {
        let c = word_to_cmzv(&w("w0 w+1^-1")).unwrap();
        assert_eq!(c.to_string(), "1*Li[2;1] + -1*Li[2;-1]");
        let d = word_to_cmzv(&w("w-1^-1")).unwrap();
        assert_eq!(d.to_string(), "I*Li[1;I] + -I*Li[1;-I]");
        let e: CmzvIndex = "Li[2,1;-1,I]".parse().unwrap();
        assert_eq!(e.to_string(), "Li[2,1;-1,I]");
    }
}
