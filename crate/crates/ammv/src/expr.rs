//! Linear expressions in constants times index values, e.g.
//! `-1/12*pi^2*M_{1,-1}^{1,-1}(2,1) + 7/4*G*zeta(3)`.
//!
//! Symbols: `M(...)`, `M_{σ}^{ε}(s)` (either decoration order), family values
//! `Z(...)`, `t(...)`, `T(...)`, `S(...)` and `tt(...) = 2^r t(...)`.
//! Constants: `pi`, `log2`, `G`, `zeta(n)`, `beta(n)`, `Lin(1/2)`, `ImLin((1+i)/2)`.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::index::{parse_symbol, specialize, FamilyIndex, Index};
use crate::lincomb::LinComb;
use crate::monomial::{Const, Monomial};
use crate::mp::{with_precision, Mp};
use crate::numerics::constants::monomial_value;
use crate::numerics::{Evaluator, PrecReal};
use crate::regularization::Term;
use crate::scalar::{pow2, Real};

pub type Expr = LinComb<Term>;

struct Parser<'a> {
    s: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn rest(&self) -> &'a str {
        &self.s[self.pos..]
    }

    fn ws(&mut self) {
        while self.rest().starts_with(char::is_whitespace) {
            self.pos += self.rest().chars().next().map_or(1, char::len_utf8);
        }
    }

    fn eat(&mut self, t: &str) -> bool {
        self.ws();
        if self.rest().starts_with(t) {
            self.pos += t.len();
            true
        } else {
            false
        }
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Parse { pos: self.pos, msg: msg.into() })
    }

    fn int(&mut self) -> Result<BigInt> {
        self.ws();
        let n = self.rest().bytes().take_while(u8::is_ascii_digit).count();
        if n == 0 {
            return self.err("expected an integer");
        }
        let v = self.rest()[..n].parse().expect("digits");
        self.pos += n;
        Ok(v)
    }

    fn small(&mut self) -> Result<u32> {
        let p = self.pos;
        self.int()?.to_u32().filter(|v| *v > 0).ok_or(Error::Parse { pos: p, msg: "expected a positive integer".into() })
    }

    fn signed_list(&mut self) -> Result<Vec<i64>> {
        if !self.eat("{") {
            return self.err("expected `{`");
        }
        let mut out = Vec::new();
        loop {
            let neg = self.eat("-");
            let p = self.pos;
            let v = self.int()?;
            if v != BigInt::one() {
                return Err(Error::Parse { pos: p, msg: "decorations are ±1".into() });
            }
            out.push(if neg { -1 } else { 1 });
            if self.eat("}") {
                return Ok(out);
            }
            if !self.eat(",") {
                return self.err("expected `,` or `}`");
            }
        }
    }

    /// Text up to and including the parenthesis matching the one at `pos`.
    fn call_text(&mut self, start: usize) -> Result<&'a str> {
        let mut depth = 0;
        for (k, ch) in self.rest().char_indices() {
            match ch {
                '(' => depth += 1,
                ')' => {
                    depth -= 1;
                    if depth == 0 {
                        let end = self.pos + k + 1;
                        self.pos = end;
                        return Ok(&self.s[start..end]);
                    }
                }
                _ => {}
            }
        }
        self.err("unbalanced parentheses")
    }

    fn script_m(&mut self) -> Result<Index> {
        let (mut sigma, mut eps) = (None, None);
        loop {
            if self.eat("_") {
                sigma = Some(self.signed_list()?);
            } else if self.eat("^") {
                eps = Some(self.signed_list()?);
            } else {
                break;
            }
        }
        let (Some(sigma), Some(eps)) = (sigma, eps) else { return self.err("need both `_{σ}` and `^{ε}`") };
        if !self.eat("(") {
            return self.err("expected `(`");
        }
        let mut s = Vec::new();
        loop {
            s.push(self.small()?);
            if self.eat(")") {
                break;
            }
            if !self.eat(",") {
                return self.err("expected `,` or `)`");
            }
        }
        if s.len() != sigma.len() || s.len() != eps.len() {
            return self.err("decoration lengths differ from depth");
        }
        let t: Vec<(u32, i64, i64)> = (0..s.len()).map(|k| (s[k], sigma[k], eps[k])).collect();
        Ok(Index::from_triples(&t))
    }

    fn constant(&mut self) -> Result<Option<Const>> {
        self.ws();
        let r = self.rest();
        let ident = |t: &str| r.starts_with(t) && !r[t.len()..].starts_with(|c: char| c.is_ascii_alphanumeric());
        if ident("pi") {
            self.pos += 2;
            return Ok(Some(Const::Pi));
        }
        if ident("log2") {
            self.pos += 4;
            return Ok(Some(Const::Log2));
        }
        if ident("G") {
            self.pos += 1;
            return Ok(Some(Const::Beta(2)));
        }
        for (name, f) in [("zeta(", Const::Zeta as fn(u32) -> Const), ("beta(", Const::Beta)] {
            if r.starts_with(name) {
                self.pos += name.len();
                let n = self.small()?;
                if !self.eat(")") {
                    return self.err("expected `)`");
                }
                return Ok(Some(f(n)));
            }
        }
        for (pre, arg, f) in [
            ("ImLi", "((1+i)/2)", Const::ImLiHalfI as fn(u32) -> Const),
            ("Li", "(1/2)", Const::LiHalf),
        ] {
            if r.starts_with(pre) && r[pre.len()..].starts_with(|c: char| c.is_ascii_digit()) {
                self.pos += pre.len();
                let n = self.small()?;
                if !self.eat(arg) {
                    return self.err(format!("expected `{arg}`"));
                }
                return Ok(Some(f(n)));
            }
        }
        Ok(None)
    }

    /// A symbol with its rational prefactor.
    fn symbol(&mut self) -> Result<Option<(BigRational, Index)>> {
        self.ws();
        let start = self.pos;
        let r = self.rest();
        if r.starts_with("M_") || r.starts_with("M^") {
            self.pos += 1;
            return Ok(Some((BigRational::one(), self.script_m()?)));
        }
        if r.starts_with("tt(") {
            self.pos += 1;
            let text = self.call_text(start + 1)?;
            let f: FamilyIndex = text.parse().map_err(|e| shift(e, start + 1))?;
            let (c, i) = specialize(&f)?;
            return Ok(Some((c * pow2(f.depth() as i64), i)));
        }
        for p in ["M(", "Z(", "t(", "T(", "S("] {
            if r.starts_with(p) {
                let text = self.call_text(start)?;
                return parse_symbol(text).map(Some).map_err(|e| shift(e, start));
            }
        }
        Ok(None)
    }

    fn term(&mut self) -> Result<(BigRational, Term)> {
        let mut coeff = BigRational::one();
        let mut mono = Monomial::one();
        let mut index: Option<Index> = None;
        loop {
            self.ws();
            if self.rest().starts_with(|c: char| c.is_ascii_digit()) {
                let n = self.int()?;
                let d = if self.eat("/") { self.int()? } else { BigInt::one() };
                if d.is_zero() {
                    return self.err("zero denominator");
                }
                coeff *= BigRational::new(n, d);
            } else if let Some(c) = self.constant()? {
                let e = if self.eat("^") { self.small()? } else { 1 };
                mono = mono.mul(&Monomial::pow(c, e));
            } else if let Some((c, i)) = self.symbol()? {
                if index.is_some() {
                    return self.err("products of two values are not linear");
                }
                coeff *= c;
                index = Some(i);
            } else if self.eat("(") {
                return self.err("parenthesized groups are not supported");
            } else {
                return self.err("expected a number, constant or value");
            }
            if !self.eat("*") {
                break;
            }
        }
        Ok((coeff, Term { c: mono, i: index.unwrap_or_else(Index::empty) }))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut out = Expr::new();
        let mut neg = if self.eat("-") {
            true
        } else {
            self.eat("+");
            false
        };
        loop {
            let (c, t) = self.term()?;
            out.add_term(t, if neg { -c } else { c });
            if self.eat("+") {
                neg = false;
            } else if self.eat("-") {
                neg = true;
            } else {
                break;
            }
        }
        self.ws();
        if self.pos != self.s.len() {
            return self.err("trailing input");
        }
        Ok(out)
    }
}

fn shift(e: Error, by: usize) -> Error {
    match e {
        Error::Parse { pos, msg } => Error::Parse { pos: pos + by, msg },
        other => other,
    }
}

pub fn parse_expr(text: &str) -> Result<Expr> {
    Parser { s: text, pos: 0 }.expr()
}

/// Value of an expression; the error bound sums the index errors.
pub fn eval_expr(ev: &Evaluator, e: &Expr, digits: u32) -> Result<PrecReal> {
    let bits = ev.bits(digits);
    let mut total = with_precision(bits, Mp::zero);
    let mut err = 0.0;
    for (t, k) in e {
        let v = ev.eval_index(&t.i, digits)?;
        let m = with_precision(bits, || Mp::from_rational(k) * monomial_value(&t.c));
        err += v.err * m.abs().to_f64();
        total += &(m * v.value);
    }
    Ok(PrecReal { value: total, err, digits })
}

/// `|lhs − rhs|` with both sides parsed from text.
pub fn identity_residual(ev: &Evaluator, lhs: &str, rhs: &str, digits: u32) -> Result<(PrecReal, f64)> {
    let d = parse_expr(lhs)? - parse_expr(rhs)?;
    let v = eval_expr(ev, &d, digits)?;
    let r = v.value.abs().to_f64();
    Ok((v, r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::default_evaluator;

    #[test]
    fn parses_mixed_terms() {
        let e = parse_expr("-1/12*pi^2*M_{1,-1}^{1,-1}(2,1) + 7/4*G*zeta(3) - M(b2)").unwrap();
        assert_eq!(e.len(), 3);
        let m = parse_expr("M_{-1,1,-1}^{-1,1,1}(1,2,2)").unwrap();
        let i: Index = "M(cb1,2,b2)".parse().unwrap();
        assert_eq!(m, LinComb::basis(Term::index(i)));
        let a = parse_expr("M^{-1,1,1}_{-1,1,-1}(1,2,2)").unwrap();
        assert_eq!(a, m);
    }

    #[test]
    fn tt_scales_by_two_power() {
        let e = parse_expr("tt(b2,b1)").unwrap();
        let (t, c) = e.iter().next().unwrap();
        assert_eq!(t.i, "M(cb2,cb1)".parse().unwrap());
        assert_eq!(*c, BigRational::one());
    }

    #[test]
    fn reports_positions() {
        match parse_expr("pi + M(2,") {
            Err(Error::Parse { pos, .. }) => assert!(pos >= 5),
            other => panic!("{other:?}"),
        }
        assert!(parse_expr("M(2)*M(3)").is_err());
        assert!(parse_expr("Li4(1/3)").is_err());
    }

    #[test]
    fn classical_values() {
        let ev = default_evaluator();
        let (_, r) = identity_residual(ev, "S(b1,1)", "-2*G + pi*log2", 20).unwrap();
        assert!(r < 1e-15, "{r:e}");
        let (_, r) = identity_residual(ev, "T(b1,2)", "G*pi - 7/2*zeta(3)", 20).unwrap();
        assert!(r < 1e-15, "{r:e}");
    }

    #[test]
    fn polylog_constants() {
        let ev = default_evaluator();
        // Li2(1/2) = pi^2/12 - log^2 2 / 2
        let (_, r) = identity_residual(ev, "Li2(1/2)", "1/12*pi^2 - 1/2*log2^2", 25).unwrap();
        assert!(r < 1e-20, "{r:e}");
        let d = eval_expr(ev, &parse_expr("ImLi3((1+i)/2)").unwrap(), 20).unwrap();
        assert!((d.to_f64() - 0.570_077_407_088_768_978).abs() < 1e-15, "{}", d.to_f64());
    }
}
