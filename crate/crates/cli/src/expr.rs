//! The expression mini-grammar.
//!
//! ```text
//! expr   := term (('+' | '-') term)*
//! term   := unary ('*' unary)*
//! unary  := '-' unary | atom
//! atom   := int ('/' int)? | generator | '(' expr ')'
//! ```
//!
//! Generators carry a 1-based index: `Xi` (also `Xhati`) for `x̂ᵢ`, `xi` for the
//! commuting `xᵢ`, `Di` for `∂ⁱ`, `dxi` and `dXi` for `dxᵢ` and `dx̂ᵢ`.
//! Whitespace is ignored.

use num_bigint::BigInt;
use twisted_calculus::Rational;

use crate::error::{CliError, CliResult};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GenKind {
    /// `x̂ᵢ`
    UHat,
    /// `xᵢ`
    Coord,
    /// `∂ⁱ`
    Partial,
    /// `dxᵢ`
    Dx,
    /// `dx̂ᵢ`
    DxHat,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Num(Rational),
    /// Kind, 0-based index, source position.
    Gen(GenKind, usize, usize),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Neg(Box<Expr>),
}

impl Expr {
    /// Generator kinds that occur, for choosing where to evaluate.
    pub fn kinds(&self) -> Vec<GenKind> {
        let mut out = Vec::new();
        self.collect_kinds(&mut out);
        out.sort();
        out.dedup();
        out
    }

    fn collect_kinds(&self, out: &mut Vec<GenKind>) {
        match self {
            Expr::Num(_) => {}
            Expr::Gen(k, _, _) => out.push(*k),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
                a.collect_kinds(out);
                b.collect_kinds(out);
            }
            Expr::Neg(a) => a.collect_kinds(out),
        }
    }

    pub fn eval<A: Algebra>(&self, alg: &A) -> CliResult<A::Elem> {
        Ok(match self {
            Expr::Num(c) => alg.constant(c.clone()),
            Expr::Gen(k, i, pos) => alg.generator(*k, *i, *pos)?,
            Expr::Add(a, b) => alg.add(&a.eval(alg)?, &b.eval(alg)?),
            Expr::Sub(a, b) => alg.sub(&a.eval(alg)?, &b.eval(alg)?),
            Expr::Mul(a, b) => alg.mul(&a.eval(alg)?, &b.eval(alg)?)?,
            Expr::Neg(a) => alg.neg(&a.eval(alg)?),
        })
    }
}

/// Where an expression is evaluated.
pub trait Algebra {
    type Elem;
    fn constant(&self, c: Rational) -> Self::Elem;
    fn generator(&self, kind: GenKind, index: usize, pos: usize) -> CliResult<Self::Elem>;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> CliResult<Self::Elem>;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Gen(GenKind, usize),
    Plus,
    Minus,
    Star,
    Slash,
    LParen,
    RParen,
}

fn lex(src: &str) -> CliResult<Vec<(Tok, usize)>> {
    let chars: Vec<(usize, char)> = src.char_indices().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, ch) = chars[k];
        if ch.is_whitespace() {
            k += 1;
            continue;
        }
        let single = match ch {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, pos));
            k += 1;
            continue;
        }
        if ch.is_ascii_digit() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[start..k].iter().map(|c| c.1).collect();
            out.push((Tok::Int(digits.parse().expect("ascii digits")), pos));
            continue;
        }
        if ch.is_ascii_alphabetic() {
            let start = k;
            while k < chars.len() && chars[k].1.is_ascii_alphabetic() {
                k += 1;
            }
            let name: String = chars[start..k].iter().map(|c| c.1).collect();
            let kind = match name.as_str() {
                "X" | "Xhat" => GenKind::UHat,
                "x" => GenKind::Coord,
                "D" => GenKind::Partial,
                "dx" => GenKind::Dx,
                "dX" => GenKind::DxHat,
                _ => return Err(CliError::parse(pos, format!("unknown generator {name:?}"))),
            };
            let dstart = k;
            while k < chars.len() && chars[k].1.is_ascii_digit() {
                k += 1;
            }
            let digits: String = chars[dstart..k].iter().map(|c| c.1).collect();
            let index: usize = digits
                .parse()
                .map_err(|_| CliError::parse(pos, format!("generator {name:?} needs a 1-based index")))?;
            if index == 0 {
                return Err(CliError::parse(pos, "generator indices start at 1"));
            }
            out.push((Tok::Gen(kind, index - 1), pos));
            continue;
        }
        return Err(CliError::parse(pos, format!("unexpected character {ch:?}")));
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    at: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.0)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.1)
    }

    fn expr(&mut self) -> CliResult<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.at += 1;
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Some(Tok::Minus) => {
                    self.at += 1;
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> CliResult<Expr> {
        let mut lhs = self.unary()?;
        while self.peek() == Some(&Tok::Star) {
            self.at += 1;
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> CliResult<Expr> {
        if self.peek() == Some(&Tok::Minus) {
            self.at += 1;
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.atom()
    }

    fn atom(&mut self) -> CliResult<Expr> {
        let pos = self.pos();
        let Some((tok, _)) = self.toks.get(self.at).cloned() else {
            return Err(CliError::parse(pos, "unexpected end of input"));
        };
        self.at += 1;
        match tok {
            Tok::Int(p) => {
                if self.peek() == Some(&Tok::Slash) {
                    self.at += 1;
                    let qpos = self.pos();
                    match self.toks.get(self.at).cloned() {
                        Some((Tok::Int(q), _)) if q != BigInt::from(0) => {
                            self.at += 1;
                            Ok(Expr::Num(Rational::new(p, q)))
                        }
                        Some((Tok::Int(_), _)) => Err(CliError::parse(qpos, "zero denominator")),
                        _ => Err(CliError::parse(qpos, "expected a denominator")),
                    }
                } else {
                    Ok(Expr::Num(Rational::from_integer(p)))
                }
            }
            Tok::Gen(k, i) => Ok(Expr::Gen(k, i, pos)),
            Tok::LParen => {
                let e = self.expr()?;
                if self.peek() != Some(&Tok::RParen) {
                    return Err(CliError::parse(self.pos(), "expected ')'"));
                }
                self.at += 1;
                Ok(e)
            }
            _ => Err(CliError::parse(pos, "expected a number, generator or '('")),
        }
    }
}

pub fn parse(src: &str) -> CliResult<Expr> {
    let mut p = Parser { toks: lex(src)?, at: 0, end: src.len() };
    let e = p.expr()?;
    if p.at < p.toks.len() {
        return Err(CliError::parse(p.pos(), "unexpected trailing input"));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn column(src: &str) -> usize {
        match parse(src) {
            Err(CliError::Parse { column, .. }) => column,
            other => panic!("expected a parse error, got {other:?}"),
        }
    }

    #[test]
    fn precedence_and_kinds() {
        let e = parse(" X1*X2 + 1/2 * dx3 - -D1").unwrap();
        assert_eq!(e.kinds(), vec![GenKind::UHat, GenKind::Partial, GenKind::Dx]);
        assert!(matches!(e, Expr::Sub(_, _)));
        assert_eq!(parse("Xhat2").unwrap(), Expr::Gen(GenKind::UHat, 1, 0));
        assert_eq!(parse("dX3").unwrap(), Expr::Gen(GenKind::DxHat, 2, 0));
    }

    #[test]
    fn error_positions() {
        assert_eq!(column("X1 * "), 6);
        assert_eq!(column("X1 + y2"), 6);
        assert_eq!(column("(X1"), 4);
        assert_eq!(column("X0"), 1);
        assert_eq!(column("1/0"), 3);
        assert_eq!(column("X1 X2"), 4);
        assert_eq!(column("X"), 1);
    }
}
