//! Polynomial expressions.
//!
//! ```text
//! expr   := ('+'|'-')? term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := base ('^' nonneg-int)?
//! base   := int ('/' int)? | variable | '(' expr ')'
//! ```
//!
//! Variables are `x`, `y` (two variables) or `x1` … `x8` (as many variables as
//! the largest index). The two naming schemes cannot be mixed. Whitespace is
//! ignored; multiplication must be explicit.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Rational, SparsePoly, MAX_VARS};

#[derive(Clone, Copy, Debug)]
pub struct ParseLimits {
    pub max_exponent: u32,
    /// Cap on the bit length of any coefficient during expansion.
    pub max_bits: u64,
}

impl Default for ParseLimits {
    fn default() -> Self {
        ParseLimits {
            max_exponent: 1_000_000,
            max_bits: 1_000_000,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Int(BigInt),
    /// 0-based variable index plus the scheme it was written in.
    Var {
        index: usize,
        indexed: bool,
    },
    Plus,
    Minus,
    Star,
    Caret,
    Slash,
    LParen,
    RParen,
}

fn err(offset: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        offset,
        message: message.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let b = bytes[i];
        let start = i;
        match b {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((Tok::Plus, start)),
            b'-' => out.push((Tok::Minus, start)),
            b'*' => out.push((Tok::Star, start)),
            b'^' => out.push((Tok::Caret, start)),
            b'/' => out.push((Tok::Slash, start)),
            b'(' => out.push((Tok::LParen, start)),
            b')' => out.push((Tok::RParen, start)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let n: BigInt = text[start..i].parse().expect("digits");
                out.push((Tok::Int(n), start));
                continue;
            }
            b'x' | b'y' => {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let tok = if ds == i {
                    Tok::Var {
                        index: (b - b'x') as usize,
                        indexed: false,
                    }
                } else if b == b'y' {
                    return Err(err(start, "indexed variables are written x1, x2, ..."));
                } else {
                    let k: usize = text[ds..i]
                        .parse()
                        .map_err(|_| err(ds, "variable index too large"))?;
                    if k == 0 || k > MAX_VARS {
                        return Err(err(
                            ds,
                            format!("variable index must be between 1 and {MAX_VARS}"),
                        ));
                    }
                    Tok::Var {
                        index: k - 1,
                        indexed: true,
                    }
                };
                if i < bytes.len() && (bytes[i].is_ascii_alphabetic() || bytes[i] == b'_') {
                    return Err(err(start, "unknown identifier"));
                }
                out.push((tok, start));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap();
                return Err(err(start, format!("unexpected character '{ch}'")));
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    end: usize,
    nvars: usize,
    limits: ParseLimits,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn offset(&self) -> usize {
        self.toks.get(self.pos).map(|(_, o)| *o).unwrap_or(self.end)
    }

    fn check_size(&self, p: SparsePoly, at: usize) -> Result<SparsePoly> {
        if p.max_coefficient_bits() > self.limits.max_bits {
            return Err(err(
                at,
                format!(
                    "coefficient exceeds {} bits during expansion",
                    self.limits.max_bits
                ),
            ));
        }
        Ok(p)
    }

    fn expr(&mut self) -> Result<SparsePoly> {
        let negate = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                true
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                false
            }
            _ => false,
        };
        let mut acc = self.term()?;
        if negate {
            acc = -acc;
        }
        loop {
            let at = self.offset();
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.check_size(&acc + &t, at)?;
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = self.check_size(&acc - &t, at)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<SparsePoly> {
        let mut acc = self.factor()?;
        while let Some(Tok::Star) = self.peek() {
            let at = self.offset();
            self.pos += 1;
            let f = self.factor()?;
            let prod = acc.checked_mul(&f).map_err(|e| err(at, e.to_string()))?;
            acc = self.check_size(prod, at)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<SparsePoly> {
        let base = self.base()?;
        if let Some(Tok::Caret) = self.peek() {
            let at = self.offset();
            self.pos += 1;
            let eoff = self.offset();
            let k = match self.peek() {
                Some(Tok::Int(k)) => k.clone(),
                _ => return Err(err(eoff, "expected a non-negative integer exponent")),
            };
            self.pos += 1;
            let k: u32 = u32::try_from(&k)
                .ok()
                .filter(|&k| k <= self.limits.max_exponent)
                .ok_or_else(|| {
                    err(
                        eoff,
                        format!("exponent exceeds the limit of {}", self.limits.max_exponent),
                    )
                })?;
            return self.power(base, k, at);
        }
        Ok(base)
    }

    /// Square-and-multiply with the size check after every product.
    fn power(&self, base: SparsePoly, mut k: u32, at: usize) -> Result<SparsePoly> {
        let mut acc = SparsePoly::one(self.nvars);
        let mut b = base;
        while k > 0 {
            if k & 1 == 1 {
                let p = acc.checked_mul(&b).map_err(|e| err(at, e.to_string()))?;
                acc = self.check_size(p, at)?;
            }
            k >>= 1;
            if k > 0 {
                let p = b.checked_mul(&b).map_err(|e| err(at, e.to_string()))?;
                b = self.check_size(p, at)?;
            }
        }
        Ok(acc)
    }

    fn base(&mut self) -> Result<SparsePoly> {
        let at = self.offset();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                let mut value = Rational::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.pos += 1;
                    let doff = self.offset();
                    match self.peek().cloned() {
                        Some(Tok::Int(d)) if !d.is_zero() => {
                            self.pos += 1;
                            value /= Rational::from_integer(d);
                        }
                        Some(Tok::Int(_)) => return Err(err(doff, "zero denominator")),
                        _ => return Err(err(doff, "expected an integer denominator")),
                    }
                }
                Ok(SparsePoly::constant(self.nvars, value))
            }
            Some(Tok::Var { index, .. }) => {
                self.pos += 1;
                Ok(SparsePoly::var(self.nvars, index))
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let e = self.expr()?;
                match self.peek() {
                    Some(Tok::RParen) => {
                        self.pos += 1;
                        Ok(e)
                    }
                    _ => Err(err(self.offset(), "expected ')'")),
                }
            }
            Some(_) => Err(err(at, "expected a number, variable or '('")),
            None => Err(err(at, "unexpected end of input")),
        }
    }
}

/// Parses with the default limits.
pub fn parse(text: &str) -> Result<SparsePoly> {
    parse_with(text, ParseLimits::default())
}

pub fn parse_with(text: &str, limits: ParseLimits) -> Result<SparsePoly> {
    let toks = lex(text)?;
    let mut plain = None;
    let mut indexed = None;
    let mut nvars = 2;
    for (t, off) in &toks {
        if let Tok::Var { index, indexed: ix } = t {
            if *ix {
                indexed.get_or_insert(*off);
                nvars = nvars.max(index + 1);
            } else {
                plain.get_or_insert(*off);
            }
        }
    }
    if let (Some(a), Some(b)) = (plain, indexed) {
        return Err(err(
            a.max(b),
            "cannot mix x, y with indexed variables x1, x2, ...",
        ));
    }
    if toks.is_empty() {
        return Err(err(0, "empty expression"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        end: text.len(),
        nvars,
        limits,
    };
    let out = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(err(p.offset(), "unexpected token"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::rat;

    #[test]
    fn nested_products() {
        let f = parse("x^2*y^2*(x+y)^2 + x^9 + y^7").unwrap();
        assert_eq!(f.nvars(), 2);
        assert_eq!(f.len(), 5);
        assert_eq!(f.coeff(&[3, 3]), rat(2, 1));
        assert_eq!(f.coeff(&[9, 0]), rat(1, 1));
    }

    #[test]
    fn zero_and_expansion() {
        assert!(parse("0").unwrap().is_zero());
        let p = parse("(x+y)*(x-y)").unwrap();
        assert_eq!(p, parse("x^2 - y^2").unwrap());
        assert_eq!(
            parse(" - ( x + 1/2 ) ").unwrap(),
            parse("-x - 1/2").unwrap()
        );
        assert_eq!(parse("3/6*x").unwrap().coeff(&[1, 0]), rat(1, 2));
    }

    #[test]
    fn indexed_variables() {
        let p = parse("x1^2 + x2^2 + x4").unwrap();
        assert_eq!(p.nvars(), 4);
        assert!(parse("x + x1").is_err());
    }

    #[test]
    fn error_offsets() {
        let e = parse("x + * y").unwrap_err();
        assert_eq!(
            e,
            Error::Parse {
                offset: 4,
                message: "expected a number, variable or '('".into()
            }
        );
        assert!(matches!(parse("x y"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse("(x+y"), Err(Error::Parse { offset: 4, .. })));
        assert!(matches!(parse("x^-1"), Err(Error::Parse { offset: 2, .. })));
        assert!(matches!(parse("z"), Err(Error::Parse { offset: 0, .. })));
        assert!(matches!(
            parse("x^1000001"),
            Err(Error::Parse { offset: 2, .. })
        ));
        assert!(matches!(parse("1/0"), Err(Error::Parse { .. })));
        assert!(matches!(parse(""), Err(Error::Parse { offset: 0, .. })));
    }

    #[test]
    fn coefficient_cap() {
        let limits = ParseLimits {
            max_exponent: 1_000_000,
            max_bits: 64,
        };
        assert!(parse_with("(x+y)^200", limits).is_err());
        assert!(parse_with("(x+y)^20", limits).is_ok());
    }
}
