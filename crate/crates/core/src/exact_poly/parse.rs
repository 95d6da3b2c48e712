//! Recursive-descent parser for univariate polynomial expressions.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = factor { ["*" | "/"] factor } ;      (* juxtaposition multiplies *)
//! factor  = ("+" | "-") factor | power ;
//! power   = atom [ "^" digits ] ;
//! atom    = number | ident | "(" expr ")" ;
//! number  = digits [ "." digits ] ;
//! ident   = letter { letter | digit | "_" } ;
//! ```
//!
//! Juxtaposition is only accepted before an identifier or a parenthesis,
//! so `2x` and `3(x+1)` parse while `2 3` does not. The divisor of `/`
//! must be a nonzero constant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use thiserror::Error;

use super::{ExactRat, UniPoly};

const MAX_EXPONENT: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("expression mixes variables {0} and {1}")]
    MultiVariable(String, String),
    #[error("not a polynomial with rational coefficients: {0}")]
    NonRationalCoefficient(String),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(ExactRat),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn syntax(pos: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        pos,
        msg: msg.into(),
    }
}

fn lex(text: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let (pos, c) = chars[i];
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' | '\u{2212}' => Some(Tok::Minus),
            '*' | '\u{00b7}' | '\u{00d7}' => Some(Tok::Star),
            '/' => Some(Tok::Slash),
            '^' => Some(Tok::Caret),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push((pos, t));
            i += 1;
        } else if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].1.is_ascii_digit() {
                i += 1;
            }
            let int_part: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            let mut value = BigRational::from_integer(int_part.parse::<BigInt>().unwrap());
            if i < chars.len() && chars[i].1 == '.' {
                i += 1;
                let fs = i;
                while i < chars.len() && chars[i].1.is_ascii_digit() {
                    i += 1;
                }
                if fs == i {
                    return Err(syntax(chars[fs - 1].0, "digits expected after '.'"));
                }
                let frac: String = chars[fs..i].iter().map(|&(_, c)| c).collect();
                let num: BigInt = frac.parse().unwrap();
                let den = num_traits::pow(BigInt::from(10), i - fs);
                value += BigRational::new(num, den);
            }
            out.push((pos, Tok::Num(value)));
        } else if c.is_alphabetic() {
            let start = i;
            while i < chars.len() && (chars[i].1.is_alphanumeric() || chars[i].1 == '_') {
                i += 1;
            }
            let name: String = chars[start..i].iter().map(|&(_, c)| c).collect();
            out.push((pos, Tok::Ident(name)));
        } else {
            return Err(syntax(pos, format!("unexpected character '{c}'")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
    var: Option<String>,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|(_, t)| t)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.at).map(|(_, t)| t.clone());
        self.at += 1;
        t
    }

    fn lift(&self, r: Result<UniPoly, super::PolyError>) -> Result<UniPoly, ParseError> {
        // Variables are unified at the identifier, so ring ops cannot clash.
        r.map_err(|e| syntax(self.pos(), e.to_string()))
    }

    fn expr(&mut self) -> Result<UniPoly, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.lift(acc.try_add(&rhs))?;
                }
                Some(Tok::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    acc = self.lift(acc.try_sub(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<UniPoly, ParseError> {
        let mut acc = self.factor()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    let rhs = self.factor()?;
                    acc = self.lift(acc.try_mul(&rhs))?;
                }
                Some(Tok::Slash) => {
                    self.bump();
                    let pos = self.pos();
                    let rhs = self.factor()?;
                    if !rhs.is_constant() {
                        return Err(ParseError::NonRationalCoefficient(
                            "division by a non-constant expression".into(),
                        ));
                    }
                    if rhs.is_zero() {
                        return Err(syntax(pos, "division by zero"));
                    }
                    acc = acc.scale(&rhs.coeffs()[0].recip());
                }
                Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    let rhs = self.power()?;
                    acc = self.lift(acc.try_mul(&rhs))?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn factor(&mut self) -> Result<UniPoly, ParseError> {
        match self.peek() {
            Some(Tok::Minus) => {
                self.bump();
                Ok(-&self.factor()?)
            }
            Some(Tok::Plus) => {
                self.bump();
                self.factor()
            }
            _ => self.power(),
        }
    }

    fn power(&mut self) -> Result<UniPoly, ParseError> {
        let base = self.atom()?;
        if self.peek() != Some(&Tok::Caret) {
            return Ok(base);
        }
        self.bump();
        let pos = self.pos();
        let e = match self.bump() {
            Some(Tok::Num(n)) if n.is_integer() => n.to_integer(),
            Some(Tok::Num(_)) => {
                return Err(ParseError::NonRationalCoefficient(
                    "fractional exponent".into(),
                ))
            }
            Some(Tok::Minus) => {
                return Err(ParseError::NonRationalCoefficient(
                    "negative exponent".into(),
                ))
            }
            _ => {
                return Err(syntax(
                    pos,
                    "exponent must be a nonnegative integer literal",
                ))
            }
        };
        let e: u32 = u32::try_from(&e)
            .ok()
            .filter(|&e| e <= MAX_EXPONENT)
            .ok_or_else(|| syntax(pos, format!("exponent exceeds {MAX_EXPONENT}")))?;
        if self.peek() == Some(&Tok::Caret) {
            return Err(syntax(self.pos(), "chained exponents need parentheses"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<UniPoly, ParseError> {
        let pos = self.pos();
        match self.bump() {
            Some(Tok::Num(n)) => Ok(UniPoly::constant(n)),
            Some(Tok::Ident(name)) => {
                match &self.var {
                    Some(v) if *v != name => {
                        return Err(ParseError::MultiVariable(v.clone(), name));
                    }
                    _ => self.var = Some(name.clone()),
                }
                Ok(UniPoly::new(
                    Some(&name),
                    vec![ExactRat::zero(), ExactRat::one()],
                ))
            }
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(syntax(pos, "unclosed parenthesis")),
                }
            }
            Some(t) => Err(syntax(pos, format!("unexpected token {t:?}"))),
            None => Err(syntax(pos, "unexpected end of input")),
        }
    }
}

/// Parses a univariate polynomial with rational coefficients.
pub fn parse_poly(text: &str) -> Result<UniPoly, ParseError> {
    let toks = lex(text)?;
    if toks.is_empty() {
        return Err(syntax(0, "empty expression"));
    }
    let mut parser = Parser {
        toks,
        at: 0,
        end: text.len(),
        var: None,
    };
    let poly = parser.expr()?;
    if parser.at < parser.toks.len() {
        return Err(syntax(parser.pos(), "trailing input"));
    }
    // Every subterm carries the variable once seen; constants have none.
    let var = parser.var;
    Ok(UniPoly::new(var.as_deref(), poly.coeffs().to_vec()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact_poly::rat;
    use proptest::prelude::*;

    #[test]
    fn reads_coefficients_in_ascending_order() {
        let f = parse_poly("x^4 - x - 1").unwrap();
        assert_eq!(f.var(), Some("x"));
        assert_eq!(f.coeffs(), &[-1, -1, 0, 0, 1].map(rat));
        let g = parse_poly("y^2 - 1").unwrap();
        assert_eq!(g.var(), Some("y"));
        assert_eq!(g.coeffs(), &[-1, 0, 1].map(rat));
    }

    #[test]
    fn rejects_two_variables() {
        assert_eq!(
            parse_poly("x + y"),
            Err(ParseError::MultiVariable("x".into(), "y".into()))
        );
    }

    #[test]
    fn accepts_common_notations() {
        let f = parse_poly("2x^2 + 3(x+1) - x*x").unwrap();
        assert_eq!(f, parse_poly("x^2 + 3x + 3").unwrap());
        let g = parse_poly("(x-1)(x+1)").unwrap();
        assert_eq!(g, parse_poly("x^2-1").unwrap());
        let h = parse_poly("0.5x − 1/4").unwrap();
        assert_eq!(
            h.coeffs(),
            &[
                BigRational::new((-1).into(), 4.into()),
                BigRational::new(1.into(), 2.into())
            ]
        );
        assert_eq!(parse_poly("t^3 - t/2").unwrap().var(), Some("t"));
        assert_eq!(parse_poly("-x^2").unwrap().coeffs(), &[0, 0, -1].map(rat));
    }

    #[test]
    fn error_cases() {
        assert!(matches!(parse_poly(""), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("x^"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("(x+1"), Err(ParseError::Syntax { .. })));
        assert!(matches!(parse_poly("2 3"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_poly("x^2^3"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            parse_poly("x $ 1"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(parse_poly("1/0"), Err(ParseError::Syntax { .. })));
        assert!(matches!(
            parse_poly("1/x"),
            Err(ParseError::NonRationalCoefficient(_))
        ));
        assert!(matches!(
            parse_poly("x^-1"),
            Err(ParseError::NonRationalCoefficient(_))
        ));
        assert!(matches!(
            parse_poly("x^0.5"),
            Err(ParseError::NonRationalCoefficient(_))
        ));
    }

    #[test]
    fn constants_have_no_variable() {
        let c = parse_poly("7").unwrap();
        assert_eq!(c.var(), None);
        assert_eq!(c.degree(), Some(0));
        assert!(BigRational::one() + &c.coeffs()[0] == rat(8));
    }

    fn arb_poly() -> impl Strategy<Value = UniPoly> {
        (
            prop::sample::select(vec!["x", "y", "t", "z1"]),
            prop::collection::vec((-20i64..20, 1i64..6), 0..7),
        )
            .prop_map(|(v, cs)| {
                UniPoly::new(
                    Some(v),
                    cs.into_iter()
                        .map(|(n, d)| BigRational::new(n.into(), d.into()))
                        .collect(),
                )
            })
    }

    proptest! {
        #[test]
        fn render_then_parse_is_identity(f in arb_poly()) {
            let back = parse_poly(&f.to_string()).unwrap();
            prop_assert_eq!(back, f);
        }
    }
}
