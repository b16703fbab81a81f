//! Recursive-descent parser for polynomial input.
//!
//! ```text
//! expression ::= term (('+' | '-') term)*
//! term       ::= factor ('*' factor)*
//! factor     ::= integer ['/' integer] | variable ['^' integer]
//!              | '(' expression ')' | '-' factor
//! ```
//!
//! Implicit multiplication is rejected. The input is expanded fully and must
//! be homogeneous and nonzero.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::ParseError;
use crate::poly::{HomogPoly, Monomial};

/// Not-necessarily-homogeneous expansion used while parsing.
type Expansion = BTreeMap<Vec<u32>, BigRational>;

#[derive(Debug, Clone, PartialEq, Eq)]
enum Token {
    Int(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn tokenize(text: &str) -> Result<Vec<(usize, Token)>, ParseError> {
    let bytes = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        let start = i;
        match c {
            b' ' | b'\t' | b'\n' | b'\r' => {
                i += 1;
                continue;
            }
            b'+' => out.push((start, Token::Plus)),
            b'-' => out.push((start, Token::Minus)),
            b'*' => out.push((start, Token::Star)),
            b'/' => out.push((start, Token::Slash)),
            b'^' => out.push((start, Token::Caret)),
            b'(' => out.push((start, Token::LParen)),
            b')' => out.push((start, Token::RParen)),
            b'0'..=b'9' => {
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                let v: BigInt = text[start..i].parse().expect("ascii digits");
                out.push((start, Token::Int(v)));
                continue;
            }
            c if c.is_ascii_alphabetic() || c == b'_' => {
                while i < bytes.len() && (bytes[i].is_ascii_alphanumeric() || bytes[i] == b'_') {
                    i += 1;
                }
                out.push((start, Token::Ident(text[start..i].to_string())));
                continue;
            }
            _ => {
                let ch = text[start..].chars().next().unwrap_or('?');
                return Err(syntax(start, format!("unexpected character '{ch}'")));
            }
        }
        i += 1;
    }
    Ok(out)
}

fn syntax(position: usize, message: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        position,
        message: message.into(),
    }
}

struct Parser<'a> {
    tokens: Vec<(usize, Token)>,
    pos: usize,
    end: usize,
    vars: &'a [String],
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Token> {
        self.tokens.get(self.pos).map(|(_, t)| t)
    }

    fn offset(&self) -> usize {
        self.tokens.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn bump(&mut self) -> Option<Token> {
        let t = self.tokens.get(self.pos).map(|(_, t)| t.clone());
        self.pos += 1;
        t
    }

    fn expression(&mut self) -> Result<Expansion, ParseError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Token::Plus) => {
                    self.bump();
                    let rhs = self.term()?;
                    add_into(&mut acc, &rhs, false);
                }
                Some(Token::Minus) => {
                    self.bump();
                    let rhs = self.term()?;
                    add_into(&mut acc, &rhs, true);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Expansion, ParseError> {
        let mut acc = self.factor()?;
        while let Some(Token::Star) = self.peek() {
            self.bump();
            let rhs = self.factor()?;
            acc = multiply(&acc, &rhs);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Expansion, ParseError> {
        let at = self.offset();
        let nvars = self.vars.len();
        match self.bump() {
            Some(Token::Int(v)) => {
                let mut value = BigRational::from_integer(v);
                if let Some(Token::Slash) = self.peek() {
                    self.bump();
                    let den_at = self.offset();
                    match self.bump() {
                        Some(Token::Int(den)) if !den.is_zero() => {
                            value /= BigRational::from_integer(den);
                        }
                        Some(Token::Int(_)) => return Err(syntax(den_at, "division by zero")),
                        _ => return Err(syntax(den_at, "expected integer denominator after '/'")),
                    }
                }
                Ok(constant(nvars, value))
            }
            Some(Token::Ident(name)) => {
                let Some(index) = self.vars.iter().position(|v| *v == name) else {
                    return Err(syntax(at, format!("unknown variable '{name}'")));
                };
                let mut exp = 1u32;
                if let Some(Token::Caret) = self.peek() {
                    self.bump();
                    let exp_at = self.offset();
                    match self.bump() {
                        Some(Token::Int(e)) => {
                            exp = u32::try_from(e)
                                .map_err(|_| syntax(exp_at, "exponent too large"))?;
                        }
                        _ => return Err(syntax(exp_at, "expected nonnegative integer exponent")),
                    }
                }
                let mut e = vec![0; nvars];
                e[index] = exp;
                Ok(BTreeMap::from([(e, BigRational::one())]))
            }
            Some(Token::LParen) => {
                let inner = self.expression()?;
                match self.bump() {
                    Some(Token::RParen) => Ok(inner),
                    _ => Err(syntax(self.tokens.get(self.pos - 1).map_or(self.end, |t| t.0), "expected ')'")),
                }
            }
            Some(Token::Minus) => {
                let inner = self.factor()?;
                Ok(inner.into_iter().map(|(m, c)| (m, -c)).collect())
            }
            Some(t) => Err(syntax(at, format!("unexpected token {t:?}"))),
            None => Err(syntax(at, "unexpected end of input")),
        }
    }
}

fn constant(nvars: usize, c: BigRational) -> Expansion {
    let mut m = BTreeMap::new();
    if !c.is_zero() {
        m.insert(vec![0; nvars], c);
    }
    m
}

fn add_into(acc: &mut Expansion, rhs: &Expansion, negate: bool) {
    for (m, c) in rhs {
        let entry = acc.entry(m.clone()).or_insert_with(BigRational::zero);
        if negate {
            *entry -= c;
        } else {
            *entry += c;
        }
        if entry.is_zero() {
            acc.remove(m);
        }
    }
}

fn multiply(a: &Expansion, b: &Expansion) -> Expansion {
    let mut out: Expansion = BTreeMap::new();
    for (ma, ca) in a {
        for (mb, cb) in b {
            let m: Vec<u32> = ma.iter().zip(mb).map(|(x, y)| x + y).collect();
            *out.entry(m).or_insert_with(BigRational::zero) += ca * cb;
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn check_vars(vars: &[String]) -> Result<(), ParseError> {
    if vars.is_empty() {
        return Err(ParseError::BadVariables("no variables given".into()));
    }
    for (i, v) in vars.iter().enumerate() {
        let mut chars = v.chars();
        let ok = chars
            .next()
            .is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && chars.all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(ParseError::BadVariables(format!("'{v}' is not an identifier")));
        }
        if vars[..i].contains(v) {
            return Err(ParseError::BadVariables(format!("'{v}' listed twice")));
        }
    }
    Ok(())
}

/// Parses and expands `text` as a homogeneous form in `vars`.
pub fn parse_poly(text: &str, vars: &[String]) -> Result<HomogPoly, ParseError> {
    check_vars(vars)?;
    let tokens = tokenize(text)?;
    let mut parser = Parser {
        tokens,
        pos: 0,
        end: text.len(),
        vars,
    };
    let expansion = parser.expression()?;
    if parser.pos < parser.tokens.len() {
        let at = parser.offset();
        return Err(syntax(at, "unexpected trailing input (implicit multiplication is not allowed)"));
    }
    let mut terms = expansion.iter().rev();
    let Some((first, _)) = terms.next() else {
        return Err(ParseError::ZeroPolynomial);
    };
    let degree: u32 = first.iter().sum();
    if let Some((other, _)) = terms.find(|(m, _)| m.iter().sum::<u32>() != degree) {
        return Err(ParseError::NotHomogeneous {
            first: Monomial(first.clone()).format_with(vars),
            first_degree: degree,
            second: Monomial(other.clone()).format_with(vars),
            second_degree: other.iter().sum(),
        });
    }
    let poly = HomogPoly::from_terms(
        vars.len(),
        degree,
        expansion.into_iter().map(|(m, c)| (Monomial(m), c)),
    )
    .expect("degree checked above");
    Ok(poly)
}

/// Splits a comma-separated variable list.
pub fn parse_vars(list: &str) -> Vec<String> {
    list.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect()
}
