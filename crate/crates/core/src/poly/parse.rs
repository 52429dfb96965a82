//! Text syntax for polynomials, field declarations and field elements.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor (('*'|'/') factor)*        divisors must be nonzero constants
//! factor := '-' factor | atom ['^' integer]
//! atom   := integer | variable | '(' expr ')'
//! ```
//! Whitespace (including newlines) is insignificant.

use num_bigint::BigInt;
use num_traits::Zero;
use thiserror::Error;

use super::{Polynomial, UniPoly};
use crate::field::{FieldElem, FieldError, NumberField};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("`{0}` is not a rational coefficient; polynomial coefficients must lie in Q")]
    NotInField(String),
    #[error("invalid field declaration: {0}")]
    Field(String),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{line}:{col}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub col: usize,
    pub kind: ParseErrorKind,
}

/// Variable names and the field in which point coordinates may live.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ring {
    pub names: Vec<String>,
    pub field: NumberField,
}

impl Ring {
    /// `x0..x{nvars-1}` over Q.
    pub fn standard(nvars: usize) -> Self {
        Self { names: Polynomial::default_names(nvars), field: NumberField::rationals() }
    }

    pub fn with_field(mut self, field: NumberField) -> Self {
        self.field = field;
        self
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.fmt_with(&self.names)
    }
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Sym(char),
}

#[derive(Clone, Debug)]
struct Spanned {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, ParseError> {
    let mut out = Vec::new();
    let chars: Vec<char> = text.chars().collect();
    let (mut i, mut line, mut col) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let (l0, c0) = (line, col);
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned { tok: Tok::Num(s.parse().unwrap()), line: l0, col: c0 });
            continue;
        }
        if c.is_alphabetic() || c == '_' {
            let start = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            col += i - start;
            out.push(Spanned { tok: Tok::Ident(s), line: l0, col: c0 });
            continue;
        }
        if "+-*/^()".contains(c) {
            out.push(Spanned { tok: Tok::Sym(c), line: l0, col: c0 });
            i += 1;
            col += 1;
            continue;
        }
        return Err(ParseError {
            line: l0,
            col: c0,
            kind: ParseErrorKind::Syntax(format!("unexpected character `{c}`")),
        });
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Spanned>,
    pos: usize,
    names: &'a [String],
    /// Names that denote field elements, rejected as coefficients.
    reserved: &'a [String],
    end: (usize, usize),
}

impl<'a> Parser<'a> {
    fn err<T>(&self, kind: ParseErrorKind) -> Result<T, ParseError> {
        let (line, col) = self.toks.get(self.pos).map(|t| (t.line, t.col)).unwrap_or(self.end);
        Err(ParseError { line, col, kind })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|t| &t.tok)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn n(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = if self.eat('-') {
            -&self.term()?
        } else {
            self.eat('+');
            self.term()?
        };
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Polynomial, ParseError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.eat('/') {
                let save = self.pos;
                let d = self.factor()?;
                if !d.is_constant() || d.is_zero() {
                    self.pos = save;
                    return self.err(ParseErrorKind::Syntax("divisor must be a nonzero constant".into()));
                }
                acc = acc.scale(&d.terms()[0].1.recip());
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<Polynomial, ParseError> {
        if self.eat('-') {
            return Ok(-&self.factor()?);
        }
        let base = self.atom()?;
        if self.eat('^') {
            match self.peek().cloned() {
                Some(Tok::Num(e)) => {
                    self.pos += 1;
                    let e: u32 = match u32::try_from(&e) {
                        Ok(e) if e <= 10_000 => e,
                        _ => return self.err(ParseErrorKind::Syntax("exponent too large".into())),
                    };
                    Ok(base.pow(e))
                }
                _ => self.err(ParseErrorKind::Syntax("expected a non-negative integer exponent".into())),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, ParseError> {
        match self.peek().cloned() {
            Some(Tok::Num(v)) => {
                self.pos += 1;
                Ok(Polynomial::constant(self.n(), Rational::from_integer(v)))
            }
            Some(Tok::Ident(name)) => {
                if let Some(i) = self.names.iter().position(|n| *n == name) {
                    self.pos += 1;
                    Ok(Polynomial::var(self.n(), i))
                } else if self.reserved.contains(&name) {
                    self.err(ParseErrorKind::NotInField(name))
                } else {
                    self.err(ParseErrorKind::UnknownVariable(name))
                }
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err(ParseErrorKind::Syntax("expected `)`".into()));
                }
                Ok(e)
            }
            Some(t) => self.err(ParseErrorKind::Syntax(format!("unexpected token {}", show(&t)))),
            None => self.err(ParseErrorKind::Syntax("unexpected end of input".into())),
        }
    }
}

fn show(t: &Tok) -> String {
    match t {
        Tok::Num(n) => format!("`{n}`"),
        Tok::Ident(s) => format!("`{s}`"),
        Tok::Sym(c) => format!("`{c}`"),
    }
}

fn end_position(text: &str) -> (usize, usize) {
    let line = text.matches('\n').count() + 1;
    let col = text.rsplit('\n').next().map(|l| l.chars().count()).unwrap_or(0) + 1;
    (line, col)
}

fn parse_in(text: &str, names: &[String], reserved: &[String]) -> Result<Polynomial, ParseError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, pos: 0, names, reserved, end: end_position(text) };
    if p.toks.is_empty() {
        return p.err(ParseErrorKind::Syntax("empty expression".into()));
    }
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        let t = p.toks[p.pos].tok.clone();
        return p.err(ParseErrorKind::Syntax(format!("unexpected token {}", show(&t))));
    }
    Ok(e)
}

/// Parses a polynomial with rational coefficients in the ring's variables.
pub fn parse_polynomial(text: &str, ring: &Ring) -> Result<Polynomial, ParseError> {
    let reserved: Vec<String> = if ring.field.is_rational() { Vec::new() } else { vec![ring.field.name().to_string()] };
    parse_in(text, &ring.names, &reserved)
}

/// Parses an element of `field` written in terms of its generator name.
pub fn parse_field_element(text: &str, field: &NumberField) -> Result<FieldElem, ParseError> {
    let names: Vec<String> = if field.is_rational() { Vec::new() } else { vec![field.name().to_string()] };
    let p = parse_in(text, &names, &[])?;
    Ok(field.from_uni(&to_uni(&p, names.len())))
}

fn to_uni(p: &Polynomial, nvars: usize) -> UniPoly {
    if nvars == 0 {
        return UniPoly::constant(p.terms().first().map(|t| t.1.clone()).unwrap_or_else(Rational::zero));
    }
    let deg = p.degree().unwrap_or(0) as usize;
    let mut coeffs = vec![Rational::zero(); deg + 1];
    for (m, c) in p.terms() {
        coeffs[m.exp(0) as usize] = c.clone();
    }
    UniPoly::from_coeffs(coeffs)
}

/// Parses `Q` or `Q(name) minpoly <poly in t or name>`; a leading `field`
/// keyword is accepted.
pub fn parse_field(text: &str) -> Result<NumberField, ParseError> {
    let bad = |msg: &str| ParseError { line: 1, col: 1, kind: ParseErrorKind::Field(msg.to_string()) };
    let s = text.trim();
    let s = s.strip_prefix("field").map(str::trim_start).unwrap_or(s);
    if s == "Q" || s == "QQ" {
        return Ok(NumberField::rationals());
    }
    let rest = s.strip_prefix("Q(").ok_or_else(|| bad("expected `Q` or `Q(name) minpoly ...`"))?;
    let close = rest.find(')').ok_or_else(|| bad("missing `)`"))?;
    let name = rest[..close].trim().to_string();
    if name.is_empty()
        || !name.chars().all(|c| c.is_alphanumeric() || c == '_')
        || name.starts_with(|c: char| c.is_ascii_digit())
    {
        return Err(bad("generator name must be an identifier"));
    }
    let tail = rest[close + 1..].trim();
    let poly_text = tail.strip_prefix("minpoly").ok_or_else(|| bad("expected `minpoly`"))?;
    let var = if poly_text.contains(name.as_str()) && name != "t" { name.clone() } else { "t".to_string() };
    let p = parse_in(poly_text, &[var], &[])?;
    let m = to_uni(&p, 1);
    let field = NumberField::extension(name, m).map_err(|e: FieldError| bad(&e.to_string()))?;
    Ok(field)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r3() -> Ring {
        Ring::standard(3)
    }

    #[test]
    fn nodal_cubic() {
        let f = parse_polynomial("x1^2*x2 - x0^2*(x0+x2)", &r3()).unwrap();
        assert_eq!(f.len(), 3);
        assert!(f.is_homogeneous());
        assert_eq!(f.degree(), Some(3));
    }

    #[test]
    fn zero_and_merging() {
        let z = parse_polynomial("0", &r3()).unwrap();
        assert!(z.is_zero());
        assert_eq!(z.degree(), None);
        let two = parse_polynomial("x0 + x0", &r3()).unwrap();
        assert_eq!(two, Polynomial::var(3, 0).scale(&Rational::from_integer(2.into())));
    }

    #[test]
    fn rationals_and_unary_minus() {
        let f = parse_polynomial("-4/7*x0 + 3*-x1^2", &r3()).unwrap();
        assert_eq!(f.to_string(), "-3*x1^2 - 4/7*x0");
    }

    #[test]
    fn errors_carry_positions() {
        let e = parse_polynomial("x0 +\n  y3", &r3()).unwrap_err();
        assert_eq!((e.line, e.col), (2, 3));
        assert_eq!(e.kind, ParseErrorKind::UnknownVariable("y3".into()));
        let e = parse_polynomial("x0 + * x1", &r3()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        assert_eq!(e.col, 6);
        let e = parse_polynomial("(x0 + x1", &r3()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
        let e = parse_polynomial("x0/x1", &r3()).unwrap_err();
        assert!(matches!(e.kind, ParseErrorKind::Syntax(_)));
    }

    #[test]
    fn generator_rejected_as_coefficient() {
        let k = parse_field("field Q(alpha) minpoly t^2+1").unwrap();
        let ring = r3().with_field(k);
        let e = parse_polynomial("alpha*x0", &ring).unwrap_err();
        assert_eq!(e.kind, ParseErrorKind::NotInField("alpha".into()));
    }

    #[test]
    fn field_declarations() {
        let k = parse_field("Q(i) minpoly t^2+1").unwrap();
        assert_eq!(k.degree(), 2);
        assert_eq!(k.name(), "i");
        let k2 = parse_field("Q(s) minpoly s^2 - 3").unwrap();
        assert_eq!(k2.minpoly(), &UniPoly::from_i64(&[-3, 0, 1]));
        assert!(parse_field("Q").unwrap().is_rational());
        assert!(parse_field("R").is_err());
        let a = parse_field_element("1 - alpha", &parse_field("Q(alpha) minpoly t^2+1").unwrap()).unwrap();
        assert_eq!(a.coeffs().len(), 2);
    }

    #[test]
    fn print_parse_round_trip() {
        let ring = r3();
        let f = parse_polynomial("27*x1^2*x2 - 5*x2^3 + 1/3*x0*x1*x2 - x0^3", &ring).unwrap();
        let g = parse_polynomial(&ring.format(&f), &ring).unwrap();
        assert_eq!(f, g);
        assert!(num_traits::One::is_one(&parse_polynomial("1", &ring).unwrap().terms()[0].1));
    }
}
