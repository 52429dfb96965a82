//! `.poly` input files and point lists.
//!
//! ```text
//! # comment
//! ring x0..x2 over Q(i) minpoly t^2+1
//! (x0^2+x1^2)^3
//!   - 4*x0^2*x1^2*x2^2
//! ```
//! The first non-comment line declares the ring; everything after it is the
//! polynomial (newlines are insignificant). `over Q` may be omitted.

use std::fmt;

use qhsyz::poly::{parse_field, parse_polynomial, ParseError};
use qhsyz::singular::ProjectivePoint;
use qhsyz::{NumberField, Polynomial, Ring};

#[derive(Debug)]
pub struct InputError(pub String);

impl fmt::Display for InputError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for InputError {}

fn err(msg: impl Into<String>) -> InputError {
    InputError(msg.into())
}

#[derive(Clone, Debug)]
pub struct PolyFile {
    pub polynomial: Polynomial,
    pub field: NumberField,
}

fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("")
}

/// `ring x0..xN [over <field>]`: the number of variables and the field.
fn parse_header(line: &str) -> Result<(usize, Option<NumberField>), InputError> {
    let bad = || err(format!("expected `ring x0..xN over <field>`, found `{line}`"));
    let rest = line.trim().strip_prefix("ring").ok_or_else(bad)?.trim_start();
    let (vars, field) = match rest.split_once("over") {
        Some((v, f)) => (v.trim(), Some(f.trim())),
        None => (rest.trim(), None),
    };
    let top = vars.strip_prefix("x0..x").ok_or_else(bad)?;
    let top: usize = top.parse().map_err(|_| bad())?;
    let field = field.map(|f| parse_field(f).map_err(|e| err(format!("field: {e}")))).transpose()?;
    Ok((top + 1, field))
}

/// Parses a `.poly` file. `field` overrides the field of the header.
pub fn parse_poly_file(text: &str, field: Option<&NumberField>) -> Result<PolyFile, InputError> {
    let mut lines = text.lines().enumerate().filter(|(_, l)| !strip_comment(l).trim().is_empty());
    let (header_line, header) = lines.next().ok_or_else(|| err("empty input"))?;
    let (nvars, declared) = parse_header(strip_comment(header))?;
    let field = field.cloned().or(declared).unwrap_or_else(NumberField::rationals);
    let body: Vec<(usize, &str)> = lines.map(|(i, l)| (i, strip_comment(l))).collect();
    if body.is_empty() {
        return Err(err("missing polynomial after the ring line"));
    }
    let joined = body.iter().map(|(_, l)| *l).collect::<Vec<_>>().join("\n");
    let ring = Ring::standard(nvars).with_field(field.clone());
    let polynomial = parse_polynomial(&joined, &ring).map_err(|e: ParseError| {
        // report positions in file lines
        let line = body.get(e.line.saturating_sub(1)).map_or(header_line + 2, |(i, _)| i + 1);
        err(format!("line {line}, column {}: {}", e.col, e.kind))
    })?;
    if polynomial.is_zero() {
        return Err(err("the polynomial is zero"));
    }
    Ok(PolyFile { polynomial, field })
}

/// One point `a : b : c` per line (parentheses optional, `#` comments).
pub fn parse_points(text: &str, field: &NumberField, nvars: usize) -> Result<Vec<ProjectivePoint>, InputError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let s = strip_comment(line).trim();
        if s.is_empty() {
            continue;
        }
        let s = s.trim_start_matches('(').trim_end_matches(')');
        let p = ProjectivePoint::parse(s, field)
            .map_err(|e| err(format!("points line {}: {e}", i + 1)))?
            .ok_or_else(|| err(format!("points line {}: all coordinates are zero", i + 1)))?;
        if p.coords().len() != nvars {
            return Err(err(format!("points line {}: expected {nvars} coordinates", i + 1)));
        }
        out.push(p);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_and_multiline_body() {
        let f = parse_poly_file("# node\nring x0..x2 over Q\nx1^2*x2\n  - x0^2*(x0+x2)\n", None).unwrap();
        assert_eq!(f.polynomial.nvars(), 3);
        assert!(f.field.is_rational());
        assert_eq!(f.polynomial.to_string(), "-x0^3 - x0^2*x2 + x1^2*x2");
    }

    #[test]
    fn extension_header() {
        let f = parse_poly_file("ring x0..x2 over Q(i) minpoly t^2+1\nx0^2+x1^2+x2^2", None).unwrap();
        assert_eq!(f.field.name(), "i");
        let q = NumberField::rationals();
        assert!(parse_poly_file("ring x0..x2 over Q(i) minpoly t^2+1\nx0^2", Some(&q)).unwrap().field.is_rational());
    }

    #[test]
    fn errors() {
        assert!(parse_poly_file("", None).is_err());
        assert!(parse_poly_file("ring y0..y2\nx0", None).is_err());
        assert!(parse_poly_file("ring x0..x2 over Q\n", None).is_err());
        let e = parse_poly_file("ring x0..x2 over Q\nx0^2 +\n x7", None).unwrap_err();
        assert!(e.0.contains("line 3"), "{e}");
    }

    #[test]
    fn points() {
        let k = parse_field("Q(i) minpoly t^2+1").unwrap();
        let pts = parse_points("(1 : i : 0)\n# c\n0:0:1\n", &k, 3).unwrap();
        assert_eq!(pts.len(), 2);
        assert!(parse_points("0:0:0", &k, 3).is_err());
        assert!(parse_points("0:1", &k, 3).is_err());
    }
}
