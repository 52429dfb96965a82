//! Exact sparse polynomials, monomial orders and the text syntax.

mod monomial;
mod parse;
mod polynomial;
mod univariate;

pub use monomial::{monomials_of_degree, Monomial, MonomialOrder};
pub use parse::{parse_field, parse_field_element, parse_polynomial, ParseError, ParseErrorKind, Ring};
pub use polynomial::{PolyError, Polynomial};
pub use univariate::UniPoly;
