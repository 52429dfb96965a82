//! Exact coefficient fields: the rationals and simple extensions `Q[t]/(m(t))`.

use std::fmt;

use num_traits::{One, Signed, Zero};
use thiserror::Error;

use crate::poly::UniPoly;
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FieldError {
    #[error("minimal polynomial must have degree at least 1")]
    ConstantMinpoly,
    #[error("minimal polynomial {0} is reducible: a nonzero element has no inverse")]
    Reducible(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("element {0} does not lie in the rationals")]
    NotRational(String),
}

/// `Q` or `Q(alpha)` with `alpha` a root of a monic irreducible polynomial.
///
/// The rationals are represented as the degree-one extension by `t`, so every
/// element is a coefficient vector of length [`NumberField::degree`].
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    name: String,
    minpoly: UniPoly,
}

/// Element of a [`NumberField`]: coefficients of `1, alpha, ..., alpha^(k-1)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FieldElem(Vec<Rational>);

impl FieldElem {
    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.0[0].is_one() && self.0[1..].iter().all(Zero::is_zero)
    }

    /// The rational value, if the element lies in the prime field.
    pub fn as_rational(&self) -> Option<&Rational> {
        self.0[1..].iter().all(Zero::is_zero).then(|| &self.0[0])
    }

    fn to_uni(&self) -> UniPoly {
        UniPoly::from_coeffs(self.0.clone())
    }
}

impl NumberField {
    pub fn rationals() -> Self {
        Self { name: "Q".into(), minpoly: UniPoly::t() }
    }

    /// `Q(name)` with the given minimal polynomial (made monic). Irreducibility
    /// is a precondition; a violation surfaces as [`FieldError::Reducible`] on
    /// the first failed inversion.
    pub fn extension(name: impl Into<String>, minpoly: UniPoly) -> Result<Self, FieldError> {
        match minpoly.degree() {
            None | Some(0) => Err(FieldError::ConstantMinpoly),
            _ => Ok(Self { name: name.into(), minpoly: minpoly.monic() }),
        }
    }

    pub fn is_rational(&self) -> bool {
        self.degree() == 1
    }

    pub fn degree(&self) -> usize {
        self.minpoly.degree().unwrap()
    }

    /// Generator name (`Q` for the rationals).
    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn minpoly(&self) -> &UniPoly {
        &self.minpoly
    }

    /// Textual descriptor accepted by the field parser.
    pub fn descriptor(&self) -> String {
        if self.is_rational() {
            "Q".to_string()
        } else {
            format!("Q({}) minpoly {}", self.name, self.minpoly)
        }
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem(vec![Rational::zero(); self.degree()])
    }

    pub fn one(&self) -> FieldElem {
        self.from_rational(Rational::one())
    }

    pub fn from_rational(&self, r: Rational) -> FieldElem {
        let mut v = vec![Rational::zero(); self.degree()];
        v[0] = r;
        FieldElem(v)
    }

    pub fn from_i64(&self, r: i64) -> FieldElem {
        self.from_rational(Rational::from_integer(r.into()))
    }

    /// The generator `alpha` (for `Q`, the root `0` of `t`).
    pub fn generator(&self) -> FieldElem {
        self.from_uni(&UniPoly::t())
    }

    /// Reduces a polynomial in the generator modulo the minimal polynomial.
    pub fn from_uni(&self, p: &UniPoly) -> FieldElem {
        let r = p.rem(&self.minpoly);
        let mut v = vec![Rational::zero(); self.degree()];
        for (i, c) in r.coeffs().iter().enumerate() {
            v[i] = c.clone();
        }
        FieldElem(v)
    }

    pub fn from_coeffs(&self, coeffs: Vec<Rational>) -> FieldElem {
        self.from_uni(&UniPoly::from_coeffs(coeffs))
    }

    pub fn add(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| x + y).collect())
    }

    pub fn sub(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().zip(&b.0).map(|(x, y)| x - y).collect())
    }

    pub fn neg(&self, a: &FieldElem) -> FieldElem {
        FieldElem(a.0.iter().map(|x| -x).collect())
    }

    pub fn mul(&self, a: &FieldElem, b: &FieldElem) -> FieldElem {
        if self.is_rational() {
            return FieldElem(vec![&a.0[0] * &b.0[0]]);
        }
        self.from_uni(&a.to_uni().mul(&b.to_uni()))
    }

    pub fn scale(&self, a: &FieldElem, s: &Rational) -> FieldElem {
        FieldElem(a.0.iter().map(|x| x * s).collect())
    }

    pub fn pow(&self, a: &FieldElem, mut e: u32) -> FieldElem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn inv(&self, a: &FieldElem) -> Result<FieldElem, FieldError> {
        if a.is_zero() {
            return Err(FieldError::DivisionByZero);
        }
        if self.is_rational() {
            return Ok(FieldElem(vec![a.0[0].recip()]));
        }
        let (g, s) = a.to_uni().gcd_inverse(&self.minpoly);
        if g != UniPoly::one() {
            return Err(FieldError::Reducible(self.minpoly.to_string()));
        }
        Ok(self.from_uni(&s))
    }

    pub fn div(&self, a: &FieldElem, b: &FieldElem) -> Result<FieldElem, FieldError> {
        Ok(self.mul(a, &self.inv(b)?))
    }

    /// Human-readable form in terms of the generator name.
    pub fn format(&self, a: &FieldElem) -> String {
        if self.is_rational() {
            return a.0[0].to_string();
        }
        a.to_uni().display_with(&self.name)
    }

    pub fn to_rational(&self, a: &FieldElem) -> Result<Rational, FieldError> {
        a.as_rational().cloned().ok_or_else(|| FieldError::NotRational(self.format(a)))
    }

    /// True when every coefficient is an integer of absolute value below `bound`.
    pub fn is_small(&self, a: &FieldElem, bound: i64) -> bool {
        let b = Rational::from_integer(bound.into());
        a.0.iter().all(|c| c.is_integer() && c.abs() < b)
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.descriptor())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gaussian() -> NumberField {
        NumberField::extension("i", UniPoly::from_i64(&[1, 0, 1])).unwrap()
    }

    #[test]
    fn i_squared_is_minus_one() {
        let k = gaussian();
        let i = k.generator();
        assert_eq!(k.mul(&i, &i), k.from_i64(-1));
        assert_eq!(k.pow(&i, 4), k.one());
    }

    #[test]
    fn inverse_of_one_plus_i() {
        let k = gaussian();
        let a = k.add(&k.one(), &k.generator());
        let inv = k.inv(&a).unwrap();
        assert_eq!(k.mul(&a, &inv), k.one());
        assert_eq!(k.format(&inv), "-1/2*i + 1/2");
    }

    #[test]
    fn reducible_minpoly_is_reported() {
        // t^2 - 1 = (t-1)(t+1): alpha - 1 is a zero divisor.
        let k = NumberField::extension("a", UniPoly::from_i64(&[-1, 0, 1])).unwrap();
        let a = k.sub(&k.generator(), &k.one());
        assert!(matches!(k.inv(&a), Err(FieldError::Reducible(_))));
    }

    #[test]
    fn rationals_are_degree_one() {
        let q = NumberField::rationals();
        assert!(q.is_rational());
        assert_eq!(q.generator(), q.zero());
        assert_eq!(q.descriptor(), "Q");
        assert!(matches!(NumberField::extension("a", UniPoly::one()), Err(FieldError::ConstantMinpoly)));
    }
}
