use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use thiserror::Error;

use super::{Monomial, MonomialOrder};
use crate::field::{FieldElem, NumberField};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("linear change matrix must be {0}x{0}")]
    MatrixShape(usize),
    #[error("linear change matrix is singular")]
    SingularMatrix,
    #[error("polynomial is not homogeneous")]
    NotHomogeneous,
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are stored in descending grevlex order with no zero coefficients, so
/// structural equality is mathematical equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    nvars: usize,
    terms: Vec<(Monomial, Rational)>,
}

impl Polynomial {
    pub fn zero(nvars: usize) -> Self {
        Self { nvars, terms: Vec::new() }
    }

    pub fn constant(nvars: usize, c: Rational) -> Self {
        Self::term(Monomial::one(nvars), c)
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, Rational::one())
    }

    pub fn from_i64(nvars: usize, c: i64) -> Self {
        Self::constant(nvars, Rational::from_integer(c.into()))
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        Self::term(Monomial::var(nvars, i), Rational::one())
    }

    pub fn term(m: Monomial, c: Rational) -> Self {
        let nvars = m.nvars();
        if c.is_zero() {
            Self::zero(nvars)
        } else {
            Self { nvars, terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary terms, merging like monomials.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Monomial, Rational)>) -> Self {
        let mut acc: HashMap<Monomial, Rational> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), nvars);
            *acc.entry(m).or_insert_with(Rational::zero) += c;
        }
        Self::from_map(nvars, acc)
    }

    fn from_map(nvars: usize, acc: HashMap<Monomial, Rational>) -> Self {
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| MonomialOrder::Grevlex.cmp(&b.0, &a.0));
        Self { nvars, terms }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &[(Monomial, Rational)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Rational)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Total degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<u32> {
        self.terms.first().map(|(m, _)| m.degree())
    }

    /// Lowest total degree of a term (the order of vanishing at the origin).
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).min()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.terms.windows(2).all(|w| w[0].0.degree() == w[1].0.degree())
    }

    /// Degree in a single variable.
    pub fn degree_in(&self, var: usize) -> u16 {
        self.terms.iter().map(|(m, _)| m.exp(var)).max().unwrap_or(0)
    }

    pub fn coeff(&self, m: &Monomial) -> Rational {
        self.terms.iter().find(|(t, _)| t == m).map(|(_, c)| c.clone()).unwrap_or_else(Rational::zero)
    }

    pub fn leading_term(&self, order: &MonomialOrder) -> Option<&(Monomial, Rational)> {
        self.terms.iter().max_by(|a, b| order.cmp(&a.0, &b.0))
    }

    pub fn scale(&self, s: &Rational) -> Self {
        if s.is_zero() {
            return Self::zero(self.nvars);
        }
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), c * s)).collect() }
    }

    /// Multiplies by `c * m`.
    pub fn mul_term(&self, m: &Monomial, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        // Grevlex is multiplicative, so the order is preserved.
        Self { nvars: self.nvars, terms: self.terms.iter().map(|(t, d)| (t.mul(m), d * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(self.nvars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Formal partial derivative with respect to variable `j`.
    pub fn partial(&self, j: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.exp(j) > 0).map(|(m, c)| {
            let e = m.exp(j);
            let mut exps = m.exps().to_vec();
            exps[j] -= 1;
            (Monomial::from_exps(&exps), c * Rational::from_integer(BigInt::from(e)))
        });
        Self::from_terms(self.nvars, terms)
    }

    /// All first partials `(d_0 f, ..., d_n f)`.
    pub fn gradient(&self) -> Vec<Self> {
        (0..self.nvars).map(|j| self.partial(j)).collect()
    }

    /// Exact value at a point whose coordinates lie in `field`.
    pub fn evaluate(&self, point: &[FieldElem], field: &NumberField) -> Result<FieldElem, PolyError> {
        if point.len() != self.nvars {
            return Err(PolyError::Arity { expected: self.nvars, got: point.len() });
        }
        let maxdeg: Vec<u16> = (0..self.nvars).map(|i| self.degree_in(i)).collect();
        let powers: Vec<Vec<FieldElem>> = point
            .iter()
            .zip(&maxdeg)
            .map(|(x, &d)| {
                let mut p = vec![field.one()];
                for k in 1..=d as usize {
                    let next = field.mul(&p[k - 1], x);
                    p.push(next);
                }
                p
            })
            .collect();
        let mut acc = field.zero();
        for (m, c) in &self.terms {
            let mut t = field.from_rational(c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e > 0 {
                    t = field.mul(&t, &powers[i][e as usize]);
                }
            }
            acc = field.add(&acc, &t);
        }
        Ok(acc)
    }

    pub fn eval_rational(&self, point: &[Rational]) -> Rational {
        assert_eq!(point.len(), self.nvars);
        self.terms
            .iter()
            .map(|(m, c)| {
                m.exps().iter().zip(point).fold(c.clone(), |acc, (&e, x)| {
                    if e == 0 {
                        acc
                    } else {
                        acc * num_traits::pow(x.clone(), e as usize)
                    }
                })
            })
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// Substitutes `images[i]` for variable `i`; all images share one ring.
    pub fn substitute(&self, images: &[Polynomial]) -> Self {
        assert_eq!(images.len(), self.nvars);
        let target = images.first().map(|p| p.nvars).unwrap_or(0);
        let mut cache: Vec<Vec<Polynomial>> = images.iter().map(|p| vec![Self::one(target), p.clone()]).collect();
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while cache[i].len() <= e as usize {
                    let next = &cache[i][cache[i].len() - 1] * &images[i];
                    cache[i].push(next);
                }
                t = &t * &cache[i][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// `f(A z)`: substitutes `x_i = sum_j A[i][j] z_j`. `A` must be invertible.
    pub fn linear_change(&self, a: &[Vec<i64>]) -> Result<Self, PolyError> {
        let n = self.nvars;
        if a.len() != n || a.iter().any(|r| r.len() != n) {
            return Err(PolyError::MatrixShape(n));
        }
        let rat: Vec<Vec<Rational>> =
            a.iter().map(|r| r.iter().map(|&x| Rational::from_integer(x.into())).collect()).collect();
        if crate::linalg::determinant(&rat).is_zero() {
            return Err(PolyError::SingularMatrix);
        }
        let images: Vec<Polynomial> = rat
            .iter()
            .map(|row| Self::from_terms(n, row.iter().enumerate().map(|(j, c)| (Monomial::var(n, j), c.clone()))))
            .collect();
        Ok(self.substitute(&images))
    }

    /// Sets `x_j = 1` and drops that variable.
    pub fn dehomogenize(&self, j: usize) -> Self {
        Self::from_terms(self.nvars - 1, self.terms.iter().map(|(m, c)| (m.remove_var(j).0, c.clone())))
    }

    /// Sets `x_j = value` and drops that variable.
    pub fn specialize(&self, j: usize, value: &Rational) -> Self {
        Self::from_terms(
            self.nvars - 1,
            self.terms.iter().filter_map(|(m, c)| {
                let (rest, e) = m.remove_var(j);
                if e == 0 {
                    Some((rest, c.clone()))
                } else if value.is_zero() {
                    None
                } else {
                    Some((rest, c * num_traits::pow(value.clone(), e as usize)))
                }
            }),
        )
    }

    /// Inserts a new variable at position `at` and homogenizes to `degree` with it.
    pub fn homogenize(&self, at: usize, degree: u32) -> Self {
        Self::from_terms(
            self.nvars + 1,
            self.terms.iter().map(|(m, c)| {
                let mut exps = m.exps().to_vec();
                exps.insert(at, (degree - m.degree()) as u16);
                (Monomial::from_exps(&exps), c.clone())
            }),
        )
    }

    /// Embeds into a ring with a fresh variable inserted at `at`.
    pub fn insert_var(&self, at: usize) -> Self {
        Self::from_terms(self.nvars + 1, self.terms.iter().map(|(m, c)| (m.insert_var(at), c.clone())))
    }

    /// Maps variable `i` to variable `map[i]` of a ring with `nvars` variables.
    pub fn rename_vars(&self, nvars: usize, map: &[usize]) -> Self {
        Self::from_terms(
            nvars,
            self.terms.iter().map(|(m, c)| {
                let mut exps = vec![0u16; nvars];
                for (i, &e) in m.exps().iter().enumerate() {
                    exps[map[i]] += e;
                }
                (Monomial::from_exps(&exps), c.clone())
            }),
        )
    }

    /// Integer-coefficient multiple with content one and positive leading coefficient.
    pub fn primitive(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let den = self.terms.iter().fold(BigInt::one(), |acc, (_, c)| acc.lcm(c.denom()));
        let num = self
            .terms
            .iter()
            .fold(BigInt::zero(), |acc, (_, c)| acc.gcd(&(c * Rational::from_integer(den.clone())).to_integer()));
        let mut s = Rational::new(den, num);
        if self.terms[0].1.is_negative() {
            s = -s;
        }
        self.scale(&s)
    }

    pub fn monic(&self, order: &MonomialOrder) -> Self {
        match self.leading_term(order) {
            None => self.clone(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }

    /// Max over coefficients of numerator/denominator bit length.
    pub fn coeff_bits(&self) -> u64 {
        self.terms.iter().map(|(_, c)| c.numer().bits().max(c.denom().bits())).max().unwrap_or(0)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (m, c) in &self.terms {
            let neg = c.is_negative();
            let abs = c.abs();
            if out.is_empty() {
                if neg {
                    out.push('-');
                }
            } else {
                out.push_str(if neg { " - " } else { " + " });
            }
            if m.is_one() {
                out.push_str(&abs.to_string());
            } else if abs.is_one() {
                out.push_str(&m.fmt_with(names));
            } else {
                out.push_str(&format!("{}*{}", abs, m.fmt_with(names)));
            }
        }
        out
    }

    pub fn default_names(nvars: usize) -> Vec<String> {
        (0..nvars).map(|i| format!("x{i}")).collect()
    }
}

fn merge(a: &Polynomial, b: &Polynomial, negate_b: bool) -> Polynomial {
    assert_eq!(a.nvars, b.nvars, "ring mismatch");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    let order = MonomialOrder::Grevlex;
    while i < a.terms.len() && j < b.terms.len() {
        let (ma, ca) = &a.terms[i];
        let (mb, cb) = &b.terms[j];
        match order.cmp(ma, mb) {
            std::cmp::Ordering::Greater => {
                out.push((ma.clone(), ca.clone()));
                i += 1;
            }
            std::cmp::Ordering::Less => {
                out.push((mb.clone(), if negate_b { -cb } else { cb.clone() }));
                j += 1;
            }
            std::cmp::Ordering::Equal => {
                let c = if negate_b { ca - cb } else { ca + cb };
                if !c.is_zero() {
                    out.push((ma.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(m, c)| (m.clone(), if negate_b { -c } else { c.clone() })));
    Polynomial { nvars: a.nvars, terms: out }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        merge(self, rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        merge(self, rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { nvars: self.nvars, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect() }
    }
}

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.nvars, rhs.nvars, "ring mismatch");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.nvars);
        }
        if rhs.terms.len() == 1 {
            return self.mul_term(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_term(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Rational> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                *acc.entry(ma.mul(mb)).or_insert_with(Rational::zero) += ca * cb;
            }
        }
        Polynomial::from_map(self.nvars, acc)
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $m(self, rhs: Polynomial) -> Polynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.fmt_with(&Self::default_names(self.nvars)))
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Polynomial({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &crate::poly::Ring::standard(3)).unwrap()
    }

    #[test]
    fn partials_of_nodal_cubic() {
        let f = p("x1^2*x2 - x0^3 - x0^2*x2");
        assert_eq!(f.partial(0), p("-3*x0^2 - 2*x0*x2"));
        assert_eq!(f.partial(1), p("2*x1*x2"));
        assert_eq!(f.partial(2), p("x1^2 - x0^2"));
    }

    #[test]
    fn partial_of_quintic() {
        let f = p("x0*x1^2*x2^2 + x1^5 + x2^5");
        assert_eq!(f.partial(2), p("2*x0*x1^2*x2 + 5*x2^4"));
        assert!(p("x0^5").partial(1).is_zero());
    }

    #[test]
    fn dehomogenize_charts() {
        let f = p("x1^2*x2 - x0^3 - x0^2*x2");
        let g = f.dehomogenize(2);
        let r2 = crate::poly::Ring::standard(2);
        assert_eq!(g, parse_polynomial("x1^2 - x0^3 - x0^2", &r2).unwrap());
        let q = p("x0*x1^2*x2^2 + x1^5 + x2^5").dehomogenize(0);
        assert_eq!(q, parse_polynomial("x0^2*x1^2 + x0^5 + x1^5", &r2).unwrap());
        assert_eq!(p("x0^4").dehomogenize(0), Polynomial::one(2));
    }

    #[test]
    fn shear_and_inverse() {
        let f = p("x1^2*x2 - x0^3 - x0^2*x2");
        let shear = vec![vec![1, 1, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let inv = vec![vec![1, -1, 0], vec![0, 1, 0], vec![0, 0, 1]];
        let g = f.linear_change(&shear).unwrap();
        assert_eq!(g.linear_change(&inv).unwrap(), f);
        assert_eq!(p("x0^2").linear_change(&shear).unwrap(), p("x0^2 + 2*x0*x1 + x1^2"));
        let id = vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]];
        assert_eq!(f.linear_change(&id).unwrap(), f);
        let sing = vec![vec![1, 1, 0], vec![1, 1, 0], vec![0, 0, 1]];
        assert_eq!(f.linear_change(&sing), Err(PolyError::SingularMatrix));
    }

    #[test]
    fn evaluate_over_gaussian_integers() {
        let k = NumberField::extension("i", crate::poly::UniPoly::from_i64(&[1, 0, 1])).unwrap();
        let f = p("3*x0^4");
        let i = k.generator();
        let pt = vec![k.one(), k.neg(&i), k.zero()];
        assert_eq!(f.evaluate(&pt, &k).unwrap(), k.from_i64(3));
        let g = p("x0^2 - x1^2");
        let q = NumberField::rationals();
        assert!(g.evaluate(&[q.one(), q.one(), q.zero()], &q).unwrap().is_zero());
        assert!(matches!(g.evaluate(&[q.one()], &q), Err(PolyError::Arity { .. })));
    }

    #[test]
    fn primitive_normalizes_content() {
        assert_eq!(p("-4/3*x0 + 2/3*x1").primitive(), p("2*x0 - x1"));
    }
}
