//! Free-module elements with coefficients in an exact field, kept sorted by a
//! module term order. Ideals are the rank-one case.

use std::cmp::Ordering;
use std::fmt::Debug;

use num_traits::{One, Zero};

use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::Rational;

/// Exact coefficient field used by the engine.
pub trait Coeff: Clone + PartialEq + Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; callers never pass zero.
    fn inv(&self) -> Self;
    /// Image of a rational, `None` if its denominator is not invertible.
    fn from_rational(r: &Rational) -> Option<Self>;
}

impl Coeff for Rational {
    fn zero() -> Self {
        Zero::zero()
    }
    fn one() -> Self {
        One::one()
    }
    fn is_zero(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add(&self, o: &Self) -> Self {
        self + o
    }
    fn sub(&self, o: &Self) -> Self {
        self - o
    }
    fn mul(&self, o: &Self) -> Self {
        self * o
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Self {
        self.recip()
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        Some(r.clone())
    }
}

/// Integers modulo a word-sized prime `P`.
#[derive(Clone, Copy, PartialEq, Eq, Debug, Hash)]
pub struct Fp<const P: u64>(pub u64);

impl<const P: u64> Fp<P> {
    fn pow(self, mut e: u64) -> Self {
        let (mut b, mut acc) = (self.0 as u128, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * b % P as u128;
            }
            b = b * b % P as u128;
            e >>= 1;
        }
        Fp(acc as u64)
    }
}

impl<const P: u64> Coeff for Fp<P> {
    fn zero() -> Self {
        Fp(0)
    }
    fn one() -> Self {
        Fp(1)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
    fn add(&self, o: &Self) -> Self {
        Fp((self.0 + o.0) % P)
    }
    fn sub(&self, o: &Self) -> Self {
        Fp((self.0 + P - o.0) % P)
    }
    fn mul(&self, o: &Self) -> Self {
        Fp((self.0 as u128 * o.0 as u128 % P as u128) as u64)
    }
    fn neg(&self) -> Self {
        Fp((P - self.0) % P)
    }
    fn inv(&self) -> Self {
        self.pow(P - 2)
    }
    fn from_rational(r: &Rational) -> Option<Self> {
        let p = num_bigint::BigInt::from(P);
        let reduce = |x: &num_bigint::BigInt| {
            let m = ((x % &p) + &p) % &p;
            u64::try_from(&m).unwrap()
        };
        let d = reduce(r.denom());
        if d == 0 {
            return None;
        }
        Some(Fp(reduce(r.numer())).mul(&Fp::<P>(d).inv()))
    }
}

/// How positions of a free module interact with monomials in a term order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum PositionPolicy {
    /// Compare (shifted) monomials first, positions break ties.
    TermOverPosition,
    /// Compare positions first.
    PositionOverTerm,
}

/// Term order on `(monomial, position)` pairs of a graded free module
/// `⊕ R(-shift_i)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct ModuleOrder {
    pub mono: MonomialOrder,
    pub shifts: Vec<i64>,
    pub policy: PositionPolicy,
}

impl ModuleOrder {
    pub fn ideal(mono: MonomialOrder) -> Self {
        Self { mono, shifts: vec![0], policy: PositionPolicy::TermOverPosition }
    }

    /// Term-over-position with the shifted degree compared first.
    pub fn graded(shifts: Vec<i64>) -> Self {
        Self { mono: MonomialOrder::Grevlex, shifts, policy: PositionPolicy::TermOverPosition }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn degree(&self, m: &Monomial, pos: u32) -> i64 {
        m.degree() as i64 + self.shifts[pos as usize]
    }

    pub fn cmp(&self, a: &Monomial, apos: u32, b: &Monomial, bpos: u32) -> Ordering {
        match self.policy {
            PositionPolicy::TermOverPosition => {
                let by_degree = if self.mono.is_graded() {
                    self.degree(a, apos).cmp(&self.degree(b, bpos))
                } else {
                    Ordering::Equal
                };
                by_degree.then_with(|| self.mono.cmp(a, b)).then_with(|| bpos.cmp(&apos))
            }
            PositionPolicy::PositionOverTerm => bpos.cmp(&apos).then_with(|| self.mono.cmp(a, b)),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Term<C> {
    pub mono: Monomial,
    pub pos: u32,
    pub coeff: C,
}

/// Element of a free module, terms sorted descending under a [`ModuleOrder`].
#[derive(Clone, Debug, PartialEq)]
pub struct Vector<C> {
    terms: Vec<Term<C>>,
}

impl<C: Coeff> Vector<C> {
    pub fn zero() -> Self {
        Self { terms: Vec::new() }
    }

    pub fn from_terms(mut terms: Vec<Term<C>>, order: &ModuleOrder) -> Self {
        terms.sort_by(|a, b| order.cmp(&b.mono, b.pos, &a.mono, a.pos));
        let mut out: Vec<Term<C>> = Vec::with_capacity(terms.len());
        for t in terms {
            match out.last_mut() {
                Some(last) if last.mono == t.mono && last.pos == t.pos => last.coeff = last.coeff.add(&t.coeff),
                _ => out.push(t),
            }
        }
        out.retain(|t| !t.coeff.is_zero());
        Self { terms: out }
    }

    pub(crate) fn from_sorted(terms: Vec<Term<C>>) -> Self {
        Self { terms }
    }

    /// Unit vector `e_pos` scaled by `c * m`.
    pub fn unit(m: Monomial, pos: u32, c: C) -> Self {
        if c.is_zero() {
            Self::zero()
        } else {
            Self { terms: vec![Term { mono: m, pos, coeff: c }] }
        }
    }

    /// Removes and returns the leading term. Panics on zero.
    pub(crate) fn pop_lead(&mut self) -> Term<C> {
        self.terms.remove(0)
    }

    pub fn terms(&self) -> &[Term<C>] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lead(&self) -> Option<&Term<C>> {
        self.terms.first()
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self
                .terms
                .iter()
                .map(|t| Term { mono: t.mono.clone(), pos: t.pos, coeff: t.coeff.mul(c) })
                .collect(),
        }
    }

    pub fn monic(&self) -> Self {
        match self.lead() {
            None => Self::zero(),
            Some(t) => self.scale(&t.coeff.inv()),
        }
    }

    /// `self + c * m * other`.
    pub fn add_scaled(&self, c: &C, m: &Monomial, other: &Self, order: &ModuleOrder) -> Self {
        if c.is_zero() || other.is_zero() {
            return self.clone();
        }
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut it =
            other.terms.iter().map(|t| Term { mono: t.mono.mul(m), pos: t.pos, coeff: t.coeff.mul(c) }).peekable();
        let mut i = 0;
        while i < self.terms.len() {
            let Some(b) = it.peek() else { break };
            let a = &self.terms[i];
            match order.cmp(&a.mono, a.pos, &b.mono, b.pos) {
                Ordering::Greater => {
                    out.push(a.clone());
                    i += 1;
                }
                Ordering::Less => out.push(it.next().unwrap()),
                Ordering::Equal => {
                    let b = it.next().unwrap();
                    let s = a.coeff.add(&b.coeff);
                    if !s.is_zero() {
                        out.push(Term { mono: b.mono, pos: b.pos, coeff: s });
                    }
                    i += 1;
                }
            }
        }
        out.extend(self.terms[i..].iter().cloned());
        out.extend(it);
        Self { terms: out }
    }

    pub fn add(&self, other: &Self, order: &ModuleOrder) -> Self {
        self.add_scaled(&C::one(), &Monomial::one(self.nvars_or(other)), other, order)
    }

    pub fn sub(&self, other: &Self, order: &ModuleOrder) -> Self {
        self.add_scaled(&C::one().neg(), &Monomial::one(self.nvars_or(other)), other, order)
    }

    fn nvars_or(&self, other: &Self) -> usize {
        self.terms.first().or(other.terms.first()).map_or(0, |t| t.mono.nvars())
    }

    /// Multiplies by the term `c * m`; the order is multiplicative so sorting survives.
    pub fn mul_term(&self, c: &C, m: &Monomial) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            terms: self.terms.iter().map(|t| Term { mono: t.mono.mul(m), pos: t.pos, coeff: t.coeff.mul(c) }).collect(),
        }
    }

    /// Re-sorts under another order.
    pub fn reorder(&self, order: &ModuleOrder) -> Self {
        Self::from_terms(self.terms.clone(), order)
    }

    /// Largest shifted degree of a term (the sugar of an input).
    pub fn max_degree(&self, order: &ModuleOrder) -> i64 {
        self.terms.iter().map(|t| order.degree(&t.mono, t.pos)).max().unwrap_or(0)
    }
}

impl Vector<Rational> {
    /// Embeds a polynomial at position `pos`.
    pub fn from_poly(p: &Polynomial, pos: u32, order: &ModuleOrder) -> Self {
        Self::from_terms(
            p.terms().iter().map(|(m, c)| Term { mono: m.clone(), pos, coeff: c.clone() }).collect(),
            order,
        )
    }

    /// Builds from one polynomial per position.
    pub fn from_components(comps: &[Polynomial], order: &ModuleOrder) -> Self {
        Self::from_terms(
            comps
                .iter()
                .enumerate()
                .flat_map(|(i, p)| {
                    p.terms().iter().map(move |(m, c)| Term { mono: m.clone(), pos: i as u32, coeff: c.clone() })
                })
                .collect(),
            order,
        )
    }

    /// Splits into `rank` component polynomials in `nvars` variables.
    pub fn components(&self, rank: usize, nvars: usize) -> Vec<Polynomial> {
        let mut buckets: Vec<Vec<(Monomial, Rational)>> = vec![Vec::new(); rank];
        for t in &self.terms {
            buckets[t.pos as usize].push((t.mono.clone(), t.coeff.clone()));
        }
        buckets.into_iter().map(|b| Polynomial::from_terms(nvars, b)).collect()
    }

    pub fn to_poly(&self, nvars: usize) -> Polynomial {
        self.components(1, nvars).pop().unwrap()
    }
}

/// Reduces rational data into another coefficient field.
pub fn map_coeffs<C: Coeff>(v: &Vector<Rational>) -> Option<Vector<C>> {
    let mut terms = Vec::with_capacity(v.len());
    for t in v.terms() {
        let c = C::from_rational(&t.coeff)?;
        if !c.is_zero() {
            terms.push(Term { mono: t.mono.clone(), pos: t.pos, coeff: c });
        }
    }
    Some(Vector::from_sorted(terms))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fp_arithmetic() {
        type F = Fp<101>;
        let a = F::from_rational(&Rational::new(1.into(), 3.into())).unwrap();
        assert_eq!(a.mul(&Fp(3)), F::one());
        assert_eq!(Fp::<101>(5).inv().mul(&Fp(5)), F::one());
        assert!(F::from_rational(&Rational::new(1.into(), 101.into())).is_none());
    }

    #[test]
    fn shifted_top_order() {
        let o = ModuleOrder::graded(vec![0, 2]);
        let x = Monomial::from_exps(&[1, 0]);
        let one = Monomial::one(2);
        // deg(1 e_1) = 2 > deg(x e_0) = 1
        assert_eq!(o.cmp(&one, 1, &x, 0), Ordering::Greater);
        assert_eq!(o.cmp(&x, 0, &x, 1), Ordering::Less);
    }

    #[test]
    fn add_scaled_cancels() {
        let o = ModuleOrder::ideal(MonomialOrder::Grevlex);
        let p = crate::poly::parse_polynomial("x0^2 + x1", &crate::Ring::standard(2)).unwrap();
        let v = Vector::from_poly(&p, 0, &o);
        let z = v.add_scaled(&Rational::from_integer((-1).into()), &Monomial::one(2), &v, &o);
        assert!(z.is_zero());
    }
}
