use num_traits::Zero;
use thiserror::Error;

use super::engine::{groebner, Budget, GbError, GroebnerBasis};
use super::hilbert::{HilbertError, HilbertSeries};
use super::vector::{map_coeffs, Fp, ModuleOrder, Vector};
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IdealError {
    #[error(transparent)]
    Groebner(#[from] GbError),
    #[error(transparent)]
    Hilbert(#[from] HilbertError),
    #[error("quotient is not finite dimensional (positive-dimensional zero set or wrong chart)")]
    NotZeroDimensional,
    #[error("ideal is not homogeneous")]
    NotHomogeneous,
}

/// Ideal of a polynomial ring given by generators.
#[derive(Clone, Debug, PartialEq)]
pub struct Ideal {
    nvars: usize,
    gens: Vec<Polynomial>,
}

impl Ideal {
    /// Zero generators are dropped.
    pub fn new(nvars: usize, gens: impl IntoIterator<Item = Polynomial>) -> Self {
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect::<Vec<_>>();
        debug_assert!(gens.iter().all(|g| g.nvars() == nvars));
        Self { nvars, gens }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_homogeneous(&self) -> bool {
        self.gens.iter().all(Polynomial::is_homogeneous)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        Ideal::new(self.nvars, self.gens.iter().chain(&other.gens).cloned())
    }

    pub fn with(&self, extra: impl IntoIterator<Item = Polynomial>) -> Ideal {
        Ideal::new(self.nvars, self.gens.iter().cloned().chain(extra))
    }

    pub fn groebner(&self, order: &MonomialOrder, budget: Budget) -> Result<PolyBasis, GbError> {
        let mo = ModuleOrder::ideal(order.clone());
        let inputs = self.gens.iter().map(|g| Vector::from_poly(g, 0, &mo)).collect();
        Ok(PolyBasis { nvars: self.nvars, order: order.clone(), gb: groebner(inputs, mo, budget, false)? })
    }

    /// `I ∩ k[x_k, …]`, returned in the remaining variables.
    pub fn eliminate(&self, k: usize, budget: Budget) -> Result<Ideal, GbError> {
        let gb = self.groebner(&MonomialOrder::Block(k), budget)?;
        let keep = gb
            .polys()
            .into_iter()
            .filter(|p| p.terms().iter().all(|(m, _)| m.exps()[..k].iter().all(|&e| e == 0)))
            .map(|p| (0..k).fold(p, |p, _| p.specialize(0, &Rational::zero())))
            .collect::<Vec<_>>();
        Ok(Ideal::new(self.nvars - k, keep))
    }

    /// `I : h^∞`, by adjoining `s` with `1 − s·h` and eliminating `s`.
    pub fn saturate(&self, h: &Polynomial, budget: Budget) -> Result<Ideal, GbError> {
        let lift = |p: &Polynomial| p.insert_var(0);
        let s = Polynomial::var(self.nvars + 1, 0);
        let rel = Polynomial::one(self.nvars + 1) - &s * &lift(h);
        let big = Ideal::new(self.nvars + 1, self.gens.iter().map(lift).chain([rel]));
        big.eliminate(1, budget)
    }

    /// `I ∩ J` via `t·I + (1 − t)·J` and elimination of `t`.
    pub fn intersect(&self, other: &Ideal, budget: Budget) -> Result<Ideal, GbError> {
        let t = Polynomial::var(self.nvars + 1, 0);
        let omt = Polynomial::one(self.nvars + 1) - t.clone();
        let gens =
            self.gens.iter().map(|g| &t * &g.insert_var(0)).chain(other.gens.iter().map(|g| &omt * &g.insert_var(0)));
        Ideal::new(self.nvars + 1, gens).eliminate(1, budget)
    }

    /// Saturation by the irrelevant ideal `(x_0, …, x_n)`.
    pub fn saturate_irrelevant(&self, budget: Budget) -> Result<Ideal, GbError> {
        let mut acc: Option<Ideal> = None;
        for i in 0..self.nvars {
            let s = self.saturate(&Polynomial::var(self.nvars, i), budget)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s, budget)?,
            });
        }
        Ok(acc.unwrap_or_else(|| self.clone()))
    }

    /// Vector-space dimension of the affine quotient `k[y]/I`.
    pub fn affine_quotient_dimension(&self, budget: Budget) -> Result<usize, IdealError> {
        self.groebner(&MonomialOrder::Grevlex, budget)?.affine_dimension()
    }

    /// Hilbert series of `R/I` for homogeneous `I`.
    pub fn hilbert_series(&self, budget: Budget) -> Result<HilbertSeries, IdealError> {
        if !self.is_homogeneous() {
            return Err(IdealError::NotHomogeneous);
        }
        Ok(self.groebner(&MonomialOrder::Grevlex, budget)?.hilbert_series())
    }

    /// Whether `V(I) ⊂ P^n` is empty, with the first degree in which `R/I`
    /// vanishes as certificate.
    pub fn projective_is_empty(&self, budget: Budget, max_degree: i64) -> Result<(bool, Option<i64>), IdealError> {
        let hs = self.hilbert_series(budget)?;
        if hs.projective_dimension() >= 0 {
            return Ok((false, None));
        }
        let cert = hs.profile(max_degree)?.stable_from;
        Ok((true, Some(cert)))
    }

    /// Degree of the zero-dimensional projective scheme `V(I)` (0 if empty).
    pub fn projective_degree(&self, budget: Budget, max_degree: i64) -> Result<u64, IdealError> {
        let hs = self.hilbert_series(budget)?;
        if hs.projective_dimension() > 0 {
            return Err(IdealError::NotZeroDimensional);
        }
        Ok(hs.profile(max_degree)?.stable_value)
    }
}

/// Reduced Gröbner basis of an ideal.
#[derive(Clone, Debug)]
pub struct PolyBasis {
    nvars: usize,
    order: MonomialOrder,
    gb: GroebnerBasis<Rational>,
}

impl PolyBasis {
    /// Wraps a basis known to be reduced (e.g. read back from a cache); the
    /// Buchberger criterion and membership of `ideal` are re-checked.
    pub fn from_reduced(ideal: &Ideal, order: &MonomialOrder, polys: &[Polynomial]) -> Option<Self> {
        let mo = ModuleOrder::ideal(order.clone());
        let gb = GroebnerBasis::trusted(polys.iter().map(|p| Vector::from_poly(p, 0, &mo)).collect(), mo);
        let pb = PolyBasis { nvars: ideal.nvars, order: order.clone(), gb };
        (pb.gb.check_buchberger() && ideal.gens.iter().all(|g| pb.contains(g))).then_some(pb)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.gb.len()
    }

    pub fn is_empty(&self) -> bool {
        self.gb.is_empty()
    }

    pub fn polys(&self) -> Vec<Polynomial> {
        self.gb.elements().iter().map(|e| e.v.to_poly(self.nvars)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.gb.leads().map(|(m, _)| m.clone()).collect()
    }

    pub fn is_unit(&self) -> bool {
        self.gb.leads().any(|(m, _)| m.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let mo = self.gb.order().clone();
        self.gb.reduce(Vector::from_poly(f, 0, &mo)).to_poly(self.nvars)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    pub fn hilbert_series(&self) -> HilbertSeries {
        HilbertSeries::of_monomial_ideal(self.nvars, &self.leading_monomials())
    }

    /// Standard monomials of a zero-dimensional ideal.
    pub fn standard_monomials(&self) -> Result<Vec<Monomial>, IdealError> {
        let leads = self.leading_monomials();
        let mut bound = vec![None; self.nvars];
        for m in &leads {
            let support: Vec<usize> = (0..self.nvars).filter(|&i| m.exp(i) > 0).collect();
            match support.as_slice() {
                [] => return Ok(Vec::new()),
                [i] => bound[*i] = Some(bound[*i].map_or(m.exp(*i), |b: u16| b.min(m.exp(*i)))),
                _ => {}
            }
        }
        let bound: Vec<u16> = bound.into_iter().collect::<Option<_>>().ok_or(IdealError::NotZeroDimensional)?;
        let mut out = Vec::new();
        let mut exps = vec![0u16; self.nvars];
        fn walk(i: usize, exps: &mut Vec<u16>, bound: &[u16], leads: &[Monomial], out: &mut Vec<Monomial>) {
            if i == exps.len() {
                out.push(Monomial::from_exps(exps));
                return;
            }
            for e in 0..bound[i] {
                exps[i] = e;
                // prune: a prefix already divisible by some lead stays divisible
                let m = Monomial::from_exps(exps);
                if leads.iter().any(|l| l.divides(&m)) {
                    break;
                }
                walk(i + 1, exps, bound, leads, out);
            }
            exps[i] = 0;
        }
        walk(0, &mut exps, &bound, &leads, &mut out);
        Ok(out)
    }

    pub fn affine_dimension(&self) -> Result<usize, IdealError> {
        Ok(self.standard_monomials()?.len())
    }

    /// Compares leading monomials with a basis computed modulo a large prime.
    /// Agreement is expected for all but finitely many primes; this is a
    /// consistency diagnostic and never decides a result.
    pub fn modular_leads_agree(&self, ideal: &Ideal) -> Option<bool> {
        const P: u64 = 2_147_483_647;
        let mo = ModuleOrder::ideal(self.order.clone());
        let inputs = ideal
            .gens
            .iter()
            .map(|g| map_coeffs::<Fp<P>>(&Vector::from_poly(g, 0, &mo)))
            .collect::<Option<Vec<_>>>()?;
        let gp = groebner(inputs, mo, Budget::default(), false).ok()?;
        let lp: Vec<Monomial> = gp.leads().map(|(m, _)| m.clone()).collect();
        Some(lp == self.leading_monomials())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::Ring;

    fn p(s: &str, n: usize) -> Polynomial {
        parse_polynomial(s, &Ring::standard(n)).unwrap()
    }

    fn ideal(gens: &[&str], n: usize) -> Ideal {
        Ideal::new(n, gens.iter().map(|g| p(g, n)))
    }

    const B: Budget = Budget { max_pairs: None };

    #[test]
    fn variables_are_their_own_basis() {
        let gb = ideal(&["x0", "x1"], 3).groebner(&MonomialOrder::Grevlex, B).unwrap();
        assert_eq!(gb.polys(), vec![p("x1", 3), p("x0", 3)]);
    }

    #[test]
    fn unit_ideal_has_basis_one() {
        let gb = ideal(&["x0 + 1", "x0"], 1).groebner(&MonomialOrder::Grevlex, B).unwrap();
        assert_eq!(gb.polys(), vec![Polynomial::one(1)]);
        assert!(gb.is_unit());
    }

    #[test]
    fn s_polynomial_descendant() {
        // Under grevlex the leads x0^2, x1^2 are coprime and the input is
        // already a basis. Under lex the leads are x0^2 and x0*x2, and the
        // S-polynomial x2*g1 - x0*g2 = x0*x1^2 - x1*x2^2 is irreducible.
        let i = ideal(&["x0^2 - x1*x2", "x1^2 - x0*x2"], 3);
        let gb = i.groebner(&MonomialOrder::Grevlex, B).unwrap();
        assert_eq!(gb.len(), 2);
        let gb = i.groebner(&MonomialOrder::Lex, B).unwrap();
        assert!(gb.gb.check_buchberger());
        assert!(gb.polys().contains(&p("x0*x1^2 - x1*x2^2", 3)));
        assert_eq!(gb.modular_leads_agree(&i), Some(true));
    }

    #[test]
    fn normal_form_properties() {
        let i = ideal(&["x0^2 - x1*x2", "x1^2 - x0*x2"], 3);
        let gb = i.groebner(&MonomialOrder::Grevlex, B).unwrap();
        let f = p("x0^3 + 2*x1^3 - x2 + 7", 3);
        let nf = gb.normal_form(&f);
        assert_eq!(gb.normal_form(&nf), nf);
        assert!(gb.contains(&(f - nf)));
        assert_eq!(
            ideal(&["x0", "x1", "x2"], 3)
                .groebner(&MonomialOrder::Grevlex, B)
                .unwrap()
                .normal_form(&Polynomial::one(3)),
            Polynomial::one(3)
        );
    }

    #[test]
    fn elimination_examples() {
        let e = ideal(&["x0 - 2", "x1 - 3*x0"], 2).eliminate(1, B).unwrap();
        assert_eq!(e.generators(), &[p("x0 - 6", 1)]);
        let e = ideal(&["x0 - x1^2"], 2).eliminate(1, B).unwrap();
        assert!(e.generators().is_empty());
    }

    #[test]
    fn saturation_examples() {
        let s = ideal(&["x0*x1"], 2).saturate(&p("x0", 2), B).unwrap();
        assert_eq!(s.generators(), &[p("x1", 2)]);
        let i = ideal(&["x0^2", "x0*x1"], 2);
        let s = i.saturate(&Polynomial::one(2), B).unwrap();
        let a = s.groebner(&MonomialOrder::Grevlex, B).unwrap().polys();
        let b = i.groebner(&MonomialOrder::Grevlex, B).unwrap().polys();
        assert_eq!(a, b);
    }

    #[test]
    fn irrelevant_saturation_removes_embedded_component() {
        // (x0^2, x0*x1, x0*x2) = (x0) ∩ (x0^2, x1, x2)
        let i = ideal(&["x0^2", "x0*x1", "x0*x2"], 3);
        let s = i.saturate_irrelevant(B).unwrap();
        assert_eq!(s.groebner(&MonomialOrder::Grevlex, B).unwrap().polys(), vec![p("x0", 3)]);
    }

    #[test]
    fn affine_dimension() {
        assert_eq!(ideal(&["x0", "x1"], 2).affine_quotient_dimension(B).unwrap(), 1);
        assert_eq!(ideal(&["x0^2", "x1^3"], 2).affine_quotient_dimension(B).unwrap(), 6);
        assert_eq!(ideal(&["x0*x1"], 2).affine_quotient_dimension(B), Err(IdealError::NotZeroDimensional));
        // order independence
        let i = ideal(&["x0^2 + x1^2 - 1", "x0 - x1^3"], 2);
        let lex = i.groebner(&MonomialOrder::Lex, B).unwrap().affine_dimension().unwrap();
        assert_eq!(lex, i.affine_quotient_dimension(B).unwrap());
        assert_eq!(lex, 6);
    }

    #[test]
    fn projective_queries() {
        let all = ideal(&["x0", "x1", "x2"], 3);
        assert_eq!(all.projective_is_empty(B, 200).unwrap(), (true, Some(1)));
        assert!(!ideal(&["x0"], 3).projective_is_empty(B, 200).unwrap().0);
        // nodal cubic Jacobian: one reduced point
        let j = ideal(&["-3*x0^2 - 2*x0*x2", "2*x1*x2", "-x0^2 + x1^2"], 3);
        assert_eq!(j.projective_degree(B, 200).unwrap(), 1);
        assert_eq!(ideal(&["x0"], 3).projective_degree(B, 200), Err(IdealError::NotZeroDimensional));
    }
}
