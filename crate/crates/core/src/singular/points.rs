//! Points of the Jacobian scheme with coordinates in the working field.
//!
//! `P^n` is split into the strata `x_0 = … = x_{j−1} = 0, x_j = 1`. On each
//! stratum the restricted Jacobian ideal is zero-dimensional; the minimal
//! polynomial of every coordinate is read off the multiplication maps on the
//! standard monomials, its roots in the field give candidate coordinates, and
//! candidates are confirmed by exact evaluation.

use num_traits::{One, Zero};

use super::roots::roots_in_field;
use super::{AnalysisError, ProjectivePoint};
use crate::field::{FieldElem, NumberField};
use crate::groebner::{Ideal, PolyBasis};
use crate::poly::{Monomial, MonomialOrder, Polynomial, UniPoly};
use crate::{Rational, Settings};

/// Largest candidate grid tried on one stratum.
const MAX_CANDIDATES: usize = 2_000_000;

#[derive(Clone, Debug, PartialEq)]
pub struct SingularLocus {
    pub points: Vec<ProjectivePoint>,
    /// Geometric points of `Σ_f` (without multiplicity).
    pub geometric_points: u64,
    /// Geometric points that are not among `points`.
    pub residual_points: u64,
}

/// A Gröbner basis (up to interreduction) of the Jacobian ideal restricted to
/// stratum `j`: the homogeneous grevlex basis with `x_j` as the smallest
/// variable, dehomogenized at `x_j = 1`. This avoids running Buchberger on
/// the non-homogeneous restriction, where coefficients grow much faster.
fn stratum_generators(
    partials: &[Polynomial],
    j: usize,
    settings: &Settings,
) -> Result<Vec<Polynomial>, AnalysisError> {
    let zero = Rational::zero();
    let nv = partials[0].nvars() - j;
    // x_j, x_{j+1}, … ↦ positions n, 0, 1, …
    let map: Vec<usize> = (0..nv).map(|i| if i == 0 { nv - 1 } else { i - 1 }).collect();
    let gens = partials.iter().map(|p| (0..j).fold(p.clone(), |q, _| q.specialize(0, &zero)).rename_vars(nv, &map));
    let gb = Ideal::new(nv, gens).groebner(&MonomialOrder::Grevlex, settings.budget)?;
    Ok(gb.polys().iter().map(|g| g.dehomogenize(nv - 1)).collect())
}

/// Minimal polynomial of the class of `y` in `k[y]/I`.
pub(crate) fn minimal_polynomial(gb: &PolyBasis, standard: &[Monomial], y: &Polynomial) -> UniPoly {
    let mut sorted: Vec<Monomial> = standard.to_vec();
    sorted.sort_by(cmp_key);
    let coords = |p: &Polynomial| -> Vec<Rational> {
        let mut v = vec![Rational::zero(); sorted.len()];
        for (m, c) in p.terms() {
            let i = sorted.binary_search_by(|s| cmp_key(s, m)).expect("normal form outside the standard monomials");
            v[i] = c.clone();
        }
        v
    };
    // Echelon rows: (vector, combination of powers, pivot).
    let mut rows: Vec<(Vec<Rational>, Vec<Rational>, usize)> = Vec::new();
    let mut power = gb.normal_form(&Polynomial::one(y.nvars()));
    for k in 0..=sorted.len() {
        let mut v = coords(&power);
        let mut comb = vec![Rational::zero(); k + 1];
        comb[k] = Rational::one();
        for (rv, rc, piv) in &rows {
            if v[*piv].is_zero() {
                continue;
            }
            let f = v[*piv].clone();
            for (a, b) in v.iter_mut().zip(rv) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
            for (a, b) in comb.iter_mut().zip(rc) {
                if !b.is_zero() {
                    *a -= &f * b;
                }
            }
        }
        match v.iter().position(|c| !c.is_zero()) {
            None => return UniPoly::from_coeffs(comb).monic(),
            Some(piv) => {
                let inv = v[piv].recip();
                v.iter_mut().for_each(|a| *a *= &inv);
                comb.iter_mut().for_each(|a| *a *= &inv);
                rows.push((v, comb, piv));
            }
        }
        power = gb.normal_form(&(&power * y));
    }
    unreachable!("powers of an element of a finite-dimensional algebra are dependent")
}

fn cmp_key(a: &Monomial, b: &Monomial) -> std::cmp::Ordering {
    a.exps().cmp(b.exps())
}

/// Points on one stratum; returns the points (in stratum coordinates) and the
/// number of geometric points there.
fn stratum_points(
    gens: &[Polynomial],
    field: &NumberField,
    settings: &Settings,
) -> Result<(Vec<Vec<FieldElem>>, u64), AnalysisError> {
    let nv = gens.first().map_or(0, Polynomial::nvars);
    if nv == 0 {
        let vanish = gens.iter().all(Polynomial::is_zero);
        return Ok((if vanish { vec![Vec::new()] } else { Vec::new() }, vanish as u64));
    }
    let ideal = Ideal::new(nv, gens.iter().cloned());
    let gb = ideal.groebner(&MonomialOrder::Grevlex, settings.budget)?;
    if gb.is_unit() {
        return Ok((Vec::new(), 0));
    }
    let standard = gb.standard_monomials().map_err(|_| AnalysisError::NonIsolated)?;
    let minpolys: Vec<UniPoly> =
        (0..nv).map(|i| minimal_polynomial(&gb, &standard, &Polynomial::var(nv, i)).squarefree_part()).collect();
    // Seidenberg: adding squarefree univariate polynomials gives the radical.
    let radical = ideal.with(minpolys.iter().enumerate().map(|(i, u)| univariate_in(u, nv, i)));
    let geometric = radical.affine_quotient_dimension(settings.budget)? as u64;

    let candidates: Vec<Vec<FieldElem>> = minpolys.iter().map(|u| roots_in_field(u, field)).collect();
    let grid: usize = candidates.iter().map(Vec::len).try_fold(1usize, |a, b| a.checked_mul(b)).unwrap_or(usize::MAX);
    if grid > MAX_CANDIDATES {
        return Ok((Vec::new(), geometric));
    }
    let basis = gb.polys();
    let mut found = Vec::new();
    let mut current = Vec::with_capacity(nv);
    search(&basis, &candidates, field, &mut current, &mut found);
    Ok((found, geometric))
}

fn search(
    basis: &[Polynomial],
    candidates: &[Vec<FieldElem>],
    field: &NumberField,
    current: &mut Vec<FieldElem>,
    found: &mut Vec<Vec<FieldElem>>,
) {
    let depth = current.len();
    if depth == candidates.len() {
        if basis.iter().all(|g| g.evaluate(current, field).is_ok_and(|v| v.is_zero())) {
            found.push(current.clone());
        }
        return;
    }
    for c in &candidates[depth] {
        current.push(c.clone());
        // prune with basis elements involving only the assigned variables
        let ok = basis.iter().filter(|g| involves_only(g, depth + 1)).all(|g| {
            let mut pt = current.clone();
            pt.resize(candidates.len(), field.zero());
            g.evaluate(&pt, field).is_ok_and(|v| v.is_zero())
        });
        if ok {
            search(basis, candidates, field, current, found);
        }
        current.pop();
    }
}

fn involves_only(g: &Polynomial, k: usize) -> bool {
    g.terms().iter().all(|(m, _)| m.exps()[k..].iter().all(|&e| e == 0))
}

fn univariate_in(u: &UniPoly, nvars: usize, i: usize) -> Polynomial {
    Polynomial::from_terms(
        nvars,
        u.coeffs().iter().enumerate().map(|(e, c)| (Monomial::var(nvars, i).pow(e as u16), c.clone())),
    )
}

/// All singular points of `V(f)` with coordinates in `field`.
pub fn find_singular_points(
    f: &Polynomial,
    field: &NumberField,
    settings: &Settings,
) -> Result<SingularLocus, AnalysisError> {
    let nv = f.nvars();
    let partials = f.gradient();
    let mut points = Vec::new();
    let mut geometric = 0u64;
    for j in 0..nv {
        let gens = stratum_generators(&partials, j, settings)?;
        let (pts, g) = stratum_points(&gens, field, settings)?;
        geometric += g;
        for affine in pts {
            let coords: Vec<FieldElem> = (0..j).map(|_| field.zero()).chain([field.one()]).chain(affine).collect();
            points.push(ProjectivePoint::new(coords, field)?.expect("x_j = 1"));
        }
    }
    let residual = geometric - points.len() as u64;
    Ok(SingularLocus { points, geometric_points: geometric, residual_points: residual })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_field, parse_polynomial};
    use crate::Ring;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &Ring::standard(3)).unwrap()
    }

    fn formatted(f: &Polynomial, field: &NumberField) -> (Vec<String>, u64) {
        let loc = find_singular_points(f, field, &Settings::default()).unwrap();
        (loc.points.iter().map(|q| q.format(field)).collect(), loc.residual_points)
    }

    #[test]
    fn node_and_smooth() {
        let q = NumberField::rationals();
        assert_eq!(formatted(&p("x1^2*x2 - x0^2*(x0+x2)"), &q), (vec!["(0 : 0 : 1)".to_string()], 0));
        assert_eq!(formatted(&p("x0^4+x1^4+x2^4"), &q), (vec![], 0));
    }

    #[test]
    fn gaussian_points() {
        let f = p("(x0^2+x1^2)^3 - 4*x0^2*x1^2*x2^2");
        let q = NumberField::rationals();
        let k = parse_field("Q(i) minpoly t^2+1").unwrap();
        let loc_q = find_singular_points(&f, &q, &Settings::default()).unwrap();
        let loc_k = find_singular_points(&f, &k, &Settings::default()).unwrap();
        assert_eq!(loc_q.geometric_points, loc_k.geometric_points);
        assert_eq!(loc_q.geometric_points, 3);
        assert_eq!((loc_q.points.len(), loc_q.residual_points), (1, 2));
        let pts: Vec<String> = loc_k.points.iter().map(|x| x.format(&k)).collect();
        assert_eq!(pts, vec!["(1 : -i : 0)", "(1 : i : 0)", "(0 : 0 : 1)"]);
        assert_eq!(loc_k.residual_points, 0);
    }

    #[test]
    fn minimal_polynomial_of_coordinate() {
        let ideal =
            Ideal::new(2, [p("x0^2 - 2").rename_vars(2, &[0, 1, 1]), p("x1^2 - x0").rename_vars(2, &[0, 1, 1])]);
        let gb = ideal.groebner(&MonomialOrder::Grevlex, Default::default()).unwrap();
        let std = gb.standard_monomials().unwrap();
        let mp = minimal_polynomial(&gb, &std, &Polynomial::var(2, 1));
        assert_eq!(mp, UniPoly::from_i64(&[-2, 0, 0, 0, 1]));
    }
}
