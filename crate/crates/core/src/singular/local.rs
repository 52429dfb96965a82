//! Local Milnor and Tjurina numbers.
//!
//! For an ideal `I` and the prime `P` of a point (or of its Galois orbit),
//! `dim k[y]/(I + P^k)` is non-decreasing in `k` and counts, per point of the
//! orbit, the first `k` values of the Hilbert function of the associated
//! graded ring of the local algebra. That function is standard graded, so
//! once two consecutive `k` give the same dimension it has reached zero and
//! the dimension is the local multiplicity.

use std::collections::HashMap;
use std::sync::Mutex;

use super::{AnalysisError, ProjectivePoint};
use crate::field::NumberField;
use crate::groebner::Ideal;
use crate::poly::{Monomial, MonomialOrder, Polynomial};
use crate::{par, Rational, Settings};
use num_traits::Zero;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LocalNumbers {
    pub tau: u64,
    pub mu: u64,
}

/// `(τ_p, μ_p)` of `V(f)` at `p`.
pub fn local_numbers(
    f: &Polynomial,
    p: &ProjectivePoint,
    field: &NumberField,
    settings: &Settings,
) -> Result<LocalNumbers, AnalysisError> {
    LocalSolver::new(f, field, *settings).numbers(p)
}

/// Computes local numbers for many points, sharing work between points of
/// the same Galois orbit.
pub struct LocalSolver<'a> {
    f: &'a Polynomial,
    field: &'a NumberField,
    settings: Settings,
    cache: Mutex<HashMap<String, LocalNumbers>>,
}

impl<'a> LocalSolver<'a> {
    pub fn new(f: &'a Polynomial, field: &'a NumberField, settings: Settings) -> Self {
        Self { f, field, settings, cache: Mutex::new(HashMap::new()) }
    }

    pub fn numbers(&self, p: &ProjectivePoint) -> Result<LocalNumbers, AnalysisError> {
        if p.dim() + 1 != self.f.nvars() {
            return Err(AnalysisError::NotSingular(p.format(self.field)));
        }
        let grad = self.f.gradient();
        if !grad.iter().all(|g| p.is_zero_of(g, self.field)) {
            return Err(AnalysisError::NotSingular(p.format(self.field)));
        }
        let c = p.chart();
        let g = self.f.dehomogenize(c);
        let beta: Vec<_> = p.coords().iter().enumerate().filter(|&(i, _)| i != c).map(|(_, x)| x.clone()).collect();
        let nv = g.nvars();
        let budget = self.settings.budget;

        let (g, prime) = if p.is_rational() {
            // translate to the origin; the prime is the maximal ideal there
            let images: Vec<Polynomial> = beta
                .iter()
                .enumerate()
                .map(|(i, b)| Polynomial::var(nv, i) + Polynomial::constant(nv, b.as_rational().unwrap().clone()))
                .collect();
            (g.substitute(&images), (0..nv).map(|i| Polynomial::var(nv, i)).collect::<Vec<_>>())
        } else {
            (g, self.orbit_prime(&beta, nv)?)
        };
        let key = if p.is_rational() {
            p.to_string()
        } else {
            format!("{c}|{}", prime.iter().map(|q| q.to_string()).collect::<Vec<_>>().join(","))
        };
        if let Some(hit) = self.cache.lock().unwrap().get(&key) {
            return Ok(*hit);
        }
        let orbit = Ideal::new(nv, prime.iter().cloned()).affine_quotient_dimension(budget)?;
        let partials = g.gradient();
        let tau_gens: Vec<Polynomial> = partials.iter().cloned().chain([g]).collect();
        let rational = p.is_rational();
        let (tau, mu) = par::join(
            self.settings.parallel,
            || stabilized_dimension(&tau_gens, &prime, rational, &self.settings),
            || stabilized_dimension(&partials, &prime, rational, &self.settings),
        );
        let (tau, mu) = (tau? / orbit, mu? / orbit);
        let out = LocalNumbers { tau: tau as u64, mu: mu as u64 };
        self.cache.lock().unwrap().insert(key, out);
        Ok(out)
    }

    /// Prime ideal in `Q[y]` of the conjugates of the affine point `beta`.
    fn orbit_prime(&self, beta: &[crate::FieldElem], nv: usize) -> Result<Vec<Polynomial>, AnalysisError> {
        let t = |e: usize| Monomial::var(nv + 1, 0).pow(e as u16);
        let in_t = |coeffs: &[Rational]| {
            Polynomial::from_terms(nv + 1, coeffs.iter().enumerate().map(|(e, c)| (t(e), c.clone())))
        };
        let minpoly = in_t(self.field.minpoly().coeffs());
        let gens =
            beta.iter().enumerate().map(|(i, b)| Polynomial::var(nv + 1, i + 1) - in_t(b.coeffs())).chain([minpoly]);
        let elim = Ideal::new(nv + 1, gens).eliminate(1, self.settings.budget)?;
        Ok(elim.groebner(&MonomialOrder::Grevlex, self.settings.budget)?.polys())
    }
}

/// Products of `k` generators (with repetition).
fn power_generators(prime: &[Polynomial], k: usize) -> Vec<Polynomial> {
    fn rec(prime: &[Polynomial], start: usize, k: usize, acc: &Polynomial, out: &mut Vec<Polynomial>) {
        if k == 0 {
            out.push(acc.clone());
            return;
        }
        for i in start..prime.len() {
            rec(prime, i, k - 1, &(acc * &prime[i]), out);
        }
    }
    let mut out = Vec::new();
    if let Some(first) = prime.first() {
        rec(prime, 0, k, &Polynomial::one(first.nvars()), &mut out);
    }
    out
}

/// `dim k[y]/(I + m^k)` for `m` the maximal ideal of the origin: monomials
/// of degree `< k` minus the rank of all truncated multiples `y^a g`.
fn truncated_dimension(gens: &[Polynomial], nv: usize, k: usize) -> usize {
    let monos: Vec<Monomial> = (0..k as u32).flat_map(|e| crate::poly::monomials_of_degree(nv, e)).collect();
    let index: HashMap<&Monomial, usize> = monos.iter().enumerate().map(|(i, m)| (m, i)).collect();
    let mut pivots: HashMap<usize, Vec<(usize, Rational)>> = HashMap::new();
    for g in gens {
        let low = g.low_degree().unwrap_or(u32::MAX) as usize;
        for a in monos.iter().filter(|a| a.degree() as usize + low < k) {
            let mut row: Vec<(usize, Rational)> =
                g.terms().iter().filter_map(|(m, c)| index.get(&a.mul(m)).map(|&i| (i, c.clone()))).collect();
            row.sort_by_key(|e| e.0);
            while let Some((lead, c)) = row.first().cloned() {
                match pivots.get(&lead) {
                    Some(p) => row = axpy(&row, &-c, p),
                    None => {
                        let inv = c.recip();
                        pivots.insert(lead, row.into_iter().map(|(i, x)| (i, x * &inv)).collect());
                        break;
                    }
                }
            }
        }
    }
    monos.len() - pivots.len()
}

/// `x + s·y` on sorted sparse rows.
fn axpy(x: &[(usize, Rational)], s: &Rational, y: &[(usize, Rational)]) -> Vec<(usize, Rational)> {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, s * &y[j].1));
            j += 1;
        } else {
            let v = &x[i].1 + s * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// `dim k[y]/(I + P^k)` for `k` large, certified by two consecutive values.
/// At the origin (`rational`) this is plain linear algebra on truncations.
fn stabilized_dimension(
    gens: &[Polynomial],
    prime: &[Polynomial],
    rational: bool,
    settings: &Settings,
) -> Result<usize, AnalysisError> {
    let nv = prime[0].nvars();
    let dim = |k: usize| -> Result<usize, AnalysisError> {
        if rational {
            return Ok(truncated_dimension(gens, nv, k));
        }
        let ideal = Ideal::new(nv, gens.iter().cloned().chain(power_generators(prime, k)));
        Ok(ideal.affine_quotient_dimension(settings.budget)?)
    };
    let mut k = 1;
    loop {
        let (a, b) = (dim(k)?, dim(k + 1)?);
        if a == b {
            return Ok(a);
        }
        k *= 2;
    }
}

/// Rank threshold of `M_f` at a point: `Some((column, row))` of an entry not
/// vanishing there, or `None` if `M_f(p) = 0`.
pub fn nonvanishing_entry(
    m_f: &crate::syzygy::GradedMatrix,
    p: &ProjectivePoint,
    field: &NumberField,
) -> Option<(usize, usize)> {
    (0..m_f.ncols()).find_map(|j| (0..m_f.nrows()).find(|&k| !p.is_zero_of(m_f.entry(k, j), field)).map(|k| (j, k)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::{parse_field, parse_polynomial};
    use crate::Ring;

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &Ring::standard(3)).unwrap()
    }

    fn numbers(f: &str, pt: &[i64]) -> (u64, u64) {
        let q = NumberField::rationals();
        let r = local_numbers(&p(f), &ProjectivePoint::from_i64(pt, &q), &q, &Settings::default()).unwrap();
        (r.tau, r.mu)
    }

    #[test]
    fn node_cusp_and_non_qh() {
        assert_eq!(numbers("x1^2*x2 - x0^2*(x0+x2)", &[0, 0, 1]), (1, 1));
        assert_eq!(numbers("x1^2*x2 - x0^3", &[0, 0, 1]), (2, 2));
        assert_eq!(numbers("x0*x1^2*x2^2 + x1^5 + x2^5", &[1, 0, 0]), (10, 11));
    }

    #[test]
    fn conjugate_points_share_numbers() {
        let k = parse_field("Q(i) minpoly t^2+1").unwrap();
        let f = p("(x0^2+x1^2)^3 - 4*x0^2*x1^2*x2^2");
        let s = Settings::default();
        let solver = LocalSolver::new(&f, &k, s);
        let a = solver.numbers(&ProjectivePoint::parse("1 : i : 0", &k).unwrap().unwrap()).unwrap();
        let b = solver.numbers(&ProjectivePoint::parse("1 : -i : 0", &k).unwrap().unwrap()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.tau, a.mu);
    }

    #[test]
    fn smooth_point_is_rejected() {
        let q = NumberField::rationals();
        let r = local_numbers(
            &p("x0^2 + x1^2 - x2^2"),
            &ProjectivePoint::from_i64(&[1, 0, 1], &q),
            &q,
            &Settings::default(),
        );
        assert!(matches!(r, Err(AnalysisError::NotSingular(_))));
    }
}
