//! A single syzygy of top degree that is nonzero at every point of a given
//! finite set of quasi-homogeneous singular (or smooth) points.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{nonvanishing_entry, AnalysisError, ProjectivePoint};
use crate::field::{FieldElem, NumberField};
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::syzygy::{FreeModuleElement, GradedMatrix};
use crate::Rational;

pub const WITNESS_TRIALS: usize = 16;

#[derive(Clone, Debug, PartialEq)]
pub struct Witness {
    pub element: FreeModuleElement,
    /// Polynomial degree of the components (`d_m`).
    pub exponent: i64,
    /// Number of random combinations tried, the last one succeeding.
    pub trials: usize,
}

pub fn witness_syzygy(
    f: &Polynomial,
    m_f: &GradedMatrix,
    points: &[ProjectivePoint],
    field: &NumberField,
    seed: u64,
) -> Result<Witness, AnalysisError> {
    let nv = f.nvars();
    let d = f.degree().unwrap_or(0) as i64;
    let grad = f.gradient();
    for p in points {
        let singular = grad.iter().all(|g| p.is_zero_of(g, field));
        if singular && nonvanishing_entry(m_f, p, field).is_none() {
            return Err(AnalysisError::NonQhPoint(p.format(field)));
        }
    }
    let exponents: Vec<i64> = m_f.col_shifts().iter().map(|s| s - (d - 1)).collect();
    let top = exponents.iter().copied().max().unwrap_or(d - 1).max(0);

    // Koszul relations e_a ∂_b f − e_b ∂_a f, degree d − 1
    let mut koszul: Vec<Vec<Polynomial>> = Vec::new();
    for a in 0..nv {
        for b in a + 1..nv {
            let mut c = vec![Polynomial::zero(nv); nv];
            c[a] = grad[b].clone();
            c[b] = -grad[a].clone();
            koszul.push(c);
        }
    }
    // spanning set of the degree-d_m syzygies: (column index, monomial)
    let columns: Vec<(&[Polynomial], i64)> = m_f
        .columns()
        .iter()
        .zip(&exponents)
        .map(|(c, &e)| (c.as_slice(), e))
        .chain(koszul.iter().map(|c| (c.as_slice(), d - 1)))
        .collect();
    let span: Vec<(usize, Monomial)> = columns
        .iter()
        .enumerate()
        .filter(|(_, (_, deg))| *deg <= top)
        .flat_map(|(j, (_, deg))| monomials_of_degree(nv, (top - deg) as u32).into_iter().map(move |m| (j, m)))
        .collect();

    // values at the points: mono(p) · column(p), as [point][span] -> vector
    let one = Rational::from_integer(1.into());
    let mut values: Vec<Vec<Vec<FieldElem>>> = Vec::new();
    for p in points {
        let at: Vec<Vec<FieldElem>> = columns
            .iter()
            .map(|(c, _)| c.iter().map(|q| q.evaluate(p.coords(), field).expect("arity")).collect())
            .collect();
        values.push(
            span.iter()
                .map(|(j, mono)| {
                    let mv = Polynomial::term(mono.clone(), one.clone()).evaluate(p.coords(), field).expect("arity");
                    at[*j].iter().map(|c| field.mul(c, &mv)).collect()
                })
                .collect(),
        );
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for trial in 1..=WITNESS_TRIALS {
        let coeffs: Vec<i64> = span.iter().map(|_| rng.random_range(-100..=100)).collect();
        let ok = values.iter().all(|per| {
            let mut acc = vec![field.zero(); nv];
            for (c, v) in coeffs.iter().zip(per) {
                if *c != 0 {
                    let s = Rational::from_integer((*c).into());
                    for (a, x) in acc.iter_mut().zip(v) {
                        *a = field.add(a, &field.scale(x, &s));
                    }
                }
            }
            acc.iter().any(|x| !x.is_zero())
        });
        if !ok {
            continue;
        }
        let mut comps = vec![Polynomial::zero(nv); nv];
        for (c, (j, mono)) in coeffs.iter().zip(&span) {
            if *c != 0 {
                let k = Rational::from_integer((*c).into());
                for (a, q) in comps.iter_mut().zip(columns[*j].0) {
                    *a = &*a + &q.mul_term(mono, &k);
                }
            }
        }
        let element = FreeModuleElement { components: comps, degree: top + d - 1 };
        if element.is_zero() && !points.is_empty() {
            continue;
        }
        return Ok(Witness { element, exponent: top, trials: trial });
    }
    Err(AnalysisError::WitnessNotFound(WITNESS_TRIALS))
}
