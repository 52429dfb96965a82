//! Transversal coordinates and total Milnor/Tjurina numbers.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::groebner::Ideal;
use crate::poly::Polynomial;
use crate::{par, Rational, Settings};
use num_traits::Zero;

/// Random changes tried after the identity.
pub const CHART_ATTEMPTS: usize = 32;

/// Integer coordinate change `x = A z` after which `{z_0 = 0}` meets `V(f)`
/// transversally and avoids the singular points.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Chart {
    pub matrix: Vec<Vec<i64>>,
    /// 0 for the identity, otherwise the 1-based position among the sparse
    /// and then random candidates.
    pub attempt: usize,
}

/// Whether `V(f) ∩ {x_0 = 0}` is smooth, certified by an empty Jacobian
/// scheme of the restriction. This also rules out singular points of
/// `V(f)` on the hyperplane.
pub fn hyperplane_is_transversal(f: &Polynomial, settings: &Settings) -> Result<bool, AnalysisError> {
    let h = f.specialize(0, &Rational::zero());
    if h.is_zero() {
        return Ok(false);
    }
    let jac = Ideal::new(h.nvars(), h.gradient());
    Ok(jac.projective_is_empty(settings.budget, settings.degree_budget)?.0)
}

fn unimodular(n: usize, rng: &mut ChaCha8Rng) -> Vec<Vec<i64>> {
    let mut l = vec![vec![0i64; n]; n];
    let mut u = vec![vec![0i64; n]; n];
    for i in 0..n {
        l[i][i] = 1;
        u[i][i] = 1;
        for j in 0..i {
            l[i][j] = rng.random_range(-2..=2);
        }
        for j in i + 1..n {
            u[i][j] = rng.random_range(-2..=2);
        }
    }
    (0..n).map(|i| (0..n).map(|j| (0..n).map(|k| l[i][k] * u[k][j]).sum()).collect()).collect()
}

/// `A` with `x = A z` and `z_0 = ℓ(x)`, where `ℓ_k = 1`.
fn chart_for_form(form: &[i64], k: usize) -> Vec<Vec<i64>> {
    let n = form.len();
    // z_0 = ℓ(x); z_k = x_0 (k ≠ 0); other z_i = x_i.
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        if i != k {
            a[i][source_inv(i, k)] = 1;
        }
    }
    a[k][0] = 1;
    for j in 0..n {
        if j != k {
            let col = source_inv(j, k);
            a[k][col] -= form[j];
        }
    }
    a
}

/// The `z` index holding `x_i` for `i ≠ k`.
fn source_inv(i: usize, k: usize) -> usize {
    if i == 0 {
        k
    } else {
        i
    }
}

/// Sparse hyperplanes first: coordinate hyperplanes, then `x_i ± x_j`.
fn sparse_forms(n: usize) -> Vec<Vec<i64>> {
    let mut forms = Vec::new();
    for i in 1..n {
        let mut l = vec![0; n];
        l[i] = 1;
        forms.push(l);
    }
    for i in 0..n {
        for j in i + 1..n {
            for c in [1, -1] {
                let mut l = vec![0; n];
                l[i] = 1;
                l[j] = c;
                forms.push(l);
            }
        }
    }
    forms
}

/// The identity if `{x_0 = 0}` is transversal, then sparse hyperplanes, then
/// up to [`CHART_ATTEMPTS`] seeded random unimodular changes.
pub fn choose_transversal_chart(f: &Polynomial, seed: u64, settings: &Settings) -> Result<Chart, AnalysisError> {
    let n = f.nvars();
    let identity: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| (i == j) as i64).collect()).collect();
    if hyperplane_is_transversal(f, settings)? {
        return Ok(Chart { matrix: identity, attempt: 0 });
    }
    let mut candidates: Vec<Vec<Vec<i64>>> = sparse_forms(n)
        .into_iter()
        .map(|l| {
            let k = l.iter().position(|&c| c == 1).unwrap();
            chart_for_form(&l, k)
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    candidates.extend((0..CHART_ATTEMPTS).map(|_| unimodular(n, &mut rng)));
    for (i, a) in candidates.into_iter().enumerate() {
        let g = f.linear_change(&a).expect("unimodular");
        if hyperplane_is_transversal(&g, settings)? {
            return Ok(Chart { matrix: a, attempt: i + 1 });
        }
    }
    Err(AnalysisError::NoTransversalChart(CHART_ATTEMPTS + sparse_forms(n).len()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Totals {
    pub tau: u64,
    pub mu: u64,
}

/// Total Tjurina and Milnor numbers, `dim Q[y]/(g, ∂g)` and
/// `dim Q[y]/(g^n, ∂g)` for `g` the transformed `f` on `x_0 = 1`.
///
/// Both affine ideals are dehomogenizations of `(f', ∂_1 f', …, ∂_n f')` and
/// `(f'^n, ∂_1 f', …)`; transversality means neither has a zero on `x_0 = 0`,
/// so each affine dimension is the degree of the projective scheme, which is
/// read off a homogeneous Gröbner basis.
///
/// `D(k) = dim Q[y]/(g^k, ∂g)` is non-decreasing, and once `D(k) = D(k+1)`
/// it is constant: on each local algebra `A` of `Q[y]/(∂g)` that means
/// `g^k A = g^{k+1} A`, so `g^k A = 0` by Nakayama. The exponent therefore
/// only climbs to `n` when the values keep growing.
pub fn totals(f: &Polynomial, chart: &Chart, settings: &Settings) -> Result<Totals, AnalysisError> {
    let h = f.linear_change(&chart.matrix).expect("unimodular");
    let nv = h.nvars();
    let n = (nv - 1) as u32;
    let partials: Vec<Polynomial> = (1..nv).map(|i| h.partial(i)).collect();
    let degree = |k: u32| -> Result<u64, AnalysisError> {
        let ideal = Ideal::new(nv, partials.iter().cloned().chain([h.pow(k)]));
        Ok(ideal.projective_degree(settings.budget, settings.degree_budget)?)
    };
    let (tau, second) = par::join(settings.parallel, || degree(1), || degree(2.min(n)));
    let (tau, mut prev) = (tau?, second?);
    let mut stable = (prev == tau).then_some(tau);
    let mut k = 2;
    while stable.is_none() {
        if k >= n {
            stable = Some(prev);
            break;
        }
        let next = degree(k + 1)?;
        if next == prev {
            stable = Some(prev);
        }
        prev = next;
        k += 1;
    }
    let mu = stable.expect("loop ends with a value");
    Ok(Totals { tau, mu })
}

pub fn total_tjurina(f: &Polynomial, seed: u64, settings: &Settings) -> Result<u64, AnalysisError> {
    Ok(totals(f, &choose_transversal_chart(f, seed, settings)?, settings)?.tau)
}

pub fn total_milnor(f: &Polynomial, seed: u64, settings: &Settings) -> Result<u64, AnalysisError> {
    Ok(totals(f, &choose_transversal_chart(f, seed, settings)?, settings)?.mu)
}
