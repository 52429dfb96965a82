//! Exact Hilbert series of `k[x]/I` from the leading-term ideal.
//!
//! The numerator is computed by the usual pivot recursion
//! `N(I) = N(I + p) + t^deg(p) N(I : p)` over monomial ideals, so degrees,
//! dimensions and vanishing degrees are read off exactly instead of being
//! detected by watching the Hilbert function stabilize.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Monomial;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum HilbertError {
    #[error("Hilbert function is not eventually constant (positive-dimensional scheme)")]
    PositiveDimensional,
    #[error("Hilbert function stabilizes only at degree {0}, beyond the degree budget")]
    DegreeBudget(i64),
}

/// `HS(t) = numerator(t) / (1 − t)^nvars`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSeries {
    nvars: usize,
    numerator: Vec<i128>,
}

/// Values `h(0), h(1), …` of the Hilbert function up to the point where it
/// becomes constant.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct HilbertProfile {
    pub values: Vec<u64>,
    /// First degree from which `h` is constant.
    pub stable_from: i64,
    pub stable_value: u64,
}

impl HilbertSeries {
    pub fn of_monomial_ideal(nvars: usize, gens: &[Monomial]) -> Self {
        Self { nvars, numerator: trim(numerator(minimal(gens.to_vec()))) }
    }

    pub fn numerator(&self) -> &[i128] {
        &self.numerator
    }

    /// `(q, k)` with `numerator = (1 − t)^k q` and `q(1) ≠ 0`; `q` empty for
    /// the zero ring.
    fn reduced(&self) -> (Vec<i128>, usize) {
        let mut q = self.numerator.clone();
        let mut k = 0;
        while !q.is_empty() && q.iter().sum::<i128>() == 0 {
            // divide by (1 − t): q = (1 − t) r  ⇒  r_i = Σ_{j ≤ i} q_j
            let mut acc = 0;
            let mut r: Vec<i128> = q
                .iter()
                .map(|c| {
                    acc += c;
                    acc
                })
                .collect();
            r.pop();
            q = trim(r);
            k += 1;
        }
        (q, k)
    }

    /// Krull dimension of `k[x]/I`; `-1` for the zero ring.
    pub fn krull_dimension(&self) -> i64 {
        let (q, k) = self.reduced();
        if q.is_empty() {
            -1
        } else {
            self.nvars as i64 - k as i64
        }
    }

    /// Dimension of the projective zero set (`-1` when empty).
    pub fn projective_dimension(&self) -> i64 {
        (self.krull_dimension() - 1).max(-1)
    }

    /// Multiplicity (leading coefficient of the Hilbert polynomial times the
    /// factorial of its degree).
    pub fn degree(&self) -> u64 {
        self.reduced().0.iter().sum::<i128>() as u64
    }

    /// `h(t)` for a single degree.
    pub fn value(&self, t: i64) -> u64 {
        if t < 0 {
            return 0;
        }
        // coefficient of t^t in N(t) * Σ C(i + n − 1, n − 1) t^i
        let n = self.nvars as i128;
        let mut sum: i128 = 0;
        for (j, &c) in self.numerator.iter().enumerate() {
            let i = t as i128 - j as i128;
            if i < 0 || c == 0 {
                continue;
            }
            sum += c * binom(i + n - 1, n - 1);
        }
        sum as u64
    }

    /// Hilbert function up to stabilization, for schemes of dimension ≤ 0.
    pub fn profile(&self, max_degree: i64) -> Result<HilbertProfile, HilbertError> {
        let (q, k) = self.reduced();
        let dim = self.nvars as i64 - k as i64;
        let (stable_from, stable_value) = if q.is_empty() {
            (0, 0)
        } else if dim == 0 {
            (q.len() as i64, 0)
        } else if dim == 1 {
            (q.len() as i64 - 1, q.iter().sum::<i128>() as u64)
        } else {
            return Err(HilbertError::PositiveDimensional);
        };
        if stable_from > max_degree {
            return Err(HilbertError::DegreeBudget(stable_from));
        }
        let values = (0..=stable_from).map(|t| self.value(t)).collect();
        Ok(HilbertProfile { values, stable_from, stable_value })
    }
}

fn binom(n: i128, k: i128) -> i128 {
    if k < 0 || n < k {
        return if k == -1 && n == -1 { 1 } else { 0 };
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) / (i + 1);
    }
    r
}

fn trim(mut v: Vec<i128>) -> Vec<i128> {
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn minimal(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::new();
    for g in gens {
        if !out.iter().any(|m| m.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn add_shifted(a: &mut Vec<i128>, b: &[i128], shift: usize, sign: i128) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, c) in b.iter().enumerate() {
        a[i + shift] += sign * c;
    }
}

/// Numerator for a minimally generated monomial ideal.
fn numerator(gens: Vec<Monomial>) -> Vec<i128> {
    if gens.iter().any(Monomial::is_one) {
        return Vec::new();
    }
    let nvars = gens.first().map_or(0, Monomial::nvars);
    let support = |m: &Monomial| (0..nvars).filter(|&i| m.exp(i) > 0).count();
    let mixed: Vec<&Monomial> = gens.iter().filter(|m| support(m) > 1).collect();
    let pairwise_coprime = gens.iter().enumerate().all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1i128];
        for g in &gens {
            let mut next = acc.clone();
            add_shifted(&mut next, &acc, g.degree() as usize, -1);
            acc = next;
        }
        return acc;
    }
    // Pivot on the variable occurring in most mixed generators (all generators
    // if none are mixed), at its smallest positive exponent there.
    let pool: Vec<&Monomial> = if mixed.is_empty() { gens.iter().collect() } else { mixed };
    let var = (0..nvars).max_by_key(|&i| (pool.iter().filter(|m| m.exp(i) > 0).count(), std::cmp::Reverse(i))).unwrap();
    let e = pool.iter().map(|m| m.exp(var)).filter(|&e| e > 0).min().unwrap();
    let mut pexps = vec![0u16; nvars];
    pexps[var] = e;
    let p = Monomial::from_exps(&pexps);

    let mut with_p = gens.clone();
    with_p.push(p.clone());
    let quotient: Vec<Monomial> = gens
        .iter()
        .map(|m| {
            let mut x = m.exps().to_vec();
            x[var] = x[var].saturating_sub(e);
            Monomial::from_exps(&x)
        })
        .collect();
    let mut out = numerator(minimal(with_p));
    let colon = numerator(minimal(quotient));
    add_shifted(&mut out, &colon, e as usize, 1);
    trim(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    /// Counts monomials of degree t outside the ideal by enumeration.
    fn brute(nvars: usize, gens: &[Monomial], t: u16) -> u64 {
        fn rec(i: usize, left: u16, exps: &mut Vec<u16>, gens: &[Monomial], n: &mut u64) {
            if i + 1 == exps.len() {
                exps[i] = left;
                let mono = Monomial::from_exps(exps);
                if !gens.iter().any(|g| g.divides(&mono)) {
                    *n += 1;
                }
                return;
            }
            for e in 0..=left {
                exps[i] = e;
                rec(i + 1, left - e, exps, gens, n);
            }
        }
        let mut n = 0;
        rec(0, t, &mut vec![0; nvars], gens, &mut n);
        n
    }

    #[test]
    fn matches_enumeration() {
        let cases: Vec<Vec<Monomial>> = vec![
            vec![m(&[2, 0, 0]), m(&[1, 1, 0]), m(&[0, 3, 1])],
            vec![m(&[1, 1, 1]), m(&[0, 2, 2]), m(&[3, 0, 1]), m(&[0, 0, 4])],
            vec![m(&[2, 0, 0]), m(&[0, 2, 0]), m(&[0, 0, 2])],
            vec![],
        ];
        for gens in cases {
            let hs = HilbertSeries::of_monomial_ideal(3, &gens);
            for t in 0..9 {
                assert_eq!(hs.value(t), brute(3, &gens, t as u16), "{gens:?} at {t}");
            }
        }
    }

    #[test]
    fn points_and_emptiness() {
        // (x0^2, x1) in 3 variables: a double point in P^2
        let hs = HilbertSeries::of_monomial_ideal(3, &[m(&[2, 0, 0]), m(&[0, 1, 0])]);
        assert_eq!(hs.projective_dimension(), 0);
        assert_eq!(hs.degree(), 2);
        let p = hs.profile(100).unwrap();
        assert_eq!((p.stable_from, p.stable_value), (1, 2));
        // Artinian: empty projective set, vanishes from degree 3
        let hs = HilbertSeries::of_monomial_ideal(2, &[m(&[2, 0]), m(&[0, 2])]);
        assert_eq!(hs.projective_dimension(), -1);
        assert_eq!(hs.profile(100).unwrap().stable_from, 3);
        assert_eq!(hs.profile(2), Err(HilbertError::DegreeBudget(3)));
        // the unit ideal
        let hs = HilbertSeries::of_monomial_ideal(2, &[m(&[0, 0])]);
        assert_eq!(hs.krull_dimension(), -1);
        // a line
        let hs = HilbertSeries::of_monomial_ideal(3, &[m(&[1, 0, 0])]);
        assert_eq!(hs.profile(100), Err(HilbertError::PositiveDimensional));
    }
}
