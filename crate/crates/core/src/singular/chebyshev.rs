//! Chebyshev hypersurfaces `T_d(x_1) + ⋯ + T_d(x_n) + k = 0`, homogenized by
//! `x_0`, with their node counts.

use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use crate::poly::{Monomial, Polynomial, UniPoly};
use crate::Rational;

/// `T_d` from `T_0 = 1`, `T_1 = t`, `T_{k+1} = 2t T_k − T_{k−1}`.
pub fn chebyshev_t(d: usize) -> UniPoly {
    let (mut prev, mut cur) = (UniPoly::one(), UniPoly::t());
    if d == 0 {
        return prev;
    }
    let two_t = UniPoly::from_i64(&[0, 2]);
    for _ in 1..d {
        let next = two_t.mul(&cur).sub(&prev);
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

#[derive(Clone, Debug, PartialEq)]
pub struct ChebyshevFixture {
    pub polynomial: Polynomial,
    /// `None` when the hypersurface is smooth.
    pub nodes: Option<u64>,
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// The hypersurface `C(n, d, k)` in `P^n`.
///
/// Affine nodes are the points whose coordinates are all critical points of
/// `T_d` (where `T_d = ±1`) with `Σ T_d(x_i) = −k`; with `b` coordinates at
/// value `+1` this forces `b = (n − k)/2`. For `d = 2d_1 + 1` each sign has
/// `d_1` critical points; for `d = 2d_1` the value `+1` has `d_1 − 1` and the
/// value `−1` has `d_1`. The part at infinity is a smooth Fermat hypersurface.
pub fn chebyshev_fixture(n: usize, d: usize, k: &Rational) -> ChebyshevFixture {
    assert!(n >= 2 && d >= 2);
    let nv = n + 1;
    let t = chebyshev_t(d);
    let mut terms: Vec<(Monomial, Rational)> = Vec::new();
    for i in 1..=n {
        for (e, c) in t.coeffs().iter().enumerate() {
            if !c.is_zero() {
                let mut exps = vec![0u16; nv];
                exps[i] = e as u16;
                exps[0] = (d - e) as u16;
                terms.push((Monomial::from_exps(&exps), c.clone()));
            }
        }
    }
    let mut x0 = vec![0u16; nv];
    x0[0] = d as u16;
    terms.push((Monomial::from_exps(&x0), k.clone()));
    let polynomial = Polynomial::from_terms(nv, terms);

    let nodes = k.is_integer().then(|| k.to_integer().to_i64()).flatten().and_then(|k| {
        let n = n as i64;
        if k.abs() > n || (n + k).is_odd() {
            return None;
        }
        let b = ((n - k) / 2) as u64;
        let n = n as u64;
        let d1 = (d / 2) as u64;
        Some(if d.is_odd() {
            binomial(n, b) * d1.pow(n as u32)
        } else {
            binomial(n, b) * (d1 - 1).pow(b as u32) * d1.pow((n - b) as u32)
        })
    });
    ChebyshevFixture { polynomial, nodes }
}
