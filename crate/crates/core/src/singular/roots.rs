//! Roots in `Q(α)` of a univariate polynomial over `Q`.
//!
//! Pick a prime `p` at which the minimal polynomial of `α` splits into
//! distinct linear factors and `u` stays squarefree. Every root `β = Σ c_l α^l`
//! of `u` in `Q(α)` then has `k` images `Σ c_l r_s^l` in `Z_p`, one per root
//! `r_s` of the minimal polynomial, and each image is a simple root of `u`.
//! Lifting all those roots p-adically and solving the Vandermonde system for
//! every assignment recovers `c` modulo `p^N`; rational reconstruction and an
//! exact check `u(β) = 0` finish the job. Precision is raised until every
//! assignment is resolved or a height limit is reached.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::field::{FieldElem, NumberField};
use crate::poly::UniPoly;
use crate::Rational;

/// Largest modulus tried, in bits. Roots whose coefficients need more are
/// not found (and stay in the residual locus).
const MAX_BITS: u64 = 8192;

pub fn roots_in_field(u: &UniPoly, field: &NumberField) -> Vec<FieldElem> {
    let u = u.squarefree_part();
    match u.degree() {
        None | Some(0) => return Vec::new(),
        Some(1) => {
            let r = -u.coeff(0) / u.coeff(1);
            return vec![field.from_rational(r)];
        }
        _ => {}
    }
    let ui = u.primitive_integer();
    let mi = field.minpoly().primitive_integer();
    let Some((p, alpha_roots, u_roots)) = choose_prime(&ui, &mi) else { return Vec::new() };
    let k = field.degree();
    let deg_u = ui.len() - 1;

    // all k-tuples of u-roots (one per embedding), as index vectors
    let mut pending: Vec<Vec<usize>> = vec![Vec::new()];
    for _ in 0..k {
        pending = pending
            .into_iter()
            .flat_map(|t| {
                (0..u_roots.len()).map(move |i| {
                    let mut t = t.clone();
                    t.push(i);
                    t
                })
            })
            .collect();
    }
    // distinct embeddings of β are distinct roots unless β is rational
    pending.retain(|t| t.iter().all(|&i| i == t[0]) || distinct(t));

    let mut found: Vec<FieldElem> = Vec::new();
    let pb = BigInt::from(p);
    let mut prec = 1u32;
    while (pb.bits() * prec as u64) < 64 {
        prec += 1;
    }
    loop {
        let modulus = pb.pow(prec);
        let ar: Vec<BigInt> = alpha_roots.iter().map(|&r| hensel(&mi, r, p, prec)).collect();
        let ur: Vec<BigInt> = u_roots.iter().map(|&r| hensel(&ui, r, p, prec)).collect();
        let vander: Vec<Vec<BigInt>> =
            ar.iter().map(|r| (0..k).map(|l| r.modpow(&BigInt::from(l), &modulus)).collect()).collect();
        pending.retain(|t| {
            let rhs: Vec<BigInt> = t.iter().map(|&i| ur[i].clone()).collect();
            let Some(c) = solve_mod(&vander, &rhs, &modulus, &pb) else { return true };
            let Some(coeffs) = c.iter().map(|x| reconstruct(x, &modulus)).collect::<Option<Vec<_>>>() else {
                return true;
            };
            let beta = field.from_coeffs(coeffs);
            if eval_in_field(&u, &beta, field).is_zero() {
                if !found.contains(&beta) {
                    found.push(beta);
                }
                false
            } else {
                true
            }
        });
        if pending.is_empty() || found.len() == deg_u || pb.bits() * prec as u64 > MAX_BITS {
            break;
        }
        prec *= 2;
    }
    found.sort_by(|a, b| a.coeffs().cmp(b.coeffs()));
    found
}

fn distinct(t: &[usize]) -> bool {
    t.iter().enumerate().all(|(i, a)| t[i + 1..].iter().all(|b| a != b))
}

pub(crate) fn eval_in_field(u: &UniPoly, x: &FieldElem, field: &NumberField) -> FieldElem {
    let mut acc = field.zero();
    for c in u.coeffs().iter().rev() {
        acc = field.add(&field.mul(&acc, x), &field.from_rational(c.clone()));
    }
    acc
}

fn is_prime(n: u64) -> bool {
    n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| !n.is_multiple_of(d))
}

fn eval_mod(f: &[BigInt], x: u64, p: u64) -> u64 {
    let mut acc: u64 = 0;
    for c in f.iter().rev() {
        let c = c.mod_floor(&BigInt::from(p)).to_u64().unwrap();
        acc = ((acc as u128 * x as u128 + c as u128) % p as u128) as u64;
    }
    acc
}

fn reduce_mod(f: &[BigInt], p: u64) -> Vec<u64> {
    let mut v: Vec<u64> = f.iter().map(|c| c.mod_floor(&BigInt::from(p)).to_u64().unwrap()).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let mut r = 1u128;
    let mut b = a as u128;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p as u128;
        }
        b = b * b % p as u128;
        e >>= 1;
    }
    r as u64
}

fn gcd_degree_mod(a: &[u64], b: &[u64], p: u64) -> usize {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        // a mod b
        let inv = inv_mod(*b.last().unwrap(), p);
        while a.len() >= b.len() {
            let q = (*a.last().unwrap() as u128 * inv as u128 % p as u128) as u64;
            let shift = a.len() - b.len();
            for (i, &c) in b.iter().enumerate() {
                let sub = (q as u128 * c as u128 % p as u128) as u64;
                a[i + shift] = (a[i + shift] + p - sub) % p;
            }
            while a.last() == Some(&0) {
                a.pop();
            }
            if a.is_empty() {
                break;
            }
        }
        std::mem::swap(&mut a, &mut b);
    }
    a.len().saturating_sub(1)
}

fn derivative(f: &[BigInt]) -> Vec<BigInt> {
    f.iter().enumerate().skip(1).map(|(i, c)| c * BigInt::from(i)).collect()
}

/// Prime with `m` split into distinct linear factors and `u` squarefree mod p,
/// together with the roots of both mod p.
fn choose_prime(u: &[BigInt], m: &[BigInt]) -> Option<(u64, Vec<u64>, Vec<u64>)> {
    let k = m.len() - 1;
    for p in (1009u64..200_000).filter(|&p| is_prime(p)) {
        let pb = BigInt::from(p);
        if u.last().unwrap().is_multiple_of(&pb) || m.last().unwrap().is_multiple_of(&pb) {
            continue;
        }
        let (um, mm) = (reduce_mod(u, p), reduce_mod(m, p));
        if gcd_degree_mod(&um, &reduce_mod(&derivative(u), p), p) > 0 {
            continue;
        }
        if k > 1 && gcd_degree_mod(&mm, &reduce_mod(&derivative(m), p), p) > 0 {
            continue;
        }
        let mroots: Vec<u64> = (0..p).filter(|&x| eval_mod(m, x, p) == 0).collect();
        if mroots.len() != k {
            continue;
        }
        let uroots: Vec<u64> = (0..p).filter(|&x| eval_mod(u, x, p) == 0).collect();
        return Some((p, mroots, uroots));
    }
    None
}

fn eval_big(f: &[BigInt], x: &BigInt, m: &BigInt) -> BigInt {
    let mut acc = BigInt::zero();
    for c in f.iter().rev() {
        acc = (acc * x + c).mod_floor(m);
    }
    acc
}

fn inverse_mod_big(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    e.gcd.is_one().then(|| e.x.mod_floor(m))
}

/// Newton lifting of a simple root mod p to a root mod p^prec.
fn hensel(f: &[BigInt], root: u64, p: u64, prec: u32) -> BigInt {
    let df = derivative(f);
    let pb = BigInt::from(p);
    let mut x = BigInt::from(root);
    let mut e = 1u32;
    while e < prec {
        e = (2 * e).min(prec);
        let m = pb.pow(e);
        let fx = eval_big(f, &x, &m);
        let inv = inverse_mod_big(&eval_big(&df, &x, &m), &m).expect("simple root");
        x = (x - fx * inv).mod_floor(&m);
    }
    x
}

/// Solves `A c = b` modulo `p^N` for `A` invertible mod p.
fn solve_mod(a: &[Vec<BigInt>], b: &[BigInt], m: &BigInt, p: &BigInt) -> Option<Vec<BigInt>> {
    let n = a.len();
    let mut rows: Vec<Vec<BigInt>> =
        a.iter().zip(b).map(|(r, x)| r.iter().cloned().chain([x.clone()]).collect()).collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !rows[r][col].is_multiple_of(p))?;
        rows.swap(col, piv);
        let inv = inverse_mod_big(&rows[col][col], m)?;
        for v in rows[col].iter_mut() {
            *v = (&*v * &inv).mod_floor(m);
        }
        for r in 0..n {
            if r != col && !rows[r][col].is_zero() {
                let factor = rows[r][col].clone();
                for c in col..=n {
                    let sub = &factor * &rows[col][c];
                    rows[r][c] = (&rows[r][c] - sub).mod_floor(m);
                }
            }
        }
    }
    Some(rows.into_iter().map(|r| r[n].clone()).collect())
}

/// Rational `a/b ≡ x (mod m)` with `|a|, b ≤ sqrt(m/2)`, if one exists.
fn reconstruct(x: &BigInt, m: &BigInt) -> Option<Rational> {
    let bound = (m / BigInt::from(2)).sqrt();
    let (mut r0, mut r1) = (m.clone(), x.mod_floor(m));
    let (mut t0, mut t1) = (BigInt::zero(), BigInt::one());
    while r1 > bound {
        let q = &r0 / &r1;
        let r2 = &r0 - &q * &r1;
        let t2 = &t0 - &q * &t1;
        r0 = std::mem::replace(&mut r1, r2);
        t0 = std::mem::replace(&mut t1, t2);
    }
    if t1.is_zero() || t1.abs() > bound {
        return None;
    }
    Some(Rational::new(r1, t1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_field;

    #[test]
    fn rational_roots() {
        let q = NumberField::rationals();
        // (2t - 3)(t + 5)(t^2 + 1)
        let u = UniPoly::from_i64(&[-3, 2]).mul(&UniPoly::from_i64(&[5, 1])).mul(&UniPoly::from_i64(&[1, 0, 1]));
        let r: Vec<String> = roots_in_field(&u, &q).iter().map(|x| q.format(x)).collect();
        assert_eq!(r, vec!["-5", "3/2"]);
    }

    #[test]
    fn gaussian_roots() {
        let k = parse_field("Q(i) minpoly t^2+1").unwrap();
        let u = UniPoly::from_i64(&[1, 0, 1]).mul(&UniPoly::from_i64(&[0, 1]));
        let mut r: Vec<String> = roots_in_field(&u, &k).iter().map(|x| k.format(x)).collect();
        r.sort();
        assert_eq!(r, vec!["-i", "0", "i"]);
    }

    #[test]
    fn sqrt_three_over_two() {
        let k = parse_field("Q(s) minpoly t^2-3").unwrap();
        // 4t^2 - 3 has roots ±s/2; 4t^2 - 1 has rational roots
        let u = UniPoly::from_i64(&[-3, 0, 4]).mul(&UniPoly::from_i64(&[-1, 0, 4]));
        let mut r: Vec<String> = roots_in_field(&u, &k).iter().map(|x| k.format(x)).collect();
        r.sort();
        assert_eq!(r, vec!["-1/2", "-1/2*s", "1/2", "1/2*s"]);
    }

    #[test]
    fn large_height_root() {
        let q = NumberField::rationals();
        let num: i64 = 987_654_321;
        let u = UniPoly::from_i64(&[-num, 123_457]).mul(&UniPoly::from_i64(&[-2, 0, 1]));
        let r = roots_in_field(&u, &q);
        assert_eq!(r, vec![q.from_rational(Rational::new(num.into(), 123_457.into()))]);
    }

    #[test]
    fn reconstruction() {
        let m = BigInt::from(1_000_003i64).pow(2);
        let x = Rational::new((-7).into(), 13.into());
        let inv13 = inverse_mod_big(&BigInt::from(13), &m).unwrap();
        let enc = (BigInt::from(-7) * inv13).mod_floor(&m);
        assert_eq!(reconstruct(&enc, &m), Some(x));
    }
}
