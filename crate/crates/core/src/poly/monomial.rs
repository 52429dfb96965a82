use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

/// Exponent vector of a monomial `x0^a0 * ... * xn^an`, with cached total degree.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Monomial {
    exps: SmallVec<[u16; 8]>,
    deg: u32,
}

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self { exps: SmallVec::from_elem(0, nvars), deg: 0 }
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut m = Self::one(nvars);
        m.exps[i] = 1;
        m.deg = 1;
        m
    }

    pub fn from_exps(exps: &[u16]) -> Self {
        Self { exps: SmallVec::from_slice(exps), deg: exps.iter().map(|&e| e as u32).sum() }
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn degree(&self) -> u32 {
        self.deg
    }

    pub fn exps(&self) -> &[u16] {
        &self.exps
    }

    pub fn exp(&self, i: usize) -> u16 {
        self.exps[i]
    }

    pub fn is_one(&self) -> bool {
        self.deg == 0
    }

    pub fn mul(&self, other: &Self) -> Self {
        debug_assert_eq!(self.nvars(), other.nvars());
        Self { exps: self.exps.iter().zip(&other.exps).map(|(a, b)| a + b).collect(), deg: self.deg + other.deg }
    }

    pub fn pow(&self, e: u16) -> Self {
        Self { exps: self.exps.iter().map(|a| a * e).collect(), deg: self.deg * e as u32 }
    }

    pub fn divides(&self, other: &Self) -> bool {
        self.deg <= other.deg && self.exps.iter().zip(&other.exps).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn div(&self, other: &Self) -> Option<Self> {
        self.divides(other).then(|| Self {
            exps: other.exps.iter().zip(&self.exps).map(|(b, a)| b - a).collect(),
            deg: other.deg - self.deg,
        })
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let exps: SmallVec<[u16; 8]> = self.exps.iter().zip(&other.exps).map(|(a, b)| *a.max(b)).collect();
        let deg = exps.iter().map(|&e| e as u32).sum();
        Self { exps, deg }
    }

    pub fn is_coprime(&self, other: &Self) -> bool {
        self.exps.iter().zip(&other.exps).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Inserts a zero exponent for a fresh variable at position `at`.
    pub fn insert_var(&self, at: usize) -> Self {
        let mut exps = self.exps.clone();
        exps.insert(at, 0);
        Self { exps, deg: self.deg }
    }

    /// Removes variable `at`, returning its exponent.
    pub fn remove_var(&self, at: usize) -> (Self, u16) {
        let mut exps = self.exps.clone();
        let e = exps.remove(at);
        (Self { exps, deg: self.deg - e as u32 }, e)
    }

    pub fn fmt_with(&self, names: &[String]) -> String {
        let parts: Vec<String> = self
            .exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, &e)| if e == 1 { names[i].clone() } else { format!("{}^{}", names[i], e) })
            .collect();
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join("*")
        }
    }
}

impl fmt::Debug for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.exps.as_slice())
    }
}

/// Term orders on monomials. Every order here refines a well-order and is
/// compatible with multiplication.
#[derive(Clone, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum MonomialOrder {
    Grevlex,
    Lex,
    /// Eliminates the first `k` variables: grevlex on that block, ties broken
    /// by grevlex on the remaining variables.
    Block(usize),
    /// Weighted degree first, grevlex tie-break. Weights must be positive.
    Weighted(Vec<u32>),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => grevlex(a.exps(), b.exps(), a.degree(), b.degree()),
            MonomialOrder::Lex => a.exps().cmp(b.exps()),
            MonomialOrder::Block(k) => {
                let (a1, a2) = a.exps().split_at(*k);
                let (b1, b2) = b.exps().split_at(*k);
                grevlex(a1, b1, sum(a1), sum(b1)).then_with(|| grevlex(a2, b2, sum(a2), sum(b2)))
            }
            MonomialOrder::Weighted(w) => {
                let wa: u64 = a.exps().iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum();
                let wb: u64 = b.exps().iter().zip(w).map(|(&e, &w)| e as u64 * w as u64).sum();
                wa.cmp(&wb).then_with(|| grevlex(a.exps(), b.exps(), a.degree(), b.degree()))
            }
        }
    }

    /// True if the order compares total degree first.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }

    /// Inverse of [`MonomialOrder::name`]: `grevlex`, `lex`, `block(k)` or
    /// `weighted(w0,w1,…)`.
    pub fn from_name(s: &str) -> Option<Self> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let arg =
            |prefix: &str| s.strip_prefix(prefix).and_then(|r| r.strip_prefix('(')).and_then(|r| r.strip_suffix(')'));
        match s.as_str() {
            "grevlex" => Some(MonomialOrder::Grevlex),
            "lex" => Some(MonomialOrder::Lex),
            _ => {
                if let Some(k) = arg("block") {
                    return k.parse().ok().map(MonomialOrder::Block);
                }
                let w: Vec<u32> = arg("weighted")?
                    .trim_matches(|c| c == '[' || c == ']')
                    .split(',')
                    .map(|x| x.parse().ok())
                    .collect::<Option<_>>()?;
                (!w.is_empty() && w.iter().all(|&x| x > 0)).then_some(MonomialOrder::Weighted(w))
            }
        }
    }

    pub fn name(&self) -> String {
        match self {
            MonomialOrder::Grevlex => "grevlex".into(),
            MonomialOrder::Lex => "lex".into(),
            MonomialOrder::Block(k) => format!("block({k})"),
            MonomialOrder::Weighted(w) => format!("weighted({w:?})"),
        }
    }
}

fn sum(e: &[u16]) -> u32 {
    e.iter().map(|&x| x as u32).sum()
}

fn grevlex(a: &[u16], b: &[u16], da: u32, db: u32) -> Ordering {
    da.cmp(&db).then_with(|| {
        for (x, y) in a.iter().zip(b).rev() {
            if x != y {
                return y.cmp(x);
            }
        }
        Ordering::Equal
    })
}

/// Monomials of degree `k` in `nvars` variables.
pub fn monomials_of_degree(nvars: usize, k: u32) -> Vec<Monomial> {
    fn rec(i: usize, left: u32, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left as u16;
            out.push(Monomial::from_exps(exps));
            return;
        }
        for e in (0..=left).rev() {
            exps[i] = e as u16;
            rec(i + 1, left - e, exps, out);
        }
        exps[i] = 0;
    }
    let mut out = Vec::new();
    if nvars > 0 {
        rec(0, k, &mut vec![0; nvars], &mut out);
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exps(e)
    }

    #[test]
    fn order_names_round_trip() {
        for o in [
            MonomialOrder::Grevlex,
            MonomialOrder::Lex,
            MonomialOrder::Block(2),
            MonomialOrder::Weighted(vec![1, 2, 3]),
        ] {
            assert_eq!(MonomialOrder::from_name(&o.name()), Some(o));
        }
        assert_eq!(MonomialOrder::from_name("weighted(2, 1)"), Some(MonomialOrder::Weighted(vec![2, 1])));
        assert_eq!(MonomialOrder::from_name("weighted(0,1)"), None);
        assert_eq!(MonomialOrder::from_name("revlex"), None);
    }

    #[test]
    fn grevlex_examples() {
        let o = MonomialOrder::Grevlex;
        // x0*x2 < x1^2 in grevlex
        assert_eq!(o.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(o.cmp(&m(&[2, 0, 0]), &m(&[0, 1, 1])), Ordering::Greater);
        assert_eq!(o.cmp(&m(&[0, 0, 3]), &m(&[1, 0, 0])), Ordering::Greater);
    }

    #[test]
    fn block_eliminates_first_variables() {
        let o = MonomialOrder::Block(1);
        assert_eq!(o.cmp(&m(&[1, 0, 0]), &m(&[0, 5, 5])), Ordering::Greater);
    }

    #[test]
    fn lcm_and_division() {
        let a = m(&[2, 0, 1]);
        let b = m(&[1, 3, 0]);
        let l = a.lcm(&b);
        assert_eq!(l, m(&[2, 3, 1]));
        assert_eq!(a.div(&l), Some(m(&[0, 3, 0])));
        assert!(!a.is_coprime(&b));
        assert!(m(&[1, 0, 0]).is_coprime(&m(&[0, 2, 2])));
    }
}
