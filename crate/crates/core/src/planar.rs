//! Plane curves in `P^2 × P^2`: the equations `y · M_f` of `Z_f`, its
//! Hilbert–Burch matrix `S = (P_f | N·y)`, numerical classes of `S_f` and
//! `Z_f`, and the Koszul-hull minors.
//!
//! Bigraded forms live in the ring `Q[x_0, …, x_n, y_0, …, y_n]`.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poly::Polynomial;
use crate::syzygy::{GradedMatrix, ResolutionData};
use crate::Rational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PlanarError {
    #[error("expected a plane curve")]
    NotPlanar,
    #[error("matrix shapes do not fit: {0}")]
    Shape(String),
    #[error("y·M_f · S ≠ 0")]
    NotAComplex,
    #[error("maximal minors of S are not proportional to y·M_f")]
    NotProportional,
}

/// Polynomial in x- and y-variables with every term of one bidegree.
#[derive(Clone, Debug, PartialEq)]
pub struct BigradedForm {
    pub poly: Polynomial,
    pub bidegree: (u32, u32),
}

impl BigradedForm {
    /// `None` if `poly` is not bihomogeneous (zero has every bidegree).
    pub fn new(poly: Polynomial, nx: usize) -> Option<Self> {
        let bideg = |m: &crate::Monomial| {
            let e = m.exps();
            (e[..nx].iter().map(|&a| a as u32).sum::<u32>(), e[nx..].iter().map(|&a| a as u32).sum::<u32>())
        };
        let mut it = poly.terms().iter().map(|(m, _)| bideg(m));
        let first = it.next().unwrap_or((0, 0));
        it.all(|b| b == first).then_some(Self { poly, bidegree: first })
    }

    pub fn evaluate(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let pt: Vec<Rational> = x.iter().chain(y).cloned().collect();
        self.poly.eval_rational(&pt)
    }
}

/// Variable names `x0..xn, y0..yn`.
pub fn bigraded_names(nx: usize) -> Vec<String> {
    (0..nx).map(|i| format!("x{i}")).chain((0..nx).map(|i| format!("y{i}"))).collect()
}

fn embed_x(p: &Polynomial, nx: usize) -> Polynomial {
    p.rename_vars(2 * nx, &(0..nx).collect::<Vec<_>>())
}

fn y_var(nx: usize, i: usize) -> Polynomial {
    Polynomial::var(2 * nx, nx + i)
}

/// `(y_0, …, y_n) · M_f`: one form of bidegree `(d_j, 1)` per column.
pub fn zf_generators(m_f: &GradedMatrix) -> Vec<BigradedForm> {
    let nx = m_f.nrows();
    m_f.columns()
        .iter()
        .map(|col| {
            let p = col
                .iter()
                .enumerate()
                .fold(Polynomial::zero(2 * nx), |acc, (k, a)| acc + embed_x(a, nx) * y_var(nx, k));
            BigradedForm::new(p, nx).expect("columns of M_f are homogeneous")
        })
        .collect()
}

/// The `C(n+1, 2)` minors `y_i ∂_j f − y_j ∂_i f` of the matrix with rows `y`
/// and `∇f`.
pub fn koszul_hull_generators(f: &Polynomial) -> Vec<BigradedForm> {
    let nx = f.nvars();
    let g: Vec<Polynomial> = f.gradient().iter().map(|p| embed_x(p, nx)).collect();
    let mut out = Vec::new();
    for i in 0..nx {
        for j in i + 1..nx {
            let p = y_var(nx, i) * g[j].clone() - y_var(nx, j) * g[i].clone();
            out.push(BigradedForm::new(p, nx).expect("bihomogeneous"));
        }
    }
    out
}

/// Hilbert–Burch matrix of `Z_f`, as polynomial columns in the bigraded ring.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertBurch {
    /// `m` rows, `m − 1` columns; the last column is `N · y`.
    pub columns: Vec<Vec<Polynomial>>,
    /// Column classes `(a, b)` meaning `a h_1 + b h_2`.
    pub column_classes: Vec<(i64, i64)>,
    /// `c` with `(−1)^i Δ_i = c · (y·M_f)_i`, `Δ_i` the minor without row `i`.
    pub minor_constant: Rational,
}

fn determinant(m: &[Vec<&Polynomial>], nvars: usize) -> Polynomial {
    // Laplace expansion along the first column over row subsets
    fn rec(m: &[Vec<&Polynomial>], rows: &mut Vec<usize>, col: usize, nvars: usize) -> Polynomial {
        if col == m[0].len() {
            return Polynomial::one(nvars);
        }
        let mut acc = Polynomial::zero(nvars);
        let avail = rows.clone();
        for (sign_idx, &r) in avail.iter().enumerate() {
            let entry = m[r][col];
            if entry.is_zero() {
                continue;
            }
            rows.retain(|&x| x != r);
            let sub = rec(m, rows, col + 1, nvars);
            rows.insert(sign_idx, r);
            let term = entry * &sub;
            acc = if sign_idx % 2 == 0 { acc + term } else { acc - term };
        }
        acc
    }
    if m.is_empty() {
        return Polynomial::one(nvars);
    }
    let mut rows: Vec<usize> = (0..m.len()).collect();
    rec(m, &mut rows, 0, nvars)
}

/// `S = (P_f | N·y)` with the two verifications: `(y·M_f)·S = 0` and the
/// maximal minors proportional to `y·M_f` by one nonzero constant.
pub fn hilbert_burch(
    m_f: &GradedMatrix,
    p_f: &GradedMatrix,
    n: &GradedMatrix,
    d: i64,
) -> Result<HilbertBurch, PlanarError> {
    let nx = m_f.nrows();
    let m = m_f.ncols();
    if nx != 3 {
        return Err(PlanarError::NotPlanar);
    }
    if m < 2 || p_f.nrows() != m || p_f.ncols() != m - 2 || n.nrows() != m || n.ncols() != 3 {
        return Err(PlanarError::Shape(format!(
            "M_f {}×{m}, P_f {}×{}, N {}×{}",
            nx,
            p_f.nrows(),
            p_f.ncols(),
            n.nrows(),
            n.ncols()
        )));
    }
    let nv = 2 * nx;
    let mut columns: Vec<Vec<Polynomial>> =
        p_f.columns().iter().map(|c| c.iter().map(|a| embed_x(a, nx)).collect()).collect();
    let ny: Vec<Polynomial> = (0..m)
        .map(|i| (0..3).fold(Polynomial::zero(nv), |acc, k| acc + embed_x(n.entry(i, k), nx) * y_var(nx, k)))
        .collect();
    columns.push(ny);
    let mut column_classes: Vec<(i64, i64)> = p_f.col_shifts().iter().map(|e| (1 + e - d, 1)).collect();
    column_classes.push((d - 1, 2));

    let gens: Vec<Polynomial> = zf_generators(m_f).into_iter().map(|g| g.poly).collect();
    for col in &columns {
        let s = col.iter().zip(&gens).fold(Polynomial::zero(nv), |acc, (a, g)| acc + a * g);
        if !s.is_zero() {
            return Err(PlanarError::NotAComplex);
        }
    }

    let mut constant: Option<Rational> = None;
    for i in 0..m {
        let rows: Vec<Vec<&Polynomial>> =
            (0..m).filter(|&r| r != i).map(|r| columns.iter().map(|c| &c[r]).collect()).collect();
        let mut minor = determinant(&rows, nv);
        if i % 2 == 1 {
            minor = -minor;
        }
        let g = &gens[i];
        let c = match (minor.terms().first(), g.terms().first()) {
            (None, None) => continue,
            (Some(_), None) | (None, Some(_)) => return Err(PlanarError::NotProportional),
            (Some((mono, a)), Some(_)) => {
                let b = g.coeff(mono);
                if b.is_zero() {
                    return Err(PlanarError::NotProportional);
                }
                a / b
            }
        };
        if minor != g.scale(&c) {
            return Err(PlanarError::NotProportional);
        }
        match &constant {
            None => constant = Some(c),
            Some(k) if *k == c => {}
            Some(_) => return Err(PlanarError::NotProportional),
        }
    }
    let minor_constant = constant.filter(|c| !c.is_zero()).ok_or(PlanarError::NotProportional)?;
    Ok(HilbertBurch { columns, column_classes, minor_constant })
}

/// `α h_1² + β h_1 h_2 + γ h_2²` in the Chow ring of `P^2 × P^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BidegreeClass {
    pub alpha: i64,
    pub beta: i64,
    pub gamma: i64,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classes {
    pub s_f: BidegreeClass,
    pub z_f: BidegreeClass,
    /// Degree of the polar map, `(d−1)² − μ`.
    pub polar_degree: i64,
    /// `μ − τ`, the total multiplicity of the vertical components of `Z_f`.
    pub vertical_defect: i64,
    pub z_f_irreducible: bool,
}

pub fn classes(d: i64, mu: i64, tau: i64) -> Classes {
    let top = (d - 1) * (d - 1);
    Classes {
        s_f: BidegreeClass { alpha: top - mu, beta: d - 1, gamma: 1 },
        z_f: BidegreeClass { alpha: top - tau, beta: d - 1, gamma: 1 },
        polar_degree: top - mu,
        vertical_defect: mu - tau,
        z_f_irreducible: mu == tau,
    }
}

/// The three coefficient identities obtained from the Chern polynomials of
/// the Hilbert–Burch resolution, with `α = (d−1)² − τ`, `β = d − 1`, `γ = 1`.
pub fn class_identities_hold(res: &ResolutionData, d: i64, tau: i64) -> [bool; 3] {
    let m = res.m as i64;
    let c: Vec<i64> = res.second_degrees.iter().map(|e| 1 + e - d).collect();
    let pairs = |v: &[i64]| -> i64 {
        let mut s = 0;
        for i in 0..v.len() {
            for j in i + 1..v.len() {
                s += v[i] * v[j];
            }
        }
        s
    };
    let cs: i64 = c.iter().sum();
    let choose2 = |k: i64| k * (k - 1) / 2;
    let z = classes(d, tau, tau).z_f;
    [
        z.alpha + (d - 1) * cs + pairs(&c) == pairs(&res.exponents),
        z.beta + (m - 1) * cs + (m - 2) * (d - 1) == (m - 1) * res.exponents.iter().sum::<i64>(),
        z.gamma + choose2(m - 2) + 2 * (m - 2) == choose2(m),
    ]
}

/// Points `(p, ∇f(p))` of the graph of the polar map at random integer `p`
/// with `∇f(p) ≠ 0`.
pub fn graph_points(f: &Polynomial, count: usize, seed: u64) -> Vec<(Vec<Rational>, Vec<Rational>)> {
    let grad = f.gradient();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = Vec::new();
    while out.len() < count {
        let p: Vec<Rational> =
            (0..f.nvars()).map(|_| Rational::from_integer(rng.random_range(-20i64..=20).into())).collect();
        let q: Vec<Rational> = grad.iter().map(|g| g.eval_rational(&p)).collect();
        if q.iter().any(|v| !v.is_zero()) {
            out.push((p, q));
        }
    }
    out
}

/// `y := ∇f(x)` substituted into a bigraded form.
pub fn on_polar_graph(form: &BigradedForm, f: &Polynomial) -> Polynomial {
    let nx = f.nvars();
    let images: Vec<Polynomial> = (0..nx).map(|i| Polynomial::var(nx, i)).chain(f.gradient()).collect();
    form.poly.substitute(&images)
}

/// Everything computed for a plane curve, in serializable form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PlanarReport {
    pub zf_bidegrees: Vec<(u32, u32)>,
    pub zf_generators: Vec<String>,
    pub s_matrix: Vec<Vec<String>>,
    pub s_column_classes: Vec<(i64, i64)>,
    pub minor_constant: String,
    pub classes: Classes,
    pub class_identities: [bool; 3],
    pub koszul_hull: Vec<String>,
    /// All `Z_f` equations and hull minors vanish on sampled graph points.
    pub graph_sample_ok: bool,
}

#[allow(clippy::too_many_arguments)]
pub fn planar_report(
    f: &Polynomial,
    m_f: &GradedMatrix,
    p_f: &GradedMatrix,
    n: &GradedMatrix,
    res: &ResolutionData,
    mu: u64,
    tau: u64,
    seed: u64,
) -> Result<PlanarReport, PlanarError> {
    let d = f.degree().unwrap_or(0) as i64;
    let names = bigraded_names(f.nvars());
    let zf = zf_generators(m_f);
    let hb = hilbert_burch(m_f, p_f, n, d)?;
    let hull = koszul_hull_generators(f);
    let samples = graph_points(f, 50, seed);
    let graph_sample_ok = samples.iter().all(|(x, y)| zf.iter().chain(&hull).all(|g| g.evaluate(x, y).is_zero()));
    let rows = hb.columns.first().map_or(0, Vec::len);
    Ok(PlanarReport {
        zf_bidegrees: zf.iter().map(|g| g.bidegree).collect(),
        zf_generators: zf.iter().map(|g| g.poly.fmt_with(&names)).collect(),
        s_matrix: (0..rows).map(|i| hb.columns.iter().map(|c| c[i].fmt_with(&names)).collect()).collect(),
        s_column_classes: hb.column_classes.clone(),
        minor_constant: hb.minor_constant.to_string(),
        classes: classes(d, mu as i64, tau as i64),
        class_identities: class_identities_hold(res, d, tau as i64),
        koszul_hull: hull.iter().map(|g| g.poly.fmt_with(&names)).collect(),
        graph_sample_ok,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_polynomial;
    use crate::syzygy::{jacobian_syzygy_matrix, lift_koszul, plane_second_syzygies};
    use crate::{Ring, Settings};

    fn p(s: &str) -> Polynomial {
        parse_polynomial(s, &Ring::standard(3)).unwrap()
    }

    #[test]
    fn three_syzygy_quintic() {
        let s = Settings::default();
        let f = p("x0^2*x1^3+3*x1^5-4*x0*x1^3*x2+x0^2*x1*x2^2");
        let m = jacobian_syzygy_matrix(&f, &s).unwrap();
        let pf = plane_second_syzygies(&m, &s).unwrap();
        let n = lift_koszul(&m, &f, &s).unwrap();
        let zf = zf_generators(&m);
        assert_eq!(zf.iter().map(|g| g.bidegree).collect::<Vec<_>>(), vec![(2, 1), (3, 1), (4, 1)]);
        let hb = hilbert_burch(&m, &pf, &n, 5).unwrap();
        assert_eq!(hb.columns.len(), 2);
        assert_eq!(hb.column_classes, vec![(5, 1), (4, 2)]);
        let res = ResolutionData::from_matrices(5, &m, Some(&pf));
        assert_eq!(class_identities_hold(&res, 5, 10), [true, true, true]);
        for g in zf.iter().chain(&koszul_hull_generators(&f)) {
            assert!(on_polar_graph(g, &f).is_zero());
        }
    }

    #[test]
    fn ploski_classes() {
        let c = classes(6, 22, 21);
        assert_eq!(c.z_f, BidegreeClass { alpha: 4, beta: 5, gamma: 1 });
        assert_eq!(c.s_f, BidegreeClass { alpha: 3, beta: 5, gamma: 1 });
        assert_eq!(c.vertical_defect, 1);
        assert!(!c.z_f_irreducible);
        let smooth = classes(4, 0, 0);
        assert_eq!((smooth.polar_degree, smooth.s_f), (9, smooth.z_f));
    }

    #[test]
    fn determinant_of_scalars() {
        let one = |c: i64| Polynomial::from_i64(1, c);
        let (a, b, c, d) = (one(2), one(3), one(5), one(7));
        let m = vec![vec![&a, &b], vec![&c, &d]];
        assert_eq!(determinant(&m, 1), one(-1));
    }

    #[test]
    fn bidegree_detection() {
        let r = Ring::standard(6);
        let g = parse_polynomial("x0*x3 + x1*x4", &r).unwrap();
        assert_eq!(BigradedForm::new(g, 3).unwrap().bidegree, (1, 1));
        assert!(BigradedForm::new(parse_polynomial("x0 + x3^2", &r).unwrap(), 3).is_none());
    }
}
