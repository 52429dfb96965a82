#![allow(dead_code)]

use qhsyz::linalg::rank;
use qhsyz::planar::{
    class_identities_hold, classes, hilbert_burch, koszul_hull_generators, on_polar_graph, zf_generators,
};
use qhsyz::poly::{parse_field, parse_polynomial};
use qhsyz::singular::{analyze, Analysis, AnalysisError, AnalysisOptions, Verdict};
use qhsyz::syzygy::{koszul_matrix, lift_koszul, GradedMatrix};
use qhsyz::{Monomial, NumberField, Polynomial, Rational, Ring};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

pub fn poly(s: &str, nvars: usize) -> Polynomial {
    parse_polynomial(s, &Ring::standard(nvars)).unwrap()
}

pub fn field(spec: Option<&str>) -> NumberField {
    spec.map_or_else(NumberField::rationals, |s| parse_field(s).unwrap())
}

pub struct Fixture {
    pub name: &'static str,
    pub poly: &'static str,
    pub nvars: usize,
    pub field: Option<&'static str>,
}

pub const FIXTURES: &[Fixture] = &[
    Fixture { name: "nodal_cubic", poly: "x1^2*x2 - x0^2*(x0+x2)", nvars: 3, field: None },
    Fixture { name: "qh2_quintic", poly: "x0*x1^2*x2^2 + x1^5 + x2^5", nvars: 3, field: None },
    Fixture { name: "msyz1_quintic", poly: "x0^2*x1^3+3*x1^5-4*x0*x1^3*x2+x0^2*x1*x2^2", nvars: 3, field: None },
    Fixture {
        name: "msyz2_sextic",
        poly: "(x0^2+x1^2)^3 - 4*x0^2*x1^2*x2^2",
        nvars: 3,
        field: Some("Q(i) minpoly t^2+1"),
    },
    Fixture { name: "msyz3_sextic", poly: "x1^6+x0^2*x1^2*x2^2+x2^6", nvars: 3, field: None },
    Fixture { name: "nn1", poly: "x0^4*x2 - x0^2*x1^2*x2 + x1^5", nvars: 3, field: None },
    Fixture { name: "nn2", poly: "x0^5*x2^3+x0^3*x1^5+x1^7*x2", nvars: 3, field: None },
    Fixture {
        name: "ploski_sextic",
        poly: "(x0^2 + (x0*x2 + x1^2))*(x0^2 - (x0*x2 + x1^2))*(x0^2 + 2*(x0*x2 + x1^2))",
        nvars: 3,
        field: None,
    },
    Fixture {
        name: "ploski_octic",
        poly: "(x0^2 + (x0*x2 + x1^2))*(x0^2 - (x0*x2 + x1^2))*(x0^2 + 2*(x0*x2 + x1^2))*(x0^2 - 2*(x0*x2 + x1^2))",
        nvars: 3,
        field: None,
    },
    Fixture { name: "family_2_2_plane", poly: "x0^2*x1^2 + x2^4", nvars: 3, field: None },
    Fixture { name: "family_2_3_plane", poly: "x0^2*x1^3 + x2^5", nvars: 3, field: None },
    Fixture { name: "p3_8syz", poly: "x0^3*x3+x1^4+x1*x2^2*x3+x0*x1^3", nvars: 4, field: None },
    Fixture { name: "p3_9syz", poly: "x0^2*x3^3+x1^4*x3+x2^5-x0*x1*x2*x3^2", nvars: 4, field: None },
    Fixture { name: "family_2_2_space", poly: "x0^2*x1^2 + x2^4 + x3^4", nvars: 4, field: None },
    Fixture { name: "family_3_2_space", poly: "x0^3*x1^2 + x2^5 + x3^5", nvars: 4, field: None },
];

pub fn fixture(name: &str) -> &'static Fixture {
    FIXTURES.iter().find(|f| f.name == name).unwrap()
}

pub fn run(fx: &Fixture) -> Analysis {
    let f = poly(fx.poly, fx.nvars);
    let opts = AnalysisOptions { field: field(fx.field), ..Default::default() };
    analyze(&f, &opts).unwrap_or_else(|e| panic!("{}: {e}", fx.name))
}

pub fn monomials(nvars: usize, k: i64) -> Vec<Monomial> {
    if k < 0 {
        return Vec::new();
    }
    fn rec(i: usize, left: u16, exps: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i + 1 == exps.len() {
            exps[i] = left;
            out.push(Monomial::from_exps(exps));
            return;
        }
        for e in 0..=left {
            exps[i] = e;
            rec(i + 1, left - e, exps, out);
        }
    }
    let mut out = Vec::new();
    rec(0, k as u16, &mut vec![0; nvars], &mut out);
    out
}

/// Coefficient vector of a tuple of polynomials of degree `k` in the basis
/// `(component, monomial)`.
fn coords(v: &[Polynomial], index: &HashMap<(usize, Monomial), usize>) -> Vec<Rational> {
    let mut row = vec![Rational::from_integer(0.into()); index.len()];
    for (i, p) in v.iter().enumerate() {
        for (m, c) in p.terms() {
            row[index[&(i, m.clone())]] = c.clone();
        }
    }
    row
}

fn tuple_index(n: usize, k: i64) -> HashMap<(usize, Monomial), usize> {
    let mut index = HashMap::new();
    for i in 0..n {
        for m in monomials(n, k) {
            let len = index.len();
            index.insert((i, m), len);
        }
    }
    index
}

/// `dim Syz(∇f)_k` by solving `Σ A_i ∂_i f = 0` with `deg A_i = k` directly.
pub fn brute_syzygy_dimension(f: &Polynomial, k: i64) -> usize {
    let n = f.nvars();
    let d = f.degree().unwrap() as i64;
    let grad = f.gradient();
    let target: HashMap<Monomial, usize> =
        monomials(n, k + d - 1).into_iter().enumerate().map(|(i, m)| (m, i)).collect();
    // one column per unknown coefficient, as rows of the transpose
    let mut rows = Vec::new();
    for g in &grad {
        for m in monomials(n, k) {
            let mut row = vec![Rational::from_integer(0.into()); target.len()];
            for (t, c) in g.terms() {
                row[target[&m.mul(t)]] = c.clone();
            }
            rows.push(row);
        }
    }
    rows.len() - rank(&rows)
}

/// Dimension of the degree-`k` part of the module spanned by the columns.
pub fn span_dimension(columns: &[(Vec<Polynomial>, i64)], n: usize, k: i64) -> usize {
    let index = tuple_index(n, k);
    let one = Rational::from_integer(1.into());
    let mut rows = Vec::new();
    for (c, deg) in columns {
        for m in monomials(n, k - deg) {
            let v: Vec<Polynomial> = c.iter().map(|p| p.mul_term(&m, &one)).collect();
            rows.push(coords(&v, &index));
        }
    }
    if rows.is_empty() {
        0
    } else {
        rank(&rows)
    }
}

pub fn exponents(m_f: &GradedMatrix, d: i64) -> Vec<i64> {
    m_f.col_shifts().iter().map(|s| s - (d - 1)).collect()
}

pub fn m_columns(m_f: &GradedMatrix, d: i64) -> Vec<(Vec<Polynomial>, i64)> {
    m_f.columns().iter().cloned().zip(exponents(m_f, d)).collect()
}

/// Checks that `M_f` generates `Syz(∇f)` through degree `top` and that no
/// column is a combination of the others: returns the failures.
pub fn syzygy_oracle(f: &Polynomial, m_f: &GradedMatrix, top: i64) -> Vec<String> {
    let n = f.nvars();
    let d = f.degree().unwrap() as i64;
    let cols = m_columns(m_f, d);
    let mut out = Vec::new();
    for k in 0..=top {
        let (brute, span) = (brute_syzygy_dimension(f, k), span_dimension(&cols, n, k));
        if brute != span {
            out.push(format!("degree {k}: Syz has dimension {brute}, M_f spans {span}"));
        }
    }
    for j in 0..cols.len() {
        let others: Vec<_> = cols.iter().enumerate().filter(|&(i, _)| i != j).map(|(_, c)| c.clone()).collect();
        let k = cols[j].1;
        if span_dimension(&others, n, k) == span_dimension(&cols, n, k) {
            out.push(format!("column {j} is not minimal"));
        }
    }
    out
}

/// Criterion-9 property suite on one analysis; returns the failures.
pub fn property_failures(a: &Analysis) -> Vec<String> {
    let mut out = Vec::new();
    let f = &a.f;
    let r = &a.report;
    let nv = f.nvars();
    let d = f.degree().unwrap() as i64;
    let grad = f.gradient();

    // Euler relation
    let euler =
        grad.iter().enumerate().fold(Polynomial::zero(nv), |acc, (j, g)| acc + Polynomial::var(nv, j) * g.clone());
    if euler != f.scale(&Rational::from_integer(d.into())) {
        out.push("Euler relation".into());
    }
    // columns of M_f are syzygies
    if a.m_f.left_mul(&grad).iter().any(|p| !p.is_zero()) {
        out.push("M_f column is not a syzygy".into());
    }
    // three-way Tjurina agreement and Saito cross-check
    let found: u64 = r.points.iter().map(|p| p.tau).sum();
    if r.tau_total != r.jacobian_degree || found + r.residual_locus_degree != r.tau_total {
        out.push(format!("tau: total {}, deg J_f {}, local sum {found}", r.tau_total, r.jacobian_degree));
    }
    if r.residual_points == 0 && r.residual_locus_degree != 0 {
        out.push("residual degree without residual points".into());
    }
    for p in &r.points {
        let qh = p.verdict == Verdict::QuasiHomogeneous;
        if qh != (p.mu == p.tau) || qh != (p.rank_mf >= 1) || !p.cross_check {
            out.push(format!("Saito cross-check at {:?}", p.point));
        }
    }
    if r.mu_total < r.tau_total || r.global_all_qh != (r.mu_total == r.tau_total) {
        out.push("global verdict vs totals".into());
    }

    if nv == 3 {
        let p_f = a.p_f.as_ref().expect("plane curve has P_f");
        if !a.m_f.mul(p_f).is_zero() {
            out.push("M_f · P_f ≠ 0".into());
        }
        match lift_koszul(&a.m_f, f, &Default::default()) {
            Ok(n) => {
                let k = a.m_f.mul(&n);
                if k.columns() != koszul_matrix(&grad, d).columns() {
                    out.push("M_f · N ≠ K".into());
                }
                let skew = (0..3).all(|i| (0..3).all(|j| *k.entry(i, j) == -k.entry(j, i).clone()));
                if !skew {
                    out.push("K not skew-symmetric".into());
                }
                if let Err(e) = hilbert_burch(&a.m_f, p_f, &n, d) {
                    out.push(format!("Hilbert–Burch: {e}"));
                }
            }
            Err(e) => out.push(format!("Koszul lift: {e}")),
        }
        let res = &r.resolution;
        if res.m >= 3 && !res.epsilon_identities_hold(d) {
            out.push("epsilon identities".into());
        }
        if !res.degree_identity_holds(d) {
            out.push("degree identity".into());
        }
        if res.tjurina_from_degrees(d) != r.jacobian_degree as i64 {
            out.push("tau_C formula".into());
        }
        if class_identities_hold(res, d, r.tau_total as i64) != [true; 3] {
            out.push("class identities".into());
        }
        if classes(d, r.mu_total as i64, r.tau_total as i64).z_f_irreducible != r.global_all_qh {
            out.push("Z_f irreducibility vs global verdict".into());
        }
        for g in zf_generators(&a.m_f).iter().chain(&koszul_hull_generators(f)) {
            if !on_polar_graph(g, f).is_zero() {
                out.push("bigraded form not vanishing on the polar graph".into());
            }
        }
    }
    out
}

fn nonzero(rng: &mut ChaCha8Rng) -> Rational {
    let c: i64 = rng.random_range(1..=3);
    Rational::from_integer((if rng.random_bool(0.5) { c } else { -c }).into())
}

/// A quintic whose germ at `(0:0:1)` is `x^4 + y^5 + c x^2 y^3` plus terms
/// above the Newton diagonal: semi-quasi-homogeneous with `μ = 12`, and for
/// `c ≠ 0` generically not quasi-homogeneous.
fn w12_quintic(rng: &mut ChaCha8Rng) -> Polynomial {
    let mut terms = vec![
        (Monomial::from_exps(&[4, 0, 1]), nonzero(rng)),
        (Monomial::from_exps(&[0, 5, 0]), nonzero(rng)),
        (Monomial::from_exps(&[2, 3, 0]), nonzero(rng)),
    ];
    for a in [1u16, 3, 4, 5] {
        if rng.random_bool(0.5) {
            terms.push((Monomial::from_exps(&[a, 5 - a, 0]), nonzero(rng)));
        }
    }
    Polynomial::from_terms(3, terms)
}

/// A curve singular at `(0:0:1)`: no terms of local degree ≤ 1 there, and
/// depending on the draw a node, a cuspidal quadratic part, no quadratic
/// part (triple point) or a W12-type germ. Half of the curves are moved by a
/// random unimodular change.
pub fn random_curve(rng: &mut ChaCha8Rng) -> Polynomial {
    let kind = rng.random_range(0..4);
    let d: u16 = if kind == 3 { 5 } else { rng.random_range(3..=5) };
    let mut terms = Vec::new();
    for m in monomials(3, d as i64) {
        let local = m.exp(0) + m.exp(1);
        if local <= 1 || (kind == 2 && local == 2 && d >= 4) {
            continue;
        }
        if kind == 1 && local == 2 {
            if m.exp(0) == 2 {
                terms.push((m, Rational::from_integer(rng.random_range(1i64..=3).into())));
            }
            continue;
        }
        if rng.random_bool(0.6) {
            let c: i64 = rng.random_range(-3..=3);
            if c != 0 {
                terms.push((m, Rational::from_integer(c.into())));
            }
        }
    }
    let f = if kind == 3 { w12_quintic(rng) } else { Polynomial::from_terms(3, terms) };
    if rng.random_bool(0.5) {
        let mut a = [[1i64, 0, 0], [0, 1, 0], [0, 0, 1]];
        for (i, j) in [(0usize, 2usize), (1, 2), (1, 0)] {
            a[i][j] = rng.random_range(-1..=1);
        }
        let a: Vec<Vec<i64>> = a.iter().map(|r| r.to_vec()).collect();
        f.linear_change(&a).unwrap()
    } else {
        f
    }
}

pub fn is_curve(f: &Polynomial) -> bool {
    f.degree().is_some_and(|d| d >= 3) && (0..3).all(|i| f.terms().iter().any(|(m, _): &(Monomial, _)| m.exp(i) == 0))
}

pub struct RandomRun {
    pub accepted: usize,
    pub attempts: usize,
    pub qh: usize,
    pub non_qh: usize,
    pub failures: Vec<String>,
}

/// The property suite on `count` seeded random singular curves; every tenth
/// curve also goes through the brute-force syzygy oracle.
pub fn random_curve_suite(seed: u64, count: usize) -> RandomRun {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut run = RandomRun { accepted: 0, attempts: 0, qh: 0, non_qh: 0, failures: Vec::new() };
    while run.accepted < count {
        run.attempts += 1;
        assert!(run.attempts < 4 * count, "too many rejected draws");
        let f = random_curve(&mut rng);
        if !is_curve(&f) {
            continue;
        }
        let opts = AnalysisOptions { seed: run.attempts as u64, ..Default::default() };
        let a = match analyze(&f, &opts) {
            Ok(a) => a,
            // non-reduced draws have a positive-dimensional singular locus
            Err(AnalysisError::NonIsolated) => continue,
            Err(e) => {
                run.failures.push(format!("{f}: {e}"));
                run.accepted += 1;
                continue;
            }
        };
        if a.report.points.is_empty() {
            continue;
        }
        run.accepted += 1;
        run.qh += a.report.qh_count();
        run.non_qh += a.report.points.len() - a.report.qh_count();
        let mut bad = property_failures(&a);
        if run.accepted.is_multiple_of(10) {
            let top = *a.report.resolution.exponents.last().unwrap() + 1;
            bad.extend(syzygy_oracle(&a.f, &a.m_f, top));
        }
        if !bad.is_empty() {
            run.failures.push(format!("{f}: {bad:?}"));
        }
    }
    run
}
