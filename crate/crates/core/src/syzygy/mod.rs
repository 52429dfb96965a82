//! Syzygies of homogeneous module elements: Schreyer generators, graded
//! minimalization, the Jacobian syzygy matrix `M_f`, its second syzygies
//! `P_f`, and lifts of the Koszul relations through `M_f`.

mod matrix;

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use matrix::{primitive_vector, FreeModuleElement, GradedMatrix, MatrixText};

use crate::groebner::{groebner, Engine, GbError, GroebnerBasis, ModuleOrder, Vector};
use crate::par;
use crate::poly::{monomials_of_degree, Monomial, Polynomial};
use crate::{Rational, Settings};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SyzygyError {
    #[error(transparent)]
    Groebner(#[from] GbError),
    #[error("input is not homogeneous")]
    NotHomogeneous,
    #[error("rank defect: {0}")]
    RankDefect(String),
    #[error("relation could not be lifted through the syzygy matrix")]
    LiftFailed,
}

fn module_vector(comps: &[Polynomial], order: &ModuleOrder) -> Vector<Rational> {
    Vector::from_components(comps, order)
}

fn element_from(v: &Vector<Rational>, rank: usize, nvars: usize, shifts: &[i64]) -> Option<FreeModuleElement> {
    let t = v.lead()?;
    let degree = t.mono.degree() as i64 + shifts[t.pos as usize];
    Some(FreeModuleElement { components: v.components(rank, nvars), degree })
}

/// Schreyer's construction on a tracked Gröbner basis of `cols`: one
/// candidate syzygy per S-pair and one per input, each of known degree.
struct Schreyer {
    gb: GroebnerBasis<Rational>,
    inputs: Vec<Vector<Rational>>,
    /// `(degree, candidate)`, where a candidate is an S-pair `(a, b)` or an
    /// input `k` encoded as `(k, usize::MAX)`.
    candidates: Vec<(i64, (usize, usize))>,
    nvars: usize,
}

impl Schreyer {
    fn new(
        nvars: usize,
        cols: &[Vec<Polynomial>],
        row_shifts: &[i64],
        col_shifts: &[i64],
        settings: &Settings,
    ) -> Result<Self, SyzygyError> {
        let order = ModuleOrder::graded(row_shifts.to_vec());
        let inputs: Vec<_> = cols.iter().map(|c| module_vector(c, &order)).collect();
        if inputs.iter().any(|v| !v.is_zero() && !homogeneous(v, &order)) {
            return Err(SyzygyError::NotHomogeneous);
        }
        let gb = groebner(inputs.clone(), order.clone(), settings.budget, true)?;
        let mut candidates = Vec::new();
        for a in 0..gb.len() {
            for b in a + 1..gb.len() {
                let (la, lb) = (gb.elements()[a].v.lead().unwrap(), gb.elements()[b].v.lead().unwrap());
                if la.pos == lb.pos {
                    let deg = la.mono.lcm(&lb.mono).degree() as i64 + row_shifts[la.pos as usize];
                    candidates.push((deg, (a, b)));
                }
            }
        }
        candidates.extend(col_shifts.iter().enumerate().map(|(k, &deg)| (deg, (k, usize::MAX))));
        candidates.sort();
        Ok(Self { gb, inputs, candidates, nvars })
    }

    /// Expresses a combination `Σ q_c G_c` through the tracked representations.
    fn through_reps(&self, quot: &[Vector<Rational>], init: Vector<Rational>) -> Vector<Rational> {
        let ro = self.gb.rep_order();
        let mut acc = init;
        for (c, q) in quot.iter().enumerate() {
            let rep = self.gb.elements()[c].rep.as_ref().unwrap();
            for t in q.terms() {
                acc = acc.add_scaled(&-t.coeff.clone(), &t.mono, rep, ro);
            }
        }
        acc
    }

    fn syzygy(&self, (a, b): (usize, usize)) -> Vector<Rational> {
        let one = Rational::from_integer(1.into());
        if b == usize::MAX {
            let (quot, rem) = self.gb.divide(self.inputs[a].clone());
            debug_assert!(rem.is_zero());
            return self.through_reps(&quot, Vector::unit(Monomial::one(self.nvars), a as u32, one));
        }
        let (ea, eb) = (&self.gb.elements()[a], &self.gb.elements()[b]);
        let (la, lb) = (ea.v.lead().unwrap(), eb.v.lead().unwrap());
        let lcm = la.mono.lcm(&lb.mono);
        let (ma, mb) = (la.mono.div(&lcm).unwrap(), lb.mono.div(&lcm).unwrap());
        let minus = -one.clone();
        let s = ea.v.mul_term(&one, &ma).add_scaled(&minus, &mb, &eb.v, self.gb.order());
        let (quot, rem) = self.gb.divide(s);
        debug_assert!(rem.is_zero());
        let init = ea.rep.as_ref().unwrap().mul_term(&one, &ma).add_scaled(
            &minus,
            &mb,
            eb.rep.as_ref().unwrap(),
            self.gb.rep_order(),
        );
        self.through_reps(&quot, init)
    }

    /// `dim Syz_k`: the free module `⊕ R(−col_shifts)` minus the image.
    fn syzygy_dimension(&self, col_shifts: &[i64], k: i64) -> usize {
        let free: usize = col_shifts
            .iter()
            .map(|&c| if k >= c { monomials_of_degree(self.nvars, (k - c) as u32).len() } else { 0 })
            .sum();
        free - count_multiples(self.gb.leads(), &self.gb.order().shifts, self.nvars, k)
    }
}

/// Number of degree-`k` basis elements `m · e_p` of `⊕ R(−shifts)` that are
/// multiples of one of `leads`: the degree-`k` dimension of a module with
/// these leading terms.
fn count_multiples<'a>(
    leads: impl Iterator<Item = (&'a Monomial, u32)>,
    shifts: &[i64],
    nvars: usize,
    k: i64,
) -> usize {
    let mut by_pos: Vec<Vec<&Monomial>> = vec![Vec::new(); shifts.len()];
    for (m, p) in leads {
        by_pos[p as usize].push(m);
    }
    by_pos
        .iter()
        .zip(shifts)
        .filter(|&(ls, &s)| !ls.is_empty() && k >= s)
        .map(|(ls, &s)| {
            monomials_of_degree(nvars, (k - s) as u32).iter().filter(|m| ls.iter().any(|l| l.divides(m))).count()
        })
        .sum()
}

/// Generators of the syzygy module of `cols`, vectors in `⊕ R(−row_shifts)`
/// of degrees `col_shifts`. Computed with Schreyer's construction on a
/// tracked Gröbner basis and mapped back to the given generators; the result
/// is homogeneous but not minimal.
pub fn syzygy_generators(
    nvars: usize,
    cols: &[Vec<Polynomial>],
    row_shifts: &[i64],
    col_shifts: &[i64],
    settings: &Settings,
) -> Result<Vec<FreeModuleElement>, SyzygyError> {
    let sch = Schreyer::new(nvars, cols, row_shifts, col_shifts, settings)?;
    let all: Vec<(usize, usize)> = sch.candidates.iter().map(|&(_, c)| c).collect();
    let vs = par::map(settings.parallel, &all, |&c| sch.syzygy(c));
    Ok(vs.iter().filter_map(|v| element_from(v, cols.len(), nvars, col_shifts)).collect())
}

/// Candidates of one degree computed together; fixed so that the result does
/// not depend on the thread count.
const CANDIDATE_CHUNK: usize = 8;

/// Minimal generators of the syzygy module of `cols`, reduced and made
/// primitive as in [`minimalize`]. Candidates are produced degree by degree
/// in chunks, and the rest of a degree is skipped once the generators kept
/// so far span the syzygies of that degree.
pub fn minimal_syzygies(
    nvars: usize,
    cols: &[Vec<Polynomial>],
    row_shifts: &[i64],
    col_shifts: &[i64],
    settings: &Settings,
) -> Result<Vec<FreeModuleElement>, SyzygyError> {
    let sch = Schreyer::new(nvars, cols, row_shifts, col_shifts, settings)?;
    let order = ModuleOrder::graded(col_shifts.to_vec());
    let rank = cols.len();
    let mut engine = Engine::new(order.clone()).budget(settings.budget);
    let mut kept = Vec::new();
    for group in sch.candidates.chunk_by(|a, b| a.0 == b.0) {
        let deg = group[0].0;
        engine.complete(Some(deg))?;
        let target = sch.syzygy_dimension(col_shifts, deg);
        let spanned = |e: &Engine<Rational>| count_multiples(e.leads(), col_shifts, nvars, deg);
        if spanned(&engine) == target {
            continue;
        }
        let which: Vec<(usize, usize)> = group.iter().map(|&(_, c)| c).collect();
        'group: for chunk in which.chunks(CANDIDATE_CHUNK) {
            let mut vs: Vec<Vector<Rational>> = par::map(settings.parallel, chunk, |&c| sch.syzygy(c))
                .into_iter()
                .filter_map(|v| element_from(&v, rank, nvars, col_shifts))
                .map(|e| module_vector(&e.components, &order))
                .collect();
            vs.sort_by(|a, b| cmp_lead(&order, a, b));
            for v in vs {
                let r = engine.reduce(v);
                if r.is_zero() {
                    continue;
                }
                let e = FreeModuleElement { components: r.components(rank, nvars), degree: deg }.primitive();
                engine.add_input(module_vector(&e.components, &order));
                kept.push(e);
                if spanned(&engine) == target {
                    break 'group;
                }
            }
        }
    }
    kept.sort_by(|a, b| {
        a.degree.cmp(&b.degree).then_with(|| {
            cmp_lead(&order, &module_vector(&a.components, &order), &module_vector(&b.components, &order))
        })
    });
    Ok(kept)
}

fn homogeneous(v: &Vector<Rational>, order: &ModuleOrder) -> bool {
    let d = order.degree(&v.lead().unwrap().mono, v.lead().unwrap().pos);
    v.terms().iter().all(|t| order.degree(&t.mono, t.pos) == d)
}

/// Extracts a minimal homogeneous generating set, processing candidates by
/// ascending degree and keeping those not in the span of earlier ones. Each
/// kept element is the normal form of a candidate, made primitive. Output is
/// sorted by degree, then by leading term.
pub fn minimalize(
    nvars: usize,
    candidates: &[FreeModuleElement],
    shifts: &[i64],
    settings: &Settings,
) -> Result<Vec<FreeModuleElement>, SyzygyError> {
    let order = ModuleOrder::graded(shifts.to_vec());
    let rank = shifts.len();
    let mut cands: Vec<(i64, Vector<Rational>)> =
        candidates.iter().filter(|c| !c.is_zero()).map(|c| (c.degree, module_vector(&c.components, &order))).collect();
    cands.sort_by(|(da, a), (db, b)| da.cmp(db).then_with(|| cmp_lead(&order, a, b)));
    let mut engine = Engine::new(order.clone()).budget(settings.budget);
    let mut kept = Vec::new();
    let mut current = None;
    for (deg, v) in cands {
        if current != Some(deg) {
            engine.complete(Some(deg))?;
            current = Some(deg);
        }
        let r = engine.reduce(v);
        if r.is_zero() {
            continue;
        }
        let e = FreeModuleElement { components: r.components(rank, nvars), degree: deg }.primitive();
        engine.add_input(module_vector(&e.components, &order));
        kept.push(e);
    }
    kept.sort_by(|a, b| {
        a.degree.cmp(&b.degree).then_with(|| {
            cmp_lead(&order, &module_vector(&a.components, &order), &module_vector(&b.components, &order))
        })
    });
    Ok(kept)
}

fn cmp_lead(order: &ModuleOrder, a: &Vector<Rational>, b: &Vector<Rational>) -> Ordering {
    match (a.lead(), b.lead()) {
        (Some(x), Some(y)) => order.cmp(&x.mono, x.pos, &y.mono, y.pos),
        _ => Ordering::Equal,
    }
}

/// Degree bookkeeping of a minimal resolution of `J_f`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResolutionData {
    /// Number of minimal syzygy generators.
    pub m: usize,
    /// `d_1 ≤ … ≤ d_m`.
    pub exponents: Vec<i64>,
    /// `e_1 ≤ … ≤ e_{m−2}` (plane curves only).
    pub second_degrees: Vec<i64>,
    /// `ε_j = e_j − d − d_{j+2} + 1`.
    pub epsilons: Vec<i64>,
}

impl ResolutionData {
    pub fn from_matrices(d: i64, m_f: &GradedMatrix, p_f: Option<&GradedMatrix>) -> Self {
        let exponents: Vec<i64> = m_f.col_shifts().iter().map(|s| s - (d - 1)).collect();
        let second_degrees: Vec<i64> = p_f.map(|p| p.col_shifts().to_vec()).unwrap_or_default();
        let epsilons = second_degrees.iter().enumerate().map(|(j, e)| e - d - exponents[j + 2] + 1).collect();
        Self { m: exponents.len(), exponents, second_degrees, epsilons }
    }

    /// `d_1 + d_2 = d − 1 + Σ ε_j` and all `ε_j ≥ 1`.
    pub fn epsilon_identities_hold(&self, d: i64) -> bool {
        self.m >= 2
            && self.epsilons.iter().all(|&e| e >= 1)
            && self.exponents[0] + self.exponents[1] == d - 1 + self.epsilons.iter().sum::<i64>()
    }

    /// `d − 1 − Σ d_i = Σ (d − 1 − e_j)`.
    pub fn degree_identity_holds(&self, d: i64) -> bool {
        d - 1 - self.exponents.iter().sum::<i64>() == self.second_degrees.iter().map(|e| d - 1 - e).sum::<i64>()
    }

    /// `deg J_f` predicted from the resolution of a plane curve.
    pub fn tjurina_from_degrees(&self, d: i64) -> i64 {
        let pairs = |v: &[i64]| -> i64 {
            let mut s = 0;
            for i in 0..v.len() {
                for j in i + 1..v.len() {
                    s += v[i] * v[j];
                }
            }
            s
        };
        let g: Vec<i64> = self.second_degrees.iter().map(|e| d - 1 - e).collect();
        (d - 1) * (d - 1) - pairs(&self.exponents) + pairs(&g) + (1 - d) * g.iter().sum::<i64>()
    }
}

/// Minimal first syzygy matrix of the partial derivatives of `f`: rows are
/// indexed by `∂_0 f, …, ∂_n f` (each of shift `d − 1`), columns by minimal
/// syzygies sorted by degree.
pub fn jacobian_syzygy_matrix(f: &Polynomial, settings: &Settings) -> Result<GradedMatrix, SyzygyError> {
    if !f.is_homogeneous() {
        return Err(SyzygyError::NotHomogeneous);
    }
    let n = f.nvars();
    let d = f.degree().unwrap_or(0) as i64;
    let partials: Vec<Vec<Polynomial>> = f.gradient().into_iter().map(|p| vec![p]).collect();
    let row_shifts = vec![d - 1; n];
    let min = minimal_syzygies(n, &partials, &[0], &row_shifts, settings)?;
    Ok(GradedMatrix::new(
        n,
        row_shifts,
        min.iter().map(|e| e.degree).collect(),
        min.into_iter().map(|e| e.components).collect(),
    ))
}

/// Minimal syzygies among the columns of `m` (the second syzygy matrix when
/// `m` is `M_f`).
pub fn second_syzygies(m: &GradedMatrix, settings: &Settings) -> Result<GradedMatrix, SyzygyError> {
    let nvars = m.nvars();
    let min = minimal_syzygies(nvars, m.columns(), m.row_shifts(), m.col_shifts(), settings)?;
    Ok(GradedMatrix::new(
        nvars,
        m.col_shifts().to_vec(),
        min.iter().map(|e| e.degree).collect(),
        min.into_iter().map(|e| e.components).collect(),
    ))
}

/// Second syzygies for a plane curve, checked against the expected shape of
/// the resolution: `m − 2` columns and `M_f · P_f = 0`.
pub fn plane_second_syzygies(m_f: &GradedMatrix, settings: &Settings) -> Result<GradedMatrix, SyzygyError> {
    let p = second_syzygies(m_f, settings)?;
    let expected = m_f.ncols().saturating_sub(2);
    if p.ncols() != expected {
        return Err(SyzygyError::RankDefect(format!("{} second syzygies, expected {expected}", p.ncols())));
    }
    if !m_f.mul(&p).is_zero() {
        return Err(SyzygyError::RankDefect("M_f · P_f ≠ 0".into()));
    }
    Ok(p)
}

/// The Koszul relations among three partials as columns
/// `(0, −∂2, ∂1)`, `(∂2, 0, −∂0)`, `(−∂1, ∂0, 0)`.
pub fn koszul_matrix(partials: &[Polynomial], d: i64) -> GradedMatrix {
    assert_eq!(partials.len(), 3);
    let z = Polynomial::zero(partials[0].nvars());
    let [p0, p1, p2] = [&partials[0], &partials[1], &partials[2]];
    let cols = vec![
        vec![z.clone(), -p2.clone(), p1.clone()],
        vec![p2.clone(), z.clone(), -p0.clone()],
        vec![-p1.clone(), p0.clone(), z],
    ];
    GradedMatrix::new(partials[0].nvars(), vec![d - 1; 3], vec![2 * d - 2; 3], cols)
}

/// Finds `N` with `M · N = target`, column by column, by tracked reduction
/// against a module Gröbner basis of the columns of `M`.
pub fn lift(m: &GradedMatrix, target: &GradedMatrix, settings: &Settings) -> Result<GradedMatrix, SyzygyError> {
    let order = ModuleOrder::graded(m.row_shifts().to_vec());
    let mut engine = Engine::new(order.clone()).budget(settings.budget).tracking();
    for c in m.columns() {
        engine.add_input(module_vector(c, &order));
    }
    let gb: GroebnerBasis<Rational> = engine.finish()?;
    let mut cols = Vec::new();
    for c in target.columns() {
        let (r, t) = gb.reduce_tracked(module_vector(c, &order));
        if !r.is_zero() {
            return Err(SyzygyError::LiftFailed);
        }
        cols.push(t.components(m.ncols(), m.nvars()));
    }
    let n = GradedMatrix::new(m.nvars(), m.col_shifts().to_vec(), target.col_shifts().to_vec(), cols);
    if m.mul(&n).columns() != target.columns() {
        return Err(SyzygyError::LiftFailed);
    }
    Ok(n)
}

/// `N` with `M_f · N = K` for the Koszul matrix of the partials of `f`.
pub fn lift_koszul(m_f: &GradedMatrix, f: &Polynomial, settings: &Settings) -> Result<GradedMatrix, SyzygyError> {
    let d = f.degree().unwrap_or(0) as i64;
    lift(m_f, &koszul_matrix(&f.gradient(), d), settings)
}
