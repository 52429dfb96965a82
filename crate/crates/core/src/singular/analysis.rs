//! Full analysis of one hypersurface: syzygies, points, local and total
//! numbers, the quasi-homogeneity verdicts and their cross-checks.

use serde::{Deserialize, Serialize};

use super::chart::{choose_transversal_chart, totals, Chart};
use super::local::{nonvanishing_entry, LocalNumbers, LocalSolver};
use super::points::find_singular_points;
use super::witness::witness_syzygy;
use super::{AnalysisError, ProjectivePoint};
use crate::field::NumberField;
use crate::groebner::{GbCache, HilbertSeries, Ideal, IdealError};
use crate::poly::{MonomialOrder, Polynomial};
use crate::syzygy::{jacobian_syzygy_matrix, plane_second_syzygies, GradedMatrix, MatrixText, ResolutionData};
use crate::{par, Settings};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    QuasiHomogeneous,
    NonQuasiHomogeneous,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SingularityRecord {
    pub point: Vec<String>,
    pub tau: u64,
    pub mu: u64,
    /// 0 if `M_f` vanishes at the point, else 1.
    pub rank_mf: u8,
    pub verdict: Verdict,
    /// `verdict` agrees with `μ_p = τ_p`.
    pub cross_check: bool,
    /// `(column, row)` of an entry of `M_f` not vanishing at the point.
    pub nonvanishing_entry: Option<(usize, usize)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WitnessRecord {
    pub exponent: i64,
    pub components: Vec<String>,
    pub trials: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub n: usize,
    pub d: u32,
    pub field: String,
    pub polynomial: String,
    pub resolution: ResolutionData,
    pub m_f: MatrixText,
    pub p_f: Option<MatrixText>,
    pub points: Vec<SingularityRecord>,
    /// Geometric points of the singular locus, without multiplicity.
    pub geometric_points: u64,
    /// Geometric points with coordinates outside the working field.
    pub residual_points: u64,
    /// `τ_total − Σ τ_p`: Tjurina degree of the part of the Jacobian scheme
    /// not resolved into points.
    pub residual_locus_degree: u64,
    pub tau_total: u64,
    pub mu_total: u64,
    /// Degree of the Jacobian scheme from its Hilbert polynomial.
    pub jacobian_degree: u64,
    pub global_all_qh: bool,
    /// `deg J_f` predicted by the degrees of the resolution (plane curves).
    pub tau_from_degrees: Option<i64>,
    pub chart: Chart,
    pub seed: u64,
    pub witness: Option<WitnessRecord>,
}

impl AnalysisReport {
    pub fn qh_count(&self) -> usize {
        self.points.iter().filter(|p| p.verdict == Verdict::QuasiHomogeneous).count()
    }

    pub fn point(&self, coords: &[&str]) -> Option<&SingularityRecord> {
        self.points.iter().find(|r| r.point.iter().map(String::as_str).eq(coords.iter().copied()))
    }
}

#[derive(Clone, Debug)]
pub struct AnalysisOptions {
    pub field: NumberField,
    pub seed: u64,
    /// Points to analyze in addition to those found.
    pub points: Vec<ProjectivePoint>,
    pub settings: Settings,
    pub witness: bool,
    /// Order for the Gröbner bases of `J_f` and `I_f + J_f`. Both ideals are
    /// homogeneous, so their Hilbert series do not depend on it.
    pub order: MonomialOrder,
    pub cache: Option<GbCache>,
}

impl Default for AnalysisOptions {
    fn default() -> Self {
        Self {
            field: NumberField::rationals(),
            seed: 0,
            points: Vec::new(),
            settings: Settings::default(),
            witness: true,
            order: MonomialOrder::Grevlex,
            cache: None,
        }
    }
}

/// Analysis result with the matrices kept for further constructions.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub report: AnalysisReport,
    pub f: Polynomial,
    pub m_f: GradedMatrix,
    pub p_f: Option<GradedMatrix>,
    pub points: Vec<ProjectivePoint>,
}

pub fn qh_record(
    m_f: &GradedMatrix,
    p: &ProjectivePoint,
    local: LocalNumbers,
    field: &NumberField,
) -> SingularityRecord {
    let entry = nonvanishing_entry(m_f, p, field);
    let verdict = if entry.is_some() { Verdict::QuasiHomogeneous } else { Verdict::NonQuasiHomogeneous };
    SingularityRecord {
        point: p.to_strings(field),
        tau: local.tau,
        mu: local.mu,
        rank_mf: entry.is_some() as u8,
        verdict,
        cross_check: entry.is_some() == (local.mu == local.tau),
        nonvanishing_entry: entry,
    }
}

/// `V(I_f + J_f) = ∅`, where `I_f` is generated by the entries of `M_f`.
pub fn global_all_qh(f: &Polynomial, m_f: &GradedMatrix, settings: &Settings) -> Result<bool, AnalysisError> {
    let ideal = Ideal::new(f.nvars(), f.gradient().into_iter().chain(m_f.entries().cloned()));
    Ok(ideal.projective_is_empty(settings.budget, settings.degree_budget)?.0)
}

/// Hilbert series of a homogeneous ideal from a basis in the chosen order,
/// through the cache when one is configured.
fn series(ideal: &Ideal, opts: &AnalysisOptions) -> Result<HilbertSeries, AnalysisError> {
    let budget = opts.settings.budget;
    let basis = match &opts.cache {
        Some(c) => c.groebner(ideal, &opts.order, &opts.field, budget)?,
        None => ideal.groebner(&opts.order, budget)?,
    };
    Ok(basis.hilbert_series())
}

pub fn analyze(f: &Polynomial, opts: &AnalysisOptions) -> Result<Analysis, AnalysisError> {
    let settings = &opts.settings;
    let field = &opts.field;
    let nv = f.nvars();
    let d = f.degree().unwrap_or(0);
    if nv < 3 || d < 2 || !f.is_homogeneous() {
        return Err(AnalysisError::BadInput(format!(
            "need a homogeneous polynomial of degree ≥ 2 in at least 3 variables (got {nv} variables, degree {d})"
        )));
    }
    let jacobian = Ideal::new(nv, f.gradient());
    let hs = series(&jacobian, opts)?;
    if hs.projective_dimension() > 0 {
        return Err(AnalysisError::NonIsolated);
    }
    let jacobian_degree = hs.profile(settings.degree_budget).map_err(IdealError::from)?.stable_value;

    let m_f = jacobian_syzygy_matrix(f, settings)?;
    let p_f = if nv == 3 { Some(plane_second_syzygies(&m_f, settings)?) } else { None };
    let resolution = ResolutionData::from_matrices(d as i64, &m_f, p_f.as_ref());

    let locus = find_singular_points(f, field, settings)?;
    let mut points = locus.points.clone();
    for p in &opts.points {
        if !points.contains(p) {
            points.push(p.clone());
        }
    }
    let solver = LocalSolver::new(f, field, *settings);
    let locals = par::map(settings.parallel, &points, |p| solver.numbers(p));
    let locals = locals.into_iter().collect::<Result<Vec<_>, _>>()?;
    let records: Vec<SingularityRecord> =
        points.iter().zip(&locals).map(|(p, l)| qh_record(&m_f, p, *l, field)).collect();

    let chart = choose_transversal_chart(f, opts.seed, settings)?;
    let tot = totals(f, &chart, settings)?;
    let global = Ideal::new(nv, f.gradient().into_iter().chain(m_f.entries().cloned()));
    let all_qh = series(&global, opts)?.projective_dimension() < 0;

    let found_tau: u64 = records.iter().take(locus.points.len()).map(|r| r.tau).sum();
    let mut violations = Vec::new();
    for r in &records {
        if !r.cross_check {
            violations.push(format!(
                "point ({}): rank criterion gives {:?} but mu = {}, tau = {}",
                r.point.join(" : "),
                r.verdict,
                r.mu,
                r.tau
            ));
        }
    }
    if tot.tau != jacobian_degree {
        violations.push(format!("total Tjurina number {} differs from deg J_f = {jacobian_degree}", tot.tau));
    }
    if found_tau > tot.tau || (locus.residual_points == 0 && found_tau != tot.tau) {
        violations.push(format!("local Tjurina numbers sum to {found_tau}, total is {}", tot.tau));
    }
    if tot.mu < tot.tau {
        violations.push(format!("mu = {} < tau = {}", tot.mu, tot.tau));
    }
    if all_qh != (tot.mu == tot.tau) {
        violations.push(format!("I_f + J_f test gives {all_qh} but mu = {}, tau = {}", tot.mu, tot.tau));
    }
    if locus.residual_points == 0 && all_qh != records.iter().all(|r| r.verdict == Verdict::QuasiHomogeneous) {
        violations.push("global verdict disagrees with the per-point verdicts".into());
    }
    let tau_from_degrees = p_f.as_ref().map(|_| resolution.tjurina_from_degrees(d as i64));
    if let Some(t) = tau_from_degrees {
        if t != jacobian_degree as i64 {
            violations.push(format!("resolution degrees predict deg J_f = {t}, found {jacobian_degree}"));
        }
        if resolution.m >= 3 && !resolution.epsilon_identities_hold(d as i64) {
            violations.push("epsilon identities fail".into());
        }
        if !resolution.degree_identity_holds(d as i64) {
            violations.push("degree identity of the resolution fails".into());
        }
    }

    let witness = if opts.witness && all_qh && !points.is_empty() {
        match witness_syzygy(f, &m_f, &points, field, opts.seed) {
            Ok(w) => Some(WitnessRecord {
                exponent: w.exponent,
                components: w.element.components.iter().map(|c| c.to_string()).collect(),
                trials: w.trials,
            }),
            Err(e) => {
                violations.push(format!("witness syzygy: {e}"));
                None
            }
        }
    } else {
        None
    };

    let names = Polynomial::default_names(nv);
    let report = AnalysisReport {
        n: nv - 1,
        d,
        field: field.descriptor(),
        polynomial: f.to_string(),
        resolution,
        m_f: m_f.to_text(&names),
        p_f: p_f.as_ref().map(|p| p.to_text(&names)),
        points: records,
        geometric_points: locus.geometric_points,
        residual_points: locus.residual_points,
        residual_locus_degree: tot.tau.saturating_sub(found_tau),
        tau_total: tot.tau,
        mu_total: tot.mu,
        jacobian_degree,
        global_all_qh: all_qh,
        tau_from_degrees,
        chart,
        seed: opts.seed,
        witness,
    };
    if !violations.is_empty() {
        return Err(AnalysisError::Invariant { violations, report: Box::new(report) });
    }
    Ok(Analysis { report, f: f.clone(), m_f, p_f, points })
}
