//! The JSON report document and the analysis driver behind it.
//!
//! ```text
//! {
//!   "schema_version": 1,
//!   "input":     { "polynomial", "field", "seed", "order", "points": [..] },
//!   "status":    "ok" | "invariant_violation",
//!   "violations": [..],
//!   "report":    { n, d, field, polynomial, resolution, m_f, p_f, points, ...totals },
//!   "planar":    null | { zf_bidegrees, zf_generators, s_matrix, classes, ... },
//!   "telemetry": { "max_pairs", "degree_budget", "timing": null | { analysis_ms, planar_ms } }
//! }
//! ```
//! Without `timing` the document is a deterministic function of the input
//! and the options.

use std::path::PathBuf;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use qhsyz::groebner::{Budget, GbCache};
use qhsyz::planar::{planar_report, PlanarReport};
use qhsyz::singular::{analyze, AnalysisError, AnalysisOptions, AnalysisReport, ProjectivePoint, Verdict};
use qhsyz::syzygy::{lift_koszul, SyzygyError};
use qhsyz::{MonomialOrder, Settings};

use crate::input::PolyFile;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReportDocument {
    pub schema_version: u32,
    pub input: InputEcho,
    pub status: Status,
    pub violations: Vec<String>,
    pub report: AnalysisReport,
    pub planar: Option<PlanarReport>,
    pub telemetry: Telemetry,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InputEcho {
    pub polynomial: String,
    pub field: String,
    pub seed: u64,
    pub order: String,
    pub points: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    InvariantViolation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Telemetry {
    pub max_pairs: Option<usize>,
    pub degree_budget: i64,
    pub timing: Option<Timing>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Timing {
    pub analysis_ms: u64,
    pub planar_ms: u64,
}

impl ReportDocument {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// Parses and validates a document written by [`ReportDocument::to_json`].
    pub fn from_json(text: &str) -> Result<Self, String> {
        let doc: Self = serde_json::from_str(text).map_err(|e| format!("invalid report: {e}"))?;
        if doc.schema_version != SCHEMA_VERSION {
            return Err(format!("unsupported schema version {} (expected {SCHEMA_VERSION})", doc.schema_version));
        }
        if (doc.status == Status::Ok) != doc.violations.is_empty() {
            return Err("status does not match the violation list".into());
        }
        if doc.input.polynomial != doc.report.polynomial || doc.input.field != doc.report.field {
            return Err("input echo does not match the report".into());
        }
        Ok(doc)
    }

    pub fn qh_count(&self) -> usize {
        self.report.qh_count()
    }

    pub fn non_qh_count(&self) -> usize {
        self.report.points.len() - self.report.qh_count()
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum PlanarMode {
    /// Plane curves only.
    #[default]
    Auto,
    On,
    Off,
}

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub seed: u64,
    pub order: MonomialOrder,
    pub max_pairs: Option<usize>,
    pub degree_budget: i64,
    pub cache_dir: Option<PathBuf>,
    pub planar: PlanarMode,
    pub timing: bool,
    pub parallel: bool,
    pub points: Vec<ProjectivePoint>,
}

impl Default for RunOptions {
    fn default() -> Self {
        Self {
            seed: 0,
            order: MonomialOrder::Grevlex,
            max_pairs: None,
            degree_budget: Settings::default().degree_budget,
            cache_dir: None,
            planar: PlanarMode::Auto,
            timing: false,
            parallel: cfg!(feature = "parallel"),
            points: Vec::new(),
        }
    }
}

#[derive(Debug)]
pub enum Outcome {
    /// Exit 0.
    Ok(Box<ReportDocument>),
    /// Exit 1; the document lists the violations.
    Violation(Box<ReportDocument>),
    /// Unsuitable input or exhausted budget (exit 2), or an internal failure
    /// without a report (exit 1).
    Failed { code: u8, message: String },
}

impl Outcome {
    pub fn exit_code(&self) -> u8 {
        match self {
            Outcome::Ok(_) => 0,
            Outcome::Violation(_) => 1,
            Outcome::Failed { code, .. } => *code,
        }
    }

    pub fn document(&self) -> Option<&ReportDocument> {
        match self {
            Outcome::Ok(d) | Outcome::Violation(d) => Some(d),
            Outcome::Failed { .. } => None,
        }
    }
}

/// Exit code for an analysis error without a report.
fn failure_code(e: &AnalysisError) -> u8 {
    match e {
        AnalysisError::Invariant { .. } | AnalysisError::WitnessNotFound(_) => 1,
        AnalysisError::Syzygy(SyzygyError::Groebner(_)) => 2,
        AnalysisError::Syzygy(_) => 1,
        _ => 2,
    }
}

fn millis(t: Instant) -> u64 {
    t.elapsed().as_millis() as u64
}

pub fn run(input: &PolyFile, opts: &RunOptions) -> Outcome {
    let f = &input.polynomial;
    let field = &input.field;
    let plane = f.nvars() == 3;
    if opts.planar == PlanarMode::On && !plane {
        return Outcome::Failed { code: 2, message: "--planar needs a plane curve (3 variables)".into() };
    }
    let settings = Settings {
        budget: Budget { max_pairs: opts.max_pairs },
        degree_budget: opts.degree_budget,
        parallel: opts.parallel,
    };
    let aopts = AnalysisOptions {
        field: field.clone(),
        seed: opts.seed,
        points: opts.points.clone(),
        settings,
        witness: true,
        order: opts.order.clone(),
        cache: opts.cache_dir.as_ref().map(GbCache::new),
    };
    let start = Instant::now();
    let (report, mut violations, analysis) = match analyze(f, &aopts) {
        Ok(a) => (a.report.clone(), Vec::new(), Some(a)),
        Err(AnalysisError::Invariant { violations, report }) => (*report, violations, None),
        Err(e) => return Outcome::Failed { code: failure_code(&e), message: e.to_string() },
    };
    let analysis_ms = millis(start);

    let start = Instant::now();
    let mut planar = None;
    if let (Some(a), true) = (&analysis, plane && opts.planar != PlanarMode::Off) {
        let p_f = a.p_f.as_ref().expect("plane curves have second syzygies");
        let r = &a.report;
        match lift_koszul(&a.m_f, f, &settings) {
            Ok(n) => match planar_report(f, &a.m_f, p_f, &n, &r.resolution, r.mu_total, r.tau_total, opts.seed) {
                Ok(p) => {
                    if !p.class_identities.iter().all(|&ok| ok) {
                        violations.push(format!("class identities fail: {:?}", p.class_identities));
                    }
                    if !p.graph_sample_ok {
                        violations.push("a Z_f equation does not vanish on the polar graph".into());
                    }
                    planar = Some(p);
                }
                Err(e) => violations.push(format!("Hilbert–Burch matrix: {e}")),
            },
            Err(e @ SyzygyError::Groebner(_)) => return Outcome::Failed { code: 2, message: e.to_string() },
            Err(e) => violations.push(format!("Koszul lift: {e}")),
        }
    }
    let planar_ms = millis(start);
    // debug builds only: lets the test suite exercise the violation path
    if cfg!(debug_assertions) && std::env::var_os("QHSYZ_INJECT_VIOLATION").is_some() {
        violations.push("injected violation".into());
    }

    let doc = ReportDocument {
        schema_version: SCHEMA_VERSION,
        input: InputEcho {
            polynomial: f.to_string(),
            field: field.descriptor(),
            seed: opts.seed,
            order: opts.order.name(),
            points: opts.points.iter().map(|p| p.to_strings(field).join(" : ")).collect(),
        },
        status: if violations.is_empty() { Status::Ok } else { Status::InvariantViolation },
        violations,
        report,
        planar,
        telemetry: Telemetry {
            max_pairs: opts.max_pairs,
            degree_budget: opts.degree_budget,
            timing: opts.timing.then_some(Timing { analysis_ms, planar_ms }),
        },
    };
    if doc.status == Status::Ok {
        Outcome::Ok(Box::new(doc))
    } else {
        Outcome::Violation(Box::new(doc))
    }
}

fn join<T: ToString>(v: &[T]) -> String {
    v.iter().map(T::to_string).collect::<Vec<_>>().join(" ")
}

/// Human-readable summary.
pub fn summary(doc: &ReportDocument) -> String {
    use std::fmt::Write;
    let r = &doc.report;
    let res = &r.resolution;
    let mut s = String::new();
    let _ = writeln!(s, "f = {}", r.polynomial);
    let _ = writeln!(s, "P^{}, degree {}, field {}", r.n, r.d, r.field);
    let _ = writeln!(s, "Jacobian syzygies: m = {}, exponents {}", res.m, join(&res.exponents));
    if r.n == 2 {
        let _ = writeln!(s, "second syzygy degrees: {}", join(&res.second_degrees));
    }
    let _ = writeln!(s, "tau = {}, mu = {}, deg J_f = {}", r.tau_total, r.mu_total, r.jacobian_degree);
    let _ = writeln!(s, "singular points ({} found, {} geometric):", r.points.len(), r.geometric_points);
    for p in &r.points {
        let v = match p.verdict {
            Verdict::QuasiHomogeneous => "QH",
            Verdict::NonQuasiHomogeneous => "non-QH",
        };
        let _ = writeln!(s, "  ({})  tau {}  mu {}  rank M_f {}  {v}", p.point.join(" : "), p.tau, p.mu, p.rank_mf);
    }
    if r.residual_points > 0 {
        let _ = writeln!(
            s,
            "residual: {} points outside the field, Tjurina degree {}",
            r.residual_points, r.residual_locus_degree
        );
    }
    let _ = writeln!(s, "all singularities QH: {}", if r.global_all_qh { "yes" } else { "no" });
    if let Some(p) = &doc.planar {
        let (z, sf) = (p.classes.z_f, p.classes.s_f);
        let _ = writeln!(
            s,
            "[Z_f] = ({}, {}, {}), [S_f] = ({}, {}, {})",
            z.alpha, z.beta, z.gamma, sf.alpha, sf.beta, sf.gamma
        );
    }
    if let Some(t) = &doc.telemetry.timing {
        let _ = writeln!(s, "time: analysis {} ms, planar {} ms", t.analysis_ms, t.planar_ms);
    }
    for v in &doc.violations {
        let _ = writeln!(s, "INVARIANT VIOLATION: {v}");
    }
    s
}
