//! Singular points, their local invariants and the quasi-homogeneity test.

mod analysis;
mod chart;
mod chebyshev;
mod local;
mod point;
mod points;
mod roots;
mod witness;

use thiserror::Error;

use crate::field::FieldError;
use crate::groebner::{GbError, IdealError};
use crate::syzygy::SyzygyError;

pub use analysis::{
    analyze, global_all_qh, qh_record, Analysis, AnalysisOptions, AnalysisReport, SingularityRecord, Verdict,
    WitnessRecord,
};
pub use chart::{
    choose_transversal_chart, hyperplane_is_transversal, total_milnor, total_tjurina, totals, Chart, Totals,
    CHART_ATTEMPTS,
};
pub use chebyshev::{chebyshev_fixture, chebyshev_t, ChebyshevFixture};
pub use local::{local_numbers, nonvanishing_entry, LocalNumbers, LocalSolver};
pub use point::{PointParseError, ProjectivePoint};
pub use points::{find_singular_points, SingularLocus};
pub use roots::roots_in_field;
pub use witness::{witness_syzygy, Witness, WITNESS_TRIALS};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AnalysisError {
    #[error("{0}")]
    BadInput(String),
    #[error("singular locus is not zero-dimensional")]
    NonIsolated,
    #[error("{0} is not a singular point")]
    NotSingular(String),
    #[error("no transversal hyperplane found in {0} random coordinate changes")]
    NoTransversalChart(usize),
    #[error("non-QH point in Y: {0}")]
    NonQhPoint(String),
    #[error("no witness syzygy found in {0} random trials")]
    WitnessNotFound(usize),
    #[error("invariant violation: {}", violations.join("; "))]
    Invariant { violations: Vec<String>, report: Box<AnalysisReport> },
    #[error(transparent)]
    Groebner(#[from] GbError),
    #[error(transparent)]
    Field(#[from] FieldError),
    #[error(transparent)]
    Syzygy(#[from] SyzygyError),
}

impl AnalysisError {
    /// Failures that indicate a bug rather than unsuitable input.
    pub fn is_invariant_violation(&self) -> bool {
        matches!(self, AnalysisError::Invariant { .. } | AnalysisError::WitnessNotFound(_))
    }
}

impl From<IdealError> for AnalysisError {
    fn from(e: IdealError) -> Self {
        match e {
            IdealError::Groebner(g) => AnalysisError::Groebner(g),
            _ => AnalysisError::NonIsolated,
        }
    }
}
