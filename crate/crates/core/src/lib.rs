//! Exact Jacobian-syzygy analysis of projective hypersurfaces with isolated
//! singularities.
//!
//! The crate computes a minimal first syzygy matrix `M_f` of the Jacobian
//! ideal, total and local Milnor/Tjurina numbers, and decides for every
//! singular point whether it is quasi-homogeneous by checking whether `M_f`
//! vanishes there. For plane curves it also assembles the second syzygies,
//! the Koszul lift `N` and the Hilbert–Burch matrix of the scheme `Z_f`.

// dense matrix code reads better with explicit indices
#![allow(clippy::needless_range_loop)]

pub mod field;
pub mod groebner;
pub mod linalg;
pub mod par;
pub mod planar;
pub mod poly;
pub mod singular;
pub mod syzygy;

pub use field::{FieldElem, NumberField};
pub use poly::{Monomial, MonomialOrder, Polynomial, Ring};

/// Arbitrary-precision rational number.
pub type Rational = num_rational::BigRational;

/// Resource limits and execution switches shared by all computations.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Settings {
    pub budget: groebner::Budget,
    /// Largest degree at which a Hilbert function may still be changing.
    pub degree_budget: i64,
    /// Use the thread pool for independent sub-computations.
    pub parallel: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Self { budget: groebner::Budget::default(), degree_budget: 200, parallel: cfg!(feature = "parallel") }
    }
}
