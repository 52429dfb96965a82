//! Gröbner bases of ideals and of submodules of graded free modules.

mod cache;
mod engine;
mod hilbert;
mod ideal;
mod vector;

pub use cache::{CacheInfo, GbCache};
pub use engine::{groebner, Budget, Element, Engine, GbError, GroebnerBasis};
pub use hilbert::{HilbertError, HilbertProfile, HilbertSeries};
pub use ideal::{Ideal, IdealError, PolyBasis};
pub use vector::{map_coeffs, Coeff, Fp, ModuleOrder, PositionPolicy, Term, Vector};
