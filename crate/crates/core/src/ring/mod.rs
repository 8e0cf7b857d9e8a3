//! Exact arithmetic in `Q(q^(1/2), t^(1/2))` and truncated series over it.

pub mod expr;
pub mod json;
pub mod kahler;
pub mod laurent;
pub mod qseries;
pub mod ratfn;
pub mod scalar;

pub use kahler::{graded_bidegrees, Bidegree, Coefficient, KahlerSeries};
pub use laurent::{LaurentPoly, Monomial};
pub use qseries::QSeries;
pub use ratfn::RationalFunction;
pub use scalar::Coeff;
