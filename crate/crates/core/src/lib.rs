//! Colored unknot and Hopf link amplitudes on local P1xP1 from the regular
//! and refined topological vertex, computed exactly.

pub mod error;
pub mod partition;
pub mod ring;
pub mod specialize;
pub mod vertex;
pub mod amplitude;
pub mod analysis;

pub use error::{Error, Result};
pub use partition::Partition;
pub use ring::{Coeff, Monomial};

pub use num_rational::BigRational as Rational;

pub type Laurent = ring::LaurentPoly<Rational>;
pub type RatFn = ring::RationalFunction<Rational>;
pub type QSer = ring::QSeries<Rational>;
pub type Series = ring::KahlerSeries<Rational>;
