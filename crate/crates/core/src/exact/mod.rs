//! Exact arithmetic substrate: rationals, Gaussian rationals, truncated
//! series in one complex variable, and polynomials.

pub mod poly;
pub mod scalar;
pub mod series;
pub mod upoly;

pub use poly::{Exponent, MPoly};
pub use scalar::{ExactComplex, ExactScalar};
pub use series::{analytic_apply, modulus_power, AnalyticFn, HermSeries, Series, SeriesOp, TruncSeries, Vanishing};
pub use upoly::{Bound, UPoly};
