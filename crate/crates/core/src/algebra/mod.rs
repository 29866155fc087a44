//! Exact arithmetic: scalars with a formal `√π` grade, sparse Laurent
//! polynomials, truncated power series in `t` and reduction modulo the cone
//! quadric.

mod poly;
mod quadric;
mod scalar;
mod series;

pub use poly::{CompiledPoly, Monomial, Polynomial};
pub use quadric::{quadric_form, reduce_mod_quadric};
pub use scalar::{binomial, factorial, gamma_half_integer, ExactScalar};
pub use series::{series_expand, PowerSeries, SeriesExpr};
