//! Closed-form evaluation of Mellin-type integrals, integral transforms and
//! alternating sums from the series coefficients of the integrand, following
//! Ramanujan's master theorem and its analogs. Every closed form can be
//! checked against the independent numerical routines in [`oracle`].
//!
//! The usual entry point is a [`series::SeriesSpec`]: a coefficient function
//! φ with its analytic continuation, the shape of the series, and optionally
//! a direct evaluator of the integrand.
//!
//! ```
//! use rmt_core::mellin::rmt_general;
//! use rmt_core::series::{CoefficientFn, SeriesKind, SeriesSpec};
//!
//! // f(x) = e^{-x}: φ ≡ 1, so ∫ x^{s-1} e^{-x} dx = Γ(s)
//! let spec = SeriesSpec::new(CoefficientFn::constant(1.0), SeriesKind::ExpAlternating);
//! let res = rmt_general(&spec, 3.0);
//! assert!((res.value - 2.0).abs() < 1e-13);
//! ```

// Negated float comparisons are deliberate: they also reject NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod catalog;
mod diff;
mod error;
pub mod mellin;
pub mod oracle;
pub mod report;
pub mod series;
pub mod specfun;
pub mod sums;
pub mod transforms;

pub use catalog::{Catalog, CatalogEntry};
pub use error::{Error, Result};
pub use mellin::{ClosedFormResult, ClosedFormStatus};
pub use oracle::{OracleResult, OracleStatus};
pub use report::{Report, ReportStatus};
pub use series::{CoefficientFn, PoleSet, SeriesKind, SeriesSpec};
pub use specfun::{SpecResult, SpecStatus};
