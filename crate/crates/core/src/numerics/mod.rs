//! Shared numerical kernels: adaptive quadrature, bracketed root-finding,
//! bounded extremum search, and cumulative-integral tabulation.
//!
//! Everything here is a pure function of its inputs and safe to call from
//! parallel workers.

pub mod cumulative;
pub mod extremum;
pub mod quadrature;
pub mod roots;

pub use cumulative::CumulativeIntegralTable;
pub use extremum::find_max;
pub use quadrature::{integrate_adaptive, QuadratureResult};
pub use roots::{find_root, Bracket};

use thiserror::Error;

/// Default relative tolerance for rectangular-barrier integrals.
pub const RECT_REL_TOL: f64 = 1e-10;
/// Default relative tolerance for atomic (WKB) integrals.
pub const ATOMIC_REL_TOL: f64 = 1e-8;
/// Default bracket tolerance for turning-point root finding, in η.
pub const TURNING_POINT_TOL: f64 = 1e-10;

#[derive(Debug, Error)]
pub enum NumericsError {
    #[error("quadrature did not converge: estimate {value:.6e}, error {error_estimate:.3e} above tolerance after {subdivisions} subdivisions")]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        subdivisions: usize,
    },
    #[error("integrand returned a non-finite value at x = {x:.17e}")]
    NonFiniteSample { x: f64 },
    #[error("no sign change on bracket [{lo:.6e}, {hi:.6e}]")]
    NoSignChange { lo: f64, hi: f64 },
    #[error("root finding exceeded {0} iterations")]
    MaxIterations(usize),
    #[error(
        "bracket does not contain a single interior maximum ({candidates} candidate peaks found)"
    )]
    NotUnimodal { candidates: usize },
    #[error("invalid bracket: lo = {lo:.6e}, hi = {hi:.6e}")]
    InvalidBracket { lo: f64, hi: f64 },
}
