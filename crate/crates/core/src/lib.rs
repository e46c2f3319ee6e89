//! Quantum travel time for one-dimensional stationary scattering.
//!
//! The travel time between two positions is the line integral of the
//! forward-minus-backward probability density over the forward probability
//! current. Two physical settings are implemented:
//!
//! * [`rect_barrier`] — exact scattering from a rectangular barrier
//!   (ħ = m = 1), with closed-form travel times in all three regions, an
//!   independent quadrature route, and the Smith dwell time.
//! * [`atomic`] + [`wkb`] — strong-field tunnel ionization of He, Ar and Kr
//!   through the effective 1D potential in the parabolic coordinate η,
//!   solved in the WKB approximation: turning points, accumulated phase,
//!   tunneling and continuum travel times.
//!
//! [`numerics`] holds the shared kernels (adaptive Gauss–Kronrod quadrature
//! with open endpoints, Brent root bracketing, golden-section maximum
//! search, cumulative-integral tabulation) and [`report`] drives the
//! experiment grids and CSV emission behind the `qtt` binary.

pub mod atomic;
pub mod numerics;
pub mod rect_barrier;
pub mod report;
pub mod units;
pub mod wkb;

pub use atomic::{Atom, AtomSpec, EffectiveModel, LaserSpec};
pub use rect_barrier::{BarrierSpec, Method, ScatteringSolution};
pub use units::{convert, Quantity, Unit};
pub use wkb::{locate_barrier, qtt_continuum, qtt_trajectory, qtt_tunneling, BarrierGeometry};
