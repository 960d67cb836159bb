//! The localization machine over the moment map: Kähler-class assignment by
//! lattice linearity, endpoint Chern numbers, the moment integrals
//! `T = (T_s, T_0, T_1, T_2)`, the Futaki invariant, and the exact minimum
//! of the scalar curvature over the Kähler cone.
//!
//! Everything is computed twice where it matters: the bracketed integral
//! formulas on one hand, and an independent piecewise-linear reconstruction
//! of the reduced-space area profile `A(t)` on the other. Exact agreement of
//! the two is enforced.

mod areas;
mod certificates;
mod moment;
mod oracle;
mod positivity;

pub use areas::{assign_kahler, KahlerAssignment};
pub use certificates::cyclic_sum;
pub use moment::{
    compute_h, compute_t, futaki, min_scalar, moment_data, moment_data_from_raw, s_zero,
    EndpointDesc, HResult, InteriorPoint, MinScalar, MomentData, RawMomentInput, TVector,
};
pub use oracle::t_oracle;
pub use positivity::{positivity_report, PositivityOptions, PositivityVerdict};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AFuncError {
    #[error("{0}")]
    Exact(#[from] crate::exactmath::ExactError),
    #[error("pins do not determine the areas: {0}")]
    Pins(String),
    #[error("pinned curve `{0}` lies in the exceptional set")]
    PinnedExceptional(String),
    #[error("unknown curve `{0}`")]
    UnknownCurve(String),
    #[error("crossing formula violated: jump sum {lhs} but chern difference {rhs}")]
    Crossing { lhs: String, rhs: String },
    #[error("flow chain inconsistency: {0}")]
    Chain(String),
    #[error("area profile inconsistency: {0}")]
    Profile(String),
    #[error("degenerate class: -T_s + s_0 T_1 = 0")]
    Degenerate,
    #[error("{0}")]
    Surface(String),
}
