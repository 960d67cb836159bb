//! Exact-arithmetic machinery for classifying equivariant rational surfaces
//! with a `C*`-action and evaluating the minimum scalar curvature of their
//! extremal Kähler classes as exact rational functions.
//!
//! The crate is organized around a pipeline:
//!
//! * [`exactmath`] — arbitrary-precision rationals, multivariate polynomials
//!   over named parameters (with `pi` as a formal symbol), normalized rational
//!   functions, and Sturm-sequence real-root isolation.
//! * [`toric`] — quotient-singularity catalog: Hirzebruch-Jung expansions,
//!   fan chains, equivariant weight chains, and star resolutions for the
//!   non-cyclic groups.
//! * [`surface`] — equivariant rational surfaces over the Picard lattice:
//!   blow-ups with weight propagation, legality filters, ADE recognition,
//!   contraction to orbifold candidates, and canonical forms.
//! * [`census`] — exhaustive enumeration of admissible blow-up configurations
//!   from the projective-plane seeds, deduplication, and verification of the
//!   classification table.
//! * [`afunc`] — localization over the moment map: endpoint Chern numbers,
//!   the T-integrals, the Futaki invariant, and the exact minimum of the
//!   scalar curvature over each Kähler cone, with positivity analysis.
//! * [`fixtures`] — the shipped case catalog (JSON) and replay helpers.

pub mod afunc;
pub mod census;
pub mod exactmath;
pub mod fixtures;
pub mod surface;
pub mod toric;

pub use exactmath::{BigRational, MultiPoly, RatFunc};
