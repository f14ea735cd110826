//! Geometry of left-invariant metrics on SU(2).
//!
//! The library models the round and squashed three-spheres through three
//! layers:
//!
//! * [`group`]: exact quaternion arithmetic on SU(2) ≅ S³, the su(2) Lie
//!   algebra, closed-form exponentials, and the Hopf flow.
//! * [`milnor`]: left-invariant metrics described by Milnor structure
//!   constants: Christoffel symbols, covariant derivatives, sectional
//!   curvature, Killing residuals, and isometry-class detection.
//! * [`geodesic`] / [`foliation`]: geodesic integration (closed-form Berger
//!   geodesics plus a fixed-step RK4 Euler–Arnold integrator) and a toolkit
//!   for one-dimensional metric foliations: mean curvature forms, exterior
//!   derivatives, homogeneity certificates, and identity checks on Berger
//!   spheres.
//!
//! Exact computations (structure constants, Christoffel tables, residuals of
//! algebraic identities) run over arbitrary-precision rationals or small
//! radical extensions of them; see [`scalar`]. Floating-point computations
//! always carry explicit tolerances.

// Validation guards use `!(x > 0.0)` on purpose: unlike `x <= 0.0`, the
// negated form also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod error;
pub mod fields;
pub mod foliation;
pub mod geodesic;
pub mod group;
pub mod milnor;
pub mod sample;
pub mod scalar;

pub use error::{Error, Result};
pub use fields::{FrameField, OneFormField};
pub use foliation::{AngleCoordinates, CertificateOutcome, FoliationReport};
pub use geodesic::{BergerGeodesicSpec, GeodesicState, IntegratorConfig, Trajectory};
pub use group::{AlgebraVector, FdConfig, GroupPoint};
pub use milnor::{BergerParams, ChristoffelTable, FrameVec, IsometryClass, MilnorTriple};
pub use scalar::{Rational, SqrtCtx, SqrtPair};
