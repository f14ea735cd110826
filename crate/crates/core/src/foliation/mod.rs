//! One-dimensional foliation toolkit.
//!
//! A foliation is described by a unit vector field `V` tangent to its
//! leaves. The toolkit checks whether the foliation is *metric* (the
//! orthogonal distribution is totally geodesic), computes the mean curvature
//! one-form `ω = ⟨∇_V V, ·⟩` and its exterior derivative, constructs the
//! explicit left-invariant metric foliation that exists on every metric with
//! three distinct structure constants, and certifies homogeneity: a
//! one-dimensional foliation is homogeneous exactly when `ω` is closed, in
//! which case `e^{−f}·V` is a Killing field for any local potential `f` with
//! `df = ω`.

mod angles;
mod berger_identities;
mod certificate;
mod inhomogeneous;
mod mean_curvature;
mod metric_check;

pub use angles::{
    angle_coordinates, completion_fields, invariant_completion, orthonormal_completion,
    AngleCoordinates, CHART_EPS,
};
pub use berger_identities::{berger_foliation_identities, BergerIdentityResiduals};
pub use certificate::{
    certificate_field, euler_xyz_angles, homogeneity_certificate, CertificateData,
    CertificateOutcome, MeanCurvaturePotential,
};
pub use inhomogeneous::{build_inhomogeneous_foliation, InhomogeneousFoliation};
pub use mean_curvature::{
    closedness_scan, d_omega_invariant, exterior_derivative, mean_curvature, ClosednessScan,
};
pub use metric_check::{
    is_metric_foliation, totally_geodesic_residuals_invariant, FoliationReport, SampleCheck,
};
