use serde::Serialize;

use super::angles::{completion_fields, invariant_completion, AngleCoordinates};
use super::certificate::CertificateOutcome;
use super::mean_curvature::mean_curvature;
use crate::error::{Error, Result};
use crate::fields::{nabla, FrameField};
use crate::group::{FdConfig, GroupPoint};
use crate::milnor::{christoffel, nabla_invariant, ChristoffelTable, FrameVec, MilnorTriple};
use crate::scalar::Scalar;

/// Per-sample data of a foliation check.
#[derive(Debug, Clone, Serialize)]
pub struct SampleCheck {
    pub point: GroupPoint,
    /// Totally-geodesic residuals of the orthogonal distribution:
    /// `(⟨∇_U U, V⟩, ⟨∇_W W, V⟩, ⟨∇_U W + ∇_W U, V⟩)`.
    pub residuals: [f64; 3],
    /// Frame coefficients of `∇_V V` (the mean curvature form).
    pub mean_curvature: [f64; 3],
    /// `(dω(E2,E3), dω(E3,E1), dω(E1,E2))`, when a closedness scan ran.
    pub d_omega: Option<[f64; 3]>,
}

/// Aggregated verdicts of the foliation checks.
#[derive(Debug, Clone, Serialize)]
pub struct FoliationReport {
    pub tolerance: f64,
    pub samples: Vec<SampleCheck>,
    pub max_residual: f64,
    /// The orthogonal distribution is totally geodesic within tolerance.
    pub is_metric: bool,
    pub max_d_omega: Option<f64>,
    pub is_closed: Option<bool>,
    pub certificate: Option<CertificateOutcome>,
}

impl FoliationReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

/// Checks whether the orbit foliation of the unit field `v` is metric: the
/// three totally-geodesic residuals of `V^⊥` must vanish at every sample.
///
/// Left-invariant fields have constant residuals, so a single sample
/// suffices (the identity is used if `samples` is empty); general fields are
/// completed through their angle coordinates and every sample must stay away
/// from `V = ±E3`.
pub fn is_metric_foliation(
    m: &MilnorTriple<f64>,
    v: &FrameField,
    samples: &[GroupPoint],
    tol: f64,
    fd: &FdConfig,
) -> Result<FoliationReport> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance {tol}")));
    }
    let table = christoffel(m);
    let default_samples = [GroupPoint::IDENTITY];
    let samples: &[GroupPoint] = if samples.is_empty() {
        if !v.is_left_invariant() {
            return Err(Error::invalid("general fields need sample points"));
        }
        &default_samples
    } else {
        samples
    };

    let (w_field, u_field) = if let FrameField::LeftInvariant(c) = v {
        let (w, u) = invariant_completion(c)?;
        (FrameField::LeftInvariant(w), FrameField::LeftInvariant(u))
    } else {
        completion_fields(v)
    };

    let omega = mean_curvature(m, &table, v, fd);
    let mut checks = Vec::with_capacity(samples.len());
    let mut max_residual: f64 = 0.0;
    for g in samples {
        if !v.is_left_invariant() {
            // Surface the chart violation before it turns into NaNs.
            AngleCoordinates::from_frame_vec(&v.eval_checked(g)?)?;
        }
        let vv = v.eval_checked(g)?;
        let r1 = nabla(m, &table, &u_field, &u_field, g, fd)?.dot(&vv);
        let r2 = nabla(m, &table, &w_field, &w_field, g, fd)?.dot(&vv);
        let r3 = nabla(m, &table, &u_field, &w_field, g, fd)?
            .add(&nabla(m, &table, &w_field, &u_field, g, fd)?)
            .dot(&vv);
        for r in [r1, r2, r3] {
            if !r.is_finite() {
                return Err(Error::NonFinite("totally-geodesic residual"));
            }
            max_residual = max_residual.max(r.abs());
        }
        checks.push(SampleCheck {
            point: *g,
            residuals: [r1, r2, r3],
            mean_curvature: omega.eval(g).c,
            d_omega: None,
        });
    }
    Ok(FoliationReport {
        tolerance: tol,
        samples: checks,
        max_residual,
        is_metric: max_residual <= tol,
        max_d_omega: None,
        is_closed: None,
        certificate: None,
    })
}

/// Exact totally-geodesic residuals of `V^⊥` for left-invariant data, given
/// an orthonormal completion `{v, w, u}`:
/// `(⟨∇_U U, V⟩, ⟨∇_W W, V⟩, ⟨∇_U W + ∇_W U, V⟩)`.
pub fn totally_geodesic_residuals_invariant<S: Scalar>(
    table: &ChristoffelTable<S>,
    v: &FrameVec<S>,
    w: &FrameVec<S>,
    u: &FrameVec<S>,
) -> [S; 3] {
    [
        nabla_invariant(table, u, u).dot(v),
        nabla_invariant(table, w, w).dot(v),
        nabla_invariant(table, u, w)
            .add(&nabla_invariant(table, w, u))
            .dot(v),
    ]
}
