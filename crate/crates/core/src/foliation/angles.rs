use serde::Serialize;

use crate::error::{Error, Result};
use crate::fields::FrameField;
use crate::milnor::FrameVec;

/// Below this in-plane norm a unit field counts as parallel to `±E3` and the
/// angle chart is undefined. Derivatives of the angles degrade well before
/// this cutoff; samplers should keep a healthy margin.
pub const CHART_EPS: f64 = 1e-12;

/// Spherical angles of a unit field against the orthonormal frame:
/// `V = sin ψ cos ν · E1 + sin ψ sin ν · E2 + cos ψ · E3`,
/// defined away from `V = ±E3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AngleCoordinates {
    /// Polar angle in `(0, π)`.
    pub psi: f64,
    /// Azimuth in `R / 2πZ`.
    pub nu: f64,
}

impl AngleCoordinates {
    pub fn from_frame_vec(v: &FrameVec<f64>) -> Result<Self> {
        if !v.is_finite() {
            return Err(Error::NonFinite("angle coordinates"));
        }
        let s = v.c[0].hypot(v.c[1]);
        if s <= CHART_EPS {
            return Err(Error::OutsideChart);
        }
        Ok(AngleCoordinates {
            psi: s.atan2(v.c[2]),
            nu: v.c[1].atan2(v.c[0]),
        })
    }

    /// Unit vector with these angles.
    pub fn reconstruct(&self) -> FrameVec<f64> {
        let (sp, cp) = self.psi.sin_cos();
        let (sn, cn) = self.nu.sin_cos();
        FrameVec::new(sp * cn, sp * sn, cp)
    }
}

/// Angle coordinates of the field `V` at `g`.
pub fn angle_coordinates(v: &FrameField, g: &crate::group::GroupPoint) -> Result<AngleCoordinates> {
    AngleCoordinates::from_frame_vec(&v.eval(g))
}

/// Completes a unit vector with the given angles to the orthonormal triple
/// `{V, W, U}`:
///
/// ```text
/// W = cos ψ cos ν · E1 + cos ψ sin ν · E2 − sin ψ · E3
/// U = −sin ν · E1 + cos ν · E2
/// ```
///
/// so that `E3 = cos ψ · V − sin ψ · W`.
pub fn orthonormal_completion(angles: &AngleCoordinates) -> (FrameVec<f64>, FrameVec<f64>) {
    let (sp, cp) = angles.psi.sin_cos();
    let (sn, cn) = angles.nu.sin_cos();
    let w = FrameVec::new(cp * cn, cp * sn, -sp);
    let u = FrameVec::new(-sn, cn, 0.0);
    (w, u)
}

/// The completion `(W, U)` as fields, derived pointwise from the angles of
/// `V`. Outside the chart the evaluators return NaN coefficients, which the
/// downstream calculus reports as an error.
pub fn completion_fields(v: &FrameField) -> (FrameField, FrameField) {
    if let FrameField::LeftInvariant(c) = v {
        if let Ok(angles) = AngleCoordinates::from_frame_vec(c) {
            let (w, u) = orthonormal_completion(&angles);
            return (FrameField::LeftInvariant(w), FrameField::LeftInvariant(u));
        }
    }
    let nan = || FrameVec::new(f64::NAN, f64::NAN, f64::NAN);
    let vw = v.clone();
    let w_field = FrameField::general(move |g| match AngleCoordinates::from_frame_vec(&vw.eval(g)) {
        Ok(a) => orthonormal_completion(&a).0,
        Err(_) => nan(),
    });
    let vu = v.clone();
    let u_field = FrameField::general(move |g| match AngleCoordinates::from_frame_vec(&vu.eval(g)) {
        Ok(a) => orthonormal_completion(&a).1,
        Err(_) => nan(),
    });
    (w_field, u_field)
}

/// Orthonormal completion `(W, U)` of an arbitrary left-invariant unit
/// vector, valid at the poles too: `U` is the normalized projection of the
/// axis least aligned with `v`, and `W = V × U`.
pub fn invariant_completion(v: &FrameVec<f64>) -> Result<(FrameVec<f64>, FrameVec<f64>)> {
    let unit = v.normalized()?;
    let axis = (0..3)
        .min_by(|&a, &b| {
            unit.c[a]
                .abs()
                .partial_cmp(&unit.c[b].abs())
                .expect("finite coefficients")
        })
        .expect("three axes");
    let e = FrameVec::<f64>::basis(axis);
    let u = e.sub(&unit.scale(&unit.c[axis])).normalized()?;
    let w = unit.cross(&u);
    Ok((w, u))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::GroupPoint;

    #[test]
    fn axis_fields_have_the_expected_angles() {
        // V = E2 (= Y2 on a Berger sphere): ψ = π/2, ν = π/2.
        let a = AngleCoordinates::from_frame_vec(&FrameVec::basis(1)).unwrap();
        assert!((a.psi - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
        assert!((a.nu - std::f64::consts::FRAC_PI_2).abs() < 1e-15);

        // V = (√3/2)·E2 + (1/2)·E3: ψ = π/3, ν = π/2.
        let v = FrameVec::new(0.0, 3f64.sqrt() / 2.0, 0.5);
        let a = AngleCoordinates::from_frame_vec(&v).unwrap();
        assert!((a.psi - std::f64::consts::FRAC_PI_3).abs() < 1e-15);
        assert!((a.nu - std::f64::consts::FRAC_PI_2).abs() < 1e-15);
    }

    #[test]
    fn pole_is_outside_the_chart() {
        let err = AngleCoordinates::from_frame_vec(&FrameVec::basis(2));
        assert!(matches!(err, Err(Error::OutsideChart)));
        let err = angle_coordinates(&FrameField::basis(2), &GroupPoint::IDENTITY);
        assert!(matches!(err, Err(Error::OutsideChart)));
    }

    #[test]
    fn reconstruction_round_trip() {
        for (c1, c2, c3) in [(0.6, 0.0, 0.8), (-0.3, 0.5, 0.81), (0.1, -0.99, 0.1)] {
            let v = FrameVec::new(c1, c2, c3).normalized().unwrap();
            let a = AngleCoordinates::from_frame_vec(&v).unwrap();
            assert!(a.reconstruct().sub(&v).norm() < 1e-12);
        }
    }

    #[test]
    fn completion_of_e2_and_gram_identity() {
        // V = E2: W = −E3, U = −E1.
        let a = AngleCoordinates::from_frame_vec(&FrameVec::basis(1)).unwrap();
        let (w, u) = orthonormal_completion(&a);
        assert!(w.add(&FrameVec::basis(2)).norm() < 1e-15);
        assert!(u.add(&FrameVec::basis(0)).norm() < 1e-15);

        for (c1, c2, c3) in [(0.48, -0.6, 0.64), (0.9, 0.1, -0.42)] {
            let v = FrameVec::new(c1, c2, c3).normalized().unwrap();
            let a = AngleCoordinates::from_frame_vec(&v).unwrap();
            let (w, u) = orthonormal_completion(&a);
            // Gram matrix of (V, W, U) is the identity.
            assert!(v.dot(&w).abs() < 1e-12);
            assert!(v.dot(&u).abs() < 1e-12);
            assert!(w.dot(&u).abs() < 1e-12);
            assert!((w.norm() - 1.0).abs() < 1e-12);
            assert!((u.norm() - 1.0).abs() < 1e-12);
            // E3 = cos ψ · V − sin ψ · W.
            let e3 = v.scale(&a.psi.cos()).sub(&w.scale(&a.psi.sin()));
            assert!(e3.sub(&FrameVec::basis(2)).norm() < 1e-12);
        }
    }

    #[test]
    fn invariant_completion_handles_the_poles() {
        let (w, u) = invariant_completion(&FrameVec::basis(2)).unwrap();
        assert!(w.norm() > 0.99 && u.norm() > 0.99);
        assert!(w.dot(&FrameVec::basis(2)).abs() < 1e-14);
        assert!(u.dot(&FrameVec::basis(2)).abs() < 1e-14);
    }
}
