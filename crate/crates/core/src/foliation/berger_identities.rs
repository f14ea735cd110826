use serde::Serialize;

use super::angles::{completion_fields, AngleCoordinates};
use crate::error::Result;
use crate::fields::{angle_derivative, lie_bracket, scalar_derivative, FrameField};
use crate::group::{FdConfig, GroupPoint};
use crate::milnor::{FrameVec, MilnorTriple};

/// Residuals of the structural identities satisfied by every metric
/// foliation of a Berger sphere on the chart where `V ≠ ±Y3`, written in the
/// angle coordinates `(ψ, ν)` of `V` and its completion `{V, W, U}`.
///
/// Each entry vanishes for a genuine metric foliation; the values here are
/// finite-difference residuals.
#[derive(Debug, Clone, Serialize)]
pub struct BergerIdentityResiduals {
    /// `Y3(ψ)`
    pub y3_psi: f64,
    /// `Y3(ν) + 2/ε`
    pub y3_nu: f64,
    /// `W(ψ)`
    pub w_psi: f64,
    /// `U(ψ) + sin ψ · W(ν) + (2 − 2/ε)·sin²ψ`
    pub u_psi_combo: f64,
    /// `V(ψ)`
    pub v_psi: f64,
    /// `⟨U, [U, V]⟩`
    pub u_bracket_uv: f64,
    /// `V(U(ψ))`
    pub v_u_psi: f64,
    /// `Y3(V(ν))`
    pub y3_v_nu: f64,
    /// `V(V(ν))`
    pub v_v_nu: f64,
    /// `|[Y3, V]|`
    pub bracket_y3_v: f64,
    /// `|[Y3, U]|`
    pub bracket_y3_u: f64,
    /// `|[Y3, W]|`
    pub bracket_y3_w: f64,
}

impl BergerIdentityResiduals {
    pub fn named(&self) -> [(&'static str, f64); 12] {
        [
            ("Y3(psi)", self.y3_psi),
            ("Y3(nu) + 2/eps", self.y3_nu),
            ("W(psi)", self.w_psi),
            ("U(psi) + sin(psi) W(nu) + (2 - 2/eps) sin^2(psi)", self.u_psi_combo),
            ("V(psi)", self.v_psi),
            ("<U, [U,V]>", self.u_bracket_uv),
            ("V(U(psi))", self.v_u_psi),
            ("Y3(V(nu))", self.y3_v_nu),
            ("V(V(nu))", self.v_v_nu),
            ("|[Y3, V]|", self.bracket_y3_v),
            ("|[Y3, U]|", self.bracket_y3_u),
            ("|[Y3, W]|", self.bracket_y3_w),
        ]
    }

    pub fn max_abs(&self) -> f64 {
        self.named()
            .iter()
            .fold(0.0f64, |acc, (_, v)| acc.max(v.abs()))
    }

    /// Componentwise |max| over a set of per-sample residuals.
    pub fn max_over(rows: &[BergerIdentityResiduals]) -> [f64; 12] {
        let mut out = [0.0f64; 12];
        for row in rows {
            for (slot, (_, v)) in row.named().iter().enumerate() {
                out[slot] = out[slot].max(v.abs());
            }
        }
        out
    }
}

/// Evaluates the identity residuals for the unit field `v` on the Berger
/// sphere with parameter `eps` at each sample (all of which must stay away
/// from `V = ±Y3`). The same finite-difference configuration drives both
/// derivative levels, so halving `fd.step` should shrink every residual at
/// second order until the rounding floor.
pub fn berger_foliation_identities(
    eps: f64,
    v: &FrameField,
    samples: &[GroupPoint],
    fd: &FdConfig,
) -> Result<Vec<BergerIdentityResiduals>> {
    let m = MilnorTriple::berger(eps)?;
    let (w_field, u_field) = completion_fields(v);
    let y3 = FrameVec::<f64>::basis(2);

    let vf = v.clone();
    let psi = move |g: &GroupPoint| match AngleCoordinates::from_frame_vec(&vf.eval(g)) {
        Ok(a) => a.psi,
        Err(_) => f64::NAN,
    };
    let vf = v.clone();
    let nu = move |g: &GroupPoint| match AngleCoordinates::from_frame_vec(&vf.eval(g)) {
        Ok(a) => a.nu,
        Err(_) => f64::NAN,
    };

    // First-level derivative fields, re-evaluated at arbitrary points so
    // they can be differentiated again.
    let u_psi_field = {
        let (m, u, psi, fd) = (m.clone(), u_field.clone(), psi.clone(), *fd);
        move |g: &GroupPoint| {
            scalar_derivative(&m, psi.clone(), g, &u.eval(g), &fd).unwrap_or(f64::NAN)
        }
    };
    let v_nu_field = {
        let (m, v, nu, fd) = (m.clone(), v.clone(), nu.clone(), *fd);
        move |g: &GroupPoint| {
            angle_derivative(&m, nu.clone(), g, &v.eval(g), &fd).unwrap_or(f64::NAN)
        }
    };

    let mut out = Vec::with_capacity(samples.len());
    for g in samples {
        let angles = AngleCoordinates::from_frame_vec(&v.eval_checked(g)?)?;
        let vv = v.eval(g);
        let uv = u_field.eval_checked(g)?;
        let wv = w_field.eval_checked(g)?;
        let sin_psi = angles.psi.sin();

        let y3_psi = scalar_derivative(&m, psi.clone(), g, &y3, fd)?;
        let y3_nu = angle_derivative(&m, nu.clone(), g, &y3, fd)? + 2.0 / eps;
        let w_psi = scalar_derivative(&m, psi.clone(), g, &wv, fd)?;
        let u_psi = scalar_derivative(&m, psi.clone(), g, &uv, fd)?;
        let w_nu = angle_derivative(&m, nu.clone(), g, &wv, fd)?;
        let u_psi_combo = u_psi + sin_psi * w_nu + (2.0 - 2.0 / eps) * sin_psi * sin_psi;
        let v_psi = scalar_derivative(&m, psi.clone(), g, &vv, fd)?;

        let uv_bracket = lie_bracket(&m, &u_field, v, g, fd)?;
        let u_bracket_uv = uv.dot(&uv_bracket);

        let v_u_psi = scalar_derivative(&m, u_psi_field.clone(), g, &vv, fd)?;
        let y3_v_nu = scalar_derivative(&m, v_nu_field.clone(), g, &y3, fd)?;
        let v_v_nu = scalar_derivative(&m, v_nu_field.clone(), g, &vv, fd)?;

        let bracket_y3_v = lie_bracket(&m, &FrameField::basis(2), v, g, fd)?.norm();
        let bracket_y3_u = lie_bracket(&m, &FrameField::basis(2), &u_field, g, fd)?.norm();
        let bracket_y3_w = lie_bracket(&m, &FrameField::basis(2), &w_field, g, fd)?.norm();

        out.push(BergerIdentityResiduals {
            y3_psi,
            y3_nu,
            w_psi,
            u_psi_combo,
            v_psi,
            u_bracket_uv,
            v_u_psi,
            y3_v_nu,
            v_v_nu,
            bracket_y3_v,
            bracket_y3_u,
            bracket_y3_w,
        });
    }
    Ok(out)
}
