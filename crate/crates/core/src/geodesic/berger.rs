use serde::Serialize;

use super::integrate::{integrate_geodesic, GeodesicState, IntegratorConfig};
use crate::error::{Error, Result};
use crate::group::{alg_exp, hopf_flow, AlgebraVector, GroupPoint};
use crate::milnor::{FrameVec, MilnorTriple};

/// Data of a unit-speed Berger geodesic through the identity whose initial
/// velocity makes angle `theta` with the Hopf direction `Y3`:
/// `c'(0) = α·Y3 + β·Y2` with `α = cos θ`, `β = sin θ`.
///
/// `period` / `shift` are the constants of the period-shift law
/// `c(t + T) = φ^S(c(t))`: `m = √(α² + β²/ε)`, `T = 2π/m`, `S = α(1−ε)T`.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct BergerGeodesicSpec {
    pub eps: f64,
    pub theta: f64,
    pub alpha: f64,
    pub beta: f64,
    pub m: f64,
    pub period: f64,
    pub shift: f64,
}

impl BergerGeodesicSpec {
    pub fn new(eps: f64, theta: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::invalid(format!("Berger parameter eps = {eps}")));
        }
        if eps == 1.0 {
            return Err(Error::invalid(
                "eps = 1 is the round metric; use the integrator there",
            ));
        }
        if !(theta > 0.0 && theta < std::f64::consts::PI) {
            return Err(Error::invalid(format!(
                "theta = {theta} must lie strictly between 0 and pi"
            )));
        }
        let (period, shift) = period_shift(eps, theta)?;
        let alpha = theta.cos();
        let beta = theta.sin();
        let m = (alpha * alpha + beta * beta / eps).sqrt();
        Ok(BergerGeodesicSpec {
            eps,
            theta,
            alpha,
            beta,
            m,
            period,
            shift,
        })
    }

    /// Initial velocity in the orthonormal `Y` frame: `(0, β, α)`.
    pub fn initial_velocity(&self) -> FrameVec<f64> {
        FrameVec::new(0.0, self.beta, self.alpha)
    }

    pub fn milnor_triple(&self) -> MilnorTriple<f64> {
        MilnorTriple::berger(self.eps).expect("eps validated on construction")
    }
}

/// Period `T = 2π/m` and Hopf-flow shift `S = α(1−ε)T` of a unit-speed
/// geodesic at angle `theta` to the Hopf direction, `m = √(α² + β²/ε)`.
pub fn period_shift(eps: f64, theta: f64) -> Result<(f64, f64)> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::invalid(format!("eps = {eps}")));
    }
    if !(theta > 0.0 && theta < std::f64::consts::PI) {
        return Err(Error::invalid(format!("theta = {theta} outside (0, pi)")));
    }
    let alpha = theta.cos();
    let beta = theta.sin();
    let m = (alpha * alpha + beta * beta / eps).sqrt();
    let period = 2.0 * std::f64::consts::PI / m;
    let shift = alpha * (1.0 - eps) * period;
    Ok((period, shift))
}

/// Closed-form unit-speed geodesic through the identity with
/// `c'(0) = α·Y3 + β·Y2`, evaluated at time `t`.
///
/// In matrix form the first column is
/// `(f(t)·e^{iφ}, g(t)·e^{iφ})` with `f(t) = cos(tm) + iα·sin(tm)/m`,
/// `g(t) = iβ·sin(tm)/(√ε·m)`, and phase `φ = α(1/ε − 1)t`.
pub fn berger_geodesic(spec: &BergerGeodesicSpec, t: f64) -> GroupPoint {
    let tm = t * spec.m;
    let (sin_tm, cos_tm) = tm.sin_cos();
    let phi = spec.alpha * (1.0 / spec.eps - 1.0) * t;
    let (sin_phi, cos_phi) = phi.sin_cos();
    let f_im = spec.alpha * sin_tm / spec.m;
    let g_im = spec.beta * sin_tm / (spec.eps.sqrt() * spec.m);
    // Quaternion components of [[f e^{iφ}, ...], [g e^{iφ}, ...]].
    let w = cos_tm * cos_phi - f_im * sin_phi;
    let z = cos_tm * sin_phi + f_im * cos_phi;
    let x = g_im * sin_phi;
    let y = g_im * cos_phi;
    GroupPoint::new(w, x, y, z).expect("closed form produces unit quaternions")
}

/// Maximum over the sample times of
/// `|c(t + T) − φ^S(c(t))|` for the closed-form geodesic.
pub fn verify_period_shift(eps: f64, theta: f64, sample_times: &[f64]) -> Result<f64> {
    let spec = BergerGeodesicSpec::new(eps, theta)?;
    let mut max: f64 = 0.0;
    for &t in sample_times {
        let advanced = berger_geodesic(&spec, t + spec.period);
        let flowed = hopf_flow(eps, spec.shift, &berger_geodesic(&spec, t));
        max = max.max(advanced.distance(&flowed));
    }
    Ok(max)
}

/// Same residual with the integrated trajectory in place of the closed form.
///
/// One trajectory covers `[0, t_span]`; a second, restarted from the exact
/// state at time `T`, covers `[T, T + t_span]` on the same step grid, so the
/// two sample combs stay aligned without interpolation.
pub fn verify_period_shift_integrated(
    eps: f64,
    theta: f64,
    t_span: f64,
    n_samples: usize,
    cfg: &IntegratorConfig,
) -> Result<f64> {
    let spec = BergerGeodesicSpec::new(eps, theta)?;
    let m = spec.milnor_triple();
    let s0 = GeodesicState::new(GroupPoint::IDENTITY, spec.initial_velocity());
    let first_leg = integrate_geodesic(&m, &s0, spec.period, cfg)?;
    let base = integrate_geodesic(&m, &s0, t_span, cfg)?;
    let advanced = integrate_geodesic(&m, first_leg.final_state(), t_span, cfg)?;

    let n = n_samples.max(1);
    let last = base.len().min(advanced.len()) - 1;
    let mut max: f64 = 0.0;
    for k in 0..n {
        let idx = (k * last) / n.max(1);
        let flowed = hopf_flow(eps, spec.shift, &base.states[idx].point);
        max = max.max(advanced.states[idx].point.distance(&flowed));
    }
    Ok(max)
}

/// Unit-speed Berger geodesic from an arbitrary start point and unit
/// velocity (given in the orthonormal `Y` frame).
///
/// The generic case reduces to the closed form by a left translation and a
/// rotation about the Hopf axis, realized as conjugation by `exp(l·x3)`
/// (the isotropy action fixes `Y3` and rotates the orthogonal plane by `2l`).
/// Velocities parallel to `±Y3` are exactly the Hopf orbits.
pub fn general_berger_geodesic(
    eps: f64,
    start: &GroupPoint,
    velocity: &FrameVec<f64>,
    t: f64,
) -> Result<GroupPoint> {
    if !(eps > 0.0) || !eps.is_finite() {
        return Err(Error::invalid(format!("eps = {eps}")));
    }
    let v = velocity.normalized()?;
    let alpha = v.c[2];
    let beta = v.c[0].hypot(v.c[1]);
    if beta < 1e-12 {
        // Velocity is ±Y3: the orbit of the unit Killing field.
        let sign = if alpha >= 0.0 { 1.0 } else { -1.0 };
        return Ok(hopf_flow(eps, sign * t, start));
    }
    let theta = beta.atan2(alpha);
    let spec = BergerGeodesicSpec::new(eps, theta)?;
    // Rotate the in-plane part of the base velocity (0, β) onto (v1, v2).
    let phi = v.c[1].atan2(v.c[0]);
    let l = (phi - std::f64::consts::FRAC_PI_2) / 2.0;
    let h = alg_exp(&AlgebraVector::basis(2).scale(l));
    let base = berger_geodesic(&spec, t);
    Ok(start.mul(&h).mul(&base).mul(&h.inv()))
}
