use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{raw_mul, GroupPoint};
use crate::milnor::{christoffel, nabla_invariant, ChristoffelTable, FrameVec, MilnorTriple};

/// Point on a geodesic: position and body-frame velocity coefficients.
///
/// The frame norm of the velocity is a first integral of the geodesic
/// equation; for unit-speed data it stays within 1e-9 of 1 per unit time of
/// integration.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GeodesicState {
    pub point: GroupPoint,
    pub body_velocity: FrameVec<f64>,
}

impl GeodesicState {
    pub fn new(point: GroupPoint, body_velocity: FrameVec<f64>) -> Self {
        GeodesicState {
            point,
            body_velocity,
        }
    }

    pub fn speed(&self) -> f64 {
        self.body_velocity.norm()
    }
}

/// Integration scheme. Fixed-step methods keep sweep outputs deterministic.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub enum Scheme {
    /// Classical fourth-order Runge-Kutta.
    #[default]
    ClassicalRk4,
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct IntegratorConfig {
    pub step: f64,
    /// Renormalize the quaternion after every step. The pre-normalization
    /// defect is tracked either way.
    pub renormalize: bool,
    pub scheme: Scheme,
}

impl Default for IntegratorConfig {
    fn default() -> Self {
        IntegratorConfig {
            step: 1e-3,
            renormalize: true,
            scheme: Scheme::ClassicalRk4,
        }
    }
}

impl IntegratorConfig {
    pub fn with_step(step: f64) -> Self {
        IntegratorConfig {
            step,
            ..Default::default()
        }
    }

    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0) || !self.step.is_finite() {
            return Err(Error::invalid(format!("integrator step {}", self.step)));
        }
        Ok(())
    }
}

/// Sampled geodesic trajectory, one state per step boundary.
#[derive(Debug, Clone, Serialize)]
pub struct Trajectory {
    pub times: Vec<f64>,
    pub states: Vec<GeodesicState>,
    /// Largest per-step quaternion norm defect, measured before any
    /// renormalization.
    pub max_step_norm_error: f64,
}

impl Trajectory {
    pub fn len(&self) -> usize {
        self.states.len()
    }

    pub fn is_empty(&self) -> bool {
        self.states.is_empty()
    }

    pub fn final_state(&self) -> &GeodesicState {
        self.states.last().expect("trajectory has an initial state")
    }

    pub fn iter(&self) -> impl Iterator<Item = (f64, &GeodesicState)> {
        self.times.iter().copied().zip(self.states.iter())
    }

    /// Largest deviation of the speed from its initial value.
    pub fn max_speed_drift(&self) -> f64 {
        let s0 = self.states[0].speed();
        self.states
            .iter()
            .fold(0.0f64, |acc, s| acc.max((s.speed() - s0).abs()))
    }
}

#[derive(Clone, Copy)]
struct RawState {
    q: (f64, f64, f64, f64),
    a: [f64; 3],
}

impl RawState {
    fn is_finite(&self) -> bool {
        let (w, x, y, z) = self.q;
        w.is_finite()
            && x.is_finite()
            && y.is_finite()
            && z.is_finite()
            && self.a.iter().all(|v| v.is_finite())
    }
}

/// Right-hand side of the geodesic system in body coordinates.
struct GeodesicRhs<'a> {
    table: &'a ChristoffelTable<f64>,
    /// su(2) scale of each frame generator (`E_i = λ_i X_i`).
    lambda: [f64; 3],
}

impl GeodesicRhs<'_> {
    fn eval(&self, s: &RawState) -> RawState {
        let a = FrameVec::new(s.a[0], s.a[1], s.a[2]);
        let ap = nabla_invariant(self.table, &a, &a).neg();
        // g' = g · (Σ a_i λ_i x_i), as a raw (non-unit) quaternion product.
        let gen = (
            0.0,
            s.a[0] * self.lambda[0],
            s.a[1] * self.lambda[1],
            s.a[2] * self.lambda[2],
        );
        RawState {
            q: raw_mul(&s.q, &gen),
            a: ap.c,
        }
    }
}

fn to_flat(s: &RawState) -> [f64; 7] {
    [s.q.0, s.q.1, s.q.2, s.q.3, s.a[0], s.a[1], s.a[2]]
}

fn from_flat(v: &[f64; 7]) -> RawState {
    RawState {
        q: (v[0], v[1], v[2], v[3]),
        a: [v[4], v[5], v[6]],
    }
}

fn rk4_step(rhs: &GeodesicRhs, s: &RawState, h: f64) -> RawState {
    let y = to_flat(s);
    let stage = |k: &[f64; 7], c: f64| {
        let mut v = y;
        for i in 0..7 {
            v[i] += c * k[i];
        }
        to_flat(&rhs.eval(&from_flat(&v)))
    };
    let k1 = to_flat(&rhs.eval(s));
    let k2 = stage(&k1, h / 2.0);
    let k3 = stage(&k2, h / 2.0);
    let k4 = stage(&k3, h);
    let mut out = y;
    for i in 0..7 {
        out[i] += h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]);
    }
    from_flat(&out)
}

/// Integrates the geodesic with initial state `s0` up to `t_end` (which may
/// be negative), sampling at every step boundary. The final partial step
/// lands exactly on `t_end`.
pub fn integrate_geodesic(
    m: &MilnorTriple<f64>,
    s0: &GeodesicState,
    t_end: f64,
    cfg: &IntegratorConfig,
) -> Result<Trajectory> {
    cfg.validate()?;
    if !t_end.is_finite() {
        return Err(Error::invalid(format!("t_end = {t_end}")));
    }
    let table = christoffel(m);
    let lambda = [
        (m.z * m.x).sqrt(),
        (m.x * m.y).sqrt(),
        (m.y * m.z).sqrt(),
    ];
    let rhs = GeodesicRhs {
        table: &table,
        lambda,
    };

    let p0 = s0.point;
    let mut state = RawState {
        q: (p0.w, p0.x, p0.y, p0.z),
        a: s0.body_velocity.c,
    };
    if !state.is_finite() {
        return Err(Error::NonFinite("initial geodesic state"));
    }

    let span = t_end.abs();
    let n_full = (span / cfg.step).floor() as usize;
    let remainder = span - n_full as f64 * cfg.step;
    let sign = if t_end < 0.0 { -1.0 } else { 1.0 };

    let capacity = n_full + 2;
    let mut times = Vec::with_capacity(capacity);
    let mut states = Vec::with_capacity(capacity);
    let mut max_norm_err: f64 = 0.0;

    let record = |times: &mut Vec<f64>, states: &mut Vec<GeodesicState>, t: f64, s: &RawState| {
        let (w, x, y, z) = s.q;
        states.push(GeodesicState::new(
            GroupPoint::new(w, x, y, z).expect("finite state"),
            FrameVec::new(s.a[0], s.a[1], s.a[2]),
        ));
        times.push(t);
    };
    record(&mut times, &mut states, 0.0, &state);

    let mut advance = |state: &mut RawState, h: f64, t: f64| -> Result<()> {
        *state = rk4_step(&rhs, state, h);
        if !state.is_finite() {
            return Err(Error::NonFinite("geodesic integration state"));
        }
        let (w, x, y, z) = state.q;
        let norm = (w * w + x * x + y * y + z * z).sqrt();
        max_norm_err = max_norm_err.max((norm - 1.0).abs());
        if cfg.renormalize {
            state.q = (w / norm, x / norm, y / norm, z / norm);
        }
        let _ = t;
        Ok(())
    };

    for k in 1..=n_full {
        let t = sign * (k as f64) * cfg.step;
        advance(&mut state, sign * cfg.step, t)?;
        record(&mut times, &mut states, t, &state);
    }
    if remainder > 1e-15 * span.max(1.0) {
        advance(&mut state, sign * remainder, t_end)?;
        record(&mut times, &mut states, t_end, &state);
    }

    Ok(Trajectory {
        times,
        states,
        max_step_norm_error: max_norm_err,
    })
}
