//! Geodesics of left-invariant metrics.
//!
//! The general path is a fixed-step RK4 integrator for the body-frame
//! geodesic equation `a_k' = −Σ_ij a_i a_j Γ_ij^k` with group reconstruction
//! `g' = g·(Σ a_i λ_i x_i)`; the Berger spheres additionally have a closed
//! form, together with the period-shift law `c(t + T_θ) = φ^{S_θ}(c(t))`
//! relating one period of a unit-speed geodesic to a Hopf-flow increment.

mod berger;
mod integrate;

pub use berger::{
    berger_geodesic, general_berger_geodesic, period_shift, verify_period_shift,
    verify_period_shift_integrated, BergerGeodesicSpec,
};
pub use integrate::{integrate_geodesic, GeodesicState, IntegratorConfig, Scheme, Trajectory};
