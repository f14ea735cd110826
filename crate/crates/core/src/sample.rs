//! Seeded sampling helpers for tests, sweeps, and reports.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::group::GroupPoint;

/// Uniform random point of SU(2) ≅ S³ (normalized 4-dimensional Gaussian).
pub fn random_group_point<R: Rng + ?Sized>(rng: &mut R) -> GroupPoint {
    loop {
        let w: f64 = rng.sample(StandardNormal);
        let x: f64 = rng.sample(StandardNormal);
        let y: f64 = rng.sample(StandardNormal);
        let z: f64 = rng.sample(StandardNormal);
        if let Ok(g) = GroupPoint::new(w, x, y, z) {
            return g;
        }
    }
}

/// Draws points until `accept` passes, with an attempt cap.
pub fn random_points_where<R: Rng + ?Sized>(
    rng: &mut R,
    count: usize,
    mut accept: impl FnMut(&GroupPoint) -> bool,
) -> Option<Vec<GroupPoint>> {
    let mut out = Vec::with_capacity(count);
    for _ in 0..count.saturating_mul(10_000).max(10_000) {
        if out.len() == count {
            break;
        }
        let g = random_group_point(rng);
        if accept(&g) {
            out.push(g);
        }
    }
    (out.len() == count).then_some(out)
}
