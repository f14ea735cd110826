use std::sync::Arc;

use serde::Serialize;

use super::mean_curvature::{closedness_scan, mean_curvature};
use crate::error::{Error, Result};
use crate::fields::{killing_residual, max_abs_3x3, FrameField, OneFormField};
use crate::group::{alg_exp, AlgebraVector, FdConfig, GroupPoint};
use crate::milnor::{christoffel, frame_generators, FrameVec, MilnorTriple};

/// Successful certificate data: the potential values and Killing residuals
/// of `X = e^{−f}·V` at the requested samples.
#[derive(Debug, Clone, Serialize)]
pub struct CertificateData {
    pub f_values: Vec<f64>,
    pub killing_residuals: Vec<f64>,
    pub max_killing_residual: f64,
}

/// Outcome of the homogeneity certificate for a one-dimensional foliation.
///
/// On a closed simply connected manifold a success is global: the foliation
/// is the orbit foliation of the isometric flow of `X`.
#[derive(Debug, Clone, Serialize)]
pub enum CertificateOutcome {
    /// `ω` is closed and `e^{−f}·V` is Killing within tolerance.
    Homogeneous(CertificateData),
    /// `dω ≠ 0`: the witness frame pair, value, and point. The foliation is
    /// not homogeneous.
    NotClosed {
        pair: (usize, usize),
        value: f64,
        point: GroupPoint,
    },
    /// `ω` passed the closedness scan but the reconstructed field failed the
    /// Killing test; carries the measured data.
    KillingResidualExceeded(CertificateData),
}

impl CertificateOutcome {
    pub fn is_homogeneous(&self) -> bool {
        matches!(self, CertificateOutcome::Homogeneous(_))
    }
}

/// Potential `f` with `df = ω`, built by integrating `ω` along a path of
/// three frame-exponential arcs from a base point.
///
/// The arc amounts come from the Euler-style factorization
/// `base⁻¹·p = exp(s1·e1)·exp(s2·e2)·exp(s3·e3)` of the displacement in the
/// metric frame generators `e_i = λ_i x_i`. Closedness of `ω` must be
/// verified beforehand; the value is then path-independent up to quadrature
/// error (composite Simpson, `panels` subintervals per arc).
pub struct MeanCurvaturePotential {
    m: MilnorTriple<f64>,
    omega: OneFormField,
    base: GroupPoint,
    panels: usize,
}

impl MeanCurvaturePotential {
    pub fn new(
        m: MilnorTriple<f64>,
        omega: OneFormField,
        base: GroupPoint,
        panels: usize,
    ) -> Self {
        assert!(panels >= 2 && panels.is_multiple_of(2), "Simpson needs an even panel count");
        MeanCurvaturePotential {
            m,
            omega,
            base,
            panels,
        }
    }

    pub fn eval(&self, p: &GroupPoint) -> Result<f64> {
        let displacement = self.base.inv().mul(p);
        let [a, b, c] = euler_xyz_angles(&displacement)?;
        let gens = frame_generators(&self.m);
        let lambda = [gens[0].a1, gens[1].a2, gens[2].a3];
        let amounts = [a / lambda[0], b / lambda[1], c / lambda[2]];

        let mut total = 0.0;
        let mut cursor = self.base;
        for (i, &s) in amounts.iter().enumerate() {
            total += self.arc_integral(&cursor, &gens[i], i, s)?;
            cursor = cursor.mul(&alg_exp(&gens[i].scale(s)));
        }
        debug_assert!(cursor.distance(p) < 1e-9);
        Ok(total)
    }

    /// `∫_0^s ω_i(g·exp(t·gen)) dt` by composite Simpson.
    fn arc_integral(
        &self,
        g: &GroupPoint,
        gen: &AlgebraVector,
        coeff: usize,
        s: f64,
    ) -> Result<f64> {
        if s == 0.0 {
            return Ok(0.0);
        }
        let n = self.panels;
        let h = s / n as f64;
        let mut acc = 0.0;
        for k in 0..=n {
            let point = g.mul(&alg_exp(&gen.scale(h * k as f64)));
            let value = self.omega.eval(&point).c[coeff];
            if !value.is_finite() {
                return Err(Error::NonFinite("mean curvature along the path"));
            }
            let weight = if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += weight * value;
        }
        Ok(acc * h / 3.0)
    }
}

/// Factors a group element as `exp(a·x1)·exp(b·x2)·exp(c·x3)`.
///
/// Works through the rotation `Ad(d)` (an XYZ Euler decomposition with
/// doubled angles) and resolves the quaternion sign with a full turn in the
/// first factor.
pub fn euler_xyz_angles(d: &GroupPoint) -> Result<[f64; 3]> {
    // Columns of the adjoint rotation.
    let col = |j: usize| d.adjoint(&AlgebraVector::basis(j));
    let (c0, c1, c2) = (col(0), col(1), col(2));
    let r = [
        [c0.a1, c1.a1, c2.a1],
        [c0.a2, c1.a2, c2.a2],
        [c0.a3, c1.a3, c2.a3],
    ];
    let r13 = r[0][2].clamp(-1.0, 1.0);
    let beta = r13.asin();
    let (alpha, gamma) = if (1.0 - r13.abs()) < 1e-12 {
        // Gimbal alignment: only α ± γ is determined; fix γ = 0.
        if r13 > 0.0 {
            (r[1][0].atan2(r[1][1]), 0.0)
        } else {
            ((-r[1][0]).atan2(r[1][1]), 0.0)
        }
    } else {
        ((-r[1][2]).atan2(r[2][2]), (-r[0][1]).atan2(r[0][0]))
    };

    let mut a = alpha / 2.0;
    let b = beta / 2.0;
    let c = gamma / 2.0;
    let product = |a: f64| {
        alg_exp(&AlgebraVector::basis(0).scale(a))
            .mul(&alg_exp(&AlgebraVector::basis(1).scale(b)))
            .mul(&alg_exp(&AlgebraVector::basis(2).scale(c)))
    };
    if product(a).distance(d) > 1.0 {
        a += std::f64::consts::PI;
    }
    let residual = product(a).distance(d);
    if residual > 1e-9 {
        return Err(Error::NonFinite("group element factorization"));
    }
    Ok([a, b, c])
}

/// The certified field `X = e^{−f}·V`.
pub fn certificate_field(v: &FrameField, potential: Arc<MeanCurvaturePotential>) -> FrameField {
    let v = v.clone();
    FrameField::general(move |g: &GroupPoint| match potential.eval(g) {
        Ok(f) => v.eval(g).scale(&(-f).exp()),
        Err(_) => FrameVec::new(f64::NAN, f64::NAN, f64::NAN),
    })
}

/// `X = e^{−f}·V` with the potential anchored at one point: `f(p)` is the
/// anchor value plus a single short-arc integral of `ω` from the anchor.
///
/// Equal to [`certificate_field`] up to quadrature error, but the long-path
/// error is a common constant near the anchor, so finite differences of this
/// field do not amplify it. Used for the Killing verification.
fn locally_anchored_field(
    v: &FrameField,
    omega: &OneFormField,
    m: &MilnorTriple<f64>,
    anchor: GroupPoint,
    f_anchor: f64,
) -> FrameField {
    let (v, omega, m) = (v.clone(), omega.clone(), m.clone());
    FrameField::general(move |p: &GroupPoint| {
        let w = anchor.inv().mul(p).log();
        let w_frame = FrameVec::from_body(&w, &m);
        // Simpson over the direct arc anchor·exp(t·w), t in [0, 1].
        let n = 8;
        let mut acc = 0.0;
        for k in 0..=n {
            let t = k as f64 / n as f64;
            let point = anchor.mul(&alg_exp(&w.scale(t)));
            let value = omega.eval(&point).dot(&w_frame);
            if !value.is_finite() {
                return FrameVec::new(f64::NAN, f64::NAN, f64::NAN);
            }
            let weight = if k == 0 || k == n {
                1.0
            } else if k % 2 == 1 {
                4.0
            } else {
                2.0
            };
            acc += weight * value;
        }
        let f = f_anchor + acc / (3.0 * n as f64);
        v.eval(p).scale(&(-f).exp())
    })
}

/// Constructive homogeneity test for the foliation tangent to the unit field
/// `v`.
///
/// First scans `dω` at the samples and fails fast with a witness when `ω` is
/// not closed. Otherwise integrates `ω` from `base` to obtain `f` with
/// `df = ω` and verifies that `X = e^{−f}·V` is Killing: success iff the
/// maximum residual over the samples stays below `tol`.
pub fn homogeneity_certificate(
    m: &MilnorTriple<f64>,
    v: &FrameField,
    base: &GroupPoint,
    samples: &[GroupPoint],
    tol: f64,
) -> Result<CertificateOutcome> {
    if !(tol > 0.0) {
        return Err(Error::invalid(format!("tolerance {tol}")));
    }
    if samples.is_empty() {
        return Err(Error::invalid("certificate needs sample points"));
    }
    let table = christoffel(m);
    // First-level derivatives of a general field: fine step with Richardson.
    let omega = mean_curvature(m, &table, v, &FdConfig::refined(1e-4));
    // dω differentiates ω again; a coarser outer step keeps the quadrature
    // noise of ω from being amplified.
    let scan = closedness_scan(m, &omega, samples, &FdConfig::refined(1e-3))?;
    if scan.max_abs > tol {
        return Ok(CertificateOutcome::NotClosed {
            pair: scan.witness_pair,
            value: scan.witness_value,
            point: scan.witness_point,
        });
    }

    let potential = Arc::new(MeanCurvaturePotential::new(
        m.clone(),
        omega.clone(),
        *base,
        64,
    ));
    let fd_x = FdConfig::plain(1e-4);
    let mut f_values = Vec::with_capacity(samples.len());
    let mut residuals = Vec::with_capacity(samples.len());
    let mut max_res: f64 = 0.0;
    for g in samples {
        let f_g = potential.eval(g)?;
        f_values.push(f_g);
        let x = locally_anchored_field(v, &omega, m, *g, f_g);
        let r = max_abs_3x3(&killing_residual(m, &table, &x, g, &fd_x)?);
        max_res = max_res.max(r);
        residuals.push(r);
    }
    let data = CertificateData {
        f_values,
        killing_residuals: residuals,
        max_killing_residual: max_res,
    };
    Ok(if max_res < tol {
        CertificateOutcome::Homogeneous(data)
    } else {
        CertificateOutcome::KillingResidualExceeded(data)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::right_invariant_field;
    use crate::foliation::build_inhomogeneous_foliation;
    use crate::sample::{random_group_point, random_points_where};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn euler_factorization_round_trip() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        for _ in 0..200 {
            let d = random_group_point(&mut rng);
            let [a, b, c] = euler_xyz_angles(&d).unwrap();
            let p = alg_exp(&AlgebraVector::basis(0).scale(a))
                .mul(&alg_exp(&AlgebraVector::basis(1).scale(b)))
                .mul(&alg_exp(&AlgebraVector::basis(2).scale(c)));
            assert!(p.distance(&d) < 1e-12);
        }
    }

    #[test]
    fn euler_factorization_near_gimbal_axis() {
        // Displacements close to a quarter turn about x2.
        for t in [-1.0f64, 1.0] {
            let d = alg_exp(&AlgebraVector::basis(1).scale(t * std::f64::consts::FRAC_PI_4))
                .mul(&alg_exp(&AlgebraVector::basis(0).scale(0.3)));
            let [a, b, c] = euler_xyz_angles(&d).unwrap();
            let p = alg_exp(&AlgebraVector::basis(0).scale(a))
                .mul(&alg_exp(&AlgebraVector::basis(1).scale(b)))
                .mul(&alg_exp(&AlgebraVector::basis(2).scale(c)));
            assert!(p.distance(&d) < 1e-9);
        }
    }

    #[test]
    fn hopf_field_certificate_is_trivial() {
        // ω = 0, so f ≡ 0 and X = Y3 itself.
        let m = MilnorTriple::berger(0.5).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(67);
        let samples: Vec<_> = (0..8).map(|_| random_group_point(&mut rng)).collect();
        let outcome = homogeneity_certificate(
            &m,
            &FrameField::basis(2),
            &GroupPoint::IDENTITY,
            &samples,
            1e-8,
        )
        .unwrap();
        match outcome {
            CertificateOutcome::Homogeneous(data) => {
                assert!(data.f_values.iter().all(|f| f.abs() < 1e-12));
                assert!(data.max_killing_residual < 1e-10);
            }
            other => panic!("expected success, got {other:?}"),
        }
    }

    #[test]
    fn killing_orbit_foliation_certificate_recovers_the_killing_field() {
        let eps = 0.5;
        let m = MilnorTriple::berger(eps).unwrap();
        let k_vec = AlgebraVector::new(0.5, -0.7, 0.3);
        let k = right_invariant_field(k_vec, &m);
        let k2 = right_invariant_field(k_vec, &m);
        let mc = m.clone();
        let v = FrameField::general(move |g: &GroupPoint| {
            let kv = k2.eval(g);
            kv.scale(&(1.0 / kv.norm()))
        });
        let mut rng = ChaCha8Rng::seed_from_u64(71);
        let vk = k.clone();
        let samples = random_points_where(&mut rng, 8, |g| {
            let kv = vk.eval(g);
            kv.norm() > 0.4 && kv.c[0].hypot(kv.c[1]) > 0.15 * kv.norm()
        })
        .unwrap();
        let base = samples[0];
        let outcome = homogeneity_certificate(&mc, &v, &base, &samples, 1e-5).unwrap();
        let data = match outcome {
            CertificateOutcome::Homogeneous(data) => data,
            other => panic!("expected success, got {other:?}"),
        };
        assert!(data.max_killing_residual < 1e-5);

        // X should be proportional to K with factor 1/|K(base)|.
        let table = christoffel(&mc);
        let omega = mean_curvature(&mc, &table, &v, &FdConfig::refined(1e-4));
        let potential = Arc::new(MeanCurvaturePotential::new(mc.clone(), omega, base, 64));
        let x = certificate_field(&v, potential);
        let scale = k.eval(&base).norm();
        for g in &samples {
            let diff = x.eval(g).sub(&k.eval(g).scale(&(1.0 / scale)));
            assert!(diff.norm() < 1e-5, "deviation {}", diff.norm());
        }
    }

    #[test]
    fn inhomogeneous_example_fails_with_a_witness() {
        let m = MilnorTriple::new(3.0, 2.0, 1.0).unwrap();
        let v = build_inhomogeneous_foliation(&m).unwrap();
        let outcome = homogeneity_certificate(
            &m,
            &v,
            &GroupPoint::IDENTITY,
            &[GroupPoint::IDENTITY],
            1e-6,
        )
        .unwrap();
        match outcome {
            CertificateOutcome::NotClosed { pair, value, .. } => {
                assert_eq!(pair, (1, 2));
                // dω(E2,E3) = −4 v2 v3 y (x − z) = −8 on (3,2,1).
                assert!((value + 8.0).abs() < 1e-12, "witness {value}");
            }
            other => panic!("expected NotClosed, got {other:?}"),
        }
    }
}
