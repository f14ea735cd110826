//! SU(2) and su(2): quaternion arithmetic, the matrix isomorphism, the
//! exponential map, and one-parameter flows.
//!
//! A group element is a unit quaternion `q = w + x·i + y·j + z·k`. The fixed
//! isomorphism onto special-unitary matrices sends
//!
//! ```text
//! i ↦ x1 = [[0, 1], [-1, 0]]    j ↦ x2 = [[0, i], [i, 0]]    k ↦ x3 = [[i, 0], [0, -i]]
//! ```
//!
//! so that the quaternion `(w, x, y, z)` corresponds to the matrix
//! `[[w + z·i, x + y·i], [-x + y·i, w - z·i]]`. Under this map the basis
//! brackets are `[x1,x2] = 2x3`, `[x2,x3] = 2x1`, `[x3,x1] = 2x2`, and each
//! `x_i` squares to minus the identity, so `exp(θ·n̂) = cos θ + sin θ·n̂` for a
//! unit direction `n̂`. [`self_check`] validates the whole convention against
//! 2×2 complex matrix arithmetic.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

const UNIT_NORM_TOL: f64 = 1e-12;

/// Element of su(2): coefficients against the basis `x1, x2, x3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AlgebraVector {
    pub a1: f64,
    pub a2: f64,
    pub a3: f64,
}

impl AlgebraVector {
    pub const ZERO: AlgebraVector = AlgebraVector::new(0.0, 0.0, 0.0);

    pub const fn new(a1: f64, a2: f64, a3: f64) -> Self {
        AlgebraVector { a1, a2, a3 }
    }

    pub fn basis(i: usize) -> Self {
        match i {
            0 => AlgebraVector::new(1.0, 0.0, 0.0),
            1 => AlgebraVector::new(0.0, 1.0, 0.0),
            2 => AlgebraVector::new(0.0, 0.0, 1.0),
            _ => panic!("su(2) basis index out of range: {i}"),
        }
    }

    pub fn scale(&self, s: f64) -> Self {
        AlgebraVector::new(self.a1 * s, self.a2 * s, self.a3 * s)
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraVector::new(self.a1 + other.a1, self.a2 + other.a2, self.a3 + other.a3)
    }

    pub fn dot(&self, other: &Self) -> f64 {
        self.a1 * other.a1 + self.a2 * other.a2 + self.a3 * other.a3
    }

    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    /// su(2) bracket: `[x1,x2] = 2x3` and cyclic.
    pub fn bracket(&self, other: &Self) -> Self {
        AlgebraVector::new(
            2.0 * (self.a2 * other.a3 - self.a3 * other.a2),
            2.0 * (self.a3 * other.a1 - self.a1 * other.a3),
            2.0 * (self.a1 * other.a2 - self.a2 * other.a1),
        )
    }

    /// The corresponding traceless anti-Hermitian matrix.
    pub fn to_matrix(&self) -> Mat2 {
        let i = Complex64::new(0.0, 1.0);
        Mat2([
            [
                i * self.a3,
                Complex64::new(self.a1, 0.0) + i * self.a2,
            ],
            [
                Complex64::new(-self.a1, 0.0) + i * self.a2,
                -i * self.a3,
            ],
        ])
    }

    /// Extracts the su(2) coefficients from a (nearly) traceless
    /// anti-Hermitian matrix, averaging the redundant entries.
    pub fn from_matrix(m: &Mat2) -> Self {
        let [[m11, m12], [m21, m22]] = m.0;
        AlgebraVector::new(
            0.5 * (m12.re - m21.re),
            0.5 * (m12.im + m21.im),
            0.5 * (m11.im - m22.im),
        )
    }
}

/// Point of SU(2) stored as a unit quaternion; renormalized on construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GroupPoint {
    pub w: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl GroupPoint {
    pub const IDENTITY: GroupPoint = GroupPoint {
        w: 1.0,
        x: 0.0,
        y: 0.0,
        z: 0.0,
    };

    /// Builds a group point from quaternion components, renormalizing.
    pub fn new(w: f64, x: f64, y: f64, z: f64) -> Result<Self> {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        if !n.is_finite() || n < 1e-8 {
            return Err(Error::invalid(format!(
                "quaternion norm {n} too far from 1 to renormalize"
            )));
        }
        Ok(GroupPoint {
            w: w / n,
            x: x / n,
            y: y / n,
            z: z / n,
        })
    }

    fn renormalized(w: f64, x: f64, y: f64, z: f64) -> Self {
        let n = (w * w + x * x + y * y + z * z).sqrt();
        GroupPoint {
            w: w / n,
            x: x / n,
            y: y / n,
            z: z / n,
        }
    }

    pub fn norm(&self) -> f64 {
        (self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z).sqrt()
    }

    /// Quaternion product. The result is renormalized, so repeated products
    /// cannot drift off the unit sphere.
    pub fn mul(&self, rhs: &GroupPoint) -> GroupPoint {
        let (a0, a1, a2, a3) = (self.w, self.x, self.y, self.z);
        let (b0, b1, b2, b3) = (rhs.w, rhs.x, rhs.y, rhs.z);
        GroupPoint::renormalized(
            a0 * b0 - a1 * b1 - a2 * b2 - a3 * b3,
            a0 * b1 + a1 * b0 + a2 * b3 - a3 * b2,
            a0 * b2 - a1 * b3 + a2 * b0 + a3 * b1,
            a0 * b3 + a1 * b2 - a2 * b1 + a3 * b0,
        )
    }

    /// Inverse (= quaternion conjugate on the unit sphere).
    pub fn inv(&self) -> GroupPoint {
        GroupPoint {
            w: self.w,
            x: -self.x,
            y: -self.y,
            z: -self.z,
        }
    }

    /// Euclidean distance of the two quaternions in R⁴.
    ///
    /// Points here are genuine SU(2) elements, not a quotient by ±1, so the
    /// plain chordal distance is the right notion.
    pub fn distance(&self, other: &GroupPoint) -> f64 {
        let dw = self.w - other.w;
        let dx = self.x - other.x;
        let dy = self.y - other.y;
        let dz = self.z - other.z;
        (dw * dw + dx * dx + dy * dy + dz * dz).sqrt()
    }

    /// Logarithm: the algebra vector `v` with `exp(v) = self`, with `|v| ≤ π`.
    pub fn log(&self) -> AlgebraVector {
        let s = (self.x * self.x + self.y * self.y + self.z * self.z).sqrt();
        if s < 1e-9 {
            // Near ±identity: θ/s → 1/w to leading order.
            let k = if self.w >= 0.0 { 1.0 } else { -1.0 };
            return AlgebraVector::new(k * self.x, k * self.y, k * self.z);
        }
        let theta = s.atan2(self.w);
        let k = theta / s;
        AlgebraVector::new(k * self.x, k * self.y, k * self.z)
    }

    /// Conjugation action on the algebra: `Ad(q)v = q v q⁻¹`.
    pub fn adjoint(&self, v: &AlgebraVector) -> AlgebraVector {
        let p = GroupPoint {
            w: 0.0,
            x: v.a1,
            y: v.a2,
            z: v.a3,
        };
        // Quaternion triple product without renormalization: p is not unit.
        let q = self;
        let t = raw_mul(&(q.w, q.x, q.y, q.z), &(p.w, p.x, p.y, p.z));
        let r = raw_mul(&t, &(q.w, -q.x, -q.y, -q.z));
        AlgebraVector::new(r.1, r.2, r.3)
    }

    /// The corresponding special-unitary matrix.
    pub fn to_matrix(&self) -> Mat2 {
        let i = Complex64::new(0.0, 1.0);
        Mat2([
            [
                Complex64::new(self.w, 0.0) + i * self.z,
                Complex64::new(self.x, 0.0) + i * self.y,
            ],
            [
                Complex64::new(-self.x, 0.0) + i * self.y,
                Complex64::new(self.w, 0.0) - i * self.z,
            ],
        ])
    }

    /// Recovers a group point from a special-unitary matrix, validating the
    /// SU(2) shape (`m22 = conj(m11)`, `m21 = -conj(m12)`, unit determinant).
    pub fn from_matrix(m: &Mat2) -> Result<Self> {
        let [[m11, m12], [m21, m22]] = m.0;
        let shape = (m22 - m11.conj()).norm() + (m21 + m12.conj()).norm();
        if shape > 1e-9 {
            return Err(Error::invalid(format!(
                "matrix is not special-unitary (shape residual {shape:.3e})"
            )));
        }
        GroupPoint::new(m11.re, m12.re, m12.im, m11.im)
    }

    /// Hopf projection: the orbit invariant `q·k·q⁻¹` of right translation by
    /// `exp(s·x3)`, a point of the unit two-sphere.
    pub fn hopf_projection(&self) -> [f64; 3] {
        let v = self.adjoint(&AlgebraVector::basis(2));
        [v.a1, v.a2, v.a3]
    }
}

/// Quaternion product without renormalization; needed wherever non-unit
/// quaternions appear (derivatives, integrator stages).
pub(crate) fn raw_mul(
    a: &(f64, f64, f64, f64),
    b: &(f64, f64, f64, f64),
) -> (f64, f64, f64, f64) {
    (
        a.0 * b.0 - a.1 * b.1 - a.2 * b.2 - a.3 * b.3,
        a.0 * b.1 + a.1 * b.0 + a.2 * b.3 - a.3 * b.2,
        a.0 * b.2 - a.1 * b.3 + a.2 * b.0 + a.3 * b.1,
        a.0 * b.3 + a.1 * b.2 - a.2 * b.1 + a.3 * b.0,
    )
}

/// Closed-form exponential su(2) → SU(2).
///
/// For `a = θ·n̂` with `|n̂| = 1` this is `cos θ · 1 + sin θ · n̂`; in
/// particular `exp(s·x3)` is the matrix `diag(e^{is}, e^{-is})`.
pub fn alg_exp(a: &AlgebraVector) -> GroupPoint {
    let theta = a.norm();
    if theta < 1e-12 {
        // sin θ / θ ≈ 1 − θ²/6.
        let k = 1.0 - theta * theta / 6.0;
        return GroupPoint::renormalized(1.0, k * a.a1, k * a.a2, k * a.a3);
    }
    let k = theta.sin() / theta;
    GroupPoint::renormalized(theta.cos(), k * a.a1, k * a.a2, k * a.a3)
}

/// Group product; see [`GroupPoint::mul`].
pub fn group_mul(g: &GroupPoint, h: &GroupPoint) -> GroupPoint {
    g.mul(h)
}

/// Group inverse; see [`GroupPoint::inv`].
pub fn group_inv(g: &GroupPoint) -> GroupPoint {
    g.inv()
}

/// Time-`s` orbit of the unit Killing field `Y3 = ε⁻¹·X3` on the Berger
/// sphere with parameter `eps`: `g · exp((s/ε)·x3)`.
pub fn hopf_flow(eps: f64, s: f64, g: &GroupPoint) -> GroupPoint {
    assert!(eps > 0.0, "hopf_flow requires eps > 0");
    g.mul(&alg_exp(&AlgebraVector::basis(2).scale(s / eps)))
}

/// Finite-difference configuration for directional derivatives.
///
/// The default step balances truncation against cancellation for a single
/// derivative level; nested derivatives use coarser steps chosen at the call
/// site.
#[derive(Debug, Clone, Copy)]
pub struct FdConfig {
    pub step: f64,
    pub richardson: bool,
}

impl Default for FdConfig {
    fn default() -> Self {
        FdConfig {
            step: 1e-5,
            richardson: true,
        }
    }
}

impl FdConfig {
    pub fn plain(step: f64) -> Self {
        FdConfig {
            step,
            richardson: false,
        }
    }

    pub fn refined(step: f64) -> Self {
        FdConfig {
            step,
            richardson: true,
        }
    }
}

/// Central-difference directional derivative of a scalar field along the
/// left-invariant direction `dir` (an su(2) generator) at `g`:
/// `(F(g·exp(h·dir)) − F(g·exp(−h·dir))) / 2h`, optionally refined once by
/// Richardson extrapolation.
pub fn directional_derivative<F>(f: F, g: &GroupPoint, dir: &AlgebraVector, fd: &FdConfig) -> Result<f64>
where
    F: Fn(&GroupPoint) -> f64,
{
    if !(fd.step > 0.0) || !fd.step.is_finite() {
        return Err(Error::invalid(format!("finite-difference step {}", fd.step)));
    }
    let central = |h: f64| -> Result<f64> {
        let fp = f(&g.mul(&alg_exp(&dir.scale(h))));
        let fm = f(&g.mul(&alg_exp(&dir.scale(-h))));
        if !fp.is_finite() || !fm.is_finite() {
            return Err(Error::NonFinite("directional derivative"));
        }
        Ok((fp - fm) / (2.0 * h))
    };
    let d_h = central(fd.step)?;
    if !fd.richardson {
        return Ok(d_h);
    }
    let d_h2 = central(fd.step / 2.0)?;
    Ok((4.0 * d_h2 - d_h) / 3.0)
}

/// Like [`directional_derivative`] but for a circle-valued field (an angle
/// mod 2π): stencil values are unwrapped to the branch nearest the base value
/// before differencing.
pub fn directional_derivative_angle<F>(
    f: F,
    g: &GroupPoint,
    dir: &AlgebraVector,
    fd: &FdConfig,
) -> Result<f64>
where
    F: Fn(&GroupPoint) -> f64,
{
    let base = f(g);
    if !base.is_finite() {
        return Err(Error::NonFinite("angle derivative base value"));
    }
    let unwrapped = move |g: &GroupPoint| {
        let v = f(g);
        let mut d = (v - base) % (2.0 * std::f64::consts::PI);
        if d > std::f64::consts::PI {
            d -= 2.0 * std::f64::consts::PI;
        } else if d < -std::f64::consts::PI {
            d += 2.0 * std::f64::consts::PI;
        }
        base + d
    };
    directional_derivative(unwrapped, g, dir, fd)
}

/// 2×2 complex matrix; the target of the SU(2)/su(2) isomorphism.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Mat2(pub [[Complex64; 2]; 2]);

impl Mat2 {
    pub fn identity() -> Self {
        Mat2([
            [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
        ])
    }

    pub fn zero() -> Self {
        Mat2([[Complex64::new(0.0, 0.0); 2]; 2])
    }

    pub fn mul(&self, rhs: &Mat2) -> Mat2 {
        let mut out = Mat2::zero();
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] = self.0[i][0] * rhs.0[0][j] + self.0[i][1] * rhs.0[1][j];
            }
        }
        out
    }

    pub fn add(&self, rhs: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] += rhs.0[i][j];
            }
        }
        out
    }

    pub fn sub(&self, rhs: &Mat2) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] -= rhs.0[i][j];
            }
        }
        out
    }

    pub fn scale(&self, s: Complex64) -> Mat2 {
        let mut out = *self;
        for i in 0..2 {
            for j in 0..2 {
                out.0[i][j] *= s;
            }
        }
        out
    }

    pub fn commutator(&self, rhs: &Mat2) -> Mat2 {
        self.mul(rhs).sub(&rhs.mul(self))
    }

    /// Max absolute entry of the difference, as a matrix distance.
    pub fn max_abs_diff(&self, rhs: &Mat2) -> f64 {
        let mut m: f64 = 0.0;
        for i in 0..2 {
            for j in 0..2 {
                m = m.max((self.0[i][j] - rhs.0[i][j]).norm());
            }
        }
        m
    }
}

/// Validates the quaternion ↔ matrix convention:
///
/// * the three basis quaternions map to the defining matrices of su(2),
/// * all nine basis brackets agree with matrix commutators exactly,
/// * `exp(s·x3)` is `diag(e^{is}, e^{-is})`,
/// * quaternion products agree with matrix products.
///
/// Cheap; run once at program start.
pub fn self_check() -> Result<()> {
    let i = Complex64::new(0.0, 1.0);
    let one = Complex64::new(1.0, 0.0);
    let zero = Complex64::new(0.0, 0.0);
    let x1 = Mat2([[zero, one], [-one, zero]]);
    let x2 = Mat2([[zero, i], [i, zero]]);
    let x3 = Mat2([[i, zero], [zero, -i]]);
    let basis_mats = [x1, x2, x3];

    for (idx, expected) in basis_mats.iter().enumerate() {
        let got = AlgebraVector::basis(idx).to_matrix();
        if got.max_abs_diff(expected) != 0.0 {
            return Err(Error::SelfCheck(format!(
                "basis element x{} does not map to its defining matrix",
                idx + 1
            )));
        }
    }

    for a in 0..3 {
        for b in 0..3 {
            let va = AlgebraVector::basis(a);
            let vb = AlgebraVector::basis(b);
            let lie = va.bracket(&vb).to_matrix();
            let comm = basis_mats[a].commutator(&basis_mats[b]);
            if lie.max_abs_diff(&comm) != 0.0 {
                return Err(Error::SelfCheck(format!(
                    "bracket [x{},x{}] disagrees with the matrix commutator",
                    a + 1,
                    b + 1
                )));
            }
        }
    }

    for s in [0.0, 0.3, 1.7, -2.4] {
        let got = alg_exp(&AlgebraVector::basis(2).scale(s)).to_matrix();
        let want = Mat2([
            [Complex64::from_polar(1.0, s), zero],
            [zero, Complex64::from_polar(1.0, -s)],
        ]);
        if got.max_abs_diff(&want) > UNIT_NORM_TOL {
            return Err(Error::SelfCheck(format!(
                "exp({s}·x3) is not diag(e^{{is}}, e^{{-is}})"
            )));
        }
    }

    let g = alg_exp(&AlgebraVector::new(0.4, -0.9, 0.2));
    let h = alg_exp(&AlgebraVector::new(-1.1, 0.3, 0.8));
    let lhs = g.mul(&h).to_matrix();
    let rhs = g.to_matrix().mul(&h.to_matrix());
    if lhs.max_abs_diff(&rhs) > UNIT_NORM_TOL {
        return Err(Error::SelfCheck(
            "quaternion product disagrees with matrix product".into(),
        ));
    }

    Ok(())
}
