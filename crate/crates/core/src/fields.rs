//! Vector fields and one-forms on SU(2), expressed against the orthonormal
//! Milnor frame of a metric, together with the covariant calculus on them.
//!
//! Left-invariant fields have constant frame coefficients and all their
//! derivatives are exact; general fields are user-supplied evaluators and
//! their derivative terms come from central differences along the frame
//! directions. A field evaluator signals an invalid point by returning
//! non-finite coefficients, which every operation here detects and reports.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::group::{self, AlgebraVector, FdConfig, GroupPoint};
use crate::milnor::{frame_generators, nabla_invariant, ChristoffelTable, FrameVec, MilnorTriple};
use crate::scalar::Scalar;

type Evaluator = Arc<dyn Fn(&GroupPoint) -> FrameVec<f64> + Send + Sync>;

/// A vector field given by its coefficients against the orthonormal frame.
#[derive(Clone)]
pub enum FrameField {
    /// Constant coefficients: a left-invariant field.
    LeftInvariant(FrameVec<f64>),
    /// Arbitrary smooth field; smoothness is the caller's responsibility.
    General(Evaluator),
}

impl FrameField {
    pub fn left_invariant(c1: f64, c2: f64, c3: f64) -> Self {
        FrameField::LeftInvariant(FrameVec::new(c1, c2, c3))
    }

    pub fn basis(i: usize) -> Self {
        FrameField::LeftInvariant(FrameVec::basis(i))
    }

    pub fn general(f: impl Fn(&GroupPoint) -> FrameVec<f64> + Send + Sync + 'static) -> Self {
        FrameField::General(Arc::new(f))
    }

    pub fn is_left_invariant(&self) -> bool {
        matches!(self, FrameField::LeftInvariant(_))
    }

    pub fn eval(&self, g: &GroupPoint) -> FrameVec<f64> {
        match self {
            FrameField::LeftInvariant(c) => c.clone(),
            FrameField::General(f) => f(g),
        }
    }

    pub fn eval_checked(&self, g: &GroupPoint) -> Result<FrameVec<f64>> {
        let v = self.eval(g);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::NonFinite("frame field evaluation"))
        }
    }

    /// Pointwise negation, preserving left-invariance.
    pub fn negated(&self) -> Self {
        match self {
            FrameField::LeftInvariant(c) => FrameField::LeftInvariant(c.neg()),
            FrameField::General(f) => {
                let f = f.clone();
                FrameField::general(move |g| f(g).neg())
            }
        }
    }
}

impl fmt::Debug for FrameField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FrameField::LeftInvariant(c) => write!(f, "FrameField::LeftInvariant({:?})", c.c),
            FrameField::General(_) => write!(f, "FrameField::General(..)"),
        }
    }
}

/// A one-form given by its coefficients against the orthonormal frame (the
/// metric dual of a vector field).
#[derive(Clone)]
pub enum OneFormField {
    Constant(FrameVec<f64>),
    General(Evaluator),
}

impl OneFormField {
    pub fn general(f: impl Fn(&GroupPoint) -> FrameVec<f64> + Send + Sync + 'static) -> Self {
        OneFormField::General(Arc::new(f))
    }

    pub fn is_constant(&self) -> bool {
        matches!(self, OneFormField::Constant(_))
    }

    pub fn eval(&self, g: &GroupPoint) -> FrameVec<f64> {
        match self {
            OneFormField::Constant(c) => c.clone(),
            OneFormField::General(f) => f(g),
        }
    }

    /// Pairing `ω(X)` at a point.
    pub fn apply(&self, x: &FrameVec<f64>, g: &GroupPoint) -> f64 {
        self.eval(g).dot(x)
    }
}

impl fmt::Debug for OneFormField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OneFormField::Constant(c) => write!(f, "OneFormField::Constant({:?})", c.c),
            OneFormField::General(_) => write!(f, "OneFormField::General(..)"),
        }
    }
}

/// Directional derivative of a scalar field along a tangent vector given in
/// frame coefficients (frozen at `g`).
pub fn scalar_derivative<F>(
    m: &MilnorTriple<f64>,
    f: F,
    g: &GroupPoint,
    dir: &FrameVec<f64>,
    fd: &FdConfig,
) -> Result<f64>
where
    F: Fn(&GroupPoint) -> f64,
{
    group::directional_derivative(f, g, &dir.to_body(m), fd)
}

/// Directional derivative of a circle-valued scalar field (angle mod 2π).
pub fn angle_derivative<F>(
    m: &MilnorTriple<f64>,
    f: F,
    g: &GroupPoint,
    dir: &FrameVec<f64>,
    fd: &FdConfig,
) -> Result<f64>
where
    F: Fn(&GroupPoint) -> f64,
{
    group::directional_derivative_angle(f, g, &dir.to_body(m), fd)
}

/// Derivative of a scalar field along the `i`-th orthonormal frame direction
/// of the metric `m`.
pub fn frame_derivative<F>(
    m: &MilnorTriple<f64>,
    f: F,
    g: &GroupPoint,
    i: usize,
    fd: &FdConfig,
) -> Result<f64>
where
    F: Fn(&GroupPoint) -> f64,
{
    assert!(i < 3, "frame index out of range");
    group::directional_derivative(f, g, &frame_generators(m)[i], fd)
}

/// Componentwise central difference of a field's coefficients along an su(2)
/// generator.
fn coefficient_derivative_body(
    field: &FrameField,
    g: &GroupPoint,
    dir: &AlgebraVector,
    fd: &FdConfig,
) -> Result<FrameVec<f64>> {
    let central = |h: f64| -> Result<FrameVec<f64>> {
        let plus = field.eval_checked(&g.mul(&group::alg_exp(&dir.scale(h))))?;
        let minus = field.eval_checked(&g.mul(&group::alg_exp(&dir.scale(-h))))?;
        Ok(plus.sub(&minus).scale(&(1.0 / (2.0 * h))))
    };
    let d_h = central(fd.step)?;
    if !fd.richardson {
        return Ok(d_h);
    }
    let d_h2 = central(fd.step / 2.0)?;
    Ok(d_h2.scale(&(4.0 / 3.0)).sub(&d_h.scale(&(1.0 / 3.0))))
}

/// Derivative of a field's coefficients along a direction in frame
/// coefficients: `(A(b1), A(b2), A(b3))` with `A` frozen at `g`.
pub fn coefficient_derivative(
    m: &MilnorTriple<f64>,
    field: &FrameField,
    g: &GroupPoint,
    dir: &FrameVec<f64>,
    fd: &FdConfig,
) -> Result<FrameVec<f64>> {
    if field.is_left_invariant() {
        return Ok(FrameVec::zero());
    }
    coefficient_derivative_body(field, g, &dir.to_body(m), fd)
}

/// Covariant derivative `∇_A B` at `g`:
/// `(∇_A B)_k = A(b_k) + Σ_ij a_i b_j Γ_ij^k`.
///
/// Exact (no finite differences) when `B` is left-invariant.
pub fn nabla(
    m: &MilnorTriple<f64>,
    table: &ChristoffelTable<f64>,
    a: &FrameField,
    b: &FrameField,
    g: &GroupPoint,
    fd: &FdConfig,
) -> Result<FrameVec<f64>> {
    let av = a.eval_checked(g)?;
    let bv = b.eval_checked(g)?;
    let algebraic = nabla_invariant(table, &av, &bv);
    if b.is_left_invariant() {
        return Ok(algebraic);
    }
    let derivative = coefficient_derivative(m, b, g, &av, fd)?;
    Ok(algebraic.add(&derivative))
}

/// Lie bracket of two frame fields at `g`:
/// `[X,Y]_k = X(y_k) − Y(x_k) + (algebraic frame bracket of the values)`.
///
/// Exact when both fields are left-invariant.
pub fn lie_bracket(
    m: &MilnorTriple<f64>,
    x: &FrameField,
    y: &FrameField,
    g: &GroupPoint,
    fd: &FdConfig,
) -> Result<FrameVec<f64>> {
    let xv = x.eval_checked(g)?;
    let yv = y.eval_checked(g)?;
    let mut out = xv.frame_bracket(&yv, m);
    if !y.is_left_invariant() {
        out = out.add(&coefficient_derivative(m, y, g, &xv, fd)?);
    }
    if !x.is_left_invariant() {
        out = out.sub(&coefficient_derivative(m, x, g, &yv, fd)?);
    }
    Ok(out)
}

/// Symmetrized covariant derivative
/// `K_ij = ⟨∇_{E_i} X, E_j⟩ + ⟨∇_{E_j} X, E_i⟩` at `g`; `X` is Killing iff
/// this vanishes everywhere.
pub fn killing_residual(
    m: &MilnorTriple<f64>,
    table: &ChristoffelTable<f64>,
    x: &FrameField,
    g: &GroupPoint,
    fd: &FdConfig,
) -> Result<[[f64; 3]; 3]> {
    let xv = x.eval_checked(g)?;
    let mut jac = [[0.0; 3]; 3];
    if !x.is_left_invariant() {
        let gens = frame_generators(m);
        for (i, gen) in gens.iter().enumerate() {
            let d = coefficient_derivative_body(x, g, gen, fd)?;
            jac[i] = d.c;
        }
    }
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let mut conn = 0.0;
            for k in 0..3 {
                conn += xv.c[k] * (table.get(i, k, j) + table.get(j, k, i));
            }
            out[i][j] = jac[i][j] + jac[j][i] + conn;
        }
    }
    Ok(out)
}

/// Exact Killing residual of a left-invariant field.
pub fn killing_residual_invariant<S: Scalar>(
    table: &ChristoffelTable<S>,
    x: &FrameVec<S>,
) -> [[S; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut acc = S::zero();
            for k in 0..3 {
                acc = acc
                    + x.c[k].clone()
                        * (table.get(i, k, j).clone() + table.get(j, k, i).clone());
            }
            acc
        })
    })
}

pub fn max_abs_3x3(m: &[[f64; 3]; 3]) -> f64 {
    m.iter()
        .flat_map(|row| row.iter())
        .fold(0.0f64, |acc, v| acc.max(v.abs()))
}

/// The right-invariant field with value `v` at the identity, in frame
/// coefficients: `X(g) = Ad(g⁻¹) v`. Its flow is left translation, an
/// isometry of every left-invariant metric, so it is Killing.
pub fn right_invariant_field(v: AlgebraVector, m: &MilnorTriple<f64>) -> FrameField {
    let m = m.clone();
    FrameField::general(move |g: &GroupPoint| FrameVec::from_body(&g.inv().adjoint(&v), &m))
}
