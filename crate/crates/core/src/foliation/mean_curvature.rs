use serde::Serialize;

use crate::error::Result;
use crate::fields::{lie_bracket, nabla, scalar_derivative, FrameField, OneFormField};
use crate::group::{FdConfig, GroupPoint};
use crate::milnor::{ChristoffelTable, FrameVec, MilnorTriple};
use crate::scalar::Scalar;

/// Mean curvature one-form of the foliation tangent to the unit field `V`:
/// `ω(·) = ⟨∇_V V, ·⟩`. Independent of the orientation `V → −V`.
///
/// Constant (and exact) when `V` is left-invariant; otherwise an evaluator
/// backed by finite differences.
pub fn mean_curvature(
    m: &MilnorTriple<f64>,
    table: &ChristoffelTable<f64>,
    v: &FrameField,
    fd: &FdConfig,
) -> OneFormField {
    if let FrameField::LeftInvariant(c) = v {
        return OneFormField::Constant(crate::milnor::nabla_invariant(table, c, c));
    }
    let (m, table, v, fd) = (m.clone(), table.clone(), v.clone(), *fd);
    OneFormField::general(move |g: &GroupPoint| {
        nabla(&m, &table, &v, &v, g, &fd)
            .unwrap_or_else(|_| FrameVec::new(f64::NAN, f64::NAN, f64::NAN))
    })
}

/// Exterior derivative by the Cartan formula:
/// `dω(X, Y) = X(ω(Y)) − Y(ω(X)) − ω([X, Y])`.
///
/// When `ω`, `X`, `Y` are all constant the derivative terms vanish and the
/// result `−ω([X,Y])` is exact.
pub fn exterior_derivative(
    m: &MilnorTriple<f64>,
    omega: &OneFormField,
    x: &FrameField,
    y: &FrameField,
    g: &GroupPoint,
    fd: &FdConfig,
) -> Result<f64> {
    let bracket = lie_bracket(m, x, y, g, fd)?;
    let algebraic = -omega.apply(&bracket, g);
    if omega.is_constant() && x.is_left_invariant() && y.is_left_invariant() {
        return Ok(algebraic);
    }
    let pairing = |a: &OneFormField, b: &FrameField| {
        let (a, b) = (a.clone(), b.clone());
        move |p: &GroupPoint| a.eval(p).dot(&b.eval(p))
    };
    let x_of_wy = scalar_derivative(m, pairing(omega, y), g, &x.eval_checked(g)?, fd)?;
    let y_of_wx = scalar_derivative(m, pairing(omega, x), g, &y.eval_checked(g)?, fd)?;
    Ok(x_of_wy - y_of_wx + algebraic)
}

/// Exact exterior derivative on left-invariant data: `−ω([E_i, E_j])`.
pub fn d_omega_invariant<S: Scalar>(
    m: &MilnorTriple<S>,
    omega: &FrameVec<S>,
    i: usize,
    j: usize,
) -> S {
    let bracket = FrameVec::<S>::basis(i).frame_bracket(&FrameVec::basis(j), m);
    -bracket.dot(omega)
}

/// Result of scanning `dω` over frame pairs and sample points.
#[derive(Debug, Clone, Serialize)]
pub struct ClosednessScan {
    /// `(dω(E2,E3), dω(E3,E1), dω(E1,E2))` at each sample.
    pub d_omega: Vec<[f64; 3]>,
    pub max_abs: f64,
    /// Frame pair and point achieving the maximum.
    pub witness_pair: (usize, usize),
    pub witness_point: GroupPoint,
    pub witness_value: f64,
}

const FRAME_PAIRS: [(usize, usize); 3] = [(1, 2), (2, 0), (0, 1)];

/// Evaluates `dω` on all frame pairs at every sample.
pub fn closedness_scan(
    m: &MilnorTriple<f64>,
    omega: &OneFormField,
    samples: &[GroupPoint],
    fd: &FdConfig,
) -> Result<ClosednessScan> {
    assert!(!samples.is_empty(), "closedness scan needs samples");
    let mut d_omega = Vec::with_capacity(samples.len());
    let mut max_abs: f64 = 0.0;
    let mut witness_pair = FRAME_PAIRS[0];
    let mut witness_point = samples[0];
    let mut witness_value = 0.0;
    for g in samples {
        let mut row = [0.0; 3];
        for (slot, &(i, j)) in FRAME_PAIRS.iter().enumerate() {
            let v = exterior_derivative(
                m,
                omega,
                &FrameField::basis(i),
                &FrameField::basis(j),
                g,
                fd,
            )?;
            row[slot] = v;
            if v.abs() > max_abs {
                max_abs = v.abs();
                witness_pair = (i, j);
                witness_point = *g;
                witness_value = v;
            }
        }
        d_omega.push(row);
    }
    Ok(ClosednessScan {
        d_omega,
        max_abs,
        witness_pair,
        witness_point,
        witness_value,
    })
}
