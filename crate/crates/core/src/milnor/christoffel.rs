use serde::Serialize;

use super::frame::{FrameVec, MilnorTriple};
use crate::scalar::Scalar;

/// Christoffel symbols `Γ_ij^k = ⟨∇_{E_i} E_j, E_k⟩` of the orthonormal
/// Milnor frame. All 27 values are stored; in an orthonormal frame metric
/// compatibility makes the table antisymmetric in `(j, k)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChristoffelTable<S> {
    gamma: [[[S; 3]; 3]; 3],
}

impl<S: Scalar> ChristoffelTable<S> {
    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        &self.gamma[i][j][k]
    }

    /// Nonzero entries as `(i, j, k, value)`, for reports.
    pub fn nonzero(&self) -> Vec<(usize, usize, usize, S)> {
        let mut out = Vec::new();
        for i in 0..3 {
            for j in 0..3 {
                for k in 0..3 {
                    if !self.gamma[i][j][k].is_zero() {
                        out.push((i, j, k, self.gamma[i][j][k].clone()));
                    }
                }
            }
        }
        out
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> ChristoffelTable<T> {
        let build = |i: usize, j: usize, k: usize| f(&self.gamma[i][j][k]);
        ChristoffelTable {
            gamma: std::array::from_fn(|i| {
                std::array::from_fn(|j| std::array::from_fn(|k| build(i, j, k)))
            }),
        }
    }
}

/// Connection coefficients of the metric with structure constants
/// `(x, y, z)`:
///
/// ```text
/// Γ_12^3 = x + z − y = −Γ_13^2
/// Γ_23^1 = x + y − z = −Γ_21^3
/// Γ_31^2 = y + z − x = −Γ_32^1
/// ```
///
/// with every other entry zero. Exact in the rational layer.
pub fn christoffel<S: Scalar>(m: &MilnorTriple<S>) -> ChristoffelTable<S> {
    let z3 = || [S::zero(), S::zero(), S::zero()];
    let mut gamma = [[z3(), z3(), z3()], [z3(), z3(), z3()], [z3(), z3(), z3()]];
    let a = m.x.clone() + m.z.clone() - m.y.clone();
    let b = m.x.clone() + m.y.clone() - m.z.clone();
    let c = m.y.clone() + m.z.clone() - m.x.clone();
    gamma[0][1][2] = a.clone();
    gamma[0][2][1] = -a;
    gamma[1][2][0] = b.clone();
    gamma[1][0][2] = -b;
    gamma[2][0][1] = c.clone();
    gamma[2][1][0] = -c;
    ChristoffelTable { gamma }
}

/// Covariant derivative `∇_A B` for left-invariant (constant-coefficient)
/// fields: `(∇_A B)_k = Σ_ij a_i b_j Γ_ij^k`. Exact whenever the scalars are.
pub fn nabla_invariant<S: Scalar>(
    table: &ChristoffelTable<S>,
    a: &FrameVec<S>,
    b: &FrameVec<S>,
) -> FrameVec<S> {
    let mut out = FrameVec::zero();
    for k in 0..3 {
        let mut acc = S::zero();
        for i in 0..3 {
            for j in 0..3 {
                let g = &table.gamma[i][j][k];
                if g.is_zero() {
                    continue;
                }
                acc = acc + a.c[i].clone() * b.c[j].clone() * g.clone();
            }
        }
        out.c[k] = acc;
    }
    out
}
