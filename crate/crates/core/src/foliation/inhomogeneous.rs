use num_traits::Zero;

use super::mean_curvature::d_omega_invariant;
use super::metric_check::totally_geodesic_residuals_invariant;
use crate::error::{Error, Result};
use crate::fields::FrameField;
use crate::milnor::{christoffel, nabla_invariant, ChristoffelTable, FrameVec, MilnorTriple};
use crate::scalar::{Rational, SqrtCtx, SqrtPair};

/// The explicit left-invariant metric foliation carried by every metric with
/// three distinct structure constants `x > y > z > 0`: the orbit foliation
/// of `V = v2·E2 + v3·E3` with
///
/// ```text
/// v2 = √((y − z)/(x − z))        v3 = √((x − y)/(x − z))
/// ```
///
/// so `v2² + v3² = 1` and `v2²(x − y) = v3²(y − z)`. Its orthogonal
/// distribution is totally geodesic, but its mean curvature form is not
/// closed, so the foliation is not homogeneous. All of this is verified
/// exactly in the ring `Q(v2, v3)`.
#[derive(Debug, Clone)]
pub struct InhomogeneousFoliation {
    triple: MilnorTriple<Rational>,
    ctx: SqrtCtx,
}

impl InhomogeneousFoliation {
    /// Requires strictly ordered positive constants `x > y > z > 0`;
    /// canonicalize first if needed.
    pub fn new(m: MilnorTriple<Rational>) -> Result<Self> {
        if !(m.x > m.y && m.y > m.z) {
            return Err(Error::invalid(
                "the construction needs strictly ordered constants x > y > z > 0",
            ));
        }
        let span = m.x.clone() - m.z.clone();
        let p = (m.y.clone() - m.z.clone()) / span.clone(); // v2²
        let q = (m.x.clone() - m.y.clone()) / span; // v3²
        let ctx = SqrtCtx::new(p, q)?;
        Ok(InhomogeneousFoliation { triple: m, ctx })
    }

    pub fn triple(&self) -> &MilnorTriple<Rational> {
        &self.triple
    }

    pub fn v2_squared(&self) -> &Rational {
        &self.ctx.p
    }

    pub fn v3_squared(&self) -> &Rational {
        &self.ctx.q
    }

    pub fn v2(&self) -> f64 {
        use crate::scalar::Scalar;
        self.ctx.p.to_f64_lossy().sqrt()
    }

    pub fn v3(&self) -> f64 {
        use crate::scalar::Scalar;
        self.ctx.q.to_f64_lossy().sqrt()
    }

    /// `v2²(x−y) − v3²(y−z)`; identically zero by construction.
    pub fn key_identity_residual(&self) -> Rational {
        let m = &self.triple;
        self.ctx.p.clone() * (m.x.clone() - m.y.clone())
            - self.ctx.q.clone() * (m.y.clone() - m.z.clone())
    }

    /// The field `V = v2·E2 + v3·E3` in the exact layer.
    pub fn field_exact(&self) -> FrameVec<SqrtPair> {
        FrameVec::new(
            SqrtPair::zero(),
            SqrtPair::sqrt_p(&self.ctx),
            SqrtPair::sqrt_q(&self.ctx),
        )
    }

    /// Exact orthonormal completion `(W, U)` with `U = E1`,
    /// `W = −v3·E2 + v2·E3`.
    pub fn completion_exact(&self) -> (FrameVec<SqrtPair>, FrameVec<SqrtPair>) {
        let w = FrameVec::new(
            SqrtPair::zero(),
            -SqrtPair::sqrt_q(&self.ctx),
            SqrtPair::sqrt_p(&self.ctx),
        );
        let u = FrameVec::basis(0);
        (w, u)
    }

    pub fn table_exact(&self) -> ChristoffelTable<SqrtPair> {
        christoffel(&self.triple).map(|g| SqrtPair::from_rational(g.clone()))
    }

    /// Exact totally-geodesic residuals of `V^⊥` (all zero).
    pub fn residuals_exact(&self) -> [SqrtPair; 3] {
        let table = self.table_exact();
        let v = self.field_exact();
        let (w, u) = self.completion_exact();
        totally_geodesic_residuals_invariant(&table, &v, &w, &u)
    }

    /// Exact mean curvature `∇_V V = 2 v2 v3 (x − z)·E1`.
    pub fn mean_curvature_exact(&self) -> FrameVec<SqrtPair> {
        let table = self.table_exact();
        let v = self.field_exact();
        nabla_invariant(&table, &v, &v)
    }

    /// Exact `dω(E_i, E_j)`; the `(2, 3)` pair is `−4 v2 v3 y (x − z)`,
    /// nonzero, which is the obstruction to homogeneity.
    pub fn d_omega_exact(&self, i: usize, j: usize) -> SqrtPair {
        let m = self.triple.map(|r| SqrtPair::from_rational(r.clone()));
        d_omega_invariant(&m, &self.mean_curvature_exact(), i, j)
    }

    /// Floating-point view of the field.
    pub fn frame_field(&self) -> FrameField {
        FrameField::left_invariant(0.0, self.v2(), self.v3())
    }
}

/// Floating-point construction straight from an ordered `f64` triple.
pub fn build_inhomogeneous_foliation(m: &MilnorTriple<f64>) -> Result<FrameField> {
    if !(m.x > m.y && m.y > m.z && m.z > 0.0) {
        return Err(Error::invalid(
            "the construction needs strictly ordered constants x > y > z > 0",
        ));
    }
    let v2 = ((m.y - m.z) / (m.x - m.z)).sqrt();
    let v3 = ((m.x - m.y) / (m.x - m.z)).sqrt();
    Ok(FrameField::left_invariant(0.0, v2, v3))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    fn example() -> InhomogeneousFoliation {
        let m = MilnorTriple::new_rational(rat(3, 1), rat(2, 1), rat(1, 1)).unwrap();
        InhomogeneousFoliation::new(m).unwrap()
    }

    #[test]
    fn ordered_triple_is_required() {
        let m = MilnorTriple::new_rational(rat(1, 1), rat(2, 1), rat(3, 1)).unwrap();
        assert!(InhomogeneousFoliation::new(m).is_err());
        // Degenerate y = z is the boundary of the construction (v2 → 0).
        let m = MilnorTriple::new_rational(rat(3, 1), rat(1, 1), rat(1, 1)).unwrap();
        assert!(InhomogeneousFoliation::new(m).is_err());
    }

    #[test]
    fn example_coefficients() {
        let f = example();
        assert_eq!(*f.v2_squared(), rat(1, 2));
        assert_eq!(*f.v3_squared(), rat(1, 2));
        assert!((f.v2() - 0.5f64.sqrt()).abs() < 1e-15);
        assert!(f.key_identity_residual().is_zero());
    }

    #[test]
    fn residuals_vanish_exactly() {
        let f = example();
        for r in f.residuals_exact() {
            assert!(r.is_zero(), "residual {r}");
        }
    }

    #[test]
    fn mean_curvature_and_d_omega_exact_values() {
        let f = example();
        let omega = f.mean_curvature_exact();
        // ω = 2 v2 v3 (x − z) E1-dual: with x − z = 2 the coefficient of
        // √(pq) is 4.
        let expected = SqrtPair::sqrt_p(&f.ctx) * SqrtPair::sqrt_q(&f.ctx)
            * SqrtPair::from_rational(rat(4, 1));
        assert_eq!(omega.c[0], expected);
        assert!(omega.c[1].is_zero() && omega.c[2].is_zero());

        // dω(E2, E3) = −4 v2 v3 y (x − z) = −16·v2·v3 here.
        let d = f.d_omega_exact(1, 2);
        let expected = SqrtPair::sqrt_p(&f.ctx) * SqrtPair::sqrt_q(&f.ctx)
            * SqrtPair::from_rational(rat(-16, 1));
        assert_eq!(d, expected);
        assert!(!d.is_zero());
        // Numerically v2 v3 = 1/2, so the witness value is −8.
        assert!((d.to_f64() + 8.0).abs() < 1e-12);
    }

    #[test]
    fn float_builder_matches_exact_layer() {
        let f = example();
        let field = build_inhomogeneous_foliation(&MilnorTriple::new(3.0, 2.0, 1.0).unwrap())
            .unwrap();
        let c = field.eval(&crate::group::GroupPoint::IDENTITY);
        assert!((c.c[1] - f.v2()).abs() < 1e-15);
        assert!((c.c[2] - f.v3()).abs() < 1e-15);
    }
}
