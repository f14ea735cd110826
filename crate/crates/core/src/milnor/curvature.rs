use super::christoffel::{nabla_invariant, ChristoffelTable};
use super::frame::{FrameVec, MilnorTriple};
use crate::scalar::Scalar;

/// Sectional curvature `K(E_i, E_j) = ⟨R(E_i, E_j)E_j, E_i⟩` of a frame
/// plane, with `R(A,B)C = ∇_A ∇_B C − ∇_B ∇_A C − ∇_{[A,B]} C`.
///
/// Everything is left-invariant, so the curvature reduces to compositions of
/// the constant connection table with the frame brackets; exact in the
/// rational layer. The sign convention makes the round metric `(1,1,1)` have
/// curvature `+1`.
pub fn sectional_curvature<S: Scalar>(
    table: &ChristoffelTable<S>,
    m: &MilnorTriple<S>,
    i: usize,
    j: usize,
) -> S {
    assert!(i < 3 && j < 3 && i != j, "need two distinct frame indices");
    let ei = FrameVec::<S>::basis(i);
    let ej = FrameVec::<S>::basis(j);
    let first = nabla_invariant(table, &ei, &nabla_invariant(table, &ej, &ej));
    let second = nabla_invariant(table, &ej, &nabla_invariant(table, &ei, &ej));
    let third = nabla_invariant(table, &ei.frame_bracket(&ej, m), &ej);
    first.sub(&second).sub(&third).dot(&ei)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::milnor::christoffel::christoffel;
    use crate::scalar::{rat, Rational};

    #[test]
    fn round_metric_has_curvature_one() {
        let m = MilnorTriple::<Rational>::round();
        let t = christoffel(&m);
        for (i, j) in [(0, 1), (1, 2), (2, 0), (1, 0), (2, 1), (0, 2)] {
            assert_eq!(sectional_curvature(&t, &m, i, j), rat(1, 1));
        }
    }

    #[test]
    fn homothety_scales_curvature_quadratically() {
        // Scaling the constants by c scales the metric by 1/c² and hence
        // every sectional curvature by c².
        let m = MilnorTriple::new_rational(rat(5, 2), rat(1, 3), rat(7, 4)).unwrap();
        let c = rat(3, 5);
        let scaled = m.map(|v| v * c.clone());
        let t = christoffel(&m);
        let ts = christoffel(&scaled);
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            let k = sectional_curvature(&t, &m, i, j);
            let ks = sectional_curvature(&ts, &scaled, i, j);
            assert_eq!(ks, k * c.clone() * c.clone());
        }
    }

    #[test]
    fn plane_symmetry() {
        let m = MilnorTriple::new_rational(rat(2, 1), rat(3, 1), rat(5, 1)).unwrap();
        let t = christoffel(&m);
        for (i, j) in [(0, 1), (1, 2), (2, 0)] {
            assert_eq!(
                sectional_curvature(&t, &m, i, j),
                sectional_curvature(&t, &m, j, i)
            );
        }
    }
}
