use num_traits::{One, Signed};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::AlgebraVector;
use crate::scalar::{Rational, Scalar};

/// Structure constants `(x, y, z)` of a left-invariant metric in its Milnor
/// frame. All three are positive.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MilnorTriple<S> {
    pub x: S,
    pub y: S,
    pub z: S,
}

impl<S: Scalar> MilnorTriple<S> {
    /// Builds a triple without positivity validation; prefer the checked
    /// constructors on `f64` and `Rational`.
    pub fn new_unchecked(x: S, y: S, z: S) -> Self {
        MilnorTriple { x, y, z }
    }

    /// The round metric `(1, 1, 1)`, i.e. the unit three-sphere. In this
    /// frame the structure constants coincide with those of the su(2) basis.
    pub fn round() -> Self {
        MilnorTriple {
            x: S::one(),
            y: S::one(),
            z: S::one(),
        }
    }

    pub fn as_array(&self) -> [S; 3] {
        [self.x.clone(), self.y.clone(), self.z.clone()]
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MilnorTriple<T> {
        MilnorTriple {
            x: f(&self.x),
            y: f(&self.y),
            z: f(&self.z),
        }
    }
}

impl MilnorTriple<f64> {
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        for v in [x, y, z] {
            if !(v > 0.0) || !v.is_finite() {
                return Err(Error::invalid(format!(
                    "structure constants must be positive, got ({x}, {y}, {z})"
                )));
            }
        }
        Ok(MilnorTriple { x, y, z })
    }

    /// The Berger metric `(1, 1/ε, 1/ε)` in its orthonormal `Y` frame.
    pub fn berger(eps: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::invalid(format!("Berger parameter eps = {eps}")));
        }
        Ok(MilnorTriple {
            x: 1.0,
            y: 1.0 / eps,
            z: 1.0 / eps,
        })
    }

    /// Constants sorted descending, the canonical representative of the
    /// permutation orbit.
    pub fn canonicalized(&self) -> Self {
        let mut v = [self.x, self.y, self.z];
        v.sort_by(|a, b| b.partial_cmp(a).unwrap());
        MilnorTriple {
            x: v[0],
            y: v[1],
            z: v[2],
        }
    }
}

impl MilnorTriple<Rational> {
    pub fn new_rational(x: Rational, y: Rational, z: Rational) -> Result<Self> {
        for v in [&x, &y, &z] {
            if !v.is_positive() {
                return Err(Error::invalid("structure constants must be positive"));
            }
        }
        Ok(MilnorTriple { x, y, z })
    }

    pub fn berger_rational(eps: &Rational) -> Result<Self> {
        if !eps.is_positive() {
            return Err(Error::invalid("Berger parameter must be positive"));
        }
        let inv = eps.recip();
        Ok(MilnorTriple {
            x: Rational::one(),
            y: inv.clone(),
            z: inv,
        })
    }

    pub fn canonicalized(&self) -> Self {
        let mut v = [self.x.clone(), self.y.clone(), self.z.clone()];
        v.sort_by(|a, b| b.cmp(a));
        let [x, y, z] = v;
        MilnorTriple { x, y, z }
    }

    pub fn to_f64(&self) -> MilnorTriple<f64> {
        self.map(|v| v.to_f64_lossy())
    }
}

/// Coefficients of a tangent vector against the orthonormal Milnor frame
/// `E1, E2, E3`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct FrameVec<S> {
    pub c: [S; 3],
}

impl<S: Scalar> FrameVec<S> {
    pub fn new(c1: S, c2: S, c3: S) -> Self {
        FrameVec { c: [c1, c2, c3] }
    }

    pub fn zero() -> Self {
        FrameVec {
            c: [S::zero(), S::zero(), S::zero()],
        }
    }

    pub fn basis(i: usize) -> Self {
        let mut v = Self::zero();
        v.c[i] = S::one();
        v
    }

    pub fn add(&self, other: &Self) -> Self {
        FrameVec {
            c: [
                self.c[0].clone() + other.c[0].clone(),
                self.c[1].clone() + other.c[1].clone(),
                self.c[2].clone() + other.c[2].clone(),
            ],
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        FrameVec {
            c: [
                self.c[0].clone() - other.c[0].clone(),
                self.c[1].clone() - other.c[1].clone(),
                self.c[2].clone() - other.c[2].clone(),
            ],
        }
    }

    pub fn neg(&self) -> Self {
        FrameVec {
            c: [
                -self.c[0].clone(),
                -self.c[1].clone(),
                -self.c[2].clone(),
            ],
        }
    }

    pub fn scale(&self, s: &S) -> Self {
        FrameVec {
            c: [
                self.c[0].clone() * s.clone(),
                self.c[1].clone() * s.clone(),
                self.c[2].clone() * s.clone(),
            ],
        }
    }

    /// Inner product; the frame is orthonormal, so this is the metric.
    pub fn dot(&self, other: &Self) -> S {
        self.c[0].clone() * other.c[0].clone()
            + self.c[1].clone() * other.c[1].clone()
            + self.c[2].clone() * other.c[2].clone()
    }

    /// Lie bracket of the corresponding left-invariant fields, expressed in
    /// the frame: `[E1,E2] = 2x·E3` and cyclic.
    pub fn frame_bracket(&self, other: &Self, m: &MilnorTriple<S>) -> Self {
        let two = S::one() + S::one();
        let a = &self.c;
        let b = &other.c;
        FrameVec {
            c: [
                two.clone() * m.y.clone() * (a[1].clone() * b[2].clone() - a[2].clone() * b[1].clone()),
                two.clone() * m.z.clone() * (a[2].clone() * b[0].clone() - a[0].clone() * b[2].clone()),
                two * m.x.clone() * (a[0].clone() * b[1].clone() - a[1].clone() * b[0].clone()),
            ],
        }
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> FrameVec<T> {
        FrameVec {
            c: [f(&self.c[0]), f(&self.c[1]), f(&self.c[2])],
        }
    }

    pub fn to_f64_lossy(&self) -> FrameVec<f64> {
        self.map(|v| v.to_f64_lossy())
    }
}

impl FrameVec<f64> {
    pub fn norm(&self) -> f64 {
        self.dot(self).sqrt()
    }

    pub fn is_finite(&self) -> bool {
        self.c.iter().all(|v| v.is_finite())
    }

    pub fn normalized(&self) -> Result<Self> {
        let n = self.norm();
        if !n.is_finite() || n < 1e-12 {
            return Err(Error::invalid("cannot normalize a (near-)zero vector"));
        }
        Ok(self.scale(&(1.0 / n)))
    }

    /// Coefficient cross product; for orthonormal `a`, `b` this completes
    /// them to an orthonormal triple.
    pub fn cross(&self, other: &Self) -> Self {
        FrameVec::new(
            self.c[1] * other.c[2] - self.c[2] * other.c[1],
            self.c[2] * other.c[0] - self.c[0] * other.c[2],
            self.c[0] * other.c[1] - self.c[1] * other.c[0],
        )
    }

    /// The su(2) generator of the left-invariant field with these frame
    /// coefficients: `Σ c_i λ_i x_i`.
    pub fn to_body(&self, m: &MilnorTriple<f64>) -> AlgebraVector {
        let [l1, l2, l3] = frame_scales(m);
        AlgebraVector::new(self.c[0] * l1, self.c[1] * l2, self.c[2] * l3)
    }

    /// Frame coefficients of an su(2) vector: inverse of [`Self::to_body`].
    pub fn from_body(v: &AlgebraVector, m: &MilnorTriple<f64>) -> Self {
        let [l1, l2, l3] = frame_scales(m);
        FrameVec::new(v.a1 / l1, v.a2 / l2, v.a3 / l3)
    }
}

/// Scales `λ_i` of the frame realization `E_i = λ_i X_i`.
pub(crate) fn frame_scales(m: &MilnorTriple<f64>) -> [f64; 3] {
    [
        (m.z * m.x).sqrt(),
        (m.x * m.y).sqrt(),
        (m.y * m.z).sqrt(),
    ]
}

/// su(2) generators of the orthonormal frame fields.
pub fn frame_generators(m: &MilnorTriple<f64>) -> [AlgebraVector; 3] {
    let [l1, l2, l3] = frame_scales(m);
    [
        AlgebraVector::new(l1, 0.0, 0.0),
        AlgebraVector::new(0.0, l2, 0.0),
        AlgebraVector::new(0.0, 0.0, l3),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use num_traits::Zero;

    #[test]
    fn berger_frame_matches_y_scaling() {
        // On the Berger metric (1, 1/ε, 1/ε) the frame is Y1 = ε^{-1/2} X1,
        // Y2 = ε^{-1/2} X2, Y3 = ε^{-1} X3.
        let eps = 0.4;
        let m = MilnorTriple::berger(eps).unwrap();
        let [l1, l2, l3] = frame_scales(&m);
        assert!((l1 - eps.powf(-0.5)).abs() < 1e-14);
        assert!((l2 - eps.powf(-0.5)).abs() < 1e-14);
        assert!((l3 - 1.0 / eps).abs() < 1e-14);
    }

    #[test]
    fn realized_frame_reproduces_structure_constants() {
        let m = MilnorTriple::new(1.7, 0.6, 2.3).unwrap();
        let gens = frame_generators(&m);
        // [E1, E2] should be 2x·E3, etc.
        let b12 = FrameVec::from_body(&gens[0].bracket(&gens[1]), &m);
        assert!((b12.c[2] - 2.0 * m.x).abs() < 1e-12 && b12.c[0].abs() < 1e-14);
        let b23 = FrameVec::from_body(&gens[1].bracket(&gens[2]), &m);
        assert!((b23.c[0] - 2.0 * m.y).abs() < 1e-12);
        let b31 = FrameVec::from_body(&gens[2].bracket(&gens[0]), &m);
        assert!((b31.c[1] - 2.0 * m.z).abs() < 1e-12);
    }

    #[test]
    fn frame_bracket_jacobi_identity_exact() {
        // Jacobi holds exactly in the rational layer for any structure
        // constants and any vector triple; (1,1,1) is the su(2) basis case.
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(19);
        let vec = |rng: &mut rand_chacha::ChaCha8Rng| {
            FrameVec::new(
                rat(rng.random_range(-9..9), rng.random_range(1..7)),
                rat(rng.random_range(-9..9), rng.random_range(1..7)),
                rat(rng.random_range(-9..9), rng.random_range(1..7)),
            )
        };
        for trial in 0..100 {
            let m = if trial % 2 == 0 {
                MilnorTriple::<Rational>::round()
            } else {
                MilnorTriple::new_rational(
                    rat(rng.random_range(1..20), rng.random_range(1..8)),
                    rat(rng.random_range(1..20), rng.random_range(1..8)),
                    rat(rng.random_range(1..20), rng.random_range(1..8)),
                )
                .unwrap()
            };
            let (a, b, c) = (vec(&mut rng), vec(&mut rng), vec(&mut rng));
            let jac = a
                .frame_bracket(&b.frame_bracket(&c, &m), &m)
                .add(&b.frame_bracket(&c.frame_bracket(&a, &m), &m))
                .add(&c.frame_bracket(&a.frame_bracket(&b, &m), &m));
            assert!(jac.c.iter().all(Zero::is_zero));
        }
    }

    #[test]
    fn positivity_is_enforced() {
        assert!(MilnorTriple::new(1.0, -2.0, 3.0).is_err());
        assert!(MilnorTriple::new(0.0, 2.0, 3.0).is_err());
        assert!(MilnorTriple::new_rational(rat(1, 2), rat(0, 1), rat(1, 3)).is_err());
    }
}
