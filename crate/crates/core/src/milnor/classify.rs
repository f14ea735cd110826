use std::ops::Div;

use serde::Serialize;

use super::frame::MilnorTriple;
use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

/// Isometry class of a left-invariant metric, determined by the permutation
/// orbit of its structure constants.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub enum IsometryClass<S> {
    /// All three constants equal: constant sectional curvature.
    RoundSphere,
    /// Exactly two constants equal: homothetic to a Berger sphere. The
    /// parameter is `distinct / repeated`, matching the `(1, 1/ε, 1/ε)`
    /// pattern of the Berger frame up to scale and permutation.
    BergerHomothety { eps: S },
    /// Three distinct constants: not naturally reductive.
    NonNaturallyReductive,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Classification<S> {
    pub class: IsometryClass<S>,
    /// Constants sorted descending: the canonical representative of the
    /// permutation orbit.
    pub canonical: MilnorTriple<S>,
}

/// Classifies the metric up to isometry. Invariant under permutations of the
/// constants; equality of constants is exact (use the rational layer for
/// authoritative answers).
pub fn classify<S>(m: &MilnorTriple<S>) -> Classification<S>
where
    S: Scalar + PartialOrd + Div<Output = S>,
{
    let mut v = m.as_array();
    v.sort_by(|a, b| b.partial_cmp(a).expect("structure constants must be comparable"));
    let [hi, mid, lo] = v;
    let canonical = MilnorTriple::new_unchecked(hi.clone(), mid.clone(), lo.clone());
    let class = if hi == mid && mid == lo {
        IsometryClass::RoundSphere
    } else if hi == mid {
        // (a, a, b) with b < a
        IsometryClass::BergerHomothety {
            eps: lo / hi,
        }
    } else if mid == lo {
        // (a, b, b) with a > b
        IsometryClass::BergerHomothety {
            eps: hi / mid,
        }
    } else {
        IsometryClass::NonNaturallyReductive
    };
    Classification { class, canonical }
}

/// The Berger parameter ε of the metric `h_ε` (Hopf circles scaled by ε²,
/// their orthogonal complement by ε). Requires ε > 0, ε ≠ 1.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct BergerParams {
    pub eps: f64,
}

impl BergerParams {
    pub fn new(eps: f64) -> Result<Self> {
        if !(eps > 0.0) || !eps.is_finite() {
            return Err(Error::invalid(format!("Berger parameter eps = {eps}")));
        }
        if eps == 1.0 {
            return Err(Error::invalid(
                "eps = 1 is the round metric, not a Berger sphere",
            ));
        }
        Ok(BergerParams { eps })
    }

    /// Structure constants `(1, 1/ε, 1/ε)` of the orthonormal `Y` frame.
    pub fn milnor_triple(&self) -> MilnorTriple<f64> {
        MilnorTriple::berger(self.eps).expect("eps validated on construction")
    }

    pub fn milnor_triple_rational(&self, eps: &Rational) -> Result<MilnorTriple<Rational>> {
        MilnorTriple::berger_rational(eps)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use proptest::prelude::*;

    #[test]
    fn round_sphere() {
        let c = classify(&MilnorTriple::new(1.0, 1.0, 1.0).unwrap());
        assert_eq!(c.class, IsometryClass::RoundSphere);
    }

    #[test]
    fn berger_ratio_is_distinct_over_repeated() {
        let c = classify(&MilnorTriple::new_rational(rat(2, 1), rat(3, 1), rat(3, 1)).unwrap());
        assert_eq!(
            c.class,
            IsometryClass::BergerHomothety { eps: rat(2, 3) }
        );
        // The squashed direction can also be the large one.
        let c = classify(&MilnorTriple::new_rational(rat(5, 1), rat(2, 1), rat(5, 1)).unwrap());
        assert_eq!(
            c.class,
            IsometryClass::BergerHomothety { eps: rat(2, 5) }
        );
        // The genuine Berger triple recovers its parameter.
        let eps = rat(7, 4);
        let c = classify(&MilnorTriple::berger_rational(&eps).unwrap());
        assert_eq!(c.class, IsometryClass::BergerHomothety { eps });
    }

    #[test]
    fn distinct_triple_and_permutations() {
        let perms = [
            (1.0, 2.0, 3.0),
            (1.0, 3.0, 2.0),
            (2.0, 1.0, 3.0),
            (2.0, 3.0, 1.0),
            (3.0, 1.0, 2.0),
            (3.0, 2.0, 1.0),
        ];
        for (x, y, z) in perms {
            let c = classify(&MilnorTriple::new(x, y, z).unwrap());
            assert_eq!(c.class, IsometryClass::NonNaturallyReductive);
            assert_eq!(c.canonical.as_array(), [3.0, 2.0, 1.0]);
        }
    }

    proptest! {
        #[test]
        fn classification_is_permutation_invariant(
            an in 1i64..20, ad in 1i64..8,
            bn in 1i64..20, bd in 1i64..8,
            cn in 1i64..20, cd in 1i64..8,
            perm in 0usize..6
        ) {
            let vals = [rat(an, ad), rat(bn, bd), rat(cn, cd)];
            let orders = [[0,1,2],[0,2,1],[1,0,2],[1,2,0],[2,0,1],[2,1,0]];
            let p = orders[perm];
            let base = classify(&MilnorTriple::new_rational(
                vals[0].clone(), vals[1].clone(), vals[2].clone()).unwrap());
            let permuted = classify(&MilnorTriple::new_rational(
                vals[p[0]].clone(), vals[p[1]].clone(), vals[p[2]].clone()).unwrap());
            prop_assert_eq!(base, permuted);
        }
    }
}
