//! Left-invariant metrics on SU(2) in Milnor frames.
//!
//! A metric is described by its structure constants `(x, y, z)`: there is an
//! orthonormal left-invariant framing `E1, E2, E3` with
//!
//! ```text
//! [E1,E2] = 2x·E3    [E2,E3] = 2y·E1    [E3,E1] = 2z·E2
//! ```
//!
//! Concretely the frame is realized as `E_i = λ_i·X_i` with
//! `λ1 = √(zx)`, `λ2 = √(xy)`, `λ3 = √(yz)`, where `X_i` are the
//! left-invariant fields of the su(2) basis; the Berger metric `(1, 1/ε, 1/ε)`
//! recovers the usual `Y_i` framing.

mod christoffel;
mod classify;
mod curvature;
mod frame;
mod nat_red;

pub use christoffel::{christoffel, nabla_invariant, ChristoffelTable};
pub use classify::{classify, BergerParams, Classification, IsometryClass};
pub use curvature::sectional_curvature;
pub use frame::{frame_generators, FrameVec, MilnorTriple};
pub use nat_red::nat_red_check;
