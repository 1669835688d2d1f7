//! Exact toric invariants of affine monoids: holes, facet saturation, Demazure roots, ML and ML* faces.
//!
//! An affine toric variety is given by the generators of its weight monoid
//! `P ⊂ Z^n`. Everything here is exact: holes and saturation points of `P`,
//! almost saturated facets, Demazure roots and their descent to `K[X]`,
//! homogeneous locally nilpotent derivations with slices, the faces realising
//! `ML_h` and `ML*_h`, the splitting `X ≅ X' × A^k` and rigidity of `X'`.
//! A small symbolic engine for derivations of semigroup algebras is used as
//! an independent check of the derivation-theoretic statements.

pub mod check;
pub mod cone;
pub mod demazure;
pub mod derivation;
pub mod error;
pub mod input;
pub mod invariants;
pub mod lattice;
pub mod monoid;
pub mod oracle;
mod par;
pub mod report;
pub mod wire;

pub use error::{Error, Result};
