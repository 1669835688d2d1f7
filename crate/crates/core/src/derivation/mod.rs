//! Symbolic calculus on semigroup algebras: homogeneous derivations, their
//! sums, replicas and exponential conjugates, nilpotency and exponentials.

mod algebra;
mod element;
mod operator;

pub use algebra::{conjugate, sum_with_slice_check, SemigroupAlgebra, SliceSumReport, SupportMode};
pub use element::{rational, AlgebraElement};
pub use operator::{HomogeneousDerivation, Nilpotency, Operator};
