//! Exact integer linear algebra: lattice vectors, the `M x N` pairing, normal
//! forms and non-negative integer feasibility.

mod matrix;
mod reindex;
mod solve;
mod vector;

pub use matrix::{rank_of_rows, smith_normal_form, IntegerMatrix, SmithForm};
pub use reindex::{smith_reindex, LatticeTransform};
pub use solve::{solve_nonnegative, NonnegativeSolver};
pub use vector::{
    content, dot, is_nonnegative, make_primitive, pairing, primitive_vector, DualVector,
    LatticePoint, LatticeVector,
};

pub(crate) use vector::pair;
