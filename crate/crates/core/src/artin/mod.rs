//! Local artinian `Q`-algebras, matrices over them, and eigen-decompositions.

mod algebra;
mod eigen;
mod matrix;
mod poly;
mod refinement;

pub use algebra::{Elem, TruncatedAlgebra};
pub use eigen::{
    bezout_chain, bezout_sum, eigen_basis, eigen_decompose, eigenvalues, flags_equal, in_span,
    is_stable_flag, project, refinement_from_eigenvalues, Eigenspace, Refinement,
};
pub use matrix::{flatten, module_span, solve, unflatten, ArtinMatrix, ArtinVector};
pub use poly::Poly;
pub use refinement::{flag_position_of_refinement, CellQuery};
