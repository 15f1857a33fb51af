//! Exact integer linear algebra: matrices, Smith normal form, kernels,
//! cokernels and finitely generated abelian groups.

mod abelian;
pub(crate) mod json;
mod matrix;
mod oracle;
mod smith;

pub(crate) use abelian::check_chain;
pub use abelian::{
    cokernel, cokernel_with_budget, direct_sum, groups_isomorphic, kernel, kernel_with_budget,
    FGAbelianGroup,
};
pub use json::{matrix_from_json, matrix_to_json};
pub use matrix::ZMatrix;
pub use oracle::{cokernel_oracle, ORACLE_MAX_DET, ORACLE_MAX_DIM};
pub use smith::{kernel_basis, rank, smith_invariants, snf, Budget, SmithForm, SmithInvariants};
