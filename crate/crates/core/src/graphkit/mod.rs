//! Graph structure of a reaction network: components, Laplacian, tree constants.

mod decomposition;
mod laplacian;
mod polynomial;

pub use decomposition::{decompose, scc_labels, ComponentDecomposition};
pub use laplacian::{
    columns_sum_to_zero, incidence_matrix, laplacian, laplacian_kernel_basis,
    laplacian_kernel_basis_at, laplacian_symbolic, laplacian_with, tree_constants,
    tree_constants_at,
};
pub use polynomial::{Monomial, RatePolynomial, RateRatio};
