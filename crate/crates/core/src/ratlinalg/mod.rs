//! Exact rational linear algebra: elimination, subspace bases, generalized
//! inverses, chirotopes and certified sign-feasibility.

mod chirotope;
mod elimination;
mod exact;
mod matrix;
mod sign;
mod simplex;

pub use chirotope::{chirotope, chirotopes_equal, Chirotope, ChirotopeComparison};
pub use elimination::Echelon;
pub use exact::{
    complement_basis, generalized_inverse, kernel_basis, primitive_integer_vector,
    same_column_space, SubspaceBasis,
};
pub use matrix::Matrix;
pub use sign::{Sign, SignVector};
pub use simplex::{
    sign_realizable, strictly_positive_kernel_vector, verify_positive_kernel,
    verify_sign_realizable, FeasibilityCertificate,
};
