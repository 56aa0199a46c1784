//! Exact subspace computations over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::Matrix;
use crate::scalar::{denominator_lcm, Rational};
use crate::RationalMatrix;

/// A subspace given by a full-column-rank matrix whose columns are basis vectors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    matrix: RationalMatrix,
}

impl SubspaceBasis {
    /// Wraps `matrix` after checking that its columns are independent.
    pub fn new(matrix: RationalMatrix) -> Option<Self> {
        (matrix.rank() == matrix.cols()).then_some(SubspaceBasis { matrix })
    }

    /// Basis for the column space of `generators` (the pivot columns, integer-cleared).
    pub fn column_space(generators: &RationalMatrix) -> Self {
        let idx = generators.column_basis_indices();
        let cols: Vec<Vec<Rational>> = idx
            .iter()
            .map(|&j| primitive_integer_vector(&generators.col(j)))
            .collect();
        SubspaceBasis {
            matrix: Matrix::from_columns(&cols, generators.rows()),
        }
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> RationalMatrix {
        self.matrix
    }

    pub fn ambient_dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn dim(&self) -> usize {
        self.matrix.cols()
    }

    pub fn vectors(&self) -> Vec<Vec<Rational>> {
        self.matrix.columns()
    }
}

/// Scales `v` to a primitive integer vector whose first nonzero entry is positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<Rational> {
    let lcm = denominator_lcm(v);
    let ints: Vec<BigInt> = v
        .iter()
        .map(|x| (x * Rational::from_integer(lcm.clone())).to_integer())
        .collect();
    let gcd = ints.iter().fold(BigInt::zero(), |g, x| g.gcd(x));
    if gcd.is_zero() {
        return v.to_vec();
    }
    let sign = match ints.iter().find(|x| !x.is_zero()) {
        Some(x) if x.is_negative() => -BigInt::from(1),
        _ => BigInt::from(1),
    };
    ints.into_iter()
        .map(|x| Rational::from_integer(x / &gcd * &sign))
        .collect()
}

/// Integer basis of `ker(a)`. A trivial kernel gives a basis with zero columns.
pub fn kernel_basis(a: &RationalMatrix) -> SubspaceBasis {
    let k = a.kernel();
    let cols: Vec<Vec<Rational>> = k.columns().iter().map(|c| primitive_integer_vector(c)).collect();
    SubspaceBasis {
        matrix: Matrix::from_columns(&cols, a.cols()),
    }
}

/// Integer basis of `im(a)^⊥ = ker(aᵀ)`.
pub fn complement_basis(a: &RationalMatrix) -> SubspaceBasis {
    kernel_basis(&a.transpose())
}

/// Moore–Penrose inverse of `x` through the rank factorization `x = F G`.
///
/// The result `h` satisfies `x h x = x`. Here `x` plays the role of `Mᵀ` and
/// `h` is `n × r` when `x` is `r × n`.
pub fn generalized_inverse(x: &RationalMatrix) -> RationalMatrix {
    let (r, n) = x.shape();
    let ech = x.rref();
    let k = ech.pivots.len();
    if k == 0 {
        return Matrix::zeros(n, r);
    }
    let f = x.select_columns(&ech.pivots);
    let g = ech.reduced.select_rows(&(0..k).collect::<Vec<_>>());
    let gt = g.transpose();
    let ft = f.transpose();
    let ggt_inv = g.mul(&gt).inverse().expect("G has full row rank");
    let ftf_inv = ft.mul(&f).inverse().expect("F has full column rank");
    gt.mul(&ggt_inv).mul(&ftf_inv).mul(&ft)
}

/// Whether `im(a) = im(b)` for matrices with the same number of rows.
pub fn same_column_space(a: &RationalMatrix, b: &RationalMatrix) -> bool {
    assert_eq!(a.rows(), b.rows());
    let ra = a.rank();
    ra == b.rank() && ra == a.hstack(b).rank()
}
