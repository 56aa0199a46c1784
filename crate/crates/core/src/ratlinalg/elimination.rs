//! Gaussian elimination over an ordered field.

use super::Matrix;
use crate::scalar::Scalar;

/// Reduced row echelon form together with the pivot columns.
#[derive(Clone, Debug)]
pub struct Echelon<T> {
    pub reduced: Matrix<T>,
    pub pivots: Vec<usize>,
}

impl<T: Scalar> Matrix<T> {
    /// Reduced row echelon form. Pivots on the entry of largest magnitude in
    /// each column.
    pub fn rref(&self) -> Echelon<T> {
        let mut a = self.clone();
        let (rows, cols) = a.shape();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let best = (r..rows)
                .filter(|&i| !a[(i, c)].is_zero())
                .max_by(|&i, &j| {
                    a[(i, c)]
                        .abs()
                        .partial_cmp(&a[(j, c)].abs())
                        .expect("unordered scalar")
                });
            let Some(p) = best else { continue };
            if p != r {
                for j in 0..cols {
                    let tmp = a[(p, j)].clone();
                    a[(p, j)] = a[(r, j)].clone();
                    a[(r, j)] = tmp;
                }
            }
            let inv = T::one() / a[(r, c)].clone();
            for j in c..cols {
                a[(r, j)] = a[(r, j)].clone() * inv.clone();
            }
            for i in 0..rows {
                if i == r || a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone();
                for j in c..cols {
                    let delta = f.clone() * a[(r, j)].clone();
                    a[(i, j)] = a[(i, j)].clone() - delta;
                }
            }
            pivots.push(c);
            r += 1;
        }
        Echelon { reduced: a, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().pivots.len()
    }

    /// Basis of the null space as columns of the returned matrix.
    ///
    /// One vector per free column, with that free variable set to one.
    pub fn kernel(&self) -> Matrix<T> {
        let Echelon { reduced, pivots } = self.rref();
        let cols = self.cols();
        let free: Vec<usize> = (0..cols).filter(|c| !pivots.contains(c)).collect();
        let mut basis = Matrix::zeros(cols, free.len());
        for (k, &f) in free.iter().enumerate() {
            basis[(f, k)] = T::one();
            for (r, &p) in pivots.iter().enumerate() {
                basis[(p, k)] = -reduced[(r, f)].clone();
            }
        }
        basis
    }

    /// Determinant by elimination.
    pub fn determinant(&self) -> T {
        assert_eq!(self.rows(), self.cols(), "determinant of a non-square matrix");
        let n = self.rows();
        let mut a = self.clone();
        let mut det = T::one();
        for c in 0..n {
            let best = (c..n)
                .filter(|&i| !a[(i, c)].is_zero())
                .max_by(|&i, &j| {
                    a[(i, c)]
                        .abs()
                        .partial_cmp(&a[(j, c)].abs())
                        .expect("unordered scalar")
                });
            let Some(p) = best else { return T::zero() };
            if p != c {
                for j in 0..n {
                    let tmp = a[(p, j)].clone();
                    a[(p, j)] = a[(c, j)].clone();
                    a[(c, j)] = tmp;
                }
                det = -det;
            }
            let pivot = a[(c, c)].clone();
            det = det * pivot.clone();
            for i in c + 1..n {
                if a[(i, c)].is_zero() {
                    continue;
                }
                let f = a[(i, c)].clone() / pivot.clone();
                for j in c..n {
                    let delta = f.clone() * a[(c, j)].clone();
                    a[(i, j)] = a[(i, j)].clone() - delta;
                }
            }
        }
        det
    }

    /// Solves `self * x = b` for square nonsingular `self`.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let n = self.rows();
        assert_eq!(n, self.cols(), "solve needs a square matrix");
        assert_eq!(n, b.len(), "right-hand side length mismatch");
        let rhs = Matrix::from_columns(&[b.to_vec()], n);
        let Echelon { reduced, pivots } = self.hstack(&rhs).rref();
        if pivots.len() != n || pivots.iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some((0..n).map(|i| reduced[(i, n)].clone()).collect())
    }

    pub fn inverse(&self) -> Option<Matrix<T>> {
        let n = self.rows();
        assert_eq!(n, self.cols(), "inverse needs a square matrix");
        let Echelon { reduced, pivots } = self.hstack(&Matrix::identity(n)).rref();
        if pivots.len() < n || pivots[..n].iter().enumerate().any(|(i, &p)| p != i) {
            return None;
        }
        Some(Matrix::from_fn(n, n, |i, j| reduced[(i, n + j)].clone()))
    }

    /// Indices of a maximal linearly independent set of columns (the pivot columns).
    pub fn column_basis_indices(&self) -> Vec<usize> {
        self.rref().pivots
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{int, rat, Rational};

    fn q(rows: &[&[i64]]) -> Matrix<Rational> {
        let cols = rows.first().map_or(0, |r| r.len());
        Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| int(x)).collect()).collect(),
            cols,
        )
    }

    #[test]
    fn kernel_of_hand_example() {
        let a = q(&[&[-1, -1], &[1, 1]]);
        let k = a.kernel();
        assert_eq!(k.cols(), 1);
        assert_eq!(k.col(0), vec![int(-1), int(1)]);
        assert!(a.mul(&k).is_zero());
    }

    #[test]
    fn rank_nullity() {
        let a = q(&[&[1, 2, 3, 4], &[2, 4, 6, 8], &[0, 1, 0, 1]]);
        assert_eq!(a.rank(), 2);
        assert_eq!(a.kernel().cols(), 2);
        assert!(a.mul(&a.kernel()).is_zero());
    }

    #[test]
    fn determinant_routes_agree() {
        let a = q(&[&[2, -1, 0], &[3, 5, 7], &[1, 1, 4]]);
        assert_eq!(a.determinant(), a.det_by_expansion());
        assert_eq!(q(&[&[1, 2], &[2, 4]]).determinant(), int(0));
    }

    #[test]
    fn solve_and_inverse() {
        let a = q(&[&[2, 1], &[1, 3]]);
        let x = a.solve(&[int(3), int(5)]).unwrap();
        assert_eq!(x, vec![rat(4, 5), rat(7, 5)]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        assert!(q(&[&[1, 2], &[2, 4]]).inverse().is_none());
    }

    #[test]
    fn float_partial_pivoting() {
        let a = Matrix::from_rows(vec![vec![1e-12f64, 1.0], vec![1.0, 1.0]], 2);
        let x = a.solve(&[1.0, 2.0]).unwrap();
        assert!((x[0] - 1.0).abs() < 1e-9 && (x[1] - 1.0).abs() < 1e-9);
    }
}
