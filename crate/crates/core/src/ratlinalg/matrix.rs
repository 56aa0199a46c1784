use std::fmt;
use std::ops::{Index, IndexMut};

use num_traits::{One, Zero};

use crate::scalar::Ring;

/// Dense row-major matrix.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> Matrix<T> {
    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Matrix { rows, cols, data }
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(f).collect(),
        }
    }
}

impl<T: Clone> Matrix<T> {
    /// Builds a matrix from row vectors. `cols` is needed when there are no rows.
    pub fn from_rows(rows: Vec<Vec<T>>, cols: usize) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged rows");
        let n = rows.len();
        Matrix {
            rows: n,
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<T>], rows: usize) -> Self {
        assert!(columns.iter().all(|c| c.len() == rows), "ragged columns");
        Matrix::from_fn(rows, columns.len(), |i, j| columns[j][i].clone())
    }

    pub fn col(&self, j: usize) -> Vec<T> {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<T>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        Matrix::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(self.rows, idx.len(), |i, j| self[(i, idx[j])].clone())
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        Matrix::from_fn(idx.len(), self.cols, |i, j| self[(idx[i], j)].clone())
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Self) -> Self {
        assert_eq!(self.rows, other.rows, "hstack row mismatch");
        Matrix::from_fn(self.rows, self.cols + other.cols, |i, j| {
            if j < self.cols {
                self[(i, j)].clone()
            } else {
                other[(i, j - self.cols)].clone()
            }
        })
    }
}

impl<T: Clone + Zero> Matrix<T> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![T::zero(); rows * cols],
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl<T: Clone + Zero + One> Matrix<T> {
    pub fn identity(n: usize) -> Self {
        Matrix::from_fn(n, n, |i, j| if i == j { T::one() } else { T::zero() })
    }
}

impl<T: Ring> Matrix<T> {
    pub fn mul(&self, rhs: &Matrix<T>) -> Matrix<T> {
        assert_eq!(self.cols, rhs.rows, "matrix product dimension mismatch");
        Matrix::from_fn(self.rows, rhs.cols, |i, j| {
            (0..self.cols).fold(T::zero(), |acc, k| {
                acc + self[(i, k)].clone() * rhs[(k, j)].clone()
            })
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        assert_eq!(self.cols, v.len(), "matrix-vector dimension mismatch");
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(T::zero(), |acc, (a, b)| acc + a.clone() * b.clone())
            })
            .collect()
    }

    pub fn neg(&self) -> Matrix<T> {
        self.map(|x| -x.clone())
    }

    /// Determinant by cofactor expansion memoised over column subsets.
    ///
    /// Division-free, so it works over any commutative ring (in particular
    /// polynomial rings). Cost is `O(n 2^n)` ring operations.
    pub fn det_by_expansion(&self) -> T {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return T::one();
        }
        // minors[mask] = det of rows 0..popcount(mask) restricted to columns in mask
        let mut minors: Vec<T> = vec![T::zero(); 1 << n];
        minors[0] = T::one();
        for mask in 1usize..(1 << n) {
            let row = mask.count_ones() as usize - 1;
            let mut acc = T::zero();
            // sign follows the position of column j among the selected columns
            let mut position = 0;
            for j in 0..n {
                if mask & (1 << j) == 0 {
                    continue;
                }
                let sub = &minors[mask & !(1 << j)];
                let entry = &self[(row, j)];
                if !entry.is_zero() && !sub.is_zero() {
                    let term = entry.clone() * sub.clone();
                    // column j sits at `position` in the row-`row` expansion
                    acc = if (row + position) % 2 == 0 {
                        acc + term
                    } else {
                        acc - term
                    };
                }
                position += 1;
            }
            minors[mask] = acc;
        }
        minors[(1 << n) - 1].clone()
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        debug_assert!(i < self.rows && j < self.cols);
        &self.data[i * self.cols + j]
    }
}

impl<T> IndexMut<(usize, usize)> for Matrix<T> {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut T {
        debug_assert!(i < self.rows && j < self.cols);
        &mut self.data[i * self.cols + j]
    }
}

impl<T: fmt::Debug> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", &self.data[i * self.cols..(i + 1) * self.cols])?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn expansion_matches_hand_determinants() {
        let m = Matrix::from_rows(vec![vec![2i64, 1], vec![7, 4]], 2);
        assert_eq!(m.det_by_expansion(), 1);
        let m = Matrix::from_rows(vec![vec![1i64, 2, 3], vec![4, 5, 6], vec![7, 8, 10]], 3);
        assert_eq!(m.det_by_expansion(), -3);
        let m: Matrix<i64> = Matrix::zeros(0, 0);
        assert_eq!(m.det_by_expansion(), 1);
    }

    #[test]
    fn expansion_alternates_under_row_swap() {
        let a = Matrix::from_rows(
            vec![vec![3i64, 1, 4, 1], vec![5, 9, 2, 6], vec![5, 3, 5, 8], vec![9, 7, 9, 3]],
            4,
        );
        let swapped = a.select_rows(&[1, 0, 2, 3]);
        assert_eq!(a.det_by_expansion(), -swapped.det_by_expansion());
    }

    #[test]
    fn products_and_transpose() {
        let a = Matrix::from_rows(vec![vec![1i64, 2, 3], vec![4, 5, 6]], 3);
        let b = a.transpose();
        assert_eq!(b.shape(), (3, 2));
        let p = a.mul(&b);
        assert_eq!(p.to_rows(), vec![vec![14, 32], vec![32, 77]]);
        assert_eq!(a.mul_vec(&[1, 0, -1]), vec![-2, -2]);
        assert_eq!(a.hstack(&a).cols(), 6);
    }
}
