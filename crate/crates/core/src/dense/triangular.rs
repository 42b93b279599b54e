use super::Matrix;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    Lower,
    Upper,
}

/// Square matrix whose entries strictly on the wrong side of the diagonal are zero.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangularMatrix {
    shape: Shape,
    data: Matrix,
}

impl TriangularMatrix {
    /// Wraps `data`, failing if it is not square or has a nonzero on the wrong side.
    pub fn new(shape: Shape, data: Matrix) -> Result<Self> {
        if !data.is_square() {
            return Err(Error::Dimension {
                op: "triangular",
                lhs: (data.rows(), data.cols()),
                rhs: (data.cols(), data.rows()),
            });
        }
        let n = data.rows();
        for i in 0..n {
            for j in 0..n {
                let wrong_side = match shape {
                    Shape::Lower => j > i,
                    Shape::Upper => j < i,
                };
                if wrong_side && data[(i, j)] != 0.0 {
                    return Err(Error::Usage(
                        "nonzero entry on the wrong side of the diagonal",
                    ));
                }
            }
        }
        Ok(Self { shape, data })
    }

    /// Keeps the requested triangle of `data` and zeros the rest.
    pub fn from_triangle(shape: Shape, data: &Matrix) -> Self {
        assert!(data.is_square());
        let m = Matrix::from_fn(data.rows(), data.cols(), |i, j| {
            let keep = match shape {
                Shape::Lower => j <= i,
                Shape::Upper => j >= i,
            };
            if keep {
                data[(i, j)]
            } else {
                0.0
            }
        });
        Self { shape, data: m }
    }

    pub fn identity(shape: Shape, n: usize) -> Self {
        Self {
            shape,
            data: Matrix::identity(n),
        }
    }

    #[inline]
    pub fn shape(&self) -> Shape {
        self.shape
    }

    #[inline]
    pub fn order(&self) -> usize {
        self.data.rows()
    }

    #[inline]
    pub fn as_matrix(&self) -> &Matrix {
        &self.data
    }

    pub fn into_matrix(self) -> Matrix {
        self.data
    }

    pub fn transpose(&self) -> Self {
        let shape = match self.shape {
            Shape::Lower => Shape::Upper,
            Shape::Upper => Shape::Lower,
        };
        Self {
            shape,
            data: self.data.transpose(),
        }
    }

    pub fn diagonal_is_positive(&self) -> bool {
        (0..self.order()).all(|i| self.data[(i, i)] > 0.0)
    }
}

impl core::ops::Index<(usize, usize)> for TriangularMatrix {
    type Output = f64;
    fn index(&self, ij: (usize, usize)) -> &f64 {
        &self.data[ij]
    }
}

/// The permutation `P` whose columns are those of the identity in reverse order.
///
/// `P` is symmetric and orthogonal, so `P^T = P = P^{-1}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ReversalPermutation {
    order: usize,
}

impl ReversalPermutation {
    pub fn new(order: usize) -> Self {
        Self { order }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn to_matrix(&self) -> Matrix {
        let n = self.order;
        Matrix::from_fn(n, n, |i, j| if i + j + 1 == n { 1.0 } else { 0.0 })
    }

    /// `P^T a P`: entry `(i, j)` becomes `a[(n-1-i, n-1-j)]`. Pure index movement, no rounding.
    pub fn conjugate(&self, a: &Matrix) -> Result<Matrix> {
        if a.rows() != self.order || a.cols() != self.order {
            return Err(Error::Dimension {
                op: "reverse_permute",
                lhs: (self.order, self.order),
                rhs: (a.rows(), a.cols()),
            });
        }
        let n = self.order;
        Ok(Matrix::from_fn(n, n, |i, j| a[(n - 1 - i, n - 1 - j)]))
    }

    /// `P a`: reverses the row order.
    pub fn permute_rows(&self, a: &Matrix) -> Result<Matrix> {
        if a.rows() != self.order {
            return Err(Error::Dimension {
                op: "permute_rows",
                lhs: (self.order, self.order),
                rhs: (a.rows(), a.cols()),
            });
        }
        let n = self.order;
        Ok(Matrix::from_fn(n, a.cols(), |i, j| a[(n - 1 - i, j)]))
    }
}

/// `P^T a P` for the reversal permutation of matching order.
pub fn reverse_permute(a: &Matrix) -> Result<Matrix> {
    if !a.is_square() {
        return Err(Error::Dimension {
            op: "reverse_permute",
            lhs: (a.rows(), a.cols()),
            rhs: (a.cols(), a.rows()),
        });
    }
    ReversalPermutation::new(a.rows()).conjugate(a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dense::matmul;

    #[test]
    fn reverse_permute_examples() {
        let d = Matrix::from_diag(&[1.0, 2.0, 3.0]);
        assert_eq!(
            reverse_permute(&d).unwrap(),
            Matrix::from_diag(&[3.0, 2.0, 1.0])
        );
        let a = Matrix::from_rows(&[[1.0, 2.0], [3.0, 4.0]]);
        assert_eq!(
            reverse_permute(&a).unwrap(),
            Matrix::from_rows(&[[4.0, 3.0], [2.0, 1.0]])
        );
        assert!(reverse_permute(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn conjugate_matches_explicit_permutation() {
        let a = Matrix::from_fn(4, 4, |i, j| (3 * i + j) as f64 - 0.5);
        let p = ReversalPermutation::new(4);
        let pm = p.to_matrix();
        let explicit = matmul(&matmul(&pm.transpose(), &a).unwrap(), &pm).unwrap();
        assert_eq!(p.conjugate(&a).unwrap(), explicit);
    }

    #[test]
    fn triangular_rejects_wrong_side() {
        let a = Matrix::from_rows(&[[1.0, 2.0], [0.0, 1.0]]);
        assert!(TriangularMatrix::new(Shape::Lower, a.clone()).is_err());
        let u = TriangularMatrix::new(Shape::Upper, a).unwrap();
        assert_eq!(u.transpose().shape(), Shape::Lower);
        assert!(u.diagonal_is_positive());
    }
}
