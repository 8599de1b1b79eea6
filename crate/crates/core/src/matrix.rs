//! Dense matrices and the exact determinant kernel.

use std::fmt;
use std::ops::{Index, Neg};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::One;

use crate::error::{domain, Error, Result};
use crate::exact::common_denominator;
use crate::{ExactRational, RationalMatrix};

/// Row-major dense matrix. Zero rows or columns are allowed.
#[derive(Clone, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: usize,
    cols: usize,
    entries: Vec<T>,
}

impl<T> Matrix<T> {
    /// Builds a matrix from a closure over 0-based `(row, col)`.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        Matrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return domain("ragged rows");
        }
        let n = rows.len();
        Ok(Matrix {
            rows: n,
            cols,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[T] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(f).collect(),
        }
    }
}

impl<T> Index<(usize, usize)> for Matrix<T> {
    type Output = T;

    fn index(&self, (i, j): (usize, usize)) -> &T {
        assert!(i < self.rows && j < self.cols, "index ({i}, {j}) out of bounds");
        &self.entries[i * self.cols + j]
    }
}

impl<T: fmt::Display> fmt::Debug for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "[{}x{}]", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(|e| e.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// Fraction-free (Bareiss) determinant over an integral domain.
///
/// Every division performed is exact; a non-zero remainder is reported as an
/// invariant violation instead of being rounded away.
pub fn bareiss_determinant<I>(m: &Matrix<I>) -> Result<I>
where
    I: Integer + Clone + Neg<Output = I>,
{
    if !m.is_square() {
        return domain(format!("determinant of a {}x{} matrix", m.rows, m.cols));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(I::one());
    }
    let mut a: Vec<Vec<I>> = (0..n).map(|i| m.row(i).to_vec()).collect();
    let mut negate = false;
    let mut prev = I::one();
    for k in 0..n - 1 {
        let Some(p) = (k..n).find(|&r| !a[r][k].is_zero()) else {
            return Ok(I::zero());
        };
        if p != k {
            a.swap(p, k);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = a[i][j].clone() * a[k][k].clone() - a[i][k].clone() * a[k][j].clone();
                let (q, r) = num.div_rem(&prev);
                if !r.is_zero() {
                    return Err(Error::Invariant("inexact Bareiss division".into()));
                }
                a[i][j] = q;
            }
            a[i][k] = I::zero();
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -det } else { det })
}

/// Exact determinant of a rational matrix.
///
/// Each column is scaled by the lcm of its denominators, the resulting
/// integer matrix goes through [`bareiss_determinant`], and the product of
/// the column scales is divided back out.
pub fn exact_determinant(m: &RationalMatrix) -> Result<ExactRational> {
    if !m.is_square() {
        return domain(format!("determinant of a {}x{} matrix", m.rows, m.cols));
    }
    let n = m.rows;
    let scales: Vec<BigInt> = (0..n)
        .map(|j| common_denominator((0..n).map(|i| &m[(i, j)])))
        .collect();
    let ints = Matrix::from_fn(n, n, |i, j| {
        let e = &m[(i, j)];
        e.numer() * (&scales[j] / e.denom())
    });
    let det = bareiss_determinant(&ints)?;
    let scale = scales.iter().fold(BigInt::one(), |acc, s| acc * s);
    Ok(ExactRational::new(det, scale))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::{integer, rational};
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    /// Laplace expansion along the first row; independent of elimination.
    fn cofactor_det(m: &RationalMatrix) -> ExactRational {
        let n = m.rows();
        if n == 0 {
            return integer(1);
        }
        let mut total = integer(0);
        for j in 0..n {
            let minor = Matrix::from_fn(n - 1, n - 1, |r, c| {
                m[(r + 1, if c < j { c } else { c + 1 })].clone()
            });
            let term = m[(0, j)].clone() * cofactor_det(&minor);
            if j % 2 == 0 {
                total += term;
            } else {
                total -= term;
            }
        }
        total
    }

    fn ints(rows: &[&[i64]]) -> RationalMatrix {
        Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&v| integer(v)).collect()).collect())
            .unwrap()
    }

    #[test]
    fn small_determinants() {
        let one = Matrix::from_rows(vec![vec![rational(7, 2)]]).unwrap();
        assert_eq!(exact_determinant(&one).unwrap(), rational(7, 2));
        assert_eq!(exact_determinant(&ints(&[&[3, 1], &[1, 2]])).unwrap(), integer(5));
        assert_eq!(
            exact_determinant(&ints(&[&[1, 2, 3], &[4, 5, 6], &[1, 2, 3]])).unwrap(),
            integer(0)
        );
        let empty: RationalMatrix = Matrix::from_fn(0, 0, |_, _| integer(0));
        assert_eq!(exact_determinant(&empty).unwrap(), integer(1));
    }

    #[test]
    fn needs_row_swap() {
        let m = ints(&[&[0, 1, 0], &[1, 0, 0], &[0, 0, 1]]);
        assert_eq!(exact_determinant(&m).unwrap(), integer(-1));
        let z = ints(&[&[0, 1], &[0, 2]]);
        assert_eq!(exact_determinant(&z).unwrap(), integer(0));
    }

    #[test]
    fn rejects_non_square() {
        let m = Matrix::from_fn(2, 3, |_, _| integer(1));
        assert!(matches!(exact_determinant(&m), Err(Error::Domain(_))));
        assert!(Matrix::from_rows(vec![vec![1], vec![1, 2]]).is_err());
    }

    #[test]
    fn bareiss_over_machine_integers() {
        let m = Matrix::from_rows(vec![vec![2i64, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]).unwrap();
        assert_eq!(bareiss_determinant(&m).unwrap(), 4);
    }

    #[test]
    fn agrees_with_cofactor_expansion() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let n = rng.gen_range(1..=5);
            let m = Matrix::from_fn(n, n, |_, _| {
                rational(rng.gen_range(-9..=9), rng.gen_range(1..=6))
            });
            assert_eq!(exact_determinant(&m).unwrap(), cofactor_det(&m), "{m:?}");
        }
    }
}
