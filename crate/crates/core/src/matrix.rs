//! Matrices over a weight system, forming the PROPs of relations (`Boolean`),
//! of natural-number matrices (`u64`) and of integer matrices (`i64`).
//!
//! A morphism `n -> m` is stored as an `n x m` array: row `i` lists where
//! input `i` is sent. Composition is therefore the row-vector product
//! `(g . f)[i][k] = sum_j f[i][j] * g[j][k]`.

use std::fmt;

use num_traits::Zero;

use crate::weight::Weight;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<W> {
    rows: usize,
    cols: usize,
    entries: Vec<W>,
}

impl<W: Weight> Matrix<W> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![W::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, W::one());
        }
        m
    }

    /// Block symmetry `n + m -> m + n`.
    pub fn symmetry(n: usize, m: usize) -> Self {
        let mut out = Self::zeros(n + m, m + n);
        for i in 0..n {
            out.set(i, m + i, W::one());
        }
        for i in 0..m {
            out.set(n + i, i, W::one());
        }
        out
    }

    /// The permutation matrix sending input `i` to output `perm[i]`.
    pub fn permutation(perm: &[usize]) -> Self {
        let mut out = Self::zeros(perm.len(), perm.len());
        for (i, &j) in perm.iter().enumerate() {
            out.set(i, j, W::one());
        }
        out
    }

    pub fn scalar(w: W) -> Self {
        Matrix {
            rows: 1,
            cols: 1,
            entries: vec![w],
        }
    }

    /// Builds a matrix from rows; panics if the rows are ragged.
    pub fn from_rows(rows: Vec<Vec<W>>) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|r| r.len() == m), "ragged matrix rows");
        Matrix {
            rows: n,
            cols: m,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Like [`Matrix::from_rows`] but with an explicit column count, so that
    /// `n x 0` matrices can be written.
    pub fn from_rows_with_cols(cols: usize, rows: Vec<Vec<W>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix rows");
        Matrix {
            rows: rows.len(),
            cols,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Number of inputs.
    pub fn rows(&self) -> usize {
        self.rows
    }

    /// Number of outputs.
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> W {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, w: W) {
        assert!(i < self.rows && j < self.cols, "matrix index out of range");
        self.entries[i * self.cols + j] = w;
    }

    pub fn row(&self, i: usize) -> &[W] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn to_rows(&self) -> Vec<Vec<W>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    /// `next . self`: first `self`, then `next`. Returns `None` on a shape
    /// mismatch.
    pub fn then(&self, next: &Matrix<W>) -> Option<Matrix<W>> {
        if self.cols != next.rows {
            return None;
        }
        let mut out = Matrix::zeros(self.rows, next.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a.is_zero() {
                    continue;
                }
                for k in 0..next.cols {
                    let b = next.get(j, k);
                    if !b.is_zero() {
                        let cur = out.get(i, k);
                        out.set(i, k, cur + a * b);
                    }
                }
            }
        }
        Some(out)
    }

    /// Composition in the usual order: `self . first`.
    pub fn compose(&self, first: &Matrix<W>) -> Option<Matrix<W>> {
        first.then(self)
    }

    /// Block-diagonal sum.
    pub fn tensor(&self, other: &Matrix<W>) -> Matrix<W> {
        let mut out = Matrix::zeros(self.rows + other.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, j));
            }
        }
        for i in 0..other.rows {
            for j in 0..other.cols {
                out.set(self.rows + i, self.cols + j, other.get(i, j));
            }
        }
        out
    }

    /// Reinterprets the entries in another weight system through the integers.
    pub fn convert<V: Weight>(&self) -> Option<Matrix<V>> {
        let entries = self
            .entries
            .iter()
            .map(|w| V::from_count(w.to_count()))
            .collect::<Option<Vec<V>>>()?;
        Some(Matrix {
            rows: self.rows,
            cols: self.cols,
            entries,
        })
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.rows)
    }

    /// Rows as integer arrays, the JSON form used by the command line.
    pub fn to_count_rows(&self) -> Vec<Vec<i64>> {
        (0..self.rows)
            .map(|i| self.row(i).iter().map(|w| w.to_count()).collect())
            .collect()
    }
}

impl<W: Weight> fmt::Debug for Matrix<W> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix{}x{}[", self.rows, self.cols)?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str("; ")?;
            }
            for (j, w) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{w}")?;
            }
        }
        f.write_str("]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weight::Boolean;

    #[test]
    fn product_follows_data_flow() {
        let delta = Matrix::<u64>::from_rows(vec![vec![1, 1]]);
        let nabla = Matrix::<u64>::from_rows(vec![vec![1], vec![1]]);
        assert_eq!(delta.then(&nabla).unwrap(), Matrix::scalar(2));
        assert_eq!(
            nabla.then(&delta).unwrap(),
            Matrix::from_rows(vec![vec![1, 1], vec![1, 1]])
        );
        assert!(delta.then(&delta).is_none());
    }

    #[test]
    fn boolean_product_saturates() {
        let delta = Matrix::<Boolean>::from_rows(vec![vec![Boolean::TRUE, Boolean::TRUE]]);
        let nabla = Matrix::<Boolean>::from_rows(vec![vec![Boolean::TRUE], vec![Boolean::TRUE]]);
        assert!(delta.then(&nabla).unwrap().is_identity());
    }

    #[test]
    fn symmetry_is_involutive() {
        for n in 0..4 {
            for m in 0..4 {
                let s = Matrix::<i64>::symmetry(n, m);
                let back = Matrix::<i64>::symmetry(m, n);
                assert!(s.then(&back).unwrap().is_identity());
            }
        }
        assert_eq!(Matrix::<i64>::symmetry(3, 0), Matrix::identity(3));
    }

    #[test]
    fn tensor_with_empty_is_unit() {
        let m = Matrix::<i64>::from_rows(vec![vec![1, -2, 0]]);
        assert_eq!(m.tensor(&Matrix::identity(0)), m);
        assert_eq!(Matrix::identity(0).tensor(&m), m);
        let z = Matrix::<i64>::from_rows_with_cols(0, vec![vec![]]);
        assert_eq!((z.rows(), z.cols()), (1, 0));
    }

    #[test]
    fn convert_rejects_negative_into_naturals() {
        let m = Matrix::<i64>::scalar(-1);
        assert!(m.convert::<u64>().is_none());
        assert_eq!(m.convert::<i64>().unwrap(), m);
    }
}
