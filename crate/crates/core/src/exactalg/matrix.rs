//! Small dense matrices over the rationals, used as linear coordinate changes.

use std::fmt;

use super::{AlgebraError, Scalar};

/// A `rows x cols` matrix acting by `z -> M z`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinearMap {
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl LinearMap {
    pub fn from_rows(rows: Vec<Vec<Scalar>>) -> Result<Self, AlgebraError> {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        if nrows == 0 || ncols == 0 || rows.iter().any(|r| r.len() != ncols) {
            return Err(AlgebraError::ShapeMismatch(format!(
                "ragged or empty matrix with {nrows} rows"
            )));
        }
        Ok(LinearMap { rows: nrows, cols: ncols, entries: rows.into_iter().flatten().collect() })
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Result<Self, AlgebraError> {
        Self::from_rows(
            rows.iter().map(|r| r.iter().map(|&x| Scalar::from_int(x)).collect()).collect(),
        )
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![Scalar::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = Scalar::one();
        }
        LinearMap { rows: n, cols: n, entries }
    }

    pub fn diagonal(diag: &[Scalar]) -> Self {
        let n = diag.len();
        let mut m = Self::identity(n);
        for (i, d) in diag.iter().enumerate() {
            m.entries[i * n + i] = d.clone();
        }
        m
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

    pub fn get(&self, i: usize, j: usize) -> &Scalar {
        &self.entries[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[Scalar] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        let mut entries = Vec::with_capacity(self.entries.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                entries.push(self.get(i, j).clone());
            }
        }
        LinearMap { rows: self.cols, cols: self.rows, entries }
    }

    pub fn mul(&self, rhs: &LinearMap) -> Result<LinearMap, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::ShapeMismatch(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut entries = Vec::with_capacity(self.rows * rhs.cols);
        for i in 0..self.rows {
            for j in 0..rhs.cols {
                entries.push((0..self.cols).map(|k| self.get(i, k) * rhs.get(k, j)).sum());
            }
        }
        Ok(LinearMap { rows: self.rows, cols: rhs.cols, entries })
    }

    /// Row echelon form by exact Gaussian elimination; returns (echelon, rank, determinant sign/scale).
    fn eliminate(&self) -> (Vec<Vec<Scalar>>, usize, Scalar) {
        let mut a: Vec<Vec<Scalar>> = (0..self.rows).map(|i| self.row(i).to_vec()).collect();
        let mut rank = 0;
        let mut det = Scalar::one();
        for col in 0..self.cols {
            let Some(p) = (rank..self.rows).find(|&r| !a[r][col].is_zero()) else {
                det = Scalar::zero();
                continue;
            };
            if p != rank {
                a.swap(p, rank);
                det = -det;
            }
            let pivot = a[rank][col].clone();
            det *= &pivot;
            for r in rank + 1..self.rows {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &pivot;
                for c in col..self.cols {
                    let delta = &factor * &a[rank][c];
                    a[r][c] -= &delta;
                }
            }
            rank += 1;
            if rank == self.rows {
                break;
            }
        }
        if rank < self.rows.min(self.cols) {
            det = Scalar::zero();
        }
        (a, rank, det)
    }

    pub fn rank(&self) -> usize {
        self.eliminate().1
    }

    pub fn determinant(&self) -> Result<Scalar, AlgebraError> {
        if !self.is_square() {
            return Err(AlgebraError::ShapeMismatch("determinant of a non-square matrix".into()));
        }
        Ok(self.eliminate().2)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }
}

impl fmt::Debug for LinearMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(i).iter().map(ToString::to_string).collect();
            write!(f, "{}", row.join(", "))?;
        }
        write!(f, "]")
    }
}
