use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_traits::{One, Zero};

use super::{LinAlgError, Rational};

/// One row of a sparse matrix: `(column, value)` pairs, strictly increasing
/// column order, no stored zeros.
pub type SparseRow = Vec<(usize, Rational)>;

/// A rational matrix with immutable dimensions.
///
/// Entries are stored row-wise in sparse form, so equality of two matrices is
/// structural equality of their storage.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RationalMatrix {
    rows: usize,
    cols: usize,
    data: Vec<SparseRow>,
}

impl RationalMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RationalMatrix {
            rows,
            cols,
            data: vec![Vec::new(); rows],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let data = (0..dim).map(|i| vec![(i, Rational::one())]).collect();
        RationalMatrix {
            rows: dim,
            cols: dim,
            data,
        }
    }

    /// Builds a matrix from dense rows. Every row must have length `cols`.
    pub fn from_dense_rows(cols: usize, rows: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        let mut data = Vec::with_capacity(rows.len());
        for row in rows {
            if row.len() != cols {
                return Err(LinAlgError::DimensionMismatch {
                    expected: cols,
                    found: row.len(),
                });
            }
            data.push(sparsify(row));
        }
        Ok(RationalMatrix {
            rows: rows.len(),
            cols,
            data,
        })
    }

    pub fn from_i64_rows(rows: &[&[i64]]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let dense: Vec<Vec<Rational>> = rows
            .iter()
            .map(|r| r.iter().map(|&v| Rational::from_integer(v.into())).collect())
            .collect();
        Self::from_dense_rows(cols, &dense).expect("ragged integer rows")
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(rows: usize, columns: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        let mut data = vec![Vec::new(); rows];
        for (c, col) in columns.iter().enumerate() {
            if col.len() != rows {
                return Err(LinAlgError::DimensionMismatch {
                    expected: rows,
                    found: col.len(),
                });
            }
            for (r, v) in col.iter().enumerate() {
                if !v.is_zero() {
                    data[r].push((c, v.clone()));
                }
            }
        }
        Ok(RationalMatrix {
            rows,
            cols: columns.len(),
            data,
        })
    }

    pub(crate) fn from_sparse_rows(cols: usize, data: Vec<SparseRow>) -> Self {
        debug_assert!(data.iter().all(|row| {
            row.windows(2).all(|w| w[0].0 < w[1].0)
                && row.iter().all(|(c, v)| *c < cols && !v.is_zero())
        }));
        RationalMatrix {
            rows: data.len(),
            cols,
            data,
        }
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

    pub fn get(&self, row: usize, col: usize) -> Rational {
        assert!(row < self.rows && col < self.cols, "index out of range");
        match self.data[row].binary_search_by_key(&col, |(c, _)| *c) {
            Ok(i) => self.data[row][i].1.clone(),
            Err(_) => Rational::zero(),
        }
    }

    pub fn sparse_row(&self, row: usize) -> &[(usize, Rational)] {
        &self.data[row]
    }

    pub fn row(&self, row: usize) -> Vec<Rational> {
        densify(&self.data[row], self.cols)
    }

    pub fn column(&self, col: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, col)).collect()
    }

    pub fn to_dense(&self) -> Vec<Vec<Rational>> {
        (0..self.rows).map(|r| self.row(r)).collect()
    }

    /// Number of stored (nonzero) entries.
    pub fn nnz(&self) -> usize {
        self.data.iter().map(Vec::len).sum()
    }

    pub fn density(&self) -> f64 {
        let cells = self.rows * self.cols;
        if cells == 0 {
            0.0
        } else {
            self.nnz() as f64 / cells as f64
        }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Vec::is_empty)
    }

    pub fn transpose(&self) -> Self {
        let mut data = vec![Vec::new(); self.cols];
        for (r, row) in self.data.iter().enumerate() {
            for (c, v) in row {
                data[*c].push((r, v.clone()));
            }
        }
        RationalMatrix {
            rows: self.cols,
            cols: self.rows,
            data,
        }
    }

    pub fn mul_vec(&self, v: &[Rational]) -> Result<Vec<Rational>, LinAlgError> {
        if v.len() != self.cols {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: v.len(),
            });
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .fold(Rational::zero(), |acc, (c, x)| acc + x * &v[*c])
            })
            .collect())
    }

    pub fn try_mul(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        if self.cols != other.rows {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.cols,
                found: other.rows,
            });
        }
        let data = self
            .data
            .iter()
            .map(|row| {
                let mut acc = vec![Rational::zero(); other.cols];
                for (k, x) in row {
                    for (c, y) in &other.data[*k] {
                        acc[*c] += x * y;
                    }
                }
                sparsify(&acc)
            })
            .collect();
        Ok(RationalMatrix {
            rows: self.rows,
            cols: other.cols,
            data,
        })
    }

    fn zip_with(
        &self,
        other: &RationalMatrix,
        f: impl Fn(&Rational, &Rational) -> Rational,
    ) -> Result<RationalMatrix, LinAlgError> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(LinAlgError::ShapeMismatch {
                left: (self.rows, self.cols),
                right: (other.rows, other.cols),
            });
        }
        let data = (0..self.rows)
            .map(|r| {
                let a = self.row(r);
                let b = other.row(r);
                let out: Vec<Rational> = a.iter().zip(&b).map(|(x, y)| f(x, y)).collect();
                sparsify(&out)
            })
            .collect();
        Ok(RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        })
    }

    pub fn try_add(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn try_sub(&self, other: &RationalMatrix) -> Result<RationalMatrix, LinAlgError> {
        self.zip_with(other, |x, y| x - y)
    }

    pub fn scale(&self, k: &Rational) -> RationalMatrix {
        if k.is_zero() {
            return RationalMatrix::zeros(self.rows, self.cols);
        }
        let data = self
            .data
            .iter()
            .map(|row| row.iter().map(|(c, v)| (*c, v * k)).collect())
            .collect();
        RationalMatrix {
            rows: self.rows,
            cols: self.cols,
            data,
        }
    }

    /// Block-diagonal matrix with `copies` copies of `self` on the diagonal.
    pub fn block_diagonal(&self, copies: usize) -> RationalMatrix {
        let mut data = Vec::with_capacity(self.rows * copies);
        for b in 0..copies {
            for row in &self.data {
                data.push(
                    row.iter()
                        .map(|(c, v)| (c + b * self.cols, v.clone()))
                        .collect(),
                );
            }
        }
        RationalMatrix {
            rows: self.rows * copies,
            cols: self.cols * copies,
            data,
        }
    }

    /// Exact inverse, or `None` when the matrix is singular.
    pub fn inverse(&self) -> Result<Option<RationalMatrix>, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        // rref of [A | I]; A is invertible iff the left block reduces to I.
        let augmented: Vec<SparseRow> = self
            .data
            .iter()
            .enumerate()
            .map(|(r, row)| {
                let mut out = row.clone();
                out.push((n + r, Rational::one()));
                out
            })
            .collect();
        let (reduced, rank) = super::rref(&RationalMatrix::from_sparse_rows(2 * n, augmented));
        if rank < n || (0..n).any(|r| reduced.data[r].first().map(|(c, _)| *c) != Some(r)) {
            return Ok(None);
        }
        if (0..n).any(|r| reduced.data[r].iter().any(|(c, _)| *c < n && *c != r)) {
            return Ok(None);
        }
        let data = reduced
            .data
            .into_iter()
            .map(|row| {
                row.into_iter()
                    .filter(|(c, _)| *c >= n)
                    .map(|(c, v)| (c - n, v))
                    .collect()
            })
            .collect();
        Ok(Some(RationalMatrix {
            rows: n,
            cols: n,
            data,
        }))
    }

    pub fn determinant(&self) -> Result<Rational, LinAlgError> {
        if !self.is_square() {
            return Err(LinAlgError::NotSquare {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let mut a = self.to_dense();
        let n = self.rows;
        let mut det = Rational::one();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Ok(Rational::zero());
            };
            if p != col {
                a.swap(p, col);
                det = -det;
            }
            let pivot = a[col][col].clone();
            det *= &pivot;
            for r in col + 1..n {
                if a[r][col].is_zero() {
                    continue;
                }
                let factor = &a[r][col] / &pivot;
                for c in col..n {
                    let delta = &factor * &a[col][c];
                    a[r][c] -= delta;
                }
            }
        }
        Ok(det)
    }
}

impl fmt::Debug for RationalMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "RationalMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let cells: Vec<String> = self.row(r).iter().map(|v| v.to_string()).collect();
            writeln!(f, "  [{}]", cells.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Mul for &RationalMatrix {
    type Output = RationalMatrix;

    fn mul(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.try_mul(rhs).expect("matrix product shape mismatch")
    }
}

impl Add for &RationalMatrix {
    type Output = RationalMatrix;

    fn add(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.try_add(rhs).expect("matrix sum shape mismatch")
    }
}

impl Sub for &RationalMatrix {
    type Output = RationalMatrix;

    fn sub(self, rhs: &RationalMatrix) -> RationalMatrix {
        self.try_sub(rhs).expect("matrix difference shape mismatch")
    }
}

pub(crate) fn sparsify(row: &[Rational]) -> SparseRow {
    row.iter()
        .enumerate()
        .filter(|(_, v)| !v.is_zero())
        .map(|(c, v)| (c, v.clone()))
        .collect()
}

pub(crate) fn densify(row: &[(usize, Rational)], cols: usize) -> Vec<Rational> {
    let mut out = vec![Rational::zero(); cols];
    for (c, v) in row {
        out[*c] = v.clone();
    }
    out
}
