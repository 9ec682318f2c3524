//! Exact rational linear algebra.
//!
//! Everything downstream (cup products, fixed spaces of group actions, the
//! Johnson image) reduces to rank, kernel and subspace-membership questions
//! over ℚ, answered here without rounding.

mod matrix;
mod rref;
mod subspace;

use num_bigint::BigInt;
use thiserror::Error;

pub use matrix::{RationalMatrix, SparseRow};
pub use rref::{rank, rref, rref_dense, rref_sparse, SPARSE_DENSITY_THRESHOLD};
pub use subspace::{image, kernel, Subspace};

pub type Rational = num_rational::BigRational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LinAlgError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("shape mismatch: {left:?} vs {right:?}")]
    ShapeMismatch {
        left: (usize, usize),
        right: (usize, usize),
    },
    #[error("matrix is {rows}x{cols}, expected square")]
    NotSquare { rows: usize, cols: usize },
}

pub fn q(v: i64) -> Rational {
    Rational::from_integer(BigInt::from(v))
}

pub fn qv(vs: &[i64]) -> Vec<Rational> {
    vs.iter().map(|&v| q(v)).collect()
}

pub fn frac(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Simultaneous fixed vectors `∩ ker(A − I)` of a family of square matrices.
/// The empty family fixes the whole space, whose dimension is then unknown,
/// so the caller supplies it.
pub fn fixed_subspace(dim: usize, ops: &[RationalMatrix]) -> Result<Subspace, LinAlgError> {
    if ops.is_empty() {
        return Ok(Subspace::full(dim));
    }
    let id = RationalMatrix::identity(dim);
    let mut stacked: Vec<SparseRow> = Vec::new();
    for a in ops {
        if !a.is_square() {
            return Err(LinAlgError::NotSquare {
                rows: a.rows(),
                cols: a.cols(),
            });
        }
        if a.rows() != dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: dim,
                found: a.rows(),
            });
        }
        let shifted = a.try_sub(&id)?;
        stacked.extend((0..dim).map(|r| shifted.sparse_row(r).to_vec()));
    }
    let m = RationalMatrix::from_sparse_rows(dim, stacked);
    Ok(kernel(&m))
}

/// Whether `a` maps the subspace into itself.
pub fn is_invariant(s: &Subspace, a: &RationalMatrix) -> Result<bool, LinAlgError> {
    if !a.is_square() {
        return Err(LinAlgError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    if a.rows() != s.ambient_dim() {
        return Err(LinAlgError::DimensionMismatch {
            expected: s.ambient_dim(),
            found: a.rows(),
        });
    }
    for v in s.basis_vectors() {
        if !s.contains(&a.mul_vec(&v)?)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Some solution of `a·x = b`, or `None` when the system is inconsistent.
/// Free variables are set to zero.
pub fn solve(a: &RationalMatrix, b: &[Rational]) -> Result<Option<Vec<Rational>>, LinAlgError> {
    if b.len() != a.rows() {
        return Err(LinAlgError::DimensionMismatch {
            expected: a.rows(),
            found: b.len(),
        });
    }
    let n = a.cols();
    let augmented: Vec<SparseRow> = (0..a.rows())
        .map(|r| {
            let mut row = a.sparse_row(r).to_vec();
            if !num_traits::Zero::is_zero(&b[r]) {
                row.push((n, b[r].clone()));
            }
            row
        })
        .collect();
    let (reduced, rank) = rref(&RationalMatrix::from_sparse_rows(n + 1, augmented));
    let mut x = vec![<Rational as num_traits::Zero>::zero(); n];
    for r in 0..rank {
        let row = reduced.sparse_row(r);
        let pivot = row[0].0;
        if pivot == n {
            return Ok(None);
        }
        if let Some((c, v)) = row.last() {
            if *c == n {
                x[pivot] = v.clone();
            }
        }
    }
    Ok(Some(x))
}
