use num_traits::Zero;

use super::matrix::SparseRow;
use super::rref::{null_basis, rref};
use super::{LinAlgError, RationalMatrix, Rational};

/// A linear subspace of ℚ^d stored by its canonical basis: the nonzero rows
/// of the reduced row-echelon form of any spanning set.
///
/// Two subspaces compare equal exactly when they are the same space.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    ambient_dim: usize,
    basis: RationalMatrix,
}

impl Subspace {
    pub fn zero(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::zeros(0, ambient_dim),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        Subspace {
            ambient_dim,
            basis: RationalMatrix::identity(ambient_dim),
        }
    }

    /// Row space of `m`.
    pub fn row_space(m: &RationalMatrix) -> Self {
        let (reduced, rank) = rref(m);
        let rows: Vec<SparseRow> = (0..rank).map(|r| reduced.sparse_row(r).to_vec()).collect();
        Subspace {
            ambient_dim: m.cols(),
            basis: RationalMatrix::from_sparse_rows(m.cols(), rows),
        }
    }

    pub fn span(ambient_dim: usize, vectors: &[Vec<Rational>]) -> Result<Self, LinAlgError> {
        let m = RationalMatrix::from_dense_rows(ambient_dim, vectors)?;
        Ok(Self::row_space(&m))
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }

    /// Canonical basis, one vector per row.
    pub fn basis(&self) -> &RationalMatrix {
        &self.basis
    }

    pub fn basis_vectors(&self) -> Vec<Vec<Rational>> {
        self.basis.to_dense()
    }

    fn check_dim(&self, found: usize) -> Result<(), LinAlgError> {
        if found != self.ambient_dim {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ambient_dim,
                found,
            });
        }
        Ok(())
    }

    /// Membership test by reduction against the canonical basis.
    pub fn contains(&self, v: &[Rational]) -> Result<bool, LinAlgError> {
        self.check_dim(v.len())?;
        let mut residual = v.to_vec();
        for r in 0..self.basis.rows() {
            let row = self.basis.sparse_row(r);
            let (pivot, _) = row[0];
            if residual[pivot].is_zero() {
                continue;
            }
            let coeff = residual[pivot].clone();
            for (c, x) in row {
                residual[*c] -= &coeff * x;
            }
        }
        Ok(residual.iter().all(Zero::is_zero))
    }

    pub fn contains_subspace(&self, other: &Subspace) -> Result<bool, LinAlgError> {
        self.check_dim(other.ambient_dim)?;
        for v in other.basis_vectors() {
            if !self.contains(&v)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn sum(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_dim(other.ambient_dim)?;
        let mut vectors = self.basis_vectors();
        vectors.extend(other.basis_vectors());
        Subspace::span(self.ambient_dim, &vectors)
    }

    /// Vectors `f` with `f · v = 0` for every `v` in the subspace.
    pub fn annihilator(&self) -> Subspace {
        if self.is_zero() {
            return Subspace::full(self.ambient_dim);
        }
        kernel(&self.basis)
    }

    pub fn intersection(&self, other: &Subspace) -> Result<Subspace, LinAlgError> {
        self.check_dim(other.ambient_dim)?;
        // U ∩ W = ann(ann U + ann W)
        let joint = self.annihilator().sum(&other.annihilator())?;
        Ok(joint.annihilator())
    }
}

/// `{v : m·v = 0}`.
pub fn kernel(m: &RationalMatrix) -> Subspace {
    let (reduced, _) = rref(m);
    let vectors = null_basis(&reduced);
    if vectors.is_empty() {
        return Subspace::zero(m.cols());
    }
    Subspace::span(m.cols(), &vectors).expect("null basis has ambient length")
}

/// Column space of `m`.
pub fn image(m: &RationalMatrix) -> Subspace {
    Subspace::row_space(&m.transpose())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::{q, qv};

    #[test]
    fn kernel_of_identity_is_zero() {
        assert_eq!(kernel(&RationalMatrix::identity(3)), Subspace::zero(3));
    }

    #[test]
    fn kernel_of_zero_is_everything() {
        assert_eq!(kernel(&RationalMatrix::zeros(2, 5)), Subspace::full(5));
    }

    #[test]
    fn kernel_of_row_sum() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 1]]);
        let k = kernel(&m);
        assert_eq!(k.dim(), 1);
        let v = qv(&[1, -1]);
        assert!(k.contains(&v).unwrap());
        assert_eq!(m.mul_vec(&v).unwrap(), qv(&[0]));
    }

    #[test]
    fn different_spanning_sets_compare_equal() {
        let a = Subspace::span(3, &[qv(&[1, 1, 0]), qv(&[0, 1, 1])]).unwrap();
        let b = Subspace::span(3, &[qv(&[1, 2, 1]), qv(&[2, 1, -1]), qv(&[1, 0, -1])]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn intersection_of_planes() {
        let xy = Subspace::span(3, &[qv(&[1, 0, 0]), qv(&[0, 1, 0])]).unwrap();
        let yz = Subspace::span(3, &[qv(&[0, 1, 0]), qv(&[0, 0, 1])]).unwrap();
        let y = Subspace::span(3, &[qv(&[0, 5, 0])]).unwrap();
        assert_eq!(xy.intersection(&yz).unwrap(), y);
        assert_eq!(xy.sum(&yz).unwrap(), Subspace::full(3));
    }

    #[test]
    fn membership() {
        let s = Subspace::span(3, &[qv(&[1, 2, 3])]).unwrap();
        assert!(s.contains(&[q(2), q(4), q(6)]).unwrap());
        assert!(!s.contains(&qv(&[1, 2, 4])).unwrap());
        assert!(s.contains(&qv(&[1, 2])).is_err());
    }

    #[test]
    fn image_of_projection() {
        let m = RationalMatrix::from_i64_rows(&[&[1, 0], &[0, 0]]);
        assert_eq!(image(&m), Subspace::span(2, &[qv(&[3, 0])]).unwrap());
    }
}
