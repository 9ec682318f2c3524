use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::matrix::{densify, sparsify, SparseRow};
use super::{RationalMatrix, Rational};

/// Matrices with density below this are reduced with the sparse kernel.
pub const SPARSE_DENSITY_THRESHOLD: f64 = 0.25;

/// Reduced row-echelon form and rank. The result has the same shape as the
/// input, with zero rows at the bottom.
pub fn rref(m: &RationalMatrix) -> (RationalMatrix, usize) {
    if m.density() < SPARSE_DENSITY_THRESHOLD {
        rref_sparse(m)
    } else {
        rref_dense(m)
    }
}

pub fn rank(m: &RationalMatrix) -> usize {
    rref(m).1
}

/// Gauss-Jordan on a dense copy.
pub fn rref_dense(m: &RationalMatrix) -> (RationalMatrix, usize) {
    let mut a = m.to_dense();
    let (rows, cols) = (m.rows(), m.cols());
    let mut pivot_row = 0;
    for col in 0..cols {
        if pivot_row == rows {
            break;
        }
        let Some(p) = (pivot_row..rows).find(|&r| !a[r][col].is_zero()) else {
            continue;
        };
        a.swap(p, pivot_row);
        let inv = a[pivot_row][col].recip();
        for v in a[pivot_row][col..].iter_mut() {
            *v *= &inv;
        }
        for r in 0..rows {
            if r == pivot_row || a[r][col].is_zero() {
                continue;
            }
            let factor = a[r][col].clone();
            for c in col..cols {
                if a[pivot_row][c].is_zero() {
                    continue;
                }
                let delta = &factor * &a[pivot_row][c];
                a[r][c] -= delta;
            }
        }
        pivot_row += 1;
    }
    let data: Vec<SparseRow> = a.iter().map(|row| sparsify(row)).collect();
    (RationalMatrix::from_sparse_rows(cols, data), pivot_row)
}

/// Row-by-row echelon insertion followed by back substitution, never
/// materializing dense rows.
pub fn rref_sparse(m: &RationalMatrix) -> (RationalMatrix, usize) {
    let mut pivots: BTreeMap<usize, SparseRow> = BTreeMap::new();
    for r in 0..m.rows() {
        let mut row: SparseRow = m.sparse_row(r).to_vec();
        while let Some((lead, coeff)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(p) => row = axpy(&row, &-coeff, p),
                None => break,
            }
        }
        if let Some((lead, coeff)) = row.first().cloned() {
            let inv = coeff.recip();
            for (_, v) in row.iter_mut() {
                *v *= &inv;
            }
            pivots.insert(lead, row);
        }
    }

    // Back substitution, largest pivot first: each processed row is already
    // clear of every larger pivot column.
    let pivot_cols: Vec<usize> = pivots.keys().copied().collect();
    for (idx, &pc) in pivot_cols.iter().enumerate().rev() {
        let prow = pivots[&pc].clone();
        for &other in &pivot_cols[..idx] {
            let target = pivots.get_mut(&other).unwrap();
            if let Ok(pos) = target.binary_search_by_key(&pc, |(c, _)| *c) {
                let coeff = target[pos].1.clone();
                *target = axpy(target, &-coeff, &prow);
            }
        }
    }

    let rank = pivots.len();
    let mut data: Vec<SparseRow> = pivots.into_values().collect();
    data.resize(m.rows(), Vec::new());
    (RationalMatrix::from_sparse_rows(m.cols(), data), rank)
}

/// `x + k * y` on sorted sparse rows.
fn axpy(x: &[(usize, Rational)], k: &Rational, y: &[(usize, Rational)]) -> SparseRow {
    let mut out = Vec::with_capacity(x.len() + y.len());
    let (mut i, mut j) = (0, 0);
    while i < x.len() || j < y.len() {
        let take_x = j == y.len() || (i < x.len() && x[i].0 < y[j].0);
        let take_y = i == x.len() || (j < y.len() && y[j].0 < x[i].0);
        if take_x {
            out.push(x[i].clone());
            i += 1;
        } else if take_y {
            out.push((y[j].0, k * &y[j].1));
            j += 1;
        } else {
            let v = &x[i].1 + k * &y[j].1;
            if !v.is_zero() {
                out.push((x[i].0, v));
            }
            i += 1;
            j += 1;
        }
    }
    out
}

/// Pivot columns of a matrix already in reduced row-echelon form.
pub(crate) fn pivot_columns(reduced: &RationalMatrix) -> Vec<usize> {
    (0..reduced.rows())
        .filter_map(|r| reduced.sparse_row(r).first().map(|(c, _)| *c))
        .collect()
}

/// Basis of the null space of a reduced matrix, one vector per free column.
pub(crate) fn null_basis(reduced: &RationalMatrix) -> Vec<Vec<Rational>> {
    let cols = reduced.cols();
    let pivots = pivot_columns(reduced);
    let mut is_pivot = vec![false; cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    let pivot_rows: Vec<Vec<Rational>> = (0..pivots.len())
        .map(|r| densify(reduced.sparse_row(r), cols))
        .collect();
    (0..cols)
        .filter(|&c| !is_pivot[c])
        .map(|free| {
            let mut v = vec![Rational::zero(); cols];
            v[free] = Rational::one();
            for (row, &p) in pivot_rows.iter().zip(&pivots) {
                v[p] = -row[free].clone();
            }
            v
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_is_fixed() {
        let id = RationalMatrix::identity(2);
        assert_eq!(rref(&id), (id.clone(), 2));
    }

    #[test]
    fn zero_matrix_has_rank_zero() {
        let z = RationalMatrix::zeros(3, 4);
        assert_eq!(rref(&z), (z.clone(), 0));
    }

    #[test]
    fn rank_one_two_by_two() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 4], &[1, 2]]);
        let expected = RationalMatrix::from_i64_rows(&[&[1, 2], &[0, 0]]);
        assert_eq!(rref_dense(&m), (expected.clone(), 1));
        assert_eq!(rref_sparse(&m), (expected, 1));
    }

    #[test]
    fn kernels_agree_on_wide_matrix() {
        let m = RationalMatrix::from_i64_rows(&[
            &[0, 0, 3, 0, 1, 0],
            &[1, 0, 0, 0, 0, 2],
            &[2, 0, 3, 0, 1, 4],
            &[0, 5, 0, 0, 0, 0],
        ]);
        assert_eq!(rref_dense(&m), rref_sparse(&m));
        assert_eq!(rref(&m).1, 3);
    }

    #[test]
    fn input_is_unmodified() {
        let m = RationalMatrix::from_i64_rows(&[&[2, 4], &[1, 3]]);
        let before = m.clone();
        let _ = rref(&m);
        assert_eq!(m, before);
    }
}
