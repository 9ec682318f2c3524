//! ∧³H inside Hom(H, ∧²H/ℚω) and the quotient by the copy of H, which is
//! where the Johnson homomorphism of a closed surface takes its values.
//!
//! The embedding is the contraction
//! `(x∧y∧z)(c) = ⟨x,c⟩ y∧z + ⟨y,c⟩ z∧x + ⟨z,c⟩ x∧y  (mod ω)`,
//! and H sits inside via `h ↦ contract(h∧ω)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::exactla::{solve, LinAlgError, Rational, RationalMatrix, Subspace};
use crate::surface::{SymplecticSpace, WedgeThree, WedgeTwo, WedgeTwoModOmega};
use crate::Result;

/// A linear map H → ∧²H/ℚω. Row r holds the quotient coordinates of the
/// image of the r-th basis vector.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct HomSpaceElement {
    space: SymplecticSpace,
    matrix: RationalMatrix,
}

impl HomSpaceElement {
    pub fn zero(space: &SymplecticSpace) -> Self {
        HomSpaceElement {
            space: *space,
            matrix: RationalMatrix::zeros(space.dim(), space.wedge2_dim() - 1),
        }
    }

    pub fn matrix(&self) -> &RationalMatrix {
        &self.matrix
    }

    pub fn is_zero(&self) -> bool {
        self.matrix.is_zero()
    }

    pub fn evaluate(&self, c: &[Rational]) -> Result<WedgeTwoModOmega> {
        if c.len() != self.space.dim() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.space.dim(),
                found: c.len(),
            }
            .into());
        }
        let coords = self.matrix.transpose().mul_vec(c)?;
        self.space.mod_omega_from_quotient_coords(&coords)
    }

    /// Row-major flattening, the coordinates used for subspace computations.
    pub fn flatten(&self) -> Vec<Rational> {
        (0..self.matrix.rows()).flat_map(|r| self.matrix.row(r)).collect()
    }

    pub fn flat_dim(space: &SymplecticSpace) -> usize {
        space.dim() * (space.wedge2_dim() - 1)
    }
}

/// e_s ∧ e_t as a WedgeTwo, for any s ≠ t.
fn basis_wedge(space: &SymplecticSpace, s: usize, t: usize, coeff: &Rational, out: &mut [Rational]) {
    if s < t {
        out[space.pair_index(s, t)] += coeff;
    } else {
        out[space.pair_index(t, s)] -= coeff;
    }
}

pub fn contract(space: &SymplecticSpace, xi: &WedgeThree) -> Result<HomSpaceElement> {
    if xi.genus() != space.genus() {
        return Err(LinAlgError::DimensionMismatch {
            expected: space.wedge3_dim(),
            found: xi.coords().len(),
        }
        .into());
    }
    let d = space.dim();
    let triples = space.triples();
    let mut rows = Vec::with_capacity(d);
    for r in 0..d {
        let c = space.basis_vector(r);
        let mut value = vec![Rational::zero(); space.wedge2_dim()];
        for (coeff, &(s, t, u)) in xi.coords().iter().zip(&triples) {
            if coeff.is_zero() {
                continue;
            }
            let ps = space.pairing_unchecked(&space.basis_vector(s), &c);
            let pt = space.pairing_unchecked(&space.basis_vector(t), &c);
            let pu = space.pairing_unchecked(&space.basis_vector(u), &c);
            if !ps.is_zero() {
                basis_wedge(space, t, u, &(coeff * ps), &mut value);
            }
            if !pt.is_zero() {
                basis_wedge(space, u, s, &(coeff * pt), &mut value);
            }
            if !pu.is_zero() {
                basis_wedge(space, s, t, &(coeff * pu), &mut value);
            }
        }
        let w = WedgeTwo::from_coords(space.genus(), value)?;
        rows.push(space.mod_omega(&w).quotient_coords());
    }
    Ok(HomSpaceElement {
        space: *space,
        matrix: RationalMatrix::from_dense_rows(space.wedge2_dim() - 1, &rows)?,
    })
}

/// h ∧ ω.
pub fn wedge_with_omega(space: &SymplecticSpace, h: &[Rational]) -> Result<WedgeThree> {
    (1..=space.genus()).try_fold(WedgeThree::zero(space.genus()), |acc, k| {
        Ok(acc.add(&space.wedge3(h, &space.a(k), &space.b(k))?))
    })
}

/// contract(h ∧ ω), the copy of H divided out of ∧³H.
pub fn embed_h(space: &SymplecticSpace, h: &[Rational]) -> Result<HomSpaceElement> {
    contract(space, &wedge_with_omega(space, h)?)
}

fn basis_triple(space: &SymplecticSpace, index: usize) -> WedgeThree {
    let mut coords = vec![Rational::zero(); space.wedge3_dim()];
    coords[index] = Rational::one();
    WedgeThree::from_coords(space.genus(), coords).expect("sized")
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct JohnsonImage {
    pub genus: usize,
    /// span{contract(ξ) : ξ ∈ ∧³H} in flattened Hom coordinates.
    pub image: Subspace,
    /// span{embed_h(h) : h ∈ H}.
    pub h_copy: Subspace,
    /// dim ∧³H − dim image.
    pub contraction_kernel_dim: usize,
}

impl JohnsonImage {
    /// dim image − dim H-copy, the dimension of ∧³H/H.
    pub fn quotient_dim(&self) -> usize {
        self.image.dim() - self.h_copy.dim()
    }
}

pub fn johnson_image(genus: usize) -> Result<JohnsonImage> {
    let space = SymplecticSpace::new(genus)?;
    let flat = HomSpaceElement::flat_dim(&space);
    let contractions: Vec<Vec<Rational>> = (0..space.wedge3_dim())
        .map(|i| contract(&space, &basis_triple(&space, i)).map(|e| e.flatten()))
        .collect::<Result<_>>()?;
    let image = Subspace::span(flat, &contractions)?;
    let copies: Vec<Vec<Rational>> = (0..space.dim())
        .map(|i| embed_h(&space, &space.basis_vector(i)).map(|e| e.flatten()))
        .collect::<Result<_>>()?;
    let h_copy = Subspace::span(flat, &copies)?;
    Ok(JohnsonImage {
        genus,
        contraction_kernel_dim: space.wedge3_dim() - image.dim(),
        image,
        h_copy,
    })
}

/// An element of ∧³H realizing a prescribed value, with denominators cleared.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauWitness {
    pub xi: WedgeThree,
    /// `scale · xi` has these integer coordinates.
    pub integral: Vec<BigInt>,
    pub scale: BigInt,
}

/// Linear map ξ ↦ contract(ξ)(v), as a (C(2g,2) − 1) × C(2g,3) matrix.
fn evaluation_matrix(space: &SymplecticSpace, v: &[Rational]) -> Result<RationalMatrix> {
    let columns: Vec<Vec<Rational>> = (0..space.wedge3_dim())
        .map(|i| {
            contract(space, &basis_triple(space, i))
                .and_then(|e| e.evaluate(v))
                .map(|w| w.quotient_coords())
        })
        .collect::<Result<_>>()?;
    Ok(RationalMatrix::from_columns(space.wedge2_dim() - 1, &columns)?)
}

/// Some ξ ∈ ∧³H with contract(ξ)(v) = target in ∧²H/ℚω, if one exists.
pub fn tau_witness(
    genus: usize,
    target_vector: &[Rational],
    target_value: &WedgeTwo,
) -> Result<Option<TauWitness>> {
    let space = SymplecticSpace::new(genus)?;
    if target_vector.len() != space.dim() {
        return Err(LinAlgError::DimensionMismatch {
            expected: space.dim(),
            found: target_vector.len(),
        }
        .into());
    }
    let a = evaluation_matrix(&space, target_vector)?;
    let b = space.mod_omega(target_value).quotient_coords();
    let Some(solution) = solve(&a, &b)? else {
        return Ok(None);
    };
    let scale = solution
        .iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let integral = solution
        .iter()
        .map(|x| (x * Rational::from_integer(scale.clone())).to_integer())
        .collect();
    Ok(Some(TauWitness {
        xi: WedgeThree::from_coords(genus, solution)?,
        integral,
        scale,
    }))
}

/// Whether some element of the image of ∧³H takes `target_vector` to
/// `target_value` modulo ω.
pub fn tau_hits(genus: usize, target_vector: &[Rational], target_value: &WedgeTwo) -> Result<bool> {
    Ok(tau_witness(genus, target_vector, target_value)?.is_some())
}
