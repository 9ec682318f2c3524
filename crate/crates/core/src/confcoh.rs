//! First cohomology of PConf_n(S_g), modeled as ⊕ᵢ H¹ᵢ with H¹ᵢ = pᵢ*H¹(S_g),
//! and the image of the cup product in H².
//!
//! The presented H² has ambient basis
//! `{pᵢ*[S_g]} ∪ {eᵢ_s ⊗ eⱼ_t : i < j}` and is cut down by the relations
//! `R_{i,j} = pᵢ*[S_g] + pⱼ*[S_g] ∓ M_{i,j}` with
//! `M_{i,j} = Σ_k pᵢ*a_k ⊗ pⱼ*b_k − pᵢ*b_k ⊗ pⱼ*a_k`.
//! Only slots with i < j are stored; a cross term landing in slot (j, i) is
//! folded into (i, j) with the sign from graded commutativity.

use num_traits::{One, Zero};

use crate::exactla::{
    fixed_subspace, is_invariant, kernel, rref, LinAlgError, Rational, RationalMatrix, Subspace,
};
use crate::surface::{pair_index, SymplecticSpace};
use crate::{binomial, Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ConfSpaceModel {
    space: SymplecticSpace,
    points: usize,
}

impl ConfSpaceModel {
    pub fn new(genus: usize, points: usize) -> Result<Self> {
        let space = SymplecticSpace::new(genus)?;
        if points < 1 {
            return Err(Error::TooFewPoints { min: 1, found: points });
        }
        Ok(ConfSpaceModel { space, points })
    }

    pub fn genus(&self) -> usize {
        self.space.genus()
    }

    pub fn points(&self) -> usize {
        self.points
    }

    pub fn space(&self) -> &SymplecticSpace {
        &self.space
    }

    /// dim H¹ = 2gn.
    pub fn h1_dim(&self) -> usize {
        self.space.dim() * self.points
    }

    pub fn slot_count(&self) -> usize {
        binomial(self.points, 2)
    }

    fn slot_size(&self) -> usize {
        self.space.dim() * self.space.dim()
    }

    /// n + C(n,2)(2g)².
    pub fn ambient_dim(&self) -> usize {
        self.points + self.slot_count() * self.slot_size()
    }

    /// Ambient index of pᵢ*[S_g] (0-based point).
    pub fn fundamental_index(&self, i: usize) -> usize {
        assert!(i < self.points);
        i
    }

    /// Ambient index of eᵢ_s ⊗ eⱼ_t for 0-based points i < j.
    pub fn tensor_index(&self, i: usize, j: usize, s: usize, t: usize) -> usize {
        let d = self.space.dim();
        assert!(s < d && t < d);
        self.points + pair_index(self.points, i, j) * self.slot_size() + s * d + t
    }

    /// Coordinates of the tensor slot (i, j), as a (2g)² vector.
    pub fn slot(&self, v: &[Rational], i: usize, j: usize) -> Vec<Rational> {
        let start = self.tensor_index(i, j, 0, 0);
        v[start..start + self.slot_size()].to_vec()
    }

    /// M_{i,j} placed in slot (i, j) of the ambient space.
    pub fn m_tensor(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.ambient_dim()];
        for k in 1..=self.genus() {
            let (a, b) = (self.space.a_index(k), self.space.b_index(k));
            v[self.tensor_index(i, j, a, b)] = Rational::one();
            v[self.tensor_index(i, j, b, a)] = -Rational::one();
        }
        v
    }

    pub fn zero_class(&self) -> ConfClass1 {
        ConfClass1 {
            genus: self.genus(),
            points: self.points,
            coords: vec![Rational::zero(); self.h1_dim()],
        }
    }

    /// x placed in block i (0-based), zero elsewhere.
    pub fn in_block(&self, i: usize, x: &[Rational]) -> Result<ConfClass1> {
        let mut blocks = vec![self.space.zero(); self.points];
        if i >= self.points {
            return Err(Error::ModelMismatch(format!("block {i} out of range")));
        }
        blocks[i] = x.to_vec();
        self.from_blocks(&blocks)
    }

    pub fn from_blocks(&self, blocks: &[Vec<Rational>]) -> Result<ConfClass1> {
        if blocks.len() != self.points {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.points,
                found: blocks.len(),
            }
            .into());
        }
        let mut coords = Vec::with_capacity(self.h1_dim());
        for b in blocks {
            if b.len() != self.space.dim() {
                return Err(LinAlgError::DimensionMismatch {
                    expected: self.space.dim(),
                    found: b.len(),
                }
                .into());
            }
            coords.extend_from_slice(b);
        }
        Ok(ConfClass1 {
            genus: self.genus(),
            points: self.points,
            coords,
        })
    }

    pub fn from_coords(&self, coords: &[Rational]) -> Result<ConfClass1> {
        if coords.len() != self.h1_dim() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.h1_dim(),
                found: coords.len(),
            }
            .into());
        }
        Ok(ConfClass1 {
            genus: self.genus(),
            points: self.points,
            coords: coords.to_vec(),
        })
    }

    pub fn basis_class(&self, index: usize) -> ConfClass1 {
        let mut c = self.zero_class();
        c.coords[index] = Rational::one();
        c
    }

    /// The diagonal {(x, x, …, x)}.
    pub fn diagonal_subspace(&self) -> Subspace {
        let vectors: Vec<Vec<Rational>> = (0..self.space.dim())
            .map(|s| {
                let e = self.space.basis_vector(s);
                self.from_blocks(&vec![e; self.points]).unwrap().coords
            })
            .collect();
        Subspace::span(self.h1_dim(), &vectors).expect("diagonal vectors fit")
    }

    /// Block permutation swapping points i and i+1.
    pub fn adjacent_transposition(&self, i: usize) -> RationalMatrix {
        assert!(i + 1 < self.points);
        let d = self.space.dim();
        let n = self.h1_dim();
        let columns: Vec<Vec<Rational>> = (0..n)
            .map(|c| {
                let (block, offset) = (c / d, c % d);
                let target = match block {
                    b if b == i => i + 1,
                    b if b == i + 1 => i,
                    b => b,
                };
                let mut col = vec![Rational::zero(); n];
                col[target * d + offset] = Rational::one();
                col
            })
            .collect();
        RationalMatrix::from_columns(n, &columns).expect("square")
    }

    /// The same matrix acting on every block.
    pub fn diagonal_action(&self, m: &RationalMatrix) -> RationalMatrix {
        m.block_diagonal(self.points)
    }
}

/// An element of H¹(PConf_n(S_g)) = ⊕ᵢ H¹ᵢ, as n consecutive blocks of 2g
/// coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ConfClass1 {
    genus: usize,
    points: usize,
    coords: Vec<Rational>,
}

impl ConfClass1 {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn block(&self, i: usize) -> &[Rational] {
        let d = 2 * self.genus;
        &self.coords[i * d..(i + 1) * d]
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn nonzero_blocks(&self) -> usize {
        (0..self.points)
            .filter(|&i| self.block(i).iter().any(|c| !c.is_zero()))
            .count()
    }

    pub fn scale(&self, k: &Rational) -> ConfClass1 {
        ConfClass1 {
            genus: self.genus,
            points: self.points,
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }

    pub fn add(&self, other: &ConfClass1) -> ConfClass1 {
        assert_eq!((self.genus, self.points), (other.genus, other.points));
        ConfClass1 {
            genus: self.genus,
            points: self.points,
            coords: self.coords.iter().zip(&other.coords).map(|(a, b)| a + b).collect(),
        }
    }
}

/// At least two blocks are nonzero.
pub fn is_crossing(x: &ConfClass1) -> bool {
    x.nonzero_blocks() > 1
}

/// Sign in front of M_{i,j} in R_{i,j}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RelationSign {
    /// pᵢ*[S_g] + pⱼ*[S_g] − M_{i,j}
    #[default]
    Minus,
    /// pᵢ*[S_g] + pⱼ*[S_g] + M_{i,j}
    Plus,
}

/// The ambient space of the cup-product image together with the relation
/// subspace span{R_{i,j}} and its reduced basis.
#[derive(Debug, Clone)]
pub struct H2Presentation {
    model: ConfSpaceModel,
    sign: RelationSign,
    relations: RationalMatrix,
    reduced: RationalMatrix,
    relation_rank: usize,
}

/// A class of the cup-product image, held as its representative reduced
/// modulo the relations (zero on every relation pivot coordinate).
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct H2Class {
    coords: Vec<Rational>,
}

impl H2Class {
    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

/// Builds every R_{i,j}, i < j.
pub fn relations(model: &ConfSpaceModel, sign: RelationSign) -> H2Presentation {
    let n = model.points();
    let mut rows = Vec::with_capacity(model.slot_count());
    for i in 0..n {
        for j in i + 1..n {
            let mut r = model.m_tensor(i, j);
            if sign == RelationSign::Minus {
                for c in r.iter_mut() {
                    *c = -c.clone();
                }
            }
            r[model.fundamental_index(i)] = Rational::one();
            r[model.fundamental_index(j)] = Rational::one();
            rows.push(r);
        }
    }
    let relations =
        RationalMatrix::from_dense_rows(model.ambient_dim(), &rows).expect("relation rows fit");
    let (full, relation_rank) = rref(&relations);
    let kept: Vec<Vec<Rational>> = (0..relation_rank).map(|r| full.row(r)).collect();
    let reduced = RationalMatrix::from_dense_rows(model.ambient_dim(), &kept).expect("fits");
    H2Presentation {
        model: *model,
        sign,
        relations,
        reduced,
        relation_rank,
    }
}

impl H2Presentation {
    pub fn model(&self) -> &ConfSpaceModel {
        &self.model
    }

    pub fn sign(&self) -> RelationSign {
        self.sign
    }

    /// One row per R_{i,j}, pairs in lexicographic order.
    pub fn relation_matrix(&self) -> &RationalMatrix {
        &self.relations
    }

    pub fn relation_rank(&self) -> usize {
        self.relation_rank
    }

    /// Whether the relations are linearly independent (rank C(n,2)).
    pub fn relations_independent(&self) -> bool {
        self.relation_rank == self.model.slot_count()
    }

    pub fn ambient_dim(&self) -> usize {
        self.model.ambient_dim()
    }

    /// Canonical representative of v modulo span{R_{i,j}}.
    pub fn reduce(&self, v: &[Rational]) -> Result<H2Class> {
        if v.len() != self.ambient_dim() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.ambient_dim(),
                found: v.len(),
            }
            .into());
        }
        let mut coords = v.to_vec();
        for r in 0..self.reduced.rows() {
            let row = self.reduced.sparse_row(r);
            let pivot = row[0].0;
            if coords[pivot].is_zero() {
                continue;
            }
            let coeff = coords[pivot].clone();
            for (c, x) in row {
                coords[*c] -= &coeff * x;
            }
        }
        Ok(H2Class { coords })
    }

    fn check_class(&self, x: &ConfClass1) -> Result<()> {
        if x.genus != self.model.genus() || x.points != self.model.points() {
            return Err(Error::ModelMismatch(format!(
                "class from (g={}, n={}) used with (g={}, n={})",
                x.genus,
                x.points,
                self.model.genus(),
                self.model.points()
            )));
        }
        Ok(())
    }

    /// x ∪ y in the ambient basis, before reduction.
    pub fn cup_ambient(&self, x: &ConfClass1, y: &ConfClass1) -> Result<Vec<Rational>> {
        self.check_class(x)?;
        self.check_class(y)?;
        let model = &self.model;
        let space = model.space();
        let d = space.dim();
        let n = model.points();
        let mut out = vec![Rational::zero(); model.ambient_dim()];
        for i in 0..n {
            out[model.fundamental_index(i)] = space.pairing_unchecked(x.block(i), y.block(i));
        }
        for i in 0..n {
            for j in i + 1..n {
                let (xi, xj, yi, yj) = (x.block(i), x.block(j), y.block(i), y.block(j));
                let base = model.tensor_index(i, j, 0, 0);
                for s in 0..d {
                    for t in 0..d {
                        let v = &xi[s] * &yj[t] - &yi[s] * &xj[t];
                        if !v.is_zero() {
                            out[base + s * d + t] = v;
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn cup(&self, x: &ConfClass1, y: &ConfClass1) -> Result<H2Class> {
        let v = self.cup_ambient(x, y)?;
        self.reduce(&v)
    }

    /// Matrix of y ↦ cup(x, y) into reduced ambient coordinates.
    pub fn cup_matrix(&self, x: &ConfClass1) -> Result<RationalMatrix> {
        self.check_class(x)?;
        let columns: Vec<Vec<Rational>> = (0..self.model.h1_dim())
            .map(|k| self.cup(x, &self.model.basis_class(k)).map(|c| c.coords))
            .collect::<Result<_>>()?;
        Ok(RationalMatrix::from_columns(self.ambient_dim(), &columns)?)
    }

    /// {y : x ∪ y = 0}. For x = 0 this is the whole of H¹.
    pub fn annihilator(&self, x: &ConfClass1) -> Result<Subspace> {
        if x.is_zero() {
            self.check_class(x)?;
            return Ok(Subspace::full(self.model.h1_dim()));
        }
        Ok(kernel(&self.cup_matrix(x)?))
    }

    /// Rank of the span of all cup products of basis pairs, in the quotient.
    pub fn image_rank(&self) -> usize {
        let dim = self.model.h1_dim();
        let mut rows = Vec::with_capacity(dim * (dim - 1) / 2);
        for a in 0..dim {
            for b in a + 1..dim {
                let c = self
                    .cup(&self.model.basis_class(a), &self.model.basis_class(b))
                    .expect("basis classes belong to the model");
                rows.push(c.coords);
            }
        }
        let m = RationalMatrix::from_dense_rows(self.ambient_dim(), &rows).expect("fits");
        crate::exactla::rank(&m)
    }

    /// Whether cup vanishes on every pair from the basis of `s`.
    pub fn is_isotropic(&self, s: &Subspace) -> Result<bool> {
        if s.ambient_dim() != self.model.h1_dim() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.model.h1_dim(),
                found: s.ambient_dim(),
            }
            .into());
        }
        let basis: Vec<ConfClass1> = s
            .basis_vectors()
            .iter()
            .map(|v| self.model.from_coords(v))
            .collect::<Result<_>>()?;
        for (a, u) in basis.iter().enumerate() {
            for v in &basis[a + 1..] {
                if !self.cup(u, v)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }
}

/// Closed form n + C(n,2)((2g)² − 1) for the rank of the cup-product image.
pub fn image_rank_formula(genus: usize, points: usize) -> usize {
    let pairs = binomial(points, 2);
    pairs * (2 * genus) * (2 * genus) + points - pairs
}

/// The Σ_n-invariant subspace of H¹, as the common fixed space of the
/// adjacent transpositions of the points.
pub fn sym_invariants(model: &ConfSpaceModel) -> Result<Subspace> {
    if model.points() < 2 {
        return Err(Error::TooFewPoints {
            min: 2,
            found: model.points(),
        });
    }
    let ops: Vec<RationalMatrix> = (0..model.points() - 1)
        .map(|i| model.adjacent_transposition(i))
        .collect();
    Ok(fixed_subspace(model.h1_dim(), &ops)?)
}

/// Index into `space().transvections()` of the first transvection whose
/// diagonal action does not preserve `s`, or `None` if every one does.
pub fn find_moving_transvection(s: &Subspace, model: &ConfSpaceModel) -> Result<Option<usize>> {
    if s.is_zero() {
        return Err(Error::ZeroSubspace);
    }
    for (idx, t) in model.space().transvections().iter().enumerate() {
        if !is_invariant(s, &model.diagonal_action(&t.matrix))? {
            return Ok(Some(idx));
        }
    }
    Ok(None)
}

/// Genus r of a connected n-sheeted cover of S_g: 2 − 2r = n(2 − 2g).
pub fn cover_genus(genus: usize, sheets: usize) -> Result<usize> {
    if genus < 2 {
        return Err(Error::GenusTooSmall(genus));
    }
    if sheets < 1 {
        return Err(Error::TooFewPoints { min: 1, found: sheets });
    }
    Ok(sheets * (genus - 1) + 1)
}
