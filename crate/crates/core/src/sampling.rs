//! Seedable samplers for the property checks. Every sampler takes the RNG
//! by reference, so a fixed seed fixes the whole sample stream.

use num_traits::Zero;
use rand::seq::index::sample;
use rand::Rng;

use crate::confcoh::{ConfClass1, ConfSpaceModel};
use crate::exactla::{q, Rational, RationalMatrix, Subspace};
use crate::surface::SymplecticSpace;

/// Integer entries are drawn from `-ENTRY_BOUND..=ENTRY_BOUND`.
pub const ENTRY_BOUND: i64 = 3;

pub fn random_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Rational> {
    (0..dim)
        .map(|_| q(rng.random_range(-ENTRY_BOUND..=ENTRY_BOUND)))
        .collect()
}

pub fn random_nonzero_vector<R: Rng + ?Sized>(rng: &mut R, dim: usize) -> Vec<Rational> {
    loop {
        let v = random_vector(rng, dim);
        if v.iter().any(|c| !c.is_zero()) {
            return v;
        }
    }
}

pub fn random_class<R: Rng + ?Sized>(rng: &mut R, model: &ConfSpaceModel) -> ConfClass1 {
    model
        .from_coords(&random_vector(rng, model.h1_dim()))
        .expect("sized")
}

/// A crossing element with 2 or 3 nonzero blocks (capped by n).
pub fn random_crossing<R: Rng + ?Sized>(rng: &mut R, model: &ConfSpaceModel) -> ConfClass1 {
    let n = model.points();
    assert!(n >= 2, "crossing elements need at least two points");
    let count = rng.random_range(2..=3.min(n));
    let chosen = sample(rng, n, count);
    let d = model.space().dim();
    let mut blocks = vec![model.space().zero(); n];
    for i in chosen.iter() {
        blocks[i] = random_nonzero_vector(rng, d);
    }
    model.from_blocks(&blocks).expect("sized")
}

/// Product of `steps` transvections along random small integral vectors.
pub fn random_symplectic<R: Rng + ?Sized>(
    rng: &mut R,
    space: &SymplecticSpace,
    steps: usize,
) -> RationalMatrix {
    (0..steps).fold(RationalMatrix::identity(space.dim()), |acc, _| {
        let v: Vec<Rational> = (0..space.dim())
            .map(|_| q(rng.random_range(-1..=1)))
            .collect();
        let t = space.transvection(&v).expect("sized");
        &t * &acc
    })
}

/// An isotropic subspace of dimension `dim ≤ g` inside block `block`: the
/// image of span{a₁..a_dim} under a random symplectic matrix.
pub fn random_block_isotropic<R: Rng + ?Sized>(
    rng: &mut R,
    model: &ConfSpaceModel,
    block: usize,
    dim: usize,
) -> Subspace {
    let space = model.space();
    assert!(dim >= 1 && dim <= space.genus());
    let m = random_symplectic(rng, space, 6);
    let vectors: Vec<Vec<Rational>> = (1..=dim)
        .map(|k| {
            let image = m.mul_vec(&space.a(k)).expect("sized");
            model.in_block(block, &image).expect("block in range").coords().to_vec()
        })
        .collect();
    Subspace::span(model.h1_dim(), &vectors).expect("sized")
}
