//! Reduced words in the free group F_h, commutators, abelianization and the
//! class of a word in the 2-step nilpotent quotient F_h / γ₃F_h.
//!
//! Commutators are `[u, v] = u v u⁻¹ v⁻¹`.
//!
//! A class in F_h / γ₃ is written in collected form
//! `x₁^{e₁} ⋯ x_h^{e_h} · ∏_{s<t} [x_s, x_t]^{c_{st}}`; the pair `(e, c)` is a
//! [`NilClass2`]. Collection gives the product rule
//! `(e, c)·(f, d) = (e + f, c + d + β(e, f))` with
//! `β(e, f)_{st} = −e_t f_s` for `s < t`.

use std::fmt;

use crate::exactla::{q, Rational};
use crate::surface::{SymplecticSpace, WedgeTwo, WedgeTwoModOmega};
use crate::{binomial, Error, Result};

/// A generator or its inverse. `generator` is 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Letter {
    pub generator: usize,
    pub inverse: bool,
}

impl Letter {
    pub fn new(generator: usize, inverse: bool) -> Self {
        Letter { generator, inverse }
    }

    pub fn inv(self) -> Self {
        Letter {
            generator: self.generator,
            inverse: !self.inverse,
        }
    }

    pub fn exponent(self) -> i64 {
        if self.inverse {
            -1
        } else {
            1
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct FreeWord {
    rank: usize,
    letters: Vec<Letter>,
}

impl FreeWord {
    pub fn identity(rank: usize) -> Self {
        FreeWord {
            rank,
            letters: Vec::new(),
        }
    }

    /// x_i for a 1-based generator index.
    pub fn generator(rank: usize, i: usize) -> Result<Self> {
        if i == 0 || i > rank {
            return Err(Error::GeneratorOutOfRange { index: i, rank });
        }
        Ok(FreeWord {
            rank,
            letters: vec![Letter::new(i - 1, false)],
        })
    }

    /// Freely reduces a raw letter sequence.
    pub fn reduce(rank: usize, letters: &[Letter]) -> Result<Self> {
        let mut stack: Vec<Letter> = Vec::with_capacity(letters.len());
        for &l in letters {
            if l.generator >= rank {
                return Err(Error::GeneratorOutOfRange {
                    index: l.generator + 1,
                    rank,
                });
            }
            if stack.last() == Some(&l.inv()) {
                stack.pop();
            } else {
                stack.push(l);
            }
        }
        Ok(FreeWord {
            rank,
            letters: stack,
        })
    }

    /// Parses signed 1-based indices: `[1, -2]` is x₁x₂⁻¹.
    pub fn from_signed(rank: usize, letters: &[i64]) -> Result<Self> {
        let raw: Vec<Letter> = letters
            .iter()
            .map(|&l| {
                if l == 0 {
                    Err(Error::GeneratorOutOfRange { index: 0, rank })
                } else {
                    Ok(Letter::new(l.unsigned_abs() as usize - 1, l < 0))
                }
            })
            .collect::<Result<_>>()?;
        Self::reduce(rank, &raw)
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn letters(&self) -> &[Letter] {
        &self.letters
    }

    pub fn len(&self) -> usize {
        self.letters.len()
    }

    pub fn is_empty(&self) -> bool {
        self.letters.is_empty()
    }

    pub fn is_identity(&self) -> bool {
        self.letters.is_empty()
    }

    fn same_rank(&self, other: &FreeWord) -> Result<()> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        Ok(())
    }

    pub fn mul(&self, other: &FreeWord) -> Result<FreeWord> {
        self.same_rank(other)?;
        let mut all = self.letters.clone();
        all.extend_from_slice(&other.letters);
        FreeWord::reduce(self.rank, &all)
    }

    pub fn inverse(&self) -> FreeWord {
        FreeWord {
            rank: self.rank,
            letters: self.letters.iter().rev().map(|l| l.inv()).collect(),
        }
    }

    /// Exponent-sum vector in ℤ^h.
    pub fn abelianize(&self) -> Vec<i64> {
        let mut out = vec![0; self.rank];
        for l in &self.letters {
            out[l.generator] += l.exponent();
        }
        out
    }
}

impl fmt::Display for FreeWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.letters.is_empty() {
            return write!(f, "1");
        }
        for l in &self.letters {
            if l.inverse {
                write!(f, "x{}^-1", l.generator + 1)?;
            } else {
                write!(f, "x{}", l.generator + 1)?;
            }
        }
        Ok(())
    }
}

/// `[u, v] = u v u⁻¹ v⁻¹`, reduced.
pub fn commutator(u: &FreeWord, v: &FreeWord) -> Result<FreeWord> {
    u.same_rank(v)?;
    let mut all = Vec::with_capacity(2 * (u.len() + v.len()));
    all.extend_from_slice(&u.letters);
    all.extend_from_slice(&v.letters);
    all.extend(u.inverse().letters);
    all.extend(v.inverse().letters);
    FreeWord::reduce(u.rank, &all)
}

/// Class of a word in F_h / γ₃F_h, in collected coordinates.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NilClass2 {
    rank: usize,
    abelian: Vec<i64>,
    /// Exponents of [x_s, x_t], s < t, in lexicographic order.
    commutator: Vec<i64>,
}

impl NilClass2 {
    pub fn identity(rank: usize) -> Self {
        NilClass2 {
            rank,
            abelian: vec![0; rank],
            commutator: vec![0; binomial(rank, 2)],
        }
    }

    pub fn from_parts(rank: usize, abelian: Vec<i64>, commutator: Vec<i64>) -> Result<Self> {
        if abelian.len() != rank {
            return Err(Error::RankMismatch(rank, abelian.len()));
        }
        if commutator.len() != binomial(rank, 2) {
            return Err(Error::RankMismatch(binomial(rank, 2), commutator.len()));
        }
        Ok(NilClass2 {
            rank,
            abelian,
            commutator,
        })
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn abelian(&self) -> &[i64] {
        &self.abelian
    }

    pub fn commutator_part(&self) -> &[i64] {
        &self.commutator
    }

    pub fn commutator_coeff(&self, s: usize, t: usize) -> i64 {
        assert!(s < t && t < self.rank);
        self.commutator[crate::surface::pair_index(self.rank, s, t)]
    }

    pub fn is_identity(&self) -> bool {
        self.abelian.iter().all(|&e| e == 0) && self.commutator.iter().all(|&c| c == 0)
    }

    /// Group law in collected coordinates.
    pub fn mul(&self, other: &NilClass2) -> Result<NilClass2> {
        if self.rank != other.rank {
            return Err(Error::RankMismatch(self.rank, other.rank));
        }
        let h = self.rank;
        let abelian = self
            .abelian
            .iter()
            .zip(&other.abelian)
            .map(|(a, b)| a + b)
            .collect();
        let mut commutator: Vec<i64> = self
            .commutator
            .iter()
            .zip(&other.commutator)
            .map(|(a, b)| a + b)
            .collect();
        let mut idx = 0;
        for s in 0..h {
            for t in s + 1..h {
                commutator[idx] -= self.abelian[t] * other.abelian[s];
                idx += 1;
            }
        }
        Ok(NilClass2 {
            rank: h,
            abelian,
            commutator,
        })
    }

    /// Commutator part as a vector of ∧²ℚ^h.
    pub fn commutator_rational(&self) -> Vec<Rational> {
        self.commutator.iter().map(|&c| q(c)).collect()
    }
}

/// Class of `w` in F_h / γ₃F_h.
///
/// Computed from the Magnus expansion x ↦ 1 + X truncated at degree 2: the
/// degree-one part is the exponent sum `e`, and for s < t the collected
/// commutator exponent is `M_{st} − e_s e_t`, where `M_{st}` is the
/// coefficient of X_s X_t.
pub fn nil2_class(w: &FreeWord) -> NilClass2 {
    let h = w.rank;
    let mut degree_one = vec![0i64; h];
    let mut degree_two = vec![0i64; binomial(h, 2)];
    for l in &w.letters {
        let t = l.generator;
        let e = l.exponent();
        // Multiplying by 1 ± X_t + (X_t² terms): off-diagonal X_s X_t picks up
        // (current X_s coefficient) · (±1).
        for s in 0..t {
            degree_two[crate::surface::pair_index(h, s, t)] += degree_one[s] * e;
        }
        degree_one[t] += e;
    }
    let mut idx = 0;
    for s in 0..h {
        for t in s + 1..h {
            degree_two[idx] -= degree_one[s] * degree_one[t];
            idx += 1;
        }
    }
    NilClass2 {
        rank: h,
        abelian: degree_one,
        commutator: degree_two,
    }
}

/// Whether the images of a₁, a₂ fail to commute modulo γ₃F_h, i.e. the class
/// of `[φ(a₁), φ(a₂)]` in γ₂/γ₃ is nonzero.
pub fn fh_obstruction(image_a1: &FreeWord, image_a2: &FreeWord) -> Result<bool> {
    let c = commutator(image_a1, image_a2)?;
    Ok(nil2_class(&c).commutator.iter().any(|&x| x != 0))
}

/// Class of a surface-group word (generators a₁..a_g, b₁..b_g as x₁..x_{2g})
/// modulo π², valid for words in the commutator subgroup: the ∧²H part
/// taken modulo ω.
pub fn surface_class2(space: &SymplecticSpace, w: &FreeWord) -> Result<(Vec<i64>, WedgeTwoModOmega)> {
    if w.rank != space.dim() {
        return Err(Error::RankMismatch(space.dim(), w.rank));
    }
    let class = nil2_class(w);
    let wedge = WedgeTwo::from_coords(space.genus(), class.commutator_rational())?;
    Ok((class.abelian.clone(), space.mod_omega(&wedge)))
}

/// The surface relator [a₁, b₁]⋯[a_g, b_g].
pub fn surface_relator(space: &SymplecticSpace) -> FreeWord {
    let rank = space.dim();
    (1..=space.genus()).fold(FreeWord::identity(rank), |acc, k| {
        let a = FreeWord::generator(rank, space.a_index(k) + 1).unwrap();
        let b = FreeWord::generator(rank, space.b_index(k) + 1).unwrap();
        acc.mul(&commutator(&a, &b).unwrap()).unwrap()
    })
}
