//! H₁(S_{g,n}; ℚ) and the homology action of point pushes.
//!
//! Basis a₁..a_g, b₁..b_g, c₁..c_{n−1}; the last puncture loop is
//! c_n = −(c₁ + ⋯ + c_{n−1}). Pushing point i along d acts by
//! c ↦ c + ⟨d, c⟩ cᵢ, where the pairing ignores every puncture loop.

use std::fmt;

use num_traits::{One, Zero};

use crate::exactla::{fixed_subspace, kernel, Rational, RationalMatrix, Subspace};
use crate::surface::SymplecticSpace;
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct PuncturedH1 {
    space: SymplecticSpace,
    punctures: usize,
}

/// Loop class along which a point is pushed. Indices are 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PushDirection {
    A(usize),
    B(usize),
    C(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PushGenerator {
    /// Pushed point, 1-based.
    pub point: usize,
    pub direction: PushDirection,
}

impl fmt::Display for PushGenerator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = match self.direction {
            PushDirection::A(k) => format!("a{k}"),
            PushDirection::B(k) => format!("b{k}"),
            PushDirection::C(j) => format!("c{j}"),
        };
        write!(f, "Push(x{} along {d})", self.point)
    }
}

impl PuncturedH1 {
    pub fn new(genus: usize, punctures: usize) -> Result<Self> {
        let space = SymplecticSpace::new(genus)?;
        if punctures < 1 {
            return Err(Error::TooFewPoints {
                min: 1,
                found: punctures,
            });
        }
        Ok(PuncturedH1 { space, punctures })
    }

    pub fn genus(&self) -> usize {
        self.space.genus()
    }

    pub fn punctures(&self) -> usize {
        self.punctures
    }

    /// 2g + n − 1.
    pub fn dim(&self) -> usize {
        self.space.dim() + self.punctures - 1
    }

    fn unit(&self, index: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        v[index] = Rational::one();
        v
    }

    pub fn a(&self, k: usize) -> Vec<Rational> {
        self.unit(self.space.a_index(k))
    }

    pub fn b(&self, k: usize) -> Vec<Rational> {
        self.unit(self.space.b_index(k))
    }

    /// Class of the loop around puncture i (1-based); c_n is −Σ_{j<n} c_j.
    pub fn c(&self, i: usize) -> Vec<Rational> {
        assert!((1..=self.punctures).contains(&i), "puncture index out of range");
        if i < self.punctures {
            return self.unit(self.space.dim() + i - 1);
        }
        let mut v = vec![Rational::zero(); self.dim()];
        for j in 0..self.punctures - 1 {
            v[self.space.dim() + j] = -Rational::one();
        }
        v
    }

    /// Intersection pairing extended by zero on puncture loops.
    pub fn pairing(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let d = self.space.dim();
        self.space.pairing_unchecked(&x[..d], &y[..d])
    }

    pub fn direction_vector(&self, d: PushDirection) -> Vec<Rational> {
        match d {
            PushDirection::A(k) => self.a(k),
            PushDirection::B(k) => self.b(k),
            PushDirection::C(j) => self.c(j),
        }
    }

    pub fn validate(&self, gen: &PushGenerator) -> Result<()> {
        let n = self.punctures;
        let g = self.genus();
        if !(1..=n).contains(&gen.point) {
            return Err(Error::MalformedGenerator(format!(
                "point {} not in 1..={n}",
                gen.point
            )));
        }
        match gen.direction {
            PushDirection::A(k) | PushDirection::B(k) if !(1..=g).contains(&k) => Err(
                Error::MalformedGenerator(format!("handle {k} not in 1..={g}")),
            ),
            PushDirection::C(j) if !(1..=n).contains(&j) || j == gen.point => Err(
                Error::MalformedGenerator(format!("loop c{j} invalid for point {}", gen.point)),
            ),
            _ => Ok(()),
        }
    }

    /// Pushes of every point along every a_k, b_k and c_j (j ≠ i).
    pub fn generators(&self) -> Vec<PushGenerator> {
        let mut out = Vec::new();
        for point in 1..=self.punctures {
            for k in 1..=self.genus() {
                out.push(PushGenerator {
                    point,
                    direction: PushDirection::A(k),
                });
                out.push(PushGenerator {
                    point,
                    direction: PushDirection::B(k),
                });
            }
            for j in (1..=self.punctures).filter(|&j| j != point) {
                out.push(PushGenerator {
                    point,
                    direction: PushDirection::C(j),
                });
            }
        }
        out
    }

    /// Functionals vanishing on every cᵢ: the image of H¹(S_g).
    pub fn c_annihilator(&self) -> Subspace {
        if self.punctures == 1 {
            return Subspace::full(self.dim());
        }
        let rows: Vec<Vec<Rational>> = (1..self.punctures).map(|i| self.c(i)).collect();
        kernel(&RationalMatrix::from_dense_rows(self.dim(), &rows).expect("fits"))
    }
}

/// Matrix of c ↦ c + ⟨d, c⟩ c_i on H₁(S_{g,n}).
pub fn push_action(gen: &PushGenerator, space: &PuncturedH1) -> Result<RationalMatrix> {
    space.validate(gen)?;
    let d = space.direction_vector(gen.direction);
    let target = space.c(gen.point);
    let columns: Vec<Vec<Rational>> = (0..space.dim())
        .map(|e| {
            let mut col = space.unit(e);
            let k = space.pairing(&d, &col);
            if !k.is_zero() {
                for (x, t) in col.iter_mut().zip(&target) {
                    *x += &k * t;
                }
            }
            col
        })
        .collect();
    Ok(RationalMatrix::from_columns(space.dim(), &columns)?)
}

/// Contragredient (A⁻¹)ᵀ: the action on functionals f ↦ f ∘ A⁻¹.
pub fn dual_action(a: &RationalMatrix) -> Result<RationalMatrix> {
    let inv = a
        .inverse()?
        .expect("point-push matrices are unipotent, hence invertible");
    Ok(inv.transpose())
}

fn dual_generators(space: &PuncturedH1) -> Result<Vec<RationalMatrix>> {
    space
        .generators()
        .iter()
        .map(|g| dual_action(&push_action(g, space)?))
        .collect()
}

/// Functionals on H₁(S_{g,n}) fixed by every push generator.
pub fn dual_invariants(space: &PuncturedH1) -> Result<Subspace> {
    Ok(fixed_subspace(space.dim(), &dual_generators(space)?)?)
}

/// Whether every push generator acts trivially on the quotient of the dual
/// space by the cᵢ-annihilator, i.e. f − g·f lies in the annihilator for
/// every functional f.
pub fn quotient_action_trivial(space: &PuncturedH1) -> Result<bool> {
    let w = space.c_annihilator();
    let id = RationalMatrix::identity(space.dim());
    for dual in dual_generators(space)? {
        let shift = dual.try_sub(&id)?;
        for col in 0..space.dim() {
            if !w.contains(&shift.column(col))? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Direct form: f(g(cᵢ)) = f(cᵢ) for every dual basis functional f, every
/// generator g and every puncture i (including c_n).
pub fn loops_fixed_by_pushes(space: &PuncturedH1) -> Result<bool> {
    for gen in space.generators() {
        let a = push_action(&gen, space)?;
        for i in 1..=space.punctures() {
            let ci = space.c(i);
            let moved = a.mul_vec(&ci)?;
            // pairing with each dual basis functional is reading a coordinate
            if (0..space.dim()).any(|f| moved[f] != ci[f]) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::q;

    fn add(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
        x.iter().zip(y).map(|(a, b)| a + b).collect()
    }

    #[test]
    fn punctured_relation_holds() {
        let s = PuncturedH1::new(2, 4).unwrap();
        let total = (1..=4).fold(vec![q(0); s.dim()], |acc, i| add(&acc, &s.c(i)));
        assert!(total.iter().all(Zero::is_zero));
        assert_eq!(s.dim(), 7);
    }

    #[test]
    fn push_along_b_adds_loop() {
        let s = PuncturedH1::new(2, 2).unwrap();
        let gen = PushGenerator {
            point: 1,
            direction: PushDirection::B(1),
        };
        let m = push_action(&gen, &s).unwrap();
        // ⟨b1, -a1⟩ = 1
        let c: Vec<Rational> = s.a(1).iter().map(|v| -v).collect();
        assert_eq!(s.pairing(&s.b(1), &c), q(1));
        assert_eq!(m.mul_vec(&c).unwrap(), add(&c, &s.c(1)));
    }

    #[test]
    fn push_along_loop_is_identity() {
        let s = PuncturedH1::new(2, 3).unwrap();
        let gen = PushGenerator {
            point: 1,
            direction: PushDirection::C(2),
        };
        assert_eq!(push_action(&gen, &s).unwrap(), RationalMatrix::identity(s.dim()));
    }

    #[test]
    fn push_second_point_along_a1() {
        let s = PuncturedH1::new(2, 3).unwrap();
        let gen = PushGenerator {
            point: 2,
            direction: PushDirection::A(1),
        };
        let m = push_action(&gen, &s).unwrap();
        assert_eq!(m.mul_vec(&s.b(1)).unwrap(), add(&s.b(1), &s.c(2)));
    }

    #[test]
    fn push_last_point_uses_relation() {
        let s = PuncturedH1::new(2, 2).unwrap();
        let gen = PushGenerator {
            point: 2,
            direction: PushDirection::A(1),
        };
        let m = push_action(&gen, &s).unwrap();
        assert_eq!(m.mul_vec(&s.b(1)).unwrap(), add(&s.b(1), &s.c(2)));
        assert_eq!(s.c(2)[4], q(-1));
    }

    #[test]
    fn malformed_generators_rejected() {
        let s = PuncturedH1::new(2, 2).unwrap();
        for gen in [
            PushGenerator { point: 3, direction: PushDirection::A(1) },
            PushGenerator { point: 1, direction: PushDirection::B(3) },
            PushGenerator { point: 1, direction: PushDirection::C(1) },
            PushGenerator { point: 1, direction: PushDirection::C(5) },
        ] {
            assert!(matches!(push_action(&gen, &s), Err(Error::MalformedGenerator(_))), "{gen}");
        }
    }

    #[test]
    fn invariants_small_cases() {
        let s = PuncturedH1::new(2, 1).unwrap();
        assert_eq!(dual_invariants(&s).unwrap().dim(), 4);
        let s = PuncturedH1::new(2, 3).unwrap();
        let inv = dual_invariants(&s).unwrap();
        assert_eq!(inv.dim(), 4);
        assert_eq!(inv, s.c_annihilator());
    }

    #[test]
    fn functional_dual_to_c1_is_moved() {
        let s = PuncturedH1::new(2, 2).unwrap();
        let f = s.c(1); // coordinate functional reading the c1 coefficient
        let gen = PushGenerator {
            point: 1,
            direction: PushDirection::B(1),
        };
        let dual = dual_action(&push_action(&gen, &s).unwrap()).unwrap();
        assert_ne!(dual.mul_vec(&f).unwrap(), f);
        assert!(!dual_invariants(&s).unwrap().contains(&f).unwrap());
    }

    #[test]
    fn quotient_is_trivial() {
        for (g, n) in [(2, 2), (3, 4)] {
            let s = PuncturedH1::new(g, n).unwrap();
            assert!(quotient_action_trivial(&s).unwrap());
            assert!(loops_fixed_by_pushes(&s).unwrap());
        }
    }
}
