//! The symplectic space H = H¹(S_g; ℚ) with basis a₁..a_g, b₁..b_g, its
//! intersection pairing, second and third exterior powers, and symplectic
//! transvections.

use num_traits::{One, Zero};

use crate::exactla::{q, LinAlgError, Rational, RationalMatrix};
use crate::{binomial, Error, Result};

/// H¹(S_g; ℚ) in the ordered basis a₁..a_g, b₁..b_g, with ⟨a_k, b_k⟩ = 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct SymplecticSpace {
    genus: usize,
}

impl SymplecticSpace {
    pub fn new(genus: usize) -> Result<Self> {
        if genus < 2 {
            return Err(Error::GenusTooSmall(genus));
        }
        Ok(SymplecticSpace { genus })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn dim(&self) -> usize {
        2 * self.genus
    }

    /// Coordinate index of a_k (1-based handle index).
    pub fn a_index(&self, k: usize) -> usize {
        assert!((1..=self.genus).contains(&k), "handle index out of range");
        k - 1
    }

    /// Coordinate index of b_k (1-based handle index).
    pub fn b_index(&self, k: usize) -> usize {
        assert!((1..=self.genus).contains(&k), "handle index out of range");
        self.genus + k - 1
    }

    pub fn zero(&self) -> Vec<Rational> {
        vec![Rational::zero(); self.dim()]
    }

    pub fn basis_vector(&self, index: usize) -> Vec<Rational> {
        let mut v = self.zero();
        v[index] = Rational::one();
        v
    }

    pub fn a(&self, k: usize) -> Vec<Rational> {
        self.basis_vector(self.a_index(k))
    }

    pub fn b(&self, k: usize) -> Vec<Rational> {
        self.basis_vector(self.b_index(k))
    }

    /// Human-readable label of a basis index, e.g. `a1`, `b2`.
    pub fn label(&self, index: usize) -> String {
        if index < self.genus {
            format!("a{}", index + 1)
        } else {
            format!("b{}", index - self.genus + 1)
        }
    }

    /// The Gram matrix J of the pairing, so that ⟨x, y⟩ = xᵀ J y.
    pub fn pairing_matrix(&self) -> RationalMatrix {
        let g = self.genus;
        let mut rows = vec![vec![Rational::zero(); 2 * g]; 2 * g];
        for k in 0..g {
            rows[k][g + k] = q(1);
            rows[g + k][k] = q(-1);
        }
        RationalMatrix::from_dense_rows(2 * g, &rows).expect("square")
    }

    fn check(&self, v: &[Rational]) -> Result<()> {
        if v.len() != self.dim() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.dim(),
                found: v.len(),
            }
            .into());
        }
        Ok(())
    }

    /// Algebraic intersection number ⟨x, y⟩ = Σ_k x_{a_k} y_{b_k} − x_{b_k} y_{a_k}.
    pub fn pairing(&self, x: &[Rational], y: &[Rational]) -> Result<Rational> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.pairing_unchecked(x, y))
    }

    pub(crate) fn pairing_unchecked(&self, x: &[Rational], y: &[Rational]) -> Rational {
        let g = self.genus;
        (0..g).fold(Rational::zero(), |acc, k| {
            acc + &x[k] * &y[g + k] - &x[g + k] * &y[k]
        })
    }

    pub fn wedge2_dim(&self) -> usize {
        binomial(self.dim(), 2)
    }

    pub fn wedge3_dim(&self) -> usize {
        binomial(self.dim(), 3)
    }

    /// Position of e_s∧e_t (s < t) in the lexicographic basis of ∧²H.
    pub fn pair_index(&self, s: usize, t: usize) -> usize {
        pair_index(self.dim(), s, t)
    }

    /// Position of e_s∧e_t∧e_u (s < t < u) in the lexicographic basis of ∧³H.
    pub fn triple_index(&self, s: usize, t: usize, u: usize) -> usize {
        triple_index(self.dim(), s, t, u)
    }

    /// Index pairs (s, t), s < t, in basis order.
    pub fn pairs(&self) -> Vec<(usize, usize)> {
        let d = self.dim();
        (0..d)
            .flat_map(|s| (s + 1..d).map(move |t| (s, t)))
            .collect()
    }

    /// Index triples (s, t, u), s < t < u, in basis order.
    pub fn triples(&self) -> Vec<(usize, usize, usize)> {
        let d = self.dim();
        (0..d)
            .flat_map(|s| (s + 1..d).flat_map(move |t| (t + 1..d).map(move |u| (s, t, u))))
            .collect()
    }

    pub fn wedge2(&self, x: &[Rational], y: &[Rational]) -> Result<WedgeTwo> {
        self.check(x)?;
        self.check(y)?;
        let coords = self
            .pairs()
            .into_iter()
            .map(|(s, t)| &x[s] * &y[t] - &x[t] * &y[s])
            .collect();
        Ok(WedgeTwo { genus: self.genus, coords })
    }

    pub fn wedge3(&self, x: &[Rational], y: &[Rational], z: &[Rational]) -> Result<WedgeThree> {
        self.check(x)?;
        self.check(y)?;
        self.check(z)?;
        let coords = self
            .triples()
            .into_iter()
            .map(|(s, t, u)| {
                // 3x3 minor on rows (x, y, z), columns (s, t, u)
                &x[s] * (&y[t] * &z[u] - &y[u] * &z[t]) - &x[t] * (&y[s] * &z[u] - &y[u] * &z[s])
                    + &x[u] * (&y[s] * &z[t] - &y[t] * &z[s])
            })
            .collect();
        Ok(WedgeThree { genus: self.genus, coords })
    }

    /// ω = Σ_k a_k ∧ b_k.
    pub fn omega(&self) -> WedgeTwo {
        let mut w = WedgeTwo::zero(self.genus);
        for k in 1..=self.genus {
            w.coords[self.pair_index(self.a_index(k), self.b_index(k))] = Rational::one();
        }
        w
    }

    /// Canonical representative of w + ℚω: the one whose coefficients on the
    /// a_k∧b_k coordinates sum to zero.
    pub fn mod_omega(&self, w: &WedgeTwo) -> WedgeTwoModOmega {
        assert_eq!(w.genus, self.genus, "wedge from a different genus");
        let symplectic: Vec<usize> = (1..=self.genus)
            .map(|k| self.pair_index(self.a_index(k), self.b_index(k)))
            .collect();
        let sigma = symplectic
            .iter()
            .fold(Rational::zero(), |acc, &i| acc + &w.coords[i]);
        let shift = sigma / q(self.genus as i64);
        let mut coords = w.coords.clone();
        for &i in &symplectic {
            coords[i] -= &shift;
        }
        WedgeTwoModOmega { genus: self.genus, coords }
    }

    /// Rebuilds a quotient class from its reduced coordinates (every ∧²
    /// coordinate except a_g∧b_g, which is recovered from the zero-sum
    /// condition).
    pub fn mod_omega_from_quotient_coords(&self, reduced: &[Rational]) -> Result<WedgeTwoModOmega> {
        let dropped = self.dropped_quotient_index();
        if reduced.len() + 1 != self.wedge2_dim() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.wedge2_dim() - 1,
                found: reduced.len(),
            }
            .into());
        }
        let mut coords = reduced.to_vec();
        coords.insert(dropped, Rational::zero());
        let rest = (1..self.genus)
            .map(|k| self.pair_index(self.a_index(k), self.b_index(k)))
            .fold(Rational::zero(), |acc, i| acc + &coords[i]);
        coords[dropped] = -rest;
        Ok(WedgeTwoModOmega { genus: self.genus, coords })
    }

    pub(crate) fn dropped_quotient_index(&self) -> usize {
        self.pair_index(self.a_index(self.genus), self.b_index(self.genus))
    }

    /// Matrix of x ↦ x + ⟨x, v⟩ v.
    pub fn transvection(&self, v: &[Rational]) -> Result<RationalMatrix> {
        self.check(v)?;
        let d = self.dim();
        // ⟨x, v⟩ = Σ_j x_j (Jv)_j
        let jv = self.pairing_matrix().mul_vec(v)?;
        let rows: Vec<Vec<Rational>> = (0..d)
            .map(|i| {
                (0..d)
                    .map(|j| {
                        let delta = if i == j { Rational::one() } else { Rational::zero() };
                        delta + &v[i] * &jv[j]
                    })
                    .collect()
            })
            .collect();
        Ok(RationalMatrix::from_dense_rows(d, &rows)?)
    }

    /// Transvections along a_k, b_k, a_k+b_k, a_k+a_{k+1}, b_k+b_{k+1}.
    pub fn transvections(&self) -> Vec<Transvection> {
        let g = self.genus;
        let mut dirs: Vec<(String, Vec<Rational>)> = Vec::new();
        for k in 1..=g {
            dirs.push((format!("a{k}"), self.a(k)));
        }
        for k in 1..=g {
            dirs.push((format!("b{k}"), self.b(k)));
        }
        for k in 1..=g {
            dirs.push((format!("a{k}+b{k}"), add(&self.a(k), &self.b(k))));
        }
        for k in 1..g {
            dirs.push((format!("a{k}+a{}", k + 1), add(&self.a(k), &self.a(k + 1))));
        }
        for k in 1..g {
            dirs.push((format!("b{k}+b{}", k + 1), add(&self.b(k), &self.b(k + 1))));
        }
        dirs.into_iter()
            .map(|(label, direction)| {
                let matrix = self.transvection(&direction).expect("direction in H");
                Transvection {
                    label: format!("T({label})"),
                    direction,
                    matrix,
                }
            })
            .collect()
    }

    /// Induced action Λ²M on ∧²H.
    pub fn wedge2_action(&self, m: &RationalMatrix) -> Result<RationalMatrix> {
        if m.rows() != self.dim() || m.cols() != self.dim() {
            return Err(LinAlgError::DimensionMismatch {
                expected: self.dim(),
                found: m.rows(),
            }
            .into());
        }
        let columns: Vec<Vec<Rational>> = self
            .pairs()
            .into_iter()
            .map(|(s, t)| {
                let (ms, mt) = (m.column(s), m.column(t));
                self.wedge2(&ms, &mt).map(|w| w.coords)
            })
            .collect::<Result<_>>()?;
        Ok(RationalMatrix::from_columns(self.wedge2_dim(), &columns)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Transvection {
    pub label: String,
    pub direction: Vec<Rational>,
    pub matrix: RationalMatrix,
}

/// An element of ∧²H in the basis e_s∧e_t, s < t.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WedgeTwo {
    genus: usize,
    coords: Vec<Rational>,
}

impl WedgeTwo {
    pub fn zero(genus: usize) -> Self {
        WedgeTwo {
            genus,
            coords: vec![Rational::zero(); binomial(2 * genus, 2)],
        }
    }

    pub fn from_coords(genus: usize, coords: Vec<Rational>) -> Result<Self> {
        let expected = binomial(2 * genus, 2);
        if coords.len() != expected {
            return Err(LinAlgError::DimensionMismatch {
                expected,
                found: coords.len(),
            }
            .into());
        }
        Ok(WedgeTwo { genus, coords })
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &WedgeTwo) -> WedgeTwo {
        assert_eq!(self.genus, other.genus);
        WedgeTwo {
            genus: self.genus,
            coords: add(&self.coords, &other.coords),
        }
    }

    pub fn scale(&self, k: &Rational) -> WedgeTwo {
        WedgeTwo {
            genus: self.genus,
            coords: self.coords.iter().map(|c| c * k).collect(),
        }
    }
}

/// An element of ∧³H in the basis e_s∧e_t∧e_u, s < t < u.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WedgeThree {
    genus: usize,
    coords: Vec<Rational>,
}

impl WedgeThree {
    pub fn zero(genus: usize) -> Self {
        WedgeThree {
            genus,
            coords: vec![Rational::zero(); binomial(2 * genus, 3)],
        }
    }

    pub fn from_coords(genus: usize, coords: Vec<Rational>) -> Result<Self> {
        let expected = binomial(2 * genus, 3);
        if coords.len() != expected {
            return Err(LinAlgError::DimensionMismatch {
                expected,
                found: coords.len(),
            }
            .into());
        }
        Ok(WedgeThree { genus, coords })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    pub fn add(&self, other: &WedgeThree) -> WedgeThree {
        assert_eq!(self.genus, other.genus);
        WedgeThree {
            genus: self.genus,
            coords: add(&self.coords, &other.coords),
        }
    }
}

/// A class in ∧²H / ℚω, held as its zero-sum representative.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct WedgeTwoModOmega {
    genus: usize,
    coords: Vec<Rational>,
}

impl WedgeTwoModOmega {
    /// Full ∧² coordinates of the canonical representative.
    pub fn representative(&self) -> WedgeTwo {
        WedgeTwo {
            genus: self.genus,
            coords: self.coords.clone(),
        }
    }

    /// Coordinates in ℚ^{C(2g,2) − 1}: the representative with the a_g∧b_g
    /// coordinate dropped.
    pub fn quotient_coords(&self) -> Vec<Rational> {
        let space = SymplecticSpace { genus: self.genus };
        let dropped = space.dropped_quotient_index();
        self.coords
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != dropped)
            .map(|(_, c)| c.clone())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }
}

pub(crate) fn pair_index(d: usize, s: usize, t: usize) -> usize {
    assert!(s < t && t < d, "pair must satisfy s < t < dim");
    // pairs starting before s, then offset within row s
    s * (2 * d - s - 1) / 2 + (t - s - 1)
}

pub(crate) fn triple_index(d: usize, s: usize, t: usize, u: usize) -> usize {
    assert!(s < t && t < u && u < d, "triple must be strictly increasing");
    let before_s: usize = (0..s).map(|i| binomial(d - i - 1, 2)).sum();
    let before_t: usize = (s + 1..t).map(|j| d - j - 1).sum();
    before_s + before_t + (u - t - 1)
}

pub(crate) fn add(x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    x.iter().zip(y).map(|(a, b)| a + b).collect()
}
