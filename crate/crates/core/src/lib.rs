//! Exact-arithmetic models for the low-degree cohomology of ordered
//! configuration spaces of closed surfaces, the point-pushing action on the
//! homology of punctured surfaces, free nilpotent quotients, and the image of
//! the Johnson homomorphism.
//!
//! All arithmetic is over ℚ and exact; "equal" always means equal.

pub mod confcoh;
pub mod exactla;
pub mod freegrp;
pub mod johnson;
pub mod pushact;
pub mod sampling;
pub mod surface;

use thiserror::Error;

pub use exactla::{LinAlgError, Rational, RationalMatrix, Subspace};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    LinAlg(#[from] LinAlgError),
    #[error("genus must be at least 2, got {0}")]
    GenusTooSmall(usize),
    #[error("number of points must be at least {min}, got {found}")]
    TooFewPoints { min: usize, found: usize },
    #[error("generator index {index} out of range for rank {rank}")]
    GeneratorOutOfRange { index: usize, rank: usize },
    #[error("free group ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("classes come from different models: {0}")]
    ModelMismatch(String),
    #[error("operation needs a nonzero subspace")]
    ZeroSubspace,
    #[error("malformed push generator: {0}")]
    MalformedGenerator(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Binomial coefficient for the small sizes used throughout.
pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[cfg(test)]
mod tests {
    use super::binomial;

    #[test]
    fn small_binomials() {
        assert_eq!(binomial(4, 2), 6);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(binomial(2, 3), 0);
        assert_eq!(binomial(5, 0), 1);
    }
}
