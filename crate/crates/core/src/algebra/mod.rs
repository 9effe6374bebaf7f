//! Exact integer linear algebra: dense matrices, Smith normal form,
//! echelon lattices, and the prime-field variants used for `ℤ/p`
//! coefficients.

mod lattice;
mod matrix;
mod snf;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use thiserror::Error;

pub use lattice::{kernel_basis_mod, Lattice};
pub use matrix::IntMatrix;
pub use snf::{kernel_basis, lattice_member, snf, Membership, Obstruction, SmithDecomposition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("unrecognised coefficient ring `{0}` (expected `z` or `fp:<prime>`)")]
    BadRing(String),
}

/// Coefficient ring for chains and homology.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Ring {
    #[default]
    Integers,
    /// `ℤ/p`, `p` prime.
    Prime(u64),
}

impl Ring {
    pub fn prime(p: u64) -> Result<Ring, AlgebraError> {
        let is_prime = p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0);
        if is_prime {
            Ok(Ring::Prime(p))
        } else {
            Err(AlgebraError::NotPrime(p))
        }
    }

    pub fn is_field(self) -> bool {
        matches!(self, Ring::Prime(_))
    }

    /// Canonical image of `x` in the ring (identity over ℤ).
    pub fn normalize(self, x: &BigInt) -> BigInt {
        match self {
            Ring::Integers => x.clone(),
            Ring::Prime(p) => x.mod_floor(&BigInt::from(p)),
        }
    }

    pub fn normalize_vec(self, v: &[BigInt]) -> Vec<BigInt> {
        v.iter().map(|x| self.normalize(x)).collect()
    }
}

impl fmt::Display for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Ring::Integers => f.write_str("z"),
            Ring::Prime(p) => write!(f, "fp:{p}"),
        }
    }
}

impl FromStr for Ring {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "z" | "Z" => Ok(Ring::Integers),
            _ => {
                let p = s
                    .strip_prefix("fp:")
                    .and_then(|p| p.parse::<u64>().ok())
                    .ok_or_else(|| AlgebraError::BadRing(s.to_string()))?;
                Ring::prime(p)
            }
        }
    }
}
