//! Three-weight symmetry identities for generalized Bernoulli polynomials
//! and generalized power sums.
//!
//! - [`lambda`]: the quotient generating functions, each symmetric in the
//!   weights `(w1, w2, w3)`, built two independent ways
//! - [`expansion`]: the nine finite-sum expansions of their coefficients
//! - [`theorems`]: the eight identities, as orbits of an expansion under
//!   weight permutations, and their verification
//! - [`sweep`]: batch verification over parameter grids

pub mod expansion;
pub mod lambda;
pub mod sweep;
pub mod theorems;

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Pow};
use serde::{Deserialize, Serialize};

use crate::cyclotomic::Rational;
use crate::error::{Error, Result};
use crate::series::factorial;

pub use expansion::{expansion_sum, Expansion};
pub use lambda::{lambda_series, lambda_series_from_integrals, LambdaFamily, LambdaSpec};
pub use sweep::{sweep_verify, CharacterSelector, SweepGrid, SweepOutcome, SweepSummary};
pub use theorems::{
    theorem_expressions, verify_theorem, OrbitCheck, Perturbation, T3Variant, Theorem, TheoremInstance,
    VerificationReport,
};

/// The weights `(w1, w2, w3)`, all positive.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "[u64; 3]", into = "[u64; 3]")]
pub struct Weights([u64; 3]);

impl Weights {
    pub fn new(w1: u64, w2: u64, w3: u64) -> Result<Weights> {
        Weights::try_from([w1, w2, w3])
    }

    pub fn get(&self) -> [u64; 3] {
        self.0
    }

    pub fn product(&self) -> u64 {
        self.0.iter().product()
    }

    /// Weights `(w_{p0}, w_{p1}, w_{p2})` for a 0-based permutation `p`.
    pub fn permuted(&self, p: [usize; 3]) -> Weights {
        Weights([self.0[p[0]], self.0[p[1]], self.0[p[2]]])
    }
}

impl TryFrom<[u64; 3]> for Weights {
    type Error = Error;

    fn try_from(w: [u64; 3]) -> Result<Weights> {
        if w.contains(&0) {
            return Err(Error::InvalidArgument(format!("weights must be positive, got {w:?}")));
        }
        Ok(Weights(w))
    }
}

impl From<Weights> for [u64; 3] {
    fn from(w: Weights) -> [u64; 3] {
        w.0
    }
}

impl fmt::Display for Weights {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.0[0], self.0[1], self.0[2])
    }
}

impl FromStr for Weights {
    type Err = Error;

    fn from_str(s: &str) -> Result<Weights> {
        let parts: Vec<u64> = s
            .split(',')
            .map(|p| p.trim().parse::<u64>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| Error::InvalidArgument(format!("expected w1,w2,w3, got {s:?}")))?;
        let arr: [u64; 3] = parts
            .try_into()
            .map_err(|_| Error::InvalidArgument(format!("expected exactly three weights, got {s:?}")))?;
        Weights::try_from(arr)
    }
}

/// All six permutations of three slots, identity first.
pub const PERMUTATIONS: [[usize; 3]; 6] = [[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];

/// `n! / (k! l! m!)`; requires `k + l + m = n`.
pub fn multinomial(n: usize, k: usize, l: usize, m: usize) -> Result<BigInt> {
    if k + l + m != n {
        return Err(Error::InvalidArgument(format!("{k} + {l} + {m} != {n}")));
    }
    Ok(factorial(n) / (factorial(k) * factorial(l) * factorial(m)))
}

/// `w^e` for a possibly negative exponent.
pub(crate) fn weight_pow(w: u64, e: i64) -> Rational {
    let p = BigInt::from(w).pow(e.unsigned_abs() as u32);
    if e >= 0 {
        Rational::from_integer(p)
    } else {
        Rational::new(BigInt::one(), p)
    }
}

pub(crate) fn int(n: u64) -> Rational {
    Rational::from_integer(n.into())
}
