use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;

use super::order::OrderDomain;
use crate::lattice::FractionalIdeal;

/// A nonzero prime of a one-dimensional order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    norm: BigInt,
    ideal: FractionalIdeal,
    p: u64,
    invertible: bool,
}

impl PartialOrd for PrimeIdeal {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for PrimeIdeal {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (&self.norm, &self.ideal).cmp(&(&other.norm, &other.ideal))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PrimeError {
    #[error("{0} is not an ideal of the domain")]
    NotIdeal(String),
    #[error("{0} is not a prime over {1}")]
    NotPrime(String, u64),
}

impl PrimeIdeal {
    /// Used by the enumerator, whose candidates are prime by construction.
    pub(crate) fn new_unchecked(d: &OrderDomain, ideal: FractionalIdeal, p: u64, norm: BigInt) -> Self {
        let inv = ideal.mul(&d.ring().colon(&ideal).expect("nonzero")).expect("same field");
        PrimeIdeal { invertible: &inv == d.ring(), ideal, p, norm }
    }

    /// Verifies that the D-ideal generated by `gens` is a prime over p.
    pub fn verified(d: &std::sync::Arc<OrderDomain>, ideal: FractionalIdeal, p: u64) -> Result<Self, PrimeError> {
        if ideal.mul(d.ring()).ok().as_ref() != Some(&ideal) || !d.is_integral(&ideal) {
            return Err(PrimeError::NotIdeal(ideal.to_string()));
        }
        d.primes_above(p)
            .into_iter()
            .find(|q| q.ideal == ideal)
            .ok_or_else(|| PrimeError::NotPrime(ideal.to_string(), p))
    }

    pub fn ideal(&self) -> &FractionalIdeal {
        &self.ideal
    }

    /// Residue characteristic.
    pub fn p(&self) -> u64 {
        self.p
    }

    /// [D : P].
    pub fn norm(&self) -> &BigInt {
        &self.norm
    }

    pub fn is_invertible(&self) -> bool {
        self.invertible
    }
}

impl fmt::Display for PrimeIdeal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}{}", self.norm, self.ideal)
    }
}

/// Compact description for reports.
#[derive(Debug, Clone, Serialize)]
pub struct PrimeSummary {
    pub norm: String,
    pub ideal: String,
}

impl From<&PrimeIdeal> for PrimeSummary {
    fn from(p: &PrimeIdeal) -> Self {
        PrimeSummary { norm: p.norm.to_string(), ideal: p.ideal.to_string() }
    }
}
