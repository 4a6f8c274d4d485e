use serde::{Deserialize, Serialize};

use crate::domain::{Domain, ModuleValue};
use crate::starops::{CertifiedValue, OpError};

use super::polyideal::PolyIdeal;

/// Budgets for slice computations on D[X]-ideals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolyBudget {
    /// Largest slice degree evaluated by default.
    pub slice: usize,
    /// Multiplier cap B for slices of the input ideal.
    pub mult_cap: usize,
    /// Largest numerator degree of ▲ witnesses.
    pub witness_deg: usize,
}

impl Default for PolyBudget {
    fn default() -> Self {
        PolyBudget { slice: 5, mult_cap: 3, witness_deg: 4 }
    }
}

/// The degree-≤n part of an operation's value on a D[X]-ideal.
#[derive(Debug, Clone)]
pub struct SliceValue {
    pub n: usize,
    /// Lives in `Space::new(d, n + 1)`.
    pub value: CertifiedValue,
    /// The whole value has members outside K[X] (e.g. all of K(X)).
    pub beyond_polys: bool,
}

impl SliceValue {
    pub fn exact(n: usize, v: ModuleValue) -> Self {
        SliceValue { n, value: CertifiedValue::exact(v), beyond_polys: false }
    }
}

/// An operation on nonzero finitely generated D[X]-submodules of K[X],
/// evaluated one slice at a time.
pub trait PolyOperator: Send + Sync {
    fn name(&self) -> String;
    fn domain(&self) -> &Domain;
    fn slice(&self, a: &PolyIdeal, n: usize) -> Result<SliceValue, OpError>;

    fn slices(&self, a: &PolyIdeal, upto: usize) -> Result<Vec<SliceValue>, OpError> {
        (0..=upto).map(|n| self.slice(a, n)).collect()
    }
}
