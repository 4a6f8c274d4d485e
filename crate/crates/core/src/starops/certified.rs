use serde::Serialize;

use crate::domain::{ModuleValue, Space};

/// Budget parameters and provenance notes attached to a computed value.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct Budget {
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prime_pool_norm: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub j_pool_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eab_pool_size: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub slice: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mult_cap: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness_deg: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witnesses: Option<usize>,
    /// Some slice was accepted because two consecutive caps agreed.
    pub stabilized: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl Budget {
    pub fn note(mut self, s: impl Into<String>) -> Self {
        let s = s.into();
        if !self.notes.contains(&s) {
            self.notes.push(s);
        }
        self
    }

    pub fn merge(&mut self, other: &Budget) {
        fn mx<T: Ord + Copy>(a: Option<T>, b: Option<T>) -> Option<T> {
            match (a, b) {
                (Some(x), Some(y)) => Some(x.max(y)),
                (x, None) => x,
                (None, y) => y,
            }
        }
        self.prime_pool_norm = mx(self.prime_pool_norm, other.prime_pool_norm);
        self.j_pool_size = mx(self.j_pool_size, other.j_pool_size);
        self.eab_pool_size = mx(self.eab_pool_size, other.eab_pool_size);
        self.slice = mx(self.slice, other.slice);
        self.mult_cap = mx(self.mult_cap, other.mult_cap);
        self.witness_deg = mx(self.witness_deg, other.witness_deg);
        self.witnesses = mx(self.witnesses, other.witnesses);
        self.stabilized |= other.stabilized;
        for n in &other.notes {
            if !self.notes.contains(n) {
                self.notes.push(n.clone());
            }
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Mode {
    Exact,
    LowerBound,
    UpperBound,
    Bracket,
}

/// A closure value known exactly or only up to bounds.
#[derive(Debug, Clone)]
pub struct CertifiedValue {
    lower: Option<ModuleValue>,
    upper: Option<ModuleValue>,
    pub budget: Budget,
}

impl CertifiedValue {
    pub fn exact(v: ModuleValue) -> Self {
        CertifiedValue { lower: Some(v.clone()), upper: Some(v), budget: Budget::default() }
    }

    pub fn lower_bound(v: ModuleValue) -> Self {
        CertifiedValue { lower: Some(v), upper: None, budget: Budget::default() }
    }

    pub fn upper_bound(v: ModuleValue) -> Self {
        CertifiedValue { lower: None, upper: Some(v), budget: Budget::default() }
    }

    /// Collapses to `Exact` when the bounds coincide.
    pub fn bracket(sp: &Space, lower: ModuleValue, upper: ModuleValue) -> Self {
        debug_assert!(lower.is_subset(sp, &upper), "bracket bounds out of order");
        if lower.same(sp, &upper) {
            return Self::exact(lower);
        }
        CertifiedValue { lower: Some(lower), upper: Some(upper), budget: Budget::default() }
    }

    /// Builds from optional bounds, collapsing when possible.
    pub fn from_bounds(sp: &Space, lower: Option<ModuleValue>, upper: Option<ModuleValue>) -> Self {
        match (lower, upper) {
            (Some(l), Some(u)) => Self::bracket(sp, l, u),
            (l, u) => CertifiedValue { lower: l, upper: u, budget: Budget::default() },
        }
    }

    pub fn with_budget(mut self, b: Budget) -> Self {
        self.budget.merge(&b);
        self
    }

    pub fn mode(&self) -> Mode {
        match (&self.lower, &self.upper) {
            (Some(l), Some(u)) if l == u => Mode::Exact,
            (Some(_), Some(_)) => Mode::Bracket,
            (Some(_), None) => Mode::LowerBound,
            (None, Some(_)) => Mode::UpperBound,
            (None, None) => unreachable!("certified value without bounds"),
        }
    }

    pub fn is_exact(&self) -> bool {
        self.mode() == Mode::Exact
    }

    pub fn exact_value(&self) -> Option<&ModuleValue> {
        if self.is_exact() {
            self.lower.as_ref()
        } else {
            None
        }
    }

    pub fn lower(&self) -> Option<&ModuleValue> {
        self.lower.as_ref()
    }

    pub fn upper(&self) -> Option<&ModuleValue> {
        self.upper.as_ref()
    }

    /// Lower bound, falling back to `fallback` (a known subset, e.g. the
    /// input ideal) when none is available.
    pub fn lower_or(&self, fallback: ModuleValue) -> ModuleValue {
        self.lower.clone().unwrap_or(fallback)
    }

    pub fn upper_or_whole(&self, sp: &Space) -> ModuleValue {
        self.upper.clone().unwrap_or_else(|| ModuleValue::whole(sp))
    }
}
