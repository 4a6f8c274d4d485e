use serde::Serialize;

use crate::domain::{ModuleValue, PrimeIdeal};
use crate::lattice::FractionalIdeal;

use super::certified::CertifiedValue;
use super::op::SemistarOp;

/// Three-valued outcome of a test against bracketed values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Tri {
    True,
    False,
    Unknown,
}

impl Tri {
    pub fn and(self, other: Tri) -> Tri {
        match (self, other) {
            (Tri::False, _) | (_, Tri::False) => Tri::False,
            (Tri::True, Tri::True) => Tri::True,
            _ => Tri::Unknown,
        }
    }
}

/// `I^⋆ ∩ D = I` for a nonzero integral ideal.
pub fn quasi_ideal_test(star: &SemistarOp, i: &FractionalIdeal) -> Tri {
    let d = star.domain();
    let sp = star.space();
    let Ok(v) = star.apply(i) else { return Tri::Unknown };
    let meet = |m: &ModuleValue| m.intersect_lattice(&sp, d.ring().lattice());
    if let Some(u) = v.upper() {
        if &meet(u) == i.lattice() {
            return Tri::True;
        }
    }
    match v.lower() {
        Some(l) if &meet(l) != i.lattice() => Tri::False,
        _ => Tri::Unknown,
    }
}

/// Pool primes that are quasi-⋆-ideals, with those left undecided.
#[derive(Debug, Clone)]
pub struct QMaxReport {
    pub pool_norm: u64,
    pub members: Vec<PrimeIdeal>,
    pub undecided: Vec<PrimeIdeal>,
}

/// In dimension one every quasi-⋆ prime is maximal among quasi-⋆-ideals.
pub fn qmax(star: &SemistarOp, pool: &[PrimeIdeal], pool_norm: u64) -> QMaxReport {
    let mut members = Vec::new();
    let mut undecided = Vec::new();
    for p in pool {
        match quasi_ideal_test(star, p.ideal()) {
            Tri::True => members.push(p.clone()),
            Tri::Unknown => undecided.push(p.clone()),
            Tri::False => {}
        }
    }
    QMaxReport { pool_norm, members, undecided }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Order {
    Le,
    Ge,
    Eq,
    Incomparable,
    Inconclusive,
}

#[derive(Debug, Clone)]
pub struct Comparison {
    pub order: Order,
    /// A sample where the two operations differ, if any.
    pub witness: Option<FractionalIdeal>,
    /// For incomparable verdicts, a sample separating the other direction.
    pub second_witness: Option<FractionalIdeal>,
}

/// Sampled `v1 ⊆ v2`.
pub fn value_subset(sp: &crate::domain::Space, a: &CertifiedValue, b: &CertifiedValue) -> Tri {
    if let (Some(au), Some(bl)) = (a.upper(), b.lower()) {
        if au.is_subset(sp, bl) {
            return Tri::True;
        }
    }
    if let (Some(al), Some(bu)) = (a.lower(), b.upper()) {
        if !al.is_subset(sp, bu) {
            return Tri::False;
        }
    }
    Tri::Unknown
}

pub fn compare(op1: &SemistarOp, op2: &SemistarOp, samples: &[FractionalIdeal]) -> Comparison {
    let sp = op1.space();
    let (mut le, mut ge) = (Tri::True, Tri::True);
    let (mut not_le, mut not_ge) = (None, None);
    for e in samples {
        let (Ok(a), Ok(b)) = (op1.apply(e), op2.apply(e)) else {
            le = le.and(Tri::Unknown);
            ge = ge.and(Tri::Unknown);
            continue;
        };
        let x = value_subset(&sp, &a, &b);
        let y = value_subset(&sp, &b, &a);
        if x == Tri::False && not_le.is_none() {
            not_le = Some(e.clone());
        }
        if y == Tri::False && not_ge.is_none() {
            not_ge = Some(e.clone());
        }
        le = le.and(x);
        ge = ge.and(y);
    }
    let order = match (le, ge) {
        (Tri::True, Tri::True) => Order::Eq,
        (Tri::True, _) => Order::Le,
        (_, Tri::True) => Order::Ge,
        (Tri::False, Tri::False) => Order::Incomparable,
        _ => Order::Inconclusive,
    };
    let (witness, second_witness) = match order {
        Order::Le => (not_ge, None),
        Order::Ge => (not_le, None),
        Order::Incomparable => (not_le, not_ge),
        _ => (None, None),
    };
    Comparison { order, witness, second_witness }
}
