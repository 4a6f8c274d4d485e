//! D[X]-operations built from localizations and overrings:
//! `[⋆̃]`, `⟨⋆̃⟩`, `A ↦ ∩ A·T_λ[X]`, and the plain ones (d, e, `A·T[X]`).

use crate::domain::{Domain, DomainKind, ModuleValue, OrderDomain, PrimeIdeal, Space};
use crate::exactnum::Poly;
use crate::lattice::FractionalIdeal;
use crate::starops::{Budget, CertifiedValue, OpError, OpKind, SemistarOp};

use super::operator::{PolyBudget, PolyOperator, SliceValue};
use super::polyideal::{content_of, multiples_span, poly_module, PolyIdeal, Slice};

/// Value certified from a computed slice: exact when the slice is exact or
/// stabilized, a lower bound otherwise.
fn from_slice(sl: &Slice, v: ModuleValue, cap: usize) -> CertifiedValue {
    let budget = Budget {
        slice: Some(sl.n),
        mult_cap: Some(cap),
        stabilized: sl.stabilized && !sl.exact,
        ..Budget::default()
    };
    if sl.exact || sl.stabilized {
        CertifiedValue::exact(v).with_budget(budget)
    } else {
        CertifiedValue::lower_bound(v).with_budget(budget.note("slice did not stabilize within the multiplier cap"))
    }
}

/// The finite prime set Δ with `⋆̃ = ⋆_Δ`, for spectral operations and
/// stable closures with closed-form quasi-maximal primes.
pub fn spectral_primes(star: &SemistarOp) -> Option<Vec<PrimeIdeal>> {
    match star.kind() {
        OpKind::Spectral(delta) => Some(delta.clone()),
        OpKind::Stable(inner) => match inner.known_qmax() {
            crate::starops::KnownQMax::Finite(delta) => Some(delta),
            _ => None,
        },
        _ => None,
    }
}

/// `A ↦ ∩_{Q∈Δ} A·D_Q[X]`.
#[derive(Debug, Clone)]
pub struct CurlyStable {
    domain: Domain,
    delta: Vec<PrimeIdeal>,
    budget: PolyBudget,
}

impl CurlyStable {
    pub fn new(star: &SemistarOp, budget: PolyBudget) -> Result<Self, OpError> {
        let delta = spectral_primes(star)
            .ok_or_else(|| OpError::Unsupported(format!("{} is not spectral over a finite prime set", star.name())))?;
        Self::from_primes(star.domain(), delta, budget)
    }

    pub fn from_primes(d: &Domain, delta: Vec<PrimeIdeal>, budget: PolyBudget) -> Result<Self, OpError> {
        if delta.is_empty() {
            return Err(OpError::Invalid("empty prime set".into()));
        }
        Ok(CurlyStable { domain: d.clone(), delta, budget })
    }

    pub fn primes(&self) -> &[PrimeIdeal] {
        &self.delta
    }
}

impl PolyOperator for CurlyStable {
    fn name(&self) -> String {
        let ns: Vec<String> = self.delta.iter().map(|p| p.norm().to_string()).collect();
        format!("curly[{}]", ns.join(","))
    }

    fn domain(&self) -> &Domain {
        &self.domain
    }

    fn slice(&self, a: &PolyIdeal, n: usize) -> Result<SliceValue, OpError> {
        let sp = a.space(n);
        let sl = a.slice(n, self.budget.mult_cap);
        let v = ModuleValue::semilocal(&sp, self.delta.iter().map(|q| (q.clone(), sl.lattice.clone())).collect());
        Ok(SliceValue { n, value: from_slice(&sl, v, self.budget.mult_cap), beyond_polys: false })
    }
}

/// `A ↦ ∩_{Q∈Δ} A·D_Q(X) ∩ A·K[X]`.
#[derive(Debug, Clone)]
pub struct Nagata {
    curly: CurlyStable,
}

impl Nagata {
    pub fn new(star: &SemistarOp, budget: PolyBudget) -> Result<Self, OpError> {
        Ok(Nagata { curly: CurlyStable::new(star, budget)? })
    }

    pub fn from_primes(d: &Domain, delta: Vec<PrimeIdeal>, budget: PolyBudget) -> Result<Self, OpError> {
        Ok(Nagata { curly: CurlyStable::from_primes(d, delta, budget)? })
    }

    /// Multipliers with unit content: `X^j` and `X^j + u`.
    fn multipliers(&self) -> Vec<Poly> {
        let d = &self.curly.domain;
        let mut us = vec![d.int(1), d.int(-1), d.int(2)];
        if d.degree() == 2 {
            us.push(d.basis()[1].clone());
        }
        let mut out = Vec::new();
        for j in 1..=self.curly.budget.witness_deg.min(2) {
            let xj = Poly::monomial(d.one(), j);
            out.push(xj.clone());
            for u in &us {
                out.push(xj.add(&Poly::constant(u.clone())).expect("same field"));
            }
        }
        out
    }
}

impl PolyOperator for Nagata {
    fn name(&self) -> String {
        self.curly.name().replacen("curly", "nagata", 1)
    }

    fn domain(&self) -> &Domain {
        &self.curly.domain
    }

    fn slice(&self, a: &PolyIdeal, n: usize) -> Result<SliceValue, OpError> {
        let d = a.domain();
        let sp = a.space(n);
        let cap = self.curly.budget.mult_cap;
        let sl = a.slice(n, cap);
        let mut stabilized = sl.stabilized && !sl.exact;
        let g = a.gcd();
        let dg = g.degree().unwrap();
        // A·D_Q(X) ∩ K[X] ⊆ g·(c(A/g)·D_Q)[X]
        let upper_lat = if n < dg {
            None
        } else {
            let msp = Space::new(d, n - dg + 1);
            let c = content_of(d, a.reduced());
            let cx = poly_module(&msp, &ModuleValue::Lattice(c.lattice().clone()));
            Some(cx.image(&sp, &msp.amb.poly_mult_matrix(g, n + 1)))
        };
        // both sides also lie in A·K[X] = g·K[X]
        let gkx = ModuleValue::Span(multiples_span(&sp, g));
        let mut lower = gkx.clone();
        let mut upper = gkx;
        for q in &self.curly.delta {
            let mut lq = ModuleValue::semilocal(&sp, vec![(q.clone(), sl.lattice.clone())]);
            for h in self.multipliers() {
                let e = h.degree().unwrap();
                let big = a.slice(n + e, cap);
                stabilized |= big.stabilized && !big.exact;
                let bsp = a.space(n + e);
                let target = ModuleValue::semilocal(&bsp, vec![(q.clone(), big.lattice)]);
                let back = target.preimage(&sp, &sp.amb.poly_mult_matrix(&h, n + e + 1));
                lq = lq.sum(&sp, &back).unwrap_or(lq);
            }
            lower = lower.intersect(&sp, &lq);
            match &upper_lat {
                Some(ModuleValue::Lattice(u)) => {
                    upper = upper.intersect(&sp, &ModuleValue::semilocal(&sp, vec![(q.clone(), u.clone())]));
                }
                _ => upper = ModuleValue::zero(&sp),
            }
        }
        let budget = Budget {
            slice: Some(n),
            mult_cap: Some(cap),
            witness_deg: Some(self.curly.budget.witness_deg),
            stabilized,
            ..Budget::default()
        };
        let value = if lower.is_subset(&sp, &upper) {
            CertifiedValue::bracket(&sp, lower, upper)
        } else {
            // slices that have not stabilized can only be trusted from below
            CertifiedValue::lower_bound(lower)
        };
        Ok(SliceValue { n, value: value.with_budget(budget), beyond_polys: false })
    }
}

/// An overring of D[X] of the form `T[X]`.
#[derive(Debug, Clone)]
pub enum PolyRing {
    /// A ring lattice `D ⊆ T ⊆ O`.
    Ring(FractionalIdeal),
    /// `D_P`.
    Local(PrimeIdeal),
    /// K.
    Field,
}

/// `A ↦ ∩_λ A·T_λ[X]`.
#[derive(Debug, Clone)]
pub struct WedgeOverring {
    domain: Domain,
    rings: Vec<PolyRing>,
    budget: PolyBudget,
}

impl WedgeOverring {
    pub fn new(d: &Domain, rings: Vec<PolyRing>, budget: PolyBudget) -> Result<Self, OpError> {
        if rings.is_empty() {
            return Err(OpError::Invalid("empty overring family".into()));
        }
        Ok(WedgeOverring { domain: d.clone(), rings, budget })
    }

    /// A single overring gives a finite-type operation.
    pub fn is_finite_type(&self) -> bool {
        self.rings.len() == 1
    }
}

impl PolyOperator for WedgeOverring {
    fn name(&self) -> String {
        let parts: Vec<String> = self
            .rings
            .iter()
            .map(|r| match r {
                PolyRing::Ring(t) => format!("{t}"),
                PolyRing::Local(p) => format!("loc{}", p.norm()),
                PolyRing::Field => "K".into(),
            })
            .collect();
        format!("wedge_poly({})", parts.join(","))
    }

    fn domain(&self) -> &Domain {
        &self.domain
    }

    fn slice(&self, a: &PolyIdeal, n: usize) -> Result<SliceValue, OpError> {
        let a = if a.domain().kind() == self.domain.kind() { a.clone() } else { a.base_change(&self.domain)? };
        let sp = a.space(n);
        let sl = a.slice(n, self.budget.mult_cap);
        let base = ModuleValue::Lattice(sl.lattice.clone());
        let mut acc = ModuleValue::whole(&sp);
        for r in &self.rings {
            let v = match r {
                PolyRing::Ring(t) => base.extend_ring(&sp, &t.basis()),
                PolyRing::Local(p) => ModuleValue::semilocal(&sp, vec![(p.clone(), sl.lattice.clone())]),
                PolyRing::Field => ModuleValue::Span(multiples_span(&sp, a.gcd())),
            };
            acc = acc.intersect(&sp, &v);
        }
        Ok(SliceValue { n, value: from_slice(&sl, acc, self.budget.mult_cap), beyond_polys: false })
    }
}

/// `A ↦ A` on D[X].
#[derive(Debug, Clone)]
pub struct PolyIdentity {
    pub domain: Domain,
    pub budget: PolyBudget,
}

impl PolyOperator for PolyIdentity {
    fn name(&self) -> String {
        "d_poly".into()
    }

    fn domain(&self) -> &Domain {
        &self.domain
    }

    fn slice(&self, a: &PolyIdeal, n: usize) -> Result<SliceValue, OpError> {
        let sl = a.slice(n, self.budget.mult_cap);
        let v = ModuleValue::Lattice(sl.lattice.clone());
        Ok(SliceValue { n, value: from_slice(&sl, v, self.budget.mult_cap), beyond_polys: false })
    }
}

/// `A ↦ K(X)`.
#[derive(Debug, Clone)]
pub struct PolyTrivial {
    pub domain: Domain,
}

impl PolyOperator for PolyTrivial {
    fn name(&self) -> String {
        "e_poly".into()
    }

    fn domain(&self) -> &Domain {
        &self.domain
    }

    fn slice(&self, a: &PolyIdeal, n: usize) -> Result<SliceValue, OpError> {
        Ok(SliceValue { n, value: CertifiedValue::exact(ModuleValue::whole(&a.space(n))), beyond_polys: true })
    }
}

/// The maximal order of D as a domain of its own.
pub fn maximal_domain(d: &Domain) -> Domain {
    match d.kind() {
        DomainKind::Integers => OrderDomain::integers(),
        DomainKind::Order { m, .. } => OrderDomain::order(m, 1).expect("already validated"),
    }
}

/// `A ↦ ∩ A·V[X]` over the valuation overrings `O_P` (norm ≤ `pool_norm`)
/// and K, evaluated over the maximal order. Dropping valuation rings only
/// enlarges the value, so this bounds `[b_D]` from above.
pub fn b_wedge(d: &Domain, pool_norm: u64, budget: PolyBudget) -> WedgeOverring {
    let o = maximal_domain(d);
    let mut rings: Vec<PolyRing> = o.primes_up_to(pool_norm).into_iter().map(PolyRing::Local).collect();
    rings.push(PolyRing::Field);
    WedgeOverring { domain: o, rings, budget }
}
