//! Checks of extension properties and the probes around non-finite-type
//! behavior.

use rand::Rng;
use serde::Serialize;

use crate::domain::{ModuleValue, Space};
use crate::exactnum::Poly;
use crate::lattice::FractionalIdeal;
use crate::starops::{default_eab_pool, eab_approx, value_subset, CertifiedValue, OpError, SemistarOp, Tri};

use super::operator::{PolyBudget, PolyOperator, SliceValue};
use super::polyideal::{multiples_span, poly_module, PolyIdeal};
use super::triangle::{OverTag, Triangle};

/// `C[X]` bounds for a certified value `C` in K.
pub fn extend_certified(sp: &Space, c: &CertifiedValue) -> CertifiedValue {
    let l = c.lower().map(|v| poly_module(sp, v));
    let u = c.upper().map(|v| poly_module(sp, v));
    CertifiedValue::from_bounds(sp, l, u)
}

fn same_tri(sp: &Space, a: &CertifiedValue, b: &CertifiedValue) -> Tri {
    value_subset(sp, a, b).and(value_subset(sp, b, a))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum StrictVerdict {
    /// `(E[X])^★ = E^⋆[X]` on every sample and slice.
    Strict,
    /// `(E[X])^★ ∩ K = E^⋆` but some slice differs from `E^⋆[X]`.
    ExtensionOnly,
    /// Some contraction differs from `E^⋆`.
    Fails,
    Inconclusive,
}

#[derive(Debug, Clone, Serialize)]
pub struct StrictReport {
    pub verdict: StrictVerdict,
    pub witness: Option<String>,
    pub samples: usize,
}

/// Compares `(E[X])^★` with `E^⋆[X]` on slices `0..=slice_cap`.
pub fn strict_extension_check(
    op: &dyn PolyOperator,
    star: &SemistarOp,
    samples: &[FractionalIdeal],
    slice_cap: usize,
) -> Result<StrictReport, OpError> {
    let d = star.domain();
    let mut ext = Tri::True;
    let mut strict = Tri::True;
    let mut witness = None;
    for e in samples {
        let a = PolyIdeal::extended(op.domain(), e)?;
        let target = star.apply(e)?;
        for s in op.slices(&a, slice_cap)? {
            let sp = Space::new(d, s.n + 1);
            let want = extend_certified(&sp, &target);
            let got = if s.n == 0 && s.beyond_polys {
                CertifiedValue::exact(ModuleValue::whole(&sp))
            } else {
                s.value.clone()
            };
            let eq = same_tri(&sp, &got, &want);
            if s.n == 0 {
                if eq == Tri::False && witness.is_none() {
                    witness = Some(format!("contraction differs on {e}"));
                }
                ext = ext.and(eq);
            }
            let slice_eq = if s.beyond_polys { Tri::False } else { eq };
            if slice_eq == Tri::False && strict != Tri::False && witness.is_none() {
                witness = Some(format!("slice {} differs on {e}", s.n));
            }
            strict = strict.and(slice_eq);
        }
    }
    let verdict = match (ext, strict) {
        (Tri::False, _) => StrictVerdict::Fails,
        (Tri::True, Tri::True) => StrictVerdict::Strict,
        (Tri::True, Tri::False) => StrictVerdict::ExtensionOnly,
        _ => StrictVerdict::Inconclusive,
    };
    Ok(StrictReport { verdict, witness, samples: samples.len() })
}

/// The fixed list `f₁, f₂, …` of pairwise nonassociate irreducibles:
/// linear `X − c` interleaved with `X² + 1` when it is irreducible over K.
pub fn irreducible_list(d: &crate::domain::Domain, count: usize) -> Vec<Poly> {
    let k = d.field();
    let mut out = Vec::new();
    let mut c = 0i64;
    let quad_ok = k.m() != Some(-1);
    while out.len() < count {
        out.push(Poly::from_ints(k, &[-c, 1]));
        if out.len() == 2 && quad_ok && out.len() < count {
            out.push(Poly::from_ints(k, &[1, 0, 1]));
        }
        c = if c <= 0 { -c + 1 } else { -c };
    }
    out
}

/// `num/den` in K(X).
#[derive(Debug, Clone)]
pub struct RatFunc {
    pub num: Poly,
    pub den: Poly,
}

impl RatFunc {
    fn reduced_den(&self) -> Poly {
        let g = self.num.gcd(&self.den).expect("same field");
        self.den.exact_div(&g).expect("same field").expect("gcd divides")
    }
}

/// `K[X]` localized at the complement of finitely many irreducibles `S`:
/// the fractions whose reduced denominator avoids every element of S.
/// `S = ∅` is K(X).
#[derive(Debug, Clone)]
pub struct LocalRing {
    pub avoid: Vec<Poly>,
}

impl LocalRing {
    pub fn at(f: &Poly) -> Self {
        LocalRing { avoid: vec![f.clone()] }
    }

    pub fn whole() -> Self {
        LocalRing { avoid: Vec::new() }
    }

    pub fn is_whole(&self) -> bool {
        self.avoid.is_empty()
    }

    pub fn contains(&self, r: &RatFunc) -> bool {
        let den = r.reduced_den();
        self.avoid.iter().all(|f| !f.divides(&den).expect("same field"))
    }

    fn has(&self, f: &Poly) -> bool {
        self.avoid.iter().any(|g| g.divides(f).expect("same field") && f.divides(g).expect("same field"))
    }

    /// `R·R'`: a denominator is allowed when either side allows it.
    pub fn product(&self, other: &LocalRing) -> LocalRing {
        LocalRing { avoid: self.avoid.iter().filter(|f| other.has(f)).cloned().collect() }
    }

    pub fn intersect(&self, other: &LocalRing) -> LocalRing {
        let mut avoid = self.avoid.clone();
        avoid.extend(other.avoid.iter().filter(|f| !self.has(f)).cloned());
        LocalRing { avoid }
    }

    /// `(K[X] : R)` is nonzero only for `R = K[X]`, which is never of this
    /// form, so the ▲ value of R is always K(X).
    pub fn triangle(&self) -> LocalRing {
        LocalRing::whole()
    }
}

/// `⋆_k = (∧_{k ≤ i ≤ N} ★_{K[X]_{(f_i)}}) ∧ ▲^⋆`.
#[derive(Debug, Clone)]
pub struct FamilyMember {
    pub k: usize,
    pub fs: Vec<Poly>,
    pub tri: Triangle,
}

impl FamilyMember {
    /// `R^{⋆_k}` for a localization R of K[X].
    pub fn apply_local(&self, r: &LocalRing) -> LocalRing {
        let mut acc = r.triangle();
        for f in &self.fs[self.k - 1..] {
            acc = acc.intersect(&r.product(&LocalRing::at(f)));
        }
        acc
    }
}

impl PolyOperator for FamilyMember {
    fn name(&self) -> String {
        format!("family[{}..{}]", self.k, self.fs.len())
    }

    fn domain(&self) -> &crate::domain::Domain {
        self.tri.star().domain()
    }

    fn slice(&self, a: &PolyIdeal, n: usize) -> Result<SliceValue, OpError> {
        let mut s = self.tri.slice(a, n)?;
        let sp = a.space(n);
        let budget = s.value.budget.clone();
        for f in &self.fs[self.k - 1..] {
            // A·K[X]_{(f)} ∩ K[X] = f^{v_f(g)}·K[X]
            let mut h = Poly::one(sp.amb.field);
            let mut g = a.gcd().clone();
            while let Some(q) = g.exact_div(f).expect("same field") {
                g = q;
                h = h.mul(f).expect("same field");
            }
            let span = ModuleValue::Span(multiples_span(&sp, &h));
            let l = s.value.lower().map(|v| v.intersect(&sp, &span));
            let u = s.value.upper().map(|v| v.intersect(&sp, &span));
            s.value = CertifiedValue::from_bounds(&sp, l, u);
        }
        s.value = s.value.with_budget(budget);
        Ok(s)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyProbe {
    pub n: usize,
    pub m: usize,
    pub big_n: usize,
    pub element: String,
    pub in_star_m: bool,
    pub in_star_n: bool,
    pub separated: bool,
}

/// Separates `⋆_n` from `⋆_m` on `B = K[X]_{(f_n)}` by `1/f_n`.
pub fn strict_family_probe(
    star: &SemistarOp,
    n: usize,
    m: usize,
    big_n: usize,
    budget: PolyBudget,
) -> Result<FamilyProbe, OpError> {
    if n == 0 || n >= m || m > big_n {
        return Err(OpError::Invalid(format!("need 1 ≤ n < m ≤ N, got ({n}, {m}, {big_n})")));
    }
    let fam = family(star, big_n, budget)?;
    let f = &fam[0].fs[n - 1];
    let b = LocalRing::at(f);
    let r = RatFunc { num: Poly::one(f.field()), den: f.clone() };
    let in_m = fam[m - 1].apply_local(&b).contains(&r);
    let in_n = fam[n - 1].apply_local(&b).contains(&r);
    Ok(FamilyProbe {
        n,
        m,
        big_n,
        element: format!("1/({f})"),
        in_star_m: in_m,
        in_star_n: in_n,
        separated: in_m && !in_n,
    })
}

/// Family members `⋆_1, …, ⋆_N`.
pub fn family(star: &SemistarOp, big_n: usize, budget: PolyBudget) -> Result<Vec<FamilyMember>, OpError> {
    let fs = irreducible_list(star.domain(), big_n);
    let tri = Triangle::new(star, OverTag::K, budget)?;
    Ok((1..=big_n).map(|k| FamilyMember { k, fs: fs.clone(), tri: tri.clone() }).collect())
}

#[derive(Debug, Clone, Serialize)]
pub struct FiniteTypeProbe {
    pub m: usize,
    pub probes: usize,
    pub escapes: usize,
    pub inconclusive: usize,
}

/// Random f.g. `B = X^{-m}·B'` with `B' ⊆ D[X]` of degree ≤ m: checks that
/// every ▲ upper slice of B stays inside `X^{-m}·D^⋆[X]`. Scaling by `X^m`
/// turns this into `B'^▲ ⊆ D^⋆[X]`, which is what gets evaluated.
pub fn finite_type_failure_probe(
    star: &SemistarOp,
    m: usize,
    count: usize,
    rng: &mut impl Rng,
    budget: PolyBudget,
) -> Result<FiniteTypeProbe, OpError> {
    let d = star.domain();
    let tri = Triangle::new(star, OverTag::K, budget)?;
    let ds = star.apply(d.ring())?;
    let mut escapes = 0;
    let mut inconclusive = 0;
    for _ in 0..count {
        let ngens = rng.gen_range(1..=3);
        let gens: Vec<Poly> = (0..ngens)
            .map(|_| {
                let deg = rng.gen_range(0..=m.clamp(1, 3));
                crate::harness::corpus::random_integral_poly(d, rng, deg, 4)
            })
            .collect();
        let b = PolyIdeal::new(d, gens)?;
        for s in tri.slices(&b, budget.slice)? {
            let sp = Space::new(d, s.n + 1);
            let bound = extend_certified(&sp, &ds);
            match value_subset(&sp, &CertifiedValue::upper_bound(s.value.upper_or_whole(&sp)), &bound) {
                Tri::True => {}
                Tri::False => escapes += 1,
                Tri::Unknown => inconclusive += 1,
            }
        }
    }
    Ok(FiniteTypeProbe { m, probes: count, escapes, inconclusive })
}

#[derive(Debug, Clone, Serialize)]
pub struct EabCheck {
    pub holds: Tri,
    pub slices: usize,
}

/// Slice check of `((E[X]H)^▲ : H^▲) ⊆ E^{⋆_a}[X]`: the left side is bounded
/// above by `{f : f·h ∈ (E[X]H)^▲}` over the generators h of H, the right
/// side from below by the eab evaluator.
pub fn eab_extension_check(
    star: &SemistarOp,
    h: &PolyIdeal,
    e: &FractionalIdeal,
    budget: PolyBudget,
) -> Result<EabCheck, OpError> {
    let d = star.domain();
    if !e.is_subset(d.ring()) || !h.content().is_subset(d.ring()) {
        return Err(OpError::Invalid("E and H must be integral".into()));
    }
    let eh = PolyIdeal::extended(d, e)?.mul(h)?;
    let tri = Triangle::new(star, OverTag::K, budget)?;
    let top = budget.slice + h.max_degree();
    let eh_slices = tri.slices(&eh, top)?;
    let pool = default_eab_pool(d, star.pool_norm());
    let ea = eab_approx(star, e, &pool)?;
    let mut holds = Tri::True;
    for n in 0..=budget.slice {
        let sp = Space::new(d, n + 1);
        let mut left = ModuleValue::whole(&sp);
        for g in h.gens() {
            let k = n + g.degree().unwrap();
            let ksp = Space::new(d, k + 1);
            let up = eh_slices[k].value.upper_or_whole(&ksp);
            left = left.intersect(&sp, &up.preimage(&sp, &sp.amb.poly_mult_matrix(g, k + 1)));
        }
        let right = extend_certified(&sp, &ea);
        holds = holds.and(match right.lower() {
            Some(r) if left.is_subset(&sp, r) => Tri::True,
            _ => Tri::Unknown,
        });
    }
    Ok(EabCheck { holds, slices: budget.slice + 1 })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::OrderDomain;
    use crate::exactnum::parse_poly;
    use crate::harness::corpus;
    use crate::polyext::{CurlyStable, PolyTrivial};

    #[test]
    fn family_separates_over_z() {
        let z = OrderDomain::integers();
        let d_op = SemistarOp::identity(&z);
        let p = strict_family_probe(&d_op, 1, 2, 4, PolyBudget::default()).unwrap();
        assert!(p.separated, "{p:?}");
        let p = strict_family_probe(&d_op, 2, 4, 4, PolyBudget::default()).unwrap();
        assert!(p.separated, "{p:?}");
        assert!(strict_family_probe(&d_op, 3, 3, 4, PolyBudget::default()).is_err());
        let fs = irreducible_list(&z, 5);
        assert_eq!(fs[2], parse_poly(z.field(), "X^2 + 1").unwrap());
    }

    #[test]
    fn strictness_verdicts() {
        let d = OrderDomain::order(-3, 2).unwrap();
        let p2 = d.primes_above(2).remove(0);
        let star = SemistarOp::spectral(&d, vec![p2.clone()]);
        let budget = PolyBudget { slice: 2, ..PolyBudget::default() };
        let samples = vec![d.conductor().clone(), d.ideal(&[d.int(2)])];
        let tri = Triangle::new(&star, OverTag::K, budget).unwrap();
        let r = strict_extension_check(&tri, &star, &samples, 2).unwrap();
        assert_eq!(r.verdict, StrictVerdict::Strict, "{r:?}");
        let curly = CurlyStable::new(&star, budget).unwrap();
        let r = strict_extension_check(&curly, &star, &samples, 2).unwrap();
        assert_eq!(r.verdict, StrictVerdict::Strict, "{r:?}");
        let e = SemistarOp::trivial(&d);
        let r = strict_extension_check(&PolyTrivial { domain: d.clone() }, &e, &samples, 1).unwrap();
        assert_eq!(r.verdict, StrictVerdict::ExtensionOnly, "{r:?}");
    }

    #[test]
    fn finite_type_probe_stays_inside() {
        let z = OrderDomain::integers();
        let d_op = SemistarOp::identity(&z);
        let mut rng = corpus::rng(3);
        let budget = PolyBudget { slice: 2, ..PolyBudget::default() };
        let r = finite_type_failure_probe(&d_op, 1, 4, &mut rng, budget).unwrap();
        assert_eq!(r.escapes, 0, "{r:?}");
    }

    #[test]
    fn eab_on_conductor() {
        let d = OrderDomain::order(-3, 2).unwrap();
        let k = d.field();
        let star = SemistarOp::identity(&d);
        let h = PolyIdeal::new(&d, vec![parse_poly(k, "2").unwrap(), parse_poly(k, "X").unwrap()]).unwrap();
        let budget = PolyBudget { slice: 1, ..PolyBudget::default() };
        let r = eab_extension_check(&star, &h, d.conductor(), budget).unwrap();
        assert_eq!(r.holds, Tri::True);
    }
}
