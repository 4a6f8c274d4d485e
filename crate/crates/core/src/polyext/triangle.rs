//! ▲^⋆_T: the intersection of `z⁻¹·c(zA)^⋆[X]` over nonzero `z ∈ (T[X] : A)`.

use crate::domain::{Domain, ModuleValue, Space};
use crate::exactnum::{FieldElement, Poly};
use crate::lattice::FractionalIdeal;
use crate::starops::{Budget, CertifiedValue, OpError, PolyExtension, SemistarOp};

use super::operator::{PolyBudget, PolyOperator, SliceValue};
use super::polyideal::{content_of, poly_module, PolyIdeal};

/// Which overring T the witnesses must map A into.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OverTag {
    K,
    O,
    D,
}

#[derive(Debug, Clone)]
pub struct Triangle {
    star: SemistarOp,
    tag: OverTag,
    budget: PolyBudget,
}

/// A witness `z = p/q` with `q | gcd(A)` and its closed content.
struct Witness {
    p: Poly,
    q: Poly,
    closed: ModuleValue,
}

fn k_space(d: &Domain) -> Space {
    Space::new(d, 1)
}

fn fits_in(t: &FractionalIdeal, f: &Poly) -> bool {
    f.coeffs().iter().all(|c| t.contains(c))
}

/// Numerators of the witness pool: 1 and binomials `X^j + u`.
fn numerator_pool(a: &PolyIdeal, w: usize) -> Vec<Poly> {
    let d = a.domain();
    let k = d.field();
    let mut us: Vec<FieldElement> = [1, -1, 2, -2, 3].iter().map(|&n| d.int(n)).collect();
    if d.degree() == 2 {
        let om = d.basis()[1].clone();
        us.push(om.clone());
        us.push(-&om);
        us.push(&om + &d.one());
    }
    // ratios of generator coefficients do not change when A is rescaled
    let mut cs: Vec<FieldElement> = Vec::new();
    for r in a.reduced() {
        for c in r.coeffs() {
            if !c.is_zero() && !cs.contains(c) && cs.len() < 4 {
                cs.push(c.clone());
            }
        }
    }
    for x in &cs {
        for y in &cs {
            if x != y {
                let r = x.checked_div(y).expect("nonzero");
                if !us.contains(&r) {
                    us.push(r);
                }
            }
        }
    }
    let mut out = vec![Poly::one(k)];
    for j in 1..=w {
        for u in &us {
            let p = Poly::monomial(d.one(), j).add(&Poly::constant(u.clone())).expect("same field");
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

/// `{f ∈ K[X]_{≤n} : f·p ∈ q·C[X]}` in `Space(n+1)`.
fn witness_slice(d: &Domain, p: &Poly, q: &Poly, closed: &ModuleValue, n: usize) -> ModuleValue {
    let sp = Space::new(d, n + 1);
    let dp = p.degree().expect("nonzero numerator");
    let dq = q.degree().expect("nonzero denominator");
    if n + dp < dq {
        return ModuleValue::zero(&sp);
    }
    let top = n + dp - dq;
    let inner = Space::new(d, top + 1);
    let cx = poly_module(&inner, closed);
    let out = Space::new(d, n + dp + 1);
    let qm = inner.amb.poly_mult_matrix(q, n + dp + 1);
    let qcx = cx.image(&out, &qm);
    let pm = sp.amb.poly_mult_matrix(p, n + dp + 1);
    qcx.preimage(&sp, &pm)
}

impl Triangle {
    pub fn new(star: &SemistarOp, tag: OverTag, budget: PolyBudget) -> Result<Self, OpError> {
        let d = star.domain();
        let ring = match tag {
            OverTag::K => None,
            OverTag::O => Some(d.maximal_order().clone()),
            OverTag::D => Some(d.ring().clone()),
        };
        if let Some(t) = ring {
            let sp = k_space(d);
            let tv = star.apply(&t)?;
            let ok = tv.exact_value().is_some_and(|v| v.same(&sp, &ModuleValue::Lattice(t.lattice().clone())));
            if !ok {
                return Err(OpError::Invalid(format!("{} does not fix the overring {:?}", star.name(), tag)));
            }
        }
        Ok(Triangle { star: star.clone(), tag, budget })
    }

    pub fn star(&self) -> &SemistarOp {
        &self.star
    }

    pub fn tag(&self) -> OverTag {
        self.tag
    }

    pub fn budget(&self) -> PolyBudget {
        self.budget
    }

    fn closed_content(&self, gens: &[Poly]) -> Result<ModuleValue, OpError> {
        let d = self.star.domain();
        let c = content_of(d, gens);
        Ok(self.star.apply(&c)?.upper_or_whole(&k_space(d)))
    }

    fn witnesses(&self, a: &PolyIdeal) -> Result<Vec<Witness>, OpError> {
        let d = a.domain();
        let g = a.gcd().clone();
        let one = Poly::one(d.field());
        let qs: Vec<Poly> = match self.tag {
            OverTag::K => vec![g],
            _ if g == one => vec![one],
            _ => vec![one, g],
        };
        let t = match self.tag {
            OverTag::K => None,
            OverTag::O => Some(d.maximal_order()),
            OverTag::D => Some(d.ring()),
        };
        let mut out = Vec::new();
        for p in numerator_pool(a, self.budget.witness_deg) {
            for q in &qs {
                let mut zgens = Vec::new();
                let mut ok = true;
                for h in a.gens() {
                    match p.mul(h).expect("same field").exact_div(q).expect("same field") {
                        Some(x) if t.is_none_or(|t| fits_in(t, &x)) => zgens.push(x),
                        _ => {
                            ok = false;
                            break;
                        }
                    }
                }
                if ok {
                    let closed = self.closed_content(&zgens)?;
                    out.push(Witness { p: p.clone(), q: q.clone(), closed });
                }
            }
        }
        Ok(out)
    }

    /// Lower bound in `Space(n+1)` from closed forms on `A' = A/g`:
    /// `E[X] ⊆ A'` gives `E^⋆[X]`, and a constant `a ∈ D` with `h ∈ A'`,
    /// `c(h)^⋆ = D^⋆` gives `D^⋆[X]` (after rescaling by a constant of A').
    fn closed_lower(&self, a: &PolyIdeal, n: usize) -> Result<Option<ModuleValue>, OpError> {
        let d = a.domain();
        let g = a.gcd();
        let dg = g.degree().unwrap();
        if n < dg {
            return Ok(None);
        }
        let m = n - dg;
        let ar = PolyIdeal::new(d, a.reduced().to_vec())?;
        let ksp = k_space(d);
        let msp = Space::new(d, m + 1);
        let mut best: Option<ModuleValue> = None;
        let offer = |v: ModuleValue, best: &mut Option<ModuleValue>| {
            *best = Some(match best.take() {
                None => v,
                Some(b) => b.sum(&msp, &v).unwrap_or(v),
            });
        };
        let e_lat = ar.slice(0, self.budget.mult_cap).lattice;
        if !e_lat.is_zero() {
            let e = FractionalIdeal::from_lattice(d.field(), e_lat.clone());
            if let Some(l) = self.star.apply(&e)?.lower() {
                offer(poly_module(&msp, l), &mut best);
            }
        }
        let d_star = self.star.apply(d.ring())?;
        if let Some(ds) = d_star.exact_value() {
            let constants = FractionalIdeal::from_lattice(d.field(), e_lat).basis();
            // reduced elements of A' often have smaller content than its generators
            let top = ar.max_degree();
            let tsp = ar.space(top);
            let mut hs: Vec<Poly> = ar.gens().to_vec();
            hs.extend(ar.slice(top, self.budget.mult_cap).lattice.basis().iter().map(|v| tsp.amb.vec_poly(v)));
            hs.retain(|h| h.degree().is_some_and(|e| e > 0));
            'outer: for c in &constants {
                for s in [d.one(), c.clone()] {
                    if !d.ring().contains(&c.checked_div(&s).expect("nonzero")) {
                        continue;
                    }
                    let sinv = s.inv().expect("nonzero");
                    for h in &hs {
                        let ch = content_of(d, &[h.scale(&sinv).expect("same field")]);
                        let cv = self.star.apply(&ch)?;
                        if cv.exact_value().is_some_and(|v| v.same(&ksp, ds)) {
                            offer(poly_module(&msp, ds).scale(&msp, &s), &mut best);
                            continue 'outer;
                        }
                    }
                }
            }
        }
        let sp = Space::new(d, n + 1);
        Ok(best.map(|v| v.image(&sp, &msp.amb.poly_mult_matrix(g, n + 1))))
    }

    fn assemble(&self, a: &PolyIdeal, ws: &[Witness], n: usize) -> Result<SliceValue, OpError> {
        let d = a.domain();
        let sp = Space::new(d, n + 1);
        let mut upper = ModuleValue::whole(&sp);
        for w in ws {
            upper = upper.intersect(&sp, &witness_slice(d, &w.p, &w.q, &w.closed, n));
        }
        let sl = a.slice(n, self.budget.mult_cap);
        let mut lower = ModuleValue::Lattice(sl.lattice.clone());
        if let Some(c) = self.closed_lower(a, n)? {
            lower = lower.sum(&sp, &c).unwrap_or(c);
        }
        let mut budget = Budget {
            slice: Some(n),
            mult_cap: Some(self.budget.mult_cap),
            witness_deg: Some(self.budget.witness_deg),
            witnesses: Some(ws.len()),
            stabilized: sl.stabilized && !sl.exact,
            ..Budget::default()
        };
        if ws.is_empty() {
            budget = budget.note("no witness found in the pool");
        }
        let value = CertifiedValue::bracket(&sp, lower, upper).with_budget(budget);
        Ok(SliceValue { n, value, beyond_polys: ws.is_empty() })
    }
}

impl PolyOperator for Triangle {
    fn name(&self) -> String {
        let t = match self.tag {
            OverTag::K => "K",
            OverTag::O => "O",
            OverTag::D => "D",
        };
        format!("tri({}, T={t})", self.star.name())
    }

    fn domain(&self) -> &Domain {
        self.star.domain()
    }

    fn slice(&self, a: &PolyIdeal, n: usize) -> Result<SliceValue, OpError> {
        let ws = self.witnesses(a)?;
        self.assemble(a, &ws, n)
    }

    fn slices(&self, a: &PolyIdeal, upto: usize) -> Result<Vec<SliceValue>, OpError> {
        let ws = self.witnesses(a)?;
        (0..=upto).map(|n| self.assemble(a, &ws, n)).collect()
    }
}

/// `(E[X])^★ ∩ K` read off slice 0.
#[derive(Clone)]
pub struct Contraction<P: PolyOperator + Clone> {
    pub inner: P,
}

impl<P: PolyOperator + Clone> std::fmt::Debug for Contraction<P> {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "contract({})", self.inner.name())
    }
}

/// Contraction of a D[X]-operation back to D.
pub fn contraction_op<P: PolyOperator + ?Sized>(op: &P, e: &FractionalIdeal) -> Result<CertifiedValue, OpError> {
    if e.is_zero() {
        return Err(OpError::ZeroIdeal);
    }
    let a = PolyIdeal::extended(op.domain(), e)?;
    let s = op.slice(&a, 0)?;
    if s.beyond_polys {
        // K(X) ∩ K = K
        return Ok(CertifiedValue::exact(ModuleValue::whole(&k_space(op.domain()))));
    }
    Ok(s.value)
}

impl<P: PolyOperator + Clone + 'static> PolyExtension for Contraction<P> {
    fn name(&self) -> String {
        self.inner.name()
    }

    fn contract(&self, e: &FractionalIdeal) -> Result<CertifiedValue, OpError> {
        contraction_op(&self.inner, e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::OrderDomain;
    use crate::exactnum::parse_poly;

    #[test]
    fn two_x_closes_to_d_x() {
        let d = OrderDomain::order(-3, 2).unwrap();
        let k = d.field();
        let a = PolyIdeal::new(&d, vec![parse_poly(k, "2").unwrap(), parse_poly(k, "X").unwrap()]).unwrap();
        let tri = Triangle::new(&SemistarOp::identity(&d), OverTag::K, PolyBudget::default()).unwrap();
        for s in tri.slices(&a, 3).unwrap() {
            let sp = a.space(s.n);
            let dx = poly_module(&sp, &ModuleValue::Lattice(d.ring().lattice().clone()));
            assert!(s.value.exact_value().is_some_and(|v| v.same(&sp, &dx)), "slice {}", s.n);
        }
    }

    #[test]
    fn extended_ideals_are_fixed_up_to_closure() {
        let d = OrderDomain::order(-3, 2).unwrap();
        let e = d.conductor().clone();
        let a = PolyIdeal::extended(&d, &e).unwrap();
        let v = SemistarOp::divisorial(&d);
        let tri = Triangle::new(&v, OverTag::K, PolyBudget::default()).unwrap();
        let ev = v.apply(&e).unwrap();
        for s in tri.slices(&a, 2).unwrap() {
            let sp = a.space(s.n);
            let want = poly_module(&sp, ev.exact_value().unwrap());
            assert!(s.value.exact_value().is_some_and(|x| x.same(&sp, &want)));
        }
    }
}
