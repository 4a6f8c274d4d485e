use crate::domain::{ModuleValue, PrimeIdeal, Space};
use crate::lattice::FractionalIdeal;

use super::certified::{Budget, CertifiedValue};
use super::eab::eab_approx;
use super::op::{KnownQMax, OpError, OpKind, SemistarOp};
use super::quasi::{quasi_ideal_test, Tri};

fn lat(e: &FractionalIdeal) -> ModuleValue {
    ModuleValue::Lattice(e.lattice().clone())
}

impl SemistarOp {
    /// The ambient K of this operation's domain.
    pub fn space(&self) -> Space {
        Space::new(self.domain(), 1)
    }

    pub fn prime_pool(&self) -> Vec<PrimeIdeal> {
        self.domain().primes_up_to(self.pool_norm())
    }

    /// Pool primes certified quasi-maximal.
    pub fn pool_qmax(&self) -> &[PrimeIdeal] {
        self.qmax_cache().get_or_init(|| {
            self.prime_pool()
                .into_iter()
                .filter(|p| quasi_ideal_test(self, p.ideal()) == Tri::True)
                .collect()
        })
    }

    /// `E^⋆` for a nonzero finitely generated ideal.
    pub fn apply(&self, e: &FractionalIdeal) -> Result<CertifiedValue, OpError> {
        if e.is_zero() {
            return Err(OpError::ZeroIdeal);
        }
        let d = self.domain();
        let sp = self.space();
        Ok(match self.kind() {
            OpKind::Identity => CertifiedValue::exact(lat(e)),
            OpKind::Trivial => CertifiedValue::exact(ModuleValue::whole(&sp)),
            OpKind::Divisorial => {
                let inner = d.ring().colon(e).map_err(|x| OpError::Invalid(x.to_string()))?;
                let v = d.ring().colon(&inner).map_err(|x| OpError::Invalid(x.to_string()))?;
                CertifiedValue::exact(lat(&v))
            }
            OpKind::Overring(t) => CertifiedValue::exact(lat(&d.extend(e, t))),
            OpKind::B => CertifiedValue::exact(lat(&d.extend(e, d.maximal_order()))),
            OpKind::Spectral(delta) => CertifiedValue::exact(ModuleValue::semilocal(
                &sp,
                delta.iter().map(|p| (p.clone(), e.lattice().clone())).collect(),
            )),
            OpKind::Wedge(ops) => {
                let vals: Vec<CertifiedValue> = ops.iter().map(|o| o.apply(e)).collect::<Result<_, _>>()?;
                let mut budget = Budget::default();
                let mut lower: Option<ModuleValue> = Some(ModuleValue::whole(&sp));
                let mut upper = ModuleValue::whole(&sp);
                for v in &vals {
                    budget.merge(&v.budget);
                    // E ⊆ E^⋆ for every member, so E is a fallback lower bound
                    lower = lower.map(|l| l.intersect(&sp, &v.lower_or(lat(e))));
                    if let Some(u) = v.upper() {
                        upper = upper.intersect(&sp, u);
                    }
                }
                CertifiedValue::from_bounds(&sp, lower, Some(upper)).with_budget(budget)
            }
            OpKind::Stable(inner) => self.apply_stable(inner, e)?,
            OpKind::Eab(inner, pool) => eab_approx(inner, e, pool)?,
            OpKind::Contraction(ext) => ext.contract(e)?,
        })
    }

    fn apply_stable(&self, inner: &SemistarOp, e: &FractionalIdeal) -> Result<CertifiedValue, OpError> {
        let d = self.domain();
        let sp = self.space();
        let mut budget = Budget { prime_pool_norm: Some(self.pool_norm()), ..Budget::default() };
        match inner.known_qmax() {
            KnownQMax::All => {
                // ∩ over all maximal ideals of E·D_M is E itself
                budget = budget.note("every prime is quasi-maximal");
                return Ok(CertifiedValue::exact(lat(e)).with_budget(budget));
            }
            KnownQMax::Finite(delta) => {
                budget = budget.note("quasi-maximal primes known in closed form");
                let v = ModuleValue::semilocal(&sp, delta.iter().map(|p| (p.clone(), e.lattice().clone())).collect());
                return Ok(CertifiedValue::exact(v).with_budget(budget));
            }
            KnownQMax::Unknown => {}
        }
        // lower: Σ (E:J) over J with J^⋆ = D^⋆
        let d_star = inner.apply(d.ring())?;
        let Some(d_star) = d_star.exact_value().cloned() else {
            return Err(OpError::Unsupported(format!("D^{} is not known exactly", inner.name())));
        };
        let pool = self.prime_pool();
        let mut js: Vec<FractionalIdeal> = vec![d.ring().clone()];
        for (i, p) in pool.iter().enumerate() {
            js.push(p.ideal().clone());
            for q in &pool[i..] {
                js.push(p.ideal().mul(q.ideal()).expect("same field"));
            }
        }
        let mut lower = lat(e);
        let mut used = 0;
        for j in &js {
            let jv = inner.apply(j)?;
            if jv.exact_value().is_some_and(|v| v.same(&sp, &d_star)) {
                used += 1;
                let c = e.colon(j).map_err(|x| OpError::Invalid(x.to_string()))?;
                lower = lower.sum(&sp, &lat(&c))?;
            }
        }
        budget.j_pool_size = Some(used);
        let qmax = inner.pool_qmax();
        let upper = ModuleValue::semilocal(&sp, qmax.iter().map(|p| (p.clone(), e.lattice().clone())).collect());
        Ok(CertifiedValue::bracket(&sp, lower, upper).with_budget(budget.note("quasi-maximal primes restricted to the pool")))
    }

    /// Evaluation on values that need not be finitely generated (used for
    /// idempotence checks on closure outputs).
    pub fn apply_module(&self, m: &ModuleValue) -> Result<CertifiedValue, OpError> {
        let sp = self.space();
        if m.is_zero() {
            return Err(OpError::ZeroIdeal);
        }
        if let ModuleValue::Lattice(l) = m {
            return self.apply(&FractionalIdeal::from_lattice(self.domain().field(), l.clone()));
        }
        if m.is_whole() {
            return Ok(CertifiedValue::exact(m.clone()));
        }
        let d = self.domain();
        let restrict = |delta: &[PrimeIdeal]| -> ModuleValue {
            match m {
                ModuleValue::Semilocal(c) => ModuleValue::semilocal(
                    &sp,
                    c.iter().filter(|(p, _)| delta.contains(p)).cloned().collect(),
                ),
                _ => m.clone(),
            }
        };
        let componentwise_v = || -> Result<ModuleValue, OpError> {
            match m {
                ModuleValue::Semilocal(c) => {
                    let mut comps = Vec::new();
                    for (p, l) in c {
                        let li = FractionalIdeal::from_lattice(d.field(), l.clone());
                        let inner = d.ring().colon(&li).map_err(|x| OpError::Invalid(x.to_string()))?;
                        let v = d.ring().colon(&inner).map_err(|x| OpError::Invalid(x.to_string()))?;
                        comps.push((p.clone(), v.lattice().clone()));
                    }
                    Ok(ModuleValue::semilocal(&sp, comps))
                }
                _ => Ok(m.clone()),
            }
        };
        let v = match self.kind() {
            OpKind::Identity => m.clone(),
            OpKind::Trivial => ModuleValue::whole(&sp),
            OpKind::Divisorial if self.flags().finite_type => componentwise_v()?,
            // (D : M) = 0 for a module that is not finitely generated
            OpKind::Divisorial => ModuleValue::whole(&sp),
            OpKind::Overring(t) => m.extend_ring(&sp, &t.basis()),
            OpKind::B => m.extend_ring(&sp, &d.maximal_order().basis()),
            OpKind::Spectral(delta) => restrict(delta),
            OpKind::Stable(inner) => match inner.known_qmax() {
                KnownQMax::All => m.clone(),
                KnownQMax::Finite(delta) => restrict(&delta),
                KnownQMax::Unknown => {
                    return Err(OpError::Unsupported(format!("{} on a non-finitely generated module", self.name())))
                }
            },
            OpKind::Wedge(ops) => {
                let mut acc = ModuleValue::whole(&sp);
                for o in ops {
                    let r = o.apply_module(m)?;
                    let Some(x) = r.exact_value() else {
                        return Err(OpError::Unsupported("inexact member of a wedge".into()));
                    };
                    acc = acc.intersect(&sp, x);
                }
                acc
            }
            OpKind::Eab(..) | OpKind::Contraction(_) => {
                return Err(OpError::Unsupported(format!("{} on a non-finitely generated module", self.name())))
            }
        };
        Ok(CertifiedValue::exact(v))
    }
}
