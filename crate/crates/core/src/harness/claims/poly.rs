use rand::Rng;

use crate::domain::{Domain, ModuleValue, Space};
use crate::exactnum::{parse_poly, Poly};
use crate::harness::corpus;
use crate::polyext::{
    eab_extension_check, family, finite_type_failure_probe, poly_module, strict_extension_check, strict_family_probe,
    PolyIdeal, PolyIdentity, PolyOperator, StrictVerdict, Triangle, OverTag,
};
use crate::starops::{value_subset, CertifiedValue, SemistarOp, Tri};

use super::{ClaimResult, Config, Recorder, DOMAIN_NAMES};

/// d, v and the spectral operation at the primes above 2.
fn strict_ops(d: &Domain) -> Vec<SemistarOp> {
    vec![
        SemistarOp::identity(d),
        SemistarOp::divisorial(d),
        SemistarOp::spectral(d, d.primes_above(2)),
    ]
}

pub fn triangle_strict_extension(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("triangle-strict-extension", cfg);
    let mut rng = cfg.rng("triangle-strict-extension");
    for (name, d) in cfg.test_domains(&DOMAIN_NAMES) {
        let samples: Vec<_> = (0..20).map(|_| corpus::random_ideal(&d, &mut rng)).collect();
        for star in strict_ops(&d) {
            rec.run(format!("▲ for {} over {name}, 20 ideals, slices 0..={}", star.name(), cfg.budget.slice), || {
                let tri = match Triangle::new(&star, OverTag::K, cfg.budget) {
                    Ok(t) => t,
                    Err(e) => return (Tri::False, Some(e.to_string())),
                };
                match strict_extension_check(&tri, &star, &samples, cfg.budget.slice) {
                    Ok(r) => match r.verdict {
                        StrictVerdict::Strict => (Tri::True, None),
                        StrictVerdict::Inconclusive => (Tri::Unknown, r.witness),
                        _ => (Tri::False, r.witness),
                    },
                    Err(e) => (Tri::False, Some(e.to_string())),
                }
            });
        }
    }
    rec.finish()
}

fn two_x(d: &Domain) -> PolyIdeal {
    let k = d.field();
    PolyIdeal::new(d, vec![parse_poly(k, "2").expect("literal"), parse_poly(k, "X").expect("literal")]).expect("nonzero")
}

pub fn triangle_two_x(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("triangle-two-x", cfg);
    if !cfg.wants("z-sqrt-3") {
        return rec.finish();
    }
    let d = super::named_domain("z-sqrt-3").expect("builtin");
    let a = two_x(&d);
    let star = SemistarOp::identity(&d);
    rec.run(format!("(2, X)^▲ = D[X] for d over z-sqrt-3, slices 0..={}", cfg.budget.slice), || {
        let tri = Triangle::new(&star, OverTag::K, cfg.budget).expect("d fixes K");
        let slices = match tri.slices(&a, cfg.budget.slice) {
            Ok(s) => s,
            Err(e) => return (Tri::False, Some(e.to_string())),
        };
        let mut acc = Tri::True;
        for s in slices {
            let sp = Space::new(&d, s.n + 1);
            let want = CertifiedValue::exact(poly_module(&sp, &ModuleValue::Lattice(d.ring().lattice().clone())));
            let t = value_subset(&sp, &s.value, &want).and(value_subset(&sp, &want, &s.value));
            if t == Tri::False {
                return (Tri::False, Some(format!("slice {} differs from D[X]", s.n)));
            }
            acc = acc.and(t);
        }
        (acc, None)
    });
    rec.run("(2, X) is a proper ideal of D[X] over z-sqrt-3", || {
        let id = PolyIdentity { domain: d.clone(), budget: cfg.budget };
        let s0 = id.slice(&a, 0).expect("slice");
        let sp = Space::new(&d, 1);
        let whole = ModuleValue::Lattice(d.ring().lattice().clone());
        match s0.value.exact_value() {
            Some(v) if !v.same(&sp, &whole) => (Tri::True, None),
            Some(_) => (Tri::False, Some("(2, X) ∩ K = D".into())),
            None => (Tri::Unknown, None),
        }
    });
    rec.finish()
}

pub fn triangle_bounded(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("triangle-bounded-by-extension", cfg);
    let mut rng = cfg.rng("triangle-bounded-by-extension");
    let budget = crate::polyext::PolyBudget { slice: cfg.budget.slice.min(3), ..cfg.budget };
    for (name, d) in cfg.test_domains(&["z", "z-sqrt-3"]) {
        for star in [SemistarOp::identity(&d), SemistarOp::divisorial(&d)] {
            for (m, count) in [(1usize, 17usize), (2, 17), (3, 16)] {
                rec.run(format!("{count} random B ⊆ X^-{m} D[X], {} over {name}", star.name()), || {
                    match finite_type_failure_probe(&star, m, count, &mut rng, budget) {
                        Ok(r) if r.escapes > 0 => (Tri::False, Some(format!("{} slices escaped", r.escapes))),
                        Ok(r) if r.inconclusive > 0 => (Tri::Unknown, None),
                        Ok(_) => (Tri::True, None),
                        Err(e) => (Tri::False, Some(e.to_string())),
                    }
                });
            }
        }
    }
    rec.finish()
}

fn random_pidl(d: &Domain, rng: &mut impl Rng) -> PolyIdeal {
    let n = rng.gen_range(1..=2);
    let gens: Vec<Poly> = (0..n)
        .map(|_| {
            let deg = rng.gen_range(0..=2);
            corpus::random_integral_poly(d, rng, deg, 3)
        })
        .collect();
    PolyIdeal::new(d, gens).expect("nonzero")
}

pub fn strict_family(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("strict-family", cfg);
    if !cfg.wants("z") {
        return rec.finish();
    }
    let d = super::named_domain("z").expect("builtin");
    let star = SemistarOp::identity(&d);
    for (n, m) in [(1, 2), (2, 3)] {
        rec.run(format!("member {n} separated from member {m} over z, N = 4"), || {
            match strict_family_probe(&star, n, m, 4, cfg.budget) {
                Ok(p) if p.separated => (Tri::True, Some(format!("{} lies in member {m} only", p.element))),
                Ok(p) => (Tri::False, Some(format!("{} not separating", p.element))),
                Err(e) => (Tri::False, Some(e.to_string())),
            }
        });
    }
    let mut rng = cfg.rng("strict-family");
    let samples: Vec<_> = (0..20).map(|_| random_pidl(&d, &mut rng)).collect();
    let budget = crate::polyext::PolyBudget { slice: cfg.budget.slice.min(3), ..cfg.budget };
    rec.run(format!("member 1 ≤ member 2 ≤ ▲ over z on 20 ideals, slices 0..={}", budget.slice), || {
        let fam = family(&star, 4, budget).expect("d over z");
        let tri = Triangle::new(&star, OverTag::K, budget).expect("d fixes K");
        let mut acc = Tri::True;
        for a in &samples {
            for n in 0..=budget.slice {
                let sp = Space::new(&d, n + 1);
                let (Ok(s1), Ok(s2), Ok(st)) = (fam[0].slice(a, n), fam[1].slice(a, n), tri.slice(a, n)) else {
                    return (Tri::False, Some(format!("evaluation failed on {a}")));
                };
                let t = value_subset(&sp, &s1.value, &s2.value).and(value_subset(&sp, &s2.value, &st.value));
                if t == Tri::False {
                    return (Tri::False, Some(format!("slice {n} of {a}")));
                }
                acc = acc.and(t);
            }
        }
        (acc, None)
    });
    rec.finish()
}

pub fn eab_extension(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("eab-extension", cfg);
    if !cfg.wants("z-sqrt-3") {
        return rec.finish();
    }
    let d = super::named_domain("z-sqrt-3").expect("builtin");
    let k = d.field();
    let budget = crate::polyext::PolyBudget { slice: cfg.budget.slice.min(2), ..cfg.budget };
    let hs = [vec!["2", "X"], vec!["1 + w", "X"], vec!["2", "1 + X"]];
    let es = [("P", d.conductor().clone()), ("3D", d.ideal(&[d.int(3)])), ("(2w, 4)", d.ideal(&[&d.basis()[1] * &d.int(2), d.int(4)]))];
    for star in [SemistarOp::identity(&d), SemistarOp::divisorial(&d)] {
        for h in &hs {
            for (ename, e) in &es {
                let gens: Vec<Poly> = h.iter().map(|s| parse_poly(k, s).expect("literal")).collect();
                let hi = PolyIdeal::new(&d, gens).expect("nonzero");
                rec.run(format!("{} with E = {ename}, H = {hi} over z-sqrt-3", star.name()), || {
                    match eab_extension_check(&star, &hi, e, budget) {
                        Ok(r) => (r.holds, None),
                        Err(err) => (Tri::False, Some(err.to_string())),
                    }
                });
            }
        }
    }
    rec.finish()
}
