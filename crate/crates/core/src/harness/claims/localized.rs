use rand::Rng;

use crate::domain::{Domain, ModuleValue, Space};
use crate::exactnum::{parse_poly, Poly};
use crate::harness::corpus;
use crate::polyext::{
    b_membership_certificate, b_wedge, classify_poly_qmax, strict_extension_check, BCertificate, CurlyStable, Nagata,
    OverTag, PolyBudget, PolyIdeal, PolyOperator, PolyPrime, StrictVerdict, Triangle,
};
use crate::starops::{value_subset, CertifiedValue, SemistarOp, Tri};

use super::{ClaimResult, Config, Recorder};

/// `{P₂}` and `{P₂, P₅}` (all primes above 5 when 5 splits).
fn prime_sets(d: &Domain) -> Vec<(String, Vec<crate::domain::PrimeIdeal>)> {
    let p2 = d.primes_above(2);
    let mut p25 = p2.clone();
    p25.extend(d.primes_above(5));
    vec![("{P2}".into(), p2), ("{P2,P5}".into(), p25)]
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

fn same(sp: &Space, a: &CertifiedValue, b: &CertifiedValue) -> Tri {
    value_subset(sp, a, b).and(value_subset(sp, b, a))
}

/// `a ⊆ upper(b)`: true when the best known value of `a` fits, false when
/// even its lower bound does not.
fn below_upper(sp: &Space, a: &CertifiedValue, b: &CertifiedValue) -> Tri {
    let bu = b.upper_or_whole(sp);
    match (a.upper(), a.lower()) {
        (Some(au), _) if au.is_subset(sp, &bu) => Tri::True,
        (_, Some(al)) if !al.is_subset(sp, &bu) => Tri::False,
        _ => Tri::Unknown,
    }
}

pub fn localized_extension(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("localized-extension", cfg);
    let mut rng = cfg.rng("localized-extension");
    let budget = PolyBudget { slice: cfg.budget.slice.min(3), ..cfg.budget };
    for (name, d) in cfg.test_domains(&["z", "z-sqrt-3"]) {
        for (dname, delta) in prime_sets(&d) {
            let star = SemistarOp::spectral(&d, delta.clone());
            let curly = CurlyStable::from_primes(&d, delta.clone(), budget).expect("nonempty");
            let samples: Vec<_> = (0..10).map(|_| corpus::random_ideal(&d, &mut rng)).collect();
            rec.run(format!("[⋆̃] strict extension, Δ = {dname} over {name}"), || {
                match strict_extension_check(&curly, &star, &samples, budget.slice) {
                    Ok(r) if r.verdict == StrictVerdict::Strict => (Tri::True, None),
                    Ok(r) if r.verdict == StrictVerdict::Inconclusive => (Tri::Unknown, r.witness),
                    Ok(r) => (Tri::False, r.witness),
                    Err(e) => (Tri::False, Some(e.to_string())),
                }
            });
            // A = E[X]h and B = F[X]h meet in (E ∩ F)[X]h
            let pairs: Vec<_> = (0..50)
                .map(|_| {
                    let e = corpus::random_integral_ideal(&d, &mut rng);
                    let f = corpus::random_integral_ideal(&d, &mut rng);
                    let deg = rng.gen_range(0..=1);
                    let h = corpus::random_integral_poly(&d, &mut rng, deg, 3);
                    (e, f, h)
                })
                .collect();
            rec.run(format!("[⋆̃] distributes over ∩ on 50 pairs, Δ = {dname} over {name}"), || {
                let mut acc = Tri::True;
                for (e, f, h) in &pairs {
                    let ef = e.intersect(f).expect("same field");
                    let mk = |x: &crate::lattice::FractionalIdeal| {
                        PolyIdeal::extended(&d, x).and_then(|p| p.mul(&PolyIdeal::new(&d, vec![h.clone()])?))
                    };
                    let (Ok(a), Ok(b), Ok(ab)) = (mk(e), mk(f), mk(&ef)) else {
                        return (Tri::False, Some(format!("construction failed on {e}, {f}")));
                    };
                    for n in 0..=2 {
                        let sp = Space::new(&d, n + 1);
                        let (Ok(sa), Ok(sb), Ok(sab)) = (curly.slice(&a, n), curly.slice(&b, n), curly.slice(&ab, n)) else {
                            return (Tri::False, Some("evaluation failed".into()));
                        };
                        let meet = match (sa.value.exact_value(), sb.value.exact_value()) {
                            (Some(x), Some(y)) => CertifiedValue::exact(x.intersect(&sp, y)),
                            _ => {
                                acc = acc.and(Tri::Unknown);
                                continue;
                            }
                        };
                        let t = same(&sp, &sab.value, &meet);
                        if t == Tri::False {
                            return (Tri::False, Some(format!("E = {e}, F = {f}, h = {h}, slice {n}")));
                        }
                        acc = acc.and(t);
                    }
                }
                (acc, None)
            });
            let nagata = Nagata::from_primes(&d, delta.clone(), budget).expect("nonempty");
            let tri = Triangle::new(&star, OverTag::K, budget).expect("spectral fixes K");
            let inst: Vec<_> = (0..20).map(|_| random_pidl(&d, &mut rng)).collect();
            rec.run(format!("[⋆̃] ≤ ⟨⋆̃⟩ ≤ ▲ upper on 20 ideals, Δ = {dname} over {name}"), || {
                let mut acc = Tri::True;
                for a in &inst {
                    for n in 0..=budget.slice {
                        let sp = Space::new(&d, n + 1);
                        let (Ok(c), Ok(g), Ok(t)) = (curly.slice(a, n), nagata.slice(a, n), tri.slice(a, n)) else {
                            return (Tri::False, Some(format!("evaluation failed on {a}")));
                        };
                        let r = value_subset(&sp, &c.value, &g.value).and(below_upper(&sp, &g.value, &t.value));
                        if r == Tri::False {
                            return (Tri::False, Some(format!("slice {n} of {a}")));
                        }
                        acc = acc.and(r);
                    }
                }
                (acc, None)
            });
        }
    }
    rec.finish()
}

pub fn poly_qmax(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("poly-qmax", cfg);
    if !cfg.wants("z") {
        return rec.finish();
    }
    let z = super::named_domain("z").expect("builtin");
    let k = z.field();
    let star = SemistarOp::identity(&z);
    let p2 = z.primes_above(2).remove(0);
    let pool = vec![
        PolyPrime::Upper(parse_poly(k, "X^2 + 1").expect("literal")),
        PolyPrime::Composite(p2.clone(), parse_poly(k, "X").expect("literal")),
    ];
    let report = match classify_poly_qmax(&star, &z.primes_up_to(cfg.pool_norm), &pool, cfg.budget) {
        Ok(r) => r,
        Err(e) => {
            rec.run("classification over z", || (Tri::False, Some(e.to_string())));
            return rec.finish();
        }
    };
    rec.run("upper to zero of X^2 + 1 is quasi-maximal over z", || (report[0].member, None));
    rec.run("(2, X) is excluded, certified by (2, X)^▲ = Z[X] slices", || {
        let e = &report[1];
        match (e.member, e.certified) {
            (Tri::False, true) => (Tri::True, None),
            (Tri::False, false) => (Tri::Unknown, None),
            _ => (Tri::False, Some(e.reason.clone())),
        }
    });
    rec.finish()
}

pub fn integral_separation(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("integral-separation", cfg);
    if !cfg.wants("z") {
        return rec.finish();
    }
    let z = super::named_domain("z").expect("builtin");
    let k = z.field();
    let p = |s: &str| parse_poly(k, s).expect("literal");
    let two_x = PolyIdeal::new(&z, vec![p("2"), p("X")]).expect("nonzero");
    rec.run("1 is not integral over (2, X): Gauss valuation p = 2, t = 1", || {
        match b_membership_certificate(&two_x, &p("1"), 3, cfg.budget.mult_cap) {
            c @ BCertificate::NotIntegral { .. } => (Tri::True, Some(format!("{c:?}"))),
            BCertificate::Unknown => (Tri::Unknown, None),
            c => (Tri::False, Some(format!("{c:?}"))),
        }
    });
    rec.run("(2, X)^▲ = Z[X] on slices, so the ▲ value differs from the [b] value", || {
        let tri = Triangle::new(&SemistarOp::identity(&z), OverTag::K, cfg.budget).expect("d fixes K");
        let mut acc = Tri::True;
        for n in 0..=cfg.budget.slice {
            let sp = Space::new(&z, n + 1);
            let Ok(s) = tri.slice(&two_x, n) else { return (Tri::False, Some("evaluation failed".into())) };
            let want = CertifiedValue::exact(crate::polyext::poly_module(&sp, &ModuleValue::Lattice(z.ring().lattice().clone())));
            let t = same(&sp, &s.value, &want);
            if t == Tri::False {
                return (Tri::False, Some(format!("slice {n}")));
            }
            acc = acc.and(t);
        }
        (acc, None)
    });
    let four = PolyIdeal::new(&z, vec![p("4"), p("X^2")]).expect("nonzero");
    rec.run("2X is integral over (4, X^2) but outside its [b] slice", || {
        let cert = b_membership_certificate(&four, &p("2*X"), 3, cfg.budget.mult_cap);
        if !cert.is_integral() {
            return (Tri::Unknown, Some(format!("{cert:?}")));
        }
        let bw = b_wedge(&z, cfg.pool_norm, cfg.budget);
        let Ok(s) = bw.slice(&four, 1) else { return (Tri::False, Some("evaluation failed".into())) };
        let sp = Space::new(&z, 2);
        let v = p("2*X");
        let coords: Vec<_> = (0..2).flat_map(|i| v.coeff(i).coords()).collect();
        // the wedge over the pool is an upper bound for [b]
        match s.value.upper() {
            Some(u) if !u.contains(&sp, &coords) => (Tri::True, Some(format!("{cert:?}"))),
            _ => (Tri::Unknown, None),
        }
    });
    rec.finish()
}
