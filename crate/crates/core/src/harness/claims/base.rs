use rand::Rng;

use crate::domain::{Domain, ModuleValue};
use crate::exactnum::Poly;
use crate::harness::corpus;
use crate::lattice::FractionalIdeal;
use crate::polyext::{content_power_sum_check, dedekind_mertens_check, PolyIdeal};
use crate::starops::{check_axioms, default_eab_pool, eab_approx, SemistarOp, Tri};

use super::{tri, ClaimResult, Config, Recorder, DOMAIN_NAMES};

/// Built-in operations checked against the axioms on `d`.
pub fn builtin_ops(d: &Domain) -> Vec<SemistarOp> {
    let mut ops: Vec<SemistarOp> =
        ["d", "e", "v", "t", "w", "b"].iter().map(|n| SemistarOp::builtin(d, n).expect("builtin")).collect();
    let p2 = d.primes_above(2).remove(0);
    let p3 = d.primes_above(3).remove(0);
    let spec = SemistarOp::spectral(d, vec![p2.clone()]);
    ops.push(spec.clone());
    ops.push(SemistarOp::spectral(d, vec![p2, p3]));
    ops.push(SemistarOp::overring(d, "star_O", d.maximal_order().clone()).expect("O is an overring"));
    ops.push(SemistarOp::wedge(d, vec![SemistarOp::divisorial(d), spec]).expect("same domain"));
    ops
}

pub fn closure_axioms(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("closure-axioms", cfg);
    let mut rng = cfg.rng("closure-axioms");
    for (name, d) in cfg.test_domains(&DOMAIN_NAMES) {
        let samples: Vec<_> = (0..200)
            .map(|_| (corpus::random_ideal(&d, &mut rng), corpus::random_ideal(&d, &mut rng), corpus::random_scalar(&d, &mut rng)))
            .collect();
        for op in builtin_ops(&d) {
            rec.run(format!("{} over {name}, {} ideals", op.name(), samples.len()), || {
                let mut acc = Tri::True;
                for (e, g, x) in &samples {
                    let r = match check_axioms(&op, e, g, x) {
                        Ok(r) => r.all(),
                        Err(err) => return (Tri::False, Some(format!("{e}: {err}"))),
                    };
                    if r == Tri::False {
                        return (Tri::False, Some(format!("E = {e}, G = {g}, x = {x}")));
                    }
                    acc = acc.and(r);
                }
                (acc, None)
            });
        }
    }
    rec.finish()
}

pub fn conductor_divisorial(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("conductor-divisorial", cfg);
    if !cfg.wants("z-sqrt-3") {
        return rec.finish();
    }
    let d = super::named_domain("z-sqrt-3").expect("builtin");
    let p = d.conductor().clone();
    let o = d.maximal_order().clone();
    rec.run("(D : P) = O over z-sqrt-3", || {
        let c = d.ring().colon(&p).expect("nonzero");
        (tri(c == o), (c != o).then(|| format!("(D : P) = {c}")))
    });
    rec.run("P^v = P over z-sqrt-3", || {
        let v = SemistarOp::divisorial(&d).apply(&p).expect("nonzero");
        let ok = v.exact_value().is_some_and(|x| x.same(&d_space(&d), &lat(&p)));
        (tri(ok), None)
    });
    rec.run("P^2 = 2P over z-sqrt-3", || {
        let sq = p.mul(&p).expect("same field");
        (tri(sq == p.scale(&d.int(2))), None)
    });
    rec.run("D^b = O over z-sqrt-3", || {
        let b = SemistarOp::b_op(&d).apply(d.ring()).expect("nonzero");
        let ok = b.exact_value().is_some_and(|x| x.same(&d_space(&d), &lat(&o)));
        (tri(ok), None)
    });
    rec.finish()
}

fn d_space(d: &Domain) -> crate::domain::Space {
    crate::domain::Space::new(d, 1)
}

fn lat(e: &FractionalIdeal) -> ModuleValue {
    ModuleValue::Lattice(e.lattice().clone())
}

fn random_polys(d: &Domain, rng: &mut impl Rng, max_gens: usize, max_deg: usize) -> Vec<Poly> {
    let n = rng.gen_range(1..=max_gens);
    (0..n)
        .map(|_| {
            let deg = rng.gen_range(0..=max_deg);
            corpus::random_integral_poly(d, rng, deg, 4)
        })
        .collect()
}

pub fn content_power_sum(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("content-power-sum", cfg);
    let mut rng = cfg.rng("content-power-sum");
    for (name, d) in cfg.test_domains(&DOMAIN_NAMES) {
        let cases: Vec<(Vec<Poly>, u32)> = (0..100).map(|_| (random_polys(&d, &mut rng, 3, 2), rng.gen_range(1..=3))).collect();
        rec.run(format!("100 integral H, r ≤ 3 over {name}"), || {
            for (gens, r) in &cases {
                let h = PolyIdeal::new(&d, gens.clone()).expect("nonzero");
                match content_power_sum_check(&h, *r) {
                    Ok(true) => {}
                    Ok(false) => return (Tri::False, Some(format!("H = {h}, r = {r}"))),
                    Err(e) => return (Tri::False, Some(format!("H = {h}: {e}"))),
                }
            }
            (Tri::True, None)
        });
    }
    rec.finish()
}

pub fn dedekind_mertens(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("dedekind-mertens", cfg);
    let mut rng = cfg.rng("dedekind-mertens");
    for (name, d) in cfg.test_domains(&DOMAIN_NAMES) {
        let cases: Vec<(Poly, Poly)> = (0..100)
            .map(|_| {
                let a = rng.gen_range(0..=4);
                let b = rng.gen_range(0..=4);
                (corpus::random_integral_poly(&d, &mut rng, a, 4), corpus::random_integral_poly(&d, &mut rng, b, 4))
            })
            .collect();
        rec.run(format!("100 pairs of degree ≤ 4 over {name}"), || {
            for (f, g) in &cases {
                match dedekind_mertens_check(&d, f, g) {
                    Ok(true) => {}
                    _ => return (Tri::False, Some(format!("f = {f}, g = {g}"))),
                }
            }
            (Tri::True, None)
        });
    }
    rec.finish()
}

pub fn eab_convergence(cfg: &Config) -> Vec<ClaimResult> {
    let mut rec = Recorder::new("eab-convergence", cfg);
    let mut rng = cfg.rng("eab-convergence");
    for (name, d) in cfg.test_domains(&["z-sqrt-3", "z"]) {
        let pool = default_eab_pool(&d, cfg.pool_norm);
        let star = SemistarOp::identity(&d);
        let sp = d_space(&d);
        let samples: Vec<_> = (0..20).map(|_| corpus::random_ideal(&d, &mut rng)).collect();
        rec.run(format!("d_a on 20 ideals over {name}, pool of {} ideals", pool.len()), || {
            let mut acc = Tri::True;
            for e in &samples {
                let want = lat(&d.extend(e, d.maximal_order()));
                let got = match eab_approx(&star, e, &pool) {
                    Ok(v) => v,
                    Err(err) => return (Tri::False, Some(format!("{e}: {err}"))),
                };
                let lower = got.lower().expect("eab evaluator gives a lower bound");
                if !lower.is_subset(&sp, &want) {
                    return (Tri::False, Some(format!("lower bound escapes E·O on {e}")));
                }
                if !want.is_subset(&sp, lower) {
                    acc = acc.and(Tri::Unknown);
                }
            }
            (acc, None)
        });
    }
    rec.finish()
}
