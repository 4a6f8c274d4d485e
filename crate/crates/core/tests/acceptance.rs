//! End-to-end acceptance run. Prints one PASS/FAIL line per criterion and
//! fails at the end if any criterion failed.

use std::collections::HashSet;
use std::io::Write as _;
use std::process::Command;
use std::time::Instant;

use num_rational::{BigRational, Rational64};

use semistar::domain::{Domain, ModuleValue, OrderDomain, Space};
use semistar::exactnum::FieldElement;
use semistar::harness::claims::{run_suite, Config};
use semistar::harness::report::Status;
use semistar::lattice::FractionalIdeal;
use semistar::starops::SemistarOp;

type Criterion<'a> = (&'a str, Box<dyn Fn() -> Line + 'a>);

struct Line {
    pass: bool,
    detail: String,
}

fn suites(ids: &[&str], cfg: &Config) -> Line {
    let mut n = 0;
    let mut bad = Vec::new();
    for id in ids {
        let report = run_suite(id, cfg).expect("known claim id");
        if report.results.is_empty() {
            bad.push(format!("{id}: no results"));
        }
        for r in &report.results {
            n += 1;
            if r.status != Status::Confirmed {
                bad.push(format!("{} [{}] {}: {}", r.claim, r.status.as_str(), r.instance, r.witness.as_deref().unwrap_or("-")));
            }
        }
    }
    if bad.is_empty() {
        Line { pass: true, detail: format!("{n} results confirmed") }
    } else {
        Line { pass: false, detail: bad.join("; ") }
    }
}

// ---- brute-force oracle over Z[√-3], independent of the lattice code ----

/// `p + q·√-3` with rational coordinates.
type Q2 = (Rational64, Rational64);

fn mul(x: Q2, y: Q2) -> Q2 {
    (x.0 * y.0 - Rational64::from(3) * x.1 * y.1, x.0 * y.1 + x.1 * y.0)
}

fn is_int(r: Rational64) -> bool {
    r.is_integer()
}

fn in_d(x: Q2) -> bool {
    is_int(x.0) && is_int(x.1)
}

/// `x = s + t·(1 + √-3)/2` with integers s, t.
fn in_o(x: Q2) -> bool {
    is_int(x.1 * 2) && is_int(x.0 - x.1)
}

fn in_p(x: Q2) -> bool {
    in_o((x.0 / 2, x.1 / 2))
}

/// Denominators ≤ 4, numerators in [-4, 4].
fn boxed() -> Vec<Q2> {
    let mut out = HashSet::new();
    for den in 1..=4 {
        for a in -4..=4 {
            for b in -4..=4 {
                out.insert((Rational64::new(a, den), Rational64::new(b, den)));
            }
        }
    }
    let mut v: Vec<Q2> = out.into_iter().collect();
    v.sort();
    v
}

fn element(d: &Domain, x: Q2) -> FieldElement {
    let big = |r: Rational64| BigRational::new((*r.numer()).into(), (*r.denom()).into());
    FieldElement::new(d.field(), big(x.0), big(x.1)).expect("quadratic field")
}

fn value_contains(d: &Domain, v: &ModuleValue, x: Q2) -> bool {
    v.contains(&Space::new(d, 1), &element(d, x).coords())
}

fn divisorial_oracle() -> Line {
    let d = OrderDomain::order(-3, 2).expect("order");
    let p: FractionalIdeal = d.conductor().clone();
    let pts = boxed();
    let gens_p: [Q2; 2] = [(2.into(), 0.into()), (1.into(), 1.into())];
    let colon = |x: Q2| gens_p.iter().all(|g| in_d(mul(x, *g)));
    let mut bad = Vec::new();

    // (D : P) = O
    let lib_colon = d.ring().colon(&p).expect("nonzero");
    if lib_colon != d.maximal_order().clone() {
        bad.push(format!("(D : P) = {lib_colon}"));
    }
    for &x in &pts {
        if colon(x) != in_o(x) || lib_colon.contains(&element(&d, x)) != in_o(x) {
            bad.push(format!("(D : P) disagrees at {x:?}"));
        }
    }

    // P^v = P: x·y ∈ D for every y ∈ (D : P) found in the box
    let dual: Vec<Q2> = pts.iter().copied().filter(|&y| colon(y)).collect();
    let pv = SemistarOp::divisorial(&d).apply(&p).expect("nonzero");
    let Some(pv) = pv.exact_value() else {
        return Line { pass: false, detail: "P^v bracket open".into() };
    };
    for &x in &pts {
        let brute = dual.iter().all(|&y| in_d(mul(x, y)));
        if brute != in_p(x) || value_contains(&d, pv, x) != in_p(x) {
            bad.push(format!("P^v disagrees at {x:?}"));
        }
    }

    // P^2 = 2P: bounded D-combinations of pairwise products of generators
    let prods: Vec<(i64, i64)> = vec![(4, 0), (2, 2), (-2, 2)];
    let mut combos = HashSet::new();
    let coeffs: Vec<(i64, i64)> = (-4..=4).flat_map(|a| (-4..=4).map(move |b| (a, b))).collect();
    for c0 in &coeffs {
        for c1 in &coeffs {
            for c2 in &coeffs {
                let mut s = (0i64, 0i64);
                for (c, g) in [c0, c1, c2].into_iter().zip(&prods) {
                    s.0 += c.0 * g.0 - 3 * c.1 * g.1;
                    s.1 += c.0 * g.1 + c.1 * g.0;
                }
                if s.0.abs() <= 4 && s.1.abs() <= 4 {
                    combos.insert(s);
                }
            }
        }
    }
    let sq = p.mul(&p).expect("same field");
    if sq != p.scale(&d.int(2)) {
        bad.push(format!("P^2 = {sq}"));
    }
    for &x in &pts {
        let brute = in_d(x) && combos.contains(&(x.0.to_integer(), x.1.to_integer()));
        let two_p = in_p((x.0 / 2, x.1 / 2));
        if brute != two_p || sq.contains(&element(&d, x)) != two_p {
            bad.push(format!("P^2 disagrees at {x:?}"));
        }
    }

    // D^b = O: integral over D exactly when trace and norm are integers
    let b = SemistarOp::b_op(&d).apply(d.ring()).expect("nonzero");
    let Some(b) = b.exact_value() else {
        return Line { pass: false, detail: "D^b bracket open".into() };
    };
    for &x in &pts {
        let integral = is_int(x.0 * 2) && is_int(x.0 * x.0 + Rational64::from(3) * x.1 * x.1);
        if integral != in_o(x) || value_contains(&d, b, x) != in_o(x) {
            bad.push(format!("D^b disagrees at {x:?}"));
        }
    }

    let inside = pts.iter().filter(|&&x| in_p(x)).count();
    assert!(inside > 0 && inside < pts.len());
    if bad.is_empty() {
        Line { pass: true, detail: format!("{} box points agree", pts.len()) }
    } else {
        bad.truncate(5);
        Line { pass: false, detail: bad.join("; ") }
    }
}

fn untimed(json: &str) -> String {
    let mut v: serde_json::Value = serde_json::from_str(json).expect("report json");
    for r in v["results"].as_array_mut().expect("results array") {
        r.as_object_mut().expect("result object").remove("ms");
    }
    serde_json::to_string(&v).expect("serializable")
}

fn determinism() -> Line {
    let dir = env!("CARGO_TARGET_TMPDIR");
    let mut docs = Vec::new();
    let mut worst = 0.0f64;
    for i in 0..2 {
        let out = format!("{dir}/acceptance-run-{i}.json");
        let t = Instant::now();
        let status = Command::new(env!("CARGO_BIN_EXE_semistar"))
            .args(["check", "all", "--seed", "7", "--json", &out])
            .env_remove("SEMISTAR_PROFILE")
            .output()
            .expect("binary runs");
        worst = worst.max(t.elapsed().as_secs_f64());
        if status.status.code() != Some(0) {
            return Line { pass: false, detail: format!("run {i} exited with {:?}", status.status.code()) };
        }
        docs.push(untimed(&std::fs::read_to_string(&out).expect("json written")));
    }
    let same = docs[0] == docs[1];
    let fast = worst <= 600.0;
    Line {
        pass: same && fast,
        detail: format!("identical JSON: {same}, slowest run {worst:.1} s"),
    }
}

#[test]
fn acceptance() {
    let cfg = Config::profile("default").expect("profile");
    let criteria: Vec<Criterion> = vec![
        ("closure axioms of built-in operations", Box::new(|| suites(&["closure-axioms"], &cfg))),
        ("divisorial facts over Z[sqrt(-3)] with brute-force oracle", Box::new(|| {
            let s = suites(&["conductor-divisorial"], &cfg);
            let o = divisorial_oracle();
            Line { pass: s.pass && o.pass, detail: format!("{}; oracle: {}", s.detail, o.detail) }
        })),
        ("triangle of E[X] is E^star[X] on slices 0-5", Box::new(|| suites(&["triangle-strict-extension"], &cfg))),
        ("(2, X) over Z[sqrt(-3)]: triangle is D[X], ideal proper", Box::new(|| suites(&["triangle-two-x"], &cfg))),
        ("triangle of B inside X^-m D^star[X], 50 probes", Box::new(|| suites(&["triangle-bounded-by-extension"], &cfg))),
        ("localized operations: strict, stable, chained", Box::new(|| suites(&["localized-extension"], &cfg))),
        ("quasi-maximal classification over Z[X]", Box::new(|| suites(&["poly-qmax"], &cfg))),
        ("content power sums and Dedekind-Mertens", Box::new(|| suites(&["content-power-sum", "dedekind-mertens"], &cfg))),
        ("integral-dependence separations over Z", Box::new(|| suites(&["integral-separation"], &cfg))),
        ("strict family separation and chain", Box::new(|| suites(&["strict-family"], &cfg))),
        ("eab approximation convergence", Box::new(|| suites(&["eab-convergence"], &cfg))),
        ("determinism of 'check all --seed 7' within 10 minutes", Box::new(determinism)),
    ];
    let mut failed = Vec::new();
    for (i, (name, run)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let line = run();
        let verdict = if line.pass { "PASS" } else { "FAIL" };
        // written to the handle directly so the line survives output capture
        let mut out = std::io::stdout().lock();
        writeln!(out, "criterion {} ({name}): {verdict} [{:.1} s] {}", i + 1, t.elapsed().as_secs_f64(), line.detail).expect("stdout");
        if !line.pass {
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
