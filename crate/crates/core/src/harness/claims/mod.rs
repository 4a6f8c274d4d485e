//! Replay suites: each claim id runs a fixed set of instances and reports
//! one result per instance.

mod base;
mod localized;
mod poly;

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::domain::{Domain, OrderDomain};
use crate::polyext::PolyBudget;
use crate::starops::{Tri, DEFAULT_POOL_NORM};

use super::corpus;
use super::report::{Budgets, ClaimResult, Report, Status};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Config {
    pub budget: PolyBudget,
    pub pool_norm: u64,
    pub seed: u64,
    /// Restricts instances to these domain names when set.
    pub domains: Option<Vec<String>>,
}

impl Default for Config {
    fn default() -> Self {
        Config { budget: PolyBudget::default(), pool_norm: DEFAULT_POOL_NORM, seed: 7, domains: None }
    }
}

impl Config {
    /// Budgets for a named profile: `quick`, `default` or `thorough`.
    pub fn profile(name: &str) -> Option<Config> {
        let budget = match name {
            "quick" => PolyBudget { slice: 3, mult_cap: 2, witness_deg: 3 },
            "default" => PolyBudget::default(),
            "thorough" => PolyBudget { slice: 6, mult_cap: 4, witness_deg: 5 },
            _ => return None,
        };
        Some(Config { budget, ..Config::default() })
    }

    fn budgets(&self) -> Budgets {
        Budgets {
            slice: self.budget.slice,
            mult_cap: self.budget.mult_cap,
            witness_deg: self.budget.witness_deg,
            pool_norm: self.pool_norm,
            seed: self.seed,
        }
    }

    fn wants(&self, domain: &str) -> bool {
        self.domains.as_ref().is_none_or(|ds| ds.iter().any(|d| d == domain))
    }

    /// Seeded generator private to one claim id.
    fn rng(&self, claim: &str) -> rand_chacha::ChaCha8Rng {
        let salt = claim.bytes().fold(0u64, |h, b| h.wrapping_mul(131).wrapping_add(b as u64));
        corpus::rng(self.seed ^ salt)
    }

    /// Named test domains that pass the filter.
    fn test_domains(&self, names: &[&str]) -> Vec<(String, Domain)> {
        names
            .iter()
            .filter(|n| self.wants(n))
            .map(|n| (n.to_string(), named_domain(n).expect("builtin name")))
            .collect()
    }
}

/// `z`, `z-sqrt-3` (ℤ[√−3]) and `z-golden` (ℤ[(1+√5)/2]).
pub fn named_domain(name: &str) -> Option<Domain> {
    match name {
        "z" => Some(OrderDomain::integers()),
        "z-sqrt-3" => OrderDomain::order(-3, 2).ok(),
        "z-golden" => OrderDomain::order(5, 1).ok(),
        _ => None,
    }
}

pub const DOMAIN_NAMES: [&str; 3] = ["z", "z-sqrt-3", "z-golden"];

/// Collects results for one claim, timing each instance.
struct Recorder<'a> {
    claim: &'static str,
    cfg: &'a Config,
    out: Vec<ClaimResult>,
}

impl<'a> Recorder<'a> {
    fn new(claim: &'static str, cfg: &'a Config) -> Self {
        Recorder { claim, cfg, out: Vec::new() }
    }

    /// Runs `f`, which returns a verdict and an optional witness.
    fn run(&mut self, instance: impl Into<String>, f: impl FnOnce() -> (Tri, Option<String>)) {
        let t0 = Instant::now();
        let (t, witness) = f();
        let status = match t {
            Tri::True => Status::Confirmed,
            Tri::Unknown => Status::BracketInconclusive,
            Tri::False => Status::Refuted,
        };
        let witness = match (status, witness) {
            (Status::Refuted, None) => Some("no witness recorded".into()),
            (_, w) => w,
        };
        self.out.push(ClaimResult {
            claim: self.claim.into(),
            instance: instance.into(),
            status,
            witness,
            budgets: self.cfg.budgets(),
            ms: t0.elapsed().as_millis() as u64,
        });
    }

    fn finish(self) -> Vec<ClaimResult> {
        self.out
    }
}

fn tri(b: bool) -> Tri {
    if b {
        Tri::True
    } else {
        Tri::False
    }
}

type Suite = fn(&Config) -> Vec<ClaimResult>;

/// Claim ids with a one-line description and the suite that replays them.
pub const CLAIMS: &[(&str, &str, Suite)] = &[
    ("closure-axioms", "scaling, monotonicity, extensivity and idempotence of the built-in operations", base::closure_axioms),
    ("conductor-divisorial", "colon, divisorial closure, square and integral closure of the conductor prime", base::conductor_divisorial),
    ("content-power-sum", "sum of r-th powers of contents equals the r-th power of the content", base::content_power_sum),
    ("dedekind-mertens", "c(f)c(g)^(m+1) = c(fg)c(g)^m", base::dedekind_mertens),
    ("eab-convergence", "eab approximations of d reach E·O, and d over a Prüfer domain", base::eab_convergence),
    ("triangle-strict-extension", "▲ of E[X] is E^⋆[X] on every slice", poly::triangle_strict_extension),
    ("triangle-two-x", "(2, X)^▲ = D[X] while (2, X) itself is proper", poly::triangle_two_x),
    ("triangle-bounded-by-extension", "▲ of B ⊆ X^-m D[X] stays inside X^-m D^⋆[X]", poly::triangle_bounded),
    ("strict-family", "separation and monotonicity of the strict-extension family", poly::strict_family),
    ("eab-extension", "((E[X]H)^▲ : H^▲) ⊆ E^(⋆_a)[X]", poly::eab_extension),
    ("localized-extension", "[⋆̃] is a stable strict extension below ⟨⋆̃⟩ and ▲", localized::localized_extension),
    ("poly-qmax", "quasi-maximal primes of D[X] for (▲^⋆)_f", localized::poly_qmax),
    ("integral-separation", "valuation and integral-dependence certificates separating ▲, [b] and b", localized::integral_separation),
];

pub fn claim_ids() -> Vec<&'static str> {
    CLAIMS.iter().map(|c| c.0).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("unknown claim id '{0}'")]
pub struct UnknownClaim(pub String);

/// Runs one claim id, or every claim for `"all"`. Claims run on separate
/// threads; the report order does not depend on scheduling.
pub fn run_suite(name: &str, cfg: &Config) -> Result<Report, UnknownClaim> {
    let suites: Vec<Suite> = if name == "all" {
        CLAIMS.iter().map(|c| c.2).collect()
    } else {
        vec![CLAIMS.iter().find(|c| c.0 == name).ok_or_else(|| UnknownClaim(name.into()))?.2]
    };
    let results = std::thread::scope(|s| {
        let handles: Vec<_> = suites.iter().map(|f| s.spawn(move || f(cfg))).collect();
        handles.into_iter().flat_map(|h| h.join().expect("suite panicked")).collect()
    });
    Ok(Report::new(results))
}
