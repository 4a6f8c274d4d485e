use crate::domain::{Domain, ModuleValue};
use crate::lattice::FractionalIdeal;

use super::certified::{Budget, CertifiedValue};
use super::op::{OpError, OpKind, SemistarOp};

/// Integral ideals of norm ≤ `norm` that are primes, their pairwise
/// products, and D itself; sorted and deduplicated.
pub fn default_eab_pool(d: &Domain, norm: u64) -> Vec<FractionalIdeal> {
    let primes = d.primes_up_to(norm);
    let mut pool = vec![d.ring().clone()];
    for (i, p) in primes.iter().enumerate() {
        pool.push(p.ideal().clone());
        for q in &primes[i..] {
            pool.push(p.ideal().mul(q.ideal()).expect("same field"));
        }
    }
    pool.sort();
    pool.dedup();
    pool
}

/// Lower bound `Σ_H ((F·H)^⋆ : H^⋆)` for the eab closure of ⋆.
pub fn eab_approx(star: &SemistarOp, f: &FractionalIdeal, pool: &[FractionalIdeal]) -> Result<CertifiedValue, OpError> {
    let d = star.domain();
    if !pool.iter().any(|h| h == d.ring()) {
        return Err(OpError::Invalid("eab pool must contain D".into()));
    }
    let sp = star.space();
    let mut lower = ModuleValue::Lattice(f.lattice().clone());
    for h in pool {
        let fh = f.mul(h).expect("same field");
        let num = star.apply(&fh)?;
        let den = star.apply(h)?;
        // colon is monotone in the numerator and antitone in the denominator
        let (Some(nl), Some(du)) = (num.lower(), den.upper()) else { continue };
        let term = nl.colon(&sp, du)?;
        if let Ok(s) = lower.sum(&sp, &term) {
            lower = s;
        }
    }
    let budget = Budget { eab_pool_size: Some(pool.len()), ..Budget::default() };
    if matches!(star.kind(), OpKind::Identity) {
        // d_a = b, whose value on f.g. ideals is E·O
        let upper = ModuleValue::Lattice(d.extend(f, d.maximal_order()).lattice().clone());
        return Ok(CertifiedValue::bracket(&sp, lower, upper).with_budget(budget));
    }
    Ok(CertifiedValue::lower_bound(lower).with_budget(budget))
}
