//! Primes of D[X] and the quasi-maximal classification for `(▲^{⋆_f})_f`.

use std::fmt;

use serde::Serialize;

use crate::domain::{Domain, PrimeIdeal, Space};
use crate::exactnum::Poly;
use crate::starops::{qmax, OpError, SemistarOp, Tri};

use super::content::content;
use super::operator::{PolyBudget, PolyOperator};
use super::polyideal::{content_of, poly_module, PolyIdeal};
use super::triangle::{OverTag, Triangle};

#[derive(Debug, Clone)]
pub enum PolyPrime {
    /// `P[X]`.
    Extended(PrimeIdeal),
    /// `f·K[X] ∩ D[X]` for an irreducible `f`.
    Upper(Poly),
    /// `(P, f)` with `f` monic over D and irreducible modulo P.
    Composite(PrimeIdeal, Poly),
}

impl PolyPrime {
    pub fn contains(&self, d: &Domain, h: &Poly) -> bool {
        let in_d = |p: &Poly| p.coeffs().iter().all(|c| d.ring().contains(c));
        match self {
            PolyPrime::Extended(p) => h.coeffs().iter().all(|c| p.ideal().contains(c)),
            PolyPrime::Upper(f) => in_d(h) && f.divides(h).unwrap_or(false),
            PolyPrime::Composite(p, f) => {
                if !in_d(h) {
                    return false;
                }
                // f is monic over D, so the remainder stays over D
                let (_, r) = h.div_rem(f).expect("nonzero modulus");
                r.coeffs().iter().all(|c| p.ideal().contains(c))
            }
        }
    }
}

impl fmt::Display for PolyPrime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PolyPrime::Extended(p) => write!(f, "{}[X]", p.ideal()),
            PolyPrime::Upper(g) => write!(f, "upper({g})"),
            PolyPrime::Composite(p, g) => write!(f, "({}, {g})", p.ideal()),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct PolyQmaxEntry {
    pub prime: String,
    /// Predicted membership in the quasi-maximal set.
    pub member: Tri,
    pub reason: String,
    /// For excluded primes: the slice check `(a, g)^▲ = D^⋆[X]` passed.
    pub certified: bool,
}

/// `(a, g)^▲ = D^⋆[X]` on slices `0..=budget.slice`.
pub fn pair_closes(star: &SemistarOp, a: &Poly, g: &Poly, budget: PolyBudget) -> Result<bool, OpError> {
    let d = star.domain();
    let i = PolyIdeal::new(d, vec![a.clone(), g.clone()])?;
    let tri = Triangle::new(star, OverTag::K, budget)?;
    let ds = star.apply(d.ring())?;
    let Some(ds) = ds.exact_value() else { return Ok(false) };
    for s in tri.slices(&i, budget.slice)? {
        let sp = Space::new(d, s.n + 1);
        let want = poly_module(&sp, ds);
        if !s.value.exact_value().is_some_and(|v| v.same(&sp, &want)) {
            return Ok(false);
        }
    }
    Ok(true)
}

fn is_d_star(star: &SemistarOp, c: &crate::lattice::FractionalIdeal) -> Tri {
    let d = star.domain();
    let sp = Space::new(d, 1);
    let (Ok(cv), Ok(dv)) = (star.apply(c), star.apply(d.ring())) else { return Tri::Unknown };
    match (cv.exact_value(), dv.exact_value()) {
        (Some(x), Some(y)) => {
            if x.same(&sp, y) {
                Tri::True
            } else {
                Tri::False
            }
        }
        _ => Tri::Unknown,
    }
}

/// Tags each prime of the pool as in or out of `QMax^{(▲^{⋆_f})_f}(D[X])`:
/// uppers to zero are in iff `c(Q)^⋆ = D^⋆`; primes meeting D are in iff
/// they are `P[X]` with `P` quasi-⋆_f-maximal. Exclusions of composite
/// primes are certified by `(a, g)^▲ = D^⋆[X]` with `a ∈ P` and `g` the
/// polynomial generator.
pub fn classify_poly_qmax(
    star: &SemistarOp,
    pool_d: &[PrimeIdeal],
    pool_poly: &[PolyPrime],
    budget: PolyBudget,
) -> Result<Vec<PolyQmaxEntry>, OpError> {
    let d = star.domain();
    let star_f = star.finite_type_closure();
    let report = qmax(&star_f, pool_d, star.pool_norm());
    let mut out = Vec::new();
    for q in pool_poly {
        let entry = match q {
            PolyPrime::Upper(f) => {
                // c(Q) ⊇ (D : c(f))·c(f), and c(Q) ⊆ D
                let cf = content(d, f)?;
                let inv = d.ring().colon(&cf).map_err(|e| OpError::Invalid(e.to_string()))?;
                let lower = inv.mul(&cf).expect("same field");
                let member = match is_d_star(&star_f, &lower) {
                    Tri::True => Tri::True,
                    _ => Tri::Unknown,
                };
                PolyQmaxEntry {
                    prime: q.to_string(),
                    member,
                    reason: format!("upper to zero; content contains {lower}"),
                    certified: member == Tri::True,
                }
            }
            PolyPrime::Extended(p) => {
                let member = if report.members.contains(p) {
                    Tri::True
                } else if report.undecided.contains(p) {
                    Tri::Unknown
                } else {
                    Tri::False
                };
                PolyQmaxEntry {
                    prime: q.to_string(),
                    member,
                    reason: "extended prime".into(),
                    certified: member != Tri::Unknown,
                }
            }
            PolyPrime::Composite(p, g) => {
                let c = content_of(d, std::slice::from_ref(g)).sum(p.ideal()).expect("same field");
                let full = is_d_star(&star_f, &c) == Tri::True;
                let certified = if full {
                    let a = p.ideal().basis().into_iter().find(|x| !x.is_zero()).expect("nonzero prime");
                    pair_closes(&star_f, &Poly::constant(a), g, budget)?
                } else {
                    false
                };
                PolyQmaxEntry {
                    prime: q.to_string(),
                    member: Tri::False,
                    reason: if full {
                        "meets D and has full content".into()
                    } else {
                        "meets D and is not extended".into()
                    },
                    certified,
                }
            }
        };
        out.push(entry);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::OrderDomain;
    use crate::exactnum::parse_poly;

    #[test]
    fn classification_over_z() {
        let z = OrderDomain::integers();
        let k = z.field();
        let d_op = SemistarOp::identity(&z);
        let p2 = z.primes_above(2).remove(0);
        let pool = vec![
            PolyPrime::Upper(parse_poly(k, "X^2 + 1").unwrap()),
            PolyPrime::Composite(p2.clone(), parse_poly(k, "X").unwrap()),
            PolyPrime::Extended(p2.clone()),
        ];
        let r = classify_poly_qmax(&d_op, &z.primes_up_to(10), &pool, PolyBudget::default()).unwrap();
        assert_eq!(r[0].member, Tri::True);
        assert_eq!(r[1].member, Tri::False);
        assert!(r[1].certified);
        assert_eq!(r[2].member, Tri::True);
        assert!(pool[1].contains(&z, &parse_poly(k, "2 + 3*X").unwrap()));
        assert!(!pool[1].contains(&z, &parse_poly(k, "1 + X").unwrap()));
    }
}
