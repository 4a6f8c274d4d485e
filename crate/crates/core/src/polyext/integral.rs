//! Certificates for membership in the integral closure `A^{b_{D[X]}}`.

use num_rational::BigRational;
use serde::Serialize;

use crate::domain::{ExtQ, Valuation, ValuationSummary};
use crate::exactnum::Poly;

use super::polyideal::PolyIdeal;

#[derive(Debug, Clone, Serialize)]
pub enum BCertificate {
    /// `t^k − f^k` with `f^k ∈ A^k` (checked on a slice).
    Integral { k: u32, equation: String },
    /// A valuation nonnegative on D[X] with `w(f) < min w(generators)`.
    NotIntegral { valuation: ValuationSummary, value: String, bound: String },
    Unknown,
}

impl BCertificate {
    pub fn is_integral(&self) -> bool {
        matches!(self, BCertificate::Integral { .. })
    }

    pub fn is_not_integral(&self) -> bool {
        matches!(self, BCertificate::NotIntegral { .. })
    }
}

/// Valuations of K(X) that are nonnegative on D[X]: Gauss extensions of
/// p-adic valuations (p ≤ 7) with t ∈ {1, 2, 0, 1/2}, and the X-adic one.
pub fn candidate_valuations(a: &PolyIdeal) -> Vec<Valuation> {
    let d = a.domain();
    let ts: Vec<BigRational> = [(1, 1), (2, 1), (0, 1), (1, 2)]
        .iter()
        .map(|&(n, m)| BigRational::new(n.into(), m.into()))
        .collect();
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7] {
        for v in Valuation::padic_over(d, p) {
            for t in &ts {
                out.push(Valuation::gauss(v.clone(), t.clone()));
            }
        }
    }
    out.push(Valuation::gauss(Valuation::Trivial, BigRational::from_integer(1.into())));
    out
}

/// Integral-dependence or valuation certificate for `f` over `A`.
pub fn b_membership_certificate(a: &PolyIdeal, f: &Poly, max_deg: u32, cap: usize) -> BCertificate {
    if f.is_zero() {
        return BCertificate::Integral { k: 1, equation: "t".into() };
    }
    for k in 1..=max_deg.max(1) {
        let fk = f.pow(k);
        if a.pow(k).contains(&fk, cap) {
            return BCertificate::Integral { k, equation: format!("t^{k} - ({fk})") };
        }
    }
    for w in candidate_valuations(a) {
        let bound = a.gens().iter().map(|g| w.eval_poly(g)).min().unwrap_or(ExtQ::Inf);
        let value = w.eval_poly(f);
        if value < bound {
            return BCertificate::NotIntegral { valuation: w.summary(), value: value.to_string(), bound: bound.to_string() };
        }
    }
    BCertificate::Unknown
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::OrderDomain;
    use crate::exactnum::parse_poly;

    #[test]
    fn separating_examples_over_z() {
        let z = OrderDomain::integers();
        let k = z.field();
        let p = |s: &str| parse_poly(k, s).unwrap();
        let a = PolyIdeal::new(&z, vec![p("4"), p("X^2")]).unwrap();
        let c = b_membership_certificate(&a, &p("2*X"), 3, 3);
        assert!(matches!(c, BCertificate::Integral { k: 2, .. }), "{c:?}");
        let b = PolyIdeal::new(&z, vec![p("2"), p("X")]).unwrap();
        let c = b_membership_certificate(&b, &p("1"), 3, 3);
        assert!(c.is_not_integral(), "{c:?}");
    }
}
