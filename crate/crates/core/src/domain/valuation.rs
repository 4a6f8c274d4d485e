//! Explicit valuations on K and K(X).

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::Signed;
use serde::Serialize;

use super::module::ModuleValue;
use super::order::{Domain, OrderDomain};
use super::primes::PrimeIdeal;
use crate::exactnum::{FieldElement, Poly};
use crate::lattice::FractionalIdeal;

/// An extended rational; `Inf` is the value at zero.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtQ {
    Fin(BigRational),
    Inf,
}

impl ExtQ {
    pub fn int(n: i64) -> Self {
        ExtQ::Fin(BigRational::from_integer(n.into()))
    }

    pub fn add(&self, other: &ExtQ) -> ExtQ {
        match (self, other) {
            (ExtQ::Fin(a), ExtQ::Fin(b)) => ExtQ::Fin(a + b),
            _ => ExtQ::Inf,
        }
    }

    fn sub(&self, other: &ExtQ) -> ExtQ {
        match (self, other) {
            (ExtQ::Fin(a), ExtQ::Fin(b)) => ExtQ::Fin(a - b),
            (ExtQ::Inf, _) => ExtQ::Inf,
            (ExtQ::Fin(_), ExtQ::Inf) => panic!("division by zero in valuation"),
        }
    }
}

impl fmt::Display for ExtQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtQ::Inf => write!(f, "inf"),
            ExtQ::Fin(q) if q.is_integer() => write!(f, "{}", q.numer()),
            ExtQ::Fin(q) => write!(f, "{}/{}", q.numer(), q.denom()),
        }
    }
}

#[derive(Debug, Clone)]
pub enum Valuation {
    /// Discrete valuation of K attached to a prime of the maximal order.
    PAdic { maximal: Domain, prime: PrimeIdeal },
    /// `w(Σ aᵢXⁱ) = minᵢ (v(aᵢ) + i·t)` for a valuation v of K.
    Gauss { base: Box<Valuation>, t: BigRational },
    /// `−deg` on K[X].
    DegreeAtInfinity,
    /// Order of vanishing at an irreducible polynomial.
    OrderAt(Poly),
    /// 0 on every nonzero element.
    Trivial,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValuationSummary {
    pub kind: String,
    pub detail: String,
}

impl Valuation {
    /// The p-adic valuations of K attached to primes of O over p.
    pub fn padic_over(d: &Domain, p: u64) -> Vec<Valuation> {
        let maximal = match d.kind() {
            super::order::DomainKind::Integers => OrderDomain::integers(),
            super::order::DomainKind::Order { m, .. } => OrderDomain::order(m, 1).expect("m already validated"),
        };
        maximal
            .primes_above(p)
            .into_iter()
            .map(|prime| Valuation::PAdic { maximal: maximal.clone(), prime })
            .collect()
    }

    pub fn gauss(base: Valuation, t: BigRational) -> Valuation {
        assert!(!t.is_negative());
        Valuation::Gauss { base: Box::new(base), t }
    }

    /// Largest k with `y ∈ 𝔭^k` for nonzero y in O.
    fn padic_integral(maximal: &OrderDomain, prime: &PrimeIdeal, y: &FieldElement) -> i64 {
        let yo = maximal.ideal(std::slice::from_ref(y));
        let mut k = 0;
        let mut pk: FractionalIdeal = prime.ideal().clone();
        while yo.is_subset(&pk) {
            k += 1;
            pk = pk.mul(prime.ideal()).expect("same field");
        }
        k
    }

    fn eval_elem(&self, x: &FieldElement) -> ExtQ {
        if x.is_zero() {
            return ExtQ::Inf;
        }
        match self {
            Valuation::PAdic { maximal, prime } => {
                // x = y / d with y ∈ O, d ∈ ℤ
                let cs = x.coords();
                let mut d = BigInt::from(1);
                for c in &cs {
                    d = d.lcm(c.denom());
                }
                // the O-basis may have denominator 2
                d *= 2;
                let df = FieldElement::from_rational(x.field(), BigRational::from_integer(d));
                let y = x * &df;
                let vy = Self::padic_integral(maximal, prime, &y);
                let vd = Self::padic_integral(maximal, prime, &df);
                ExtQ::int(vy - vd)
            }
            Valuation::Gauss { base, .. } => base.eval_elem(x),
            Valuation::DegreeAtInfinity | Valuation::OrderAt(_) | Valuation::Trivial => ExtQ::int(0),
        }
    }

    /// Value on K[X]; valuations of K act through their t = 0 Gauss extension.
    pub fn eval_poly(&self, f: &Poly) -> ExtQ {
        if f.is_zero() {
            return ExtQ::Inf;
        }
        match self {
            Valuation::Gauss { base, t } => f
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .map(|(i, c)| base.eval_elem(c).add(&ExtQ::Fin(t * BigRational::from_integer(i.into()))))
                .min()
                .expect("nonzero polynomial"),
            Valuation::PAdic { .. } => {
                f.coeffs().iter().map(|c| self.eval_elem(c)).min().expect("nonzero polynomial")
            }
            Valuation::DegreeAtInfinity => ExtQ::int(-(f.degree().unwrap() as i64)),
            Valuation::OrderAt(g) => {
                let mut k = 0;
                let mut h = f.clone();
                while let Some(q) = h.exact_div(g).expect("same field") {
                    h = q;
                    k += 1;
                }
                ExtQ::int(k)
            }
            Valuation::Trivial => ExtQ::int(0),
        }
    }

    pub fn eval(&self, x: &FieldElement) -> ExtQ {
        self.eval_poly(&Poly::constant(x.clone()))
    }

    /// Value of `num/den` in K(X).
    pub fn eval_frac(&self, num: &Poly, den: &Poly) -> ExtQ {
        self.eval_poly(num).sub(&self.eval_poly(den))
    }

    /// Residue characteristic prime of D under a p-adic valuation.
    pub fn center_in(&self, d: &Domain) -> Option<PrimeIdeal> {
        match self {
            Valuation::PAdic { prime, .. } => d.primes_above(prime.p()).into_iter().find(|q| {
                q.ideal().basis().iter().all(|b| self.eval(b) > ExtQ::int(0))
            }),
            _ => None,
        }
    }

    pub fn summary(&self) -> ValuationSummary {
        let (kind, detail) = match self {
            Valuation::PAdic { prime, .. } => ("padic", format!("prime {} of norm {}", prime.ideal(), prime.norm())),
            Valuation::Gauss { base, t } => ("gauss", format!("t = {}; base {}", ExtQ::Fin(t.clone()), base.summary().detail)),
            Valuation::DegreeAtInfinity => ("degree-at-infinity", String::new()),
            Valuation::OrderAt(f) => ("order-at", f.to_string()),
            Valuation::Trivial => ("trivial", String::new()),
        };
        ValuationSummary { kind: kind.into(), detail }
    }
}

/// `x ∈ F·V`, i.e. `w(x) ≥ min w(generators of F)`.
pub fn in_extension(w: &Valuation, f: &FractionalIdeal, x: &FieldElement) -> bool {
    let m = f.basis().iter().map(|g| w.eval(g)).min().unwrap_or(ExtQ::Inf);
    w.eval(x) >= m
}

/// Sampled check of `F^⋆ ⊆ F·V` for a K-valuation `w`; `closure` evaluates ⋆.
pub fn is_star_valuation_overring(
    d: &Domain,
    w: &Valuation,
    closure: impl Fn(&FractionalIdeal) -> ModuleValue,
    samples: &[FractionalIdeal],
) -> bool {
    samples.iter().all(|f| match (w, closure(f)) {
        (Valuation::Trivial, _) => true,
        (_, ModuleValue::Lattice(l)) => l.basis().iter().all(|v| in_extension(w, f, &FieldElement::from_coords(d.field(), v))),
        (_, ModuleValue::Span(s)) => s.rank() == 0,
        (_, ModuleValue::Semilocal(comps)) => {
            // ∩ L_P·D_P ⊆ F·V iff the component at the center of V lies in F·V
            let Some(center) = w.center_in(d) else { return false };
            comps.iter().find(|(p, _)| *p == center).is_some_and(|(_, l)| {
                l.basis().iter().all(|v| in_extension(w, f, &FieldElement::from_coords(d.field(), v)))
            })
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Field;
    use num_traits::Zero;

    #[test]
    fn gauss_values() {
        let z = OrderDomain::integers();
        let v2 = Valuation::padic_over(&z, 2).remove(0);
        let w = Valuation::gauss(v2.clone(), BigRational::from_integer(1.into()));
        let k = Field::Rational;
        assert_eq!(w.eval_poly(&Poly::from_ints(k, &[0, 2])), ExtQ::int(2));
        assert_eq!(w.eval_poly(&Poly::from_ints(k, &[4])), ExtQ::int(2));
        assert_eq!(w.eval_poly(&Poly::from_ints(k, &[0, 0, 1])), ExtQ::int(2));
        let w0 = Valuation::gauss(v2.clone(), BigRational::zero());
        let f = Poly::from_ints(k, &[4, 6, 8]);
        assert_eq!(w0.eval_poly(&f), ExtQ::int(1));
    }

    #[test]
    fn order_at_irreducible() {
        let k = Field::Rational;
        let g = Poly::from_ints(k, &[1, 0, 1]);
        let w = Valuation::OrderAt(g.clone());
        assert_eq!(w.eval_poly(&g), ExtQ::int(1));
        assert_eq!(w.eval_poly(&Poly::x(k)), ExtQ::int(0));
    }

    #[test]
    fn padic_in_quadratic_orders() {
        let d = OrderDomain::order(-3, 2).unwrap();
        let k = d.field();
        let vs = Valuation::padic_over(&d, 2);
        // 2 is inert in ℤ[(1+√−3)/2]
        assert_eq!(vs.len(), 1);
        let x = crate::exactnum::parse_element(k, "(1 + w)/4").unwrap();
        assert_eq!(vs[0].eval(&x), ExtQ::int(-1));
        let v3 = Valuation::padic_over(&d, 3);
        assert_eq!(v3.len(), 1);
        // 3 ramifies: √−3 has valuation 1
        assert_eq!(v3[0].eval(&FieldElement::sqrt_m(k).unwrap()), ExtQ::int(1));
        assert_eq!(v3[0].eval(&FieldElement::from_int(k, 3)), ExtQ::int(2));
    }
}
