use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::exactnum::{Field, FieldElement, NumError};
use crate::lattice::{Ambient, FractionalIdeal, QVec, ZLattice};

use super::primes::PrimeIdeal;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DomainKind {
    Integers,
    /// ℤ + f·ω·ℤ inside ℚ(√m).
    Order { m: i64, f: i64 },
}

/// A one-dimensional Noetherian base domain: ℤ or an order in a quadratic
/// field, with its integral closure and conductor.
#[derive(Debug)]
pub struct OrderDomain {
    kind: DomainKind,
    field: Field,
    omega: FieldElement,
    basis: Vec<FieldElement>,
    ring: FractionalIdeal,
    maximal: FractionalIdeal,
    conductor: FractionalIdeal,
}

pub type Domain = Arc<OrderDomain>;

impl OrderDomain {
    pub fn integers() -> Domain {
        let field = Field::Rational;
        let one = FieldElement::one(field);
        let ring = FractionalIdeal::z_span(field, std::slice::from_ref(&one));
        Arc::new(OrderDomain {
            kind: DomainKind::Integers,
            field,
            omega: one.clone(),
            basis: vec![one],
            maximal: ring.clone(),
            conductor: ring.clone(),
            ring,
        })
    }

    /// The order ℤ[f·ω] with ω = √m, or (1+√m)/2 when m ≡ 1 mod 4.
    pub fn order(m: i64, f: i64) -> Result<Domain, NumError> {
        let field = Field::quadratic(m)?;
        if f < 1 {
            return Err(NumError::Parse { col: 1, msg: format!("conductor index {f} must be positive") });
        }
        let w = FieldElement::sqrt_m(field)?;
        let one = FieldElement::one(field);
        let omega = if m.rem_euclid(4) == 1 {
            (&one + &w).scale_rational(&BigRational::new(1.into(), 2.into()))
        } else {
            w
        };
        let fw = &omega * &FieldElement::from_int(field, f);
        let basis = vec![one.clone(), fw];
        let ring = FractionalIdeal::z_span(field, &basis);
        let maximal = FractionalIdeal::z_span(field, &[one, omega.clone()]);
        let conductor = ring.colon(&maximal).expect("maximal order is nonzero");
        Ok(Arc::new(OrderDomain { kind: DomainKind::Order { m, f }, field, omega, basis, ring, maximal, conductor }))
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn degree(&self) -> usize {
        self.field.degree()
    }

    pub fn omega(&self) -> &FieldElement {
        &self.omega
    }

    /// ℤ-basis of D.
    pub fn basis(&self) -> &[FieldElement] {
        &self.basis
    }

    pub fn ring(&self) -> &FractionalIdeal {
        &self.ring
    }

    pub fn maximal_order(&self) -> &FractionalIdeal {
        &self.maximal
    }

    pub fn conductor(&self) -> &FractionalIdeal {
        &self.conductor
    }

    pub fn is_maximal(&self) -> bool {
        self.ring == self.maximal
    }

    pub fn one(&self) -> FieldElement {
        FieldElement::one(self.field)
    }

    pub fn int(&self, n: i64) -> FieldElement {
        FieldElement::from_int(self.field, n)
    }

    /// The D-module generated by `gens`.
    pub fn ideal(&self, gens: &[FieldElement]) -> FractionalIdeal {
        let mut all = Vec::with_capacity(gens.len() * self.basis.len());
        for g in gens {
            for b in &self.basis {
                all.push(g * b);
            }
        }
        FractionalIdeal::z_span(self.field, &all)
    }

    /// The T-module generated by `e` for a ring lattice T ⊇ D.
    pub fn extend(&self, e: &FractionalIdeal, t: &FractionalIdeal) -> FractionalIdeal {
        e.mul(t).expect("same field")
    }

    pub fn is_integral(&self, e: &FractionalIdeal) -> bool {
        e.is_subset(&self.ring)
    }

    /// `x·D ⊆ L` for every basis element, with `L` in `amb`.
    pub fn is_module(&self, amb: &Ambient, l: &ZLattice) -> bool {
        self.basis.iter().skip(1).all(|b| l.image(&amb.mult_matrix(b), amb.dim()).is_subset(l))
    }

    /// Smallest D-module containing the ℤ-lattice `l`.
    pub fn module_closure(&self, amb: &Ambient, l: &ZLattice) -> ZLattice {
        let mut gens: Vec<QVec> = l.basis();
        for b in self.basis.iter().skip(1) {
            gens.extend(l.image(&amb.mult_matrix(b), amb.dim()).basis());
        }
        ZLattice::from_gens(amb.dim(), &gens)
    }

    /// [D : I] for a nonzero integral ideal.
    pub fn norm(&self, i: &FractionalIdeal) -> Option<BigInt> {
        self.ring.lattice().index_of(i.lattice())
    }

    /// Rational primes p ≤ n.
    fn rational_primes(n: u64) -> Vec<u64> {
        (2..=n).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)).collect()
    }

    /// All primes of D lying over p, sorted.
    pub fn primes_above(self: &Arc<Self>, p: u64) -> Vec<PrimeIdeal> {
        let pb = FieldElement::from_int(self.field, p as i64);
        let pd = self.ring.scale(&pb);
        let mut out = Vec::new();
        if self.degree() == 1 {
            out.push(PrimeIdeal::new_unchecked(self, pd, p, BigInt::from(p)));
            return out;
        }
        // lines in D/pD: spanned by a·1 + b·fω with (a:b) ∈ P¹(F_p)
        let fw = &self.basis[1];
        let mut cands: Vec<(i64, i64)> = (0..p as i64).map(|a| (a, 1)).collect();
        cands.push((1, 0));
        for (a, b) in cands {
            let g = &FieldElement::from_int(self.field, a) + &(fw * &FieldElement::from_int(self.field, b));
            let l = pd.sum(&FractionalIdeal::z_span(self.field, &[g])).expect("same field");
            if l.mul(&self.ring).expect("same field") == l {
                out.push(PrimeIdeal::new_unchecked(self, l, p, BigInt::from(p)));
            }
        }
        if out.is_empty() {
            out.push(PrimeIdeal::new_unchecked(self, pd, p, BigInt::from(p * p)));
        }
        out.sort();
        out
    }

    /// Every prime with [D : P] ≤ n, sorted by (norm, HNF).
    pub fn primes_up_to(self: &Arc<Self>, n: u64) -> Vec<PrimeIdeal> {
        let mut out: Vec<PrimeIdeal> = Self::rational_primes(n)
            .into_iter()
            .flat_map(|p| self.primes_above(p))
            .filter(|q| q.norm().to_u64().is_some_and(|x| x <= n))
            .collect();
        out.sort();
        out
    }

    /// `{s ∈ D : s·v ∈ L}` for a vector `v` of the ambient.
    pub fn transporter(&self, amb: &Ambient, v: &[FieldElement], l: &ZLattice) -> FractionalIdeal {
        // row for each ℚ-basis element e of K: e·v
        let rows: Vec<QVec> = (0..self.degree())
            .map(|i| {
                let mut c = vec![BigRational::zero(); self.degree()];
                c[i] = BigRational::one();
                let e = FieldElement::from_coords(self.field, &c);
                let ev: Vec<FieldElement> = v.iter().map(|x| &e * x).collect();
                amb.to_vec(&ev)
            })
            .collect();
        FractionalIdeal::from_lattice(self.field, self.ring.lattice().preimage_in(&rows, l))
    }

    /// `x ∈ L·D_P` for a vector `x` of the ambient and a D-module `L`.
    pub fn local_member(&self, amb: &Ambient, x: &[FieldElement], l: &ZLattice, p: &PrimeIdeal) -> bool {
        let t = self.transporter(amb, x, l);
        !t.is_subset(p.ideal())
    }

    pub fn local_member_elem(&self, x: &FieldElement, a: &FractionalIdeal, p: &PrimeIdeal) -> bool {
        self.local_member(&Ambient::new(self.field, 1), std::slice::from_ref(x), a.lattice(), p)
    }

    /// Some s ∈ D with s ∉ P and s ∈ Q for every other prime Q over p,
    /// times `cofactor`.
    pub fn separator(self: &Arc<Self>, p: &PrimeIdeal, cofactor: &BigInt) -> FieldElement {
        let mut s = FieldElement::from_rational(self.field, BigRational::from_integer(cofactor.clone()));
        for q in self.primes_above(p.p()) {
            if &q == p {
                continue;
            }
            let u = q
                .ideal()
                .basis()
                .into_iter()
                .find(|b| !p.ideal().contains(b))
                .expect("distinct maximal ideals are incomparable");
            s = &s * &u;
        }
        s
    }
}

impl fmt::Display for OrderDomain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            DomainKind::Integers => write!(f, "Z"),
            DomainKind::Order { m, f: c } => write!(f, "order(m={m}, f={c})"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::parse_element;

    #[test]
    fn conductor_of_index_two_order() {
        let d = OrderDomain::order(-3, 2).unwrap();
        let k = d.field();
        let p = d.ideal(&[parse_element(k, "2").unwrap(), parse_element(k, "1 + w").unwrap()]);
        assert_eq!(d.conductor(), &p);
        let o = d.maximal_order();
        assert!(o.contains(&parse_element(k, "(1 + w)/2").unwrap()));
        assert!(d.conductor().mul(o).unwrap().is_subset(d.ring()));
    }

    #[test]
    fn maximal_order_has_unit_conductor() {
        let d = OrderDomain::order(5, 1).unwrap();
        assert!(d.is_maximal());
        assert_eq!(d.conductor(), d.ring());
    }

    #[test]
    fn prime_lists() {
        let z = OrderDomain::integers();
        let ps: Vec<u64> = z.primes_up_to(10).iter().map(|p| p.p()).collect();
        assert_eq!(ps, vec![2, 3, 5, 7]);

        let d = OrderDomain::order(-3, 2).unwrap();
        let ps = d.primes_up_to(4);
        assert!(ps.iter().any(|p| p.ideal() == d.conductor() && p.norm() == &BigInt::from(2)));

        let g = OrderDomain::order(5, 1).unwrap();
        let above2 = g.primes_above(2);
        assert_eq!(above2.len(), 1);
        assert_eq!(above2[0].norm(), &BigInt::from(4));
    }

    #[test]
    fn localization_examples() {
        let z = OrderDomain::integers();
        let two = z.ideal(&[z.int(2)]);
        let p3 = &z.primes_above(3)[0];
        let p2 = &z.primes_above(2)[0];
        assert!(z.local_member_elem(&z.one(), &two, p3));
        assert!(!z.local_member_elem(&z.one(), &two, p2));

        let d = OrderDomain::order(-3, 2).unwrap();
        let p = &d.primes_above(2)[0];
        assert!(!d.local_member_elem(&d.one(), p.ideal(), p));
    }
}
