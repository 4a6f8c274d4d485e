use num_bigint::BigInt;
use proptest::prelude::*;
use semistar::domain::{ExtQ, ModuleValue, OrderDomain, Space, Valuation};
use semistar::exactnum::{FieldElement, Poly};
use semistar::lattice::FractionalIdeal;

fn domains() -> Vec<semistar::domain::Domain> {
    vec![OrderDomain::integers(), OrderDomain::order(-3, 2).unwrap(), OrderDomain::order(5, 1).unwrap()]
}

fn int_elem(d: &semistar::domain::Domain, a: i64, b: i64) -> FieldElement {
    let mut x = d.int(a);
    if d.degree() == 2 {
        x = &x + &(&d.basis()[1] * &d.int(b));
    }
    x
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn spectral_consistency(di in 0usize..3, gens in prop::collection::vec((-6i64..7, -6i64..7), 1..3)) {
        let d = &domains()[di];
        let gs: Vec<FieldElement> = gens.iter().map(|&(a, b)| int_elem(d, a, b)).collect();
        prop_assume!(gs.iter().any(|g| !g.is_zero()));
        let e = d.ideal(&gs);
        prop_assume!(e.lattice().rank() == d.degree());
        let idx = d.norm(&e).unwrap();
        prop_assume!(idx <= BigInt::from(400));
        let sp = Space::new(d, 1);
        let n: u64 = 400.min(u64::try_from(&idx).unwrap().max(2) * 2 + 30);
        let pool = d.primes_up_to(n);
        let loc = ModuleValue::semilocal(&sp, pool.iter().map(|p| (p.clone(), e.lattice().clone())).collect());
        let back = loc.intersect_lattice(&sp, d.ring().lattice());
        prop_assert_eq!(&back, e.lattice());
        prop_assert!(ModuleValue::Lattice(e.lattice().clone()).is_subset(&sp, &loc));
    }

    #[test]
    fn valuation_axioms(a in prop::collection::vec(-9i64..10, 1..4), b in prop::collection::vec(-9i64..10, 1..4), t in 0i64..3) {
        let z = OrderDomain::integers();
        let k = z.field();
        let f = Poly::from_ints(k, &a);
        let g = Poly::from_ints(k, &b);
        let base = Valuation::padic_over(&z, 2).remove(0);
        let ws = [
            Valuation::gauss(base, num_rational::BigRational::from_integer(t.into())),
            Valuation::OrderAt(Poly::from_ints(k, &[1, 0, 1])),
            Valuation::DegreeAtInfinity,
        ];
        for w in &ws {
            let fg = f.mul(&g).unwrap();
            prop_assert_eq!(w.eval_poly(&fg), w.eval_poly(&f).add(&w.eval_poly(&g)));
            let s = f.add(&g).unwrap();
            prop_assert!(w.eval_poly(&s) >= w.eval_poly(&f).min(w.eval_poly(&g)));
            prop_assert_eq!(w.eval_poly(&f) == ExtQ::Inf, f.is_zero());
        }
    }
}

#[test]
fn prime_invariants() {
    for d in domains() {
        for p in d.primes_up_to(30) {
            let inv = d.ring().colon(p.ideal()).unwrap();
            assert!(p.ideal().mul(&inv).unwrap().is_subset(d.ring()));
            assert!(d.is_integral(p.ideal()));
        }
        assert!(d.conductor().mul(d.maximal_order()).unwrap().is_subset(d.ring()));
    }
}

#[test]
fn non_invertible_prime_is_flagged() {
    let d = OrderDomain::order(-3, 2).unwrap();
    let p2 = d.primes_above(2).remove(0);
    assert!(!p2.is_invertible());
    let p7 = d.primes_above(7);
    assert!(p7.iter().all(|p| p.is_invertible()));
    let _ = FractionalIdeal::zero(d.field());
}
