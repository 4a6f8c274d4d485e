use num_rational::BigRational;
use proptest::prelude::*;
use semistar::exactnum::{Field, FieldElement};
use semistar::lattice::FractionalIdeal;

fn elem(k: Field) -> impl Strategy<Value = FieldElement> {
    (-9i64..10, 1i64..4, -9i64..10).prop_map(move |(a, d, b)| {
        let b = if k == Field::Rational { 0 } else { b };
        FieldElement::new(k, BigRational::new(a.into(), d.into()), BigRational::from_integer(b.into())).unwrap()
    })
}

/// Random full-rank ℤ-lattice in K: a few generators plus a nonzero integer
/// multiple of each basis direction.
fn lattice(k: Field) -> impl Strategy<Value = FractionalIdeal> {
    (prop::collection::vec(elem(k), 1..4), 1i64..6, 1i64..6).prop_map(move |(mut g, s, t)| {
        g.push(FieldElement::from_int(k, s));
        if k != Field::Rational {
            g.push(&FieldElement::sqrt_m(k).unwrap() * &FieldElement::from_int(k, t));
        }
        FractionalIdeal::z_span(k, &g)
    })
}

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![Just(Field::Rational), Just(Field::Quadratic(-3)), Just(Field::Quadratic(5))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn colon_laws((e, f, g) in field().prop_flat_map(|k| (lattice(k), lattice(k), lattice(k)))) {
        let ef = e.colon(&f).unwrap();
        prop_assert!(ef.mul(&f).unwrap().is_subset(&e));
        let lhs = ef.colon(&g).unwrap();
        let rhs = e.colon(&f.mul(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn mul_distributes((e, f, g) in field().prop_flat_map(|k| (lattice(k), lattice(k), lattice(k)))) {
        let lhs = e.mul(&f.sum(&g).unwrap()).unwrap();
        let rhs = e.mul(&f).unwrap().sum(&e.mul(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn presentation_independent((gens, extra) in field().prop_flat_map(|k| (prop::collection::vec(elem(k), 1..5), prop::collection::vec((-3i64..4, -3i64..4), 1..3)))) {
        let k = gens[0].field();
        let a = FractionalIdeal::z_span(k, &gens);
        let mut shuffled: Vec<FieldElement> = gens.iter().rev().cloned().collect();
        for (s, t) in extra {
            let c = &(&gens[0] * &FieldElement::from_int(k, s)) + &(&gens[gens.len() - 1] * &FieldElement::from_int(k, t));
            shuffled.push(c);
        }
        prop_assert_eq!(FractionalIdeal::z_span(k, &shuffled), a.clone());
        prop_assert_eq!(a.sum(&a).unwrap(), a.clone());
        prop_assert_eq!(a.intersect(&a).unwrap(), a);
    }
}
