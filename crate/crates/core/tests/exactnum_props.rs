use num_rational::BigRational;
use proptest::prelude::*;
use semistar::exactnum::{parse_element, parse_poly, Field, FieldElement, Poly};

fn field() -> impl Strategy<Value = Field> {
    prop_oneof![
        Just(Field::Rational),
        Just(Field::Quadratic(-3)),
        Just(Field::Quadratic(5)),
    ]
}

fn elem(k: Field) -> impl Strategy<Value = FieldElement> {
    (-20i64..20, 1i64..6, -20i64..20, 1i64..6).prop_map(move |(a, ad, b, bd)| {
        let b = if k == Field::Rational { 0 } else { b };
        FieldElement::new(k, BigRational::new(a.into(), ad.into()), BigRational::new(b.into(), bd.into()))
            .unwrap()
    })
}

fn poly(k: Field) -> impl Strategy<Value = Poly> {
    prop::collection::vec(elem(k), 0..4).prop_map(move |c| Poly::new(k, c))
}

proptest! {
    #[test]
    fn ring_axioms((x, y, z) in field().prop_flat_map(|k| (elem(k), elem(k), elem(k)))) {
        prop_assert_eq!(&(&x * &y) * &z, &x * &(&y * &z));
        prop_assert_eq!(&x * &(&y + &z), &(&x * &y) + &(&x * &z));
        prop_assert_eq!(&(&x + &y) - &y, x.clone());
        if !y.is_zero() {
            prop_assert_eq!(&x.checked_div(&y).unwrap() * &y, x.clone());
        }
        prop_assert_eq!(x.norm().is_integer() && x.norm() == BigRational::from_integer(0.into()), x.is_zero());
    }

    #[test]
    fn gcd_scales_by_common_factor((f, g, h) in field().prop_flat_map(|k| (poly(k), poly(k), poly(k)))) {
        prop_assume!(!h.is_zero() && !(f.is_zero() && g.is_zero()));
        let lhs = f.mul(&h).unwrap().gcd(&g.mul(&h).unwrap()).unwrap();
        let rhs = h.monic().unwrap().mul(&f.gcd(&g).unwrap()).unwrap();
        prop_assert_eq!(lhs.clone(), rhs);
        prop_assert!(lhs.divides(&f.mul(&h).unwrap()).unwrap());
    }

    #[test]
    fn print_parse_roundtrip((x, p) in field().prop_flat_map(|k| (elem(k), poly(k)))) {
        prop_assert_eq!(parse_element(x.field(), &x.to_string()).unwrap(), x.clone());
        prop_assert_eq!(parse_poly(p.field(), &p.to_string()).unwrap(), p.clone());
    }

    #[test]
    fn degree_additive((f, g) in field().prop_flat_map(|k| (poly(k), poly(k)))) {
        prop_assume!(!f.is_zero() && !g.is_zero());
        let fg = f.mul(&g).unwrap();
        prop_assert_eq!(fg.degree().unwrap(), f.degree().unwrap() + g.degree().unwrap());
    }
}
