use semistar::domain::{Domain, ModuleValue, OrderDomain};
use semistar::harness::corpus;
use semistar::lattice::FractionalIdeal;
use semistar::starops::{compare, default_eab_pool, eab_approx, qmax, quasi_ideal_test, Mode, Order, SemistarOp, Tri};

fn z3() -> Domain {
    OrderDomain::order(-3, 2).unwrap()
}

fn p2(d: &Domain) -> FractionalIdeal {
    d.primes_above(2).remove(0).ideal().clone()
}

fn exact(op: &SemistarOp, e: &FractionalIdeal) -> ModuleValue {
    op.apply(e).unwrap().exact_value().cloned().expect("exact")
}

fn lat(e: &FractionalIdeal) -> ModuleValue {
    ModuleValue::Lattice(e.lattice().clone())
}

#[test]
fn divisorial_closure_of_conductor_prime() {
    let d = z3();
    let p = p2(&d);
    assert_eq!(exact(&SemistarOp::divisorial(&d), &p), lat(&p));
    assert_eq!(d.ring().colon(&p).unwrap(), d.maximal_order().clone());
}

#[test]
fn b_and_eab_examples() {
    let d = z3();
    let b = SemistarOp::b_op(&d);
    assert_eq!(exact(&b, d.ring()), lat(d.maximal_order()));
    let id = SemistarOp::identity(&d);
    let pool = vec![d.ring().clone(), p2(&d)];
    let r = eab_approx(&id, d.ring(), &pool).unwrap();
    assert_eq!(r.mode(), Mode::Exact);
    assert_eq!(r.exact_value().unwrap(), &lat(d.maximal_order()));
    let two = d.ideal(&[d.int(2)]);
    let r2 = eab_approx(&id, &two, &pool).unwrap();
    assert_eq!(r2.exact_value().unwrap(), &lat(&d.maximal_order().scale(&d.int(2))));
    // H = D only: the F^⋆ term
    let r3 = eab_approx(&id, d.ring(), &[d.ring().clone()]).unwrap();
    assert_eq!(r3.lower().unwrap(), &lat(d.ring()));
}

#[test]
fn quasi_and_qmax() {
    let d = z3();
    let p = p2(&d);
    let sp = SemistarOp::divisorial(&d);
    assert_eq!(quasi_ideal_test(&sp, &p), Tri::True);
    assert_eq!(quasi_ideal_test(&SemistarOp::trivial(&d), &p), Tri::False);
    assert_eq!(quasi_ideal_test(&SemistarOp::identity(&d), &p), Tri::True);

    let pool = d.primes_up_to(30);
    let p5 = d.primes_above(5).remove(0);
    let delta = vec![d.primes_above(2).remove(0), p5];
    let s = SemistarOp::spectral(&d, delta.clone());
    assert_eq!(qmax(&s, &pool, 30).members, delta);
    assert!(qmax(&SemistarOp::trivial(&d), &pool, 30).members.is_empty());
    assert_eq!(qmax(&SemistarOp::identity(&d), &pool, 30).members, pool);
}

#[test]
fn comparisons() {
    let d = z3();
    let mut rng = corpus::rng(3);
    let mut samples: Vec<FractionalIdeal> = (0..12).map(|_| corpus::random_ideal(&d, &mut rng)).collect();
    samples.push(d.ring().clone());
    samples.push(p2(&d));
    let v = SemistarOp::divisorial(&d);
    let t = SemistarOp::t_op(&d);
    let w = SemistarOp::w_op(&d);
    let id = SemistarOp::identity(&d);
    let e = SemistarOp::trivial(&d);
    let c = compare(&id, &v, &samples);
    assert!(matches!(c.order, Order::Le | Order::Eq));
    assert!(matches!(compare(&v, &e, &samples).order, Order::Le));
    assert!(matches!(compare(&w, &t, &samples).order, Order::Le | Order::Eq));
    assert_eq!(compare(&t, &v, &samples).order, Order::Eq);

    let z = OrderDomain::integers();
    let zs: Vec<FractionalIdeal> = (0..10).map(|_| corpus::random_ideal(&z, &mut rng)).collect();
    assert_eq!(compare(&SemistarOp::b_op(&z), &SemistarOp::identity(&z), &zs).order, Order::Eq);
}

#[test]
fn eab_pool_reaches_integral_closure() {
    let d = z3();
    let pool = default_eab_pool(&d, 30);
    let id = SemistarOp::identity(&d);
    let mut rng = corpus::rng(11);
    for _ in 0..5 {
        let e = corpus::random_ideal(&d, &mut rng);
        let r = eab_approx(&id, &e, &pool).unwrap();
        assert!(r.is_exact(), "not closed for {e}");
    }
}

#[test]
fn stable_spectral_is_exact() {
    let d = z3();
    let p = p2(&d);
    let s = SemistarOp::spectral(&d, vec![d.primes_above(2).remove(0)]);
    let st = SemistarOp::stable_closure(&s);
    let a = st.apply(&p).unwrap();
    assert!(a.is_exact());
    let sp = s.space();
    assert!(a.exact_value().unwrap().same(&sp, &exact(&s, &p)));
}
