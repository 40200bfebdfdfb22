mod common;

use common::eval;
use num_bigint::BigInt;
use proptest::prelude::*;
use slcc_core::polyring::{Monomial, Ring, RingSpec, Substitution, ZPoly};

fn ring() -> Ring {
    RingSpec::parse("x:1,y:2,z:3").unwrap()
}

fn arb_poly() -> impl Strategy<Value = ZPoly> {
    prop::collection::vec((prop::collection::vec(0u32..=3, 3), -20i64..=20), 0..6).prop_map(|terms| {
        let r = ring();
        ZPoly::from_terms(&r, terms.into_iter().map(|(e, c)| (Monomial::new(e, &r).unwrap(), BigInt::from(c))))
    })
}

proptest! {
    #[test]
    fn evaluation_is_a_ring_map(p in arb_poly(), q in arb_poly(), pt in prop::collection::vec(-7i64..=7, 3)) {
        prop_assert_eq!(eval(&(&p + &q), &pt), eval(&p, &pt) + eval(&q, &pt));
        prop_assert_eq!(eval(&(&p - &q), &pt), eval(&p, &pt) - eval(&q, &pt));
        prop_assert_eq!(eval(&(&p * &q), &pt), eval(&p, &pt) * eval(&q, &pt));
        prop_assert_eq!(eval(&p.pow(3), &pt), eval(&p, &pt).pow(3));
    }

    #[test]
    fn substitution_commutes_with_evaluation(p in arb_poly(), img in arb_poly(), pt in prop::collection::vec(-5i64..=5, 3)) {
        let r = ring();
        let s = Substitution::identity(&r, &r).unwrap().set("y", img.clone()).unwrap();
        let moved = [pt[0], i64::try_from(eval(&img, &pt)).unwrap(), pt[2]];
        prop_assert_eq!(eval(&p.substitute(&s).unwrap(), &pt), eval(&p, &moved));
    }

    #[test]
    fn weighted_degrees_split(p in arb_poly()) {
        let top = p.max_degree().unwrap_or(0);
        let sum = (0..=top).fold(ZPoly::zero(&ring()), |acc, d| &acc + &p.homogeneous_part(d));
        prop_assert_eq!(sum, p.clone());
        for d in 0..=top {
            let h = p.homogeneous_part(d);
            prop_assert!(h.is_zero() || h.max_degree() == Some(d));
        }
    }
}

#[test]
fn weighted_monomial_counts() {
    // 1/((1-q)(1-q^2)(1-q^3)) has coefficients 1,1,2,3,4,5,7,8,10,12
    let r = ring();
    let counts: Vec<usize> = (0..10).map(|d| r.monomials_of_degree(d).len()).collect();
    assert_eq!(counts, [1, 1, 2, 3, 4, 5, 7, 8, 10, 12]);
}

#[test]
fn parse_rejects_bad_input() {
    let r = ring();
    for bad in ["w", "x^", "2*", "(x", "x + + y", "x^-1"] {
        assert!(ZPoly::parse(bad, &r).is_err(), "{bad}");
    }
    assert_eq!(ZPoly::parse("(x+y)^2 - y^2", &r).unwrap(), ZPoly::parse("x^2 + 2*x*y", &r).unwrap());
}
