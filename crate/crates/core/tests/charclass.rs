mod common;

use common::eval;
use num_bigint::BigInt;
use proptest::prelude::*;
use slcc_core::charclass::*;
use slcc_core::polyring::RingSpec;

fn bundle_from(names: &[&str], odd: bool, orientation: i8) -> SplitBundle {
    let ring = RingSpec::indexed("e", 6, 2).unwrap();
    SplitBundle::new(&ring, names, odd, orientation).unwrap()
}

const NAMES: [&str; 6] = ["e1", "e2", "e3", "e4", "e5", "e6"];

proptest! {
    #[test]
    fn whitney_sum_formula(
        split in 0usize..=6,
        odd in (any::<bool>(), any::<bool>()),
        signs in (prop::sample::select(vec![1i8, -1]), prop::sample::select(vec![1i8, -1])),
        eps in prop::sample::select(vec![Convention::Plus, Convention::Minus]),
    ) {
        let a = bundle_from(&NAMES[..split], odd.0, signs.0);
        let b = bundle_from(&NAMES[split..], odd.1, signs.1);
        let s = a.direct_sum(&b).unwrap();
        prop_assert_eq!(s.rank(), a.rank() + b.rank());
        prop_assert_eq!(s.total_borel(4, eps), a.total_borel(4, eps).mul(&b.total_borel(4, eps)));
        if !odd.0 && !odd.1 {
            prop_assert_eq!(s.euler(), &a.euler() * &b.euler());
        } else {
            prop_assert!(s.euler().is_zero());
        }
    }

    #[test]
    fn borel_coefficients_evaluate_like_products(
        k in 1usize..=4,
        point in prop::collection::vec(-5i64..=5, 6),
        eps in prop::sample::select(vec![Convention::Plus, Convention::Minus]),
    ) {
        // Π(1 + ε x_j^2 T) as an explicit polynomial in T
        let mut prod = vec![BigInt::from(1)];
        for &x in &point[..k] {
            let c = BigInt::from(eps.sign() * x * x);
            let mut next = vec![BigInt::from(0); prod.len() + 1];
            for (i, p) in prod.iter().enumerate() {
                next[i] += p;
                next[i + 1] += p * &c;
            }
            prod = next;
        }
        let b = bundle_from(&NAMES[..k], false, 1).total_borel(6, eps);
        prop_assert!(b.is_graded());
        for (i, expected) in prod.iter().enumerate().chain((k + 1..=6).map(|i| (i, &BigInt::ZERO))) {
            prop_assert_eq!(&eval(b.coefficient(i), &point), expected);
        }
    }

    #[test]
    fn complement_inverts_the_borel_series(k in 0usize..=4, extra in 0usize..=3) {
        let inner = bundle_from(&NAMES[..k], false, 1);
        let c = complement_borel(&inner, inner.rank() + 2 * extra, 5).unwrap();
        prop_assert!(inner.total_borel(5, Convention::Minus).mul(&c).is_one());
    }
}

#[test]
fn orientation_and_trivial_summands() {
    let b = bundle_from(&NAMES[..3], false, 1);
    assert_eq!(b.flipped().euler(), -b.euler());
    assert_eq!(b.flipped().flipped(), b);
    assert_eq!(b.dual().total_borel(4, Convention::Minus), b.total_borel(4, Convention::Minus));
    let line = b.with_trivial_line();
    assert!(line.euler().is_zero());
    assert_eq!(line.rank(), 7);
    assert_eq!(line.with_trivial_line().rank(), 8);
    assert!(line.with_trivial_line().euler().is_zero());
    assert_eq!(line.total_borel(4, Convention::Plus), b.total_borel(4, Convention::Plus));
}

#[test]
fn complement_rank_is_checked() {
    let inner = SplitBundle::standard(3, true);
    assert!(complement_borel(&inner, 6, 3).is_err());
    assert!(complement_borel(&inner, 7, 3).is_ok());
}

#[test]
fn top_borel_classes() {
    for k in 1..=5 {
        for odd in [false, true] {
            let checks = verify_top_class(&SplitBundle::standard(k, odd), k + 3);
            assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        }
    }
}
