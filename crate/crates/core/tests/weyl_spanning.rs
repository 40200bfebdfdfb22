mod common;

use std::collections::{BTreeSet, VecDeque};

use common::eval;
use num_bigint::BigInt;
use proptest::prelude::*;
use slcc_core::polyring::{Monomial, ZPoly};
use slcc_core::spanning::{self, Reducer};
use slcc_core::weyl::*;

fn closure(tag: GroupTag, n: usize) -> Vec<SignedPermutation> {
    let gens = generators(tag, n);
    let id = SignedPermutation::identity(tag, n);
    let key = |g: &SignedPermutation| (g.perm().to_vec(), g.signs().to_vec());
    let mut seen = BTreeSet::from([key(&id)]);
    let mut out = vec![id.clone()];
    let mut queue = VecDeque::from([id]);
    while let Some(x) = queue.pop_front() {
        for g in &gens {
            let y = g.compose(&x);
            if seen.insert(key(&y)) {
                out.push(y.clone());
                queue.push_back(y);
            }
        }
    }
    out
}

#[test]
fn generators_produce_the_whole_group() {
    for n in 1..=5 {
        let b = closure(GroupTag::B, n);
        assert_eq!(b.len() as u64, group_order(GroupTag::B, n));
        let fact: u64 = (1..=n as u64).product();
        assert_eq!(b.len() as u64, (1 << n) * fact);
        let d = closure(GroupTag::D, n);
        assert_eq!(d.len() as u64, group_order(GroupTag::D, n));
        assert!(d.iter().all(|g| g.sign_product() == 1));
    }
}

#[test]
fn invariants_are_fixed_by_every_element() {
    for n in 1..=4 {
        for tag in [GroupTag::B, GroupTag::D] {
            let inv = invariant_generators(tag, n).unwrap();
            for g in closure(tag, n) {
                for (_, p) in &inv.gens {
                    assert_eq!(&g.apply(p).unwrap(), p);
                }
            }
        }
    }
    let ring = e_ring(3);
    let e1 = ZPoly::var(&ring, 0);
    assert!(!is_invariant(&e1, GroupTag::B, 3).unwrap());
    assert!(!is_invariant(&e1.pow(2), GroupTag::D, 3).unwrap());
    let t = t_poly(&ring);
    assert!(is_invariant(&t, GroupTag::D, 3).unwrap());
    assert!(!is_invariant(&t, GroupTag::B, 3).unwrap());
}

#[test]
fn spanning_basis_size_is_group_order() {
    for n in 1..=5 {
        for tag in [GroupTag::B, GroupTag::D] {
            let b = spanning::basis(tag, n).unwrap();
            assert_eq!(b.len() as u64, group_order(tag, n));
            let distinct: BTreeSet<&Monomial> = b.monomials.iter().collect();
            assert_eq!(distinct.len(), b.len());
            assert!(spanning::verify_free(tag, n, 30).unwrap().pass);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn witnesses_hold_at_integer_points(n in 1usize..=5, point in prop::collection::vec(-6i64..=6, 5)) {
        for tag in [GroupTag::B, GroupTag::D] {
            let w = witness(tag, n).unwrap();
            let pt = &point[..n];
            let rhs: BigInt = w.cofactors.iter().zip(&w.generators).map(|(c, (_, g))| eval(c, pt) * eval(g, pt)).sum();
            let power = if tag == GroupTag::B { 2 * n } else { 2 * n - 1 };
            prop_assert_eq!(rhs, BigInt::from(pt[0]).pow(power as u32));
            prop_assert!(w.degrees_ok());
        }
    }

    #[test]
    fn decompositions_reassemble(
        n in 1usize..=3,
        terms in prop::collection::vec((prop::collection::vec(0u32..=4, 3), -9i64..=9), 1..6),
    ) {
        let ring = e_ring(n);
        let p = ZPoly::from_terms(&ring, terms.into_iter().map(|(e, c)| {
            (Monomial::new(e[..n].to_vec(), &ring).unwrap(), BigInt::from(c))
        }));
        for tag in [GroupTag::B, GroupTag::D] {
            let d = Reducer::new(tag, n).unwrap().reduce(&p);
            prop_assert!(d.verify());
            prop_assert!(d.coefficients_invariant());
            let basis = spanning::basis(tag, n).unwrap();
            prop_assert!(d.terms.iter().all(|(m, _)| basis.contains(m)));
        }
    }
}
