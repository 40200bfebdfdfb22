mod common;

use common::hilbert_by_linear_algebra;
use slcc_core::groebner::{Budget, GroebnerBasis, MonomialOrder};
use slcc_core::presentations::*;

fn all_presentable() -> Vec<Presentation> {
    let mut out = Vec::new();
    for n in 2..=4 {
        for parity in [Parity::Even, Parity::Odd] {
            out.push(present_sgr2(n, parity).unwrap());
            out.push(present_sgr2_relative(n, parity).unwrap());
        }
    }
    out.push(present_sgr2_relative(1, Parity::Odd).unwrap());
    for m in 1..=3 {
        for n in m..=4 {
            for parity in [Parity::Even, Parity::Odd] {
                out.push(present_partial_flag(m, n, parity).unwrap());
                out.push(present_partial_flag_alt(m, n, parity).unwrap());
                if parity == Parity::Odd || n > m {
                    out.push(present_sgr_even(m, n, parity).unwrap());
                }
            }
        }
    }
    for ambient in 2..=9 {
        out.push(present_max_flag(ambient).unwrap());
        out.push(present_bsl(ambient).unwrap());
    }
    out
}

#[test]
fn every_presentation_verifies_to_degree_24() {
    for p in all_presentable() {
        let r = verify_presentation(&p, 24).unwrap();
        assert!(r.pass, "{r}");
    }
}

#[test]
fn hilbert_series_match_linear_algebra() {
    for p in all_presentable().into_iter().filter(|p| p.ring.len() <= 4) {
        let gb = GroebnerBasis::compute_with(&p.ideal, MonomialOrder::Grevlex, Budget::default(), false).unwrap();
        let max = 16;
        assert_eq!(
            gb.quotient_hilbert(max).coeffs(),
            hilbert_by_linear_algebra(&p.ring, p.generators(), max).as_slice(),
            "{}",
            p.descriptor
        );
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (1..=k).fold(1, |acc, j| acc * (n + 1 - j) / j)
}

#[test]
fn ranks_against_closed_forms() {
    for n in 1..=4u64 {
        for m in 1..=n {
            let odd_flag: u64 = (1..=m).map(|i| 2 * n + 2 - 2 * i).product();
            let p = present_partial_flag(m as usize, n as usize, Parity::Odd).unwrap();
            assert_eq!(p.declared_basis.len() as u64, odd_flag);
            let p = present_sgr_even(m as usize, n as usize, Parity::Odd).unwrap();
            assert_eq!(p.declared_basis.len() as u64, 2 * binomial(n, m));
            if m < n {
                let p = present_sgr_even(m as usize, n as usize, Parity::Even).unwrap();
                assert_eq!(p.declared_basis.len() as u64, 2 * binomial(n, m));
            }
        }
        let fact: u64 = (1..=n).product();
        assert_eq!(present_max_flag(2 * n as usize + 1).unwrap().declared_basis.len() as u64, (1 << n) * fact);
        assert_eq!(present_max_flag(2 * n as usize).unwrap().declared_basis.len() as u64, (1 << (n - 1)) * fact);
    }
}

#[test]
fn sgr_duality_of_ranks() {
    // SGr(2m, 2n+1) and SGr(2n-2m, 2n+1) have the same rank; same for SGr(2m,2n), SGr(2n-2m,2n)
    for n in 2..=4 {
        for m in 1..n {
            let a = rank_table(&VarietyDescriptor::Sgr { k: 2 * m, ambient: 2 * n }).unwrap();
            let b = rank_table(&VarietyDescriptor::Sgr { k: 2 * n - 2 * m, ambient: 2 * n }).unwrap();
            assert_eq!(a, b);
        }
    }
}

#[test]
fn partial_flag_sets_agree_everywhere() {
    for m in 1..=3 {
        for n in m..=4 {
            for parity in [Parity::Even, Parity::Odd] {
                assert!(partial_flag_sets_agree(m, n, parity).unwrap(), "m={m} n={n} {parity}");
            }
        }
    }
}

#[test]
fn top_partial_flag_is_the_maximal_flag() {
    for n in 1..=4 {
        let odd = present_partial_flag(n, n, Parity::Odd).unwrap();
        let max = present_max_flag(2 * n + 1).unwrap();
        assert!(slcc_core::groebner::ideal_equal(&odd.ideal, &max.ideal, Budget::default()).unwrap());
    }
}

#[test]
fn errors_are_explicit() {
    assert!(matches!(present_sgr2(1, Parity::Even), Err(PresentationError::OutOfRange(_))));
    assert!(matches!(present_partial_flag(3, 2, Parity::Odd), Err(PresentationError::OutOfRange(_))));
    assert!(matches!(present_sgr_even(3, 3, Parity::Even), Err(PresentationError::Degenerate(_))));
    assert!(matches!(rank_table(&VarietyDescriptor::Sgr { k: 3, ambient: 6 }), Err(PresentationError::NoDeclaredBasis(_))));
}
