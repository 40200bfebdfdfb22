//! Sparse exact multivariate polynomials over graded rings.
//!
//! Every variable carries a cohomological degree. Terms are stored in
//! graded reverse lexicographic order with respect to that degree, which is
//! also the order used for printing.

mod coeff;
mod monomial;
mod parse;
mod poly;
mod ring;

pub use coeff::Coefficient;
pub use monomial::{Monomial, MonomialDisplay};
pub use poly::{Homogeneity, Polynomial, QPoly, Substitution, ZPoly};
pub(crate) use ring::same_ring;
pub use ring::{CoefficientDomain, Ring, RingSpec, Variable};

use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("unknown variable {name:?}{}", offset.map(|o| format!(" at byte {o}")).unwrap_or_default())]
    UnknownVariable { name: String, offset: Option<usize> },
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("exponent overflow at byte {offset}")]
    ExponentOverflowAt { offset: usize },
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },
    #[error("variable {0} has no image in the substitution")]
    UnmappedVariable(String),
    #[error("invalid ring: {0}")]
    InvalidRing(String),
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ring() -> Ring {
        RingSpec::parse("e1:2,e2:2,e3:2,e:4").unwrap()
    }

    fn p(s: &str) -> ZPoly {
        ZPoly::parse(s, &ring()).unwrap()
    }

    #[test]
    fn add_examples() {
        let a = p("e1^3 - 2*e2*e");
        assert_eq!(&a + &p("0"), a);
        assert!((&p("e1") + &p("-e1")).is_zero());
        assert_eq!(&p("e1^2") + &p("e2^2"), p("e2^2 + e1^2"));
    }

    #[test]
    fn mul_examples() {
        let a = p("e1^3 - 2*e2*e");
        assert_eq!(&a * &p("1"), a);
        assert_eq!(&(&p("e1") * &p("e2")) * &p("e3"), p("e3*e2*e1"));
        assert_eq!(&p("e1-e2") * &p("e1+e2"), p("e1^2 - e2^2"));
    }

    #[test]
    fn ring_mismatch_is_an_error() {
        let other = RingSpec::parse("x:1").unwrap();
        let x = ZPoly::var(&other, 0);
        assert!(matches!(p("e1").checked_add(&x), Err(PolyError::RingMismatch { .. })));
        assert!(matches!(p("e1").checked_mul(&x), Err(PolyError::RingMismatch { .. })));
    }

    #[test]
    fn substitute_examples() {
        let sig = RingSpec::parse("sigma1:1,sigma2:2").unwrap();
        let x = RingSpec::parse("x1:1,x2:1").unwrap();
        let g2 = ZPoly::parse("sigma1^2 - sigma2", &sig).unwrap();
        let s = Substitution::new(&sig, &x)
            .set("sigma1", ZPoly::parse("x1+x2", &x).unwrap())
            .unwrap()
            .set("sigma2", ZPoly::parse("x1*x2", &x).unwrap())
            .unwrap();
        assert_eq!(g2.substitute(&s).unwrap(), ZPoly::parse("x1^2+x1*x2+x2^2", &x).unwrap());

        let a = p("e1^2*e - 3*e3");
        let id = Substitution::identity(&ring(), &ring()).unwrap();
        assert_eq!(a.substitute(&id).unwrap(), a);

        let b = RingSpec::parse("b1:4").unwrap();
        let e = RingSpec::parse("e1:2").unwrap();
        let s = Substitution::new(&b, &e).set("b1", ZPoly::parse("e1^2", &e).unwrap()).unwrap();
        assert_eq!(ZPoly::parse("b1^2", &b).unwrap().substitute(&s).unwrap(), ZPoly::parse("e1^4", &e).unwrap());
    }

    #[test]
    fn unmapped_variable_is_reported() {
        let s = Substitution::new(&ring(), &ring()).set("e1", p("e2")).unwrap();
        assert_eq!(p("e1 + e2").substitute(&s), Err(PolyError::UnmappedVariable("e2".into())));
        // unused variables need no image
        assert_eq!(p("e1^2").substitute(&s).unwrap(), p("e2^2"));
    }

    #[test]
    fn homogeneity_examples() {
        let r = RingSpec::parse("e1:2,e2:2,e:4").unwrap();
        let q = |s: &str| ZPoly::parse(s, &r).unwrap();
        assert_eq!(q("e1*e2 - e").homogeneity(), Homogeneity::Degree(4));
        assert_eq!(q("0").homogeneity(), Homogeneity::Zero);
        assert_eq!(q("e1 + e1^2").homogeneity(), Homogeneity::Inhomogeneous);
    }

    #[test]
    fn primitive_rescaling() {
        use num_bigint::BigInt;
        use num_rational::BigRational;
        let r = ring();
        let q = QPoly::from_terms(
            &r,
            [
                (Monomial::var(0, &r), BigRational::new(BigInt::from(-2), BigInt::from(3))),
                (Monomial::var(1, &r), BigRational::new(BigInt::from(4), BigInt::from(9))),
            ],
        );
        assert_eq!(q.to_primitive_integer(), p("-3*e1 + 2*e2"));
        assert!(q.to_integer().is_none());
    }

    fn arb_poly() -> impl Strategy<Value = ZPoly> {
        prop::collection::vec((prop::collection::vec(0u32..4, 4), -5i64..=5), 0..7).prop_map(|terms| {
            let r = ring();
            ZPoly::from_terms(&r, terms.into_iter().map(|(e, c)| (Monomial::new(e, &r).unwrap(), num_bigint::BigInt::from(c))))
        })
    }

    fn arb_homogeneous(deg: u32) -> impl Strategy<Value = ZPoly> {
        arb_poly().prop_map(move |q| {
            let d = deg;
            // keep only terms of the chosen cohomological degree
            q.homogeneous_part(d)
        })
    }

    proptest! {
        #[test]
        fn ring_laws(a in arb_poly(), b in arb_poly(), c in arb_poly()) {
            prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
            prop_assert_eq!(&a + &b, &b + &a);
            prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
            prop_assert_eq!(&a * &b, &b * &a);
            prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
            prop_assert!((&a - &a).is_zero());
        }

        #[test]
        fn print_parse_roundtrip(a in arb_poly()) {
            let text = a.to_string();
            let back = ZPoly::parse(&text, &ring()).unwrap();
            prop_assert_eq!(&back, &a);
            prop_assert_eq!(back.to_string(), text);
        }

        #[test]
        fn grading_is_additive(a in arb_homogeneous(8), b in arb_homogeneous(6)) {
            let prod = &a * &b;
            if a.is_zero() || b.is_zero() {
                prop_assert!(prod.is_zero());
            } else {
                prop_assert_eq!(prod.homogeneity(), Homogeneity::Degree(14));
            }
        }
    }
}
