use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use super::CoefficientDomain;

/// Exact coefficient types a [`Polynomial`](super::Polynomial) can carry.
pub trait Coefficient: Clone + Eq + Debug + Display + Signed + Send + Sync + 'static {
    const DOMAIN: CoefficientDomain;

    fn from_i64(v: i64) -> Self;
}

impl Coefficient for BigInt {
    const DOMAIN: CoefficientDomain = CoefficientDomain::Integers;

    fn from_i64(v: i64) -> Self {
        BigInt::from(v)
    }
}

impl Coefficient for BigRational {
    const DOMAIN: CoefficientDomain = CoefficientDomain::Rationals;

    fn from_i64(v: i64) -> Self {
        BigRational::from_integer(BigInt::from(v))
    }
}
