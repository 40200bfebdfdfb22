//! Splitting-principle model of special linear bundles: a bundle is a sum of
//! rank-2 pieces with Euler symbols, possibly trivial planes, and at most one
//! trivial line. Euler and Borel classes become polynomials in the symbols.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::polyring::{same_ring, PolyError, Ring, RingSpec, ZPoly};
use crate::report::Check;
use crate::symfunc::complete_of;

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum ClassError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("orientation must be +1 or -1")]
    BadOrientation,
    #[error("bundles live over different rings")]
    RingMismatch,
    #[error("inner bundle of rank {inner} does not fit in rank {total}")]
    TooLarge { inner: usize, total: usize },
    #[error("unknown sign convention {0:?}, expected +1 or -1")]
    BadConvention(String),
}

/// Sign in `b_1(rank 2) = ε e^2`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Convention {
    /// `b_*(T) = 1 + e^2 t^2`.
    #[serde(rename = "+1")]
    Plus,
    /// `b_*(T) = 1 - e^2 t^2`.
    #[serde(rename = "-1")]
    Minus,
}

impl Convention {
    pub fn sign(self) -> i64 {
        match self {
            Convention::Plus => 1,
            Convention::Minus => -1,
        }
    }
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Plus => "+1",
            Convention::Minus => "-1",
        })
    }
}

impl FromStr for Convention {
    type Err = ClassError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "+1" | "1" | "plus" => Ok(Convention::Plus),
            "-1" | "minus" => Ok(Convention::Minus),
            _ => Err(ClassError::BadConvention(s.to_string())),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitBundle {
    ring: Ring,
    /// Euler symbols of the rank-2 summands, as ring variable indices.
    symbols: Vec<usize>,
    /// Trivial rank-2 summands (Euler class zero).
    trivial_planes: usize,
    odd_part: bool,
    orientation: i8,
}

impl SplitBundle {
    pub fn new(ring: &Ring, symbols: &[&str], odd_part: bool, orientation: i8) -> Result<Self, ClassError> {
        if orientation != 1 && orientation != -1 {
            return Err(ClassError::BadOrientation);
        }
        let symbols = symbols
            .iter()
            .map(|s| ring.index_of(s).ok_or_else(|| PolyError::UnknownVariable { name: s.to_string(), offset: None }))
            .collect::<Result<_, _>>()?;
        Ok(SplitBundle { ring: ring.clone(), symbols, trivial_planes: 0, odd_part, orientation })
    }

    /// Bundle with symbols `e1..ek`, all of degree 2, over a fresh ring.
    pub fn standard(k: usize, odd_part: bool) -> Self {
        let ring = RingSpec::indexed("e", k, 2).expect("valid names");
        SplitBundle { ring, symbols: (0..k).collect(), trivial_planes: 0, odd_part, orientation: 1 }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn symbol_names(&self) -> Vec<&str> {
        self.symbols.iter().map(|&i| self.ring.name(i)).collect()
    }

    fn symbol_polys(&self) -> Vec<ZPoly> {
        self.symbols.iter().map(|&i| ZPoly::var(&self.ring, i)).collect()
    }

    pub fn rank(&self) -> usize {
        2 * (self.symbols.len() + self.trivial_planes) + usize::from(self.odd_part)
    }

    pub fn orientation(&self) -> i8 {
        self.orientation
    }

    pub fn has_odd_part(&self) -> bool {
        self.odd_part
    }

    /// `(E, -λ)`.
    pub fn flipped(&self) -> Self {
        SplitBundle { orientation: -self.orientation, ..self.clone() }
    }

    /// Duality does not change the symbolic model.
    pub fn dual(&self) -> Self {
        self.clone()
    }

    /// Adds a trivial line, as produced by a nowhere vanishing section.
    pub fn with_trivial_line(&self) -> Self {
        let mut b = self.clone();
        if b.odd_part {
            b.odd_part = false;
            b.trivial_planes += 1;
        } else {
            b.odd_part = true;
        }
        b
    }

    pub fn direct_sum(&self, other: &SplitBundle) -> Result<SplitBundle, ClassError> {
        if !same_ring(&self.ring, &other.ring) {
            return Err(ClassError::RingMismatch);
        }
        let mut b = self.clone();
        b.symbols.extend(&other.symbols);
        b.trivial_planes += other.trivial_planes;
        b.orientation *= other.orientation;
        if other.odd_part {
            b = b.with_trivial_line();
        }
        Ok(b)
    }

    /// `orientation · Π e_i`, or zero when a trivial summand is present.
    pub fn euler(&self) -> ZPoly {
        if self.odd_part || self.trivial_planes > 0 {
            return ZPoly::zero(&self.ring);
        }
        let prod = self.symbol_polys().iter().fold(ZPoly::one(&self.ring), |a, e| &a * e);
        if self.orientation < 0 {
            -prod
        } else {
            prod
        }
    }

    /// `Π_j (1 + ε e_j^2 t^2)` truncated after `t^{2N}`.
    pub fn total_borel(&self, order: usize, eps: Convention) -> BorelSeries {
        let one = BorelSeries::one(&self.ring, order);
        self.symbol_polys().iter().fold(one, |acc, e| {
            let mut f = BorelSeries::one(&self.ring, order);
            if order >= 1 {
                f.coefficients[1] = e.pow(2).scale(&eps.sign().into());
            }
            acc.mul(&f)
        })
    }
}

/// `b_0 + b_1 t^2 + ... + b_N t^{2N}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelSeries {
    pub coefficients: Vec<ZPoly>,
}

impl BorelSeries {
    pub fn one(ring: &Ring, order: usize) -> Self {
        let mut coefficients = vec![ZPoly::zero(ring); order + 1];
        coefficients[0] = ZPoly::one(ring);
        BorelSeries { coefficients }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn coefficient(&self, i: usize) -> &ZPoly {
        &self.coefficients[i]
    }

    pub fn mul(&self, other: &BorelSeries) -> BorelSeries {
        let n = self.order().min(other.order());
        let ring = self.coefficients[0].ring().clone();
        let coefficients = (0..=n)
            .map(|k| (0..=k).fold(ZPoly::zero(&ring), |acc, i| &acc + &(&self.coefficients[i] * &other.coefficients[k - i])))
            .collect();
        BorelSeries { coefficients }
    }

    pub fn is_one(&self) -> bool {
        self.coefficients[0].is_one() && self.coefficients[1..].iter().all(ZPoly::is_zero)
    }

    /// `b_i` is homogeneous of degree `4i` or zero.
    pub fn is_graded(&self) -> bool {
        self.coefficients
            .iter()
            .enumerate()
            .all(|(i, b)| b.is_zero() || (b.is_homogeneous() && b.max_degree() == Some(4 * i as u32)))
    }
}

/// Borel series of the complement of `inner` inside a trivial bundle of rank `total_rank`:
/// `b_i = h_i(e_1^2..e_k^2)`.
pub fn complement_borel(inner: &SplitBundle, total_rank: usize, order: usize) -> Result<BorelSeries, ClassError> {
    if inner.rank() > total_rank {
        return Err(ClassError::TooLarge { inner: inner.rank(), total: total_rank });
    }
    let squares: Vec<ZPoly> = inner.symbol_polys().iter().map(|e| e.pow(2)).collect();
    Ok(BorelSeries { coefficients: (0..=order).map(|i| complete_of(i, &squares, &inner.ring)).collect() })
}

/// Checks that only even powers of `t` occur in `Π(1 + e_j t)(1 - e_j t)`,
/// that `b_i = 0` for `n < i ≤ n_bound`, and `b_n = (-1)^n e^2` when the rank is even.
pub fn verify_top_class(bundle: &SplitBundle, n_bound: usize) -> Vec<Check> {
    let n = bundle.symbols.len();
    let mut checks = Vec::new();

    let ring_t = bundle.ring.extend(&RingSpec::new([("t_", 1)]).expect("valid")).expect("fresh name");
    let t = ZPoly::var(&ring_t, ring_t.len() - 1);
    let lift = |p: &ZPoly| {
        ZPoly::from_terms(
            &ring_t,
            p.terms().iter().map(|(m, c)| {
                let mut e = m.exponents().to_vec();
                e.push(0);
                (crate::polyring::Monomial::new(e, &ring_t).expect("same degrees"), c.clone())
            }),
        )
    };
    let pontryagin = bundle.symbol_polys().iter().fold(ZPoly::one(&ring_t), |acc, e| {
        let e = lift(e);
        let one = ZPoly::one(&ring_t);
        &acc * &(&(&one + &(&e * &t)) * &(&one - &(&e * &t)))
    });
    let t_idx = ring_t.len() - 1;
    checks.push(Check::new("odd Pontryagin classes vanish", pontryagin.terms().iter().all(|(m, _)| m.exponent(t_idx) % 2 == 0)));

    let order = n_bound.max(n);
    let b = bundle.total_borel(order, Convention::Minus);
    checks.push(Check::new(format!("b_i = 0 for {} < i <= {}", n, order), (n + 1..=order).all(|i| b.coefficient(i).is_zero())));
    if !bundle.odd_part && bundle.trivial_planes == 0 {
        let e2 = bundle.euler().pow(2);
        let want = if n.is_multiple_of(2) { e2 } else { -e2 };
        checks.push(Check::new(format!("b_{n} = (-1)^{n} e^2"), *b.coefficient(n) == want));
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(s: &str, r: &Ring) -> ZPoly {
        ZPoly::parse(s, r).unwrap()
    }

    #[test]
    fn euler_examples() {
        let b = SplitBundle::standard(1, false);
        assert_eq!(b.euler(), p("e1", b.ring()));
        let b = SplitBundle::standard(2, true);
        assert_eq!(b.rank(), 5);
        assert!(b.euler().is_zero());
        let b = SplitBundle::standard(2, false).flipped();
        assert_eq!(b.euler(), p("-e1*e2", b.ring()));
        assert!(SplitBundle::standard(2, false).with_trivial_line().euler().is_zero());
        assert_eq!(SplitBundle::standard(2, false).dual().euler(), p("e1*e2", b.ring()));
    }

    #[test]
    fn borel_examples() {
        let b = SplitBundle::standard(1, false);
        let s = b.total_borel(3, Convention::Minus);
        assert_eq!(s.coefficients, vec![p("1", b.ring()), p("-e1^2", b.ring()), p("0", b.ring()), p("0", b.ring())]);
        let b = SplitBundle::standard(2, false);
        let s = b.total_borel(3, Convention::Minus);
        assert_eq!(s.coefficient(1), &p("-e1^2 - e2^2", b.ring()));
        assert_eq!(s.coefficient(2), &p("e1^2*e2^2", b.ring()));
        assert!(s.is_graded());
        let s = b.total_borel(3, Convention::Plus);
        assert_eq!(s.coefficient(1), &p("e1^2 + e2^2", b.ring()));
        assert!(SplitBundle::standard(0, false).total_borel(4, Convention::Minus).is_one());
    }

    #[test]
    fn complement_examples() {
        let b = SplitBundle::standard(1, false);
        let c = complement_borel(&b, 5, 4).unwrap();
        for i in 0..=4 {
            assert_eq!(c.coefficient(i), &ZPoly::var(b.ring(), 0).pow(2 * i as u32));
        }
        let b = SplitBundle::standard(2, false);
        let c = complement_borel(&b, 6, 3).unwrap();
        assert_eq!(c.coefficient(2), &p("e1^4 + e1^2*e2^2 + e2^4", b.ring()));
        assert!(c.mul(&b.total_borel(3, Convention::Minus)).is_one());
        assert!(complement_borel(&SplitBundle::standard(0, false), 4, 3).unwrap().is_one());
        assert!(complement_borel(&b, 3, 3).is_err());
    }

    #[test]
    fn whitney_sum() {
        let r = RingSpec::indexed("e", 4, 2).unwrap();
        let a = SplitBundle::new(&r, &["e1", "e2"], false, 1).unwrap();
        let b = SplitBundle::new(&r, &["e3", "e4"], false, -1).unwrap();
        let s = a.direct_sum(&b).unwrap();
        for eps in [Convention::Plus, Convention::Minus] {
            assert_eq!(s.total_borel(6, eps), a.total_borel(6, eps).mul(&b.total_borel(6, eps)));
        }
        assert_eq!(s.euler(), &a.euler() * &b.euler());
        let odd = SplitBundle::new(&r, &["e3"], true, 1).unwrap();
        assert!(a.direct_sum(&odd).unwrap().euler().is_zero());
    }

    #[test]
    fn top_class_checks() {
        for n in 1..=4 {
            let checks = verify_top_class(&SplitBundle::standard(n, false), 10);
            assert_eq!(checks.len(), 3);
            assert!(checks.iter().all(|c| c.pass), "{checks:?}");
        }
        let checks = verify_top_class(&SplitBundle::standard(2, true), 10);
        assert_eq!(checks.len(), 2);
        assert!(checks.iter().all(|c| c.pass));
    }
}
