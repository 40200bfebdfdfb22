use std::cmp::Ordering;
use std::fmt;

use super::{PolyError, RingSpec};

/// Exponent vector together with its cohomological degree.
///
/// `Ord` is the storage order: graded by cohomological degree, ties broken
/// reverse lexicographically (a smaller exponent on the last variable wins).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Monomial {
    degree: u32,
    exps: Box<[u32]>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>, ring: &RingSpec) -> Result<Self, PolyError> {
        assert_eq!(exps.len(), ring.len(), "exponent vector length must match the ring");
        let mut degree: u32 = 0;
        for (e, w) in exps.iter().zip(ring.degrees()) {
            degree = e.checked_mul(w).and_then(|d| degree.checked_add(d)).ok_or(PolyError::ExponentOverflow)?;
        }
        Ok(Monomial { degree, exps: exps.into_boxed_slice() })
    }

    pub fn one(nvars: usize) -> Self {
        Monomial { degree: 0, exps: vec![0; nvars].into_boxed_slice() }
    }

    pub fn var(i: usize, ring: &RingSpec) -> Self {
        let mut exps = vec![0; ring.len()];
        exps[i] = 1;
        Monomial { degree: ring.degree(i), exps: exps.into_boxed_slice() }
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// Ordinary (unweighted) total degree.
    pub fn total_degree(&self) -> u32 {
        self.exps.iter().sum()
    }

    pub fn exponents(&self) -> &[u32] {
        &self.exps
    }

    pub fn exponent(&self, i: usize) -> u32 {
        self.exps[i]
    }

    pub fn nvars(&self) -> usize {
        self.exps.len()
    }

    pub fn is_one(&self) -> bool {
        self.degree == 0 && self.exps.iter().all(|&e| e == 0)
    }

    pub fn checked_mul(&self, other: &Monomial) -> Option<Monomial> {
        debug_assert_eq!(self.nvars(), other.nvars());
        let degree = self.degree.checked_add(other.degree)?;
        let exps = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| a.checked_add(*b)).collect::<Option<Vec<_>>>()?;
        Some(Monomial { degree, exps: exps.into_boxed_slice() })
    }

    /// Product; panics on exponent overflow.
    pub fn mul(&self, other: &Monomial) -> Monomial {
        self.checked_mul(other).expect("monomial exponent overflow")
    }

    pub fn checked_pow(&self, k: u32) -> Option<Monomial> {
        let degree = self.degree.checked_mul(k)?;
        let exps = self.exps.iter().map(|e| e.checked_mul(k)).collect::<Option<Vec<_>>>()?;
        Some(Monomial { degree, exps: exps.into_boxed_slice() })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.degree <= other.degree && self.exps.iter().zip(other.exps.iter()).all(|(a, b)| a <= b)
    }

    /// `other / self` when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if !self.divides(other) {
            return None;
        }
        let exps: Vec<u32> = other.exps.iter().zip(self.exps.iter()).map(|(a, b)| a - b).collect();
        Some(Monomial { degree: other.degree - self.degree, exps: exps.into_boxed_slice() })
    }

    pub fn lcm(&self, other: &Monomial, ring: &RingSpec) -> Monomial {
        let exps: Vec<u32> = self.exps.iter().zip(other.exps.iter()).map(|(a, b)| *a.max(b)).collect();
        Monomial::new(exps, ring).expect("lcm cannot overflow when both inputs are valid")
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(other.exps.iter()).all(|(a, b)| *a == 0 || *b == 0)
    }

    /// Reverse-lexicographic comparison of exponent vectors only.
    fn revlex(&self, other: &Monomial) -> Ordering {
        for (a, b) in self.exps.iter().zip(other.exps.iter()).rev() {
            match a.cmp(b) {
                Ordering::Equal => continue,
                o => return o.reverse(),
            }
        }
        Ordering::Equal
    }

    /// Pure lexicographic comparison, first variable most significant.
    pub fn lex_cmp(&self, other: &Monomial) -> Ordering {
        self.exps.cmp(&other.exps)
    }

    pub fn display<'a>(&'a self, ring: &'a RingSpec) -> MonomialDisplay<'a> {
        MonomialDisplay { mono: self, ring }
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree.cmp(&other.degree).then_with(|| self.revlex(other))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

pub struct MonomialDisplay<'a> {
    mono: &'a Monomial,
    ring: &'a RingSpec,
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.mono.is_one() {
            return f.write_str("1");
        }
        let mut first = true;
        for (i, &e) in self.mono.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                f.write_str("*")?;
            }
            first = false;
            f.write_str(self.ring.name(i))?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring() -> std::sync::Arc<RingSpec> {
        RingSpec::parse("e1:2,e2:2,e:4").unwrap()
    }

    #[test]
    fn grevlex_on_equal_degree() {
        let r = ring();
        let a = Monomial::new(vec![2, 0, 0], &r).unwrap();
        let b = Monomial::new(vec![1, 1, 0], &r).unwrap();
        let c = Monomial::new(vec![0, 2, 0], &r).unwrap();
        let d = Monomial::new(vec![0, 0, 1], &r).unwrap();
        assert!(a > b && b > c && c > d);
        assert_eq!(d.degree(), 4);
    }

    #[test]
    fn overflow_is_detected() {
        let r = ring();
        assert!(Monomial::new(vec![u32::MAX, 0, 0], &r).is_err());
        let x = RingSpec::parse("x:1").unwrap();
        let m = Monomial::new(vec![u32::MAX / 2 + 1], &x).unwrap();
        assert!(m.checked_mul(&m).is_none());
    }

    #[test]
    fn lcm_and_division() {
        let r = ring();
        let a = Monomial::new(vec![2, 1, 0], &r).unwrap();
        let b = Monomial::new(vec![0, 3, 1], &r).unwrap();
        let l = a.lcm(&b, &r);
        assert_eq!(l.exponents(), &[2, 3, 1]);
        assert_eq!(a.quotient_of(&l).unwrap().exponents(), &[0, 2, 1]);
        assert!(!a.divides(&b));
    }
}
