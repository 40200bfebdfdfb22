use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::ring::same_ring;
use super::{Coefficient, Monomial, PolyError, Ring};

/// Sparse polynomial with exact coefficients.
///
/// Terms are kept sorted in descending storage order (see [`Monomial`]),
/// without zero coefficients, so structural equality is mathematical
/// equality.
#[derive(Clone, Debug)]
pub struct Polynomial<C> {
    ring: Ring,
    terms: Vec<(Monomial, C)>,
}

pub type ZPoly = Polynomial<BigInt>;
pub type QPoly = Polynomial<BigRational>;

/// Result of [`Polynomial::homogeneity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// The zero polynomial is homogeneous of every degree.
    Zero,
    Degree(u32),
    Inhomogeneous,
}

impl<C: Coefficient> PartialEq for Polynomial<C> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<C: Coefficient> Eq for Polynomial<C> {}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero(ring: &Ring) -> Self {
        Polynomial { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Ring) -> Self {
        Self::constant(ring, C::one())
    }

    pub fn constant(ring: &Ring, c: C) -> Self {
        Self::monomial(ring, Monomial::one(ring.len()), c)
    }

    pub fn monomial(ring: &Ring, m: Monomial, c: C) -> Self {
        let terms = if c.is_zero() { Vec::new() } else { vec![(m, c)] };
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn var(ring: &Ring, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(i, ring), C::one())
    }

    /// Variable by name; panics if absent. Meant for builders with fixed rings.
    pub fn named(ring: &Ring, name: &str) -> Self {
        let i = ring.index_of(name).unwrap_or_else(|| panic!("no variable {name} in ring {ring}"));
        Self::var(ring, i)
    }

    /// Builds a canonical polynomial from arbitrary (possibly repeated) terms.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, C)>>(ring: &Ring, terms: I) -> Self {
        let mut acc: HashMap<Monomial, C> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.len());
            match acc.get_mut(&m) {
                Some(v) => *v = v.clone() + c,
                None => {
                    acc.insert(m, c);
                }
            }
        }
        Self::from_unsorted(ring, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect())
    }

    fn from_unsorted(ring: &Ring, mut terms: Vec<(Monomial, C)>) -> Self {
        terms.sort_unstable_by(|a, b| b.0.cmp(&a.0));
        Polynomial { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    /// Terms in descending storage order.
    pub fn terms(&self) -> &[(Monomial, C)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, C)> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms[0].0.is_one() && self.terms[0].1.is_one()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, C)> {
        self.terms.first()
    }

    pub fn coefficient(&self, m: &Monomial) -> C {
        self.terms.binary_search_by(|(t, _)| m.cmp(t)).map(|i| self.terms[i].1.clone()).unwrap_or_else(|_| C::zero())
    }

    /// Common cohomological degree of all terms.
    pub fn homogeneity(&self) -> Homogeneity {
        let mut it = self.terms.iter().map(|(m, _)| m.degree());
        match it.next() {
            None => Homogeneity::Zero,
            Some(d) if it.all(|e| e == d) => Homogeneity::Degree(d),
            Some(_) => Homogeneity::Inhomogeneous,
        }
    }

    pub fn is_homogeneous(&self) -> bool {
        self.homogeneity() != Homogeneity::Inhomogeneous
    }

    /// Largest cohomological degree of a term.
    pub fn max_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| m.degree()).max()
    }

    /// Terms of cohomological degree exactly `d`.
    pub fn homogeneous_part(&self, d: u32) -> Self {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().filter(|(m, _)| m.degree() == d).cloned().collect() }
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch { left: self.ring.to_string(), right: other.ring.to_string() })
        }
    }

    pub fn checked_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn checked_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    pub fn checked_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        let mut acc: HashMap<Monomial, C> = HashMap::with_capacity(self.len() * other.len());
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let m = ma.checked_mul(mb).ok_or(PolyError::ExponentOverflow)?;
                let c = ca.clone() * cb.clone();
                match acc.get_mut(&m) {
                    Some(v) => *v = v.clone() + c,
                    None => {
                        acc.insert(m, c);
                    }
                }
            }
        }
        Ok(Self::from_unsorted(&self.ring, acc.into_iter().filter(|(_, c)| !c.is_zero()).collect()))
    }

    pub fn checked_pow(&self, k: u32) -> Result<Self, PolyError> {
        let mut result = Self::one(&self.ring);
        if k == 0 {
            return Ok(result);
        }
        if self.len() == 1 {
            let (m, c) = &self.terms[0];
            let m = m.checked_pow(k).ok_or(PolyError::ExponentOverflow)?;
            return Ok(Self::monomial(&self.ring, m, num_traits::pow(c.clone(), k as usize)));
        }
        let mut base = self.clone();
        let mut e = k;
        while e > 0 {
            if e & 1 == 1 {
                result = result.checked_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.checked_mul(&base)?;
            }
        }
        Ok(result)
    }

    pub fn pow(&self, k: u32) -> Self {
        self.checked_pow(k).expect("polynomial power overflowed an exponent")
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let mut out = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        let a = &self.terms;
        let b = &other.terms;
        let sign = |c: &C| if negate { -c.clone() } else { c.clone() };
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                std::cmp::Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                std::cmp::Ordering::Less => {
                    out.push((b[j].0.clone(), sign(&b[j].1)));
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    let c = a[i].1.clone() + sign(&b[j].1);
                    if !c.is_zero() {
                        out.push((a[i].0.clone(), c));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        out.extend(a[i..].iter().cloned());
        out.extend(b[j..].iter().map(|(m, c)| (m.clone(), sign(c))));
        Polynomial { ring: self.ring.clone(), terms: out }
    }

    pub fn scale(&self, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    /// Multiplies by `c * m`; ordering is preserved so no re-sort is needed.
    pub fn mul_term(&self, m: &Monomial, c: &C) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect() }
    }

    pub fn map_coefficients<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial {
            ring: self.ring.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let d = f(c);
                    (!d.is_zero()).then(|| (m.clone(), d))
                })
                .collect(),
        }
    }

    /// Reinterprets the polynomial in another ring with the same variable list.
    pub fn with_ring(self, ring: &Ring) -> Result<Self, PolyError> {
        if !same_ring(&self.ring, ring) {
            return Err(PolyError::RingMismatch { left: self.ring.to_string(), right: ring.to_string() });
        }
        Ok(Polynomial { ring: ring.clone(), terms: self.terms })
    }

    /// Simultaneous substitution of every variable occurring in `self`.
    pub fn substitute(&self, subst: &Substitution<C>) -> Result<Self, PolyError> {
        if !same_ring(&self.ring, &subst.source) {
            return Err(PolyError::RingMismatch { left: self.ring.to_string(), right: subst.source.to_string() });
        }
        let target = &subst.target;
        let mut powers: HashMap<(usize, u32), Polynomial<C>> = HashMap::new();
        let mut result = Self::zero(target);
        for (m, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                let image = subst.images[i].as_ref().ok_or_else(|| PolyError::UnmappedVariable(self.ring.name(i).to_string()))?;
                let p = match powers.get(&(i, e)) {
                    Some(p) => p.clone(),
                    None => {
                        let p = image.checked_pow(e)?;
                        powers.insert((i, e), p.clone());
                        p
                    }
                };
                term = term.checked_mul(&p)?;
            }
            result = result.checked_add(&term)?;
        }
        Ok(result)
    }
}

impl ZPoly {
    /// Parses `text` in `ring`; see the crate README for the grammar.
    pub fn parse(text: &str, ring: &Ring) -> Result<Self, PolyError> {
        super::parse::parse(text, ring)
    }

    pub fn to_rational(&self) -> QPoly {
        self.map_coefficients(|c| BigRational::from_integer(c.clone()))
    }

    /// Gcd of all coefficients (zero for the zero polynomial).
    pub fn content(&self) -> BigInt {
        self.terms.iter().fold(BigInt::zero(), |g, (_, c)| g.gcd(c))
    }
}

impl QPoly {
    /// Some(p) when every coefficient is an integer.
    pub fn to_integer(&self) -> Option<ZPoly> {
        if self.terms.iter().all(|(_, c)| c.is_integer()) {
            Some(self.map_coefficients(|c| c.to_integer()))
        } else {
            None
        }
    }

    /// Clears denominators and divides by the content, keeping the sign.
    pub fn to_primitive_integer(&self) -> ZPoly {
        if self.is_zero() {
            return ZPoly::zero(&self.ring);
        }
        let den = self.terms.iter().fold(BigInt::one(), |l, (_, c)| l.lcm(c.denom()));
        let scaled = self.map_coefficients(|c| (c * BigRational::from_integer(den.clone())).to_integer());
        let g = scaled.content().abs();
        scaled.map_coefficients(|c| c / &g)
    }

    pub fn make_monic(&self) -> QPoly {
        match self.leading_term() {
            None => self.clone(),
            Some((_, lc)) => self.scale(&lc.recip()),
        }
    }
}

/// A simultaneous substitution `var -> polynomial` from one ring into another.
#[derive(Clone, Debug)]
pub struct Substitution<C> {
    source: Ring,
    target: Ring,
    images: Vec<Option<Polynomial<C>>>,
}

impl<C: Coefficient> Substitution<C> {
    pub fn new(source: &Ring, target: &Ring) -> Self {
        Substitution { source: source.clone(), target: target.clone(), images: vec![None; source.len()] }
    }

    /// Sends every source variable to the same-named target variable.
    pub fn identity(source: &Ring, target: &Ring) -> Result<Self, PolyError> {
        Self::new(source, target).rest_by_name()
    }

    pub fn set(mut self, name: &str, image: Polynomial<C>) -> Result<Self, PolyError> {
        let i = self.source.index_of(name).ok_or_else(|| PolyError::UnknownVariable { name: name.to_string(), offset: None })?;
        if !same_ring(image.ring(), &self.target) {
            return Err(PolyError::RingMismatch { left: image.ring().to_string(), right: self.target.to_string() });
        }
        self.images[i] = Some(image);
        Ok(self)
    }

    pub fn set_index(mut self, i: usize, image: Polynomial<C>) -> Self {
        assert!(same_ring(image.ring(), &self.target), "image must live in the target ring");
        self.images[i] = Some(image);
        self
    }

    /// Maps every still-unmapped variable to the target variable of the same name.
    pub fn rest_by_name(mut self) -> Result<Self, PolyError> {
        for i in 0..self.source.len() {
            if self.images[i].is_none() {
                let name = self.source.name(i);
                let j = self.target.index_of(name).ok_or_else(|| PolyError::UnmappedVariable(name.to_string()))?;
                self.images[i] = Some(Polynomial::var(&self.target, j));
            }
        }
        Ok(self)
    }

    pub fn target(&self) -> &Ring {
        &self.target
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            match (k, neg) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            let a = c.abs();
            if m.is_one() {
                write!(f, "{a}")?;
            } else if a.is_one() {
                write!(f, "{}", m.display(&self.ring))?;
            } else {
                write!(f, "{a}*{}", m.display(&self.ring))?;
            }
        }
        Ok(())
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident, $checked:ident) => {
        impl<C: Coefficient> $tr<&Polynomial<C>> for &Polynomial<C> {
            type Output = Polynomial<C>;

            /// Panics when the operands live in different rings.
            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                self.$checked(rhs).unwrap_or_else(|e| panic!("{e}"))
            }
        }

        impl<C: Coefficient> $tr<Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;

            fn $method(self, rhs: Polynomial<C>) -> Polynomial<C> {
                (&self).$method(&rhs)
            }
        }

        impl<C: Coefficient> $tr<&Polynomial<C>> for Polynomial<C> {
            type Output = Polynomial<C>;

            fn $method(self, rhs: &Polynomial<C>) -> Polynomial<C> {
                (&self).$method(rhs)
            }
        }
    };
}

forward_binop!(Add, add, checked_add);
forward_binop!(Sub, sub, checked_sub);
forward_binop!(Mul, mul, checked_mul);

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        Polynomial { ring: self.ring.clone(), terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl<C: Coefficient> Neg for Polynomial<C> {
    type Output = Polynomial<C>;

    fn neg(self) -> Polynomial<C> {
        -&self
    }
}
