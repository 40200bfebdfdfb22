//! Signed-permutation actions of W(B_n) and W(D_n) on ℤ[e_1..e_n], their
//! invariant generators, and explicit degree-lowering witnesses.

use std::fmt;
use std::str::FromStr;

use num_traits::{One, Signed};
use serde::Serialize;
use thiserror::Error;

use crate::groebner::{Budget, GroebnerBasis, GroebnerError, Ideal, MonomialOrder};
use crate::polyring::{Monomial, QPoly, Ring, RingSpec, ZPoly};
use crate::symfunc::elementary_of;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum GroupTag {
    B,
    D,
}

impl fmt::Display for GroupTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            GroupTag::B => "B",
            GroupTag::D => "D",
        })
    }
}

impl FromStr for GroupTag {
    type Err = WeylError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "B" | "b" => Ok(GroupTag::B),
            "D" | "d" => Ok(GroupTag::D),
            _ => Err(WeylError::UnknownGroup(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum WeylError {
    #[error("unknown group {0:?}, expected B or D")]
    UnknownGroup(String),
    #[error("rank must be at least 1")]
    ZeroRank,
    #[error("not a permutation of 1..{0}")]
    NotAPermutation(usize),
    #[error("signs must be +1 or -1 and match the permutation length")]
    BadSigns,
    #[error("a W(D_n) element needs an even number of sign changes")]
    OddSignChange,
    #[error("action on {expected} variables applied to a ring with {found}")]
    VariableCountMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
}

/// `|W(B_n)| = 2^n n!` and `|W(D_n)| = 2^{n-1} n!`.
pub fn group_order(tag: GroupTag, n: usize) -> u64 {
    let fact: u64 = (1..=n as u64).product();
    let signs = match tag {
        GroupTag::B => n,
        GroupTag::D => n.saturating_sub(1),
    };
    fact << signs
}

/// `e_i ↦ signs[i] · e_{perm[i]}` (0-based indices).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedPermutation {
    perm: Vec<usize>,
    signs: Vec<i8>,
    tag: GroupTag,
}

impl SignedPermutation {
    pub fn new(tag: GroupTag, perm: Vec<usize>, signs: Vec<i8>) -> Result<Self, WeylError> {
        let n = perm.len();
        let mut seen = vec![false; n];
        for &p in &perm {
            if p >= n || std::mem::replace(&mut seen[p], true) {
                return Err(WeylError::NotAPermutation(n));
            }
        }
        if signs.len() != n || signs.iter().any(|&s| s != 1 && s != -1) {
            return Err(WeylError::BadSigns);
        }
        let g = SignedPermutation { perm, signs, tag };
        if tag == GroupTag::D && g.sign_product() != 1 {
            return Err(WeylError::OddSignChange);
        }
        Ok(g)
    }

    pub fn identity(tag: GroupTag, n: usize) -> Self {
        SignedPermutation { perm: (0..n).collect(), signs: vec![1; n], tag }
    }

    /// Swaps `e_{i+1}` and `e_{i+2}` (0-based `i`).
    pub fn transposition(tag: GroupTag, n: usize, i: usize) -> Self {
        let mut g = Self::identity(tag, n);
        g.perm.swap(i, i + 1);
        g
    }

    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn tag(&self) -> GroupTag {
        self.tag
    }

    pub fn perm(&self) -> &[usize] {
        &self.perm
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn sign_product(&self) -> i8 {
        self.signs.iter().product()
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(&self, other: &SignedPermutation) -> SignedPermutation {
        assert_eq!(self.n(), other.n(), "composing actions of different rank");
        let perm = other.perm.iter().map(|&j| self.perm[j]).collect();
        let signs = other.perm.iter().zip(&other.signs).map(|(&j, &s)| s * self.signs[j]).collect();
        let tag = if self.tag == GroupTag::B || other.tag == GroupTag::B { GroupTag::B } else { GroupTag::D };
        SignedPermutation { perm, signs, tag }
    }

    /// Image of `p`; the `i`-th ring variable plays the role of `e_{i+1}`.
    pub fn apply(&self, p: &ZPoly) -> Result<ZPoly, WeylError> {
        let ring = p.ring();
        if ring.len() != self.n() {
            return Err(WeylError::VariableCountMismatch { expected: self.n(), found: ring.len() });
        }
        let terms = p.terms().iter().map(|(m, c)| {
            let mut exps = vec![0u32; self.n()];
            let mut negative = false;
            for (i, &e) in m.exponents().iter().enumerate() {
                exps[self.perm[i]] = e;
                negative ^= self.signs[i] < 0 && e % 2 == 1;
            }
            let m = Monomial::new(exps, ring).expect("degree is preserved");
            (m, if negative { -c.clone() } else { c.clone() })
        });
        Ok(ZPoly::from_terms(ring, terms))
    }
}

/// Adjacent transpositions plus one sign generator: the flip of `e_n` for B,
/// the double flip of `e_{n-1}, e_n` for D.
pub fn generators(tag: GroupTag, n: usize) -> Vec<SignedPermutation> {
    let mut out: Vec<SignedPermutation> = (0..n.saturating_sub(1)).map(|i| SignedPermutation::transposition(tag, n, i)).collect();
    let mut flip = SignedPermutation::identity(tag, n);
    match tag {
        GroupTag::B if n >= 1 => {
            flip.signs[n - 1] = -1;
            out.push(flip);
        }
        GroupTag::D if n >= 2 => {
            flip.signs[n - 2] = -1;
            flip.signs[n - 1] = -1;
            out.push(flip);
        }
        _ => {}
    }
    out
}

/// `ℤ[e_1..e_n]` with every `e_i` in degree 2.
pub fn e_ring(n: usize) -> Ring {
    RingSpec::indexed("e", n, 2).expect("valid names")
}

fn e_vars(ring: &Ring) -> Vec<ZPoly> {
    (0..ring.len()).map(|i| ZPoly::var(ring, i)).collect()
}

/// `s_i = σ_i(e_1^2..e_n^2)` for `i = 1..k`.
pub fn s_polys(ring: &Ring, k: usize) -> Vec<ZPoly> {
    let squares: Vec<ZPoly> = e_vars(ring).iter().map(|e| e.pow(2)).collect();
    (1..=k).map(|i| elementary_of(i, &squares, ring)).collect()
}

/// `t = e_1 e_2 ⋯ e_n`.
pub fn t_poly(ring: &Ring) -> ZPoly {
    e_vars(ring).iter().fold(ZPoly::one(ring), |a, e| &a * e)
}

#[derive(Clone, Debug)]
pub struct InvariantGenerators {
    pub tag: GroupTag,
    pub n: usize,
    pub ring: Ring,
    /// `s1..sn` for B; `s1..s(n-1), t` for D.
    pub gens: Vec<(String, ZPoly)>,
}

impl InvariantGenerators {
    pub fn polys(&self) -> Vec<ZPoly> {
        self.gens.iter().map(|(_, p)| p.clone()).collect()
    }

    pub fn ideal(&self) -> Ideal {
        Ideal::new(&self.ring, self.polys()).expect("invariants are homogeneous")
    }
}

pub fn invariant_generators(tag: GroupTag, n: usize) -> Result<InvariantGenerators, WeylError> {
    if n == 0 {
        return Err(WeylError::ZeroRank);
    }
    let ring = e_ring(n);
    let k = match tag {
        GroupTag::B => n,
        GroupTag::D => n - 1,
    };
    let mut gens: Vec<(String, ZPoly)> =
        s_polys(&ring, k).into_iter().enumerate().map(|(i, s)| (format!("s{}", i + 1), s)).collect();
    if tag == GroupTag::D {
        gens.push(("t".to_string(), t_poly(&ring)));
    }
    Ok(InvariantGenerators { tag, n, ring, gens })
}

/// Fixed by every group generator.
pub fn is_invariant(p: &ZPoly, tag: GroupTag, n: usize) -> Result<bool, WeylError> {
    for g in generators(tag, n) {
        if g.apply(p)? != *p {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessMethod {
    /// Extended reduction against a Gröbner basis of the invariant ideal.
    Reduction,
    /// `e_1^{2n} = Σ (-1)^{i-1} e_1^{2n-2i} s_i`, used when reduction yields non-integral cofactors.
    ClosedForm,
}

/// `target = Σ cofactors[i] · generators[i]` with `target = e_1^{2n}` (B) or `e_1^{2n-1}` (D).
#[derive(Clone, Debug)]
pub struct Witness {
    pub tag: GroupTag,
    pub n: usize,
    pub target: ZPoly,
    pub generators: Vec<(String, ZPoly)>,
    pub cofactors: Vec<ZPoly>,
    pub method: WitnessMethod,
}

impl Witness {
    /// Name used for the cofactors in reports.
    pub fn cofactor_name(&self) -> &'static str {
        match self.tag {
            GroupTag::B => "wit_g",
            GroupTag::D => "wit_h",
        }
    }

    pub fn expansion(&self) -> ZPoly {
        let ring = self.target.ring();
        self.cofactors.iter().zip(&self.generators).fold(ZPoly::zero(ring), |acc, (c, (_, g))| &acc + &(c * g))
    }

    /// The identity holds after full expansion over ℤ.
    pub fn verify(&self) -> bool {
        self.expansion() == self.target
    }

    /// Each nonzero cofactor is homogeneous of degree `deg target - deg generator`.
    pub fn degrees_ok(&self) -> bool {
        let td = self.target.max_degree().unwrap_or(0);
        self.cofactors.iter().zip(&self.generators).all(|(c, (_, g))| {
            let gd = g.max_degree().unwrap_or(0);
            c.is_zero() || (c.is_homogeneous() && gd <= td && c.max_degree() == Some(td - gd))
        })
    }

    /// `target = wit_g1*s1 + ...` in canonical text.
    pub fn identity_text(&self) -> String {
        let mut rhs = String::new();
        for (c, (name, _)) in self.cofactors.iter().zip(&self.generators).filter(|(c, _)| !c.is_zero()) {
            let (negative, body) = match c.terms() {
                [(m, k)] => {
                    let negative = k.sign() == num_bigint::Sign::Minus;
                    let k = k.abs();
                    let mono = m.display(c.ring()).to_string();
                    let body = match (k.is_one(), m.is_one()) {
                        (true, true) => name.clone(),
                        (true, false) => format!("{mono}*{name}"),
                        (false, true) => format!("{k}*{name}"),
                        (false, false) => format!("{k}*{mono}*{name}"),
                    };
                    (negative, body)
                }
                _ => (false, format!("({c})*{name}")),
            };
            match (rhs.is_empty(), negative) {
                (true, false) => rhs.push_str(&body),
                (true, true) => rhs.push_str(&format!("-{body}")),
                (false, false) => rhs.push_str(&format!(" + {body}")),
                (false, true) => rhs.push_str(&format!(" - {body}")),
            }
        }
        format!("{} = {}", self.target, if rhs.is_empty() { "0" } else { &rhs })
    }
}

fn closed_form(tag: GroupTag, n: usize, ring: &Ring) -> Vec<ZPoly> {
    let e1 = ZPoly::var(ring, 0);
    let sign = |i: usize| if i % 2 == 1 { ZPoly::one(ring) } else { -ZPoly::one(ring) };
    match tag {
        GroupTag::B => (1..=n).map(|i| &sign(i) * &e1.pow((2 * n - 2 * i) as u32)).collect(),
        GroupTag::D => {
            let mut out: Vec<ZPoly> = (1..n).map(|i| &sign(i) * &e1.pow((2 * n - 2 * i - 1) as u32)).collect();
            let rest = (1..n).fold(ZPoly::one(ring), |a, j| &a * &ZPoly::var(ring, j));
            out.push(&sign(n) * &rest);
            out
        }
    }
}

/// Witness for `e_1^{2n} ∈ I_B` (B) or `e_1^{2n-1} ∈ I_D` (D).
pub fn witness(tag: GroupTag, n: usize) -> Result<Witness, WeylError> {
    let inv = invariant_generators(tag, n)?;
    let ring = inv.ring.clone();
    let exp = match tag {
        GroupTag::B => 2 * n,
        GroupTag::D => 2 * n - 1,
    };
    let target = ZPoly::var(&ring, 0).pow(exp as u32);
    let ideal = Ideal::new(&ring, inv.polys())?;
    let gb = GroebnerBasis::compute_with(&ideal, MonomialOrder::Grevlex, Budget::from_env(), true)?;
    let cofs: Vec<QPoly> = gb.express(&target.to_rational()).expect("the target lies in the invariant ideal");
    let integral: Option<Vec<ZPoly>> = cofs.iter().map(QPoly::to_integer).collect();
    let (cofactors, method) = match integral {
        Some(c) => (c, WitnessMethod::Reduction),
        None => (closed_form(tag, n, &ring), WitnessMethod::ClosedForm),
    };
    let w = Witness { tag, n, target, generators: inv.gens, cofactors, method };
    assert!(w.verify(), "witness identity must expand exactly");
    Ok(w)
}

pub fn witness_b(n: usize) -> Result<Witness, WeylError> {
    witness(GroupTag::B, n)
}

pub fn witness_d(n: usize) -> Result<Witness, WeylError> {
    witness(GroupTag::D, n)
}
