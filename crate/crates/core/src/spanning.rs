//! Spanning sets of ℤ[e_1..e_n] over the W(B_n)- and W(D_n)-invariants, and
//! the inductive rewriting that expresses any polynomial in them.
//!
//! The rewriting peels off `e_1`, decomposes the remaining monomial over the
//! invariants of `e_2..e_n`, and converts those back using
//! `s'_i = Σ_j (-1)^j e_1^{2j} s_{i-j}` and `t = e_1 t'`. Large powers of
//! `e_1` are lowered with the witnesses from [`crate::weyl`].

use std::collections::{BTreeMap, HashMap};

use num_bigint::BigInt;
use num_traits::One;
use serde::Serialize;

use crate::polyring::{Monomial, Ring, RingSpec, Substitution, ZPoly};
use crate::series::TruncatedSeries;
use crate::weyl::{self, e_ring, is_invariant, GroupTag, WeylError};

/// Monomials spanning ℤ[e_1..e_n] over the invariant ring.
#[derive(Clone, Debug)]
pub struct SpanningBasis {
    pub tag: GroupTag,
    pub n: usize,
    pub ring: Ring,
    /// Distinct, ascending.
    pub monomials: Vec<Monomial>,
}

impl SpanningBasis {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn contains(&self, m: &Monomial) -> bool {
        self.monomials.binary_search(m).is_ok()
    }

    pub fn degrees(&self) -> impl Iterator<Item = u32> + '_ {
        self.monomials.iter().map(Monomial::degree)
    }
}

/// B: `e^m` with `0 ≤ m_i ≤ 2n-2i+1`. D: products `u_1⋯u_{n-1}` with
/// `u_i ∈ {e_i^0..e_i^{2n-2i}} ∪ {e_{i+1}⋯e_n}`.
pub fn basis(tag: GroupTag, n: usize) -> Result<SpanningBasis, WeylError> {
    if n == 0 {
        return Err(WeylError::ZeroRank);
    }
    let ring = e_ring(n);
    let mut exps: Vec<Vec<u32>> = vec![vec![0; n]];
    match tag {
        GroupTag::B => {
            for i in 0..n {
                let bound = (2 * n - 2 * i - 1) as u32;
                exps = exps
                    .into_iter()
                    .flat_map(|e| {
                        (0..=bound).map(move |m| {
                            let mut e = e.clone();
                            e[i] = m;
                            e
                        })
                    })
                    .collect();
            }
        }
        GroupTag::D => {
            for i in 0..n.saturating_sub(1) {
                let bound = (2 * n - 2 * i - 2) as u32;
                let mut choices: Vec<Vec<u32>> = (0..=bound)
                    .map(|m| {
                        let mut u = vec![0; n];
                        u[i] = m;
                        u
                    })
                    .collect();
                choices.push((0..n).map(|j| u32::from(j > i)).collect());
                exps = exps
                    .iter()
                    .flat_map(|e| choices.iter().map(move |u| e.iter().zip(u).map(|(a, b)| a + b).collect()))
                    .collect();
            }
        }
    }
    let mut monomials: Vec<Monomial> = exps.into_iter().map(|e| Monomial::new(e, &ring).expect("small exponents")).collect();
    monomials.sort();
    monomials.dedup();
    Ok(SpanningBasis { tag, n, ring, monomials })
}

/// Ring of invariant generators: `s1..sn` (B) or `s1..s(n-1), t` (D).
pub fn invariant_ring(tag: GroupTag, n: usize) -> Ring {
    let mut vars: Vec<(String, u32)> = Vec::new();
    let k = match tag {
        GroupTag::B => n,
        GroupTag::D => n - 1,
    };
    vars.extend((1..=k).map(|i| (format!("s{i}"), 4 * i as u32)));
    if tag == GroupTag::D {
        vars.push(("t".to_string(), 2 * n as u32));
    }
    RingSpec::new(vars).expect("valid names")
}

/// `p = Σ coefficient(S) · basis monomial`.
#[derive(Clone, Debug)]
pub struct SpanDecomposition {
    pub tag: GroupTag,
    pub n: usize,
    pub target: ZPoly,
    /// Ring of the coefficients, see [`invariant_ring`].
    pub coefficient_ring: Ring,
    /// Sorted by basis monomial; no zero coefficients.
    pub terms: Vec<(Monomial, ZPoly)>,
}

impl SpanDecomposition {
    fn to_e(&self) -> Substitution<BigInt> {
        let inv = weyl::invariant_generators(self.tag, self.n).expect("n >= 1");
        inv.gens
            .into_iter()
            .fold(Substitution::new(&self.coefficient_ring, &inv.ring), |s, (name, g)| s.set(&name, g).expect("names match"))
    }

    /// Coefficients rewritten as polynomials in `e`.
    pub fn expanded_coefficients(&self) -> Vec<(Monomial, ZPoly)> {
        let subst = self.to_e();
        self.terms.iter().map(|(m, c)| (m.clone(), c.substitute(&subst).expect("all mapped"))).collect()
    }

    pub fn expand(&self) -> ZPoly {
        let ring = self.target.ring();
        self.expanded_coefficients().into_iter().fold(ZPoly::zero(ring), |acc, (m, c)| &acc + &c.mul_term(&m, &BigInt::one()))
    }

    pub fn verify(&self) -> bool {
        self.expand() == self.target
    }

    pub fn coefficients_invariant(&self) -> bool {
        self.expanded_coefficients().iter().all(|(_, c)| is_invariant(c, self.tag, self.n).unwrap_or(false))
    }
}

type Decomp = BTreeMap<Monomial, ZPoly>;

fn add_into(acc: &mut Decomp, m: Monomial, c: ZPoly) {
    if c.is_zero() {
        return;
    }
    match acc.get_mut(&m) {
        Some(v) => {
            *v = &*v + &c;
            if v.is_zero() {
                acc.remove(&m);
            }
        }
        None => {
            acc.insert(m, c);
        }
    }
}

/// Data for the level that handles `e_{k+1}..e_n` (0-based `k`).
struct Level {
    rank: usize,
    /// Invariants of this level: `s1..s_rank` (B) or `s1..s_{rank-1}, t` (D).
    coef: Ring,
    /// `x` (standing for `e_{k+1}`) followed by the variables of `coef`.
    mixed: Ring,
    /// Images in `mixed` of the next level's `s''_1..s''_{rank-1}`.
    s_images: Vec<ZPoly>,
    /// Witness cofactors as polynomials in the full ring, one per coefficient variable.
    witness: Vec<ZPoly>,
    threshold: u32,
}

/// Memoizing implementation of [`reduce`] for a fixed group and rank.
pub struct Reducer {
    tag: GroupTag,
    n: usize,
    ring: Ring,
    levels: Vec<Level>,
    memo_levels: Vec<HashMap<Monomial, Decomp>>,
}

impl Reducer {
    pub fn new(tag: GroupTag, n: usize) -> Result<Self, WeylError> {
        if n == 0 {
            return Err(WeylError::ZeroRank);
        }
        let ring = e_ring(n);
        let mut levels = Vec::with_capacity(n);
        for k in 0..n {
            let rank = n - k;
            let coef = invariant_ring(tag, rank);
            let mixed = RingSpec::new(
                std::iter::once(("x".to_string(), 2)).chain(coef.vars().iter().map(|v| (v.name.clone(), v.degree))),
            )
            .expect("valid names");
            let x2 = ZPoly::var(&mixed, 0).pow(2);
            let s_var = |i: usize| -> ZPoly {
                if i == 0 {
                    ZPoly::one(&mixed)
                } else {
                    ZPoly::var(&mixed, i)
                }
            };
            let s_images = (1..rank)
                .map(|i| {
                    (0..=i).fold(ZPoly::zero(&mixed), |acc, j| {
                        let term = &x2.pow(j as u32) * &s_var(i - j);
                        if j % 2 == 0 {
                            &acc + &term
                        } else {
                            &acc - &term
                        }
                    })
                })
                .collect();
            let w = weyl::witness(tag, rank)?;
            let shift = Substitution::new(&w.target.ring().clone(), &ring);
            let shift = (0..rank).fold(shift, |s, j| s.set_index(j, ZPoly::var(&ring, k + j)));
            let witness = w.cofactors.iter().map(|c| c.substitute(&shift).expect("all mapped")).collect();
            let threshold = match tag {
                GroupTag::B => 2 * rank as u32,
                GroupTag::D => 2 * rank as u32 - 1,
            };
            levels.push(Level { rank, coef, mixed, s_images, witness, threshold });
        }
        Ok(Reducer { tag, n, ring, levels, memo_levels: vec![HashMap::new(); n] })
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn reduce(&mut self, p: &ZPoly) -> SpanDecomposition {
        assert_eq!(p.ring().len(), self.n, "polynomial must live in ℤ[e_1..e_n]");
        let mut acc = Decomp::new();
        for (m, c) in p.terms() {
            let m = Monomial::new(m.exponents().to_vec(), &self.ring).expect("same grading");
            for (b, coef) in self.decompose(0, &m) {
                add_into(&mut acc, b, coef.scale(c));
            }
        }
        SpanDecomposition {
            tag: self.tag,
            n: self.n,
            target: p.clone().with_ring(&self.ring).unwrap_or_else(|_| p.clone()),
            coefficient_ring: self.levels[0].coef.clone(),
            terms: acc.into_iter().collect(),
        }
    }

    fn mono(&self, exps: Vec<u32>) -> Monomial {
        Monomial::new(exps, &self.ring).expect("bounded exponents")
    }

    /// Decomposition of `m` (supported on `e_{k+1}..e_n`) over the level-`k` invariants.
    fn decompose(&mut self, k: usize, m: &Monomial) -> Decomp {
        if let Some(d) = self.memo_levels[k].get(m) {
            return d.clone();
        }
        let d = self.decompose_uncached(k, m);
        self.memo_levels[k].insert(m.clone(), d.clone());
        d
    }

    fn decompose_uncached(&mut self, k: usize, m: &Monomial) -> Decomp {
        let level = &self.levels[k];
        let coef = level.coef.clone();
        let a = m.exponent(k);
        let mut out = Decomp::new();

        if a >= level.threshold {
            // e_k^a f' = Σ_i G_i · (w_i e_k^{a-thr} f')
            let mut rest = m.exponents().to_vec();
            rest[k] -= level.threshold;
            let rest = ZPoly::monomial(&self.ring, self.mono(rest), BigInt::one());
            let lowered: Vec<ZPoly> = level.witness.iter().map(|w| w * &rest).collect();
            for (i, poly) in lowered.into_iter().enumerate() {
                let g = ZPoly::var(&coef, i);
                for (mm, c) in poly.terms() {
                    for (b, cf) in self.decompose(k, mm) {
                        add_into(&mut out, b, (&cf * &g).scale(c));
                    }
                }
            }
            return out;
        }

        if k + 1 == self.n {
            out.insert(m.clone(), ZPoly::one(&coef));
            return out;
        }

        let mut sub_exps = m.exponents().to_vec();
        sub_exps[k] = 0;
        let sub = self.decompose(k + 1, &self.mono(sub_exps));
        let level = &self.levels[k];
        let rank = level.rank;
        let mixed = level.mixed.clone();
        let t_index = coef.len() - 1;

        for (b, alpha) in sub {
            // alpha(s'', t'') rewritten in `mixed`, split by the parity of t''
            let mut tilde = ZPoly::zero(&mixed);
            let mut hat = ZPoly::zero(&mixed);
            for (am, ac) in alpha.terms() {
                let level = &self.levels[k];
                let mut img = ZPoly::constant(&mixed, ac.clone());
                let mut odd_t = false;
                for (idx, &e) in am.exponents().iter().enumerate() {
                    if e == 0 {
                        continue;
                    }
                    let is_t = self.tag == GroupTag::D && idx == alpha.ring().len() - 1;
                    if is_t {
                        // t''^2 = s''_{rank-1}
                        img = &img * &level.s_images[rank - 2].pow(e / 2);
                        odd_t = e % 2 == 1;
                    } else {
                        img = &img * &level.s_images[idx].pow(e);
                    }
                }
                if odd_t {
                    hat = &hat + &img;
                } else {
                    tilde = &tilde + &img;
                }
            }
            for (part, is_hat) in [(tilde, false), (hat, true)] {
                for (mm, c) in part.terms() {
                    let l2 = mm.exponent(0);
                    let beta = ZPoly::monomial(
                        &coef,
                        Monomial::new(mm.exponents()[1..].to_vec(), &coef).expect("same degrees"),
                        c.clone(),
                    );
                    let mut exps = b.exponents().to_vec();
                    if !is_hat {
                        exps[k] = a + l2;
                        let target = self.mono(exps);
                        if l2 == 0 {
                            add_into(&mut out, target, beta);
                        } else {
                            for (bb, cf) in self.decompose(k, &target) {
                                add_into(&mut out, bb, &cf * &beta);
                            }
                        }
                    } else {
                        // t'' b'' with e_k^{a+l2} in front
                        for e in exps.iter_mut().skip(k + 1) {
                            *e += 1;
                        }
                        if a + l2 == 0 {
                            add_into(&mut out, self.mono(exps), beta);
                        } else {
                            // e_k t'' = t
                            for e in exps.iter_mut().skip(k + 1) {
                                *e -= 1;
                            }
                            exps[k] = a + l2 - 1;
                            let target = self.mono(exps);
                            let t = ZPoly::var(&coef, t_index);
                            let beta_t = &beta * &t;
                            for (bb, cf) in self.decompose(k, &target) {
                                add_into(&mut out, bb, &cf * &beta_t);
                            }
                        }
                    }
                }
            }
        }
        out
    }
}

/// Decomposition of `p ∈ ℤ[e_1..e_n]` over the spanning basis.
pub fn reduce(p: &ZPoly, tag: GroupTag, n: usize) -> Result<SpanDecomposition, WeylError> {
    if p.ring().len() != n {
        return Err(WeylError::VariableCountMismatch { expected: n, found: p.ring().len() });
    }
    Ok(Reducer::new(tag, n)?.reduce(p))
}

#[derive(Clone, Debug, Serialize)]
pub struct FreenessReport {
    pub tag: GroupTag,
    pub n: usize,
    pub max_degree: u32,
    pub basis_size: usize,
    /// Hilbert series of ℤ[e_1..e_n].
    pub polynomial_ring: Vec<i128>,
    /// Hilbert series of the invariants times the basis generating polynomial.
    pub free_module: Vec<i128>,
    pub first_mismatch: Option<u32>,
    pub pass: bool,
}

/// Checks `Hilb(ℤ[e]) == Hilb(invariants) · Σ_b q^{deg b}` up to `max_degree`.
pub fn verify_free(tag: GroupTag, n: usize, max_degree: u32) -> Result<FreenessReport, WeylError> {
    let b = basis(tag, n)?;
    let lhs = TruncatedSeries::polynomial_ring(std::iter::repeat_n(2, n), max_degree);
    let inv = TruncatedSeries::polynomial_ring(invariant_ring(tag, n).degrees(), max_degree);
    let rhs = inv.mul(&TruncatedSeries::from_degrees(b.degrees(), max_degree));
    let first_mismatch = lhs.first_difference(&rhs);
    Ok(FreenessReport {
        tag,
        n,
        max_degree,
        basis_size: b.len(),
        polynomial_ring: lhs.coeffs().to_vec(),
        free_module: rhs.coeffs().to_vec(),
        first_mismatch,
        pass: first_mismatch.is_none(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::weyl::group_order;
    use proptest::prelude::*;

    fn p(s: &str, n: usize) -> ZPoly {
        ZPoly::parse(s, &e_ring(n)).unwrap()
    }

    fn show(d: &SpanDecomposition) -> Vec<(String, String)> {
        d.terms.iter().map(|(m, c)| (m.display(&e_ring(d.n)).to_string(), c.to_string())).collect()
    }

    #[test]
    fn basis_examples() {
        let r1 = e_ring(1);
        let b1: Vec<String> = basis(GroupTag::B, 1).unwrap().monomials.iter().map(|m| m.display(&r1).to_string()).collect();
        assert_eq!(b1, ["1", "e1"]);
        let r2 = e_ring(2);
        let d2: Vec<String> = basis(GroupTag::D, 2).unwrap().monomials.iter().map(|m| m.display(&r2).to_string()).collect();
        assert_eq!(d2, ["1", "e2", "e1", "e1^2"]);
        let b2 = basis(GroupTag::B, 2).unwrap();
        assert_eq!(b2.len(), 8);
        assert!(b2.monomials.iter().all(|m| m.exponent(0) <= 3 && m.exponent(1) <= 1));
        for n in 1..=5 {
            for tag in [GroupTag::B, GroupTag::D] {
                assert_eq!(basis(tag, n).unwrap().len() as u64, group_order(tag, n), "{tag}{n}");
            }
        }
    }

    #[test]
    fn reduce_examples() {
        let d = reduce(&p("e1^2", 2), GroupTag::B, 2).unwrap();
        assert_eq!(show(&d), [("e1^2".into(), "1".into())]);
        let d = reduce(&p("e2^2", 2), GroupTag::B, 2).unwrap();
        assert_eq!(show(&d), [("1".to_string(), "s1".to_string()), ("e1^2".into(), "-1".into())]);
        let d = reduce(&p("e1^4", 2), GroupTag::B, 2).unwrap();
        assert_eq!(show(&d), [("1".to_string(), "-s2".to_string()), ("e1^2".into(), "s1".into())]);
        assert!(reduce(&p("e1", 3), GroupTag::B, 2).is_err());
    }

    #[test]
    fn basis_monomials_are_fixed() {
        for n in 1..=3 {
            for tag in [GroupTag::B, GroupTag::D] {
                let b = basis(tag, n).unwrap();
                let mut r = Reducer::new(tag, n).unwrap();
                for m in &b.monomials {
                    let d = r.reduce(&ZPoly::monomial(&b.ring, m.clone(), BigInt::one()));
                    assert_eq!(d.terms.len(), 1, "{tag}{n} {}", m.display(&b.ring));
                    assert_eq!(&d.terms[0].0, m);
                    assert!(d.terms[0].1.is_one());
                }
            }
        }
    }

    #[test]
    fn freeness_series() {
        assert!(verify_free(GroupTag::B, 1, 20).unwrap().pass);
        assert!(verify_free(GroupTag::B, 2, 20).unwrap().pass);
        assert!(verify_free(GroupTag::D, 3, 24).unwrap().pass);
    }

    fn arb_poly(n: usize) -> impl Strategy<Value = ZPoly> {
        prop::collection::vec((prop::collection::vec(0u32..5, n), -3i64..=3), 0..5).prop_map(move |ts| {
            let r = e_ring(n);
            ZPoly::from_terms(
                &r,
                ts.into_iter()
                    .filter(|(e, _)| e.iter().sum::<u32>() <= 10)
                    .map(|(e, c)| (Monomial::new(e, &r).unwrap(), BigInt::from(c))),
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(32))]

        #[test]
        fn reduce_round_trips((n, p) in (1usize..=3).prop_flat_map(|n| (Just(n), arb_poly(n))), d in prop::bool::ANY) {
            let tag = if d { GroupTag::D } else { GroupTag::B };
            let dec = reduce(&p, tag, n).unwrap();
            prop_assert!(dec.verify());
            prop_assert!(dec.coefficients_invariant());
            let b = basis(tag, n).unwrap();
            prop_assert!(dec.terms.iter().all(|(m, _)| b.contains(m)));
        }
    }
}
