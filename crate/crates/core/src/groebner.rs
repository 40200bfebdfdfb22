//! Buchberger's algorithm over the rationals with Gebauer–Möller pair
//! pruning, plus normal forms, membership certificates and Hilbert series of
//! graded quotients.

use std::cmp::Ordering;
use std::collections::HashMap;

use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::polyring::{same_ring, Monomial, QPoly, Ring, ZPoly};
use crate::series::TruncatedSeries;

pub const DEFAULT_BUDGET: u64 = 1_000_000;
/// Environment variable overriding [`DEFAULT_BUDGET`].
pub const BUDGET_ENV: &str = "SLCC_BUDGET";

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum GroebnerError {
    #[error("step budget of {limit} reductions exceeded")]
    BudgetExceeded { limit: u64 },
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },
    #[error("generator {index} is not homogeneous: {poly}")]
    NotHomogeneous { index: usize, poly: String },
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum MonomialOrder {
    /// Graded by cohomological degree, ties reverse lexicographic.
    #[default]
    Grevlex,
    Lex,
}

impl MonomialOrder {
    pub fn compare(self, a: &Monomial, b: &Monomial) -> Ordering {
        match self {
            MonomialOrder::Grevlex => a.cmp(b),
            MonomialOrder::Lex => a.lex_cmp(b),
        }
    }
}

/// Upper bound on reduction steps for one computation.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Budget {
    pub limit: u64,
}

impl Default for Budget {
    fn default() -> Self {
        Budget { limit: DEFAULT_BUDGET }
    }
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Budget { limit }
    }

    pub fn unlimited() -> Self {
        Budget { limit: u64::MAX }
    }

    /// Reads `SLCC_BUDGET`, falling back to the default when unset or malformed.
    pub fn from_env() -> Self {
        std::env::var(BUDGET_ENV).ok().and_then(|s| s.trim().parse().ok()).map(Budget::new).unwrap_or_default()
    }
}

/// A homogeneous ideal given by integer generators.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Ring,
    generators: Vec<ZPoly>,
}

impl Ideal {
    /// Zero generators are dropped; inhomogeneous ones are rejected.
    pub fn new<I: IntoIterator<Item = ZPoly>>(ring: &Ring, generators: I) -> Result<Self, GroebnerError> {
        let mut gens = Vec::new();
        for (index, g) in generators.into_iter().enumerate() {
            if !same_ring(g.ring(), ring) {
                return Err(GroebnerError::RingMismatch { left: g.ring().to_string(), right: ring.to_string() });
            }
            if g.is_zero() {
                continue;
            }
            if !g.is_homogeneous() {
                return Err(GroebnerError::NotHomogeneous { index, poly: g.to_string() });
            }
            gens.push(g.with_ring(ring).expect("checked above"));
        }
        Ok(Ideal { ring: ring.clone(), generators: gens })
    }

    pub fn zero(ring: &Ring) -> Self {
        Ideal { ring: ring.clone(), generators: Vec::new() }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn generators(&self) -> &[ZPoly] {
        &self.generators
    }

    /// The ideal generated by `self` together with `extra`.
    pub fn extended<I: IntoIterator<Item = ZPoly>>(&self, extra: I) -> Result<Ideal, GroebnerError> {
        Ideal::new(&self.ring, self.generators.iter().cloned().chain(extra))
    }
}

type Terms = Vec<(Monomial, BigRational)>;

/// A polynomial together with its expression in the ideal generators.
#[derive(Clone, Debug)]
struct Elem {
    poly: Terms,
    /// One entry per generator; empty when cofactors are not tracked.
    cof: Vec<Terms>,
}

impl Elem {
    fn lm(&self) -> &Monomial {
        &self.poly[0].0
    }
}

fn sorted(order: MonomialOrder, mut terms: Terms) -> Terms {
    if order != MonomialOrder::Grevlex {
        terms.sort_by(|a, b| order.compare(&b.0, &a.0));
    }
    terms
}

fn shift(terms: &[(Monomial, BigRational)], m: &Monomial) -> Terms {
    terms.iter().map(|(t, c)| (t.mul(m), c.clone())).collect()
}

/// `a - coef * m * b`, both inputs sorted descending.
fn axpy(
    order: MonomialOrder,
    a: &[(Monomial, BigRational)],
    coef: &BigRational,
    m: &Monomial,
    b: &[(Monomial, BigRational)],
) -> Terms {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut i = 0;
    let mut j = 0;
    let next_b = |j: usize| (b[j].0.mul(m), &b[j].1 * coef);
    let mut pending = if b.is_empty() { None } else { Some(next_b(0)) };
    while let Some((bm, bc)) = pending.take() {
        while i < a.len() && order.compare(&a[i].0, &bm) == Ordering::Greater {
            out.push(a[i].clone());
            i += 1;
        }
        if i < a.len() && a[i].0 == bm {
            let c = &a[i].1 - &bc;
            if !c.is_zero() {
                out.push((bm, c));
            }
            i += 1;
        } else {
            out.push((bm, -bc));
        }
        j += 1;
        if j < b.len() {
            pending = Some(next_b(j));
        }
    }
    out.extend(a[i..].iter().cloned());
    out
}

fn scale_terms(terms: &mut Terms, c: &BigRational) {
    for (_, v) in terms.iter_mut() {
        *v = &*v * c;
    }
}

struct Engine {
    order: MonomialOrder,
    budget: Budget,
    steps: u64,
}

impl Engine {
    fn tick(&mut self) -> Result<(), GroebnerError> {
        self.steps += 1;
        if self.steps > self.budget.limit {
            return Err(GroebnerError::BudgetExceeded { limit: self.budget.limit });
        }
        Ok(())
    }

    /// Full reduction of `f` by the elements `basis[k]` for `k` in `divisors`.
    fn reduce(&mut self, mut f: Elem, basis: &[Elem], divisors: &[usize]) -> Result<Elem, GroebnerError> {
        let mut rem: Terms = Vec::new();
        let mut head = 0;
        while head < f.poly.len() {
            let m = &f.poly[head].0;
            let Some(k) = divisors.iter().copied().find(|&k| basis[k].lm().divides(m)) else {
                rem.push(f.poly[head].clone());
                head += 1;
                continue;
            };
            self.tick()?;
            let g = &basis[k];
            let q = g.lm().quotient_of(m).expect("divisor found");
            let coef = &f.poly[head].1 / &g.poly[0].1;
            f.poly = axpy(self.order, &f.poly[head..], &coef, &q, &g.poly);
            head = 0;
            for (fc, gc) in f.cof.iter_mut().zip(&g.cof) {
                *fc = axpy(self.order, fc, &coef, &q, gc);
            }
        }
        f.poly = rem;
        Ok(f)
    }

    fn make_monic(f: &mut Elem) {
        let inv = f.poly[0].1.recip();
        if inv.is_one() {
            return;
        }
        scale_terms(&mut f.poly, &inv);
        for c in f.cof.iter_mut() {
            scale_terms(c, &inv);
        }
    }
}

#[derive(Clone, Debug)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Buchberger<'a> {
    ring: &'a Ring,
    engine: Engine,
    basis: Vec<Elem>,
    active: Vec<usize>,
    pairs: Vec<Pair>,
}

impl Buchberger<'_> {
    fn lcm(&self, a: usize, b: usize) -> Monomial {
        self.basis[a].lm().lcm(self.basis[b].lm(), self.ring)
    }

    /// Gebauer–Möller update after adding `basis[h]`.
    fn update(&mut self, h: usize) {
        let lh = self.basis[h].lm().clone();
        let mut candidates: Vec<(usize, Monomial)> = self.active.iter().map(|&g| (g, self.lcm(h, g))).collect();
        let mut kept: Vec<(usize, Monomial)> = Vec::new();
        while !candidates.is_empty() {
            let (g1, l1) = candidates.remove(0);
            let coprime = lh.is_coprime(self.basis[g1].lm());
            if coprime || (!candidates.iter().any(|(_, l2)| l2.divides(&l1)) && !kept.iter().any(|(_, l2)| l2.divides(&l1))) {
                kept.push((g1, l1));
            }
        }
        kept.retain(|(g, _)| !lh.is_coprime(self.basis[*g].lm()));

        let basis = &self.basis;
        let ring = self.ring;
        self.pairs.retain(|p| {
            !(lh.divides(&p.lcm) && basis[p.i].lm().lcm(&lh, ring) != p.lcm && basis[p.j].lm().lcm(&lh, ring) != p.lcm)
        });
        self.pairs.extend(kept.into_iter().map(|(g, lcm)| Pair { i: g, j: h, lcm }));

        self.active.retain(|&g| !lh.divides(basis[g].lm()));
        self.active.push(h);
    }

    fn add(&mut self, f: Elem) -> Result<(), GroebnerError> {
        let mut h = self.engine.reduce(f, &self.basis, &self.active)?;
        if h.poly.is_empty() {
            return Ok(());
        }
        Engine::make_monic(&mut h);
        self.basis.push(h);
        self.update(self.basis.len() - 1);
        Ok(())
    }

    fn next_pair(&mut self) -> Option<Pair> {
        let order = self.engine.order;
        let best = (0..self.pairs.len()).min_by(|&a, &b| {
            let (pa, pb) = (&self.pairs[a], &self.pairs[b]);
            pa.lcm
                .degree()
                .cmp(&pb.lcm.degree())
                .then_with(|| order.compare(&pa.lcm, &pb.lcm))
                .then_with(|| (pa.i, pa.j).cmp(&(pb.i, pb.j)))
        })?;
        Some(self.pairs.remove(best))
    }

    fn spoly(&self, p: &Pair) -> Elem {
        let (fi, fj) = (&self.basis[p.i], &self.basis[p.j]);
        let qi = fi.lm().quotient_of(&p.lcm).expect("lcm is a multiple");
        let qj = fj.lm().quotient_of(&p.lcm).expect("lcm is a multiple");
        let one = BigRational::one();
        let order = self.engine.order;
        let poly = axpy(order, &shift(&fi.poly, &qi), &one, &qj, &fj.poly);
        let cof = fi.cof.iter().zip(&fj.cof).map(|(ci, cj)| axpy(order, &shift(ci, &qi), &one, &qj, cj)).collect();
        Elem { poly, cof }
    }

    fn run(mut self) -> Result<(Vec<Elem>, u64), GroebnerError> {
        while let Some(p) = self.next_pair() {
            self.engine.tick()?;
            let s = self.spoly(&p);
            self.add(s)?;
        }
        // reduced basis: interreduce the (already minimal) active set
        let mut active = self.active.clone();
        active.sort_by(|&a, &b| self.engine.order.compare(self.basis[a].lm(), self.basis[b].lm()));
        let mut out = Vec::with_capacity(active.len());
        for (pos, &k) in active.iter().enumerate() {
            let others: Vec<usize> = active.iter().enumerate().filter(|(p, _)| *p != pos).map(|(_, &g)| g).collect();
            let r = self.engine.reduce(self.basis[k].clone(), &self.basis, &others)?;
            out.push(r);
        }
        Ok((out, self.engine.steps))
    }
}

/// Reduced Gröbner basis of a homogeneous ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ideal: Ideal,
    order: MonomialOrder,
    /// Monic, interreduced, sorted by leading monomial ascending.
    elems: Vec<Elem>,
    tracked: bool,
    steps: u64,
}

impl GroebnerBasis {
    /// Grevlex basis with the budget taken from the environment.
    pub fn compute(ideal: &Ideal) -> Result<Self, GroebnerError> {
        Self::compute_with(ideal, MonomialOrder::Grevlex, Budget::from_env(), false)
    }

    /// With `track`, every basis element also remembers its expression in the generators.
    pub fn compute_with(ideal: &Ideal, order: MonomialOrder, budget: Budget, track: bool) -> Result<Self, GroebnerError> {
        let ngens = ideal.generators.len();
        let mut seeds: Vec<(usize, Terms)> =
            ideal.generators.iter().enumerate().map(|(i, g)| (i, sorted(order, g.to_rational().into_terms()))).collect();
        seeds.sort_by(|a, b| {
            a.1[0].0.degree().cmp(&b.1[0].0.degree()).then_with(|| order.compare(&a.1[0].0, &b.1[0].0)).then(a.0.cmp(&b.0))
        });
        let mut bb = Buchberger {
            ring: &ideal.ring,
            engine: Engine { order, budget, steps: 0 },
            basis: Vec::new(),
            active: Vec::new(),
            pairs: Vec::new(),
        };
        for (i, poly) in seeds {
            let cof = if track {
                (0..ngens)
                    .map(|k| if k == i { vec![(Monomial::one(ideal.ring.len()), BigRational::one())] } else { Vec::new() })
                    .collect()
            } else {
                Vec::new()
            };
            bb.add(Elem { poly, cof })?;
        }
        let (elems, steps) = bb.run()?;
        Ok(GroebnerBasis { ideal: ideal.clone(), order, elems, tracked: track, steps })
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn ring(&self) -> &Ring {
        &self.ideal.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Reduction steps spent computing the basis.
    pub fn steps(&self) -> u64 {
        self.steps
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.elems.len() == 1 && self.elems[0].lm().is_one()
    }

    fn to_qpoly(&self, terms: &Terms) -> QPoly {
        QPoly::from_terms(self.ring(), terms.iter().cloned())
    }

    /// Monic basis polynomials, ascending by leading monomial.
    pub fn basis(&self) -> Vec<QPoly> {
        self.elems.iter().map(|e| self.to_qpoly(&e.poly)).collect()
    }

    /// Basis rescaled to primitive integer polynomials with the sign of the monic form.
    pub fn basis_primitive(&self) -> Vec<ZPoly> {
        self.basis().iter().map(QPoly::to_primitive_integer).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.elems.iter().map(|e| e.lm().clone()).collect()
    }

    /// Expression of each basis element in the ideal generators, when tracked.
    pub fn cofactors(&self) -> Option<Vec<Vec<QPoly>>> {
        self.tracked.then(|| self.elems.iter().map(|e| e.cof.iter().map(|c| self.to_qpoly(c)).collect()).collect())
    }

    fn assert_ring(&self, p: &Ring) {
        assert!(same_ring(p, self.ring()), "polynomial ring [{p}] differs from ideal ring [{}]", self.ring());
    }

    fn reduce_terms(&self, poly: Terms, track: bool) -> Elem {
        let ngens = self.ideal.generators.len();
        let cof = if track { vec![Vec::new(); ngens] } else { Vec::new() };
        let mut engine = Engine { order: self.order, budget: Budget::unlimited(), steps: 0 };
        let all: Vec<usize> = (0..self.elems.len()).collect();
        engine.reduce(Elem { poly, cof }, &self.elems, &all).expect("unlimited budget")
    }

    /// Unique remainder of `p`; zero iff `p` lies in the ideal.
    ///
    /// # Panics
    /// If `p` lives in a different ring.
    pub fn normal_form(&self, p: &ZPoly) -> QPoly {
        self.normal_form_q(&p.to_rational())
    }

    pub fn normal_form_q(&self, p: &QPoly) -> QPoly {
        self.assert_ring(p.ring());
        let r = self.reduce_terms(sorted(self.order, p.terms().to_vec()), false);
        self.to_qpoly(&r.poly)
    }

    pub fn contains(&self, p: &ZPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// Cofactors `c` with `sum c_i * gen_i == p`, or `None` when `p` is not in the ideal.
    /// Requires a basis computed with tracking.
    pub fn express(&self, p: &QPoly) -> Option<Vec<QPoly>> {
        assert!(self.tracked, "express needs a basis computed with cofactor tracking");
        self.assert_ring(p.ring());
        let r = self.reduce_terms(sorted(self.order, p.terms().to_vec()), true);
        if !r.poly.is_empty() {
            return None;
        }
        Some(r.cof.iter().map(|c| -self.to_qpoly(c)).collect())
    }

    fn is_standard(&self, m: &Monomial) -> bool {
        !self.elems.iter().any(|e| e.lm().divides(m))
    }

    /// Standard monomials of degree exactly `d`, descending.
    pub fn standard_monomials_in_degree(&self, d: u32) -> Vec<Monomial> {
        self.ring().monomials_of_degree(d).into_iter().filter(|m| self.is_standard(m)).collect()
    }

    /// Standard monomials of degree at most `max_degree`: ascending degree,
    /// descending order within a degree.
    pub fn standard_monomials(&self, max_degree: u32) -> Vec<Monomial> {
        (0..=max_degree).flat_map(|d| self.standard_monomials_in_degree(d)).collect()
    }

    pub fn quotient_hilbert(&self, max_degree: u32) -> TruncatedSeries {
        let coeffs = (0..=max_degree).map(|d| self.standard_monomials_in_degree(d).len() as i128).collect();
        TruncatedSeries::from_coeffs(coeffs, max_degree)
    }

    /// Highest degree a standard monomial can have when the quotient is
    /// finite dimensional, i.e. every variable has a pure power among the leading monomials.
    pub fn socle_bound(&self) -> Option<u32> {
        let ring = self.ring();
        let mut bound = 0u32;
        for i in 0..ring.len() {
            let pure = self
                .elems
                .iter()
                .filter_map(|e| {
                    let m = e.lm();
                    m.exponents().iter().enumerate().all(|(j, &x)| j == i || x == 0).then(|| m.exponent(i))
                })
                .min()?;
            bound += (pure - 1) * ring.degree(i);
        }
        Some(bound)
    }

    /// All standard monomials when the quotient is finite dimensional.
    pub fn all_standard_monomials(&self) -> Option<Vec<Monomial>> {
        self.socle_bound().map(|b| self.standard_monomials(b))
    }

    pub fn quotient_dimension(&self) -> Option<u64> {
        self.all_standard_monomials().map(|v| v.len() as u64)
    }

    /// Every S-polynomial of the basis reduces to zero.
    pub fn satisfies_buchberger_criterion(&self) -> bool {
        let one = BigRational::one();
        for i in 0..self.elems.len() {
            for j in i + 1..self.elems.len() {
                let (fi, fj) = (&self.elems[i], &self.elems[j]);
                let l = fi.lm().lcm(fj.lm(), self.ring());
                let qi = fi.lm().quotient_of(&l).expect("lcm");
                let qj = fj.lm().quotient_of(&l).expect("lcm");
                let s = axpy(self.order, &shift(&fi.poly, &qi), &one, &qj, &fj.poly);
                if !self.reduce_terms(s, false).poly.is_empty() {
                    return false;
                }
            }
        }
        true
    }
}

/// Cofactors expressing `p` in the generators of `ideal`, verified by expansion.
pub fn member_with_cofactors(p: &ZPoly, ideal: &Ideal, budget: Budget) -> Result<Option<Vec<QPoly>>, GroebnerError> {
    if !same_ring(p.ring(), ideal.ring()) {
        return Err(GroebnerError::RingMismatch { left: p.ring().to_string(), right: ideal.ring().to_string() });
    }
    let gb = GroebnerBasis::compute_with(ideal, MonomialOrder::Grevlex, budget, true)?;
    let target = p.to_rational();
    let Some(cofs) = gb.express(&target) else {
        return Ok(None);
    };
    let sum = cofs.iter().zip(ideal.generators()).fold(QPoly::zero(ideal.ring()), |acc, (c, g)| &acc + &(c * &g.to_rational()));
    assert_eq!(sum, target, "cofactor expansion must reproduce the target");
    Ok(Some(cofs))
}

/// Equality of two ideals in the same ring by mutual reduction.
pub fn ideal_equal(a: &Ideal, b: &Ideal, budget: Budget) -> Result<bool, GroebnerError> {
    if !same_ring(a.ring(), b.ring()) {
        return Err(GroebnerError::RingMismatch { left: a.ring().to_string(), right: b.ring().to_string() });
    }
    let ga = GroebnerBasis::compute_with(a, MonomialOrder::Grevlex, budget, false)?;
    let gb = GroebnerBasis::compute_with(b, MonomialOrder::Grevlex, budget, false)?;
    Ok(b.generators().iter().all(|g| ga.contains(g)) && a.generators().iter().all(|g| gb.contains(g)))
}

/// Dimension of the ℚ-span of `polys`.
pub fn rank(polys: &[QPoly]) -> usize {
    let mut pivots: HashMap<Monomial, Terms> = HashMap::new();
    for p in polys {
        let mut row: Terms = p.terms().to_vec();
        while let Some((lead, c)) = row.first().cloned() {
            match pivots.get(&lead) {
                Some(piv) => {
                    let coef = &c / &piv[0].1;
                    row = axpy(MonomialOrder::Grevlex, &row, &coef, &Monomial::one(lead.nvars()), piv);
                }
                None => {
                    pivots.insert(lead, row);
                    break;
                }
            }
        }
    }
    pivots.len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyring::RingSpec;
    use num_bigint::BigInt;
    use proptest::prelude::*;

    fn ring() -> Ring {
        RingSpec::parse("e1:2,e2:2").unwrap()
    }

    fn p(s: &str) -> ZPoly {
        ZPoly::parse(s, &ring()).unwrap()
    }

    fn ideal(gens: &[&str]) -> Ideal {
        Ideal::new(&ring(), gens.iter().map(|s| p(s))).unwrap()
    }

    fn gb(gens: &[&str]) -> GroebnerBasis {
        GroebnerBasis::compute(&ideal(gens)).unwrap()
    }

    #[test]
    fn principal_and_empty() {
        let g = gb(&["e1^4"]);
        assert_eq!(g.basis_primitive(), vec![p("e1^4")]);
        assert!(g.normal_form(&p("e1^4")).is_zero());
        assert!(gb(&[]).is_empty());
        assert!(gb(&["0"]).is_empty());
    }

    #[test]
    fn two_generator_example() {
        let g = gb(&["e1*e2", "e1^2 + e2^2"]);
        assert_eq!(g.basis_primitive(), vec![p("e1*e2"), p("e1^2 + e2^2"), p("e2^3")]);
        assert!(g.satisfies_buchberger_criterion());
        assert!(g.normal_form(&p("e1^3")).is_zero());
        assert_eq!(g.normal_form(&p("e1^2")), p("-e2^2").to_rational());
        assert_eq!(g.quotient_hilbert(6).coeffs(), &[1, 0, 2, 0, 1, 0, 0]);
        assert_eq!(g.quotient_dimension(), Some(4));
        let std: Vec<String> = g.standard_monomials(8).iter().map(|m| m.display(&ring()).to_string()).collect();
        assert_eq!(std, ["1", "e1", "e2", "e2^2"]);
    }

    #[test]
    fn hilbert_of_simple_quotients() {
        let x = RingSpec::parse("e1:2").unwrap();
        let g = GroebnerBasis::compute(&Ideal::new(&x, [ZPoly::parse("e1^4", &x).unwrap()]).unwrap()).unwrap();
        assert_eq!(g.quotient_hilbert(8).coeffs(), &[1, 0, 1, 0, 1, 0, 1, 0, 0]);
        let z = GroebnerBasis::compute(&Ideal::zero(&x)).unwrap();
        assert_eq!(z.quotient_hilbert(6), TruncatedSeries::geometric(2, 6));
        assert_eq!(z.quotient_dimension(), None);
    }

    #[test]
    fn inhomogeneous_is_rejected() {
        assert!(matches!(Ideal::new(&ring(), [p("e1 + e1^2")]), Err(GroebnerError::NotHomogeneous { index: 0, .. })));
    }

    #[test]
    fn budget_is_enforced() {
        let i = ideal(&["e1*e2", "e1^2 + e2^2"]);
        let r = GroebnerBasis::compute_with(&i, MonomialOrder::Grevlex, Budget::new(1), false);
        assert_eq!(r.unwrap_err(), GroebnerError::BudgetExceeded { limit: 1 });
    }

    #[test]
    fn membership_certificates() {
        let x = RingSpec::parse("e1:2").unwrap();
        let i = Ideal::new(&x, [ZPoly::parse("e1^2", &x).unwrap()]).unwrap();
        let c = member_with_cofactors(&ZPoly::parse("e1^2", &x).unwrap(), &i, Budget::default()).unwrap().unwrap();
        assert_eq!(c, vec![QPoly::one(&x)]);

        let ib = ideal(&["e1^2 + e2^2", "e1^2*e2^2"]);
        let c = member_with_cofactors(&p("e1^4"), &ib, Budget::default()).unwrap().unwrap();
        assert_eq!(c.len(), 2);
        assert_eq!(member_with_cofactors(&p("e1"), &ib, Budget::default()).unwrap(), None);
    }

    #[test]
    fn equality_of_ideals() {
        let a = ideal(&["e1*e2", "e1^2 + e2^2"]);
        assert!(ideal_equal(&a, &a, Budget::default()).unwrap());
        assert!(ideal_equal(&a, &ideal(&["e1^2 + e2^2", "e1*e2 + e1^2 + e2^2"]), Budget::default()).unwrap());
        assert!(!ideal_equal(&ideal(&["e1"]), &ideal(&["e1^2"]), Budget::default()).unwrap());
    }

    #[test]
    fn lex_order_basis() {
        let i = ideal(&["e1*e2", "e1^2 + e2^2"]);
        let g = GroebnerBasis::compute_with(&i, MonomialOrder::Lex, Budget::default(), false).unwrap();
        assert!(g.satisfies_buchberger_criterion());
        assert_eq!(g.quotient_dimension(), Some(4));
    }

    #[test]
    fn rank_of_vectors() {
        let v = [p("e1^2 + e2^2"), p("e1^2 - e2^2"), p("e2^2"), p("e1*e2")];
        let q: Vec<QPoly> = v.iter().map(ZPoly::to_rational).collect();
        assert_eq!(rank(&q), 3);
        assert_eq!(rank(&[]), 0);
    }

    fn coinvariant_b(n: usize) -> Ideal {
        let r = RingSpec::indexed("e", n, 2).unwrap();
        let sq: Vec<ZPoly> = (0..n).map(|i| ZPoly::var(&r, i).pow(2)).collect();
        let gens = (1..=n).map(|k| {
            // elementary symmetric in the squares, by subset enumeration
            let mut acc = ZPoly::zero(&r);
            for mask in 0u32..(1 << n) {
                if mask.count_ones() as usize == k {
                    acc = &acc + &(0..n).filter(|i| mask >> i & 1 == 1).fold(ZPoly::one(&r), |a, i| &a * &sq[i]);
                }
            }
            acc
        });
        Ideal::new(&r, gens).unwrap()
    }

    #[test]
    fn coinvariant_dimensions() {
        for (n, order) in [(1, 2), (2, 8), (3, 48)] {
            let g = GroebnerBasis::compute(&coinvariant_b(n)).unwrap();
            assert_eq!(g.quotient_dimension(), Some(order));
            assert!(g.satisfies_buchberger_criterion());
        }
    }

    fn arb_hom(deg: u32) -> impl Strategy<Value = ZPoly> {
        let r = RingSpec::parse("e1:2,e2:2,e3:2").unwrap();
        let monos = r.monomials_of_degree(deg);
        prop::collection::vec(-3i64..=3, monos.len())
            .prop_map(move |cs| ZPoly::from_terms(&r, monos.iter().cloned().zip(cs.into_iter().map(BigInt::from))))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn normal_form_is_idempotent(f in arb_hom(8), a in arb_hom(4), b in arb_hom(6)) {
            let i = Ideal::new(a.ring(), [a.clone(), b.clone()]).unwrap();
            let g = GroebnerBasis::compute(&i).unwrap();
            prop_assert!(g.satisfies_buchberger_criterion());
            let nf = g.normal_form(&f);
            prop_assert!(g.normal_form_q(&(&f.to_rational() - &nf)).is_zero());
            prop_assert_eq!(g.normal_form_q(&nf), nf);
        }

        #[test]
        fn membership_agrees_with_normal_form(c1 in arb_hom(4), c2 in arb_hom(2), f in arb_hom(8), a in arb_hom(4), b in arb_hom(6)) {
            let i = Ideal::new(a.ring(), [a.clone(), b.clone()]).unwrap();
            let g = GroebnerBasis::compute(&i).unwrap();
            // one member built from the generators, one arbitrary polynomial
            let member = &(&c1 * &a) + &(&c2 * &b);
            for q in [member, f] {
                let cert = member_with_cofactors(&q, &i, Budget::default()).unwrap();
                prop_assert_eq!(cert.is_some(), g.contains(&q));
            }
        }
    }
}
