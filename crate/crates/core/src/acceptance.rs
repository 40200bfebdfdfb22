//! The acceptance matrix. Criteria 1 to 9 run in-process; criterion 10
//! (byte-identical CLI output) is attached by the binary.

use std::fmt;

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::charclass::{complement_borel, verify_top_class, Convention, SplitBundle};
use crate::groebner::{Budget, GroebnerBasis, Ideal, MonomialOrder};
use crate::polyring::{Monomial, RingSpec, ZPoly};
use crate::presentations::{
    partial_flag_sets_agree, present_max_flag, present_sgr2, relative_specializes, sgr_even_collapses, verify_presentation,
    Parity, PresentationError,
};
use crate::report::Check;
use crate::spanning::{self, verify_free, Reducer};
use crate::symfunc::{complete_of, verify_g_substitution, verify_generating_function, verify_h_peel, verify_h_split};
use crate::weyl::{e_ring, group_order, witness_b, witness_d, GroupTag};

/// Deliberate corruption used as a negative control.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Fault {
    /// Replaces the generator of `SGr(2,5)` by `e1^3`.
    CorruptGenerator,
}

impl std::str::FromStr for Fault {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "corrupt-generator" => Ok(Fault::CorruptGenerator),
            _ => Err(format!("unknown fault {s:?}")),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionResult {
    pub id: u32,
    pub name: String,
    pub pass: bool,
    pub checks: Vec<Check>,
}

impl CriterionResult {
    pub fn new(id: u32, name: &str, checks: Vec<Check>) -> Self {
        let pass = !checks.is_empty() && checks.iter().all(|c| c.pass);
        CriterionResult { id, name: name.to_string(), pass, checks }
    }

    pub fn failing(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AcceptanceReport {
    pub criteria: Vec<CriterionResult>,
    pub pass: bool,
}

impl AcceptanceReport {
    pub fn new(mut criteria: Vec<CriterionResult>) -> Self {
        criteria.sort_by_key(|c| c.id);
        let pass = criteria.iter().all(|c| c.pass);
        AcceptanceReport { criteria, pass }
    }

    pub fn push(&mut self, c: CriterionResult) {
        self.criteria.push(c);
        *self = AcceptanceReport::new(std::mem::take(&mut self.criteria));
    }
}

impl fmt::Display for AcceptanceReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.criteria {
            let status = if c.pass { "PASS" } else { "FAIL" };
            let n = c.checks.len();
            let plural = if n == 1 { "" } else { "s" };
            writeln!(f, "criterion {:>2} {:<24} {status} ({n} check{plural})", c.id, c.name)?;
            for bad in c.failing() {
                write!(f, "    failed: {}", bad.name)?;
                if let Some(d) = &bad.detail {
                    write!(f, " ({d})")?;
                }
                writeln!(f)?;
            }
        }
        write!(f, "{}", if self.pass { "all criteria pass" } else { "some criteria FAIL" })
    }
}

pub struct Criterion {
    pub id: u32,
    pub name: &'static str,
    pub run: fn(Option<Fault>) -> Vec<Check>,
}

/// `id` as a decimal or a substring of `name`, for any comma-separated token.
pub fn matches_filter(id: u32, name: &str, filter: Option<&str>) -> bool {
    let Some(filter) = filter else { return true };
    filter.split(',').map(str::trim).filter(|t| !t.is_empty()).any(|t| t == id.to_string() || name.contains(t))
}

pub const DETERMINISM: (u32, &str) = (10, "determinism");

pub fn criteria() -> Vec<Criterion> {
    vec![
        Criterion { id: 1, name: "grassmannian-ranks", run: grassmannian_ranks },
        Criterion { id: 2, name: "coinvariant-dimensions", run: coinvariant_dimensions },
        Criterion { id: 3, name: "witnesses", run: witnesses },
        Criterion { id: 4, name: "spanning", run: spanning_sets },
        Criterion { id: 5, name: "partial-flag-generators", run: partial_flag_generators },
        Criterion { id: 6, name: "sgr-consistency", run: sgr_consistency },
        Criterion { id: 7, name: "charclass", run: characteristic_classes },
        Criterion { id: 8, name: "specialization", run: specialization },
        Criterion { id: 9, name: "symfunc", run: symmetric_functions },
    ]
}

/// Runs every in-process criterion accepted by `filter`, concurrently, in id order.
pub fn run(filter: Option<&str>, fault: Option<Fault>) -> AcceptanceReport {
    let selected: Vec<Criterion> = criteria().into_iter().filter(|c| matches_filter(c.id, c.name, filter)).collect();
    let results = std::thread::scope(|s| {
        let handles: Vec<_> = selected
            .iter()
            .map(|c| {
                let h = s.spawn(move || (c.run)(fault));
                (c, h)
            })
            .collect();
        handles
            .into_iter()
            .map(|(c, h)| {
                let checks = h.join().unwrap_or_else(|_| vec![Check::new("criterion panicked", false)]);
                CriterionResult::new(c.id, c.name, checks)
            })
            .collect()
    });
    AcceptanceReport::new(results)
}

fn errored(name: String, e: PresentationError) -> Check {
    Check::new(name, false).with_detail(e.to_string())
}

fn from_result(name: String, r: Result<bool, PresentationError>) -> Check {
    match r {
        Ok(pass) => Check::new(name, pass),
        Err(e) => errored(name, e),
    }
}

fn grassmannian_ranks(fault: Option<Fault>) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 2..=4usize {
        for parity in [Parity::Odd, Parity::Even] {
            let name = format!("SGr(2,{})", parity.ambient(n));
            let mut p = match present_sgr2(n, parity) {
                Ok(p) => p,
                Err(e) => {
                    checks.push(errored(name, e));
                    continue;
                }
            };
            if fault == Some(Fault::CorruptGenerator) && n == 2 && parity == Parity::Odd {
                let e1 = ZPoly::named(&p.ring, "e1");
                p.ideal = Ideal::new(&p.ring, [e1.pow(3)]).expect("homogeneous");
            }
            let max = 4 * n as u32 + 4;
            let report = match verify_presentation(&p, max) {
                Ok(r) => r,
                Err(e) => {
                    checks.push(errored(name, e.into()));
                    continue;
                }
            };
            let mut want = vec![0i128; max as usize + 1];
            let top = match parity {
                Parity::Odd => 4 * n - 2,
                Parity::Even => 4 * n - 4,
            };
            for d in (0..=top).step_by(2) {
                want[d] = 1;
            }
            if parity == Parity::Even {
                want[2 * n - 2] += 1;
            }
            let sum: i128 = report.hilbert.iter().sum();
            checks.push(
                Check::new(format!("{name} hilbert series"), report.hilbert == want && sum == 2 * n as i128)
                    .with_detail(format!("rank {sum}")),
            );
            checks.push(Check::new(format!("{name} presentation verifies"), report.pass));
        }
    }
    checks
}

fn coinvariant_dimensions(_: Option<Fault>) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=4usize {
        let factorial: u64 = (1..=n as u64).product();
        for (ambient, want) in [(2 * n + 1, (1u64 << n) * factorial), (2 * n, (1u64 << (n - 1)) * factorial)] {
            let name = format!("SF({ambient}) rank {want}");
            let check = present_max_flag(ambient).and_then(|p| {
                let gb = GroebnerBasis::compute_with(&p.ideal, MonomialOrder::Grevlex, Budget::from_env(), false)?;
                let dim = gb.quotient_dimension();
                Ok(Check::new(name.clone(), dim == Some(want) && p.declared_basis.len() as u64 == want)
                    .with_detail(format!("dimension {}", dim.map_or("infinite".into(), |d| d.to_string()))))
            });
            checks.push(check.unwrap_or_else(|e| errored(name, e)));
        }
    }
    checks
}

fn witnesses(_: Option<Fault>) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 1..=4 {
        for (tag, w) in [(GroupTag::B, witness_b(n)), (GroupTag::D, witness_d(n))] {
            let name = format!("{tag}{n} witness");
            match w {
                Ok(w) => {
                    checks.push(Check::new(format!("{name} expansion"), w.verify()));
                    checks.push(Check::new(format!("{name} cofactor degrees"), w.degrees_ok()));
                }
                Err(e) => checks.push(Check::new(name, false).with_detail(e.to_string())),
            }
        }
    }
    checks
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_degree: u32) -> ZPoly {
    let ring = e_ring(n);
    let terms = rng.random_range(1..=6);
    ZPoly::from_terms(
        &ring,
        (0..terms).map(|_| {
            let total = rng.random_range(0..=max_degree);
            let mut exps = vec![0u32; n];
            for _ in 0..total {
                exps[rng.random_range(0..n)] += 1;
            }
            (Monomial::new(exps, &ring).expect("small exponents"), BigInt::from(rng.random_range(-9i64..=9)))
        }),
    )
}

fn spanning_sets(_: Option<Fault>) -> Vec<Check> {
    let mut checks = Vec::new();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    for n in 1..=3 {
        for tag in [GroupTag::B, GroupTag::D] {
            let (Ok(mut reducer), Ok(basis)) = (Reducer::new(tag, n), spanning::basis(tag, n)) else {
                checks.push(Check::new(format!("{tag}{n} reducer"), false));
                continue;
            };
            let bad = (0..200)
                .filter(|_| {
                    let p = random_poly(&mut rng, n, 10);
                    let d = reducer.reduce(&p);
                    !(d.verify() && d.terms.iter().all(|(m, _)| basis.contains(m)))
                })
                .count();
            checks.push(
                Check::new(format!("{tag}{n} round-trips 200 random polynomials"), bad == 0)
                    .detail_if(bad > 0, || format!("{bad} failures")),
            );
        }
    }
    for n in 1..=5 {
        for tag in [GroupTag::B, GroupTag::D] {
            match (verify_free(tag, n, 40), spanning::basis(tag, n)) {
                (Ok(r), Ok(b)) => {
                    checks.push(Check::new(format!("{tag}{n} free to degree 40"), r.pass));
                    checks.push(
                        Check::new(format!("{tag}{n} basis size is the group order"), b.len() as u64 == group_order(tag, n))
                            .with_detail(format!("{} elements", b.len())),
                    );
                }
                _ => checks.push(Check::new(format!("{tag}{n} basis"), false)),
            }
        }
    }
    checks
}

fn partial_flag_generators(_: Option<Fault>) -> Vec<Check> {
    let mut checks = Vec::new();
    for m in 1..=3 {
        for n in m..=4 {
            for parity in [Parity::Odd, Parity::Even] {
                let name = format!("I generating sets agree, m={m} n={n} {parity}");
                checks.push(from_result(name, partial_flag_sets_agree(m, n, parity)));
            }
        }
    }
    checks
}

fn sgr_consistency(_: Option<Fault>) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 2..=4 {
        for parity in [Parity::Odd, Parity::Even] {
            checks
                .push(from_result(format!("J(1,{n}) collapses to SGr(2,{})", parity.ambient(n)), sgr_even_collapses(n, parity)));
        }
    }
    checks
}

fn characteristic_classes(_: Option<Fault>) -> Vec<Check> {
    const ORDER: usize = 10;
    let mut checks = Vec::new();
    let ring = RingSpec::indexed("e", 4, 2).expect("valid names");
    let names = ["e1", "e2", "e3", "e4"];
    for k in 1..=4 {
        // every composition of the first k symbols into consecutive summands
        for mask in 0u32..(1 << (k - 1)) {
            let mut parts: Vec<Vec<&str>> = vec![vec![names[0]]];
            for (i, name) in names.iter().enumerate().take(k).skip(1) {
                if mask & (1 << (i - 1)) != 0 {
                    parts.push(Vec::new());
                }
                parts.last_mut().expect("nonempty").push(name);
            }
            let bundles: Vec<SplitBundle> = parts
                .iter()
                .enumerate()
                .map(|(i, p)| SplitBundle::new(&ring, p, false, if i % 2 == 0 { 1 } else { -1 }).expect("known symbols"))
                .collect();
            let total = bundles[1..].iter().fold(bundles[0].clone(), |acc, b| acc.direct_sum(b).expect("same ring"));
            let label = parts.iter().map(|p| p.join("+")).collect::<Vec<_>>().join(" | ");
            for eps in [Convention::Plus, Convention::Minus] {
                let product =
                    bundles[1..].iter().fold(bundles[0].total_borel(ORDER, eps), |acc, b| acc.mul(&b.total_borel(ORDER, eps)));
                checks.push(Check::new(format!("whitney {label} eps={eps}"), total.total_borel(ORDER, eps) == product));
            }
            let euler = bundles[1..].iter().fold(bundles[0].euler(), |acc, b| &acc * &b.euler());
            checks.push(Check::new(format!("euler multiplicative {label}"), total.euler() == euler));
        }

        let inner = SplitBundle::new(&ring, &names[..k], false, 1).expect("known symbols");
        let squares: Vec<ZPoly> = names[..k].iter().map(|s| ZPoly::named(&ring, s).pow(2)).collect();
        match complement_borel(&inner, 2 * k + 2 * ORDER, ORDER) {
            Ok(c) => {
                let inverse = c.mul(&inner.total_borel(ORDER, Convention::Minus)).is_one();
                let complete = (0..=ORDER).all(|i| *c.coefficient(i) == complete_of(i, &squares, &ring));
                checks.push(Check::new(format!("complement series inverts {k} summands"), inverse && complete));
            }
            Err(e) => checks.push(Check::new(format!("complement series {k}"), false).with_detail(e.to_string())),
        }

        for odd in [false, true] {
            let b = SplitBundle::new(&ring, &names[..k], odd, 1).expect("known symbols");
            for c in verify_top_class(&b, ORDER) {
                checks.push(Check::new(format!("rank {}: {}", b.rank(), c.name), c.pass));
            }
        }
    }
    checks
}

fn specialization(_: Option<Fault>) -> Vec<Check> {
    let mut checks = Vec::new();
    for n in 2..=4 {
        for parity in [Parity::Odd, Parity::Even] {
            checks.push(from_result(
                format!("relative SGr(2,T) rank {} specializes", parity.ambient(n)),
                relative_specializes(n, parity),
            ));
        }
    }
    checks
}

fn symmetric_functions(_: Option<Fault>) -> Vec<Check> {
    let mut checks = Vec::new();
    for v in 1..=4 {
        checks.push(Check::new(format!("generating function, {v} variables, order 12"), verify_generating_function(v, 12)));
    }
    let g_bad: Vec<String> = (1..=4)
        .flat_map(|m| (0..=8).map(move |i| (i, m)))
        .filter(|&(i, m)| !verify_g_substitution(i, m))
        .map(|(i, m)| format!("g_{i} m={m}"))
        .collect();
    checks.push(Check::new("g substitution, i <= 8, m <= 4", g_bad.is_empty()).detail_if(!g_bad.is_empty(), || g_bad.join(", ")));
    let split_bad: Vec<String> = (1..=4)
        .flat_map(|l| (0..=8).map(move |k| (k, l)))
        .filter(|&(k, l)| !verify_h_split(k, l))
        .map(|(k, l)| format!("k={k} l={l}"))
        .collect();
    checks.push(Check::new("h split recurrence", split_bad.is_empty()).detail_if(!split_bad.is_empty(), || split_bad.join(", ")));
    let peel_bad: Vec<String> = (1..=4)
        .flat_map(|n| (1..=8).map(move |i| (i, n)))
        .filter(|&(i, n)| !verify_h_peel(i, n))
        .map(|(i, n)| format!("i={i} n={n}"))
        .collect();
    checks.push(Check::new("h peel recurrence", peel_bad.is_empty()).detail_if(!peel_bad.is_empty(), || peel_bad.join(", ")));
    checks
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn filter_tokens() {
        assert!(matches_filter(5, "partial-flag-generators", Some("flag")));
        assert!(matches_filter(5, "partial-flag-generators", Some("5")));
        assert!(!matches_filter(4, "spanning", Some("flag")));
        assert!(matches_filter(4, "spanning", Some("flag,span")));
        assert!(matches_filter(4, "spanning", None));
    }

    #[test]
    fn fault_breaks_only_first_criterion() {
        let r = run(Some("1"), Some(Fault::CorruptGenerator));
        assert_eq!(r.criteria.len(), 1);
        assert!(!r.pass);
        assert!(r.criteria[0].failing().any(|c| c.name.contains("SGr(2,5)")));
    }
}
