//! Generators-and-relations presentations of special linear Grassmannians,
//! flag varieties and `BSL_N`, with declared bases and verification.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use serde::Serialize;
use thiserror::Error;

use crate::charclass::{Convention, SplitBundle};
use crate::groebner::{ideal_equal, rank, Budget, GroebnerBasis, GroebnerError, Ideal, MonomialOrder};
use crate::polyring::{Monomial, PolyError, Ring, RingSpec, Substitution, ZPoly};
use crate::report::Check;
use crate::series::TruncatedSeries;
use crate::spanning;
use crate::symfunc::{complete_of, g_substituted};
use crate::weyl::{group_order, invariant_generators, GroupTag};

#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum PresentationError {
    #[error("parameter out of range: {0}")]
    OutOfRange(String),
    #[error("degenerate parameters: {0}")]
    Degenerate(String),
    #[error("no declared basis for {0}")]
    NoDeclaredBasis(String),
    #[error(transparent)]
    Groebner(#[from] GroebnerError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

impl PresentationError {
    pub fn is_budget(&self) -> bool {
        matches!(self, PresentationError::Groebner(GroebnerError::BudgetExceeded { .. }))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    Even,
    Odd,
}

impl Parity {
    /// `2n` or `2n+1`.
    pub fn ambient(self, n: usize) -> usize {
        match self {
            Parity::Even => 2 * n,
            Parity::Odd => 2 * n + 1,
        }
    }

    pub fn of(k: usize) -> Parity {
        if k.is_multiple_of(2) {
            Parity::Even
        } else {
            Parity::Odd
        }
    }
}

impl fmt::Display for Parity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Parity::Even => "even",
            Parity::Odd => "odd",
        })
    }
}

impl FromStr for Parity {
    type Err = PresentationError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "even" => Ok(Parity::Even),
            "odd" => Ok(Parity::Odd),
            _ => Err(PresentationError::OutOfRange(format!("parity {s:?}, expected even or odd"))),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum VarietyDescriptor {
    /// `SGr(k, N)`; only used for rank bookkeeping and dispatch.
    Sgr {
        k: usize,
        ambient: usize,
    },
    Sgr2 {
        n: usize,
        parity: Parity,
    },
    Sgr2Relative {
        n: usize,
        parity: Parity,
    },
    PartialFlag {
        m: usize,
        n: usize,
        parity: Parity,
    },
    PartialFlagAlt {
        m: usize,
        n: usize,
        parity: Parity,
    },
    MaxFlag {
        ambient: usize,
    },
    SgrEven {
        m: usize,
        n: usize,
        parity: Parity,
    },
    Bsl {
        ambient: usize,
    },
}

impl fmt::Display for VarietyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let flag = |f: &mut fmt::Formatter<'_>, m: usize, k: usize| {
            let steps: Vec<String> = (1..=m).map(|i| (2 * i).to_string()).collect();
            write!(f, "SF({},{k})", steps.join(","))
        };
        match *self {
            VarietyDescriptor::Sgr { k, ambient } => write!(f, "SGr({k},{ambient})"),
            VarietyDescriptor::Sgr2 { n, parity } => write!(f, "SGr(2,{})", parity.ambient(n)),
            VarietyDescriptor::Sgr2Relative { n, parity } => write!(f, "SGr(2,T), rank T = {}", parity.ambient(n)),
            VarietyDescriptor::PartialFlag { m, n, parity } => flag(f, m, parity.ambient(n)),
            VarietyDescriptor::PartialFlagAlt { m, n, parity } => {
                flag(f, m, parity.ambient(n))?;
                f.write_str(" (h-generators)")
            }
            VarietyDescriptor::MaxFlag { ambient } => write!(f, "SF({ambient})"),
            VarietyDescriptor::SgrEven { m, n, parity } => write!(f, "SGr({},{})", 2 * m, parity.ambient(n)),
            VarietyDescriptor::Bsl { ambient } => write!(f, "BSL_{ambient}"),
        }
    }
}

fn binomial(n: usize, k: usize) -> u64 {
    (0..k).fold(1u64, |acc, j| acc * (n - j) as u64 / (j + 1) as u64)
}

fn flag_rank(m: usize, k: usize) -> u64 {
    (1..=m).map(|i| if 2 * i == k { 1 } else { (k + 1 + (k + 1) % 2 - 2 * i) as u64 }).product()
}

/// Declared free-module rank.
pub fn rank_table(desc: &VarietyDescriptor) -> Result<u64, PresentationError> {
    use VarietyDescriptor as V;
    match *desc {
        V::Sgr { k, ambient } => {
            if k == 0 || k > ambient {
                return Err(PresentationError::OutOfRange(format!("need 1 <= k <= N, got k={k}, N={ambient}")));
            }
            if k == 1 && ambient % 2 == 1 {
                return Ok(2);
            }
            if k % 2 == 1 || k == ambient {
                return Err(PresentationError::NoDeclaredBasis(desc.to_string()));
            }
            Ok(2 * binomial(ambient / 2, k / 2))
        }
        V::Sgr2 { n, .. } | V::Sgr2Relative { n, .. } => Ok(2 * n as u64),
        V::PartialFlag { m, n, parity } | V::PartialFlagAlt { m, n, parity } => Ok(flag_rank(m, parity.ambient(n))),
        V::MaxFlag { ambient } => Ok(flag_rank(ambient / 2 - usize::from(ambient % 2 == 0), ambient)),
        V::SgrEven { m, n, .. } => Ok(2 * binomial(n, m)),
        V::Bsl { .. } => Ok(1),
    }
}

/// Images of the presentation variables under a splitting, and the ideal
/// they must land in.
#[derive(Clone, Debug)]
pub struct SplittingModel {
    pub target: Ring,
    pub images: Vec<ZPoly>,
    pub kernel: Ideal,
}

#[derive(Clone, Debug)]
pub struct Presentation {
    pub descriptor: VarietyDescriptor,
    pub ring: Ring,
    pub ideal: Ideal,
    pub declared_basis: Vec<Monomial>,
    /// Ring variables generating the coefficient subring.
    pub coefficient_vars: Vec<usize>,
    pub convention: Option<Convention>,
    pub splitting: Option<SplittingModel>,
}

impl Presentation {
    pub fn generators(&self) -> &[ZPoly] {
        self.ideal.generators()
    }

    pub fn basis_text(&self) -> Vec<String> {
        self.declared_basis.iter().map(|m| m.display(&self.ring).to_string()).collect()
    }

    pub fn coefficient_degrees(&self) -> Vec<u32> {
        self.coefficient_vars.iter().map(|&i| self.ring.degree(i)).collect()
    }

    /// Ring without the coefficient variables, ideal with them set to zero.
    pub fn specialize(&self) -> Result<(Ring, Ideal), PresentationError> {
        let keep: Vec<(String, u32)> = (0..self.ring.len())
            .filter(|i| !self.coefficient_vars.contains(i))
            .map(|i| (self.ring.name(i).to_string(), self.ring.degree(i)))
            .collect();
        let target = RingSpec::new(keep)?;
        let subst = self
            .coefficient_vars
            .iter()
            .fold(Substitution::new(&self.ring, &target), |s, &i| s.set_index(i, ZPoly::zero(&target)))
            .rest_by_name()?;
        let gens = self.generators().iter().map(|g| g.substitute(&subst)).collect::<Result<Vec<_>, _>>()?;
        Ok((target.clone(), Ideal::new(&target, gens)?))
    }
}

fn vars(ring: &Ring) -> Vec<ZPoly> {
    (0..ring.len()).map(|i| ZPoly::var(ring, i)).collect()
}

fn product(ring: &Ring, xs: &[ZPoly]) -> ZPoly {
    xs.iter().fold(ZPoly::one(ring), |a, x| &a * x)
}

fn signed(p: ZPoly, exponent: usize) -> ZPoly {
    if exponent.is_multiple_of(2) {
        p
    } else {
        -p
    }
}

fn monomial(ring: &Ring, exps: Vec<u32>) -> Monomial {
    Monomial::new(exps, ring).expect("small exponents")
}

fn sorted_unique(mut basis: Vec<Monomial>) -> Vec<Monomial> {
    basis.sort();
    basis.dedup();
    basis
}

/// Splitting into `n` rank-2 symbols, landing in the B or D coinvariants.
fn coinvariant_target(n: usize, parity: Parity) -> (Ring, Ideal) {
    let tag = match parity {
        Parity::Even => GroupTag::D,
        Parity::Odd => GroupTag::B,
    };
    let inv = invariant_generators(tag, n).expect("n >= 1");
    (inv.ring.clone(), inv.ideal())
}

/// `b_i ↦ (-1)^i b_i` for the named variables.
fn flip_borel(gens: Vec<ZPoly>, ring: &Ring, names: &[String]) -> Result<Vec<ZPoly>, PolyError> {
    let subst = names
        .iter()
        .enumerate()
        .try_fold(Substitution::new(ring, ring), |s, (i, name)| s.set(name, signed(ZPoly::named(ring, name), i + 1)))?
        .rest_by_name()?;
    gens.iter().map(|g| g.substitute(&subst)).collect()
}

/// `(e1e2, e1^{2n-2} + (-1)^n e2^2)` or `(e1^{2n})`.
pub fn present_sgr2(n: usize, parity: Parity) -> Result<Presentation, PresentationError> {
    if n < 2 {
        return Err(PresentationError::OutOfRange(format!("SGr(2, k) needs n >= 2, got {n}")));
    }
    let (ring, gens, basis) = match parity {
        Parity::Odd => {
            let ring = RingSpec::new([("e1", 2)])?;
            let e1 = ZPoly::var(&ring, 0);
            let basis = (0..2 * n as u32).map(|k| monomial(&ring, vec![k])).collect();
            (ring, vec![e1.pow(2 * n as u32)], basis)
        }
        Parity::Even => {
            let ring = RingSpec::new([("e1", 2), ("e2", 2 * n as u32 - 2)])?;
            let (e1, e2) = (ZPoly::var(&ring, 0), ZPoly::var(&ring, 1));
            let gens = vec![&e1 * &e2, &e1.pow(2 * n as u32 - 2) + &signed(e2.pow(2), n)];
            let mut basis: Vec<Monomial> = (0..=2 * n as u32 - 2).map(|k| monomial(&ring, vec![k, 0])).collect();
            basis.push(monomial(&ring, vec![0, 1]));
            (ring, gens, basis)
        }
    };
    let (target, kernel) = coinvariant_target(n, parity);
    let f = vars(&target);
    let images = match parity {
        Parity::Odd => vec![f[0].clone()],
        Parity::Even => vec![f[0].clone(), product(&target, &f[1..])],
    };
    Ok(Presentation {
        descriptor: VarietyDescriptor::Sgr2 { n, parity },
        ideal: Ideal::new(&ring, gens)?,
        declared_basis: sorted_unique(basis),
        coefficient_vars: Vec::new(),
        convention: None,
        splitting: Some(SplittingModel { target, images, kernel }),
        ring,
    })
}

/// Relative Grassmannian of planes in a bundle `T` with Borel classes written
/// in the `ε = -1` convention.
pub fn present_sgr2_relative(n: usize, parity: Parity) -> Result<Presentation, PresentationError> {
    present_sgr2_relative_with(n, parity, Convention::Minus)
}

pub fn present_sgr2_relative_with(n: usize, parity: Parity, eps: Convention) -> Result<Presentation, PresentationError> {
    let min = match parity {
        Parity::Even => 2,
        Parity::Odd => 1,
    };
    if n < min {
        return Err(PresentationError::OutOfRange(format!("relative SGr(2, T) with {parity} rank needs n >= {min}, got {n}")));
    }
    let nb = match parity {
        Parity::Even => n - 1,
        Parity::Odd => n,
    };
    let mut spec: Vec<(String, u32)> = vec![("e1".into(), 2)];
    if parity == Parity::Even {
        spec.push(("e2".into(), 2 * n as u32 - 2));
    }
    let b_names: Vec<String> = (1..=nb).map(|i| format!("b{i}")).collect();
    spec.extend(b_names.iter().enumerate().map(|(i, b)| (b.clone(), 4 * (i as u32 + 1))));
    if parity == Parity::Even {
        spec.push(("e".into(), 2 * n as u32));
    }
    let ring = RingSpec::new(spec)?;
    let e1 = ZPoly::named(&ring, "e1");
    let b = |i: usize| if i == 0 { ZPoly::one(&ring) } else { ZPoly::named(&ring, &format!("b{i}")) };

    let mut gens = match parity {
        Parity::Even => {
            let e2 = ZPoly::named(&ring, "e2");
            let sum = (0..n).fold(ZPoly::zero(&ring), |acc, i| &acc + &(&b(n - i - 1) * &e1.pow(2 * i as u32)));
            vec![&(&e1 * &e2) - &ZPoly::named(&ring, "e"), &signed(e2.pow(2), n) + &sum]
        }
        Parity::Odd => vec![(0..=n).fold(ZPoly::zero(&ring), |acc, i| &acc + &(&b(n - i) * &e1.pow(2 * i as u32)))],
    };
    if eps == Convention::Plus {
        gens = flip_borel(gens, &ring, &b_names)?;
    }

    let mut basis: Vec<Monomial> = Vec::new();
    let width = ring.len();
    let power = |k: u32| {
        let mut e = vec![0; width];
        e[0] = k;
        monomial(&ring, e)
    };
    match parity {
        Parity::Odd => basis.extend((0..2 * n as u32).map(power)),
        Parity::Even => {
            basis.extend((0..=2 * n as u32 - 2).map(power));
            let mut e = vec![0; width];
            e[1] = 1;
            basis.push(monomial(&ring, e));
        }
    }

    let bundle = SplitBundle::standard(n, parity == Parity::Odd);
    let target = bundle.ring().clone();
    let f = vars(&target);
    let borel = bundle.total_borel(nb, eps);
    let mut images = vec![f[0].clone()];
    if parity == Parity::Even {
        images.push(product(&target, &f[1..]));
    }
    images.extend((1..=nb).map(|i| borel.coefficient(i).clone()));
    if parity == Parity::Even {
        images.push(bundle.euler());
    }
    let coefficient_vars = (0..width).filter(|&i| !ring.name(i).starts_with("e1") && ring.name(i) != "e2").collect();

    Ok(Presentation {
        descriptor: VarietyDescriptor::Sgr2Relative { n, parity },
        ideal: Ideal::new(&ring, gens)?,
        declared_basis: sorted_unique(basis),
        coefficient_vars,
        convention: Some(eps),
        splitting: Some(SplittingModel { kernel: Ideal::zero(&target), target, images }),
        ring,
    })
}

/// Ring `e1..em` plus `em'` for even ambient rank with `m < n`.
fn flag_ring(m: usize, n: usize, parity: Parity) -> Result<(Ring, bool), PresentationError> {
    if m == 0 || m > n {
        return Err(PresentationError::OutOfRange(format!("flags need 1 <= m <= n, got m={m}, n={n}")));
    }
    let mut spec: Vec<(String, u32)> = (1..=m).map(|i| (format!("e{i}"), 2)).collect();
    let has_prime = parity == Parity::Even && m < n;
    if has_prime {
        spec.push((format!("e{m}'"), 2 * (n - m) as u32));
    }
    Ok((RingSpec::new(spec)?, has_prime))
}

/// Basis `u_1⋯u_m` with `u_i ∈ {e_i^0..e_i^{k-2i}}`, plus `e_{i+1}⋯e_m e_m'` for even `k`.
fn flag_basis(ring: &Ring, m: usize, k: usize, has_prime: bool) -> Vec<Monomial> {
    let width = ring.len();
    let mut exps: Vec<Vec<u32>> = vec![vec![0; width]];
    for i in 1..=m {
        let mut choices: Vec<Vec<u32>> = (0..=(k - 2 * i) as u32)
            .map(|p| {
                let mut u = vec![0; width];
                u[i - 1] = p;
                u
            })
            .collect();
        if k.is_multiple_of(2) {
            let mut u = vec![0; width];
            for x in u.iter_mut().take(m).skip(i) {
                *x = 1;
            }
            if has_prime {
                u[m] = 1;
            }
            choices.push(u);
        }
        exps = exps.iter().flat_map(|e| choices.iter().map(move |u| e.iter().zip(u).map(|(a, b)| a + b).collect())).collect();
    }
    sorted_unique(exps.into_iter().map(|e| monomial(ring, e)).collect())
}

fn flag_splitting(ring: &Ring, m: usize, n: usize, parity: Parity, has_prime: bool) -> SplittingModel {
    let (target, kernel) = coinvariant_target(n, parity);
    let f = vars(&target);
    let mut images: Vec<ZPoly> = f[..m].to_vec();
    if has_prime {
        images.push(product(&target, &f[m..]));
    }
    debug_assert_eq!(images.len(), ring.len());
    SplittingModel { target, images, kernel }
}

fn flag_presentation(
    descriptor: VarietyDescriptor,
    m: usize,
    n: usize,
    parity: Parity,
    build: impl Fn(&Ring, &[ZPoly], &ZPoly) -> Vec<ZPoly>,
) -> Result<Presentation, PresentationError> {
    let (ring, has_prime) = flag_ring(m, n, parity)?;
    let e = vars(&ring);
    let prime = if has_prime { e[m].clone() } else { ZPoly::one(&ring) };
    let squares: Vec<ZPoly> = e[..m].iter().map(|x| x.pow(2)).collect();
    let gens = build(&ring, &squares, &prime);
    Ok(Presentation {
        declared_basis: flag_basis(&ring, m, parity.ambient(n), has_prime),
        splitting: Some(flag_splitting(&ring, m, n, parity, has_prime)),
        ideal: Ideal::new(&ring, gens)?,
        descriptor,
        coefficient_vars: Vec::new(),
        convention: None,
        ring,
    })
}

/// `I_{2m,k}` with Euler-product generators.
pub fn present_partial_flag(m: usize, n: usize, parity: Parity) -> Result<Presentation, PresentationError> {
    flag_presentation(VarietyDescriptor::PartialFlag { m, n, parity }, m, n, parity, |ring, sq, prime| match parity {
        Parity::Odd => (1..=m).map(|j| complete_of(n - j + 1, &sq[..j], ring)).collect(),
        Parity::Even => {
            let e: Vec<ZPoly> = vars(ring);
            let mut gens = vec![&product(ring, &e[..m]) * prime];
            for j in 1..=m {
                let euler_sq = &product(ring, &sq[j..]) * &prime.pow(2);
                gens.push(&signed(euler_sq, n - j + 1) + &complete_of(n - j, &sq[..j], ring));
            }
            gens
        }
    })
}

/// `I_{2m,k}` with complete-symmetric generators.
pub fn present_partial_flag_alt(m: usize, n: usize, parity: Parity) -> Result<Presentation, PresentationError> {
    flag_presentation(VarietyDescriptor::PartialFlagAlt { m, n, parity }, m, n, parity, |ring, sq, prime| match parity {
        Parity::Odd => (n - m + 1..=n).map(|i| complete_of(i, sq, ring)).collect(),
        Parity::Even => {
            let e: Vec<ZPoly> = vars(ring);
            let mut gens =
                vec![&product(ring, &e[..m]) * prime, &signed(prime.pow(2), n - m + 1) + &complete_of(n - m, sq, ring)];
            gens.extend((n - m + 1..n).map(|i| complete_of(i, sq, ring)));
            gens
        }
    })
}

/// Coinvariants `(s_1..s_{n-1}, t)` for `N = 2n`, `(s_1..s_n)` for `N = 2n+1`.
pub fn present_max_flag(ambient: usize) -> Result<Presentation, PresentationError> {
    if ambient < 2 {
        return Err(PresentationError::OutOfRange(format!("maximal flags need N >= 2, got {ambient}")));
    }
    let n = ambient / 2;
    let parity = Parity::of(ambient);
    let (ring, kernel) = coinvariant_target(n, parity);
    let tag = match parity {
        Parity::Even => GroupTag::D,
        Parity::Odd => GroupTag::B,
    };
    let basis = spanning::basis(tag, n).expect("n >= 1");
    Ok(Presentation {
        descriptor: VarietyDescriptor::MaxFlag { ambient },
        declared_basis: basis.monomials.clone(),
        splitting: Some(SplittingModel { target: ring.clone(), images: vars(&ring), kernel: kernel.clone() }),
        ideal: kernel,
        coefficient_vars: Vec::new(),
        convention: None,
        ring,
    })
}

/// `J_{2m,k}` in `b_1..b_m, e` (and `e'` for even `k`), Borel classes in the `ε = +1` convention.
pub fn present_sgr_even(m: usize, n: usize, parity: Parity) -> Result<Presentation, PresentationError> {
    present_sgr_even_with(m, n, parity, Convention::Plus)
}

pub fn present_sgr_even_with(m: usize, n: usize, parity: Parity, eps: Convention) -> Result<Presentation, PresentationError> {
    if m == 0 || m > n {
        return Err(PresentationError::OutOfRange(format!("SGr(2m, k) needs 1 <= m <= n, got m={m}, n={n}")));
    }
    if parity == Parity::Even && m == n {
        return Err(PresentationError::Degenerate(format!("SGr({0},{0}) would need e' in degree 0; use n >= m+1", 2 * m)));
    }
    let b_names: Vec<String> = (1..=m).map(|i| format!("b{i}")).collect();
    let mut spec: Vec<(String, u32)> = b_names.iter().enumerate().map(|(i, b)| (b.clone(), 4 * (i as u32 + 1))).collect();
    spec.push(("e".into(), 2 * m as u32));
    if parity == Parity::Even {
        spec.push(("e'".into(), 2 * (n - m) as u32));
    }
    let ring = RingSpec::new(spec)?;
    let b: Vec<ZPoly> = (0..m).map(|i| ZPoly::var(&ring, i)).collect();
    let e = ZPoly::named(&ring, "e");
    let g = |i: usize| g_substituted(i, &b, &ring);
    let mut gens = vec![&e.pow(2) - &b[m - 1]];
    match parity {
        Parity::Odd => gens.extend((n - m + 1..=n).map(g)),
        Parity::Even => {
            let ep = ZPoly::named(&ring, "e'");
            gens.insert(0, &e * &ep);
            gens.push(&signed(ep.pow(2), n - m + 1) + &g(n - m));
            gens.extend((n - m + 1..n).map(g));
        }
    }
    if eps == Convention::Minus {
        gens = flip_borel(gens, &ring, &b_names)?;
    }
    let ideal = Ideal::new(&ring, gens)?;

    let (target, kernel) = coinvariant_target(n, parity);
    let f = vars(&target);
    let inner = SplitBundle::standard(m, false);
    let borel = inner.total_borel(m, eps);
    let lift = Substitution::new(inner.ring(), &target);
    let lift = (0..m).fold(lift, |s, i| s.set_index(i, f[i].clone()));
    let mut images: Vec<ZPoly> = (1..=m).map(|i| borel.coefficient(i).substitute(&lift).expect("all symbols mapped")).collect();
    images.push(product(&target, &f[..m]));
    if parity == Parity::Even {
        images.push(product(&target, &f[m..]));
    }

    let gb = GroebnerBasis::compute_with(&ideal, MonomialOrder::Grevlex, Budget::from_env(), false)?;
    let basis = gb.all_standard_monomials().ok_or_else(|| {
        PresentationError::NoDeclaredBasis(format!("J ideal for SGr({},{}) has infinite quotient", 2 * m, parity.ambient(n)))
    })?;

    Ok(Presentation {
        descriptor: VarietyDescriptor::SgrEven { m, n, parity },
        declared_basis: sorted_unique(basis),
        coefficient_vars: Vec::new(),
        convention: Some(eps),
        splitting: Some(SplittingModel { target, images, kernel }),
        ideal,
        ring,
    })
}

/// Truncated homogeneous power series ring of `BSL_N`.
pub fn present_bsl(ambient: usize) -> Result<Presentation, PresentationError> {
    if ambient < 2 {
        return Err(PresentationError::OutOfRange(format!("BSL_N needs N >= 2, got {ambient}")));
    }
    let n = ambient / 2;
    let mut spec: Vec<(String, u32)> = Vec::new();
    let nb = if ambient.is_multiple_of(2) { n - 1 } else { n };
    spec.extend((1..=nb).map(|i| (format!("b{i}"), 4 * i as u32)));
    if ambient.is_multiple_of(2) {
        spec.push(("e".into(), 2 * n as u32));
    }
    let ring = RingSpec::new(spec)?;
    Ok(Presentation {
        descriptor: VarietyDescriptor::Bsl { ambient },
        ideal: Ideal::zero(&ring),
        declared_basis: vec![Monomial::one(ring.len())],
        coefficient_vars: (0..ring.len()).collect(),
        convention: None,
        splitting: None,
        ring,
    })
}

/// Builds the presentation for a descriptor.
pub fn present(desc: &VarietyDescriptor) -> Result<Presentation, PresentationError> {
    use VarietyDescriptor as V;
    match *desc {
        V::Sgr { k, ambient } => {
            rank_table(desc)?;
            if k == 1 {
                return Err(PresentationError::NoDeclaredBasis(format!("{desc}: no relations in even classes")));
            }
            let n = ambient / 2;
            if k == 2 {
                present_sgr2(n, Parity::of(ambient))
            } else {
                present_sgr_even(k / 2, n, Parity::of(ambient))
            }
        }
        V::Sgr2 { n, parity } => present_sgr2(n, parity),
        V::Sgr2Relative { n, parity } => present_sgr2_relative(n, parity),
        V::PartialFlag { m, n, parity } => present_partial_flag(m, n, parity),
        V::PartialFlagAlt { m, n, parity } => present_partial_flag_alt(m, n, parity),
        V::MaxFlag { ambient } => present_max_flag(ambient),
        V::SgrEven { m, n, parity } => present_sgr_even(m, n, parity),
        V::Bsl { ambient } => present_bsl(ambient),
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct PresentationReport {
    pub descriptor: VarietyDescriptor,
    pub ring: String,
    pub generators: Vec<String>,
    pub basis: Vec<String>,
    pub hilbert: Vec<i128>,
    pub checks: Vec<Check>,
    pub rank: usize,
    pub pass: bool,
}

impl fmt::Display for PresentationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.descriptor)?;
        writeln!(f, "ring: {}", self.ring)?;
        writeln!(f, "generators: {}", self.generators.join(", "))?;
        writeln!(f, "basis ({}): {}", self.rank, self.basis.join(", "))?;
        let hilb = TruncatedSeries::from_coeffs(self.hilbert.clone(), self.hilbert.len().saturating_sub(1) as u32);
        writeln!(f, "hilbert: {hilb}")?;
        for c in &self.checks {
            write!(f, "  [{}] {}", if c.pass { "pass" } else { "FAIL" }, c.name)?;
            if let Some(d) = &c.detail {
                write!(f, " ({d})")?;
            }
            writeln!(f)?;
        }
        write!(f, "{}", if self.pass { "PASS" } else { "FAIL" })
    }
}

fn splitting_check(p: &Presentation, model: &SplittingModel, budget: Budget) -> Result<Check, GroebnerError> {
    let subst = model
        .images
        .iter()
        .enumerate()
        .fold(Substitution::new(&p.ring, &model.target), |s, (i, img)| s.set_index(i, img.clone()));
    let gb = GroebnerBasis::compute_with(&model.kernel, MonomialOrder::Grevlex, budget, false)?;
    let failing: Vec<String> = p
        .generators()
        .iter()
        .filter(|g| !gb.contains(&g.substitute(&subst).expect("every variable has an image")))
        .map(ToString::to_string)
        .collect();
    Ok(Check::new("relations hold in the splitting model", failing.is_empty())
        .detail_if(!failing.is_empty(), || failing.join("; ")))
}

/// Gröbner basis, Hilbert factorization, basis independence, fiber basis and splitting model.
pub fn verify_presentation(p: &Presentation, max_degree: u32) -> Result<PresentationReport, GroebnerError> {
    let budget = Budget::from_env();
    let gb = GroebnerBasis::compute_with(&p.ideal, MonomialOrder::Grevlex, budget, false)?;
    let mut checks = Vec::new();

    checks.push(Check::new("groebner basis", gb.satisfies_buchberger_criterion() && !gb.is_unit()));

    let mut distinct = p.declared_basis.clone();
    distinct.sort();
    distinct.dedup();
    checks.push(Check::new("declared basis distinct", distinct.len() == p.declared_basis.len()));

    let declared = rank_table(&p.descriptor).ok();
    checks.push(Check::new("declared rank", declared == Some(p.declared_basis.len() as u64)).with_detail(format!(
        "{} basis elements, rank table {}",
        p.declared_basis.len(),
        declared.map_or("none".into(), |r| r.to_string())
    )));

    let hilbert = gb.quotient_hilbert(max_degree);
    let expected = TruncatedSeries::polynomial_ring(p.coefficient_degrees(), max_degree)
        .mul(&TruncatedSeries::from_degrees(p.declared_basis.iter().map(Monomial::degree), max_degree));
    let mismatch = hilbert.first_difference(&expected);
    let mut hilbert_check = Check::new("hilbert factorization", mismatch.is_none());
    if let Some(d) = mismatch {
        hilbert_check = hilbert_check.with_detail(format!("first mismatch in degree {d}"));
    }
    checks.push(hilbert_check);

    let nfs: Vec<_> =
        p.declared_basis.iter().map(|m| gb.normal_form(&ZPoly::monomial(&p.ring, m.clone(), BigInt::from(1)))).collect();
    checks.push(Check::new("basis independent in quotient", rank(&nfs) == nfs.len()));

    let fiber = p.ideal.extended(p.coefficient_vars.iter().map(|&i| ZPoly::var(&p.ring, i)))?;
    let fgb = GroebnerBasis::compute_with(&fiber, MonomialOrder::Grevlex, budget, false)?;
    let fnfs: Vec<_> =
        p.declared_basis.iter().map(|m| fgb.normal_form(&ZPoly::monomial(&p.ring, m.clone(), BigInt::from(1)))).collect();
    let fdim = fgb.quotient_dimension();
    checks.push(
        Check::new("fiber basis", fdim == Some(p.declared_basis.len() as u64) && rank(&fnfs) == fnfs.len())
            .with_detail(format!("fiber dimension {}", fdim.map_or("infinite".into(), |d| d.to_string()))),
    );

    if let Some(model) = &p.splitting {
        checks.push(splitting_check(p, model, budget)?);
    }

    let pass = checks.iter().all(|c| c.pass);
    Ok(PresentationReport {
        descriptor: p.descriptor.clone(),
        ring: p.ring.to_string(),
        generators: p.generators().iter().map(ToString::to_string).collect(),
        basis: p.basis_text(),
        hilbert: hilbert.coeffs().to_vec(),
        checks,
        rank: p.declared_basis.len(),
        pass,
    })
}

/// The two generating sets of `I_{2m,k}` define the same ideal.
pub fn partial_flag_sets_agree(m: usize, n: usize, parity: Parity) -> Result<bool, PresentationError> {
    let a = present_partial_flag(m, n, parity)?;
    let b = present_partial_flag_alt(m, n, parity)?;
    Ok(ideal_equal(&a.ideal, &b.ideal, Budget::from_env())?)
}

/// `J_{2,k}` with `b_1 ↦ e^2`, `e ↦ e1`, `e' ↦ e2` equals the `SGr(2,k)` ideal.
pub fn sgr_even_collapses(n: usize, parity: Parity) -> Result<bool, PresentationError> {
    let j = present_sgr_even(1, n, parity)?;
    let s = present_sgr2(n, parity)?;
    let e1 = ZPoly::named(&s.ring, "e1");
    let mut subst = Substitution::new(&j.ring, &s.ring).set("b1", e1.pow(2))?.set("e", e1)?;
    if parity == Parity::Even {
        subst = subst.set("e'", ZPoly::named(&s.ring, "e2"))?;
    }
    let b1_eliminated =
        j.ideal.generators().iter().any(|g| *g == &ZPoly::named(&j.ring, "e").pow(2) - &ZPoly::named(&j.ring, "b1"));
    let image = j.generators().iter().map(|g| g.substitute(&subst)).collect::<Result<Vec<_>, _>>()?;
    Ok(b1_eliminated && ideal_equal(&Ideal::new(&s.ring, image)?, &s.ideal, Budget::from_env())?)
}

/// Setting the Borel and base Euler classes to zero recovers `SGr(2,k)`, ideal and basis.
pub fn relative_specializes(n: usize, parity: Parity) -> Result<bool, PresentationError> {
    let rel = present_sgr2_relative(n, parity)?;
    let abs = present_sgr2(n, parity)?;
    let (ring, ideal) = rel.specialize()?;
    let basis_ok = rel.basis_text() == abs.basis_text();
    Ok(basis_ok && ring.to_string() == abs.ring.to_string() && ideal_equal(&ideal, &abs.ideal, Budget::from_env())?)
}

/// `|W(B_n)|` or `|W(D_n)|` for the maximal flag `SF(N)`.
pub fn max_flag_group_order(ambient: usize) -> u64 {
    let tag = if ambient.is_multiple_of(2) { GroupTag::D } else { GroupTag::B };
    group_order(tag, ambient / 2)
}
