//! Elementary and complete homogeneous symmetric polynomials, and the
//! polynomials `g_i` expressing `h_i` through `σ_1..σ_m`.

use std::collections::HashMap;
use std::sync::{LazyLock, RwLock};

use num_bigint::BigInt;

use crate::polyring::{PolyError, Ring, RingSpec, Substitution, ZPoly};

/// `σ_i(xs)`, summing products over all `i`-subsets of `xs`.
pub fn elementary_of(i: usize, xs: &[ZPoly], ring: &Ring) -> ZPoly {
    fn rec(xs: &[ZPoly], need: usize, acc: &ZPoly, out: &mut ZPoly) {
        if need == 0 {
            *out = &*out + acc;
            return;
        }
        if xs.len() < need {
            return;
        }
        rec(&xs[1..], need - 1, &(acc * &xs[0]), out);
        rec(&xs[1..], need, acc, out);
    }
    let mut out = ZPoly::zero(ring);
    rec(xs, i, &ZPoly::one(ring), &mut out);
    out
}

/// `h_i(xs)`, summing all monomials of total degree `i` in the entries of `xs`.
pub fn complete_of(i: usize, xs: &[ZPoly], ring: &Ring) -> ZPoly {
    fn rec(xs: &[ZPoly], left: usize, acc: ZPoly, out: &mut ZPoly) {
        let Some((x, rest)) = xs.split_first() else {
            if left == 0 {
                *out = &*out + &acc;
            }
            return;
        };
        if rest.is_empty() {
            *out = &*out + &(&acc * &x.pow(left as u32));
            return;
        }
        let mut term = acc;
        for k in 0..=left {
            if k > 0 {
                term = &term * x;
            }
            rec(rest, left - k, term.clone(), out);
        }
    }
    if xs.is_empty() {
        return if i == 0 { ZPoly::one(ring) } else { ZPoly::zero(ring) };
    }
    let mut out = ZPoly::zero(ring);
    rec(xs, i, ZPoly::one(ring), &mut out);
    out
}

fn vars_of(ring: &Ring, names: &[&str]) -> Result<Vec<ZPoly>, PolyError> {
    names
        .iter()
        .map(|n| {
            ring.index_of(n)
                .map(|i| ZPoly::var(ring, i))
                .ok_or_else(|| PolyError::UnknownVariable { name: n.to_string(), offset: None })
        })
        .collect()
}

/// `σ_i` in the named variables of `ring`.
pub fn elementary(i: usize, ring: &Ring, vars: &[&str]) -> Result<ZPoly, PolyError> {
    Ok(elementary_of(i, &vars_of(ring, vars)?, ring))
}

/// `h_i` in the named variables of `ring`.
pub fn complete(i: usize, ring: &Ring, vars: &[&str]) -> Result<ZPoly, PolyError> {
    Ok(complete_of(i, &vars_of(ring, vars)?, ring))
}

/// Ring `sigma1..sigmam` with `deg sigma_j = j`.
pub fn sigma_ring(m: usize) -> Ring {
    RingSpec::new((1..=m).map(|j| (format!("sigma{j}"), j as u32))).expect("valid names")
}

static G_CACHE: LazyLock<RwLock<HashMap<(usize, usize), ZPoly>>> = LazyLock::new(Default::default);

/// `g_i(σ_1..σ_m)` with `h_i(x_1..x_m) = g_i(σ_1(x)..σ_m(x))`, by the recurrence
/// `h_i = Σ_{j=1}^{min(i,m)} (-1)^{j-1} σ_j h_{i-j}`.
///
/// # Panics
/// If `m == 0`.
pub fn g_poly(i: usize, m: usize) -> ZPoly {
    assert!(m >= 1, "g_poly needs at least one variable");
    if let Some(g) = G_CACHE.read().expect("cache lock").get(&(i, m)) {
        return g.clone();
    }
    let ring = sigma_ring(m);
    let mut h: Vec<ZPoly> = vec![ZPoly::one(&ring)];
    for k in 1..=i {
        if let Some(g) = G_CACHE.read().expect("cache lock").get(&(k, m)) {
            h.push(g.clone());
            continue;
        }
        let mut acc = ZPoly::zero(&ring);
        for j in 1..=k.min(m) {
            let term = &ZPoly::var(&ring, j - 1) * &h[k - j];
            acc = if j % 2 == 1 { &acc + &term } else { &acc - &term };
        }
        h.push(acc);
    }
    let mut cache = G_CACHE.write().expect("cache lock");
    for (k, g) in h.iter().enumerate() {
        cache.entry((k, m)).or_insert_with(|| g.clone());
    }
    h.swap_remove(i)
}

/// `g_poly(i, m)` with `σ_j` sent to `images[j-1]`.
pub fn g_substituted(i: usize, images: &[ZPoly], target: &Ring) -> ZPoly {
    let m = images.len();
    if m == 0 {
        return if i == 0 { ZPoly::one(target) } else { ZPoly::zero(target) };
    }
    let g = g_poly(i, m);
    let subst = images.iter().enumerate().fold(Substitution::new(g.ring(), target), |s, (j, img)| s.set_index(j, img.clone()));
    g.substitute(&subst).expect("every sigma is mapped")
}

fn x_ring(n: usize) -> (Ring, Vec<ZPoly>) {
    let ring = RingSpec::indexed("x", n, 1).expect("valid names");
    let xs = (0..n).map(|i| ZPoly::var(&ring, i)).collect();
    (ring, xs)
}

/// `h_k(x_1..x_l) == Σ_{i=0}^{k} h_i(x_1..x_{l-1}) x_l^{k-i}`.
pub fn verify_h_split(k: usize, l: usize) -> bool {
    assert!(l >= 1);
    let (ring, xs) = x_ring(l);
    let lhs = complete_of(k, &xs, &ring);
    let rhs = (0..=k)
        .fold(ZPoly::zero(&ring), |acc, i| &acc + &(&complete_of(i, &xs[..l - 1], &ring) * &xs[l - 1].pow((k - i) as u32)));
    lhs == rhs
}

/// `h_i(x_1..x_n) == h_i(x_1..x_{n-1}) + x_n h_{i-1}(x_1..x_n)`.
pub fn verify_h_peel(i: usize, n: usize) -> bool {
    assert!(i >= 1 && n >= 1);
    let (ring, xs) = x_ring(n);
    let lhs = complete_of(i, &xs, &ring);
    let rhs = &complete_of(i, &xs[..n - 1], &ring) + &(&xs[n - 1] * &complete_of(i - 1, &xs, &ring));
    lhs == rhs
}

/// `Π_j (1 - x_j u) · Σ_{i≤N} h_i(x) u^i ≡ 1` modulo `u^{N+1}`.
pub fn verify_generating_function(nvars: usize, order: usize) -> bool {
    let ring = RingSpec::new((1..=nvars).map(|j| (format!("x{j}"), 1)).chain([("u".to_string(), 1)])).expect("valid names");
    let u = ZPoly::var(&ring, nvars);
    let xs: Vec<ZPoly> = (0..nvars).map(|i| ZPoly::var(&ring, i)).collect();
    let prod = xs.iter().fold(ZPoly::one(&ring), |acc, x| &acc * &(&ZPoly::one(&ring) - &(x * &u)));
    let series = (0..=order).fold(ZPoly::zero(&ring), |acc, i| &acc + &(&complete_of(i, &xs, &ring) * &u.pow(i as u32)));
    let product = &prod * &series;
    let truncated =
        ZPoly::from_terms(&ring, product.terms().iter().filter(|(m, _)| m.exponent(nvars) as usize <= order).cloned());
    truncated == ZPoly::one(&ring)
}

/// `g_poly(i, m)(σ_j(x)) == h_i(x)` in `m` variables.
pub fn verify_g_substitution(i: usize, m: usize) -> bool {
    let (ring, xs) = x_ring(m);
    let sigmas: Vec<ZPoly> = (1..=m).map(|j| elementary_of(j, &xs, &ring)).collect();
    g_substituted(i, &sigmas, &ring) == complete_of(i, &xs, &ring)
}

/// Number of monomials of degree `i` in `k` variables.
pub fn complete_term_count(i: usize, k: usize) -> BigInt {
    if k == 0 {
        return BigInt::from(u8::from(i == 0));
    }
    let (n, r) = (i + k - 1, k - 1);
    (0..r).fold(BigInt::from(1), |acc, j| acc * BigInt::from(n - j) / BigInt::from(j + 1))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn p(s: &str, r: &Ring) -> ZPoly {
        ZPoly::parse(s, r).unwrap()
    }

    #[test]
    fn elementary_examples() {
        let r = RingSpec::indexed("x", 3, 1).unwrap();
        assert_eq!(elementary(1, &r, &["x1", "x2"]).unwrap(), p("x1 + x2", &r));
        assert!(elementary(3, &r, &["x1", "x2"]).unwrap().is_zero());
        assert_eq!(elementary(2, &r, &["x1", "x2", "x3"]).unwrap(), p("x1*x2 + x1*x3 + x2*x3", &r));
        assert_eq!(elementary(0, &r, &[]).unwrap(), ZPoly::one(&r));
        assert!(elementary(1, &r, &["y"]).is_err());
    }

    #[test]
    fn complete_examples() {
        let r = RingSpec::indexed("x", 2, 1).unwrap();
        assert_eq!(complete(0, &r, &["x1", "x2"]).unwrap(), ZPoly::one(&r));
        assert_eq!(complete(2, &r, &["x1", "x2"]).unwrap(), p("x1^2 + x1*x2 + x2^2", &r));
        assert_eq!(complete(5, &r, &["x1"]).unwrap(), p("x1^5", &r));
        assert!(complete(3, &r, &[]).unwrap().is_zero());
    }

    #[test]
    fn g_examples() {
        let s2 = sigma_ring(2);
        assert_eq!(g_poly(1, 3), ZPoly::var(&sigma_ring(3), 0));
        assert_eq!(g_poly(2, 2), p("sigma1^2 - sigma2", &s2));
        assert_eq!(g_poly(5, 1), p("sigma1^5", &sigma_ring(1)));
        assert!(g_poly(0, 2).is_one());
        assert_eq!(g_poly(3, 2), p("sigma1^3 - 2*sigma1*sigma2", &s2));
    }

    #[test]
    fn identities_small_cases() {
        assert!(verify_h_split(0, 3));
        assert!(verify_h_split(2, 2));
        assert!(verify_h_split(4, 3));
        assert!(verify_h_peel(1, 2));
        assert!(verify_h_peel(2, 2));
        assert!(verify_h_peel(3, 3));
        assert!(verify_generating_function(3, 6));
        assert!(verify_g_substitution(4, 3));
    }

    #[test]
    fn g_substitution_table() {
        for m in 1..=4 {
            for i in 0..=8 {
                assert!(verify_g_substitution(i, m), "i={i} m={m}");
            }
        }
    }

    #[test]
    fn term_counts() {
        let r = RingSpec::indexed("x", 3, 1).unwrap();
        let xs: Vec<ZPoly> = (0..3).map(|i| ZPoly::var(&r, i)).collect();
        for i in 0..6 {
            let h = complete_of(i, &xs, &r);
            assert_eq!(BigInt::from(h.len()), complete_term_count(i, 3));
            assert!(h.terms().iter().all(|(_, c)| c.is_one()));
        }
    }
}
