#![allow(dead_code)]

use num_bigint::BigInt;
use slcc_core::groebner::rank;
use slcc_core::polyring::{Monomial, Ring, ZPoly};

/// Value of `p` at an integer point, computed term by term.
pub fn eval(p: &ZPoly, point: &[i64]) -> BigInt {
    p.terms()
        .iter()
        .map(|(m, c)| m.exponents().iter().zip(point).fold(c.clone(), |acc, (&k, &x)| acc * BigInt::from(x).pow(k)))
        .sum()
}

/// Hilbert function of `ring / (gens)` in degrees `0..=max` by linear algebra
/// on the spanning set `{m · g}` of each graded piece of the ideal.
pub fn hilbert_by_linear_algebra(ring: &Ring, gens: &[ZPoly], max: u32) -> Vec<i128> {
    (0..=max)
        .map(|d| {
            let monos = ring.monomials_of_degree(d);
            let mut span = Vec::new();
            for g in gens.iter().filter(|g| !g.is_zero()) {
                let gd = g.max_degree().expect("nonzero");
                if gd > d {
                    continue;
                }
                for m in ring.monomials_of_degree(d - gd) {
                    span.push(g.mul_term(&m, &BigInt::from(1)).to_rational());
                }
            }
            monos.len() as i128 - rank(&span) as i128
        })
        .collect()
}

pub fn monomial_text(m: &Monomial, ring: &Ring) -> String {
    m.display(ring).to_string()
}
