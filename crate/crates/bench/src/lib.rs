//! Benchmark inputs shared by the criterion targets.

use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use slcc_core::polyring::{Monomial, Ring, ZPoly};

/// Deterministic random polynomial in `ring` with `terms` terms and exponents up to `max_exp`.
pub fn random_poly(ring: &Ring, terms: usize, max_exp: u32, seed: u64) -> ZPoly {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    ZPoly::from_terms(
        ring,
        (0..terms).map(|_| {
            let exps = (0..ring.len()).map(|_| rng.random_range(0..=max_exp)).collect();
            (Monomial::new(exps, ring).expect("in range"), BigInt::from(rng.random_range(-50i64..=50)))
        }),
    )
}
