//! Seeded sampling of low-degree polynomials for the randomized harnesses.

use std::sync::Arc;

use rand::Rng;

use crate::poly::{Monomial, Poly, PolyRing};

/// A random polynomial with at most `max_terms` terms of total degree at
/// most `max_deg`. May be zero.
pub fn random_poly<R: Rng>(
    ring: &Arc<PolyRing>,
    rng: &mut R,
    max_deg: u32,
    max_terms: usize,
) -> Poly {
    let n = ring.nvars();
    let k = rng.gen_range(0..=max_terms);
    let terms = (0..k)
        .map(|_| {
            let d = rng.gen_range(0..=max_deg);
            (random_monomial(n, d, rng), rng.gen_range(0..ring.p()))
        })
        .collect();
    Poly::from_terms(ring, terms)
}

/// A random nonzero polynomial.
pub fn random_nonzero<R: Rng>(
    ring: &Arc<PolyRing>,
    rng: &mut R,
    max_deg: u32,
    max_terms: usize,
) -> Poly {
    loop {
        let f = random_poly(ring, rng, max_deg, max_terms.max(1));
        if !f.is_zero() {
            return f;
        }
    }
}

/// A random homogeneous polynomial of degree exactly `deg` (may be zero).
pub fn random_homogeneous<R: Rng>(
    ring: &Arc<PolyRing>,
    rng: &mut R,
    deg: u32,
    max_terms: usize,
) -> Poly {
    let n = ring.nvars();
    let k = rng.gen_range(1..=max_terms.max(1));
    let terms = (0..k)
        .map(|_| (random_monomial(n, deg, rng), rng.gen_range(0..ring.p())))
        .collect();
    Poly::from_terms(ring, terms)
}

/// A uniformly placed monomial of total degree `deg` in `n` variables.
pub fn random_monomial<R: Rng>(n: usize, deg: u32, rng: &mut R) -> Monomial {
    let mut e = vec![0u32; n];
    if n > 0 {
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
    }
    Monomial::from_exponents(&e).expect("small degree")
}
