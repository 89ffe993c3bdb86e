//! Seeded random polynomial generation for property and axiom checks.
//!
//! All sampling is driven by a caller-supplied RNG so that every randomized
//! check in the crate reproduces exactly from a seed.

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::field::GroundField;
use crate::poly::{Monomial, Polynomial, VarSet};

pub fn rng_from_seed(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// A sparse random polynomial with at most `max_terms` terms of total degree
/// at most `max_degree`. May be zero.
pub fn random_polynomial<R: Rng>(
    rng: &mut R,
    field: GroundField,
    vars: &VarSet,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    let n = vars.len();
    let terms = rng.gen_range(0..=max_terms);
    let mut out = Polynomial::zero(field, vars);
    for _ in 0..terms {
        let mut exps = vec![0u32; n];
        let mut budget = rng.gen_range(0..=max_degree);
        while budget > 0 && n > 0 {
            let v = rng.gen_range(0..n);
            let e = rng.gen_range(1..=budget);
            exps[v] += e;
            budget -= e;
        }
        let c = rng.gen_range(1..field.p());
        let term = Polynomial::from_terms(field, vars, [(Monomial::new(exps), i64::from(c))]);
        out = out.try_add(&term).expect("same varset");
    }
    out
}

/// Like `random_polynomial` but never zero.
pub fn random_nonzero_polynomial<R: Rng>(
    rng: &mut R,
    field: GroundField,
    vars: &VarSet,
    max_degree: u32,
    max_terms: usize,
) -> Polynomial {
    loop {
        let f = random_polynomial(rng, field, vars, max_degree, max_terms.max(1));
        if !f.is_zero() {
            return f;
        }
    }
}
