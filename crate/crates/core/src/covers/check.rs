//! Seeded verification of the splitting axioms on a lifted operator:
//! `psi(1) = 1` and `psi(s^p * t) = s * psi(t)` on random bounded elements of
//! the cover algebra. Sampling is deterministic in the seed.

use rand_chacha::ChaCha20Rng;

use crate::sample::rng_from_seed;

use super::CoverError;

/// Bounds on sampled elements.
#[derive(Debug, Clone, Copy)]
pub struct SampleBounds {
    /// Total degree bound on coefficient polynomials.
    pub max_degree: u32,
    /// Term-count bound on coefficient polynomials.
    pub max_terms: usize,
    /// Bound on localization denominator powers (chart algebras).
    pub max_loc_power: u32,
    /// Bound on |degree| of graded components (hyperbolic covers).
    pub max_grade: i64,
}

impl SampleBounds {
    /// Default bounds: coefficient degree at most 2p, sparse terms.
    pub fn for_p(p: u32) -> Self {
        SampleBounds {
            max_degree: 2 * p,
            max_terms: 4,
            max_loc_power: 1,
            max_grade: 2,
        }
    }
}

/// A splitting operator on a cover algebra, exposing just enough arithmetic
/// to state the axioms and sample elements.
pub trait SplitOperator {
    type Elem: Clone;

    fn p(&self) -> u32;
    fn one(&self) -> Self::Elem;
    fn apply(&self, e: &Self::Elem) -> Result<Self::Elem, CoverError>;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn pow(&self, a: &Self::Elem, e: u32) -> Self::Elem;
    fn eq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn sample(&self, rng: &mut ChaCha20Rng, bounds: &SampleBounds) -> Self::Elem;
    fn describe(&self, e: &Self::Elem) -> String;
}

#[derive(Debug, Clone)]
pub struct AxiomFailure {
    pub sample_index: u32,
    pub description: String,
}

#[derive(Debug, Clone)]
pub struct AxiomReport {
    /// Number of sample pairs requested.
    pub samples: u32,
    /// Number of sample pairs actually checked (stops at a counterexample).
    pub checked: u32,
    pub unit_ok: bool,
    pub failure: Option<AxiomFailure>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.unit_ok && self.failure.is_none()
    }

    pub fn vacuous(&self) -> bool {
        self.samples == 0
    }
}

/// Checks `psi(1) = 1` and, for `samples` seeded pairs (s, t),
/// `psi(s^p * t) = s * psi(t)` exactly; stops at the first counterexample.
pub fn splitting_axiom_check<T: SplitOperator>(
    op: &T,
    samples: u32,
    seed: u64,
    bounds: &SampleBounds,
) -> AxiomReport {
    let mut rng = rng_from_seed(seed);
    let one = op.one();
    let unit_ok = match op.apply(&one) {
        Ok(image) => op.eq(&image, &one),
        Err(_) => false,
    };
    let mut failure = None;
    let mut checked = 0;
    if unit_ok {
        for i in 0..samples {
            let s = op.sample(&mut rng, bounds);
            let t = op.sample(&mut rng, bounds);
            checked += 1;
            let frob_input = op.mul(&op.pow(&s, op.p()), &t);
            let outcome = (|| -> Result<bool, CoverError> {
                let lhs = op.apply(&frob_input)?;
                let rhs = op.mul(&s, &op.apply(&t)?);
                Ok(op.eq(&lhs, &rhs))
            })();
            match outcome {
                Ok(true) => {}
                Ok(false) => {
                    failure = Some(AxiomFailure {
                        sample_index: i,
                        description: format!(
                            "psi(s^p t) != s psi(t) for s = {}, t = {}",
                            op.describe(&s),
                            op.describe(&t)
                        ),
                    });
                    break;
                }
                Err(e) => {
                    failure = Some(AxiomFailure {
                        sample_index: i,
                        description: format!("operator error: {e}"),
                    });
                    break;
                }
            }
        }
    }
    AxiomReport {
        samples,
        checked,
        unit_ok,
        failure,
    }
}
