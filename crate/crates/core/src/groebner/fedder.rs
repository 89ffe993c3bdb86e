//! Fedder's criterion at the origin: A/I is F-pure near the origin iff
//! (I^[p] : I) is not contained in m^[p], where m is the maximal ideal at the
//! origin. All families handled here are conical, so the origin is the worst
//! point.

use crate::poly::Polynomial;

use super::buchberger::buchberger;
use super::ops::colon;
use super::{GbConfig, GbError, Ideal};

#[derive(Debug, Clone)]
pub enum FedderOutcome {
    /// The quotient is F-pure; `witness` is a colon-ideal basis element
    /// outside m^[p], usable as a splitting premultiplier.
    FPure { witness: Polynomial },
    NotFPure,
    /// Resource caps were exceeded before the test could decide.
    Inconclusive { reason: String },
}

/// Drops every monomial with some exponent at or above p; this is the normal
/// form modulo the monomial ideal m^[p] = (x_1^p, ..., x_n^p).
pub(crate) fn reduce_mod_bracket_max(f: &Polynomial) -> Polynomial {
    let p = f.field().p();
    Polynomial::from_terms(
        f.field(),
        f.vars(),
        f.terms().filter_map(|(m, c)| {
            m.exps()
                .iter()
                .all(|&e| e < p)
                .then(|| (m.clone(), i64::from(c)))
        }),
    )
}

/// Runs Fedder's test on a proper ideal. The witness, when one exists, is the
/// first basis element of (I^[p] : I) whose reduction modulo m^[p] is nonzero.
pub fn fedder_witness(ideal: &Ideal, cfg: &GbConfig) -> Result<FedderOutcome, GbError> {
    let run = || -> Result<FedderOutcome, GbError> {
        let q = colon(&ideal.bracket_power(), ideal, cfg)?;
        let gb = buchberger(&q, cfg)?;
        for g in gb.elements() {
            if !reduce_mod_bracket_max(g).is_zero() {
                return Ok(FedderOutcome::FPure { witness: g.clone() });
            }
        }
        Ok(FedderOutcome::NotFPure)
    };
    match run() {
        Ok(out) => Ok(out),
        Err(GbError::Timeout {
            pairs_processed,
            basis_size,
        }) => Ok(FedderOutcome::Inconclusive {
            reason: format!(
                "resource caps exceeded ({pairs_processed} pairs, basis size {basis_size})"
            ),
        }),
        Err(e) => Err(e),
    }
}

/// True iff the ideal is proper (its basis does not contain a unit).
pub fn is_proper(ideal: &Ideal, cfg: &GbConfig) -> Result<bool, GbError> {
    let gb = buchberger(ideal, cfg)?;
    Ok(!gb
        .elements()
        .iter()
        .any(|g| g.is_constant() && !g.is_zero()))
}
