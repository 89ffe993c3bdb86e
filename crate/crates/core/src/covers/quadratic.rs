//! Quadratic covers `S = R[u]/(u^2 - f)` over a presented base R = A/I. An
//! element is `a*u + b` with both coefficients reduced mod I; the reduction
//! `u^2 -> f` is applied eagerly, so representations are unique.
//!
//! A base splitting compatible with (f) lifts: on the u-component the value
//! is the exact quotient `phi(a * f^{(p+1)/2}) / f`, which exists precisely
//! because of compatibility and is re-verified on every call.

use std::sync::Arc;

use rand_chacha::ChaCha20Rng;

use crate::cartier::SplittingCandidate;
use crate::groebner::{exact_div, GbConfig, PresentedRing};
use crate::poly::Polynomial;
use crate::sample::random_polynomial;
use crate::text;

use super::check::{SampleBounds, SplitOperator};
use super::CoverError;

#[derive(Debug, Clone)]
pub struct QuadraticCover {
    base: Arc<PresentedRing>,
    f: Polynomial,
}

/// `a*u + b` with coefficients in the base quotient.
#[derive(Debug, Clone)]
pub struct QuadraticElement {
    pub a: Polynomial,
    pub b: Polynomial,
}

impl QuadraticCover {
    pub fn new(base: Arc<PresentedRing>, f: Polynomial) -> Result<Arc<Self>, CoverError> {
        if base.reduce(&f).is_zero() {
            return Err(CoverError::DenominatorInIdeal);
        }
        Ok(Arc::new(QuadraticCover { base, f }))
    }

    pub fn base(&self) -> &Arc<PresentedRing> {
        &self.base
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn from_parts(&self, a: &Polynomial, b: &Polynomial) -> QuadraticElement {
        QuadraticElement {
            a: self.base.reduce(a),
            b: self.base.reduce(b),
        }
    }

    pub fn zero(&self) -> QuadraticElement {
        let z = Polynomial::zero(self.base.field(), self.base.vars());
        QuadraticElement { a: z.clone(), b: z }
    }

    pub fn one(&self) -> QuadraticElement {
        QuadraticElement {
            a: Polynomial::zero(self.base.field(), self.base.vars()),
            b: Polynomial::one(self.base.field(), self.base.vars()),
        }
    }

    pub fn u(&self) -> QuadraticElement {
        QuadraticElement {
            a: Polynomial::one(self.base.field(), self.base.vars()),
            b: Polynomial::zero(self.base.field(), self.base.vars()),
        }
    }

    pub fn add(&self, x: &QuadraticElement, y: &QuadraticElement) -> QuadraticElement {
        self.from_parts(&x.a.try_add(&y.a).expect("ring"), &x.b.try_add(&y.b).expect("ring"))
    }

    /// `(a*u + b)(a'*u + b') = (a*b' + a'*b)*u + (a*a'*f + b*b')`.
    pub fn mul(&self, x: &QuadraticElement, y: &QuadraticElement) -> QuadraticElement {
        let cross = &(&x.a * &y.b) + &(&y.a * &x.b);
        let body = &(&(&x.a * &y.a) * &self.f) + &(&x.b * &y.b);
        self.from_parts(&cross, &body)
    }

    pub fn pow(&self, x: &QuadraticElement, e: u32) -> QuadraticElement {
        let mut acc = self.one();
        let mut base = x.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    pub fn eq(&self, x: &QuadraticElement, y: &QuadraticElement) -> bool {
        self.base.eq_mod(&x.a, &y.a) && self.base.eq_mod(&x.b, &y.b)
    }

    pub fn describe(&self, x: &QuadraticElement) -> String {
        format!("({})*u + ({})", text::print(&x.a), text::print(&x.b))
    }
}

/// A lifted splitting on a quadratic cover.
#[derive(Debug, Clone)]
pub struct HypersurfaceLift {
    phi: SplittingCandidate,
    cover: Arc<QuadraticCover>,
    half: u64,
}

/// Builds the hypersurface lift. Requires odd characteristic, a normalized
/// base splitting over the cover's base ring, and compatibility with (f).
pub fn lift_hypersurface(
    phi: &SplittingCandidate,
    cover: &Arc<QuadraticCover>,
    cfg: &GbConfig,
) -> Result<HypersurfaceLift, CoverError> {
    let p = phi.p();
    if p == 2 {
        return Err(CoverError::CharTwo);
    }
    if !phi.is_normalized() {
        return Err(CoverError::NotNormalized);
    }
    if !Arc::ptr_eq(phi.ring(), cover.base())
        && phi.ideal().generators() != cover.base().ideal().generators()
    {
        return Err(CoverError::RingMismatch);
    }
    let f_ideal = crate::groebner::Ideal::new(
        phi.ideal().field(),
        phi.ideal().vars(),
        vec![cover.f().clone()],
        phi.ideal().order().clone(),
    )?;
    if !phi.compatibly_splits(&f_ideal, cfg)? {
        return Err(CoverError::NotCompatible);
    }
    Ok(HypersurfaceLift {
        phi: phi.clone(),
        cover: cover.clone(),
        half: u64::from((p + 1) / 2),
    })
}

impl HypersurfaceLift {
    pub fn cover(&self) -> &Arc<QuadraticCover> {
        &self.cover
    }

    pub fn phi(&self) -> &SplittingCandidate {
        &self.phi
    }

    /// `psi(a*u + b) = c'*u + phi(b)` with `c' = phi(a * f^{(p+1)/2}) / f`.
    /// The division is checked on every call; a nonzero remainder signals a
    /// compatibility violation and is returned as the diagnostic witness.
    pub fn apply(&self, x: &QuadraticElement) -> Result<QuadraticElement, CoverError> {
        let base = self.cover.base();
        let f = self.cover.f();
        let target = base.reduce(&self.phi.apply(&x.a.try_mul(&f.try_pow(self.half)?)?));
        let c_prime = if target.is_zero() {
            target
        } else {
            match exact_div(&target, f) {
                Some(q) => q,
                None => {
                    // Remainder diagnostics: recompute the division remainder.
                    let gb_f = crate::groebner::buchberger(
                        &crate::groebner::Ideal::new(
                            base.field(),
                            base.vars(),
                            vec![f.clone()],
                            base.ideal().order().clone(),
                        )?,
                        &GbConfig::default(),
                    )?;
                    let rem = crate::groebner::normal_form(&target, &gb_f);
                    return Err(CoverError::DivisionFailure { remainder: rem });
                }
            }
        };
        Ok(self.cover.from_parts(&c_prime, &self.phi.apply(&x.b)))
    }
}

impl SplitOperator for HypersurfaceLift {
    type Elem = QuadraticElement;

    fn p(&self) -> u32 {
        self.phi.p()
    }

    fn one(&self) -> QuadraticElement {
        self.cover.one()
    }

    fn apply(&self, e: &QuadraticElement) -> Result<QuadraticElement, CoverError> {
        HypersurfaceLift::apply(self, e)
    }

    fn mul(&self, a: &QuadraticElement, b: &QuadraticElement) -> QuadraticElement {
        self.cover.mul(a, b)
    }

    fn pow(&self, a: &QuadraticElement, e: u32) -> QuadraticElement {
        self.cover.pow(a, e)
    }

    fn eq(&self, a: &QuadraticElement, b: &QuadraticElement) -> bool {
        self.cover.eq(a, b)
    }

    fn sample(&self, rng: &mut ChaCha20Rng, bounds: &SampleBounds) -> QuadraticElement {
        let base = self.cover.base();
        let a = random_polynomial(rng, base.field(), base.vars(), bounds.max_degree, bounds.max_terms);
        let b = random_polynomial(rng, base.field(), base.vars(), bounds.max_degree, bounds.max_terms);
        self.cover.from_parts(&a, &b)
    }

    fn describe(&self, e: &QuadraticElement) -> String {
        self.cover.describe(e)
    }
}
