//! Hyperbolic covers `S = R[u, xi]/(u*xi - f)`, graded by deg u = +1,
//! deg xi = -1. Elements store one base-ring coefficient per degree; the
//! reduction `u*xi -> f` is applied eagerly during multiplication, so no
//! mixed terms exist.
//!
//! A base splitting lifts degree-wise: the degree-d component maps to degree
//! d/p when p divides d and to zero otherwise.

use std::collections::BTreeMap;
use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha20Rng;

use crate::cartier::SplittingCandidate;
use crate::groebner::PresentedRing;
use crate::poly::Polynomial;
use crate::sample::random_polynomial;
use crate::text;

use super::check::{SampleBounds, SplitOperator};
use super::CoverError;

#[derive(Debug, Clone)]
pub struct HyperbolicCover {
    base: Arc<PresentedRing>,
    f: Polynomial,
}

/// Finitely many coefficients indexed by degree: positive degrees are powers
/// of u, negative degrees powers of xi, degree zero the base ring.
#[derive(Debug, Clone)]
pub struct HyperbolicElement {
    coeffs: BTreeMap<i64, Polynomial>,
}

impl HyperbolicElement {
    pub fn coeff_iter(&self) -> impl Iterator<Item = (i64, &Polynomial)> {
        self.coeffs.iter().map(|(&d, c)| (d, c))
    }

    pub fn degrees(&self) -> Vec<i64> {
        self.coeffs.keys().copied().collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl HyperbolicCover {
    pub fn new(base: Arc<PresentedRing>, f: Polynomial) -> Result<Arc<Self>, CoverError> {
        if base.reduce(&f).is_zero() {
            return Err(CoverError::DenominatorInIdeal);
        }
        Ok(Arc::new(HyperbolicCover { base, f }))
    }

    pub fn base(&self) -> &Arc<PresentedRing> {
        &self.base
    }

    pub fn f(&self) -> &Polynomial {
        &self.f
    }

    pub fn zero(&self) -> HyperbolicElement {
        HyperbolicElement {
            coeffs: BTreeMap::new(),
        }
    }

    pub fn from_coeffs<I: IntoIterator<Item = (i64, Polynomial)>>(
        &self,
        coeffs: I,
    ) -> HyperbolicElement {
        let mut out = self.zero();
        for (d, c) in coeffs {
            self.add_term(&mut out, d, &c);
        }
        out
    }

    pub fn one(&self) -> HyperbolicElement {
        self.from_coeffs([(0, Polynomial::one(self.base.field(), self.base.vars()))])
    }

    pub fn u(&self) -> HyperbolicElement {
        self.from_coeffs([(1, Polynomial::one(self.base.field(), self.base.vars()))])
    }

    pub fn xi(&self) -> HyperbolicElement {
        self.from_coeffs([(-1, Polynomial::one(self.base.field(), self.base.vars()))])
    }

    /// The coefficient at a degree (zero polynomial if absent).
    pub fn coeff(&self, x: &HyperbolicElement, d: i64) -> Polynomial {
        x.coeffs
            .get(&d)
            .cloned()
            .unwrap_or_else(|| Polynomial::zero(self.base.field(), self.base.vars()))
    }

    fn add_term(&self, x: &mut HyperbolicElement, d: i64, c: &Polynomial) {
        let reduced = self.base.reduce(c);
        if reduced.is_zero() {
            return;
        }
        match x.coeffs.entry(d) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(reduced);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let sum = self.base.reduce(&o.get().try_add(&reduced).expect("ring"));
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn add(&self, x: &HyperbolicElement, y: &HyperbolicElement) -> HyperbolicElement {
        let mut out = x.clone();
        for (&d, c) in &y.coeffs {
            self.add_term(&mut out, d, c);
        }
        out
    }

    /// Basis products: `u^a * xi^b` collapses `min(a, b)` crossing pairs into
    /// powers of f, so the product of degrees d and e carries `f^overlap`
    /// with `overlap = min(|d|, |e|)` when the signs differ.
    pub fn mul(&self, x: &HyperbolicElement, y: &HyperbolicElement) -> HyperbolicElement {
        let mut out = self.zero();
        for (&d, cd) in &x.coeffs {
            for (&e, ce) in &y.coeffs {
                let overlap = if d.signum() * e.signum() == -1 {
                    d.abs().min(e.abs()) as u64
                } else {
                    0
                };
                let mut c = cd.try_mul(ce).expect("ring");
                if overlap > 0 {
                    c = c
                        .try_mul(&self.f.try_pow(overlap).expect("power"))
                        .expect("ring");
                }
                self.add_term(&mut out, d + e, &c);
            }
        }
        out
    }

    pub fn pow(&self, x: &HyperbolicElement, e: u32) -> HyperbolicElement {
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

    pub fn eq(&self, x: &HyperbolicElement, y: &HyperbolicElement) -> bool {
        let degrees: std::collections::BTreeSet<i64> =
            x.coeffs.keys().chain(y.coeffs.keys()).copied().collect();
        degrees
            .into_iter()
            .all(|d| self.base.eq_mod(&self.coeff(x, d), &self.coeff(y, d)))
    }

    pub fn describe(&self, x: &HyperbolicElement) -> String {
        if x.is_zero() {
            return "0".to_string();
        }
        let parts: Vec<String> = x
            .coeffs
            .iter()
            .map(|(&d, c)| {
                let basis = match d {
                    0 => String::new(),
                    1 => "*u".to_string(),
                    -1 => "*xi".to_string(),
                    d if d > 0 => format!("*u^{d}"),
                    d => format!("*xi^{}", -d),
                };
                format!("({}){}", text::print(c), basis)
            })
            .collect();
        parts.join(" + ")
    }
}

/// A lifted splitting on a hyperbolic cover.
#[derive(Debug, Clone)]
pub struct HyperbolicLift {
    phi: SplittingCandidate,
    cover: Arc<HyperbolicCover>,
}

/// Builds the hyperbolic lift. Requires a normalized base splitting; no
/// compatibility with (f) is needed, and any characteristic works.
pub fn lift_hyperbolic(
    phi: &SplittingCandidate,
    cover: &Arc<HyperbolicCover>,
) -> Result<HyperbolicLift, CoverError> {
    if !phi.is_normalized() {
        return Err(CoverError::NotNormalized);
    }
    if !Arc::ptr_eq(phi.ring(), cover.base())
        && phi.ideal().generators() != cover.base().ideal().generators()
    {
        return Err(CoverError::RingMismatch);
    }
    Ok(HyperbolicLift {
        phi: phi.clone(),
        cover: cover.clone(),
    })
}

impl HyperbolicLift {
    pub fn cover(&self) -> &Arc<HyperbolicCover> {
        &self.cover
    }

    pub fn phi(&self) -> &SplittingCandidate {
        &self.phi
    }

    /// Degree-d coefficients map to degree d/p when p | d, else to zero; the
    /// fractional powers of the written-out formula are never materialized.
    pub fn apply(&self, x: &HyperbolicElement) -> HyperbolicElement {
        let p = i64::from(self.phi.p());
        self.cover.from_coeffs(x.coeffs.iter().filter_map(|(&d, c)| {
            (d % p == 0).then(|| (d / p, self.phi.apply(c)))
        }))
    }
}

impl SplitOperator for HyperbolicLift {
    type Elem = HyperbolicElement;

    fn p(&self) -> u32 {
        self.phi.p()
    }

    fn one(&self) -> HyperbolicElement {
        self.cover.one()
    }

    fn apply(&self, e: &HyperbolicElement) -> Result<HyperbolicElement, CoverError> {
        Ok(HyperbolicLift::apply(self, e))
    }

    fn mul(&self, a: &HyperbolicElement, b: &HyperbolicElement) -> HyperbolicElement {
        self.cover.mul(a, b)
    }

    fn pow(&self, a: &HyperbolicElement, e: u32) -> HyperbolicElement {
        self.cover.pow(a, e)
    }

    fn eq(&self, a: &HyperbolicElement, b: &HyperbolicElement) -> bool {
        self.cover.eq(a, b)
    }

    fn sample(&self, rng: &mut ChaCha20Rng, bounds: &SampleBounds) -> HyperbolicElement {
        let base = self.cover.base();
        let mut coeffs = Vec::new();
        for d in -bounds.max_grade..=bounds.max_grade {
            if rng.gen_bool(0.6) {
                coeffs.push((
                    d,
                    random_polynomial(
                        rng,
                        base.field(),
                        base.vars(),
                        bounds.max_degree,
                        bounds.max_terms,
                    ),
                ));
            }
        }
        self.cover.from_coeffs(coeffs)
    }

    fn describe(&self, e: &HyperbolicElement) -> String {
        self.cover.describe(e)
    }
}
