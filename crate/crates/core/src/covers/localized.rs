//! Single-denominator localizations of a presented ring: elements are
//! `num / den^k` with the numerator kept reduced modulo the base ideal.
//!
//! Equality is the cross-multiplied normal-form test, which characterizes
//! equality in the localization when the base ideal is prime and the
//! denominator avoids it; primeness is a trusted input.

use std::sync::Arc;

use crate::cartier::SplittingCandidate;
use crate::groebner::PresentedRing;
use crate::poly::Polynomial;

use super::CoverError;

#[derive(Debug, Clone)]
pub struct LocalizedRing {
    base: Arc<PresentedRing>,
    den: Polynomial,
}

/// `num / den^k` relative to an ambient `LocalizedRing`.
#[derive(Debug, Clone)]
pub struct LocalizedElement {
    pub num: Polynomial,
    pub k: u32,
}

impl LocalizedRing {
    pub fn new(base: Arc<PresentedRing>, den: Polynomial) -> Result<Arc<Self>, CoverError> {
        if base.reduce(&den).is_zero() {
            return Err(CoverError::DenominatorInIdeal);
        }
        Ok(Arc::new(LocalizedRing { base, den }))
    }

    pub fn base(&self) -> &Arc<PresentedRing> {
        &self.base
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn den_pow(&self, k: u32) -> Polynomial {
        self.den.try_pow(u64::from(k)).expect("denominator power")
    }

    pub fn from_poly(&self, num: &Polynomial) -> LocalizedElement {
        LocalizedElement {
            num: self.base.reduce(num),
            k: 0,
        }
    }

    pub fn zero(&self) -> LocalizedElement {
        self.from_poly(&Polynomial::zero(self.base.field(), self.base.vars()))
    }

    pub fn one(&self) -> LocalizedElement {
        self.from_poly(&Polynomial::one(self.base.field(), self.base.vars()))
    }

    /// `num / den^k`, reduced.
    pub fn fraction(&self, num: &Polynomial, k: u32) -> LocalizedElement {
        LocalizedElement {
            num: self.base.reduce(num),
            k,
        }
    }

    pub fn add(&self, a: &LocalizedElement, b: &LocalizedElement) -> LocalizedElement {
        let k = a.k.max(b.k);
        let na = a
            .num
            .try_mul(&self.den_pow(k - a.k))
            .expect("same ring");
        let nb = b
            .num
            .try_mul(&self.den_pow(k - b.k))
            .expect("same ring");
        LocalizedElement {
            num: self.base.reduce(&na.try_add(&nb).expect("same ring")),
            k,
        }
    }

    pub fn sub(&self, a: &LocalizedElement, b: &LocalizedElement) -> LocalizedElement {
        self.add(a, &self.neg(b))
    }

    pub fn neg(&self, a: &LocalizedElement) -> LocalizedElement {
        LocalizedElement {
            num: a.num.neg(),
            k: a.k,
        }
    }

    pub fn mul(&self, a: &LocalizedElement, b: &LocalizedElement) -> LocalizedElement {
        LocalizedElement {
            num: self.base.reduce(&a.num.try_mul(&b.num).expect("same ring")),
            k: a.k + b.k,
        }
    }

    /// Division by a further power of the denominator.
    pub fn shift_down(&self, a: &LocalizedElement, extra: u32) -> LocalizedElement {
        LocalizedElement {
            num: a.num.clone(),
            k: a.k + extra,
        }
    }

    /// An equal element over a higher denominator power (a different
    /// representative of the same value).
    pub fn rescale(&self, a: &LocalizedElement, extra: u32) -> LocalizedElement {
        LocalizedElement {
            num: self
                .base
                .reduce(&a.num.try_mul(&self.den_pow(extra)).expect("same ring")),
            k: a.k + extra,
        }
    }

    pub fn is_zero(&self, a: &LocalizedElement) -> bool {
        self.base.reduce(&a.num).is_zero()
    }

    /// `num/den^k = num'/den^k'` iff `num * den^k' - num' * den^k` lies in
    /// the base ideal.
    pub fn eq(&self, a: &LocalizedElement, b: &LocalizedElement) -> bool {
        let lhs = a.num.try_mul(&self.den_pow(b.k)).expect("same ring");
        let rhs = b.num.try_mul(&self.den_pow(a.k)).expect("same ring");
        self.base
            .reduce(&lhs.try_sub(&rhs).expect("same ring"))
            .is_zero()
    }
}

/// Extends a splitting of the base ring to the localization:
/// `phi(num / den^k) = phi(num * den^{k(p-1)}) / den^k`, which is forced by
/// p^{-1}-linearity since `num/den^k = num*den^{k(p-1)} / den^{kp}`. The
/// result is representative-independent because the premultiplier carries the
/// base ideal into its bracket power.
pub fn phi_localized(
    phi: &SplittingCandidate,
    ring: &LocalizedRing,
    e: &LocalizedElement,
) -> LocalizedElement {
    let p = phi.p();
    let boost = ring.den_pow(e.k * (p - 1));
    let traced = phi.apply(&e.num.try_mul(&boost).expect("same ring"));
    LocalizedElement {
        num: ring.base.reduce(&traced),
        k: e.k,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GroundField;
    use crate::groebner::{GbConfig, Ideal};
    use crate::order::MonomialOrder;
    use crate::poly::VarSet;
    use crate::text::parse;

    fn setup(
        p: u32,
        names: &[&str],
        gens: &[&str],
        den: &str,
    ) -> (GroundField, VarSet, Arc<LocalizedRing>) {
        let field = GroundField::new(p).unwrap();
        let vars = VarSet::new(names.to_vec()).unwrap();
        let gens: Vec<Polynomial> = gens
            .iter()
            .map(|s| parse(s, field, &vars).unwrap())
            .collect();
        let ideal = Ideal::new(field, &vars, gens, MonomialOrder::grevlex()).unwrap();
        let base = PresentedRing::new(ideal, &GbConfig::default()).unwrap();
        let den = parse(den, field, &vars).unwrap();
        (field, vars.clone(), LocalizedRing::new(base, den).unwrap())
    }

    #[test]
    fn denominator_in_ideal_is_rejected() {
        let field = GroundField::new(3).unwrap();
        let vars = VarSet::new(["x", "y"]).unwrap();
        let x = parse("x", field, &vars).unwrap();
        let ideal = Ideal::new(field, &vars, vec![x.clone()], MonomialOrder::grevlex()).unwrap();
        let base = PresentedRing::new(ideal, &GbConfig::default()).unwrap();
        assert!(matches!(
            LocalizedRing::new(base, x),
            Err(CoverError::DenominatorInIdeal)
        ));
    }

    #[test]
    fn rescaled_representatives_are_equal() {
        let (field, vars, ring) = setup(3, &["y11", "y12", "y22"], &["y12^2 - y11*y22"], "y11");
        let e = ring.fraction(&parse("y12 + y22", field, &vars).unwrap(), 1);
        let e2 = ring.rescale(&e, 2);
        assert!(ring.eq(&e, &e2));
        assert!(!ring.eq(&e, &ring.one()));
    }

    #[test]
    fn arithmetic_respects_equality() {
        let (field, vars, ring) = setup(5, &["x", "y"], &[], "x");
        // 1/x + (x-1)/x = 1
        let a = ring.fraction(&parse("1", field, &vars).unwrap(), 1);
        let b = ring.fraction(&parse("x - 1", field, &vars).unwrap(), 1);
        assert!(ring.eq(&ring.add(&a, &b), &ring.one()));
        // (1/x) * x = 1
        let x = ring.from_poly(&parse("x", field, &vars).unwrap());
        assert!(ring.eq(&ring.mul(&a, &x), &ring.one()));
    }

    #[test]
    fn phi_on_plain_elements_matches_direct_application() {
        let (field, vars, ring) = setup(3, &["y"], &[], "y");
        let c = parse("y^2", field, &vars).unwrap();
        let base = ring.base().clone();
        let phi = SplittingCandidate::new(c, base);
        let r = parse("y^3", field, &vars).unwrap();
        let direct = phi.apply(&r);
        let through = phi_localized(&phi, &ring, &ring.from_poly(&r));
        assert!(ring.eq(&through, &ring.from_poly(&direct)));
    }

    #[test]
    fn phi_is_representative_independent() {
        let (field, vars, ring) = setup(3, &["y"], &[], "y");
        let c = parse("y^2", field, &vars).unwrap();
        let phi = SplittingCandidate::new(c, ring.base().clone());
        // d^{p-1} presented as d^p / d
        let dp = ring.fraction(&parse("y^3", field, &vars).unwrap(), 1);
        let direct = ring.from_poly(&parse("y^2", field, &vars).unwrap());
        assert!(ring.eq(&dp, &direct));
        let lhs = phi_localized(&phi, &ring, &dp);
        let rhs = phi_localized(&phi, &ring, &direct);
        assert!(ring.eq(&lhs, &rhs));
    }

    #[test]
    fn phi_of_reciprocal_denominator() {
        // phi(1/d) = phi(d^{p-1}) / d
        let (field, vars, ring) = setup(3, &["y"], &[], "y");
        let c = parse("y^2", field, &vars).unwrap();
        let phi = SplittingCandidate::new(c, ring.base().clone());
        let recip = ring.fraction(&parse("1", field, &vars).unwrap(), 1);
        let out = phi_localized(&phi, &ring, &recip);
        // trace(y^2 * y^2) = trace(y^4) = 0
        assert!(ring.is_zero(&out));
    }
}
