//! Concrete p^{-1}-linear maps via the dual trace operator and a
//! premultiplier.
//!
//! Convention: the dual trace sends `x^a` to `x^{(a - (p-1)*1)/p}` when every
//! exponent of `a` is congruent to `p-1` mod p, and to zero otherwise;
//! coefficients are carried unchanged (for scalars in the prime field,
//! `c^{1/p} = c`). With this convention every p^{-1}-linear map of the
//! polynomial ring is `g -> trace(c*g)` for a premultiplier `c`, and Fedder
//! witnesses plug in directly. Mind that the other common convention (exact
//! divisibility of exponents by p) differs from this one by the shift
//! `x^{(p-1)*1}`.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::json;
use thiserror::Error;

use crate::groebner::{GbConfig, GbError, Ideal, PresentedRing};
use crate::poly::{Monomial, PolyError, Polynomial};
use crate::text;

#[derive(Debug, Error, Clone)]
pub enum CartierError {
    #[error("premultiplier lies in the bracket power of the maximal ideal")]
    InBracketMax,
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Dual trace: p^{-1}-linear with `trace(g^p h) = g * trace(h)` and
/// `trace(x^{(p-1)*1}) = 1`.
pub fn dual_trace(f: &Polynomial) -> Polynomial {
    let p = f.field().p();
    Polynomial::from_terms(
        f.field(),
        f.vars(),
        f.terms().filter_map(|(m, c)| {
            let ok = m.exps().iter().all(|&e| e % p == p - 1);
            ok.then(|| {
                let exps = m.exps().iter().map(|&e| (e - (p - 1)) / p).collect();
                (Monomial::new(exps), i64::from(c))
            })
        }),
    )
}

/// The decomposition of `g` over the subring of p-th powers:
/// `g = sum_a (g_a)^p * x^a` with `a` ranging over `[0, p-1]^n`.
#[derive(Debug, Clone)]
pub struct FrobeniusDecomposition {
    base: Polynomial,
    components: BTreeMap<Monomial, Polynomial>,
}

impl FrobeniusDecomposition {
    pub fn base(&self) -> &Polynomial {
        &self.base
    }

    pub fn components(&self) -> impl Iterator<Item = (&Monomial, &Polynomial)> {
        self.components.iter()
    }

    pub fn component(&self, a: &Monomial) -> Option<&Polynomial> {
        self.components.get(a)
    }

    /// Rebuilds `sum_a (g_a)^p * x^a`; equal to the base by construction.
    pub fn reassemble(&self) -> Polynomial {
        let field = self.base.field();
        let vars = self.base.vars();
        let mut acc = Polynomial::zero(field, vars);
        for (a, g) in &self.components {
            let piece = g
                .frobenius()
                .mul_term(a, 1)
                .expect("exponents bounded by the base");
            acc = &acc + &piece;
        }
        acc
    }
}

pub fn frobenius_decompose(g: &Polynomial) -> FrobeniusDecomposition {
    let p = g.field().p();
    let mut components: BTreeMap<Monomial, Polynomial> = BTreeMap::new();
    for (m, c) in g.terms() {
        let residue: Vec<u32> = m.exps().iter().map(|&e| e % p).collect();
        let root: Vec<u32> = m.exps().iter().map(|&e| e / p).collect();
        let entry = components
            .entry(Monomial::new(residue))
            .or_insert_with(|| Polynomial::zero(g.field(), g.vars()));
        let term = Polynomial::from_terms(g.field(), g.vars(), [(Monomial::new(root), i64::from(c))]);
        *entry = entry.try_add(&term).expect("same ring");
    }
    components.retain(|_, v| !v.is_zero());
    FrobeniusDecomposition {
        base: g.clone(),
        components,
    }
}

/// A premultiplier `c` together with an ambient quotient A/I: the represented
/// map is `g -> trace(c*g)`, which descends to A/I when `c` lies in
/// `(I^[p] : I)`. `normalized` records that `trace(c) = 1` holds mod I.
#[derive(Debug, Clone)]
pub struct SplittingCandidate {
    c: Polynomial,
    ring: Arc<PresentedRing>,
    normalized: bool,
}

/// Outcome of `is_splitting`, with a reason when the check fails.
#[derive(Debug, Clone)]
pub enum SplittingCheck {
    /// Both axioms verified; carries the reduced value of phi(1).
    Splitting,
    /// phi(1) differs from 1 modulo the ideal; carries the reduced value.
    NotUnital { value: Polynomial },
    /// The premultiplier does not multiply the ideal into its bracket power,
    /// so the map does not descend; carries an offending generator.
    NotCompatible { generator: Polynomial },
}

impl SplittingCheck {
    pub fn is_splitting(&self) -> bool {
        matches!(self, SplittingCheck::Splitting)
    }

    pub fn reason(&self) -> Option<String> {
        match self {
            SplittingCheck::Splitting => None,
            SplittingCheck::NotUnital { value } => {
                Some(format!("phi(1) = {} instead of 1", text::print(value)))
            }
            SplittingCheck::NotCompatible { generator } => Some(format!(
                "premultiplier does not carry generator {} into the bracket power",
                text::print(generator)
            )),
        }
    }
}

impl SplittingCandidate {
    /// Wraps a premultiplier over A/I without asserting normalization.
    pub fn new(c: Polynomial, ring: Arc<PresentedRing>) -> Self {
        assert!(c.vars() == ring.vars() && c.field() == ring.field(), "ambient mismatch");
        SplittingCandidate {
            c,
            ring,
            normalized: false,
        }
    }

    /// Wraps a premultiplier and verifies both splitting axioms, marking the
    /// candidate normalized on success.
    pub fn new_checked(
        c: Polynomial,
        ring: Arc<PresentedRing>,
        cfg: &GbConfig,
    ) -> Result<Result<Self, SplittingCheck>, CartierError> {
        let cand = SplittingCandidate::new(c, ring);
        let check = cand.is_splitting(cfg)?;
        if check.is_splitting() {
            Ok(Ok(SplittingCandidate {
                normalized: true,
                ..cand
            }))
        } else {
            Ok(Err(check))
        }
    }

    pub fn premultiplier(&self) -> &Polynomial {
        &self.c
    }

    pub fn ring(&self) -> &Arc<PresentedRing> {
        &self.ring
    }

    pub fn ideal(&self) -> &Ideal {
        self.ring.ideal()
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    pub fn p(&self) -> u32 {
        self.c.field().p()
    }

    /// `phi(g) = trace(c*g)`; meaningful modulo the ideal when one is present.
    pub fn apply(&self, g: &Polynomial) -> Polynomial {
        dual_trace(&self.c.try_mul(g).expect("same ring"))
    }

    /// Verifies the splitting axioms: `phi(1) = 1` mod I, and that the map
    /// descends to A/I (each ideal generator multiplied by `c` lands in the
    /// bracket power).
    pub fn is_splitting(&self, cfg: &GbConfig) -> Result<SplittingCheck, CartierError> {
        let one = Polynomial::one(self.c.field(), self.c.vars());
        let phi_one = self.ring.reduce(&dual_trace(&self.c));
        if phi_one != one {
            return Ok(SplittingCheck::NotUnital { value: phi_one });
        }
        if !self.ideal().is_zero() {
            let bracket = PresentedRing::new(self.ideal().bracket_power(), cfg)?;
            for g in self.ideal().generators() {
                if !bracket.contains(&self.c.try_mul(g)?) {
                    return Ok(SplittingCheck::NotCompatible {
                        generator: g.clone(),
                    });
                }
            }
        }
        Ok(SplittingCheck::Splitting)
    }

    /// True iff the premultiplier lies in `((I+J)^[p] : (I+J))`, i.e. the
    /// splitting carries I+J into itself.
    pub fn compatibly_splits(&self, j: &Ideal, cfg: &GbConfig) -> Result<bool, CartierError> {
        let total = self.ideal().sum(j)?;
        if total.is_zero() {
            return Ok(true);
        }
        let bracket = PresentedRing::new(total.bracket_power(), cfg)?;
        for g in total.generators() {
            if !bracket.contains(&self.c.try_mul(g)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Serialization used inside JSON reports.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "p": self.p(),
            "vars": self.c.vars().names(),
            "c": text::print(&self.c),
            "ideal": self.ideal().generators().iter().map(text::print).collect::<Vec<_>>(),
            "normalized": self.normalized,
        })
    }
}

/// Result of the normalization search.
#[derive(Debug, Clone)]
pub enum NormalizeOutcome {
    Normalized {
        candidate: SplittingCandidate,
        multiplier: Monomial,
        scalar: u32,
    },
    /// No monomial multiplier in the box `[0, p-1]^n` rescales the map to
    /// send 1 to 1. This does not refute F-purity.
    NotFound,
}

/// Searches for a monomial `mu` with exponents at most p-1 and a scalar
/// `lambda` such that `trace(lambda^{-1} mu c) = 1` modulo the ideal. The
/// search runs in increasing total degree of `mu`, then ascending
/// lexicographic exponent order, so results are reproducible.
pub fn normalize(
    c: &Polynomial,
    ring: &Arc<PresentedRing>,
    cfg: &GbConfig,
) -> Result<NormalizeOutcome, CartierError> {
    let field = c.field();
    let p = field.p();
    let n = c.vars().len();

    // Precondition: some monomial of c survives modulo m^[p], otherwise
    // trace(mu*c) vanishes for every mu in the box.
    if !c.terms().any(|(m, _)| m.exps().iter().all(|&e| e < p)) {
        return Err(CartierError::InBracketMax);
    }
    let _ = cfg;

    let one = Polynomial::one(field, c.vars());
    for degree in 0..=(n as u64) * u64::from(p - 1) {
        let mut exps = vec![0u32; n];
        if !first_composition(&mut exps, degree, p - 1) {
            continue;
        }
        loop {
            let mu = Monomial::new(exps.clone());
            let traced = ring.reduce(&dual_trace(&c.mul_term(&mu, 1)?));
            if traced.is_constant() && !traced.is_zero() {
                let lambda = traced.constant_coeff();
                let scaled = c.mul_term(&mu, field.inv(lambda))?;
                debug_assert!(ring.eq_mod(&dual_trace(&scaled), &one));
                return Ok(NormalizeOutcome::Normalized {
                    candidate: SplittingCandidate {
                        c: scaled,
                        ring: ring.clone(),
                        normalized: true,
                    },
                    multiplier: mu,
                    scalar: lambda,
                });
            }
            if !next_composition(&mut exps, p - 1) {
                break;
            }
        }
    }
    Ok(NormalizeOutcome::NotFound)
}

/// First vector with the given coordinate bound and total, in ascending
/// lexicographic order: pack the total into the rightmost coordinates.
fn first_composition(exps: &mut [u32], total: u64, bound: u32) -> bool {
    let n = exps.len();
    if total > n as u64 * u64::from(bound) {
        return false;
    }
    let mut rest = total;
    for i in (0..n).rev() {
        let take = rest.min(u64::from(bound)) as u32;
        exps[i] = take;
        rest -= u64::from(take);
    }
    rest == 0
}

/// Advances to the lexicographic successor among bounded fixed-total vectors.
fn next_composition(exps: &mut [u32], bound: u32) -> bool {
    let n = exps.len();
    // Find the rightmost position (excluding the last) that can give one unit
    // to the suffix; equivalently perform odometer-style increment on the
    // leftmost coordinates.
    let suffix_capacity = |exps: &[u32], from: usize| -> u64 {
        (from..exps.len()).map(|_| u64::from(bound)).sum()
    };
    for i in (0..n.saturating_sub(1)).rev() {
        let tail: u64 = exps[i + 1..].iter().map(|&e| u64::from(e)).sum();
        if tail > 0 && exps[i] < bound {
            exps[i] += 1;
            let remaining = tail - 1;
            if remaining <= suffix_capacity(exps, i + 1) {
                let mut rest = remaining;
                for j in (i + 1..n).rev() {
                    let take = rest.min(u64::from(bound)) as u32;
                    exps[j] = take;
                    rest -= u64::from(take);
                }
                if rest == 0 {
                    return true;
                }
            }
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GroundField;
    use crate::order::MonomialOrder;
    use crate::poly::VarSet;
    use crate::text::parse;

    fn ring_mod(
        p: u32,
        names: &[&str],
        gens: &[&str],
    ) -> (GroundField, VarSet, Arc<PresentedRing>) {
        let field = GroundField::new(p).unwrap();
        let vars = VarSet::new(names.to_vec()).unwrap();
        let gens: Vec<Polynomial> = gens
            .iter()
            .map(|s| parse(s, field, &vars).unwrap())
            .collect();
        let ideal = Ideal::new(field, &vars, gens, MonomialOrder::grevlex()).unwrap();
        let ring = PresentedRing::new(ideal, &GbConfig::default()).unwrap();
        (field, vars, ring)
    }

    #[test]
    fn trace_normalization() {
        let (field, vars, _) = ring_mod(3, &["x", "y"], &[]);
        let f = parse("x^2*y^2", field, &vars).unwrap();
        assert_eq!(dual_trace(&f), Polynomial::one(field, &vars));
    }

    #[test]
    fn trace_exponent_arithmetic() {
        let (field, vars, _) = ring_mod(3, &["x", "y"], &[]);
        let f = parse("x^5*y^2", field, &vars).unwrap();
        assert_eq!(dual_trace(&f), parse("x", field, &vars).unwrap());
    }

    #[test]
    fn trace_kills_determinant_square() {
        let (field, vars, _) = ring_mod(3, &["a", "b", "c", "d"], &[]);
        let f2 = parse("a*d - b*c", field, &vars)
            .unwrap()
            .try_pow(2)
            .unwrap();
        assert!(dual_trace(&f2).is_zero());
    }

    #[test]
    fn decompose_examples() {
        let (field, vars, _) = ring_mod(3, &["x", "y"], &[]);
        let xp = parse("x^3", field, &vars).unwrap();
        let d = frobenius_decompose(&xp);
        let zero = Monomial::one(2);
        assert_eq!(d.component(&zero).unwrap(), &parse("x", field, &vars).unwrap());
        assert_eq!(d.components().count(), 1);

        let one = parse("1", field, &vars).unwrap();
        let d1 = frobenius_decompose(&one);
        assert_eq!(d1.component(&zero).unwrap(), &one);

        let g = parse("x^2*y^2 + x^3", field, &vars).unwrap();
        let dg = frobenius_decompose(&g);
        assert_eq!(
            dg.component(&Monomial::new(vec![2, 2])).unwrap(),
            &parse("1", field, &vars).unwrap()
        );
        assert_eq!(
            dg.component(&Monomial::new(vec![0, 0])).unwrap(),
            &parse("x", field, &vars).unwrap()
        );
        assert_eq!(dg.reassemble(), g);
    }

    #[test]
    fn apply_phi_exponent_filter() {
        let (field, vars, ring) = ring_mod(3, &["y"], &[]);
        let c = parse("y^2", field, &vars).unwrap();
        let phi = SplittingCandidate::new(c, ring);
        let y5 = parse("y^5", field, &vars).unwrap();
        assert!(phi.apply(&y5).is_zero());
        let y3 = parse("y^3", field, &vars).unwrap();
        assert_eq!(phi.apply(&y3), parse("y", field, &vars).unwrap());
    }

    #[test]
    fn monomial_premultiplier_splits_the_free_ring() {
        let (field, vars, ring) = ring_mod(3, &["x", "y"], &[]);
        let c = parse("x^2*y^2", field, &vars).unwrap();
        let phi = SplittingCandidate::new(c, ring);
        assert!(phi.is_splitting(&GbConfig::default()).unwrap().is_splitting());
    }

    #[test]
    fn unnormalized_witness_fails_with_reason() {
        let (field, vars, ring) = ring_mod(3, &["a", "b", "c", "d"], &["a*d - b*c"]);
        let f2 = parse("a*d - b*c", field, &vars)
            .unwrap()
            .try_pow(2)
            .unwrap();
        let phi = SplittingCandidate::new(f2, ring);
        match phi.is_splitting(&GbConfig::default()).unwrap() {
            SplittingCheck::NotUnital { value } => assert!(value.is_zero()),
            other => panic!("expected NotUnital, got {other:?}"),
        }
    }

    #[test]
    fn normalized_witness_splits_determinant_ring() {
        let (field, vars, ring) = ring_mod(3, &["a", "b", "c", "d"], &["a*d - b*c"]);
        let c = parse("b^2*c^2*(a*d - b*c)^2", field, &vars).unwrap();
        let phi = SplittingCandidate::new(c, ring);
        assert!(phi.is_splitting(&GbConfig::default()).unwrap().is_splitting());
    }

    #[test]
    fn compatibility_examples() {
        let cfg = GbConfig::default();
        // c = b^2 c^2 f^2, I = 0, J = (f)
        let (field, vars, free) = ring_mod(3, &["a", "b", "c", "d"], &[]);
        let f = parse("a*d - b*c", field, &vars).unwrap();
        let c = parse("b^2*c^2", field, &vars).unwrap().try_mul(&f.try_pow(2).unwrap()).unwrap();
        let phi = SplittingCandidate::new(c, free.clone());
        let j = Ideal::new(field, &vars, vec![f], MonomialOrder::grevlex()).unwrap();
        assert!(phi.compatibly_splits(&j, &cfg).unwrap());

        // c = x^2 y^2 splits (x) but not (x + y) at p = 3
        let (field2, vars2, free2) = ring_mod(3, &["x", "y"], &[]);
        let c2 = parse("x^2*y^2", field2, &vars2).unwrap();
        let phi2 = SplittingCandidate::new(c2, free2);
        let jx = Ideal::new(
            field2,
            &vars2,
            vec![parse("x", field2, &vars2).unwrap()],
            MonomialOrder::grevlex(),
        )
        .unwrap();
        assert!(phi2.compatibly_splits(&jx, &cfg).unwrap());
        let jxy = Ideal::new(
            field2,
            &vars2,
            vec![parse("x + y", field2, &vars2).unwrap()],
            MonomialOrder::grevlex(),
        )
        .unwrap();
        assert!(!phi2.compatibly_splits(&jxy, &cfg).unwrap());
    }

    #[test]
    fn normalize_finds_square_multiplier_for_symmetric_det() {
        let (field, vars, ring) = ring_mod(3, &["y11", "y12", "y22"], &["y11*y22 - y12^2"]);
        let f2 = parse("y11*y22 - y12^2", field, &vars)
            .unwrap()
            .try_pow(2)
            .unwrap();
        match normalize(&f2, &ring, &GbConfig::default()).unwrap() {
            NormalizeOutcome::Normalized {
                multiplier, scalar, candidate,
            } => {
                assert_eq!(multiplier, Monomial::new(vec![0, 2, 0]));
                assert_eq!(scalar, 1);
                assert!(candidate.is_normalized());
            }
            NormalizeOutcome::NotFound => panic!("expected a normalizer"),
        }
    }

    #[test]
    fn normalize_finds_off_diagonal_multiplier_for_generic_det() {
        let (field, vars, ring) = ring_mod(3, &["a", "b", "c", "d"], &["a*d - b*c"]);
        let f2 = parse("a*d - b*c", field, &vars)
            .unwrap()
            .try_pow(2)
            .unwrap();
        match normalize(&f2, &ring, &GbConfig::default()).unwrap() {
            NormalizeOutcome::Normalized {
                multiplier, scalar, ..
            } => {
                assert_eq!(multiplier, Monomial::new(vec![0, 2, 2, 0]));
                assert_eq!(scalar, 1);
            }
            NormalizeOutcome::NotFound => panic!("expected a normalizer"),
        }
    }

    #[test]
    fn normalize_is_identity_on_normalized_input() {
        let (field, vars, ring) = ring_mod(3, &["x", "y"], &[]);
        let c = parse("x^2*y^2", field, &vars).unwrap();
        match normalize(&c, &ring, &GbConfig::default()).unwrap() {
            NormalizeOutcome::Normalized {
                multiplier, scalar, ..
            } => {
                assert!(multiplier.is_one());
                assert_eq!(scalar, 1);
            }
            NormalizeOutcome::NotFound => panic!("expected a normalizer"),
        }
    }

    #[test]
    fn normalize_rejects_bracketed_premultiplier() {
        let (field, vars, ring) = ring_mod(3, &["x", "y"], &[]);
        let c = parse("x^3*y", field, &vars).unwrap();
        assert!(matches!(
            normalize(&c, &ring, &GbConfig::default()),
            Err(CartierError::InBracketMax)
        ));
    }

    #[test]
    fn composition_enumeration_is_ascending_lex() {
        let mut exps = vec![0u32; 3];
        assert!(first_composition(&mut exps, 2, 2));
        let mut seen = vec![exps.clone()];
        while next_composition(&mut exps, 2) {
            seen.push(exps.clone());
        }
        assert_eq!(
            seen,
            vec![
                vec![0, 0, 2],
                vec![0, 1, 1],
                vec![0, 2, 0],
                vec![1, 0, 1],
                vec![1, 1, 0],
                vec![2, 0, 0],
            ]
        );
    }
}
