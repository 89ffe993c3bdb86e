//! Chart algebras of the double cover: `S_i = (A/I)[1/p_i][u_i]` with
//! `u_i^2 = p_i`, a free module with basis {1, u_i} over the localization.
//! The lift of a normalized base splitting is forced on the u-component by
//! p^{-1}-linearity:
//!
//! `psi_i(a*u_i + b) = (u_i/p_i) * phi(a * p_i^{(p+1)/2}) + phi(b)`.

use std::sync::Arc;

use rand::Rng;
use rand_chacha::ChaCha20Rng;

use crate::cartier::SplittingCandidate;
use crate::poly::Polynomial;
use crate::sample::random_polynomial;
use crate::text;

use super::check::{SampleBounds, SplitOperator};
use super::localized::{phi_localized, LocalizedElement, LocalizedRing};
use super::{ChartAtlas, CoverError};

/// One chart of the atlas, with its localization at p_i.
#[derive(Debug, Clone)]
pub struct ChartRing {
    atlas: Arc<ChartAtlas>,
    chart: usize,
    loc: Arc<LocalizedRing>,
}

/// `a * u_i + b` with localized coefficients; the representation is unique.
#[derive(Debug, Clone)]
pub struct ChartElement {
    pub a: LocalizedElement,
    pub b: LocalizedElement,
}

impl ChartRing {
    pub fn new(atlas: Arc<ChartAtlas>, chart: usize) -> Result<Self, CoverError> {
        let p_i = atlas.p(chart).clone();
        let loc = LocalizedRing::new(atlas.ring().clone(), p_i)
            .map_err(|_| CoverError::EmptyChart { index: chart })?;
        Ok(ChartRing { atlas, chart, loc })
    }

    pub fn atlas(&self) -> &Arc<ChartAtlas> {
        &self.atlas
    }

    pub fn chart(&self) -> usize {
        self.chart
    }

    pub fn loc(&self) -> &Arc<LocalizedRing> {
        &self.loc
    }

    pub fn p(&self) -> &Polynomial {
        self.atlas.p(self.chart)
    }

    pub fn from_parts(&self, a: LocalizedElement, b: LocalizedElement) -> ChartElement {
        ChartElement { a, b }
    }

    pub fn zero(&self) -> ChartElement {
        ChartElement {
            a: self.loc.zero(),
            b: self.loc.zero(),
        }
    }

    pub fn one(&self) -> ChartElement {
        ChartElement {
            a: self.loc.zero(),
            b: self.loc.one(),
        }
    }

    /// The generator u_i.
    pub fn u(&self) -> ChartElement {
        ChartElement {
            a: self.loc.one(),
            b: self.loc.zero(),
        }
    }

    pub fn add(&self, x: &ChartElement, y: &ChartElement) -> ChartElement {
        ChartElement {
            a: self.loc.add(&x.a, &y.a),
            b: self.loc.add(&x.b, &y.b),
        }
    }

    /// `(a*u + b)(a'*u + b') = (a*b' + a'*b)*u + (a*a'*p_i + b*b')`.
    pub fn mul(&self, x: &ChartElement, y: &ChartElement) -> ChartElement {
        let cross = self
            .loc
            .add(&self.loc.mul(&x.a, &y.b), &self.loc.mul(&y.a, &x.b));
        let aa = self.loc.mul(&x.a, &y.a);
        let aap = self.loc.mul(&aa, &self.loc.from_poly(self.p()));
        ChartElement {
            a: cross,
            b: self.loc.add(&aap, &self.loc.mul(&x.b, &y.b)),
        }
    }

    pub fn pow(&self, x: &ChartElement, e: u32) -> ChartElement {
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

    pub fn eq(&self, x: &ChartElement, y: &ChartElement) -> bool {
        self.loc.eq(&x.a, &y.a) && self.loc.eq(&x.b, &y.b)
    }

    pub fn describe(&self, x: &ChartElement) -> String {
        format!(
            "({})/d^{} * u + ({})/d^{}",
            text::print(&x.a.num),
            x.a.k,
            text::print(&x.b.num),
            x.b.k
        )
    }
}

/// A lifted splitting on one chart algebra.
#[derive(Debug, Clone)]
pub struct ChartLift {
    phi: SplittingCandidate,
    ring: ChartRing,
    half: u32,
}

/// Builds the chart lift. Requires odd characteristic, a normalized base
/// splitting over the atlas ring, and a nonempty chart.
pub fn chart_lift(
    phi: &SplittingCandidate,
    atlas: &Arc<ChartAtlas>,
    chart: usize,
) -> Result<ChartLift, CoverError> {
    let p = phi.p();
    if p == 2 {
        return Err(CoverError::CharTwo);
    }
    if !phi.is_normalized() {
        return Err(CoverError::NotNormalized);
    }
    if !Arc::ptr_eq(phi.ring(), atlas.ring())
        && phi.ideal().generators() != atlas.ring().ideal().generators()
    {
        return Err(CoverError::RingMismatch);
    }
    let ring = ChartRing::new(atlas.clone(), chart)?;
    Ok(ChartLift {
        phi: phi.clone(),
        ring,
        half: (p + 1) / 2,
    })
}

impl ChartLift {
    pub fn ring(&self) -> &ChartRing {
        &self.ring
    }

    pub fn phi(&self) -> &SplittingCandidate {
        &self.phi
    }

    pub fn apply(&self, x: &ChartElement) -> ChartElement {
        let loc = self.ring.loc();
        let boost = self.ring.p().try_pow(u64::from(self.half)).expect("power");
        let scaled = LocalizedElement {
            num: x.a.num.try_mul(&boost).expect("same ring"),
            k: x.a.k,
        };
        let fa = phi_localized(&self.phi, loc, &scaled);
        ChartElement {
            a: loc.shift_down(&fa, 1),
            b: phi_localized(&self.phi, loc, &x.b),
        }
    }
}

impl SplitOperator for ChartLift {
    type Elem = ChartElement;

    fn p(&self) -> u32 {
        self.phi.p()
    }

    fn one(&self) -> ChartElement {
        self.ring.one()
    }

    fn apply(&self, e: &ChartElement) -> Result<ChartElement, CoverError> {
        Ok(ChartLift::apply(self, e))
    }

    fn mul(&self, a: &ChartElement, b: &ChartElement) -> ChartElement {
        self.ring.mul(a, b)
    }

    fn pow(&self, a: &ChartElement, e: u32) -> ChartElement {
        self.ring.pow(a, e)
    }

    fn eq(&self, a: &ChartElement, b: &ChartElement) -> bool {
        self.ring.eq(a, b)
    }

    fn sample(&self, rng: &mut ChaCha20Rng, bounds: &SampleBounds) -> ChartElement {
        let base = self.ring.atlas().ring();
        let field = base.field();
        let vars = base.vars().clone();
        let part = |rng: &mut ChaCha20Rng| {
            let num = random_polynomial(rng, field, &vars, bounds.max_degree, bounds.max_terms);
            let k = rng.gen_range(0..=bounds.max_loc_power);
            self.ring.loc().fraction(&num, k)
        };
        ChartElement {
            a: part(rng),
            b: part(rng),
        }
    }

    fn describe(&self, e: &ChartElement) -> String {
        self.ring.describe(e)
    }
}

#[derive(Debug, Clone)]
pub enum Overlap {
    Agree,
    Disagree { witness: String },
}

impl Overlap {
    pub fn agreed(&self) -> bool {
        matches!(self, Overlap::Agree)
    }
}

/// Compares the two chart lifts on the overlap: `psi_i(u_j)` computed in
/// chart i (where `u_j = u_i * p_{i,j} / p_i`) against `psi_j(u_j)`
/// re-expressed in chart-i coordinates. Both u_i-coefficients are fractions
/// over powers of p_i and p_i*p_j; agreement is the cross-multiplied
/// normal-form test.
pub fn overlap_agreement(
    phi: &SplittingCandidate,
    atlas: &Arc<ChartAtlas>,
    i: usize,
    j: usize,
) -> Result<Overlap, CoverError> {
    let lift_i = chart_lift(phi, atlas, i)?;
    // chart j must be nonempty as well
    let _ = ChartRing::new(atlas.clone(), j)?;

    let ring_i = lift_i.ring();
    let loc_i = ring_i.loc();
    let base = atlas.ring();

    // u_j in chart-i coordinates: a = p_{i,j} / p_i, b = 0.
    let u_j_in_i = ring_i.from_parts(loc_i.fraction(atlas.pairing(i, j), 1), loc_i.zero());
    let lhs = lift_i.apply(&u_j_in_i);
    if !loc_i.is_zero(&lhs.b) {
        return Ok(Overlap::Disagree {
            witness: format!("unexpected constant part {}", text::print(&lhs.b.num)),
        });
    }

    // psi_j(u_j) = (u_j / p_j) * phi(p_j^{(p+1)/2}); substituting
    // u_j = u_i * p_{i,j} / p_i gives the u_i-coefficient
    // p_{i,j} * phi(p_j^{(p+1)/2}) / (p_i * p_j).
    let p = phi.p();
    let half = u64::from((p + 1) / 2);
    let p_j = atlas.p(j);
    let rhs_num = atlas
        .pairing(i, j)
        .try_mul(&phi.apply(&p_j.try_pow(half)?))?;
    let rhs_den = atlas.p(i).try_mul(p_j)?;

    // lhs.a = num / p_i^k; equality iff num * (p_i p_j) = rhs_num * p_i^k mod I.
    let cross_l = lhs.a.num.try_mul(&rhs_den)?;
    let cross_r = rhs_num.try_mul(&atlas.p(i).try_pow(u64::from(lhs.a.k))?)?;
    if base.eq_mod(&cross_l, &cross_r) {
        Ok(Overlap::Agree)
    } else {
        Ok(Overlap::Disagree {
            witness: format!(
                "u-coefficients differ: {} vs {} over p_i^{} and p_i*p_j",
                text::print(&lhs.a.num),
                text::print(&rhs_num),
                lhs.a.k
            ),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cartier::normalize;
    use crate::cartier::NormalizeOutcome;
    use crate::field::GroundField;
    use crate::groebner::{GbConfig, Ideal, PresentedRing};
    use crate::order::MonomialOrder;
    use crate::poly::VarSet;
    use crate::text::parse;

    /// One-variable toy atlas: base k[y], single chart with p_1 = y.
    fn toy_atlas() -> (GroundField, VarSet, Arc<ChartAtlas>) {
        let field = GroundField::new(3).unwrap();
        let vars = VarSet::new(["y"]).unwrap();
        let ideal = Ideal::zero(field, &vars, MonomialOrder::grevlex());
        let ring = PresentedRing::new(ideal, &GbConfig::default()).unwrap();
        let y = parse("y", field, &vars).unwrap();
        let atlas = ChartAtlas::new(ring, vec![vec![0]], vec![vec![y]]).unwrap();
        (field, vars, atlas)
    }

    fn toy_phi(field: GroundField, vars: &VarSet, atlas: &Arc<ChartAtlas>) -> SplittingCandidate {
        let c = parse("y^2", field, vars).unwrap();
        SplittingCandidate::new_checked(c, atlas.ring().clone(), &GbConfig::default())
            .unwrap()
            .unwrap()
    }

    #[test]
    fn unit_maps_to_unit() {
        let (field, vars, atlas) = toy_atlas();
        let phi = toy_phi(field, &vars, &atlas);
        let lift = chart_lift(&phi, &atlas, 0).unwrap();
        let one = lift.ring().one();
        assert!(lift.ring().eq(&lift.apply(&one), &one));
    }

    #[test]
    fn toy_lift_values() {
        // psi(u) = (u/y) trace(y^2 * y^2) = 0 and psi(y*u) = u at p = 3.
        let (field, vars, atlas) = toy_atlas();
        let phi = toy_phi(field, &vars, &atlas);
        let lift = chart_lift(&phi, &atlas, 0).unwrap();
        let ring = lift.ring();

        let u = ring.u();
        assert!(ring.eq(&lift.apply(&u), &ring.zero()));

        let y = ring.loc().from_poly(&parse("y", field, &vars).unwrap());
        let yu = ring.from_parts(y, ring.loc().zero());
        assert!(ring.eq(&lift.apply(&yu), &u));
    }

    #[test]
    fn axiom_instance_u_cubed() {
        // psi(u^p * 1) = u * psi(1) = u
        let (field, vars, atlas) = toy_atlas();
        let phi = toy_phi(field, &vars, &atlas);
        let lift = chart_lift(&phi, &atlas, 0).unwrap();
        let ring = lift.ring();
        let u3 = ring.pow(&ring.u(), 3);
        assert!(ring.eq(&lift.apply(&u3), &ring.u()));
    }

    #[test]
    fn determinism_on_rescaled_representatives() {
        let (field, vars, atlas) = toy_atlas();
        let phi = toy_phi(field, &vars, &atlas);
        let lift = chart_lift(&phi, &atlas, 0).unwrap();
        let ring = lift.ring();
        let a = ring.loc().fraction(&parse("y^2 + 1", field, &vars).unwrap(), 1);
        let b = ring.loc().fraction(&parse("y + 2", field, &vars).unwrap(), 0);
        let e = ring.from_parts(a.clone(), b.clone());
        let e2 = ring.from_parts(ring.loc().rescale(&a, 2), ring.loc().rescale(&b, 1));
        assert!(ring.eq(&e, &e2));
        assert!(ring.eq(&lift.apply(&e), &lift.apply(&e2)));
    }

    #[test]
    fn smallest_symmetric_atlas_overlaps_agree() {
        // base k[y11,y12,y22]/(y12^2 - y11*y22), charts y11 and y22,
        // pairing y12; phi from the normalized Fedder witness.
        let field = GroundField::new(3).unwrap();
        let pres = crate::invariants::presentation_so(field, 1, 2, &GbConfig::default()).unwrap();
        let atlas = ChartAtlas::from_so(&pres).unwrap();
        let f2 = pres.ring.ideal().generators()[0].try_pow(2).unwrap();
        let phi = match normalize(&f2, &pres.ring, &GbConfig::default()).unwrap() {
            NormalizeOutcome::Normalized { candidate, .. } => candidate,
            NormalizeOutcome::NotFound => panic!("expected a normalizer"),
        };
        for i in 0..atlas.len() {
            for j in 0..atlas.len() {
                let out = overlap_agreement(&phi, &atlas, i, j).unwrap();
                assert!(out.agreed(), "charts {i},{j}: {out:?}");
            }
        }
    }

    #[test]
    fn empty_chart_is_rejected() {
        let field = GroundField::new(3).unwrap();
        let vars = VarSet::new(["y"]).unwrap();
        let y = parse("y", field, &vars).unwrap();
        let ideal = Ideal::new(field, &vars, vec![y.clone()], MonomialOrder::grevlex()).unwrap();
        let ring = PresentedRing::new(ideal, &GbConfig::default()).unwrap();
        let atlas = ChartAtlas::new(ring, vec![vec![0]], vec![vec![y]]).unwrap();
        assert!(matches!(
            ChartRing::new(atlas, 0),
            Err(CoverError::EmptyChart { index: 0 })
        ));
    }
}
