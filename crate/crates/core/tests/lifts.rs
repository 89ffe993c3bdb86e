//! End-to-end lift suites on the desk-scale families: every constructed lift
//! passes the seeded splitting-axiom check, chart lifts agree on overlaps,
//! and the hyperbolic lift respects the grading.

use std::sync::Arc;

use frobsplit::cartier::{normalize, NormalizeOutcome, SplittingCandidate};
use frobsplit::covers::{
    chart_lift, lift_hyperbolic, lift_hypersurface, overlap_agreement, splitting_axiom_check,
    ChartAtlas, HyperbolicCover, QuadraticCover, SampleBounds,
};
use frobsplit::field::GroundField;
use frobsplit::groebner::{GbConfig, Ideal, PresentedRing};
use frobsplit::invariants::presentation_so;
use frobsplit::order::MonomialOrder;
use frobsplit::poly::{Polynomial, VarSet};
use frobsplit::text::parse;

fn free_ring(p: u32, names: &[&str]) -> Arc<PresentedRing> {
    let field = GroundField::new(p).unwrap();
    let vars = VarSet::new(names.to_vec()).unwrap();
    PresentedRing::new(
        Ideal::zero(field, &vars, MonomialOrder::grevlex()),
        &GbConfig::default(),
    )
    .unwrap()
}

fn monomial_splitting(ring: &Arc<PresentedRing>) -> SplittingCandidate {
    let p = ring.field().p();
    let one = Polynomial::one(ring.field(), ring.vars());
    let c = (0..ring.vars().len()).fold(one, |acc, i| {
        acc.try_mul(
            &Polynomial::var(ring.field(), ring.vars(), i)
                .try_pow(u64::from(p - 1))
                .unwrap(),
        )
        .unwrap()
    });
    SplittingCandidate::new_checked(c, ring.clone(), &GbConfig::default())
        .unwrap()
        .unwrap()
}

#[test]
fn hypersurface_lift_axioms_hold() {
    for p in [3u32, 5] {
        let ring = free_ring(p, &["y11", "y12", "y22"]);
        let field = ring.field();
        let f = parse("y11*y22 - y12^2", field, ring.vars()).unwrap();
        let cover = QuadraticCover::new(ring.clone(), f.clone()).unwrap();
        let mu = parse("y12", field, ring.vars())
            .unwrap()
            .try_pow(u64::from(p - 1))
            .unwrap();
        let c = mu.try_mul(&f.try_pow(u64::from(p - 1)).unwrap()).unwrap();
        let phi = SplittingCandidate::new_checked(c, ring, &GbConfig::default())
            .unwrap()
            .unwrap();
        let lift = lift_hypersurface(&phi, &cover, &GbConfig::default()).unwrap();
        let report = splitting_axiom_check(&lift, 100, 7, &SampleBounds::for_p(p));
        assert!(report.passed(), "p={p}: {:?}", report.failure);
    }
}

#[test]
fn hyperbolic_lift_axioms_hold() {
    for p in [3u32, 5] {
        let ring = free_ring(p, &["y11", "y12", "y21", "y22"]);
        let field = ring.field();
        let f = parse("y11*y22 - y12*y21", field, ring.vars()).unwrap();
        let cover = HyperbolicCover::new(ring.clone(), f).unwrap();
        let phi = monomial_splitting(&ring);
        let lift = lift_hyperbolic(&phi, &cover).unwrap();
        let report = splitting_axiom_check(&lift, 100, 8, &SampleBounds::for_p(p));
        assert!(report.passed(), "p={p}: {:?}", report.failure);
    }
}

#[test]
fn chart_lift_axioms_hold_on_smallest_atlas() {
    let field = GroundField::new(3).unwrap();
    let pres = presentation_so(field, 1, 2, &GbConfig::default()).unwrap();
    let atlas = ChartAtlas::from_so(&pres).unwrap();
    let f2 = pres.ring.ideal().generators()[0].try_pow(2).unwrap();
    let phi = match normalize(&f2, &pres.ring, &GbConfig::default()).unwrap() {
        NormalizeOutcome::Normalized { candidate, .. } => candidate,
        NormalizeOutcome::NotFound => panic!("expected a normalizer"),
    };
    for i in 0..atlas.len() {
        let lift = chart_lift(&phi, &atlas, i).unwrap();
        let report = splitting_axiom_check(&lift, 100, 9, &SampleBounds::for_p(3));
        assert!(report.passed(), "chart {i}: {:?}", report.failure);
    }
}

#[test]
fn chart_lift_and_overlaps_on_rank_two_atlas() {
    // base: symmetric 3x3 modulo its determinant; splitting from the
    // all-variables multiplier on the squared determinant.
    let field = GroundField::new(3).unwrap();
    let pres = presentation_so(field, 2, 3, &GbConfig::default()).unwrap();
    let atlas = ChartAtlas::from_so(&pres).unwrap();
    let f = pres.ring.ideal().generators()[0].clone();
    let vars = pres.ring.vars().clone();
    let mu = parse("y11*y12*y13*y22*y23*y33", field, &vars).unwrap();
    let c = mu.try_mul(&f.try_pow(2).unwrap()).unwrap();
    let phi = SplittingCandidate::new_checked(c, pres.ring.clone(), &GbConfig::default())
        .unwrap()
        .unwrap();

    for i in 0..atlas.len() {
        let lift = chart_lift(&phi, &atlas, i).unwrap();
        let report = splitting_axiom_check(&lift, 25, 10, &SampleBounds::for_p(3));
        assert!(report.passed(), "chart {i}: {:?}", report.failure);
    }
    for i in 0..atlas.len() {
        for j in 0..atlas.len() {
            let out = overlap_agreement(&phi, &atlas, i, j).unwrap();
            assert!(out.agreed(), "charts {i},{j}: {out:?}");
        }
    }
}
