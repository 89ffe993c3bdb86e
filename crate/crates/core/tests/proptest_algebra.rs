//! Property tests over generated polynomials: canonical-form arithmetic laws,
//! the print/parse round trip, and trace linearity under generated inputs.

use proptest::prelude::*;

use frobsplit::cartier::dual_trace;
use frobsplit::field::GroundField;
use frobsplit::poly::{Monomial, Polynomial, VarSet};
use frobsplit::text::{parse, print};

fn vars() -> VarSet {
    VarSet::new(["x", "y", "z"]).unwrap()
}

prop_compose! {
    fn arb_poly(p: u32)(terms in proptest::collection::vec(
        (proptest::collection::vec(0u32..5, 3), 1i64..7), 0..6))
        -> Polynomial
    {
        let field = GroundField::new(p).unwrap();
        let vs = vars();
        Polynomial::from_terms(field, &vs,
            terms.into_iter().map(|(e, c)| (Monomial::new(e), c)))
    }
}

proptest! {
    #[test]
    fn sub_then_add_restores(f in arb_poly(5), g in arb_poly(5)) {
        let diff = f.try_sub(&g).unwrap();
        prop_assert_eq!(diff.try_add(&g).unwrap(), f);
    }

    #[test]
    fn multiplication_distributes(f in arb_poly(3), g in arb_poly(3), h in arb_poly(3)) {
        let lhs = f.try_mul(&g.try_add(&h).unwrap()).unwrap();
        let rhs = f.try_mul(&g).unwrap().try_add(&f.try_mul(&h).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn print_parse_identity(f in arb_poly(7)) {
        let field = GroundField::new(7).unwrap();
        prop_assert_eq!(parse(&print(&f), field, &vars()).unwrap(), f);
    }

    #[test]
    fn trace_of_p_th_powers_recovers_the_root(g in arb_poly(3)) {
        // trace(g^p * m) = g * trace(m) with m the all-(p-1) monomial
        let field = GroundField::new(3).unwrap();
        let vs = vars();
        let m = Polynomial::from_terms(field, &vs, [(Monomial::new(vec![2, 2, 2]), 1)]);
        let gp = g.try_pow(3).unwrap();
        let lhs = dual_trace(&gp.try_mul(&m).unwrap());
        prop_assert_eq!(lhs, g);
    }
}
