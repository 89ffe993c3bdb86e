//! Derived ideal operations: membership, intersection via elimination, colon
//! ideals, and exact division by a single polynomial.

use crate::order::{MonomialOrder, OrderKind};
use crate::poly::{Polynomial, VarSet};

use super::buchberger::{buchberger, normal_form, GroebnerBasis};
use super::{GbConfig, GbError, Ideal};

/// Membership test through the normal form.
pub fn ideal_member(f: &Polynomial, gb: &GroebnerBasis) -> bool {
    normal_form(f, gb).is_zero()
}

fn fresh_aux_name(vars: &VarSet) -> String {
    let mut name = "t_aux".to_string();
    let mut k = 0u32;
    while vars.index_of(&name).is_some() {
        k += 1;
        name = format!("t_aux{k}");
    }
    name
}

/// Ideal intersection by elimination of an auxiliary variable: eliminate `t`
/// from `t*I + (1-t)*J` with a lex order ranking `t` above everything else.
pub fn intersect(a: &Ideal, b: &Ideal, cfg: &GbConfig) -> Result<Ideal, GbError> {
    assert!(a.vars() == b.vars() && a.field() == b.field(), "ambient mismatch");
    if a.is_zero() || b.is_zero() {
        return Ok(Ideal::zero(a.field(), a.vars(), a.order().clone()));
    }
    let field = a.field();
    let aux = fresh_aux_name(a.vars());
    let big = a.vars().extended([aux.as_str()])?;
    let t_idx = big.len() - 1;
    let t = Polynomial::var(field, &big, t_idx);
    let one_minus_t = &Polynomial::one(field, &big) - &t;

    let mut gens = Vec::new();
    for g in a.generators() {
        gens.push(&g.extend_vars(&big)? * &t);
    }
    for g in b.generators() {
        gens.push(&g.extend_vars(&big)? * &one_minus_t);
    }

    // lex with t most significant: basis elements free of t cut out the
    // intersection.
    let mut perm = vec![t_idx];
    perm.extend(0..t_idx);
    let elim_order = MonomialOrder::with_perm(OrderKind::Lex, perm);
    let ideal = Ideal::new(field, &big, gens, elim_order)?;
    let gb = buchberger(&ideal, cfg)?;

    let survivors: Vec<Polynomial> = gb
        .elements()
        .iter()
        .filter(|g| g.degree_in(t_idx) == 0)
        .map(|g| g.restrict_vars(a.vars()))
        .collect::<Result<_, _>>()?;
    Ok(Ideal::new(field, a.vars(), survivors, a.order().clone())?)
}

/// The quotient `f / g` when `g` divides `f` exactly; `None` otherwise
/// (equivalently, the remainder of division by `{g}` is nonzero).
pub fn exact_div(f: &Polynomial, g: &Polynomial) -> Option<Polynomial> {
    assert!(!g.is_zero(), "division by the zero polynomial");
    let order = MonomialOrder::grevlex();
    let field = f.field();
    let g_lm = g
        .terms()
        .map(|(m, _)| m.clone())
        .max_by(|a, b| order.cmp(a, b))?;
    let g_lc = g.coeff(&g_lm);
    let g_lc_inv = field.inv(g_lc);

    let mut quotient = Polynomial::zero(field, f.vars());
    let mut rem = f.clone();
    while !rem.is_zero() {
        let lm = rem
            .terms()
            .map(|(m, _)| m.clone())
            .max_by(|a, b| order.cmp(a, b))
            .unwrap();
        let shift = g_lm.div_into(&lm)?;
        let c = field.mul(rem.coeff(&lm), g_lc_inv);
        let piece = Polynomial::from_terms(field, f.vars(), [(shift, i64::from(c))]);
        quotient = &quotient + &piece;
        rem = &rem - &(&piece * g);
    }
    Some(quotient)
}

/// The colon ideal `(a : b)`, computed as the intersection over generators
/// `g` of `b` of `(a ∩ (g)) / g`.
pub fn colon(a: &Ideal, b: &Ideal, cfg: &GbConfig) -> Result<Ideal, GbError> {
    assert!(a.vars() == b.vars() && a.field() == b.field(), "ambient mismatch");
    let field = a.field();
    if b.is_zero() {
        // Everything multiplies the zero ideal into `a`.
        let one = Polynomial::one(field, a.vars());
        return Ok(Ideal::new(field, a.vars(), vec![one], a.order().clone())?);
    }
    let mut acc: Option<Ideal> = None;
    for g in b.generators() {
        let single = Ideal::new(field, a.vars(), vec![g.clone()], a.order().clone())?;
        let meet = intersect(a, &single, cfg)?;
        let quotients: Vec<Polynomial> = meet
            .generators()
            .iter()
            .map(|h| exact_div(h, g).expect("element of (g) divides by g"))
            .collect();
        let part = Ideal::new(field, a.vars(), quotients, a.order().clone())?;
        acc = Some(match acc {
            None => part,
            Some(prev) => intersect(&prev, &part, cfg)?,
        });
    }
    Ok(acc.expect("nonzero ideal has generators"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::GroundField;
    use crate::groebner::ideals_equal;
    use crate::text::parse;

    fn setup(p: u32, names: &[&str], gens: &[&str]) -> Ideal {
        let field = GroundField::new(p).unwrap();
        let vars = VarSet::new(names.to_vec()).unwrap();
        let gens = gens
            .iter()
            .map(|s| parse(s, field, &vars).unwrap())
            .collect();
        Ideal::new(field, &vars, gens, MonomialOrder::grevlex()).unwrap()
    }

    #[test]
    fn membership_basics() {
        let ideal = setup(3, &["x", "y"], &["x"]);
        let gb = buchberger(&ideal, &GbConfig::default()).unwrap();
        let f = parse("x^2*y", ideal.field(), ideal.vars()).unwrap();
        assert!(ideal_member(&f, &gb));
        let g = parse("y", ideal.field(), ideal.vars()).unwrap();
        assert!(!ideal_member(&g, &gb));
    }

    #[test]
    fn intersection_of_coordinate_ideals() {
        let a = setup(3, &["x", "y"], &["x"]);
        let b = setup(3, &["x", "y"], &["y"]);
        let meet = intersect(&a, &b, &GbConfig::default()).unwrap();
        let expect = setup(3, &["x", "y"], &["x*y"]);
        assert!(ideals_equal(&meet, &expect, &GbConfig::default()).unwrap());
    }

    #[test]
    fn exact_division() {
        let field = GroundField::new(5).unwrap();
        let vars = VarSet::new(["x", "y"]).unwrap();
        let f = parse("x^2 - y^2", field, &vars).unwrap();
        let g = parse("x + y", field, &vars).unwrap();
        let q = exact_div(&f, &g).unwrap();
        assert_eq!(q, parse("x - y", field, &vars).unwrap());
        let h = parse("x^2 + y", field, &vars).unwrap();
        assert!(exact_div(&h, &g).is_none());
    }

    #[test]
    fn colon_of_bracket_power_is_power_drop() {
        // (f^3 : f) = (f^2) for f = ad - bc over F_3
        let names = ["a", "b", "c", "d"];
        let field = GroundField::new(3).unwrap();
        let vars = VarSet::new(names.to_vec()).unwrap();
        let f = parse("a*d - b*c", field, &vars).unwrap();
        let cubes = Ideal::new(
            field,
            &vars,
            vec![f.try_pow(3).unwrap()],
            MonomialOrder::grevlex(),
        )
        .unwrap();
        let lin = Ideal::new(field, &vars, vec![f.clone()], MonomialOrder::grevlex()).unwrap();
        let q = colon(&cubes, &lin, &GbConfig::default()).unwrap();
        let expect = Ideal::new(
            field,
            &vars,
            vec![f.try_pow(2).unwrap()],
            MonomialOrder::grevlex(),
        )
        .unwrap();
        assert!(ideals_equal(&q, &expect, &GbConfig::default()).unwrap());
    }

    #[test]
    fn colon_by_zero_is_unit_ideal() {
        let a = setup(3, &["x", "y"], &["x"]);
        let zero = Ideal::zero(a.field(), a.vars(), a.order().clone());
        let q = colon(&a, &zero, &GbConfig::default()).unwrap();
        let gb = buchberger(&q, &GbConfig::default()).unwrap();
        let one = parse("1", a.field(), a.vars()).unwrap();
        assert!(ideal_member(&one, &gb));
    }
}
