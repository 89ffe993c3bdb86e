//! Buchberger's algorithm with Gebauer-Moeller pair elimination and normal
//! selection. Output bases are reduced, so they are canonical for a fixed
//! order and the computation is reproducible across runs and platforms.

use std::cmp::Ordering;

use crate::field::GroundField;
use crate::order::MonomialOrder;
use crate::poly::{Monomial, PolyError, Polynomial, VarSet};

use super::{GbConfig, GbError, Ideal};

/// Term list sorted descending in the active order; leading term first.
#[derive(Debug, Clone)]
pub(crate) struct SortedPoly {
    pub terms: Vec<(Monomial, u32)>,
}

impl SortedPoly {
    pub fn from_polynomial(f: &Polynomial, order: &MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, u32)> = f.terms().map(|(m, c)| (m.clone(), c)).collect();
        terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        SortedPoly { terms }
    }

    pub fn into_polynomial(self, field: GroundField, vars: &VarSet) -> Polynomial {
        Polynomial::from_terms(
            field,
            vars,
            self.terms.into_iter().map(|(m, c)| (m, i64::from(c))),
        )
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn lc(&self) -> u32 {
        self.terms[0].1
    }

    pub fn make_monic(&mut self, field: GroundField) {
        let lc = self.lc();
        if lc != 1 {
            let inv = field.inv(lc);
            for (_, c) in &mut self.terms {
                *c = field.mul(*c, inv);
            }
        }
    }

    /// `self - c * x^shift * g`, merged in one pass.
    fn sub_scaled(
        &self,
        c: u32,
        shift: &Monomial,
        g: &SortedPoly,
        field: GroundField,
        order: &MonomialOrder,
    ) -> Result<SortedPoly, PolyError> {
        let mut out = Vec::with_capacity(self.terms.len() + g.terms.len());
        let mut i = 0;
        let mut j = 0;
        while i < self.terms.len() || j < g.terms.len() {
            if j >= g.terms.len() {
                out.push(self.terms[i].clone());
                i += 1;
                continue;
            }
            let gm = g.terms[j].0.try_mul(shift)?;
            let gc = field.neg(field.mul(c, g.terms[j].1));
            if i >= self.terms.len() {
                if gc != 0 {
                    out.push((gm, gc));
                }
                j += 1;
                continue;
            }
            match order.cmp(&self.terms[i].0, &gm) {
                Ordering::Greater => {
                    out.push(self.terms[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    if gc != 0 {
                        out.push((gm, gc));
                    }
                    j += 1;
                }
                Ordering::Equal => {
                    let s = field.add(self.terms[i].1, gc);
                    if s != 0 {
                        out.push((gm, s));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Ok(SortedPoly { terms: out })
    }
}

/// Fully reduces `f` against `basis`: no term of the result is divisible by
/// any basis leading monomial. Reducers are scanned in basis order, so the
/// result is deterministic (and unique when the basis is a Groebner basis).
pub(crate) fn reduce_full(
    f: SortedPoly,
    basis: &[SortedPoly],
    field: GroundField,
    order: &MonomialOrder,
) -> Result<SortedPoly, PolyError> {
    let mut rem: Vec<(Monomial, u32)> = Vec::new();
    let mut work = f;
    'outer: while !work.is_zero() {
        let (lm, lc) = work.terms[0].clone();
        for g in basis {
            if g.lm().divides(&lm) {
                let shift = g.lm().div_into(&lm).expect("divides");
                let c = field.mul(lc, field.inv(g.lc()));
                work = work.sub_scaled(c, &shift, g, field, order)?;
                continue 'outer;
            }
        }
        rem.push(work.terms.remove(0));
    }
    Ok(SortedPoly { terms: rem })
}

fn s_polynomial(
    f: &SortedPoly,
    g: &SortedPoly,
    field: GroundField,
    order: &MonomialOrder,
) -> Result<SortedPoly, PolyError> {
    let l = f.lm().lcm(g.lm());
    let uf = f.lm().div_into(&l).expect("lcm");
    let scaled_f = SortedPoly {
        terms: f
            .terms
            .iter()
            .map(|(m, c)| Ok((m.try_mul(&uf)?, field.mul(*c, field.inv(f.lc())))))
            .collect::<Result<_, PolyError>>()?,
    };
    let ug = g.lm().div_into(&l).expect("lcm");
    scaled_f.sub_scaled(field.inv(g.lc()), &ug, g, field, order)
}

#[derive(Debug, Clone)]
struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Gebauer-Moeller update: prunes the pending pair set and forms the new
/// pairs for `t` (the index of the just-added basis element).
fn update_pairs(
    basis: &[SortedPoly],
    pairs: &mut Vec<Pair>,
    t: usize,
) {
    let lm_t = basis[t].lm().clone();

    // New candidate pairs (i, t), i < t.
    let cand: Vec<Pair> = (0..t)
        .map(|i| Pair {
            i,
            j: t,
            lcm: basis[i].lm().lcm(&lm_t),
        })
        .collect();

    // Keep a candidate if its lcm is coprime-split (Buchberger 1) — those are
    // retained through the divisibility sieve and dropped at the end — or if
    // no other candidate's lcm properly divides it.
    let mut kept: Vec<Pair> = Vec::new();
    for (idx, p) in cand.iter().enumerate() {
        let coprime = basis[p.i].lm().coprime(&lm_t);
        if coprime {
            kept.push(p.clone());
            continue;
        }
        let dominated = cand.iter().enumerate().any(|(k, q)| {
            if k == idx {
                return false;
            }
            if !q.lcm.divides(&p.lcm) {
                return false;
            }
            if q.lcm != p.lcm {
                return true;
            }
            // Equal lcms: keep only the earliest candidate.
            k < idx
        });
        if !dominated {
            kept.push(p.clone());
        }
    }
    let new_pairs: Vec<Pair> = kept
        .into_iter()
        .filter(|p| !basis[p.i].lm().coprime(&lm_t))
        .collect();

    // Chain criterion on old pairs: drop (i, j) when LM(t) divides
    // lcm(i, j) strictly finer than both mixed lcms.
    pairs.retain(|p| {
        let div = lm_t.divides(&p.lcm);
        if !div {
            return true;
        }
        let l_it = basis[p.i].lm().lcm(&lm_t);
        let l_jt = basis[p.j].lm().lcm(&lm_t);
        l_it == p.lcm || l_jt == p.lcm
    });

    pairs.extend(new_pairs);
}

/// A reduced Groebner basis: monic, auto-reduced, every S-polynomial of basis
/// pairs reduces to zero. Elements are sorted ascending by leading monomial.
#[derive(Debug, Clone)]
pub struct GroebnerBasis {
    field: GroundField,
    vars: VarSet,
    order: MonomialOrder,
    elements: Vec<Polynomial>,
    leading: Vec<Monomial>,
}

impl GroebnerBasis {
    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn elements(&self) -> &[Polynomial] {
        &self.elements
    }

    pub fn leading_monomials(&self) -> &[Monomial] {
        &self.leading
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub(crate) fn sorted_elements(&self) -> Vec<SortedPoly> {
        self.elements
            .iter()
            .map(|g| SortedPoly::from_polynomial(g, &self.order))
            .collect()
    }
}

/// Computes the reduced Groebner basis of `ideal` in its declared order.
pub fn buchberger(ideal: &Ideal, cfg: &GbConfig) -> Result<GroebnerBasis, GbError> {
    let field = ideal.field();
    let order = ideal.order().clone();

    let mut basis: Vec<SortedPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // Seed with the interreduced generators, in a deterministic order.
    let mut seeds: Vec<SortedPoly> = ideal
        .generators()
        .iter()
        .map(|g| SortedPoly::from_polynomial(g, &order))
        .collect();
    seeds.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    for s in seeds {
        let mut r = reduce_full(s, &basis, field, &order)?;
        if r.is_zero() {
            continue;
        }
        r.make_monic(field);
        basis.push(r);
        update_pairs(&basis, &mut pairs, basis.len() - 1);
    }

    let mut processed: u64 = 0;
    while !pairs.is_empty() {
        processed += 1;
        if processed > cfg.max_pairs || basis.len() > cfg.max_basis {
            return Err(GbError::Timeout {
                pairs_processed: processed,
                basis_size: basis.len(),
            });
        }
        // Normal selection: minimal lcm in the order, ties by indices.
        let best = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                order
                    .cmp(&a.lcm, &b.lcm)
                    .then(a.i.cmp(&b.i))
                    .then(a.j.cmp(&b.j))
            })
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(best);
        let s = s_polynomial(&basis[pair.i], &basis[pair.j], field, &order)?;
        let mut r = reduce_full(s, &basis, field, &order)?;
        if r.is_zero() {
            continue;
        }
        r.make_monic(field);
        basis.push(r);
        update_pairs(&basis, &mut pairs, basis.len() - 1);
    }

    // Minimalize: drop elements whose leading monomial is divisible by
    // another survivor's.
    let mut keep = vec![true; basis.len()];
    for i in 0..basis.len() {
        if !keep[i] {
            continue;
        }
        for j in 0..basis.len() {
            if i == j || !keep[j] {
                continue;
            }
            if basis[j].lm().divides(basis[i].lm())
                && (basis[j].lm() != basis[i].lm() || j < i)
            {
                keep[i] = false;
                break;
            }
        }
    }
    let minimal: Vec<SortedPoly> = basis
        .into_iter()
        .zip(keep)
        .filter_map(|(g, k)| k.then_some(g))
        .collect();

    // Interreduce tails.
    let mut reduced: Vec<SortedPoly> = Vec::with_capacity(minimal.len());
    for i in 0..minimal.len() {
        let others: Vec<SortedPoly> = minimal
            .iter()
            .enumerate()
            .filter_map(|(j, g)| (j != i).then(|| g.clone()))
            .collect();
        let mut r = reduce_full(minimal[i].clone(), &others, field, &order)?;
        debug_assert!(!r.is_zero(), "minimal element reduced to zero");
        r.make_monic(field);
        reduced.push(r);
    }
    reduced.sort_by(|a, b| order.cmp(a.lm(), b.lm()));

    let leading = reduced.iter().map(|g| g.lm().clone()).collect();
    let elements = reduced
        .into_iter()
        .map(|g| g.into_polynomial(field, ideal.vars()))
        .collect();
    Ok(GroebnerBasis {
        field,
        vars: ideal.vars().clone(),
        order,
        elements,
        leading,
    })
}

/// The unique remainder of `f` under full reduction by the basis. `f` lies in
/// the ideal iff the normal form is zero.
pub fn normal_form(f: &Polynomial, gb: &GroebnerBasis) -> Polynomial {
    assert!(f.vars() == gb.vars() && f.field() == gb.field(), "ambient mismatch");
    let sorted = SortedPoly::from_polynomial(f, &gb.order);
    let basis = gb.sorted_elements();
    reduce_full(sorted, &basis, gb.field, &gb.order)
        .expect("exponents bounded by input")
        .into_polynomial(gb.field, &gb.vars)
}
