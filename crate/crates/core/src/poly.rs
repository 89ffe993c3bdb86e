//! Sparse multivariate polynomials over F_p.
//!
//! A polynomial is a map from exponent vectors to nonzero coefficients; the
//! zero polynomial has an empty term map, so structural equality is canonical
//! equality. All cross-structure operations require identical variable sets —
//! there is no implicit variable alignment.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::field::GroundField;

/// Exponents stay below this bound; multiplication and powering check it.
pub const MAX_EXPONENT: u32 = 1 << 31;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("duplicate variable name `{0}`")]
    DuplicateVariable(String),
    #[error("empty variable name")]
    EmptyVariable,
    #[error("mismatched variable sets")]
    VarSetMismatch,
    #[error("mismatched ground fields")]
    FieldMismatch,
    #[error("unknown variable `{0}`")]
    UnknownVariable(String),
    #[error("exponent overflow")]
    ExponentOverflow,
    #[error("substitution is missing variable `{0}`")]
    MissingSubstitution(String),
}

#[derive(Debug)]
struct VarSetInner {
    names: Vec<String>,
}

/// An ordered set of distinct variable names. The order is fixed at
/// construction and defines exponent-vector positions. Cloning is cheap.
#[derive(Debug, Clone)]
pub struct VarSet {
    inner: Arc<VarSetInner>,
}

impl VarSet {
    pub fn new<S: Into<String>, I: IntoIterator<Item = S>>(names: I) -> Result<Self, PolyError> {
        let names: Vec<String> = names.into_iter().map(Into::into).collect();
        for (i, n) in names.iter().enumerate() {
            if n.is_empty() {
                return Err(PolyError::EmptyVariable);
            }
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        Ok(VarSet {
            inner: Arc::new(VarSetInner { names }),
        })
    }

    pub fn len(&self) -> usize {
        self.inner.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.inner.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.inner.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.inner.names.iter().position(|n| n == name)
    }

    /// A new set with `extra` appended after the existing variables.
    pub fn extended<S: Into<String>, I: IntoIterator<Item = S>>(
        &self,
        extra: I,
    ) -> Result<VarSet, PolyError> {
        let mut names = self.inner.names.clone();
        names.extend(extra.into_iter().map(Into::into));
        VarSet::new(names)
    }
}

impl PartialEq for VarSet {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.names == other.inner.names
    }
}

impl Eq for VarSet {}

/// An exponent vector; its length always equals the variable-set size.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Monomial {
    exps: Vec<u32>,
}

impl Monomial {
    pub fn new(exps: Vec<u32>) -> Self {
        Monomial { exps }
    }

    pub fn one(nvars: usize) -> Self {
        Monomial {
            exps: vec![0; nvars],
        }
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut exps = vec![0; nvars];
        exps[idx] = 1;
        Monomial { exps }
    }

    pub fn exps(&self) -> &[u32] {
        &self.exps
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn degree(&self) -> u64 {
        self.exps.iter().map(|&e| u64::from(e)).sum()
    }

    pub fn is_one(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }

    pub fn try_mul(&self, other: &Monomial) -> Result<Monomial, PolyError> {
        let exps = self
            .exps
            .iter()
            .zip(&other.exps)
            .map(|(&a, &b)| {
                let s = a.checked_add(b).filter(|&s| s < MAX_EXPONENT);
                s.ok_or(PolyError::ExponentOverflow)
            })
            .collect::<Result<_, _>>()?;
        Ok(Monomial { exps })
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a <= b)
    }

    /// `other / self`, defined only when `self` divides `other`.
    pub fn div_into(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial {
                exps: other
                    .exps
                    .iter()
                    .zip(&self.exps)
                    .map(|(&b, &a)| b - a)
                    .collect(),
            })
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial {
            exps: self
                .exps
                .iter()
                .zip(&other.exps)
                .map(|(&a, &b)| a.max(b))
                .collect(),
        }
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.exps.iter().zip(&other.exps).all(|(&a, &b)| a == 0 || b == 0)
    }

    /// Variable indices with nonzero exponent.
    pub fn support(&self) -> impl Iterator<Item = usize> + '_ {
        self.exps
            .iter()
            .enumerate()
            .filter(|(_, &e)| e > 0)
            .map(|(i, _)| i)
    }
}

/// Sparse multivariate polynomial over F_p in canonical form: no stored zero
/// coefficients, coefficients in `0..p`.
#[derive(Clone, PartialEq, Eq)]
pub struct Polynomial {
    field: GroundField,
    vars: VarSet,
    terms: BTreeMap<Monomial, u32>,
}

impl Polynomial {
    pub fn zero(field: GroundField, vars: &VarSet) -> Self {
        Polynomial {
            field,
            vars: vars.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(field: GroundField, vars: &VarSet, c: i64) -> Self {
        let mut p = Self::zero(field, vars);
        let c = field.reduce_i64(c);
        if c != 0 {
            p.terms.insert(Monomial::one(vars.len()), c);
        }
        p
    }

    pub fn one(field: GroundField, vars: &VarSet) -> Self {
        Self::constant(field, vars, 1)
    }

    pub fn var(field: GroundField, vars: &VarSet, idx: usize) -> Self {
        assert!(idx < vars.len());
        let mut p = Self::zero(field, vars);
        p.terms.insert(Monomial::var(vars.len(), idx), 1);
        p
    }

    pub fn var_named(field: GroundField, vars: &VarSet, name: &str) -> Result<Self, PolyError> {
        let idx = vars
            .index_of(name)
            .ok_or_else(|| PolyError::UnknownVariable(name.to_string()))?;
        Ok(Self::var(field, vars, idx))
    }

    /// Builds a polynomial from raw (monomial, coefficient) pairs, reducing
    /// coefficients and dropping zeros.
    pub fn from_terms<I: IntoIterator<Item = (Monomial, i64)>>(
        field: GroundField,
        vars: &VarSet,
        terms: I,
    ) -> Self {
        let mut p = Self::zero(field, vars);
        for (m, c) in terms {
            assert_eq!(m.len(), vars.len(), "monomial arity mismatch");
            p.add_term(m, field.reduce_i64(c));
        }
        p
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, u32)> {
        self.terms.iter().map(|(m, &c)| (m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> u32 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    /// The coefficient of the constant monomial.
    pub fn constant_coeff(&self) -> u32 {
        self.coeff(&Monomial::one(self.vars.len()))
    }

    /// True iff the polynomial is a (possibly zero) constant.
    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(Monomial::is_one)
    }

    pub fn total_degree(&self) -> u64 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    fn add_term(&mut self, m: Monomial, c: u32) {
        if c == 0 {
            return;
        }
        let entry = self.terms.entry(m);
        match entry {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = self.field.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    fn check_compatible(&self, other: &Polynomial) -> Result<(), PolyError> {
        if self.field != other.field {
            return Err(PolyError::FieldMismatch);
        }
        if self.vars != other.vars {
            return Err(PolyError::VarSetMismatch);
        }
        Ok(())
    }

    pub fn try_add(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), self.field.neg(c));
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Polynomial) -> Result<Polynomial, PolyError> {
        self.check_compatible(other)?;
        let mut out = Self::zero(self.field, &self.vars);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                let m = m1.try_mul(m2)?;
                out.add_term(m, self.field.mul(c1, c2));
            }
        }
        Ok(out)
    }

    pub fn neg(&self) -> Polynomial {
        let mut out = self.clone();
        for c in out.terms.values_mut() {
            *c = self.field.neg(*c);
        }
        out
    }

    pub fn scale(&self, c: u32) -> Polynomial {
        let c = c % self.field.p();
        if c == 0 {
            return Self::zero(self.field, &self.vars);
        }
        let mut out = self.clone();
        for v in out.terms.values_mut() {
            *v = self.field.mul(*v, c);
        }
        out
    }

    /// Multiplies by a single term.
    pub fn mul_term(&self, m: &Monomial, c: u32) -> Result<Polynomial, PolyError> {
        let c = c % self.field.p();
        if c == 0 {
            return Ok(Self::zero(self.field, &self.vars));
        }
        let mut out = Self::zero(self.field, &self.vars);
        for (m1, &c1) in &self.terms {
            out.terms
                .insert(m1.try_mul(m)?, self.field.mul(c1, c));
        }
        Ok(out)
    }

    /// Binary exponentiation; `f^0 = 1` including for `f = 0`.
    pub fn try_pow(&self, e: u64) -> Result<Polynomial, PolyError> {
        let mut acc = Self::one(self.field, &self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.try_mul(&base)?;
            }
            e >>= 1;
            if e > 0 {
                base = base.try_mul(&base)?;
            }
        }
        Ok(acc)
    }

    /// The p-th power map. Since coefficients lie in the prime field this is
    /// the same as evaluating at `x_i^p`, so it only scales exponents.
    pub fn frobenius(&self) -> Polynomial {
        let p = self.field.p();
        let mut out = Self::zero(self.field, &self.vars);
        for (m, &c) in &self.terms {
            let exps = m
                .exps()
                .iter()
                .map(|&e| {
                    e.checked_mul(p)
                        .filter(|&x| x < MAX_EXPONENT)
                        .expect("exponent overflow in frobenius")
                })
                .collect();
            out.terms.insert(Monomial::new(exps), c);
        }
        out
    }

    /// Ring-homomorphic image under a total substitution. Every variable of
    /// `self` that actually occurs must be mapped; images must share one
    /// variable set and the ground field.
    pub fn substitute(&self, images: &[Option<Polynomial>]) -> Result<Polynomial, PolyError> {
        assert_eq!(images.len(), self.vars.len());
        let mut target: Option<(GroundField, VarSet)> = None;
        for img in images.iter().flatten() {
            match &target {
                None => target = Some((img.field, img.vars.clone())),
                Some((f, v)) => {
                    if *f != img.field {
                        return Err(PolyError::FieldMismatch);
                    }
                    if v != &img.vars {
                        return Err(PolyError::VarSetMismatch);
                    }
                }
            }
        }
        let (tf, tv) = target.ok_or(PolyError::VarSetMismatch)?;
        if tf != self.field {
            return Err(PolyError::FieldMismatch);
        }

        // Memoize per-variable power ladders.
        let mut powers: Vec<Vec<Polynomial>> = images
            .iter()
            .map(|img| match img {
                Some(q) => vec![Polynomial::one(tf, &tv), q.clone()],
                None => vec![Polynomial::one(tf, &tv)],
            })
            .collect();

        let mut out = Polynomial::zero(tf, &tv);
        for (m, &c) in &self.terms {
            let mut term = Polynomial::constant(tf, &tv, i64::from(c));
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                if images[i].is_none() {
                    return Err(PolyError::MissingSubstitution(
                        self.vars.name(i).to_string(),
                    ));
                }
                let ladder = &mut powers[i];
                while ladder.len() <= e as usize {
                    let next = ladder.last().unwrap().try_mul(&ladder[1])?;
                    ladder.push(next);
                }
                term = term.try_mul(&ladder[e as usize])?;
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Substitution given as a name-indexed map into a common target.
    pub fn substitute_map(
        &self,
        map: &dyn Fn(&str) -> Option<Polynomial>,
    ) -> Result<Polynomial, PolyError> {
        let images: Vec<Option<Polynomial>> = self
            .vars
            .names()
            .iter()
            .map(|n| map(n.as_str()))
            .collect();
        self.substitute(&images)
    }

    /// Formal partial derivative with coefficient arithmetic in F_p.
    pub fn partial_derivative(&self, var: usize) -> Polynomial {
        assert!(var < self.vars.len());
        let mut out = Self::zero(self.field, &self.vars);
        for (m, &c) in &self.terms {
            let e = m.exps()[var];
            if e == 0 {
                continue;
            }
            let nc = self.field.mul(c, self.field.reduce_u64(u64::from(e)));
            if nc == 0 {
                continue;
            }
            let mut exps = m.exps().to_vec();
            exps[var] -= 1;
            out.add_term(Monomial::new(exps), nc);
        }
        out
    }

    /// Re-expresses the polynomial in a variable set containing (by name) all
    /// variables of the current one.
    pub fn extend_vars(&self, bigger: &VarSet) -> Result<Polynomial, PolyError> {
        let map: Vec<usize> = self
            .vars
            .names()
            .iter()
            .map(|n| {
                bigger
                    .index_of(n)
                    .ok_or_else(|| PolyError::UnknownVariable(n.clone()))
            })
            .collect::<Result<_, _>>()?;
        let mut out = Polynomial::zero(self.field, bigger);
        for (m, &c) in &self.terms {
            let mut exps = vec![0u32; bigger.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                exps[map[i]] = e;
            }
            out.terms.insert(Monomial::new(exps), c);
        }
        Ok(out)
    }

    /// Projects onto a smaller variable set; fails if a dropped variable occurs.
    pub fn restrict_vars(&self, smaller: &VarSet) -> Result<Polynomial, PolyError> {
        let map: Vec<Option<usize>> = self
            .vars
            .names()
            .iter()
            .map(|n| smaller.index_of(n))
            .collect();
        let mut out = Polynomial::zero(self.field, smaller);
        for (m, &c) in &self.terms {
            let mut exps = vec![0u32; smaller.len()];
            for (i, &e) in m.exps().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                match map[i] {
                    Some(j) => exps[j] = e,
                    None => return Err(PolyError::UnknownVariable(self.vars.name(i).into())),
                }
            }
            out.terms.insert(Monomial::new(exps), c);
        }
        Ok(out)
    }

    /// Largest power of `var` occurring.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms
            .keys()
            .map(|m| m.exps()[var])
            .max()
            .unwrap_or(0)
    }
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::text::print(self))
    }
}

// Operator sugar; panics on structural mismatch, which is a programming error
// at the call sites that use it. Fallible callers use the try_* methods.
impl std::ops::Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        self.try_add(rhs).expect("polynomial add")
    }
}

impl std::ops::Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        self.try_sub(rhs).expect("polynomial sub")
    }
}

impl std::ops::Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        self.try_mul(rhs).expect("polynomial mul")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fp(p: u32) -> GroundField {
        GroundField::new(p).unwrap()
    }

    #[test]
    fn varset_rejects_duplicates() {
        assert!(VarSet::new(["x", "y", "x"]).is_err());
        assert!(VarSet::new(["x", "y"]).is_ok());
    }

    #[test]
    fn additive_inverse_cancels() {
        let v = VarSet::new(["x", "y"]).unwrap();
        let f = fp(5);
        let x = Polynomial::var(f, &v, 0);
        let y = Polynomial::var(f, &v, 1);
        let sum = &(&x + &y) + &x.neg();
        assert_eq!(sum, y);
    }

    #[test]
    fn difference_of_squares_mod_5() {
        let v = VarSet::new(["x", "y"]).unwrap();
        let f = fp(5);
        let x = Polynomial::var(f, &v, 0);
        let y = Polynomial::var(f, &v, 1);
        let lhs = &(&x + &y) * &(&x - &y);
        let rhs = &(&x * &x) - &(&y * &y);
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn freshmans_dream_char_3() {
        let v = VarSet::new(["x", "y"]).unwrap();
        let f = fp(3);
        let x = Polynomial::var(f, &v, 0);
        let y = Polynomial::var(f, &v, 1);
        let s = &x + &y;
        let cube = (&(&s * &s)) * &s;
        let expect = &x.try_pow(3).unwrap() + &y.try_pow(3).unwrap();
        assert_eq!(cube, expect);
    }

    #[test]
    fn pow_conventions() {
        let v = VarSet::new(["y"]).unwrap();
        let f = fp(3);
        let zero = Polynomial::zero(f, &v);
        assert_eq!(zero.try_pow(0).unwrap(), Polynomial::one(f, &v));
        let y = Polynomial::var(f, &v, 0);
        assert_eq!(y.try_pow(2).unwrap(), &y * &y);
    }

    #[test]
    fn det_square_mod_3() {
        // (ad - bc)^2 = a^2d^2 + abcd + b^2c^2 over F_3
        let v = VarSet::new(["a", "b", "c", "d"]).unwrap();
        let f = fp(3);
        let det = Polynomial::from_terms(
            f,
            &v,
            [
                (Monomial::new(vec![1, 0, 0, 1]), 1),
                (Monomial::new(vec![0, 1, 1, 0]), -1),
            ],
        );
        let sq = det.try_pow(2).unwrap();
        let expect = Polynomial::from_terms(
            f,
            &v,
            [
                (Monomial::new(vec![2, 0, 0, 2]), 1),
                (Monomial::new(vec![1, 1, 1, 1]), 1),
                (Monomial::new(vec![0, 2, 2, 0]), 1),
            ],
        );
        assert_eq!(sq, expect);
    }

    #[test]
    fn frobenius_examples() {
        let v = VarSet::new(["x", "y"]).unwrap();
        let f3 = fp(3);
        let x = Polynomial::var(f3, &v, 0);
        let y = Polynomial::var(f3, &v, 1);
        let s = &x + &y;
        assert_eq!(s.frobenius(), s.try_pow(3).unwrap());
        assert_eq!(Polynomial::one(f3, &v).frobenius(), Polynomial::one(f3, &v));
        // 2x over F_5: 2^5 = 32 = 2
        let f5 = fp(5);
        let two_x = Polynomial::var(f5, &v, 0).scale(2);
        let frob = two_x.frobenius();
        assert_eq!(frob.coeff(&Monomial::new(vec![5, 0])), 2);
    }

    #[test]
    fn substitute_shift() {
        // x^2 under x -> x + t
        let v = VarSet::new(["x"]).unwrap();
        let w = VarSet::new(["x", "t"]).unwrap();
        let f = fp(7);
        let x2 = Polynomial::var(f, &v, 0).try_pow(2).unwrap();
        let image = &Polynomial::var(f, &w, 0) + &Polynomial::var(f, &w, 1);
        let out = x2.substitute(&[Some(image)]).unwrap();
        let expect = Polynomial::from_terms(
            f,
            &w,
            [
                (Monomial::new(vec![2, 0]), 1),
                (Monomial::new(vec![1, 1]), 2),
                (Monomial::new(vec![0, 2]), 1),
            ],
        );
        assert_eq!(out, expect);
    }

    #[test]
    fn substitute_identity() {
        let v = VarSet::new(["x", "y"]).unwrap();
        let f = fp(5);
        let xy = &Polynomial::var(f, &v, 0) * &Polynomial::var(f, &v, 1);
        let out = xy
            .substitute(&[
                Some(Polynomial::var(f, &v, 0)),
                Some(Polynomial::var(f, &v, 1)),
            ])
            .unwrap();
        assert_eq!(out, xy);
    }

    #[test]
    fn substitute_missing_variable_errors() {
        let v = VarSet::new(["x", "y"]).unwrap();
        let f = fp(5);
        let xy = &Polynomial::var(f, &v, 0) * &Polynomial::var(f, &v, 1);
        let err = xy.substitute(&[Some(Polynomial::var(f, &v, 0)), None]);
        assert!(matches!(err, Err(PolyError::MissingSubstitution(_))));
    }

    #[test]
    fn derivative_examples() {
        let v = VarSet::new(["x", "y"]).unwrap();
        let f3 = fp(3);
        let x3 = Polynomial::var(f3, &v, 0).try_pow(3).unwrap();
        assert!(x3.partial_derivative(0).is_zero());

        let xy = &Polynomial::var(f3, &v, 0) * &Polynomial::var(f3, &v, 1);
        assert_eq!(xy.partial_derivative(0), Polynomial::var(f3, &v, 1));

        let f5 = fp(5);
        let x2y = &Polynomial::var(f5, &v, 0).try_pow(2).unwrap() * &Polynomial::var(f5, &v, 1);
        let expect = (&Polynomial::var(f5, &v, 0) * &Polynomial::var(f5, &v, 1)).scale(2);
        assert_eq!(x2y.partial_derivative(0), expect);
    }

    #[test]
    fn mismatched_varsets_error() {
        let v = VarSet::new(["x"]).unwrap();
        let w = VarSet::new(["y"]).unwrap();
        let f = fp(3);
        let a = Polynomial::var(f, &v, 0);
        let b = Polynomial::var(f, &w, 0);
        assert!(matches!(a.try_add(&b), Err(PolyError::VarSetMismatch)));
        let f5 = fp(5);
        let c = Polynomial::var(f5, &v, 0);
        assert!(matches!(a.try_mul(&c), Err(PolyError::FieldMismatch)));
    }
}
