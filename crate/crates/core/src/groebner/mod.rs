//! Ideal arithmetic over F_p: Buchberger's algorithm, normal forms, colon
//! ideals, Frobenius bracket powers, Fedder's F-purity test and Krull
//! dimension of the leading-term ideal.

mod buchberger;
mod dim;
mod fedder;
mod ops;

pub use buchberger::{buchberger, normal_form, GroebnerBasis};
pub use dim::krull_dim;
pub use fedder::{fedder_witness, is_proper, FedderOutcome};
pub use ops::{colon, exact_div, ideal_member, intersect};

use std::sync::Arc;

use thiserror::Error;

use crate::field::GroundField;
use crate::order::MonomialOrder;
use crate::poly::{PolyError, Polynomial, VarSet};

/// Resource caps for basis computations. Exceeding a cap yields an explicit
/// error, never a silently truncated basis.
#[derive(Debug, Clone, Copy)]
pub struct GbConfig {
    pub max_pairs: u64,
    pub max_basis: usize,
}

impl Default for GbConfig {
    fn default() -> Self {
        GbConfig {
            max_pairs: 1_000_000,
            max_basis: 10_000,
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GbError {
    #[error("basis computation exceeded resource caps after {pairs_processed} pairs (basis size {basis_size})")]
    Timeout {
        pairs_processed: u64,
        basis_size: usize,
    },
    #[error("dimension search supports at most {max} variables, got {got}")]
    TooManyVariables { max: usize, got: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A finitely generated ideal: nonzero generators over a fixed variable set,
/// with the order its bases are computed in. The zero ideal has no generators.
#[derive(Debug, Clone)]
pub struct Ideal {
    field: GroundField,
    vars: VarSet,
    gens: Vec<Polynomial>,
    order: MonomialOrder,
}

impl Ideal {
    pub fn new(
        field: GroundField,
        vars: &VarSet,
        gens: Vec<Polynomial>,
        order: MonomialOrder,
    ) -> Result<Self, PolyError> {
        let mut kept = Vec::new();
        for g in gens {
            if g.field() != field {
                return Err(PolyError::FieldMismatch);
            }
            if g.vars() != vars {
                return Err(PolyError::VarSetMismatch);
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(Ideal {
            field,
            vars: vars.clone(),
            gens: kept,
            order,
        })
    }

    pub fn zero(field: GroundField, vars: &VarSet, order: MonomialOrder) -> Self {
        Ideal {
            field,
            vars: vars.clone(),
            gens: Vec::new(),
            order,
        }
    }

    pub fn field(&self) -> GroundField {
        self.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.vars
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// The bracket power: the ideal generated by p-th powers of the listed
    /// generators. As an ideal it does not depend on the generating set.
    pub fn bracket_power(&self) -> Ideal {
        Ideal {
            field: self.field,
            vars: self.vars.clone(),
            gens: self.gens.iter().map(Polynomial::frobenius).collect(),
            order: self.order.clone(),
        }
    }

    /// The ideal generated by this ideal's and `other`'s generators.
    pub fn sum(&self, other: &Ideal) -> Result<Ideal, PolyError> {
        let mut gens = self.gens.clone();
        gens.extend(other.gens.iter().cloned());
        Ideal::new(self.field, &self.vars, gens, self.order.clone())
    }
}

/// The bracket power as a free function, matching the ideal-level operation.
pub fn bracket_power(ideal: &Ideal) -> Ideal {
    ideal.bracket_power()
}

/// An ideal together with its computed reduced basis: the working form of a
/// quotient ring A/I.
#[derive(Debug, Clone)]
pub struct PresentedRing {
    ideal: Ideal,
    gb: GroebnerBasis,
}

impl PresentedRing {
    pub fn new(ideal: Ideal, cfg: &GbConfig) -> Result<Arc<Self>, GbError> {
        let gb = buchberger(&ideal, cfg)?;
        Ok(Arc::new(PresentedRing { ideal, gb }))
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn gb(&self) -> &GroebnerBasis {
        &self.gb
    }

    pub fn field(&self) -> GroundField {
        self.ideal.field
    }

    pub fn vars(&self) -> &VarSet {
        &self.ideal.vars
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        normal_form(f, &self.gb)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.reduce(f).is_zero()
    }

    /// Equality in the quotient ring.
    pub fn eq_mod(&self, a: &Polynomial, b: &Polynomial) -> bool {
        self.reduce(&a.try_sub(b).expect("same ring")).is_zero()
    }

    /// True iff the quotient is the zero ring.
    pub fn is_trivial(&self) -> bool {
        self.gb.elements().iter().any(|g| g.is_constant() && !g.is_zero())
    }
}

/// Ideal equality by mutual membership of generators.
pub fn ideals_equal(a: &Ideal, b: &Ideal, cfg: &GbConfig) -> Result<bool, GbError> {
    let gb_a = buchberger(a, cfg)?;
    let gb_b = buchberger(b, cfg)?;
    Ok(a.generators().iter().all(|g| normal_form(g, &gb_b).is_zero())
        && b.generators().iter().all(|g| normal_form(g, &gb_a).is_zero()))
}
