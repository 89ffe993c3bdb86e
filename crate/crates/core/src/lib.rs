//! Exact computer algebra in prime characteristic.
//!
//! The crate builds up from sparse polynomials over F_p to a concrete,
//! machine-checkable representation of Frobenius splittings:
//!
//! - [`poly`], [`order`], [`text`]: polynomial arithmetic, monomial orders,
//!   parsing and canonical printing;
//! - [`groebner`]: Buchberger's algorithm, normal forms, colon ideals,
//!   bracket powers, Fedder's F-purity criterion and Krull dimension;
//! - [`cartier`]: p^{-1}-linear maps as dual-trace premultipliers, splitting
//!   verification and normalization;
//! - [`invariants`]: matrices of variables, minors, determinantal ideals,
//!   orthogonal and special-linear invariant generators, presentations and
//!   dimension formulas;
//! - [`covers`]: localized chart algebras, quadratic and hyperbolic covers,
//!   the three splitting-lift constructions, and overlap/cocycle checks.
//!
//! Everything is immutable after construction and all operations are pure,
//! so values can be shared freely across threads. Randomized checks take
//! explicit seeds and reproduce exactly.

pub mod cartier;
pub mod covers;
pub mod field;
pub mod groebner;
pub mod invariants;
pub mod order;
pub mod poly;
pub mod sample;
pub mod text;
