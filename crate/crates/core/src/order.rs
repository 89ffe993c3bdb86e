//! Monomial orders: graded reverse lexicographic and lexicographic, each with
//! an optional variable permutation (a priority list of variable indices).

use std::cmp::Ordering;
use std::sync::Arc;

use crate::poly::Monomial;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderKind {
    GrevLex,
    Lex,
}

#[derive(Debug, Clone)]
pub struct MonomialOrder {
    kind: OrderKind,
    /// Priority list: `perm[0]` is the most significant variable index.
    /// `None` means the identity permutation.
    perm: Option<Arc<Vec<usize>>>,
}

impl MonomialOrder {
    pub fn grevlex() -> Self {
        MonomialOrder {
            kind: OrderKind::GrevLex,
            perm: None,
        }
    }

    pub fn lex() -> Self {
        MonomialOrder {
            kind: OrderKind::Lex,
            perm: None,
        }
    }

    /// A permuted order; `perm` must list each variable index exactly once.
    pub fn with_perm(kind: OrderKind, perm: Vec<usize>) -> Self {
        let mut seen = vec![false; perm.len()];
        for &i in &perm {
            assert!(i < perm.len() && !seen[i], "invalid permutation");
            seen[i] = true;
        }
        MonomialOrder {
            kind,
            perm: Some(Arc::new(perm)),
        }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            OrderKind::GrevLex => "grevlex",
            OrderKind::Lex => "lex",
        }
    }

    fn exp(&self, m: &Monomial, priority: usize) -> u32 {
        match &self.perm {
            Some(p) => m.exps()[p[priority]],
            None => m.exps()[priority],
        }
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        debug_assert_eq!(a.len(), b.len());
        match self.kind {
            OrderKind::Lex => {
                for i in 0..a.len() {
                    match self.exp(a, i).cmp(&self.exp(b, i)) {
                        Ordering::Equal => continue,
                        ord => return ord,
                    }
                }
                Ordering::Equal
            }
            OrderKind::GrevLex => {
                match a.degree().cmp(&b.degree()) {
                    Ordering::Equal => {}
                    ord => return ord,
                }
                // Ties break on the rightmost differing exponent, reversed:
                // the monomial with the smaller exponent there is larger.
                for i in (0..a.len()).rev() {
                    match self.exp(a, i).cmp(&self.exp(b, i)) {
                        Ordering::Equal => continue,
                        ord => return ord.reverse(),
                    }
                }
                Ordering::Equal
            }
        }
    }

    pub fn max<'a>(&self, a: &'a Monomial, b: &'a Monomial) -> &'a Monomial {
        if self.cmp(a, b) == Ordering::Less {
            b
        } else {
            a
        }
    }
}

impl Default for MonomialOrder {
    fn default() -> Self {
        MonomialOrder::grevlex()
    }
}
