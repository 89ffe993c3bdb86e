//! Cover algebras over a presented base ring A/I and the splitting-lift
//! constructions on them:
//!
//! - localized chart algebras `(A/I)[1/p_i][u_i]` with `u_i^2 = p_i`, lifted
//!   chart by chart with pairwise overlap agreement;
//! - quadratic covers `R[u]/(u^2 - f)`, lifted through compatible splittings;
//! - hyperbolic covers `R[u, xi]/(u*xi - f)`, lifted through the grading.
//!
//! Negative and fractional powers are never represented: every formula is
//! rearranged to denominator-cleared form before evaluation. Localization
//! denominators are powers of a single designated element (or of a product
//! for overlap tests). Base ideals are trusted to be prime; the localized
//! equality test relies on that.

mod chart;
mod check;
mod cocycle;
mod hyperbolic;
mod localized;
mod quadratic;

pub use chart::{chart_lift, overlap_agreement, ChartElement, ChartLift, ChartRing, Overlap};
pub use check::{splitting_axiom_check, AxiomFailure, AxiomReport, SampleBounds, SplitOperator};
pub use cocycle::{all_charts, cocycle_check, lambda_fraction, ChartId, CocycleOutcome};
pub use hyperbolic::{lift_hyperbolic, HyperbolicCover, HyperbolicElement, HyperbolicLift};
pub use localized::{phi_localized, LocalizedElement, LocalizedRing};
pub use quadratic::{lift_hypersurface, HypersurfaceLift, QuadraticCover, QuadraticElement};

use std::sync::Arc;

use thiserror::Error;

use crate::cartier::CartierError;
use crate::groebner::{GbError, PresentedRing};
use crate::invariants::SoPresentation;
use crate::poly::{PolyError, Polynomial};
use crate::text;

#[derive(Debug, Error, Clone)]
pub enum CoverError {
    #[error("the construction needs (p+1)/2 and requires odd characteristic")]
    CharTwo,
    #[error("chart {index} is empty: its element lies in the base ideal")]
    EmptyChart { index: usize },
    #[error("denominator lies in the base ideal")]
    DenominatorInIdeal,
    #[error("the splitting is not normalized on the base ring")]
    NotNormalized,
    #[error("the splitting is not compatible with the cover hypersurface")]
    NotCompatible,
    #[error("chart relation check failed; the atlas data is inconsistent")]
    RelationCheck,
    #[error("exact division by the cover polynomial failed; remainder {}", text::print(.remainder))]
    DivisionFailure { remainder: Polynomial },
    #[error("base rings do not match")]
    RingMismatch,
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Cartier(#[from] CartierError),
}

/// Chart data for the double-cover construction: an index set, the chart
/// elements p_i, and the pairings p_{i,j} over a presented base ring. The
/// constructor verifies `p_{i,j}^2 = p_i p_j mod I` and `p_{i,j} = p_{j,i}`.
#[derive(Debug, Clone)]
pub struct ChartAtlas {
    ring: Arc<PresentedRing>,
    labels: Vec<Vec<usize>>,
    pairings: Vec<Vec<Polynomial>>,
}

impl ChartAtlas {
    pub fn new(
        ring: Arc<PresentedRing>,
        labels: Vec<Vec<usize>>,
        pairings: Vec<Vec<Polynomial>>,
    ) -> Result<Arc<Self>, CoverError> {
        let n = labels.len();
        assert_eq!(pairings.len(), n);
        for row in &pairings {
            assert_eq!(row.len(), n);
        }
        for i in 0..n {
            for j in 0..n {
                if pairings[i][j] != pairings[j][i] {
                    return Err(CoverError::RelationCheck);
                }
                let square = pairings[i][j].try_pow(2)?;
                let product = pairings[i][i].try_mul(&pairings[j][j])?;
                if !ring.eq_mod(&square, &product) {
                    return Err(CoverError::RelationCheck);
                }
            }
        }
        Ok(Arc::new(ChartAtlas {
            ring,
            labels,
            pairings,
        }))
    }

    /// The atlas of an orthogonal-family presentation: charts I(n, m) with
    /// p_i the principal minors and p_{i,j} the pairings.
    pub fn from_so(pres: &SoPresentation) -> Result<Arc<Self>, CoverError> {
        ChartAtlas::new(
            pres.ring.clone(),
            pres.charts.clone(),
            pres.pairings.clone(),
        )
    }

    pub fn ring(&self) -> &Arc<PresentedRing> {
        &self.ring
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn label(&self, i: usize) -> &[usize] {
        &self.labels[i]
    }

    /// The chart element p_i.
    pub fn p(&self, i: usize) -> &Polynomial {
        &self.pairings[i][i]
    }

    /// The pairing p_{i,j}.
    pub fn pairing(&self, i: usize, j: usize) -> &Polynomial {
        &self.pairings[i][j]
    }
}
