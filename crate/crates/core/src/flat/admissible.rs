use std::sync::Arc;

use super::{apply_to_ses, same, FlatReport};
use crate::localize::Localizer;
use crate::xmod::{xkernel, xpullback, CrossedModule, ShortExactSequence, XModMorphism, XPullback};
use crate::{Error, Limits, Result};

/// The pullback `W` of a regular epimorphism `h: LT → LQ` between local
/// objects along `ℓ^Q: Q → LQ`.
#[derive(Clone, Debug)]
pub struct AdmissibilitySquare {
    pub localizer: Localizer,
    pub h: XModMorphism,
    pub q: Arc<CrossedModule>,
    pub ell_q: XModMorphism,
    /// `to_left = π_LT`, `to_right = π_Q`.
    pub pullback: XPullback,
}

impl AdmissibilitySquare {
    /// Validates `h` and builds the square. The target of `h` must be the
    /// object `L` produces for `q`.
    pub fn new(l: &Localizer, h: XModMorphism, q: Arc<CrossedModule>, limits: &Limits) -> Result<AdmissibilitySquare> {
        if !h.is_regular_epi() {
            return Err(Error::Precondition("h must be a regular epimorphism".into()));
        }
        if !l.is_local(h.src(), limits)? || !l.is_local(h.dst(), limits)? {
            return Err(Error::Precondition("h must join L-local objects".into()));
        }
        let lq = l.localize(&q, limits)?;
        if !same(&lq.local, h.dst()) {
            return Err(Error::Mismatch("h does not land in the localization of Q".into()));
        }
        Self::trusted(l, h, q, lq.coaugmentation)
    }

    pub(crate) fn trusted(l: &Localizer, h: XModMorphism, q: Arc<CrossedModule>, ell_q: XModMorphism) -> Result<AdmissibilitySquare> {
        let pullback = xpullback(&h, &ell_q)?;
        Ok(AdmissibilitySquare { localizer: l.clone(), h, q, ell_q, pullback })
    }

    pub fn w(&self) -> &Arc<CrossedModule> {
        &self.pullback.object
    }

    /// `ker π_Q → W → Q`.
    pub fn row(&self) -> Result<ShortExactSequence> {
        ShortExactSequence::from_normal(&xkernel(&self.pullback.to_right))
    }
}

#[derive(Clone, Debug)]
pub struct AdmissibilityReport {
    /// `L(π_LT)` is an isomorphism.
    pub equivalence: bool,
    pub row: FlatReport,
}

impl AdmissibilityReport {
    pub fn admissible(&self) -> bool {
        self.equivalence
    }

    /// The two formulations agree.
    pub fn consistent(&self) -> bool {
        self.equivalence == self.row.is_flat()
    }
}

pub fn admissibility_check(sq: &AdmissibilitySquare, limits: &Limits) -> Result<AdmissibilityReport> {
    let equivalence = sq.localizer.is_equivalence(&sq.pullback.to_left, limits)?;
    let row = apply_to_ses(&sq.localizer, &sq.row()?, limits)?;
    Ok(AdmissibilityReport { equivalence, row })
}
