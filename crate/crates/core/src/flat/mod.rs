//! Flatness of short exact sequences under a localizer, pullbacks of
//! sequences, fiberwise localization, admissibility and the nullification
//! ladder.

mod admissible;
mod counterexample;
mod fiberwise;
mod ladder;
mod scan;

use std::sync::Arc;

use serde::Serialize;

use crate::group::GroupHom;
use crate::localize::{LocalizationResult, Localizer};
use crate::xmod::{make_ses, xpullback, CrossedModule, ShortExactSequence, XModMorphism, XPullback};
use crate::{Level, Limits, Result};

pub use admissible::{admissibility_check, AdmissibilityReport, AdmissibilitySquare};
pub use counterexample::{counterexample_demo, counterexample_pipeline, CounterexampleReport};
pub use fiberwise::{commutation_check, fiberwise_condition, fiberwise_localize, fiberwise_witness, FiberwiseLocalization};
pub use ladder::{isokernel_check, nullification_ladder, LadderStage, NullificationLadder};
pub use scan::{
    ab_family, admissibility_scan, admissibility_squares, all_subcrossed_modules, birkhoff_check, conditional_flatness_samples,
    conditional_flatness_scan, flat_sequences, pullback_targets, ScanOptions, ScanReport,
};

/// Where `LN → LT → LQ` first stops being exact.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FlatFailure {
    pub level: Level,
    pub stage: &'static str,
    /// Smallest offending element of the relevant group at `level`.
    pub witness: usize,
    /// `[ker Lα : im Lκ ∩ ker Lα]` at `level` for the exactness stage.
    pub index: Option<usize>,
}

/// `L` applied to a sequence.
#[derive(Clone, Debug)]
pub struct FlatReport {
    pub kernel: LocalizationResult,
    pub middle: LocalizationResult,
    pub quotient: LocalizationResult,
    pub l_kappa: XModMorphism,
    pub l_alpha: XModMorphism,
    pub failure: Option<FlatFailure>,
}

impl FlatReport {
    pub fn is_flat(&self) -> bool {
        self.failure.is_none()
    }
}

fn level_failure(level: Level, k: &GroupHom, a: &GroupHom) -> Option<FlatFailure> {
    let ker_k = k.kernel();
    if let Some(&w) = ker_k.members().iter().find(|&&x| x != k.src().identity()) {
        return Some(FlatFailure { level, stage: "L(kappa) is not injective", witness: w, index: None });
    }
    let im_a = a.image();
    if let Some(w) = a.dst().elements().find(|&x| !im_a.contains(x)) {
        return Some(FlatFailure { level, stage: "L(alpha) is not surjective", witness: w, index: None });
    }
    let (im, ker) = (k.image(), a.kernel());
    if im != ker {
        let both = im.intersect(&ker);
        let witness = ker
            .members()
            .iter()
            .chain(im.members())
            .copied()
            .filter(|&x| !both.contains(x))
            .min()
            .expect("distinct subgroups differ somewhere");
        return Some(FlatFailure {
            level,
            stage: "image of L(kappa) is not the kernel of L(alpha)",
            witness,
            index: Some(ker.order() / both.order()),
        });
    }
    None
}

/// Localizes every term of `s` and tests exactness of the image row, level 1
/// before level 2.
pub fn apply_to_ses(l: &Localizer, s: &ShortExactSequence, limits: &Limits) -> Result<FlatReport> {
    let kernel = l.localize(s.kernel(), limits)?;
    let middle = l.localize(s.middle(), limits)?;
    let quotient = l.localize(s.quotient(), limits)?;
    let l_kappa = l.induced_between(&kernel, &middle, &s.kappa)?;
    let l_alpha = l.induced_between(&middle, &quotient, &s.alpha)?;
    let failure = level_failure(Level::One, l_kappa.f1(), l_alpha.f1())
        .or_else(|| level_failure(Level::Two, l_kappa.f2(), l_alpha.f2()));
    Ok(FlatReport { kernel, middle, quotient, l_kappa, l_alpha, failure })
}

pub fn is_flat(l: &Localizer, s: &ShortExactSequence, limits: &Limits) -> Result<bool> {
    Ok(apply_to_ses(l, s, limits)?.is_flat())
}

/// A pulled-back row `N → T ×_Q Q' → Q'` with its square.
#[derive(Clone, Debug)]
pub struct PulledSequence {
    pub ses: ShortExactSequence,
    pub pullback: XPullback,
}

/// Pulls `s` back along `g: Q' → Q`. The kernel object of the result is the
/// kernel object of `s`.
pub fn pullback_ses(s: &ShortExactSequence, g: &XModMorphism) -> Result<PulledSequence> {
    let pullback = xpullback(&s.alpha, g)?;
    let kappa = pullback.mediate(&s.kappa, &XModMorphism::trivial(s.kernel(), g.src()))?;
    let ses = make_ses(kappa, pullback.to_right.clone())?;
    Ok(PulledSequence { ses, pullback })
}

pub(crate) fn same(a: &Arc<CrossedModule>, b: &Arc<CrossedModule>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
