use std::sync::Arc;

use super::{apply_to_ses, pullback_ses};
use crate::localize::{LocalizationResult, Localizer};
use crate::xmod::{descend, make_ses, xkernel, xquotient, CrossedModule, ShortExactSequence, SubCrossedModule, XModMorphism};
use crate::{Error, Limits, Result};

fn require_regular_epi(l: &Localizer) -> Result<()> {
    if l.is_regular_epi_kind() {
        Ok(())
    } else {
        Err(Error::Unsupported(format!("fiberwise localization needs a regular-epi localizer, got {l}")))
    }
}

fn witness_for(s: &ShortExactSequence, ln: &LocalizationResult) -> Option<(usize, usize)> {
    let t = s.middle();
    let k = xkernel(&ln.coaugmentation);
    let k1 = k.n1().image_under(s.kappa.f1());
    let t1 = t.bottom();
    for &x in k.n2().members() {
        let x2 = s.kappa.f2().apply(x);
        for y in t1.elements() {
            if !k1.contains(t1.mul(t.act(x2, y), t1.inv(y))) {
                return Some((x2, y));
            }
        }
    }
    None
}

/// The first `(x₂, t₁)` with `x₂ ∈ κ₂(ker ℓ₂^N)` and `^{x₂}t₁·t₁⁻¹ ∉ κ₁(ker ℓ₁^N)`.
pub fn fiberwise_witness(l: &Localizer, s: &ShortExactSequence, limits: &Limits) -> Result<Option<(usize, usize)>> {
    require_regular_epi(l)?;
    let ln = l.localize(s.kernel(), limits)?;
    Ok(witness_for(s, &ln))
}

pub fn fiberwise_condition(l: &Localizer, s: &ShortExactSequence, limits: &Limits) -> Result<bool> {
    Ok(fiberwise_witness(l, s, limits)?.is_none())
}

/// The row `LN → T/κ(ker ℓ^N) → Q` and the quotient map out of `T`.
#[derive(Clone, Debug)]
pub struct FiberwiseLocalization {
    pub ses: ShortExactSequence,
    pub comparison: XModMorphism,
    pub kernel_localization: LocalizationResult,
    /// Whether `L` inverts the comparison map.
    pub comparison_is_equivalence: bool,
}

pub fn fiberwise_localize(l: &Localizer, s: &ShortExactSequence, limits: &Limits) -> Result<FiberwiseLocalization> {
    require_regular_epi(l)?;
    let ln = l.localize(s.kernel(), limits)?;
    if let Some((x2, t1)) = witness_for(s, &ln) {
        return Err(Error::ConditionFails { x2, t1 });
    }
    let k = xkernel(&ln.coaugmentation);
    let t: &Arc<CrossedModule> = s.middle();
    let m = SubCrossedModule::new(t.clone(), k.n1().image_under(s.kappa.f1()), k.n2().image_under(s.kappa.f2()))?;
    let q = xquotient(&m)?;
    let j = descend(&ln.coaugmentation, &s.kappa.then(&q.projection)?)?;
    let p = descend(&q.projection, &s.alpha)?;
    let ses = make_ses(j, p)?;
    let comparison_is_equivalence = l.is_equivalence(&q.projection, limits)?;
    Ok(FiberwiseLocalization { ses, comparison: q.projection, kernel_localization: ln, comparison_is_equivalence })
}

/// For an `L`-flat `s` and `g: Q' → Q`, compares the fiberwise localization
/// of the pullback with the pullback of the fiberwise localization through
/// the explicit map `δ: T'/K → T/K`.
pub fn commutation_check(l: &Localizer, s: &ShortExactSequence, g: &XModMorphism, limits: &Limits) -> Result<bool> {
    if !apply_to_ses(l, s, limits)?.is_flat() {
        return Err(Error::Precondition("commutation check needs an L-flat sequence".into()));
    }
    let pulled = pullback_ses(s, g)?;
    let fib_pulled = fiberwise_localize(l, &pulled.ses, limits)?;
    let fib = fiberwise_localize(l, s, limits)?;
    let pulled_fib = pullback_ses(&fib.ses, g)?;

    let pi_t = &pulled.pullback.to_left;
    let delta = descend(&fib_pulled.comparison, &pi_t.then(&fib.comparison)?)?;
    let eps = pulled_fib.pullback.mediate(&delta, &fib_pulled.ses.alpha)?;

    let kernels_match = fib_pulled.ses.kappa.then(&eps)? == pulled_fib.ses.kappa;
    let quotients_match = eps.then(&pulled_fib.ses.alpha)? == fib_pulled.ses.alpha;
    Ok(eps.is_iso() && kernels_match && quotients_match)
}
