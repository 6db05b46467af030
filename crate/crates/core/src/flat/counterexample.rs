use serde::Serialize;

use crate::catalogue::reduction_c4_c2;
use crate::fgab::{AbHom, FgAbGroup};
use crate::localize::Localizer;
use crate::xab::{make_xab_ses, xab_flat_check, AbLocalizer};
use crate::xmod::XModMorphism;
use crate::{Limits, Result};

/// The outcome of localizing a pulled-back `X`-embedded sequence.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CounterexampleReport {
    /// Middle term of the pulled-back row.
    pub middle: FgAbGroup,
    /// `(LN, LT', LQ')`.
    pub localized: [FgAbGroup; 3],
    pub kernel_map_injective: bool,
    pub quotient_map_surjective: bool,
    /// `[ker L(α') : im L(κ')]`.
    pub index: Option<i64>,
    pub flat: bool,
}

impl CounterexampleReport {
    pub fn verdict(&self) -> &'static str {
        if self.flat {
            "FLAT"
        } else {
            "NOT FLAT"
        }
    }
}

/// Pulls `X Z →·2 X Z → X C2` back along `X g` and localizes at `X φ`.
pub fn counterexample_pipeline(phi: &AbHom, g: &AbHom, limits: &Limits) -> Result<CounterexampleReport> {
    let z = FgAbGroup::free(1);
    let c2 = FgAbGroup::cyclic(2);
    let double = AbHom::new(z.clone(), z.clone(), vec![vec![2]])?;
    let reduce = AbHom::new(z, c2, vec![vec![1]])?;
    let s = make_xab_ses(double, reduce)?;
    let l = AbLocalizer::KillKernel(phi.clone());
    let pulled = s.pullback(g)?;
    let r = xab_flat_check(&l, &pulled.ses, limits)?;
    Ok(CounterexampleReport {
        middle: pulled.ses.middle().clone(),
        localized: r.local,
        kernel_map_injective: r.mono,
        quotient_map_surjective: r.epi,
        index: r.index,
        flat: r.flat,
    })
}

/// The non-admissible localization `L_{Xφ}` for `φ: C4 → C2`. The localizer
/// is realized on abelian objects from the crossed-module morphism `Xφ`.
pub fn counterexample_demo(limits: &Limits) -> Result<CounterexampleReport> {
    let l = Localizer::lf("Xphi", XModMorphism::functor_x(&reduction_c4_c2()))?;
    let phi = match AbLocalizer::realize(&l, limits)? {
        AbLocalizer::KillKernel(phi) => phi,
        other => unreachable!("L_f realizes as a kernel killer, got {other:?}"),
    };
    let g = phi.clone();
    counterexample_pipeline(&phi, &g, limits)
}
