use std::sync::Arc;

use super::{xquotient, CrossedModule, SubCrossedModule, XModMorphism};
use crate::{Error, Level, Result};

/// `N →κ T →α Q`, exact at both levels.
#[derive(Clone, Debug)]
pub struct ShortExactSequence {
    pub kappa: XModMorphism,
    pub alpha: XModMorphism,
}

/// Checks injectivity of `κ`, surjectivity of `α` and `im κ = ker α` at
/// each level.
pub fn make_ses(kappa: XModMorphism, alpha: XModMorphism) -> Result<ShortExactSequence> {
    if *kappa.dst() != *alpha.src() {
        return Err(Error::NotComposable);
    }
    let levels = [
        (Level::One, kappa.f1(), alpha.f1()),
        (Level::Two, kappa.f2(), alpha.f2()),
    ];
    for (level, k, a) in levels {
        if !k.is_injective() {
            return Err(Error::NotExact { level, stage: "kernel map is not injective" });
        }
        if !a.is_surjective() {
            return Err(Error::NotExact { level, stage: "quotient map is not surjective" });
        }
        if k.image() != a.kernel() {
            return Err(Error::NotExact { level, stage: "image is not the kernel" });
        }
    }
    Ok(ShortExactSequence { kappa, alpha })
}

impl ShortExactSequence {
    /// `N → T → T/N` for a normal subcrossed module.
    pub fn from_normal(n: &SubCrossedModule) -> Result<ShortExactSequence> {
        let q = xquotient(n)?;
        let (_, incl) = n.to_xmod();
        make_ses(incl, q.projection)
    }

    pub fn kernel(&self) -> &Arc<CrossedModule> {
        self.kappa.src()
    }

    pub fn middle(&self) -> &Arc<CrossedModule> {
        self.kappa.dst()
    }

    pub fn quotient(&self) -> &Arc<CrossedModule> {
        self.alpha.dst()
    }
}
