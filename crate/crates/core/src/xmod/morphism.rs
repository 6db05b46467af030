use std::fmt;
use std::sync::Arc;

use super::CrossedModule;
use crate::group::{same_group, GroupHom};
use crate::{Error, Result};

/// A morphism `(f₁, f₂): A → T` of crossed modules.
#[derive(Clone, PartialEq, Eq)]
pub struct XModMorphism {
    src: Arc<CrossedModule>,
    dst: Arc<CrossedModule>,
    f1: GroupHom,
    f2: GroupHom,
}

impl fmt::Debug for XModMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "XModMorphism(f1 = {:?}, f2 = {:?})", self.f1.map(), self.f2.map())
    }
}

impl XModMorphism {
    /// Checks `∂f₁ = f₂∂` on every element and `f₁(ᵇa) = ^{f₂(b)}f₁(a)` on
    /// generator pairs. Both sides of the second identity are automorphisms
    /// in `a` and actions in `b`, so generators suffice.
    pub fn new(src: Arc<CrossedModule>, dst: Arc<CrossedModule>, f1: GroupHom, f2: GroupHom) -> Result<XModMorphism> {
        if !same_group(f1.src(), src.bottom()) || !same_group(f1.dst(), dst.bottom()) {
            return Err(Error::Mismatch("level 1 map has the wrong source or target".into()));
        }
        if !same_group(f2.src(), src.top()) || !same_group(f2.dst(), dst.top()) {
            return Err(Error::Mismatch("level 2 map has the wrong source or target".into()));
        }
        for t in src.bottom().elements() {
            if dst.d(f1.apply(t)) != f2.apply(src.d(t)) {
                return Err(Error::BoundaryNotCommuting { t });
            }
        }
        for &b in src.top().generators() {
            for &t in src.bottom().generators() {
                if f1.apply(src.act(b, t)) != dst.act(f2.apply(b), f1.apply(t)) {
                    return Err(Error::NotEquivariant { b, t });
                }
            }
        }
        Ok(XModMorphism { src, dst, f1, f2 })
    }

    pub(crate) fn trusted(src: Arc<CrossedModule>, dst: Arc<CrossedModule>, f1: GroupHom, f2: GroupHom) -> XModMorphism {
        debug_assert!(XModMorphism::new(src.clone(), dst.clone(), f1.clone(), f2.clone()).is_ok());
        XModMorphism { src, dst, f1, f2 }
    }

    pub fn identity(t: &Arc<CrossedModule>) -> XModMorphism {
        XModMorphism {
            src: t.clone(),
            dst: t.clone(),
            f1: GroupHom::identity(t.bottom()),
            f2: GroupHom::identity(t.top()),
        }
    }

    pub fn trivial(src: &Arc<CrossedModule>, dst: &Arc<CrossedModule>) -> XModMorphism {
        XModMorphism {
            src: src.clone(),
            dst: dst.clone(),
            f1: GroupHom::trivial(src.bottom(), dst.bottom()),
            f2: GroupHom::trivial(src.top(), dst.top()),
        }
    }

    pub fn src(&self) -> &Arc<CrossedModule> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<CrossedModule> {
        &self.dst
    }

    pub fn f1(&self) -> &GroupHom {
        &self.f1
    }

    pub fn f2(&self) -> &GroupHom {
        &self.f2
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &XModMorphism) -> Result<XModMorphism> {
        if *self.dst != *next.src {
            return Err(Error::NotComposable);
        }
        Ok(XModMorphism {
            src: self.src.clone(),
            dst: next.dst.clone(),
            f1: self.f1.then(&next.f1)?,
            f2: self.f2.then(&next.f2)?,
        })
    }

    pub fn is_trivial(&self) -> bool {
        self.f1.is_trivial() && self.f2.is_trivial()
    }

    /// Surjective at both levels.
    pub fn is_regular_epi(&self) -> bool {
        self.f1.is_surjective() && self.f2.is_surjective()
    }

    pub fn is_mono(&self) -> bool {
        self.f1.is_injective() && self.f2.is_injective()
    }

    pub fn is_iso(&self) -> bool {
        self.f1.is_bijective() && self.f2.is_bijective()
    }

    pub fn inverse(&self) -> Option<XModMorphism> {
        Some(XModMorphism {
            src: self.dst.clone(),
            dst: self.src.clone(),
            f1: self.f1.inverse()?,
            f2: self.f2.inverse()?,
        })
    }
}
