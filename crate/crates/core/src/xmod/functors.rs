//! `X G = (1, G)`, `R G = (G, G, id)` and `Tr T = T₂`, with executable
//! checks of the adjunctions `X ⊣ Tr ⊣ R`.

use std::collections::HashSet;
use std::sync::Arc;

use super::{enumerate_xmod_morphisms, CrossedModule, XModMorphism};
use crate::group::{enumerate_homs, FiniteGroup, GroupAction, GroupHom};
use crate::{Limits, Result};

/// `(1, G, 1)`.
pub fn functor_x(g: &Arc<FiniteGroup>) -> Arc<CrossedModule> {
    let one = FiniteGroup::trivial();
    CrossedModule::trusted(GroupHom::trivial(&one, g), GroupAction::trivial(g, &one))
}

/// `(G, G, id)` with conjugation.
pub fn functor_r(g: &Arc<FiniteGroup>) -> Arc<CrossedModule> {
    CrossedModule::trusted(GroupHom::identity(g), GroupAction::conjugation(g))
}

/// The top group.
pub fn functor_tr(t: &CrossedModule) -> Arc<FiniteGroup> {
    t.top().clone()
}

impl XModMorphism {
    /// `X(h)`.
    pub fn functor_x(h: &GroupHom) -> XModMorphism {
        let (a, b) = (functor_x(h.src()), functor_x(h.dst()));
        let f1 = GroupHom::identity(a.bottom());
        XModMorphism::trusted(a, b, f1, h.clone())
    }

    /// `R(h)`.
    pub fn functor_r(h: &GroupHom) -> XModMorphism {
        XModMorphism::trusted(functor_r(h.src()), functor_r(h.dst()), h.clone(), h.clone())
    }
}

fn map_key(f: &XModMorphism) -> (Vec<usize>, Vec<usize>) {
    (f.f1().map(), f.f2().map())
}

/// `Hom(Tr T, G) ≅ Hom(T, R G)` via `φ ↦ (φ∂, φ)` with inverse `(f₁, f₂) ↦ f₂`.
pub fn check_tr_r_adjunction(t: &Arc<CrossedModule>, g: &Arc<FiniteGroup>, limits: &Limits) -> Result<bool> {
    let left = enumerate_homs(t.top(), g, limits)?;
    let rg = functor_r(g);
    let right = enumerate_xmod_morphisms(t, &rg, limits)?;
    if left.len() != right.len() {
        return Ok(false);
    }
    let right_keys: HashSet<_> = right.iter().map(map_key).collect();
    for phi in &left {
        let f1 = t.boundary().then(phi)?;
        let Ok(m) = XModMorphism::new(t.clone(), rg.clone(), f1, phi.clone()) else {
            return Ok(false);
        };
        if !right_keys.contains(&map_key(&m)) || *m.f2() != *phi {
            return Ok(false);
        }
    }
    Ok(right.iter().all(|m| left.contains(m.f2())))
}

/// `Hom(X G, T) ≅ Hom(G, Tr T)` via `(1, f₂) ↦ f₂`.
pub fn check_x_tr_adjunction(g: &Arc<FiniteGroup>, t: &Arc<CrossedModule>, limits: &Limits) -> Result<bool> {
    let xg = functor_x(g);
    let left = enumerate_xmod_morphisms(&xg, t, limits)?;
    let right = enumerate_homs(g, t.top(), limits)?;
    if left.len() != right.len() {
        return Ok(false);
    }
    for f2 in &right {
        let f1 = GroupHom::trivial(xg.bottom(), t.bottom());
        let Ok(m) = XModMorphism::new(xg.clone(), t.clone(), f1, f2.clone()) else {
            return Ok(false);
        };
        if !left.contains(&m) {
            return Ok(false);
        }
    }
    Ok(true)
}
