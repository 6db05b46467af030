//! Crossed modules of finite groups.
//!
//! A crossed module is a homomorphism `∂: T₁ → T₂` with a left action of
//! `T₂` on `T₁` by automorphisms such that
//!
//! - CM1: `∂(ᵇt) = b·∂(t)·b⁻¹`,
//! - CM2: `^{∂(t)}s = t·s·t⁻¹`.
//!
//! Both axioms are checked over all pairs at construction.

mod construct;
mod functors;
mod morphism;
mod search;
mod ses;
mod sub;

use std::fmt;
use std::sync::Arc;

use crate::group::{FiniteGroup, GroupAction, GroupHom, Subgroup};
use crate::{Error, Result};

pub use construct::{descend, xcokernel, xpullback, xquotient, XPullback, XQuotient};
pub use functors::{check_x_tr_adjunction, check_tr_r_adjunction, functor_r, functor_tr, functor_x};
pub use morphism::XModMorphism;
pub use search::{are_isomorphic_xmod, enumerate_xmod_morphisms};
pub use ses::{make_ses, ShortExactSequence};
pub use sub::{all_normal_subs, xkernel, ximage, xnormal_closure, xnormal_closure_formula, NormalityViolation, SubCrossedModule};

#[derive(Clone)]
pub struct CrossedModule {
    boundary: GroupHom,
    action: GroupAction,
}

impl PartialEq for CrossedModule {
    fn eq(&self, other: &Self) -> bool {
        self.boundary == other.boundary && self.action == other.action
    }
}

impl Eq for CrossedModule {}

impl fmt::Debug for CrossedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "CrossedModule({} -> {})", self.bottom().order(), self.top().order())
    }
}

/// Builds a crossed module after verifying CM1 and CM2 on every pair.
pub fn make_xmod(boundary: GroupHom, action: GroupAction) -> Result<Arc<CrossedModule>> {
    if !crate::group::same_group(boundary.src(), action.space()) {
        return Err(Error::Mismatch("the action must be on the source of the boundary".into()));
    }
    if !crate::group::same_group(boundary.dst(), action.actor()) {
        return Err(Error::Mismatch("the acting group must be the target of the boundary".into()));
    }
    let (t1, t2) = (boundary.src().clone(), boundary.dst().clone());
    for b in t2.elements() {
        for t in t1.elements() {
            if boundary.apply(action.act(b, t)) != t2.conj(b, boundary.apply(t)) {
                return Err(Error::Cm1Violation { b, t });
            }
        }
    }
    for t in t1.elements() {
        let dt = boundary.apply(t);
        for s in t1.elements() {
            if action.act(dt, s) != t1.conj(t, s) {
                return Err(Error::Cm2Violation { s, t });
            }
        }
    }
    Ok(Arc::new(CrossedModule { boundary, action }))
}

impl CrossedModule {
    pub(crate) fn trusted(boundary: GroupHom, action: GroupAction) -> Arc<CrossedModule> {
        debug_assert!(make_xmod(boundary.clone(), action.clone()).is_ok());
        Arc::new(CrossedModule { boundary, action })
    }

    /// `T₁`.
    pub fn bottom(&self) -> &Arc<FiniteGroup> {
        self.boundary.src()
    }

    /// `T₂`.
    pub fn top(&self) -> &Arc<FiniteGroup> {
        self.boundary.dst()
    }

    pub fn boundary(&self) -> &GroupHom {
        &self.boundary
    }

    pub fn action(&self) -> &GroupAction {
        &self.action
    }

    /// `ᵇt`.
    #[inline]
    pub fn act(&self, b: usize, t: usize) -> usize {
        self.action.act(b, t)
    }

    #[inline]
    pub fn d(&self, t: usize) -> usize {
        self.boundary.apply(t)
    }

    pub fn is_trivial(&self) -> bool {
        self.bottom().is_trivial() && self.top().is_trivial()
    }

    /// `|T₁| + |T₂|`.
    pub fn size(&self) -> usize {
        self.bottom().order() + self.top().order()
    }

    pub fn trivial() -> Arc<CrossedModule> {
        let one = FiniteGroup::trivial();
        Self::trusted(GroupHom::identity(&one), GroupAction::trivial(&one, &one))
    }

    /// `N ⊴ G` with the inclusion as boundary and conjugation as action.
    pub fn normal_inclusion(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<Arc<CrossedModule>> {
        if let Some((member, by)) = n.normality_witness() {
            return Err(Error::NotNormal { member, by });
        }
        let (sub, incl) = n.to_group();
        let pos = n.positions();
        let action = GroupAction::from_fn(g.clone(), sub.clone(), |b, t| {
            pos[g.conj(b, incl.apply(t))].expect("normal subgroup is conjugation-stable")
        })?;
        make_xmod(incl, action)
    }

    /// A surjection `∂: T₁ → T₂` with central kernel, acting by conjugation
    /// through any lift: `ᵇt = s·t·s⁻¹` where `∂(s) = b`.
    pub fn central_extension(boundary: GroupHom) -> Result<Arc<CrossedModule>> {
        if !boundary.is_surjective() {
            return Err(Error::Precondition("lift-conjugation needs a surjective boundary".into()));
        }
        let t1 = boundary.src().clone();
        let kernel = boundary.kernel();
        if let Some(&k) = kernel
            .members()
            .iter()
            .find(|&&k| t1.generators().iter().any(|&g| t1.mul(k, g) != t1.mul(g, k)))
        {
            return Err(Error::Precondition(format!("kernel element {k} is not central")));
        }
        let mut lift = vec![usize::MAX; boundary.dst().order()];
        for s in t1.elements() {
            let b = boundary.apply(s);
            if lift[b] == usize::MAX {
                lift[b] = s;
            }
        }
        let action = GroupAction::from_fn(boundary.dst().clone(), t1.clone(), |b, t| t1.conj(lift[b], t))?;
        make_xmod(boundary, action)
    }

    /// The given boundary with the trivial action.
    pub fn with_trivial_action(boundary: GroupHom) -> Result<Arc<CrossedModule>> {
        let action = GroupAction::trivial(boundary.dst(), boundary.src());
        make_xmod(boundary, action)
    }

    /// `(A, 1)`.
    pub fn over_trivial(a: &Arc<FiniteGroup>) -> Result<Arc<CrossedModule>> {
        Self::with_trivial_action(GroupHom::trivial(a, &FiniteGroup::trivial()))
    }
}
