use std::sync::Arc;

use super::{xnormal_closure, CrossedModule, SubCrossedModule, XModMorphism};
use crate::group::{pullback_grp, quotient_grp, GroupAction, GroupHom, Pullback, Quotient};
use crate::{Error, Level, Result};

/// `T/N` with its projection.
#[derive(Clone, Debug)]
pub struct XQuotient {
    pub object: Arc<CrossedModule>,
    pub projection: XModMorphism,
    pub q1: Quotient,
    pub q2: Quotient,
}

pub fn xquotient(n: &SubCrossedModule) -> Result<XQuotient> {
    if let Some(v) = n.violation() {
        return Err(Error::NotNormalSub(v.to_string()));
    }
    let t = n.parent();
    let q1 = quotient_grp(t.bottom(), n.n1())?;
    let q2 = quotient_grp(t.top(), n.n2())?;
    let boundary = GroupHom::from_trusted(
        q1.group.clone(),
        q2.group.clone(),
        q1.representatives.iter().map(|&r| q2.projection.apply(t.d(r)) as u32).collect(),
    );
    let mut table = Vec::with_capacity(q1.group.order() * q2.group.order());
    for &b in &q2.representatives {
        for &r in &q1.representatives {
            table.push(q1.projection.apply(t.act(b, r)) as u32);
        }
    }
    let action = GroupAction::from_trusted(q2.group.clone(), q1.group.clone(), table);
    let object = CrossedModule::trusted(boundary, action);
    let projection = XModMorphism::trusted(t.clone(), object.clone(), q1.projection.clone(), q2.projection.clone());
    Ok(XQuotient { object, projection, q1, q2 })
}

/// `T / xnormal_closure(im f)`.
pub fn xcokernel(f: &XModMorphism) -> Result<XQuotient> {
    let im1 = f.f1().image();
    let im2 = f.f2().image();
    let n = xnormal_closure(f.dst(), im1.members(), im2.members())?;
    xquotient(&n)
}

/// The morphism `L → M` through which `m: T → M` factors along the regular
/// epimorphism `p: T → L`, if `ker p ⊆ ker m` at both levels.
pub fn descend(p: &XModMorphism, m: &XModMorphism) -> Result<XModMorphism> {
    if !p.is_regular_epi() {
        return Err(Error::Precondition("can only descend along a regular epimorphism".into()));
    }
    if *p.src() != *m.src() {
        return Err(Error::Mismatch("descend needs maps with a common source".into()));
    }
    let f1 = descend_grp(p.f1(), m.f1(), Level::One)?;
    let f2 = descend_grp(p.f2(), m.f2(), Level::Two)?;
    Ok(XModMorphism::trusted(p.dst().clone(), m.dst().clone(), f1, f2))
}

fn descend_grp(p: &GroupHom, m: &GroupHom, level: Level) -> Result<GroupHom> {
    const UNSET: u32 = u32::MAX;
    let mut map = vec![UNSET; p.dst().order()];
    for x in p.src().elements() {
        let slot = &mut map[p.apply(x)];
        let v = m.apply(x) as u32;
        if *slot == UNSET {
            *slot = v;
        } else if *slot != v {
            return Err(Error::NotWellDefined { level, element: x });
        }
    }
    Ok(GroupHom::from_trusted(p.dst().clone(), m.dst().clone(), map))
}

/// The pullback of `α: T → Q` and `g: Q' → Q`, computed levelwise with the
/// componentwise action.
#[derive(Clone, Debug)]
pub struct XPullback {
    pub object: Arc<CrossedModule>,
    /// Projection to the source of `α`.
    pub to_left: XModMorphism,
    /// Projection to the source of `g`.
    pub to_right: XModMorphism,
    pub p1: Pullback,
    pub p2: Pullback,
}

impl XPullback {
    pub fn mediate(&self, h_left: &XModMorphism, h_right: &XModMorphism) -> Result<XModMorphism> {
        if *h_left.src() != *h_right.src() {
            return Err(Error::Mismatch("cone legs have different sources".into()));
        }
        let f1 = self.p1.mediate(h_left.f1(), h_right.f1())?;
        let f2 = self.p2.mediate(h_left.f2(), h_right.f2())?;
        Ok(XModMorphism::trusted(h_left.src().clone(), self.object.clone(), f1, f2))
    }
}

pub fn xpullback(alpha: &XModMorphism, g: &XModMorphism) -> Result<XPullback> {
    if *alpha.dst() != *g.dst() {
        return Err(Error::Mismatch("pullback legs need a common codomain".into()));
    }
    let (t, tq) = (alpha.src(), g.src());
    let p1 = pullback_grp(alpha.f1(), g.f1())?;
    let p2 = pullback_grp(alpha.f2(), g.f2())?;
    let boundary = GroupHom::from_trusted(
        p1.group.clone(),
        p2.group.clone(),
        p1.pairs
            .iter()
            .map(|&(x, y)| p2.element_of(t.d(x), tq.d(y)).expect("boundary respects the fibers") as u32)
            .collect(),
    );
    let mut table = Vec::with_capacity(p1.pairs.len() * p2.pairs.len());
    for &(b, c) in &p2.pairs {
        for &(x, y) in &p1.pairs {
            table.push(p1.element_of(t.act(b, x), tq.act(c, y)).expect("action respects the fibers") as u32);
        }
    }
    let action = GroupAction::from_trusted(p2.group.clone(), p1.group.clone(), table);
    let object = CrossedModule::trusted(boundary, action);
    let to_left = XModMorphism::trusted(object.clone(), t.clone(), p1.to_a.clone(), p2.to_a.clone());
    let to_right = XModMorphism::trusted(object.clone(), tq.clone(), p1.to_b.clone(), p2.to_b.clone());
    Ok(XPullback { object, to_left, to_right, p1, p2 })
}
