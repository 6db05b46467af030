use std::fmt;
use std::sync::Arc;

use super::{CrossedModule, XModMorphism};
use crate::group::{normal_closure_grp, normal_subgroups, GroupAction, GroupHom, Subgroup};
use crate::{Error, Result};

/// A subcrossed module `(N₁, N₂)` of `parent`: `∂N₁ ⊆ N₂` and `N₁` is
/// stable under the action of `N₂`.
#[derive(Clone, PartialEq, Eq)]
pub struct SubCrossedModule {
    parent: Arc<CrossedModule>,
    n1: Subgroup,
    n2: Subgroup,
}

impl fmt::Debug for SubCrossedModule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Sub({:?}, {:?})", self.n1.members(), self.n2.members())
    }
}

/// The first condition that keeps a subcrossed module from being normal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum NormalityViolation {
    /// `by · member · by⁻¹ ∉ N₂`.
    TopNotNormal { member: usize, by: usize },
    /// `ᵇn ∉ N₁` for some `b ∈ T₂`.
    NotStable { b: usize, n: usize },
    /// `ⁿt · t⁻¹ ∉ N₁` for `n ∈ N₂`, `t ∈ T₁`.
    CommutatorEscapes { n: usize, t: usize },
}

impl fmt::Display for NormalityViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::TopNotNormal { member, by } => write!(f, "N2 is not normal: conjugating {member} by {by} leaves it"),
            Self::NotStable { b, n } => write!(f, "N1 is not T2-stable: {b} acting on {n} leaves it"),
            Self::CommutatorEscapes { n, t } => write!(f, "[N2, T1] is not inside N1: witness n = {n}, t = {t}"),
        }
    }
}

impl SubCrossedModule {
    pub fn new(parent: Arc<CrossedModule>, n1: Subgroup, n2: Subgroup) -> Result<SubCrossedModule> {
        if !crate::group::same_group(n1.parent(), parent.bottom()) || !crate::group::same_group(n2.parent(), parent.top()) {
            return Err(Error::Mismatch("subgroups of the wrong groups".into()));
        }
        if let Some(&t) = n1.members().iter().find(|&&t| !n2.contains(parent.d(t))) {
            return Err(Error::NotSubCrossedModule(format!("boundary of {t} leaves N2")));
        }
        for &b in n2.members() {
            if let Some(&t) = n1.members().iter().find(|&&t| !n1.contains(parent.act(b, t))) {
                return Err(Error::NotSubCrossedModule(format!("{b} acting on {t} leaves N1")));
            }
        }
        Ok(SubCrossedModule { parent, n1, n2 })
    }

    pub(crate) fn trusted(parent: Arc<CrossedModule>, n1: Subgroup, n2: Subgroup) -> SubCrossedModule {
        debug_assert!(SubCrossedModule::new(parent.clone(), n1.clone(), n2.clone()).is_ok());
        SubCrossedModule { parent, n1, n2 }
    }

    pub fn trivial(parent: &Arc<CrossedModule>) -> SubCrossedModule {
        SubCrossedModule {
            parent: parent.clone(),
            n1: Subgroup::trivial(parent.bottom()),
            n2: Subgroup::trivial(parent.top()),
        }
    }

    pub fn whole(parent: &Arc<CrossedModule>) -> SubCrossedModule {
        SubCrossedModule {
            parent: parent.clone(),
            n1: Subgroup::whole(parent.bottom()),
            n2: Subgroup::whole(parent.top()),
        }
    }

    pub fn parent(&self) -> &Arc<CrossedModule> {
        &self.parent
    }

    pub fn n1(&self) -> &Subgroup {
        &self.n1
    }

    pub fn n2(&self) -> &Subgroup {
        &self.n2
    }

    pub fn is_trivial(&self) -> bool {
        self.n1.is_trivial() && self.n2.is_trivial()
    }

    pub fn is_subset_of(&self, other: &SubCrossedModule) -> bool {
        self.n1.is_subset_of(&other.n1) && self.n2.is_subset_of(&other.n2)
    }

    pub fn violation(&self) -> Option<NormalityViolation> {
        let t = &self.parent;
        if let Some((member, by)) = self.n2.normality_witness() {
            return Some(NormalityViolation::TopNotNormal { member, by });
        }
        for &b in t.top().generators() {
            for &n in self.n1.members() {
                if !self.n1.contains(t.act(b, n)) {
                    return Some(NormalityViolation::NotStable { b, n });
                }
            }
        }
        let t1 = t.bottom();
        for &n in self.n2.members() {
            for x in t1.elements() {
                if !self.n1.contains(t1.mul(t.act(n, x), t1.inv(x))) {
                    return Some(NormalityViolation::CommutatorEscapes { n, t: x });
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.violation().is_none()
    }

    /// The subcrossed module as a crossed module of its own, with its
    /// inclusion into the parent.
    pub fn to_xmod(&self) -> (Arc<CrossedModule>, XModMorphism) {
        let (g1, i1) = self.n1.to_group();
        let (g2, i2) = self.n2.to_group();
        let p1 = self.n1.positions();
        let p2 = self.n2.positions();
        let t = &self.parent;
        let boundary = GroupHom::from_trusted(
            g1.clone(),
            g2.clone(),
            self.n1.members().iter().map(|&m| p2[t.d(m)].expect("boundary lands in N2") as u32).collect(),
        );
        let mut table = Vec::with_capacity(g1.order() * g2.order());
        for &b in self.n2.members() {
            for &m in self.n1.members() {
                table.push(p1[t.act(b, m)].expect("N1 is N2-stable") as u32);
            }
        }
        let action = GroupAction::from_trusted(g2, g1, table);
        let x = CrossedModule::trusted(boundary, action);
        let incl = XModMorphism::trusted(x.clone(), t.clone(), i1, i2);
        (x, incl)
    }
}

/// `(ker f₁, ker f₂)`, a normal subcrossed module of the source.
pub fn xkernel(f: &XModMorphism) -> SubCrossedModule {
    SubCrossedModule::trusted(f.src().clone(), f.f1().kernel(), f.f2().kernel())
}

/// `(im f₁, im f₂)`.
pub fn ximage(f: &XModMorphism) -> SubCrossedModule {
    SubCrossedModule::trusted(f.dst().clone(), f.f1().image(), f.f2().image())
}

/// Smallest normal subcrossed module containing `s1 ⊆ T₁` and `s2 ⊆ T₂`.
///
/// Grows both levels until `N₂` is normal, contains `∂N₁`, `N₁` is stable
/// under the generators of `T₂` and contains `ⁿt·t⁻¹` for `n ∈ N₂` and `t`
/// among the generators of `T₁`. Stability turns the last condition on
/// generators into the condition on all of `T₁`.
pub fn xnormal_closure(t: &Arc<CrossedModule>, s1: &[usize], s2: &[usize]) -> Result<SubCrossedModule> {
    let (t1, t2) = (t.bottom(), t.top());
    check_range(s1, t1.order())?;
    check_range(s2, t2.order())?;
    let mut g1: Vec<usize> = s1.to_vec();
    let mut n1 = Subgroup::generated(t1, &g1);
    let mut n2 = normal_closure_grp(t2, s2);
    loop {
        let mut top: Vec<usize> = n2.members().to_vec();
        top.extend(n1.members().iter().map(|&x| t.d(x)));
        let next2 = normal_closure_grp(t2, &top);
        for &b in t2.generators() {
            g1.extend(n1.members().iter().map(|&x| t.act(b, x)));
        }
        for &n in next2.members() {
            for &x in t1.generators() {
                g1.push(t1.mul(t.act(n, x), t1.inv(x)));
            }
        }
        g1.sort_unstable();
        g1.dedup();
        let next1 = Subgroup::generated(t1, &g1);
        if next1 == n1 && next2 == n2 {
            return Ok(SubCrossedModule::trusted(t.clone(), n1, n2));
        }
        n1 = next1;
        n2 = next2;
        g1 = n1.members().to_vec();
    }
}

/// The same closure in one step:
/// `N₂ = ncl(S₂ ∪ ∂S₁)` and `N₁ = ⟨T₂·S₁, [N₂, T₁]⟩`.
pub fn xnormal_closure_formula(t: &Arc<CrossedModule>, s1: &[usize], s2: &[usize]) -> Result<SubCrossedModule> {
    let (t1, t2) = (t.bottom(), t.top());
    check_range(s1, t1.order())?;
    check_range(s2, t2.order())?;
    let mut top = s2.to_vec();
    top.extend(s1.iter().map(|&x| t.d(x)));
    let n2 = normal_closure_grp(t2, &top);
    let mut gens = Vec::new();
    for b in t2.elements() {
        gens.extend(s1.iter().map(|&x| t.act(b, x)));
    }
    for &n in n2.members() {
        for x in t1.elements() {
            gens.push(t1.mul(t.act(n, x), t1.inv(x)));
        }
    }
    let n1 = Subgroup::generated(t1, &gens);
    Ok(SubCrossedModule::trusted(t.clone(), n1, n2))
}

fn check_range(s: &[usize], n: usize) -> Result<()> {
    match s.iter().find(|&&x| x >= n) {
        Some(&x) => Err(Error::Mismatch(format!("element {x} is out of range for a group of order {n}"))),
        None => Ok(()),
    }
}

/// Every normal subcrossed module, by exhaustive search over pairs of
/// normal subgroups.
pub fn all_normal_subs(t: &Arc<CrossedModule>) -> Vec<SubCrossedModule> {
    let tops = normal_subgroups(t.top());
    let bottoms = normal_subgroups(t.bottom());
    let mut out = Vec::new();
    for n2 in &tops {
        for n1 in &bottoms {
            if n1.members().iter().any(|&x| !n2.contains(t.d(x))) {
                continue;
            }
            let s = SubCrossedModule { parent: t.clone(), n1: n1.clone(), n2: n2.clone() };
            if s.is_normal() {
                out.push(s);
            }
        }
    }
    out
}
