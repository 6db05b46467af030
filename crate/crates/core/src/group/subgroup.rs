use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use super::{FiniteGroup, GroupHom};
use crate::{Error, Result};

/// A subgroup of a finite group, stored as a sorted member list plus a membership mask.
#[derive(Clone)]
pub struct Subgroup {
    parent: Arc<FiniteGroup>,
    members: Vec<usize>,
    mask: Vec<bool>,
}

impl fmt::Debug for Subgroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subgroup({:?} of {})", self.members, self.parent.order())
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.members == other.members && super::same_group(&self.parent, &other.parent)
    }
}

impl Eq for Subgroup {}

impl Subgroup {
    pub(crate) fn from_sorted_trusted(parent: Arc<FiniteGroup>, members: Vec<usize>) -> Subgroup {
        let mut mask = vec![false; parent.order()];
        for &m in &members {
            mask[m] = true;
        }
        Subgroup { parent, members, mask }
    }

    fn from_unsorted_trusted(parent: Arc<FiniteGroup>, mut members: Vec<usize>) -> Subgroup {
        members.sort_unstable();
        Self::from_sorted_trusted(parent, members)
    }

    /// Validates that `members` is a subgroup.
    pub fn from_members(parent: Arc<FiniteGroup>, members: &[usize]) -> Result<Subgroup> {
        let mut set: Vec<usize> = members.to_vec();
        set.sort_unstable();
        set.dedup();
        if let Some(&m) = set.iter().find(|&&m| m >= parent.order()) {
            return Err(Error::Mismatch(format!("{m} is not an element of the group")));
        }
        let sub = Self::from_sorted_trusted(parent, set);
        if !sub.mask[sub.parent.identity()] {
            return Err(Error::Mismatch("subgroup must contain the identity".into()));
        }
        for &a in &sub.members {
            for &b in &sub.members {
                if !sub.mask[sub.parent.mul(a, b)] {
                    return Err(Error::Mismatch(format!("not closed: {a}*{b} is missing")));
                }
            }
        }
        Ok(sub)
    }

    /// The subgroup generated by `elems`.
    pub fn generated(parent: &Arc<FiniteGroup>, elems: &[usize]) -> Subgroup {
        let members = parent.closure_of(elems);
        Self::from_unsorted_trusted(parent.clone(), members)
    }

    pub fn trivial(parent: &Arc<FiniteGroup>) -> Subgroup {
        Self::from_sorted_trusted(parent.clone(), vec![parent.identity()])
    }

    pub fn whole(parent: &Arc<FiniteGroup>) -> Subgroup {
        Self::from_sorted_trusted(parent.clone(), parent.elements().collect())
    }

    pub fn parent(&self) -> &Arc<FiniteGroup> {
        &self.parent
    }

    pub fn members(&self) -> &[usize] {
        &self.members
    }

    #[inline]
    pub fn contains(&self, x: usize) -> bool {
        self.mask[x]
    }

    pub fn order(&self) -> usize {
        self.members.len()
    }

    pub fn is_trivial(&self) -> bool {
        self.members.len() == 1
    }

    pub fn is_whole(&self) -> bool {
        self.members.len() == self.parent.order()
    }

    pub fn is_subset_of(&self, other: &Subgroup) -> bool {
        self.members.iter().all(|&m| other.contains(m))
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.members.len()
    }

    /// A witness `(member, by)` such that `by·member·by⁻¹` leaves the
    /// subgroup, or `None` when the subgroup is normal.
    pub fn normality_witness(&self) -> Option<(usize, usize)> {
        let g = &self.parent;
        for &by in g.generators() {
            for &m in &self.members {
                if !self.mask[g.conj(by, m)] {
                    return Some((m, by));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    pub fn intersect(&self, other: &Subgroup) -> Subgroup {
        let members = self.members.iter().copied().filter(|&m| other.contains(m)).collect();
        Self::from_sorted_trusted(self.parent.clone(), members)
    }

    pub fn join(&self, other: &Subgroup) -> Subgroup {
        let mut gens = self.members.clone();
        gens.extend_from_slice(&other.members);
        Subgroup::generated(&self.parent, &gens)
    }

    /// The image of the subgroup under `h`.
    pub fn image_under(&self, h: &GroupHom) -> Subgroup {
        let members = self.members.iter().map(|&m| h.apply(m)).collect::<BTreeSet<_>>();
        Self::from_sorted_trusted(h.dst().clone(), members.into_iter().collect())
    }

    /// The preimage of the subgroup under `h`.
    pub fn preimage_under(&self, h: &GroupHom) -> Subgroup {
        let members = h.src().elements().filter(|&x| self.contains(h.apply(x))).collect();
        Self::from_sorted_trusted(h.src().clone(), members)
    }

    /// Materializes the subgroup as a standalone group whose element `i` is
    /// `members()[i]`, together with the inclusion homomorphism.
    pub fn to_group(&self) -> (Arc<FiniteGroup>, GroupHom) {
        let k = self.members.len();
        let pos = self.positions();
        let mut table = Vec::with_capacity(k * k);
        for &a in &self.members {
            for &b in &self.members {
                table.push(pos[self.parent.mul(a, b)].expect("closed under products") as u32);
            }
        }
        let group = FiniteGroup::from_trusted_table(k, table);
        let incl = GroupHom::from_trusted(group.clone(), self.parent.clone(), self.members.iter().map(|&m| m as u32).collect());
        (group, incl)
    }

    /// For each parent element, its position in `members()` if present.
    pub fn positions(&self) -> Vec<Option<usize>> {
        let mut pos = vec![None; self.parent.order()];
        for (i, &m) in self.members.iter().enumerate() {
            pos[m] = Some(i);
        }
        pos
    }
}

/// Smallest normal subgroup of `g` containing `s`.
///
/// Fixpoint of close-then-conjugate: the current subgroup is normal as soon
/// as conjugating its generating set by the group generators stays inside.
pub fn normal_closure_grp(g: &Arc<FiniteGroup>, s: &[usize]) -> Subgroup {
    let mut gens: Vec<usize> = s.iter().copied().filter(|&x| x != g.identity()).collect();
    let mut sub = Subgroup::generated(g, &gens);
    loop {
        let mut added = false;
        for &by in g.generators() {
            for i in 0..gens.len() {
                let c = g.conj(by, gens[i]);
                if !sub.contains(c) {
                    gens.push(c);
                    sub = Subgroup::generated(g, &gens);
                    added = true;
                }
            }
        }
        if !added {
            return sub;
        }
    }
}

/// All subgroups, sorted by (order, members). Exhaustive: closes the set of
/// cyclic subgroups under joins.
pub fn all_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut cyclic: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        let s = Subgroup::generated(g, &[x]);
        if found.insert(s.members.clone()) {
            cyclic.push(s.members.clone());
        }
    }
    let mut frontier: Vec<Vec<usize>> = found.iter().cloned().collect();
    while let Some(h) = frontier.pop() {
        let hs = Subgroup::from_sorted_trusted(g.clone(), h);
        for c in &cyclic {
            if c.iter().all(|&x| hs.contains(x)) {
                continue;
            }
            let mut gens = hs.members.clone();
            gens.extend_from_slice(c);
            let j = Subgroup::generated(g, &gens);
            if found.insert(j.members.clone()) {
                frontier.push(j.members);
            }
        }
    }
    sorted(g, found)
}

/// All normal subgroups, sorted by (order, members). Every normal subgroup is
/// a join of normal closures of single elements.
pub fn normal_subgroups(g: &Arc<FiniteGroup>) -> Vec<Subgroup> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut atoms: Vec<Vec<usize>> = Vec::new();
    for x in g.elements() {
        let n = normal_closure_grp(g, &[x]);
        if found.insert(n.members.clone()) {
            atoms.push(n.members.clone());
        }
    }
    let mut frontier: Vec<Vec<usize>> = found.iter().cloned().collect();
    while let Some(h) = frontier.pop() {
        let hs = Subgroup::from_sorted_trusted(g.clone(), h);
        for a in &atoms {
            if a.iter().all(|&x| hs.contains(x)) {
                continue;
            }
            let mut gens = hs.members.clone();
            gens.extend_from_slice(a);
            let j = Subgroup::generated(g, &gens);
            if found.insert(j.members.clone()) {
                frontier.push(j.members);
            }
        }
    }
    sorted(g, found)
}

fn sorted(g: &Arc<FiniteGroup>, found: BTreeSet<Vec<usize>>) -> Vec<Subgroup> {
    let mut out: Vec<Subgroup> = found.into_iter().map(|m| Subgroup::from_sorted_trusted(g.clone(), m)).collect();
    out.sort_by(|a, b| a.order().cmp(&b.order()).then_with(|| a.members.cmp(&b.members)));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_group, GroupSpec};
    use crate::Limits;

    fn g(spec: GroupSpec) -> Arc<FiniteGroup> {
        named_group(&spec, &Limits::default()).unwrap()
    }

    #[test]
    fn transposition_normally_generates_s3() {
        let s3 = g(GroupSpec::Symmetric(3));
        assert!(normal_closure_grp(&s3, &[1]).is_whole());
    }

    #[test]
    fn empty_set_closes_to_trivial() {
        let s3 = g(GroupSpec::Symmetric(3));
        assert!(normal_closure_grp(&s3, &[]).is_trivial());
    }

    #[test]
    fn rotation_squared_is_central_in_d4() {
        let d4 = g(GroupSpec::Dihedral(4));
        // r^2 has index 2 in the rotation-first ordering.
        assert_eq!(normal_closure_grp(&d4, &[2]).members(), &[0, 2]);
    }

    #[test]
    fn subgroup_counts() {
        assert_eq!(all_subgroups(&g(GroupSpec::Symmetric(3))).len(), 6);
        assert_eq!(all_subgroups(&g(GroupSpec::Dihedral(4))).len(), 10);
        assert_eq!(all_subgroups(&g(GroupSpec::Symmetric(4))).len(), 30);
        assert_eq!(normal_subgroups(&g(GroupSpec::Symmetric(4))).len(), 4);
        assert_eq!(normal_subgroups(&g(GroupSpec::Dihedral(4))).len(), 6);
        assert_eq!(normal_subgroups(&g(GroupSpec::Quaternion)).len(), 6);
    }

    #[test]
    fn from_members_rejects_non_subgroups() {
        let c4 = g(GroupSpec::Cyclic(4));
        assert!(Subgroup::from_members(c4.clone(), &[0, 1]).is_err());
        assert!(Subgroup::from_members(c4.clone(), &[2]).is_err());
        assert!(Subgroup::from_members(c4, &[0, 2]).is_ok());
    }
}
