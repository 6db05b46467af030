use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::search::GenSearch;
use super::{same_group, FiniteGroup, GroupHom, Subgroup};
use crate::{Error, Limits, Result};

/// All homomorphisms `g → h`, in lexicographic order of the images of
/// `g.generators()`. A generator of order `m` can only map to elements whose
/// order divides `m`.
pub fn enumerate_homs(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>, limits: &Limits) -> Result<Vec<GroupHom>> {
    let candidates = g
        .generators()
        .iter()
        .map(|&x| {
            let m = g.element_order(x);
            h.elements().filter(|&y| m % h.element_order(y) == 0).collect()
        })
        .collect();
    let search = GenSearch { src: g, dst: h, gens: g.generators(), candidates, injective: false, limits };
    let mut out = Vec::new();
    let mut overflow = false;
    search.run(|map| {
        if out.len() >= limits.max_results {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(GroupHom::from_trusted(g.clone(), h.clone(), map.to_vec()));
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::SizeLimitExceeded { what: "homomorphism count", limit: limits.max_results });
    }
    Ok(out)
}

/// An isomorphism `g → h` if one exists.
///
/// Screens by order and element-order profile, then backtracks over
/// injective generator images of matching element order.
pub fn are_isomorphic_grp(g: &Arc<FiniteGroup>, h: &Arc<FiniteGroup>, limits: &Limits) -> Result<Option<GroupHom>> {
    if g.order() != h.order() || g.order_profile() != h.order_profile() {
        return Ok(None);
    }
    if same_group(g, h) {
        return Ok(Some(GroupHom::identity(g)));
    }
    let candidates = g
        .generators()
        .iter()
        .map(|&x| {
            let m = g.element_order(x);
            h.elements().filter(|&y| h.element_order(y) == m).collect()
        })
        .collect();
    let search = GenSearch { src: g, dst: h, gens: g.generators(), candidates, injective: true, limits };
    let mut found = None;
    search.run(|map| {
        found = Some(GroupHom::from_trusted(g.clone(), h.clone(), map.to_vec()));
        ControlFlow::Break(())
    })?;
    Ok(found)
}

/// `G/N` with its projection. Cosets are ordered by their least element,
/// which is also the representative.
#[derive(Clone, Debug)]
pub struct Quotient {
    pub group: Arc<FiniteGroup>,
    pub projection: GroupHom,
    /// `representatives[i]` is the least element of coset `i`.
    pub representatives: Vec<usize>,
}

pub fn quotient_grp(g: &Arc<FiniteGroup>, n: &Subgroup) -> Result<Quotient> {
    if !same_group(g, n.parent()) {
        return Err(Error::Mismatch("subgroup of a different group".into()));
    }
    if let Some((member, by)) = n.normality_witness() {
        return Err(Error::NotNormal { member, by });
    }
    const UNSET: u32 = u32::MAX;
    let mut class = vec![UNSET; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if class[x] != UNSET {
            continue;
        }
        let c = reps.len() as u32;
        reps.push(x);
        for &m in n.members() {
            class[g.mul(x, m)] = c;
        }
    }
    let k = reps.len();
    let mut table = Vec::with_capacity(k * k);
    for &a in &reps {
        for &b in &reps {
            table.push(class[g.mul(a, b)]);
        }
    }
    let group = FiniteGroup::from_trusted_table(k, table);
    let projection = GroupHom::from_trusted(g.clone(), group.clone(), class);
    Ok(Quotient { group, projection, representatives: reps })
}

/// The fiber product `{(a, b) : f(a) = g(b)}` with its projections.
#[derive(Clone, Debug)]
pub struct Pullback {
    pub group: Arc<FiniteGroup>,
    pub to_a: GroupHom,
    pub to_b: GroupHom,
    /// Element `i` of `group` is the pair `pairs[i]`, in lexicographic order.
    pub pairs: Vec<(usize, usize)>,
    index: HashMap<(usize, usize), usize>,
}

impl Pullback {
    pub fn element_of(&self, a: usize, b: usize) -> Option<usize> {
        self.index.get(&(a, b)).copied()
    }

    /// The unique homomorphism `x → P` with `π_A ∘ m = h_a` and `π_B ∘ m = h_b`.
    pub fn mediate(&self, h_a: &GroupHom, h_b: &GroupHom) -> Result<GroupHom> {
        if !same_group(h_a.src(), h_b.src()) {
            return Err(Error::Mismatch("cone legs have different sources".into()));
        }
        if !same_group(h_a.dst(), self.to_a.dst()) || !same_group(h_b.dst(), self.to_b.dst()) {
            return Err(Error::Mismatch("cone legs do not land in the pullback factors".into()));
        }
        let x = h_a.src();
        let mut map = Vec::with_capacity(x.order());
        for e in x.elements() {
            match self.element_of(h_a.apply(e), h_b.apply(e)) {
                Some(p) => map.push(p as u32),
                None => return Err(Error::Mismatch(format!("cone does not commute at {e}"))),
            }
        }
        Ok(GroupHom::from_trusted(x.clone(), self.group.clone(), map))
    }
}

pub fn pullback_grp(f: &GroupHom, g: &GroupHom) -> Result<Pullback> {
    if !same_group(f.dst(), g.dst()) {
        return Err(Error::Mismatch("pullback legs need a common codomain".into()));
    }
    let (a, b) = (f.src(), g.src());
    let mut pairs = Vec::new();
    for x in a.elements() {
        for y in b.elements() {
            if f.apply(x) == g.apply(y) {
                pairs.push((x, y));
            }
        }
    }
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let k = pairs.len();
    let mut table = Vec::with_capacity(k * k);
    for &(x1, y1) in &pairs {
        for &(x2, y2) in &pairs {
            table.push(index[&(a.mul(x1, x2), b.mul(y1, y2))] as u32);
        }
    }
    let group = FiniteGroup::from_trusted_table(k, table);
    let to_a = GroupHom::from_trusted(group.clone(), a.clone(), pairs.iter().map(|p| p.0 as u32).collect());
    let to_b = GroupHom::from_trusted(group.clone(), b.clone(), pairs.iter().map(|p| p.1 as u32).collect());
    Ok(Pullback { group, to_a, to_b, pairs, index })
}
