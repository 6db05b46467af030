use std::ops::ControlFlow;
use std::sync::Arc;

use super::{CrossedModule, XModMorphism};
use crate::group::search::GenSearch;
use crate::group::{FiniteGroup, GroupHom};
use crate::{Error, Limits, Result};

fn equivariant(a: &CrossedModule, t: &CrossedModule, f1: &[u32], f2: &GroupHom) -> bool {
    a.top().generators().iter().all(|&b| {
        a.bottom()
            .generators()
            .iter()
            .all(|&x| f1[a.act(b, x)] as usize == t.act(f2.apply(b), f1[x] as usize))
    })
}

/// Level 2 maps, then for each the level 1 maps lying over it.
fn search(
    a: &Arc<CrossedModule>,
    t: &Arc<CrossedModule>,
    injective: bool,
    limits: &Limits,
    mut visit: impl FnMut(XModMorphism) -> ControlFlow<()>,
) -> Result<()> {
    let order_ok = |g: &FiniteGroup, x: usize, h: &FiniteGroup, y: usize| {
        if injective {
            g.element_order(x) == h.element_order(y)
        } else {
            g.element_order(x) % h.element_order(y) == 0
        }
    };
    let (a1, a2, t1, t2) = (a.bottom(), a.top(), t.bottom(), t.top());
    let top_candidates = a2
        .generators()
        .iter()
        .map(|&x| t2.elements().filter(|&y| order_ok(a2, x, t2, y)).collect())
        .collect();
    let top = GenSearch { src: a2, dst: t2, gens: a2.generators(), candidates: top_candidates, injective, limits };
    let mut tops = Vec::new();
    top.run(|m| {
        tops.push(GroupHom::from_trusted(a2.clone(), t2.clone(), m.to_vec()));
        ControlFlow::Continue(())
    })?;
    for f2 in tops {
        let candidates = a1
            .generators()
            .iter()
            .map(|&x| {
                let target = f2.apply(a.d(x));
                t1.elements().filter(|&y| t.d(y) == target && order_ok(a1, x, t1, y)).collect()
            })
            .collect();
        let bottom = GenSearch { src: a1, dst: t1, gens: a1.generators(), candidates, injective, limits };
        let mut stop = false;
        bottom.run(|m| {
            if !equivariant(a, t, m, &f2) {
                return ControlFlow::Continue(());
            }
            let f1 = GroupHom::from_trusted(a1.clone(), t1.clone(), m.to_vec());
            match visit(XModMorphism::trusted(a.clone(), t.clone(), f1, f2.clone())) {
                ControlFlow::Break(()) => {
                    stop = true;
                    ControlFlow::Break(())
                }
                c => c,
            }
        })?;
        if stop {
            break;
        }
    }
    Ok(())
}

/// All morphisms `A → T`.
pub fn enumerate_xmod_morphisms(a: &Arc<CrossedModule>, t: &Arc<CrossedModule>, limits: &Limits) -> Result<Vec<XModMorphism>> {
    let mut out = Vec::new();
    let mut overflow = false;
    search(a, t, false, limits, |f| {
        if out.len() >= limits.max_results {
            overflow = true;
            return ControlFlow::Break(());
        }
        out.push(f);
        ControlFlow::Continue(())
    })?;
    if overflow {
        return Err(Error::SizeLimitExceeded { what: "morphism count", limit: limits.max_results });
    }
    Ok(out)
}

/// An isomorphism `A → T` if one exists.
pub fn are_isomorphic_xmod(a: &Arc<CrossedModule>, t: &Arc<CrossedModule>, limits: &Limits) -> Result<Option<XModMorphism>> {
    if a.bottom().order() != t.bottom().order()
        || a.top().order() != t.top().order()
        || a.bottom().order_profile() != t.bottom().order_profile()
        || a.top().order_profile() != t.top().order_profile()
    {
        return Ok(None);
    }
    if **a == **t {
        return Ok(Some(XModMorphism::identity(a)));
    }
    let mut found = None;
    search(a, t, true, limits, |f| {
        found = Some(f);
        ControlFlow::Break(())
    })?;
    Ok(found)
}
