//! Iterated cokernels: nullification `P_A` and `L_f`.
//!
//! Each step quotients the current object by the normal closure of the
//! union of images of all morphisms out of a fixed finite object. A step
//! that changes anything strictly shrinks `|T₁| + |T₂|`, so the loop
//! stabilizes after at most that many steps.

use std::sync::Arc;

use super::LocalizationResult;
use crate::xmod::{enumerate_xmod_morphisms, xkernel, xnormal_closure, xquotient, CrossedModule, XModMorphism};
use crate::{Error, Limits, Result};

fn iterate(
    t: &Arc<CrossedModule>,
    mut images: impl FnMut(&Arc<CrossedModule>) -> Result<(Vec<usize>, Vec<usize>)>,
) -> Result<LocalizationResult> {
    let cap = t.size();
    let mut cur = t.clone();
    let mut total = XModMorphism::identity(t);
    let mut trace = Vec::new();
    for _ in 0..=cap {
        let (s1, s2) = images(&cur)?;
        if s1.is_empty() && s2.is_empty() {
            return Ok(LocalizationResult { source: t.clone(), local: cur, coaugmentation: total, trace });
        }
        let k = xnormal_closure(&cur, &s1, &s2)?;
        let q = xquotient(&k)?;
        total = total.then(&q.projection)?;
        trace.push(q.projection);
        cur = q.object;
    }
    Err(Error::StageAssertionFailed { stage: cap + 1, invariant: "iteration did not stabilize".into() })
}

fn collect(ms: &[XModMorphism], k1: &[usize], k2: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let mut s1 = Vec::new();
    let mut s2 = Vec::new();
    for m in ms {
        let (e1, e2) = (m.dst().bottom().identity(), m.dst().top().identity());
        s1.extend(k1.iter().map(|&x| m.f1().apply(x)).filter(|&y| y != e1));
        s2.extend(k2.iter().map(|&x| m.f2().apply(x)).filter(|&y| y != e2));
    }
    s1.sort_unstable();
    s1.dedup();
    s2.sort_unstable();
    s2.dedup();
    (s1, s2)
}

/// `P_A T`: kill the images of all morphisms `A → T_β` until none is left.
pub fn nullify(a: &Arc<CrossedModule>, t: &Arc<CrossedModule>, limits: &Limits) -> Result<LocalizationResult> {
    let k1: Vec<usize> = a.bottom().generators().to_vec();
    let k2: Vec<usize> = a.top().generators().to_vec();
    iterate(t, |cur| {
        let ms = enumerate_xmod_morphisms(a, cur, limits)?;
        Ok(collect(&ms, &k1, &k2))
    })
}

/// `L_f T` for a regular epimorphism `f: B → C`: kill `g(ker f)` for every
/// `g: B → T_β` until every such `g` factors through `f`.
pub fn loc_lf(f: &XModMorphism, t: &Arc<CrossedModule>, limits: &Limits) -> Result<LocalizationResult> {
    if !f.is_regular_epi() {
        return Err(Error::Unsupported("L_f needs a regular epimorphism f".into()));
    }
    let k = xkernel(f);
    let k1 = k.n1().members().to_vec();
    let k2 = k.n2().members().to_vec();
    iterate(t, |cur| {
        let ms = enumerate_xmod_morphisms(f.src(), cur, limits)?;
        Ok(collect(&ms, &k1, &k2))
    })
}

/// `P_A T = 1`.
pub fn is_acyclic(a: &Arc<CrossedModule>, t: &Arc<CrossedModule>, limits: &Limits) -> Result<bool> {
    Ok(nullify(a, t, limits)?.local.is_trivial())
}
