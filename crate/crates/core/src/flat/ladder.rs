//! The parallel construction of `Q_β` and `W_β` for a nullification.
//!
//! `W_β` is kept as the literal pullback of `h` along `Q_β → P_A Q`; the
//! quotient `W_β / K^W_β` is then checked to coincide with `W_{β+1}` through
//! the canonical map.

use std::sync::Arc;

use super::AdmissibilitySquare;
use crate::localize::Localizer;
use crate::xmod::{descend, enumerate_xmod_morphisms, xkernel, xnormal_closure, xpullback, xquotient, CrossedModule, SubCrossedModule, XModMorphism, XPullback};
use crate::{Error, Limits, Result};

#[derive(Clone, Debug)]
pub struct LadderStage {
    pub q: Arc<CrossedModule>,
    pub w: Arc<CrossedModule>,
    pub h: XModMorphism,
    /// Normal closure in `Q_β` of the images of all `A → Q_β`.
    pub kernel_q: SubCrossedModule,
    /// Normal closure in `W_β` of the images of the induced `A → W_β`.
    pub kernel_w: SubCrossedModule,
}

#[derive(Clone, Debug)]
pub struct NullificationLadder {
    pub a: Arc<CrossedModule>,
    pub stages: Vec<LadderStage>,
}

impl NullificationLadder {
    /// Stages that killed something.
    pub fn nontrivial_stages(&self) -> usize {
        self.stages.iter().filter(|s| !s.kernel_q.is_trivial()).count()
    }
}

struct Kernels {
    kq: SubCrossedModule,
    kw: SubCrossedModule,
}

/// `K_Q` and `K_W` for `W = LT ×_{LQ} Q`. Each `φ: A → Q` lifts to
/// `ψ = (1, φ): A → W`.
fn kernels(a: &Arc<CrossedModule>, pb: &XPullback, limits: &Limits) -> Result<Kernels> {
    let q = pb.to_right.dst();
    let lt = pb.to_left.dst();
    let w = &pb.object;
    let to_lt = XModMorphism::trivial(a, lt);
    let (mut q1, mut q2, mut w1, mut w2) = (Vec::new(), Vec::new(), Vec::new(), Vec::new());
    for phi in enumerate_xmod_morphisms(a, q, limits)? {
        let psi = pb.mediate(&to_lt, &phi)?;
        for x in a.bottom().elements() {
            q1.push(phi.f1().apply(x));
            w1.push(psi.f1().apply(x));
        }
        for x in a.top().elements() {
            q2.push(phi.f2().apply(x));
            w2.push(psi.f2().apply(x));
        }
    }
    for v in [&mut q1, &mut q2, &mut w1, &mut w2] {
        v.sort_unstable();
        v.dedup();
    }
    Ok(Kernels { kq: xnormal_closure(q, &q1, &q2)?, kw: xnormal_closure(w, &w1, &w2)? })
}

/// `K_W = {1} × K_Q` elementwise in pullback coordinates.
fn kernels_match(pb: &XPullback, k: &Kernels) -> bool {
    let lt = pb.to_left.dst();
    let level = |pairs: &[(usize, usize)], kw: &[usize], kq: &crate::group::Subgroup, e: usize| {
        kw.len() == kq.order() && kw.iter().all(|&x| pairs[x].0 == e && kq.contains(pairs[x].1))
    };
    level(&pb.p1.pairs, k.kw.n1().members(), k.kq.n1(), lt.bottom().identity())
        && level(&pb.p2.pairs, k.kw.n2().members(), k.kq.n2(), lt.top().identity())
}

fn nullifier(a: &Arc<CrossedModule>) -> Localizer {
    Localizer::nullification("A", a.clone())
}

/// Checks `K_W ≅ K_Q` for the square of `h: X → P_A Q` along `Q → P_A Q`.
pub fn isokernel_check(a: &Arc<CrossedModule>, h: &XModMorphism, q: &Arc<CrossedModule>, limits: &Limits) -> Result<bool> {
    let sq = AdmissibilitySquare::new(&nullifier(a), h.clone(), q.clone(), limits)?;
    Ok(kernels_match(&sq.pullback, &kernels(a, &sq.pullback, limits)?))
}

fn fail(stage: usize, invariant: &str) -> Error {
    Error::StageAssertionFailed { stage, invariant: invariant.into() }
}

pub fn nullification_ladder(a: &Arc<CrossedModule>, h: &XModMorphism, q: &Arc<CrossedModule>, limits: &Limits) -> Result<NullificationLadder> {
    let l = nullifier(a);
    let sq = AdmissibilitySquare::new(&l, h.clone(), q.clone(), limits)?;
    let mut v = sq.ell_q.clone();
    let mut pb = sq.pullback;
    let mut stages = Vec::new();
    for beta in 0..=q.size() {
        let h_beta = pb.to_right.clone();
        if !h_beta.is_regular_epi() {
            return Err(fail(beta, "h_beta is not a regular epimorphism"));
        }
        let k = kernels(a, &pb, limits)?;
        if !kernels_match(&pb, &k) {
            return Err(fail(beta, "K_W is not 1 x K_Q"));
        }
        let done = k.kq.is_trivial();
        stages.push(LadderStage {
            q: v.src().clone(),
            w: pb.object.clone(),
            h: h_beta.clone(),
            kernel_q: k.kq.clone(),
            kernel_w: k.kw.clone(),
        });
        if done {
            if !v.is_iso() {
                return Err(fail(beta, "final Q stage is not the nullification of Q"));
            }
            if !pb.to_left.is_iso() {
                return Err(fail(beta, "final W stage is not isomorphic to P_A T"));
            }
            return Ok(NullificationLadder { a: a.clone(), stages });
        }
        let qq = xquotient(&k.kq)?;
        let v_next = descend(&qq.projection, &v)?;
        let pb_next = xpullback(h, &v_next)?;
        let step_w = pb_next.mediate(&pb.to_left, &h_beta.then(&qq.projection)?)?;
        if !step_w.is_regular_epi() || xkernel(&step_w) != k.kw {
            return Err(fail(beta, "W_{beta+1} is not W_beta / K_W (square is not a pullback)"));
        }
        if !l.is_equivalence(&qq.projection, limits)? || !l.is_equivalence(&step_w, limits)? {
            return Err(fail(beta, "stage map is not a P_A-equivalence"));
        }
        v = v_next;
        pb = pb_next;
    }
    Err(fail(q.size() + 1, "ladder did not stabilize"))
}
