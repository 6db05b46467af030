//! Localization functors on crossed modules.
//!
//! Closed formulas for `Ab`, `I` and `P_{XZ}`, the generic nullification
//! `P_A` and `L_f` for a regular epimorphism `f`. All of them except `I` have
//! regular-epi coaugmentations, so induced maps are computed by descending
//! `ℓ^M ∘ m` along `ℓ^N`.

mod iterate;

use std::fmt;
use std::sync::Arc;

use crate::group::Subgroup;
use crate::xmod::{descend, enumerate_xmod_morphisms, functor_r, xnormal_closure, xquotient, CrossedModule, SubCrossedModule, XModMorphism};
use crate::{Error, Limits, Result};

pub use iterate::{is_acyclic, loc_lf, nullify};

/// The output of a localization: `ℓ: T → LT` and, for iterative kinds, the
/// chain of quotient steps whose composite is `ℓ`.
#[derive(Clone, Debug)]
pub struct LocalizationResult {
    pub source: Arc<CrossedModule>,
    pub local: Arc<CrossedModule>,
    pub coaugmentation: XModMorphism,
    pub trace: Vec<XModMorphism>,
}

impl LocalizationResult {
    fn closed(source: &Arc<CrossedModule>, coaugmentation: XModMorphism) -> LocalizationResult {
        LocalizationResult {
            source: source.clone(),
            local: coaugmentation.dst().clone(),
            coaugmentation,
            trace: Vec::new(),
        }
    }
}

#[derive(Clone, Debug)]
pub enum Localizer {
    /// `(T₁/[T₂,T₁], T₂/[T₂,T₂])`.
    Ab,
    /// `(T₂, T₂, id)`.
    I,
    /// `(T₁/[T₂,T₁], 1)`.
    Pxz,
    Nullify { name: String, a: Arc<CrossedModule> },
    Lf { name: String, f: XModMorphism },
}

impl fmt::Display for Localizer {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Localizer::Ab => write!(f, "ab"),
            Localizer::I => write!(f, "i"),
            Localizer::Pxz => write!(f, "pxz"),
            Localizer::Nullify { name, .. } => write!(f, "nullify:{name}"),
            Localizer::Lf { name, .. } => write!(f, "lf:{name}"),
        }
    }
}

/// Generators of `[T₂,T₁] = ⟨ᵇt·t⁻¹⟩`.
pub fn action_commutators(t: &CrossedModule) -> Vec<usize> {
    let t1 = t.bottom();
    let mut out = Vec::new();
    for &b in t.top().generators() {
        for x in t1.elements() {
            let c = t1.mul(t.act(b, x), t1.inv(x));
            if c != t1.identity() {
                out.push(c);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// `[T₂,T₁]` as a subgroup. The generators above suffice because
/// `^{bb'}t·t⁻¹ = ^b(^{b'}t·t⁻¹)·(^b t·t⁻¹)` and the resulting subgroup is
/// `T₂`-stable.
pub fn action_commutator_subgroup(t: &Arc<CrossedModule>) -> Subgroup {
    let gens = action_commutators(t);
    let mut sub = Subgroup::generated(t.bottom(), &gens);
    loop {
        let extra: Vec<usize> = t
            .top()
            .generators()
            .iter()
            .flat_map(|&b| sub.members().iter().map(move |&x| (b, x)))
            .map(|(b, x)| t.act(b, x))
            .filter(|&y| !sub.contains(y))
            .collect();
        if extra.is_empty() {
            return sub;
        }
        let mut all = sub.members().to_vec();
        all.extend(extra);
        sub = Subgroup::generated(t.bottom(), &all);
    }
}

pub fn loc_ab(t: &Arc<CrossedModule>) -> Result<LocalizationResult> {
    let t2 = t.top();
    let mut top = Vec::new();
    for &a in t2.generators() {
        for b in t2.elements() {
            top.push(t2.commutator(a, b));
        }
    }
    let n = xnormal_closure(t, &action_commutators(t), &top)?;
    let q = xquotient(&n)?;
    Ok(LocalizationResult::closed(t, q.projection))
}

pub fn loc_pxz(t: &Arc<CrossedModule>) -> Result<LocalizationResult> {
    let n1 = action_commutator_subgroup(t);
    let n = SubCrossedModule::new(t.clone(), n1, Subgroup::whole(t.top()))?;
    let q = xquotient(&n)?;
    Ok(LocalizationResult::closed(t, q.projection))
}

pub fn loc_i(t: &Arc<CrossedModule>) -> LocalizationResult {
    let local = functor_r(t.top());
    let coaugmentation = XModMorphism::trusted(
        t.clone(),
        local,
        t.boundary().clone(),
        crate::group::GroupHom::identity(t.top()),
    );
    LocalizationResult::closed(t, coaugmentation)
}

impl Localizer {
    pub fn nullification(name: impl Into<String>, a: Arc<CrossedModule>) -> Localizer {
        Localizer::Nullify { name: name.into(), a }
    }

    /// `L_f`, only for a regular epimorphism `f`.
    pub fn lf(name: impl Into<String>, f: XModMorphism) -> Result<Localizer> {
        if !f.is_regular_epi() {
            return Err(Error::Unsupported(
                "L_f is only constructed for regular epimorphisms f; use `i` for the identity-boundary functor".into(),
            ));
        }
        Ok(Localizer::Lf { name: name.into(), f })
    }

    /// Whether every coaugmentation is a regular epimorphism.
    pub fn is_regular_epi_kind(&self) -> bool {
        !matches!(self, Localizer::I)
    }

    pub fn localize(&self, t: &Arc<CrossedModule>, limits: &Limits) -> Result<LocalizationResult> {
        match self {
            Localizer::Ab => loc_ab(t),
            Localizer::I => Ok(loc_i(t)),
            Localizer::Pxz => loc_pxz(t),
            Localizer::Nullify { a, .. } => nullify(a, t, limits),
            Localizer::Lf { f, .. } => loc_lf(f, t, limits),
        }
    }

    pub fn is_local(&self, t: &Arc<CrossedModule>, limits: &Limits) -> Result<bool> {
        match self {
            Localizer::Ab | Localizer::I | Localizer::Pxz => Ok(self.localize(t, limits)?.coaugmentation.is_iso()),
            Localizer::Nullify { a, .. } => {
                Ok(enumerate_xmod_morphisms(a, t, limits)?.iter().all(XModMorphism::is_trivial))
            }
            Localizer::Lf { f, .. } => {
                let from_dom = enumerate_xmod_morphisms(f.src(), t, limits)?;
                let from_cod = enumerate_xmod_morphisms(f.dst(), t, limits)?;
                let mut pulled = Vec::with_capacity(from_cod.len());
                for g in &from_cod {
                    pulled.push(f.then(g)?);
                }
                Ok(from_dom.iter().all(|g| pulled.contains(g)))
            }
        }
    }

    /// `L(m): LN → LM` for already computed localizations of the endpoints.
    pub fn induced_between(&self, ln: &LocalizationResult, lm: &LocalizationResult, m: &XModMorphism) -> Result<XModMorphism> {
        if *ln.source != **m.src() || *lm.source != **m.dst() {
            return Err(Error::Mismatch("localizations do not match the morphism endpoints".into()));
        }
        match self {
            Localizer::I => Ok(XModMorphism::trusted(
                ln.local.clone(),
                lm.local.clone(),
                m.f2().clone(),
                m.f2().clone(),
            )),
            _ => descend(&ln.coaugmentation, &m.then(&lm.coaugmentation)?),
        }
    }

    pub fn induced(&self, m: &XModMorphism, limits: &Limits) -> Result<XModMorphism> {
        let ln = self.localize(m.src(), limits)?;
        let lm = self.localize(m.dst(), limits)?;
        self.induced_between(&ln, &lm, m)
    }

    pub fn is_equivalence(&self, m: &XModMorphism, limits: &Limits) -> Result<bool> {
        Ok(self.induced(m, limits)?.is_iso())
    }

    /// Whether `L(ker ℓ^T)` is trivial.
    pub fn kernel_acyclicity(&self, t: &Arc<CrossedModule>, limits: &Limits) -> Result<bool> {
        let l = self.localize(t, limits)?;
        let (k, _) = crate::xmod::xkernel(&l.coaugmentation).to_xmod();
        Ok(self.localize(&k, limits)?.local.is_trivial())
    }
}
