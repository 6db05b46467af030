//! Crossed modules `X A = (1, A)` with `A` finitely generated abelian.
//!
//! Morphisms between such objects are group homomorphisms at level 2, so
//! sequences, pullbacks and localizations reduce to the [`fgab`](crate::fgab)
//! backend. A localizer on the finite side is realized here by what it does
//! to `X A`.

use crate::fgab::{ab_pullback, abelian_invariants, lf_ab_localize, to_finite_group, AbHom, AbPullback, AbQuotient, AbSub, Element, FgAbGroup};
use crate::group::{are_isomorphic_grp, normal_closure_grp, quotient_grp};
use crate::localize::Localizer;
use crate::xmod::{xkernel, CrossedModule};
use crate::{Error, Level, Limits, Result};

/// `X N →κ X T →α X Q`, exact.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct XAbSes {
    pub kappa: AbHom,
    pub alpha: AbHom,
}

pub fn make_xab_ses(kappa: AbHom, alpha: AbHom) -> Result<XAbSes> {
    if kappa.dst() != alpha.src() {
        return Err(Error::NotComposable);
    }
    if !kappa.is_injective()? {
        return Err(Error::NotExact { level: Level::Two, stage: "kernel map is not injective" });
    }
    if !alpha.is_surjective()? {
        return Err(Error::NotExact { level: Level::Two, stage: "quotient map is not surjective" });
    }
    let image = kappa.image()?;
    let kernel = alpha.kernel()?;
    if !image.is_subset_of(&kernel)? || !kernel.is_subset_of(&image)? {
        return Err(Error::NotExact { level: Level::Two, stage: "image is not the kernel" });
    }
    Ok(XAbSes { kappa, alpha })
}

/// A sequence together with the pullback square it came from.
#[derive(Clone, Debug)]
pub struct XAbPulled {
    pub ses: XAbSes,
    pub pullback: AbPullback,
}

impl XAbSes {
    /// `⟨gens⟩ → T → T/⟨gens⟩`.
    pub fn from_generators(t: &FgAbGroup, gens: &[Element]) -> Result<XAbSes> {
        let sub = AbSub::generated(t, gens)?;
        let q = AbQuotient::new(t, gens)?;
        make_xab_ses(sub.inclusion, q.projection)
    }

    pub fn kernel(&self) -> &FgAbGroup {
        self.kappa.src()
    }

    pub fn middle(&self) -> &FgAbGroup {
        self.kappa.dst()
    }

    pub fn quotient(&self) -> &FgAbGroup {
        self.alpha.dst()
    }

    /// The row `N → T ×_Q Q' → Q'` obtained by pulling back along `g`.
    pub fn pullback(&self, g: &AbHom) -> Result<XAbPulled> {
        let p = ab_pullback(&self.alpha, g)?;
        let kappa = p.mediate(&self.kappa, &AbHom::zero(self.kernel(), g.src()))?;
        let ses = make_xab_ses(kappa, p.to_b.clone())?;
        Ok(XAbPulled { ses, pullback: p })
    }
}

/// The effect of a localizer on `X A`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AbLocalizer {
    Identity,
    Trivial,
    /// Kill `g(ker φ)` for every `g` out of the finite source of `φ`.
    KillKernel(AbHom),
}

/// `Ab(T₂ / ∂T₁)` as an abelian group, with the coordinates of the image of
/// each element of `T₂`.
pub fn abelian_cokernel(t: &CrossedModule, limits: &Limits) -> Result<(FgAbGroup, Vec<Element>)> {
    let t2 = t.top();
    let mut gens: Vec<usize> = t.bottom().elements().map(|x| t.d(x)).collect();
    for &a in t2.generators() {
        gens.extend(t2.elements().map(|b| t2.commutator(a, b)));
    }
    let n = normal_closure_grp(t2, &gens);
    let q = quotient_grp(t2, &n)?;
    let inv = abelian_invariants(&q.group)?;
    let (fin, elems) = to_finite_group(&inv)?;
    let iso = are_isomorphic_grp(&q.group, &fin, limits)?.ok_or(Error::Mismatch("abelian invariants disagree".into()))?;
    let coords = t2.elements().map(|x| elems[iso.apply(q.projection.apply(x))].clone()).collect();
    Ok((inv, coords))
}

impl AbLocalizer {
    /// Realizes `L` on `X`-embedded abelian objects. Undefined for `I`,
    /// which sends `X A` to `(A, A, id)`.
    pub fn realize(l: &Localizer, limits: &Limits) -> Result<AbLocalizer> {
        match l {
            Localizer::Ab => Ok(AbLocalizer::Identity),
            Localizer::Pxz => Ok(AbLocalizer::Trivial),
            Localizer::I => Err(Error::Unsupported("I does not preserve X-embedded objects".into())),
            Localizer::Nullify { a, .. } => {
                let (b, _) = abelian_cokernel(a, limits)?;
                Ok(AbLocalizer::KillKernel(AbHom::zero(&b, &FgAbGroup::trivial())))
            }
            Localizer::Lf { f, .. } => {
                let (b, coords) = abelian_cokernel(f.src(), limits)?;
                let k = xkernel(f);
                let killed: Vec<Element> = k.n2().members().iter().map(|&x| coords[x].clone()).collect();
                Ok(AbLocalizer::KillKernel(AbQuotient::new(&b, &killed)?.projection))
            }
        }
    }

    /// `ℓ: A → LA` presented as a quotient of `A`.
    pub fn localize(&self, a: &FgAbGroup, limits: &Limits) -> Result<AbQuotient> {
        match self {
            AbLocalizer::Identity => AbQuotient::new(a, &[]),
            AbLocalizer::Trivial => {
                let all: Vec<Element> = (0..a.ngens()).map(|i| a.generator(i)).collect();
                AbQuotient::new(a, &all)
            }
            AbLocalizer::KillKernel(phi) => {
                let (_, ell) = lf_ab_localize(phi, a, limits)?;
                AbQuotient::new(a, &ell.kernel_generators()?)
            }
        }
    }

    pub fn is_local(&self, a: &FgAbGroup, limits: &Limits) -> Result<bool> {
        match self {
            AbLocalizer::Identity => Ok(true),
            AbLocalizer::Trivial => Ok(a.is_trivial()),
            AbLocalizer::KillKernel(phi) => {
                let ker = phi.kernel_generators()?;
                for g in crate::fgab::enumerate_ab_homs(phi.src(), a, limits)? {
                    if !g.kills(&ker)? {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
        }
    }

    /// `L(m)` between given localizations of its endpoints.
    pub fn induced_between(&self, ln: &AbQuotient, lm: &AbQuotient, m: &AbHom) -> Result<AbHom> {
        ln.descend(&m.then(&lm.projection)?)
    }

    pub fn induced(&self, m: &AbHom, limits: &Limits) -> Result<AbHom> {
        let ln = self.localize(m.src(), limits)?;
        let lm = self.localize(m.dst(), limits)?;
        self.induced_between(&ln, &lm, m)
    }

    pub fn is_equivalence(&self, m: &AbHom, limits: &Limits) -> Result<bool> {
        self.induced(m, limits)?.is_bijective()
    }
}

/// `L` applied to an `X`-embedded sequence.
#[derive(Clone, Debug)]
pub struct AbFlatReport {
    /// `(LN, LT, LQ)`.
    pub local: [FgAbGroup; 3],
    pub l_kappa: AbHom,
    pub l_alpha: AbHom,
    pub mono: bool,
    pub epi: bool,
    /// `[ker Lα : im Lκ]`, `None` when infinite.
    pub index: Option<i64>,
    /// A generator of `ker Lα` outside `im Lκ`.
    pub witness: Option<Element>,
    pub flat: bool,
}

pub fn xab_flat_check(l: &AbLocalizer, s: &XAbSes, limits: &Limits) -> Result<AbFlatReport> {
    let ln = l.localize(s.kernel(), limits)?;
    let lt = l.localize(s.middle(), limits)?;
    let lq = l.localize(s.quotient(), limits)?;
    let l_kappa = l.induced_between(&ln, &lt, &s.kappa)?;
    let l_alpha = l.induced_between(&lt, &lq, &s.alpha)?;
    let mono = l_kappa.is_injective()?;
    let epi = l_alpha.is_surjective()?;
    let kernel = l_alpha.kernel()?;
    let image = l_kappa.image()?;
    let index = kernel.index_of(&image)?;
    let mut witness = None;
    for g in kernel.generators() {
        if !image.contains(g)? {
            witness = Some(g.clone());
            break;
        }
    }
    let flat = mono && epi && witness.is_none();
    Ok(AbFlatReport {
        local: [ln.group, lt.group, lq.group],
        l_kappa,
        l_alpha,
        mono,
        epi,
        index,
        witness,
        flat,
    })
}
