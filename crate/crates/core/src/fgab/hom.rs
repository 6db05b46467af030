use std::fmt;

use super::snf::{integer_kernel, solve, Mat};
use super::{combine, quotient_presentation, subgroup_in, subgroup_structure, Element, FgAbGroup};
use crate::{Error, Level, Limits, Result};

/// A homomorphism of finitely generated abelian groups, stored by the images
/// of the source generators.
#[derive(Clone, PartialEq, Eq)]
pub struct AbHom {
    src: FgAbGroup,
    dst: FgAbGroup,
    columns: Vec<Element>,
}

impl fmt::Debug for AbHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "AbHom({} -> {}, {:?})", self.src, self.dst, self.columns)
    }
}

impl AbHom {
    /// Validates that each torsion generator of order `d` lands in the `d`-torsion.
    pub fn new(src: FgAbGroup, dst: FgAbGroup, columns: Vec<Element>) -> Result<AbHom> {
        if columns.len() != src.ngens() {
            return Err(Error::WrongLength { len: columns.len(), expected: src.ngens() });
        }
        let mut reduced = Vec::with_capacity(columns.len());
        for (j, c) in columns.into_iter().enumerate() {
            if c.len() != dst.ngens() {
                return Err(Error::WrongLength { len: c.len(), expected: dst.ngens() });
            }
            let d = src.gen_order(j);
            if d != 0 && !dst.is_zero(&dst.scale(d, &c)?) {
                return Err(Error::Mismatch(format!("generator {j} has order {d} but its image does not")));
            }
            reduced.push(dst.reduced(c));
        }
        Ok(AbHom { src, dst, columns: reduced })
    }

    /// From a `dst.ngens() × src.ngens()` matrix.
    pub fn from_matrix(src: FgAbGroup, dst: FgAbGroup, matrix: &[Vec<i64>]) -> Result<AbHom> {
        if matrix.len() != dst.ngens() {
            return Err(Error::WrongLength { len: matrix.len(), expected: dst.ngens() });
        }
        let n = src.ngens();
        if let Some(r) = matrix.iter().find(|r| r.len() != n) {
            return Err(Error::WrongLength { len: r.len(), expected: n });
        }
        let columns = (0..n).map(|j| matrix.iter().map(|r| r[j]).collect()).collect();
        AbHom::new(src, dst, columns)
    }

    pub fn identity(g: &FgAbGroup) -> AbHom {
        AbHom { src: g.clone(), dst: g.clone(), columns: (0..g.ngens()).map(|i| g.generator(i)).collect() }
    }

    pub fn zero(src: &FgAbGroup, dst: &FgAbGroup) -> AbHom {
        AbHom { src: src.clone(), dst: dst.clone(), columns: vec![dst.zero(); src.ngens()] }
    }

    pub fn src(&self) -> &FgAbGroup {
        &self.src
    }

    pub fn dst(&self) -> &FgAbGroup {
        &self.dst
    }

    pub fn columns(&self) -> &[Element] {
        &self.columns
    }

    /// The `dst.ngens() × src.ngens()` matrix.
    pub fn matrix(&self) -> Vec<Vec<i64>> {
        (0..self.dst.ngens()).map(|i| self.columns.iter().map(|c| c[i]).collect()).collect()
    }

    pub fn apply(&self, x: &[i64]) -> Result<Element> {
        Ok(self.dst.reduced(combine(self.dst.ngens(), &self.columns, x)?))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &AbHom) -> Result<AbHom> {
        if self.dst != next.src {
            return Err(Error::NotComposable);
        }
        let columns = self.columns.iter().map(|c| next.apply(c)).collect::<Result<Vec<_>>>()?;
        Ok(AbHom { src: self.src.clone(), dst: next.dst.clone(), columns })
    }

    pub fn is_zero(&self) -> bool {
        self.columns.iter().all(|c| self.dst.is_zero(c))
    }

    pub fn kernel(&self) -> Result<AbSub> {
        let gens = self.kernel_generators()?;
        AbSub::generated(&self.src, &gens)
    }

    /// Generators of the kernel in source coordinates.
    pub fn kernel_generators(&self) -> Result<Vec<Element>> {
        let n = self.src.ngens();
        let rels = self.dst.relations();
        let a: Mat = (0..self.dst.ngens())
            .map(|i| self.columns.iter().map(|c| c[i]).chain(rels.iter().map(|r| -r[i])).collect())
            .collect();
        let k = integer_kernel(&a, n + rels.len())?;
        Ok(k.into_iter().map(|v| self.src.reduced(v[..n].to_vec())).filter(|v| !self.src.is_zero(v)).collect())
    }

    pub fn image(&self) -> Result<AbSub> {
        AbSub::generated(&self.dst, &self.columns)
    }

    pub fn is_injective(&self) -> Result<bool> {
        Ok(self.kernel_generators()?.is_empty())
    }

    pub fn is_surjective(&self) -> Result<bool> {
        Ok(quotient_presentation(&self.dst, &self.columns)?.group.is_trivial())
    }

    pub fn is_bijective(&self) -> Result<bool> {
        Ok(self.is_injective()? && self.is_surjective()?)
    }

    /// True when every generator of `sub` maps to zero.
    pub fn kills(&self, sub: &[Element]) -> Result<bool> {
        for g in sub {
            if !self.dst.is_zero(&self.apply(g)?) {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A subgroup with its own normal form and the inclusion into its parent.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbSub {
    pub group: FgAbGroup,
    pub inclusion: AbHom,
}

impl AbSub {
    pub fn generated(parent: &FgAbGroup, gens: &[Element]) -> Result<AbSub> {
        let (group, images) = subgroup_structure(parent, gens)?;
        let inclusion = AbHom { src: group.clone(), dst: parent.clone(), columns: images };
        Ok(AbSub { group, inclusion })
    }

    pub fn generators(&self) -> &[Element] {
        self.inclusion.columns()
    }

    pub fn contains(&self, x: &[i64]) -> Result<bool> {
        let q = quotient_presentation(self.inclusion.dst(), self.generators())?;
        Ok(q.group.is_zero(&q.image(x)?))
    }

    pub fn is_subset_of(&self, other: &AbSub) -> Result<bool> {
        for g in self.generators() {
            if !other.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Coordinates of `x` in terms of the subgroup's own generators, or
    /// `None` if `x` is not a member.
    pub fn coordinates(&self, x: &[i64]) -> Result<Option<Element>> {
        let parent = self.inclusion.dst();
        let c = solve_in(parent.ngens(), &parent.relations(), self.generators(), x)?;
        Ok(c.map(|c| self.group.reduced(c)))
    }

    /// `[self : inner]` for `inner ⊆ self`, or `None` if infinite.
    pub fn index_of(&self, inner: &AbSub) -> Result<Option<i64>> {
        let q = AbQuotient::new(self.inclusion.dst(), inner.generators())?;
        let imgs = self.generators().iter().map(|g| q.projection.apply(g)).collect::<Result<Vec<_>>>()?;
        let (image, _) = subgroup_structure(&q.group, &imgs)?;
        Ok(image.order())
    }
}

/// `A / ⟨gens⟩` with its projection and a section of generator lifts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbQuotient {
    pub group: FgAbGroup,
    pub projection: AbHom,
    /// `lifts[k]` maps to generator `k` of the quotient.
    pub lifts: Vec<Element>,
    killed: Vec<Element>,
}

impl AbQuotient {
    pub fn new(parent: &FgAbGroup, gens: &[Element]) -> Result<AbQuotient> {
        let p = quotient_presentation(parent, gens)?;
        let columns = (0..parent.ngens()).map(|j| p.image(&parent.generator(j))).collect::<Result<Vec<_>>>()?;
        let projection = AbHom { src: parent.clone(), dst: p.group.clone(), columns };
        let lifts = p.from_new.into_iter().map(|v| parent.reduced(v)).collect();
        Ok(AbQuotient { group: p.group, projection, lifts, killed: gens.to_vec() })
    }

    /// The map `A/K → M` induced by `m: A → M`, which must kill `K`.
    pub fn descend(&self, m: &AbHom) -> Result<AbHom> {
        if m.src() != self.projection.src() {
            return Err(Error::NotComposable);
        }
        for (i, g) in self.killed.iter().enumerate() {
            if !m.dst().is_zero(&m.apply(g)?) {
                return Err(Error::NotWellDefined { level: Level::Two, element: i });
            }
        }
        let columns = self.lifts.iter().map(|l| m.apply(l)).collect::<Result<Vec<_>>>()?;
        AbHom::new(self.group.clone(), m.dst().clone(), columns)
    }
}

/// The fiber product `{(a, b) : f(a) = g(b)}` with its projections.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbPullback {
    pub group: FgAbGroup,
    pub to_a: AbHom,
    pub to_b: AbHom,
}

impl AbPullback {
    /// The unique `x → P` with `π_A ∘ m = h_a` and `π_B ∘ m = h_b`.
    pub fn mediate(&self, h_a: &AbHom, h_b: &AbHom) -> Result<AbHom> {
        if h_a.src() != h_b.src() || h_a.dst() != self.to_a.dst() || h_b.dst() != self.to_b.dst() {
            return Err(Error::Mismatch("cone legs do not match the pullback".into()));
        }
        let (a, b) = (self.to_a.dst(), self.to_b.dst());
        let gens: Vec<Element> = self.to_a.columns().iter().zip(self.to_b.columns()).map(|(x, y)| [x.clone(), y.clone()].concat()).collect();
        let rels: Vec<Element> = a
            .relations()
            .into_iter()
            .map(|r| [r, vec![0; b.ngens()]].concat())
            .chain(b.relations().into_iter().map(|r| [vec![0; a.ngens()], r].concat()))
            .collect();
        let x = h_a.src();
        let mut columns = Vec::with_capacity(x.ngens());
        for j in 0..x.ngens() {
            let e = x.generator(j);
            let v = [h_a.apply(&e)?, h_b.apply(&e)?].concat();
            match solve_in(a.ngens() + b.ngens(), &rels, &gens, &v)? {
                Some(c) => columns.push(self.group.reduced(c)),
                None => return Err(Error::Mismatch(format!("cone does not commute at generator {j}"))),
            }
        }
        AbHom::new(x.clone(), self.group.clone(), columns)
    }
}

/// Coefficients `c` with `Σ cⱼ gensⱼ ≡ x` modulo `rels` in `Zⁿ`.
fn solve_in(n: usize, rels: &[Element], gens: &[Element], x: &[i64]) -> Result<Option<Element>> {
    let s = gens.len();
    let a: Mat = (0..n)
        .map(|i| gens.iter().map(|g| g[i]).chain(rels.iter().map(|r| -r[i])).collect())
        .collect();
    Ok(solve(&a, s + rels.len(), x)?.map(|z| z[..s].to_vec()))
}

pub fn ab_pullback(f: &AbHom, g: &AbHom) -> Result<AbPullback> {
    if f.dst() != g.dst() {
        return Err(Error::Mismatch("pullback legs need a common codomain".into()));
    }
    let (a, b, c) = (f.src(), g.src(), f.dst());
    let (na, nb) = (a.ngens(), b.ngens());
    let rels_c = c.relations();
    let cols = na + nb + rels_c.len();
    let m: Mat = (0..c.ngens())
        .map(|i| {
            f.columns()
                .iter()
                .map(|col| col[i])
                .chain(g.columns().iter().map(|col| -col[i]))
                .chain(rels_c.iter().map(|r| -r[i]))
                .collect()
        })
        .collect();
    let kernel: Vec<Element> = integer_kernel(&m, cols)?.into_iter().map(|v| v[..na + nb].to_vec()).collect();
    let sum_rels: Vec<Element> = a
        .relations()
        .into_iter()
        .map(|r| [r, vec![0; nb]].concat())
        .chain(b.relations().into_iter().map(|r| [vec![0; na], r].concat()))
        .collect();
    let (group, images) = subgroup_in(na + nb, &sum_rels, &kernel)?;
    let to_a = AbHom::new(group.clone(), a.clone(), images.iter().map(|v| v[..na].to_vec()).collect())?;
    let to_b = AbHom::new(group.clone(), b.clone(), images.iter().map(|v| v[na..].to_vec()).collect())?;
    Ok(AbPullback { group, to_a, to_b })
}

fn torsion_candidates(t: &FgAbGroup, d: i64) -> Vec<Element> {
    let mut out = vec![t.zero()];
    for g in t.torsion_of(d) {
        let i = g.iter().position(|&v| v != 0).expect("torsion generator is nonzero");
        let step = g[i];
        let count = t.gen_order(i) / step;
        out = out
            .into_iter()
            .flat_map(|base| {
                (0..count).map(move |k| {
                    let mut e = base.clone();
                    e[i] = k * step;
                    e
                })
            })
            .collect();
    }
    out.sort();
    out
}

fn box_candidates(t: &FgAbGroup, bound: i64) -> Vec<Element> {
    let mut out = vec![Vec::new()];
    for i in 0..t.ngens() {
        let range: Vec<i64> = if i < t.rank() { (-bound..=bound).collect() } else { (0..t.gen_order(i)).collect() };
        out = out.into_iter().flat_map(|p| range.iter().map(move |&v| [p.clone(), vec![v]].concat())).collect();
    }
    out
}

fn product_homs(b: &FgAbGroup, t: &FgAbGroup, per_gen: Vec<Vec<Element>>, limits: &Limits) -> Result<Vec<AbHom>> {
    let total = per_gen.iter().try_fold(1usize, |acc, c| acc.checked_mul(c.len()));
    if total.map_or(true, |n| n > limits.max_results) {
        return Err(Error::SizeLimitExceeded { what: "abelian homomorphism count", limit: limits.max_results });
    }
    let mut out: Vec<Vec<Element>> = vec![Vec::new()];
    for cands in &per_gen {
        out = out.into_iter().flat_map(|p| cands.iter().map(move |c| [p.clone(), vec![c.clone()]].concat())).collect();
    }
    Ok(out.into_iter().map(|columns| AbHom { src: b.clone(), dst: t.clone(), columns }).collect())
}

/// All homomorphisms from a finite `b` into `t`, lexicographic in the
/// generator images. A generator of order `d` maps into the `d`-torsion of `t`.
pub fn enumerate_ab_homs(b: &FgAbGroup, t: &FgAbGroup, limits: &Limits) -> Result<Vec<AbHom>> {
    if !b.is_finite() {
        return Err(Error::Unsupported("homomorphisms out of an infinite group are not enumerable".into()));
    }
    let per_gen = (0..b.ngens()).map(|j| torsion_candidates(t, b.gen_order(j))).collect();
    product_homs(b, t, per_gen, limits)
}

/// Homomorphisms `b → t` where free generators of `b` range over the elements
/// of `t` whose free coordinates lie in `[-bound, bound]`. Exhaustive when `b`
/// is finite.
pub fn enumerate_ab_homs_boxed(b: &FgAbGroup, t: &FgAbGroup, bound: i64, limits: &Limits) -> Result<Vec<AbHom>> {
    let boxed = box_candidates(t, bound);
    let per_gen = (0..b.ngens())
        .map(|j| if j < b.rank() { boxed.clone() } else { torsion_candidates(t, b.gen_order(j)) })
        .collect();
    product_homs(b, t, per_gen, limits)
}

/// Localization at a surjection `φ: B → C` of finite abelian groups.
///
/// Repeatedly quotients by the images of `ker φ` under every homomorphism
/// `B → T` until every such homomorphism kills `ker φ`. Returns the local
/// group and the composite projection.
pub fn lf_ab_localize(phi: &AbHom, t: &FgAbGroup, limits: &Limits) -> Result<(FgAbGroup, AbHom)> {
    if !phi.src().is_finite() {
        return Err(Error::Precondition("the localizing map needs a finite source".into()));
    }
    if !phi.is_surjective()? {
        return Err(Error::Precondition("the localizing map must be surjective".into()));
    }
    let ker = phi.kernel_generators()?;
    let mut current = t.clone();
    let mut ell = AbHom::identity(t);
    loop {
        let mut hits = Vec::new();
        for g in enumerate_ab_homs(phi.src(), &current, limits)? {
            for k in &ker {
                let v = g.apply(k)?;
                if !current.is_zero(&v) && !hits.contains(&v) {
                    hits.push(v);
                }
            }
        }
        if hits.is_empty() {
            return Ok((current, ell));
        }
        let q = AbQuotient::new(&current, &hits)?;
        ell = ell.then(&q.projection)?;
        current = q.group;
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z() -> FgAbGroup {
        FgAbGroup::free(1)
    }

    fn c(n: i64) -> FgAbGroup {
        FgAbGroup::cyclic(n)
    }

    fn zc2() -> FgAbGroup {
        FgAbGroup::new(1, vec![2]).unwrap()
    }

    fn phi() -> AbHom {
        AbHom::new(c(4), c(2), vec![vec![1]]).unwrap()
    }

    #[test]
    fn parity_pullback_is_z_plus_c2() {
        let red = AbHom::new(z(), c(2), vec![vec![1]]).unwrap();
        let p = ab_pullback(&red, &phi()).unwrap();
        assert_eq!(p.group, zc2());
        let double = AbHom::new(z(), z(), vec![vec![2]]).unwrap();
        let m = p.mediate(&double, &AbHom::zero(&z(), &c(4))).unwrap();
        assert_eq!(m.then(&p.to_a).unwrap(), double);
        assert!(m.then(&p.to_b).unwrap().is_zero());
        assert!(p.mediate(&AbHom::identity(&z()), &AbHom::zero(&z(), &c(4))).is_err());
    }

    #[test]
    fn subgroup_coordinates() {
        let sub = AbSub::generated(&zc2(), &[vec![2, 1]]).unwrap();
        let c = sub.coordinates(&[4, 0]).unwrap().unwrap();
        assert_eq!(sub.inclusion.apply(&c).unwrap(), vec![4, 0]);
        assert_eq!(sub.coordinates(&[1, 0]).unwrap(), None);
    }

    #[test]
    fn kernels_images_quotients() {
        let double = AbHom::new(z(), z(), vec![vec![2]]).unwrap();
        assert!(double.kernel().unwrap().group.is_trivial());
        assert!(!double.is_surjective().unwrap());
        let q = AbQuotient::new(&z(), &[vec![2]]).unwrap();
        assert_eq!(q.group, c(2));
        assert_eq!(phi().kernel().unwrap().group, c(2));
        assert_eq!(phi().image().unwrap().group, c(2));
    }

    #[test]
    fn hom_counts() {
        let l = Limits::default();
        let to_z = enumerate_ab_homs(&c(4), &z(), &l).unwrap();
        assert_eq!(to_z.len(), 1);
        assert!(to_z[0].is_zero());
        assert_eq!(enumerate_ab_homs(&c(4), &c(4), &l).unwrap().len(), 4);
        assert_eq!(enumerate_ab_homs(&c(4), &zc2(), &l).unwrap().len(), 2);
        assert!(enumerate_ab_homs(&z(), &c(2), &l).is_err());
    }

    #[test]
    fn torsion_check_on_construction() {
        assert!(AbHom::new(c(2), c(4), vec![vec![1]]).is_err());
        assert!(AbHom::new(c(2), c(4), vec![vec![2]]).is_ok());
        assert!(AbHom::new(c(4), z(), vec![vec![1]]).is_err());
    }

    #[test]
    fn kill_kernel_localization() {
        let l = Limits::default();
        let (lc4, ell) = lf_ab_localize(&phi(), &c(4), &l).unwrap();
        assert_eq!(lc4, c(2));
        assert!(ell.is_surjective().unwrap());
        let (lz, ellz) = lf_ab_localize(&phi(), &z(), &l).unwrap();
        assert_eq!(lz, z());
        assert_eq!(ellz, AbHom::identity(&z()));
        let (lzc2, e2) = lf_ab_localize(&phi(), &zc2(), &l).unwrap();
        assert_eq!(lzc2, zc2());
        assert_eq!(e2, AbHom::identity(&zc2()));
    }

    #[test]
    fn index_of_image_in_kernel() {
        let g = zc2();
        let outer = AbSub::generated(&g, &[vec![2, 0], vec![0, 1]]).unwrap();
        let inner = AbSub::generated(&g, &[vec![2, 0]]).unwrap();
        assert_eq!(outer.index_of(&inner).unwrap(), Some(2));
        assert!(inner.is_subset_of(&outer).unwrap());
        assert!(!outer.is_subset_of(&inner).unwrap());
    }
}
