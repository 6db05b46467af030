//! Finitely generated abelian groups in invariant-factor form.
//!
//! An [`FgAbGroup`] is `Zʳ ⊕ Z/d₁ ⊕ … ⊕ Z/dₖ` with `2 ≤ d₁ | d₂ | … | dₖ`.
//! Elements are coordinate vectors of length `r + k`, free coordinates first;
//! torsion coordinates are kept reduced into `0..dᵢ`.

mod finite;
mod hom;
mod snf;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};
use snf::{integer_kernel, mat_vec, smith, Mat};

pub use finite::{abelian_invariants, to_finite_group};
pub use hom::{ab_pullback, enumerate_ab_homs, enumerate_ab_homs_boxed, lf_ab_localize, AbHom, AbPullback, AbQuotient, AbSub};

pub type Element = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FgAbGroup {
    rank: usize,
    invariants: Vec<i64>,
}

impl fmt::Display for FgAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = Vec::new();
        match self.rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariants.iter().map(|d| format!("C{d}")));
        if parts.is_empty() {
            write!(f, "1")
        } else {
            write!(f, "{}", parts.join("+"))
        }
    }
}

impl FgAbGroup {
    /// Validates the normal form.
    pub fn new(rank: usize, invariants: Vec<i64>) -> Result<FgAbGroup> {
        if let Some(&d) = invariants.iter().find(|&&d| d < 2) {
            return Err(Error::InvalidAb(format!("invariant factor {d} is below 2")));
        }
        if let Some(w) = invariants.windows(2).find(|w| w[1] % w[0] != 0) {
            return Err(Error::InvalidAb(format!("{} does not divide {}", w[0], w[1])));
        }
        Ok(FgAbGroup { rank, invariants })
    }

    pub fn trivial() -> FgAbGroup {
        FgAbGroup { rank: 0, invariants: Vec::new() }
    }

    pub fn free(rank: usize) -> FgAbGroup {
        FgAbGroup { rank, invariants: Vec::new() }
    }

    pub fn cyclic(n: i64) -> FgAbGroup {
        if n == 1 {
            Self::trivial()
        } else if n == 0 {
            Self::free(1)
        } else {
            FgAbGroup { rank: 0, invariants: vec![n.abs()] }
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn invariants(&self) -> &[i64] {
        &self.invariants
    }

    /// Number of coordinates.
    pub fn ngens(&self) -> usize {
        self.rank + self.invariants.len()
    }

    pub fn is_finite(&self) -> bool {
        self.rank == 0
    }

    pub fn is_trivial(&self) -> bool {
        self.ngens() == 0
    }

    /// The order, or `None` when infinite.
    pub fn order(&self) -> Option<i64> {
        if self.rank > 0 {
            return None;
        }
        self.invariants.iter().try_fold(1i64, |acc, &d| acc.checked_mul(d))
    }

    /// Order of generator `i`: `0` for free generators.
    pub fn gen_order(&self, i: usize) -> i64 {
        if i < self.rank {
            0
        } else {
            self.invariants[i - self.rank]
        }
    }

    pub fn zero(&self) -> Element {
        vec![0; self.ngens()]
    }

    pub fn generator(&self, i: usize) -> Element {
        let mut e = self.zero();
        e[i] = 1;
        e
    }

    pub fn reduce(&self, x: &mut [i64]) {
        for (i, d) in self.invariants.iter().enumerate() {
            x[self.rank + i] = x[self.rank + i].rem_euclid(*d);
        }
    }

    pub fn reduced(&self, mut x: Element) -> Element {
        self.reduce(&mut x);
        x
    }

    pub fn is_zero(&self, x: &[i64]) -> bool {
        x.iter().enumerate().all(|(i, &v)| {
            let d = self.gen_order(i);
            if d == 0 {
                v == 0
            } else {
                v.rem_euclid(d) == 0
            }
        })
    }

    pub fn add(&self, x: &[i64], y: &[i64]) -> Result<Element> {
        let v = x.iter().zip(y).map(|(&a, &b)| a.checked_add(b).ok_or(Error::Overflow)).collect::<Result<Vec<_>>>()?;
        Ok(self.reduced(v))
    }

    pub fn neg(&self, x: &[i64]) -> Element {
        self.reduced(x.iter().map(|&a| -a).collect())
    }

    pub fn scale(&self, k: i64, x: &[i64]) -> Result<Element> {
        let v = x.iter().map(|&a| a.checked_mul(k).ok_or(Error::Overflow)).collect::<Result<Vec<_>>>()?;
        Ok(self.reduced(v))
    }

    /// All elements, for finite groups, in lexicographic coordinate order.
    pub fn elements(&self) -> Option<Vec<Element>> {
        if !self.is_finite() {
            return None;
        }
        let mut out = vec![Vec::new()];
        for &d in &self.invariants {
            out = out.into_iter().flat_map(|p| (0..d).map(move |v| [p.clone(), vec![v]].concat())).collect();
        }
        Some(out)
    }

    /// The relation matrix of the normal form: columns `dᵢ·e_{r+i}`.
    pub(crate) fn relations(&self) -> Vec<Element> {
        self.invariants
            .iter()
            .enumerate()
            .map(|(i, &d)| {
                let mut c = self.zero();
                c[self.rank + i] = d;
                c
            })
            .collect()
    }

    /// The subgroup `{x : n·x = 0}` as a list of generators.
    pub fn torsion_of(&self, n: i64) -> Vec<Element> {
        self.invariants
            .iter()
            .enumerate()
            .filter_map(|(i, &d)| {
                let step = d / gcd(d, n);
                (step != d).then(|| {
                    let mut e = self.zero();
                    e[self.rank + i] = step;
                    e
                })
            })
            .collect()
    }
}

pub(crate) fn gcd(a: i64, b: i64) -> i64 {
    let (mut a, mut b) = (a.abs(), b.abs());
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// A presentation change: an abelian group given by generators and
/// relations, rewritten in normal form, with maps in both directions.
pub(crate) struct Presentation {
    pub group: FgAbGroup,
    /// `to_new[k]` is the row giving new coordinate `k` from old generators.
    pub to_new: Mat,
    /// `from_new[k]` is the old-generator vector of new generator `k`.
    pub from_new: Vec<Element>,
}

impl Presentation {
    pub fn image(&self, x: &[i64]) -> Result<Element> {
        Ok(self.group.reduced(mat_vec(&self.to_new, x)?))
    }
}

/// Normal form of `Zᵐ / ⟨relations⟩`. Each relation is a vector of length `m`.
pub(crate) fn present(m: usize, relations: &[Element]) -> Result<Presentation> {
    let n = relations.len();
    let a: Mat = (0..m).map(|i| relations.iter().map(|r| r[i]).collect()).collect();
    let s = smith(&a, n)?;
    let d = |i: usize| if i < s.rank { s.d[i][i] } else { 0 };
    let free: Vec<usize> = (s.rank..m).collect();
    let torsion: Vec<usize> = (0..s.rank.min(m)).filter(|&i| d(i) >= 2).collect();
    let order: Vec<usize> = free.iter().chain(&torsion).copied().collect();
    let group = FgAbGroup { rank: free.len(), invariants: torsion.iter().map(|&i| d(i)).collect() };
    let to_new = order.iter().map(|&i| s.u[i].clone()).collect();
    let from_new = order.iter().map(|&i| (0..m).map(|r| s.u_inv[r][i]).collect()).collect();
    Ok(Presentation { group, to_new, from_new })
}

/// Cokernel of the matrix whose columns are relations on the row-indexed generators.
pub fn fgab_from_relations(rows: usize, relations: &[Element]) -> Result<FgAbGroup> {
    if let Some(r) = relations.iter().find(|r| r.len() != rows) {
        return Err(Error::WrongLength { len: r.len(), expected: rows });
    }
    Ok(present(rows, relations)?.group)
}

/// Structure of `⟨gens⟩` inside `Zⁿ / ⟨rels⟩`, with the raw coordinate
/// vectors of its new generators.
pub(crate) fn subgroup_in(n: usize, rels: &[Element], gens: &[Element]) -> Result<(FgAbGroup, Vec<Element>)> {
    let s = gens.len();
    // Solve Σ cⱼ gⱼ - Σ yᵢ relᵢ = 0 and keep the c-part.
    let cols = s + rels.len();
    let a: Mat = (0..n)
        .map(|i| gens.iter().map(|g| g[i]).chain(rels.iter().map(|r| -r[i])).collect())
        .collect();
    let kernel = integer_kernel(&a, cols)?;
    let c_parts: Vec<Element> = kernel.into_iter().map(|k| k[..s].to_vec()).collect();
    let p = present(s, &c_parts)?;
    let images = p.from_new.iter().map(|c| combine(n, gens, c)).collect::<Result<Vec<_>>>()?;
    Ok((p.group, images))
}

/// `Σ cⱼ gⱼ` in raw coordinates.
pub(crate) fn combine(n: usize, gens: &[Element], c: &[i64]) -> Result<Element> {
    let mut v = vec![0i64; n];
    for (g, &cj) in gens.iter().zip(c) {
        for (k, &gv) in g.iter().enumerate() {
            v[k] = v[k].checked_add(cj.checked_mul(gv).ok_or(Error::Overflow)?).ok_or(Error::Overflow)?;
        }
    }
    Ok(v)
}

/// Structure of `⟨gens⟩ ≤ parent` together with the images of its new generators.
pub(crate) fn subgroup_structure(parent: &FgAbGroup, gens: &[Element]) -> Result<(FgAbGroup, Vec<Element>)> {
    let (g, imgs) = subgroup_in(parent.ngens(), &parent.relations(), gens)?;
    Ok((g, imgs.into_iter().map(|v| parent.reduced(v)).collect()))
}

/// Quotient `parent / ⟨gens⟩` with its projection and section lifts.
pub(crate) fn quotient_presentation(parent: &FgAbGroup, gens: &[Element]) -> Result<Presentation> {
    let mut rels = parent.relations();
    rels.extend(gens.iter().cloned());
    present(parent.ngens(), &rels)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn from_relations() {
        assert_eq!(fgab_from_relations(1, &[vec![4]]).unwrap(), FgAbGroup::cyclic(4));
        assert_eq!(fgab_from_relations(1, &[]).unwrap(), FgAbGroup::free(1));
        let g = fgab_from_relations(2, &[vec![2, 0], vec![0, 6]]).unwrap();
        assert_eq!(g.invariants(), &[2, 6]);
        let h = fgab_from_relations(2, &[vec![6, 0], vec![0, 4]]).unwrap();
        assert_eq!(h.invariants(), &[2, 12]);
        assert_eq!(fgab_from_relations(2, &[vec![1, 0]]).unwrap(), FgAbGroup::free(1));
    }

    #[test]
    fn normal_form_is_validated() {
        assert!(FgAbGroup::new(0, vec![4, 2]).is_err());
        assert!(FgAbGroup::new(0, vec![1]).is_err());
        assert!(FgAbGroup::new(1, vec![2, 4]).is_ok());
    }

    #[test]
    fn subgroup_of_z_plus_c2() {
        let g = FgAbGroup::new(1, vec![2]).unwrap();
        let (h, imgs) = subgroup_structure(&g, &[vec![2, 0]]).unwrap();
        assert_eq!(h, FgAbGroup::free(1));
        assert_eq!(imgs, vec![vec![2, 0]]);
        let (t, _) = subgroup_structure(&g, &[vec![0, 1]]).unwrap();
        assert_eq!(t, FgAbGroup::cyclic(2));
    }

    #[test]
    fn quotient_of_z_by_two() {
        let p = quotient_presentation(&FgAbGroup::free(1), &[vec![2]]).unwrap();
        assert_eq!(p.group, FgAbGroup::cyclic(2));
        assert_eq!(p.image(&[3]).unwrap(), vec![1]);
    }

    #[test]
    fn torsion_subgroups() {
        let g = FgAbGroup::new(1, vec![2]).unwrap();
        assert_eq!(g.torsion_of(4), vec![vec![0, 1]]);
        assert!(FgAbGroup::free(1).torsion_of(4).is_empty());
        assert_eq!(FgAbGroup::cyclic(4).torsion_of(2), vec![vec![2]]);
    }
}
