use std::fmt;
use std::sync::Arc;

use super::{same_group, FiniteGroup, Subgroup};
use crate::{Error, Result};

/// A validated group homomorphism stored as a full element map.
#[derive(Clone)]
pub struct GroupHom {
    src: Arc<FiniteGroup>,
    dst: Arc<FiniteGroup>,
    map: Vec<u32>,
}

impl fmt::Debug for GroupHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupHom({} -> {}: {:?})", self.src.order(), self.dst.order(), self.map)
    }
}

impl PartialEq for GroupHom {
    fn eq(&self, other: &Self) -> bool {
        self.map == other.map && same_group(&self.src, &other.src) && same_group(&self.dst, &other.dst)
    }
}

impl Eq for GroupHom {}

impl GroupHom {
    /// Validates a full element map. It is enough to check
    /// `map(x·g) = map(x)·map(g)` for every `x` and every generator `g`.
    pub fn new(src: Arc<FiniteGroup>, dst: Arc<FiniteGroup>, map: Vec<usize>) -> Result<GroupHom> {
        if map.len() != src.order() {
            return Err(Error::WrongLength { len: map.len(), expected: src.order() });
        }
        if let Some(&v) = map.iter().find(|&&v| v >= dst.order()) {
            return Err(Error::Mismatch(format!("image {v} is not an element of the codomain")));
        }
        let map: Vec<u32> = map.into_iter().map(|v| v as u32).collect();
        for x in src.elements() {
            for &g in src.generators() {
                let lhs = map[src.mul(x, g)] as usize;
                let rhs = dst.mul(map[x] as usize, map[g] as usize);
                if lhs != rhs {
                    return Err(Error::NotAHomomorphism { x, y: g });
                }
            }
        }
        if map[src.identity()] as usize != dst.identity() {
            return Err(Error::NotAHomomorphism { x: src.identity(), y: src.identity() });
        }
        Ok(GroupHom { src, dst, map })
    }

    pub(crate) fn from_trusted(src: Arc<FiniteGroup>, dst: Arc<FiniteGroup>, map: Vec<u32>) -> GroupHom {
        debug_assert_eq!(map.len(), src.order());
        GroupHom { src, dst, map }
    }

    /// Extends images of the source's computed generators (in the order of
    /// [`FiniteGroup::generators`]) to a homomorphism.
    pub fn from_generator_images(src: Arc<FiniteGroup>, dst: Arc<FiniteGroup>, images: &[usize]) -> Result<GroupHom> {
        let gens = src.generators().to_vec();
        Self::from_images(src, dst, &gens, images)
    }

    /// Extends `gens[i] ↦ images[i]` to a homomorphism. `gens` must generate
    /// the source; the reported violation is a pair `(x, g)` where the
    /// extension would need two different values for `x·g`.
    pub fn from_images(src: Arc<FiniteGroup>, dst: Arc<FiniteGroup>, gens: &[usize], images: &[usize]) -> Result<GroupHom> {
        if gens.len() != images.len() {
            return Err(Error::WrongLength { len: images.len(), expected: gens.len() });
        }
        if let Some(&v) = images.iter().find(|&&v| v >= dst.order()) {
            return Err(Error::Mismatch(format!("image {v} is not an element of the codomain")));
        }
        if let Some(&g) = gens.iter().find(|&&g| g >= src.order()) {
            return Err(Error::Mismatch(format!("generator {g} is not an element of the source")));
        }
        const UNSET: u32 = u32::MAX;
        let mut map = vec![UNSET; src.order()];
        map[src.identity()] = dst.identity() as u32;
        let mut queue = vec![src.identity()];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for (&g, &img) in gens.iter().zip(images) {
                let y = src.mul(x, g);
                let c = dst.mul(map[x] as usize, img) as u32;
                if map[y] == UNSET {
                    map[y] = c;
                    queue.push(y);
                } else if map[y] != c {
                    return Err(Error::NotAHomomorphism { x, y: g });
                }
            }
            i += 1;
        }
        if queue.len() != src.order() {
            return Err(Error::Mismatch("the given elements do not generate the source".into()));
        }
        Ok(GroupHom { src, dst, map })
    }

    pub fn identity(g: &Arc<FiniteGroup>) -> GroupHom {
        GroupHom { src: g.clone(), dst: g.clone(), map: (0..g.order() as u32).collect() }
    }

    pub fn trivial(src: &Arc<FiniteGroup>, dst: &Arc<FiniteGroup>) -> GroupHom {
        GroupHom { src: src.clone(), dst: dst.clone(), map: vec![dst.identity() as u32; src.order()] }
    }

    pub fn src(&self) -> &Arc<FiniteGroup> {
        &self.src
    }

    pub fn dst(&self) -> &Arc<FiniteGroup> {
        &self.dst
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.map[x] as usize
    }

    pub fn map(&self) -> Vec<usize> {
        self.map.iter().map(|&v| v as usize).collect()
    }

    /// Images of the computed source generators.
    pub fn generator_images(&self) -> Vec<usize> {
        self.src.generators().iter().map(|&g| self.apply(g)).collect()
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &GroupHom) -> Result<GroupHom> {
        if !same_group(&self.dst, &next.src) {
            return Err(Error::NotComposable);
        }
        let map = self.map.iter().map(|&x| next.map[x as usize]).collect();
        Ok(GroupHom { src: self.src.clone(), dst: next.dst.clone(), map })
    }

    pub fn kernel(&self) -> Subgroup {
        let id = self.dst.identity() as u32;
        let members = self.src.elements().filter(|&x| self.map[x] == id).collect();
        Subgroup::from_sorted_trusted(self.src.clone(), members)
    }

    pub fn image(&self) -> Subgroup {
        let mut members: Vec<usize> = self.map.iter().map(|&v| v as usize).collect();
        members.sort_unstable();
        members.dedup();
        Subgroup::from_sorted_trusted(self.dst.clone(), members)
    }

    pub fn is_trivial(&self) -> bool {
        let id = self.dst.identity() as u32;
        self.map.iter().all(|&v| v == id)
    }

    pub fn is_injective(&self) -> bool {
        let id = self.dst.identity() as u32;
        self.map.iter().filter(|&&v| v == id).count() == 1
    }

    pub fn is_surjective(&self) -> bool {
        let mut hit = vec![false; self.dst.order()];
        let mut count = 0;
        for &v in &self.map {
            if !hit[v as usize] {
                hit[v as usize] = true;
                count += 1;
            }
        }
        count == self.dst.order()
    }

    pub fn is_bijective(&self) -> bool {
        self.src.order() == self.dst.order() && self.is_injective()
    }

    /// Inverse of a bijective homomorphism.
    pub fn inverse(&self) -> Option<GroupHom> {
        if !self.is_bijective() {
            return None;
        }
        let mut inv = vec![0u32; self.dst.order()];
        for (x, &y) in self.map.iter().enumerate() {
            inv[y as usize] = x as u32;
        }
        Some(GroupHom { src: self.dst.clone(), dst: self.src.clone(), map: inv })
    }
}
