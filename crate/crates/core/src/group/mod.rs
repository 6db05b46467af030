//! Finite groups as dense Cayley tables.
//!
//! Elements of a [`FiniteGroup`] are the indices `0..order`. Every group is
//! validated once at construction; afterwards all values are immutable and
//! shared through [`Arc`].

mod action;
mod hom;
mod named;
mod ops;
pub(crate) mod search;
mod subgroup;

use std::fmt;
use std::sync::Arc;

use crate::{Error, Result};

pub use action::GroupAction;
pub use hom::GroupHom;
pub use named::{named_group, GroupSpec};
pub use ops::{are_isomorphic_grp, enumerate_homs, pullback_grp, quotient_grp, Pullback, Quotient};
pub use subgroup::{all_subgroups, normal_closure_grp, normal_subgroups, Subgroup};

/// A finite group stored as a full multiplication table.
#[derive(Clone)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u32>,
    identity: usize,
    inverse: Vec<u32>,
    generators: Vec<usize>,
    element_orders: Vec<u32>,
}

impl PartialEq for FiniteGroup {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.table == other.table
    }
}

impl Eq for FiniteGroup {}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("generators", &self.generators)
            .finish_non_exhaustive()
    }
}

impl FiniteGroup {
    /// Validates a square multiplication table and builds the group.
    ///
    /// Associativity is checked with Light's test against a generating set,
    /// which is exact: the set of elements `a` with `(xa)y = x(ay)` for all
    /// `x, y` is closed under products.
    pub fn from_table(rows: &[Vec<usize>]) -> Result<Arc<FiniteGroup>> {
        let n = rows.len();
        if n == 0 {
            return Err(Error::NotSquare { row: 0, len: 0, expected: 1 });
        }
        let mut table = Vec::with_capacity(n * n);
        for (r, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(Error::NotSquare { row: r, len: row.len(), expected: n });
            }
            for (c, &v) in row.iter().enumerate() {
                if v >= n {
                    return Err(Error::EntryOutOfRange { row: r, col: c, value: v });
                }
                table.push(v as u32);
            }
        }
        let at = |a: usize, b: usize| table[a * n + b] as usize;

        let identity = (0..n)
            .find(|&e| (0..n).all(|x| at(e, x) == x && at(x, e) == x))
            .ok_or(Error::NoIdentity)?;

        // Magma generators: greedily add the first element outside the
        // closure of left-nested products.
        let mut reached = vec![false; n];
        reached[identity] = true;
        let mut magma_gens: Vec<usize> = Vec::new();
        let mut frontier: Vec<usize> = vec![identity];
        while let Some(next) = (0..n).find(|&x| !reached[x]) {
            magma_gens.push(next);
            // Re-close from everything reached so far with the enlarged set.
            frontier.extend((0..n).filter(|&x| reached[x]));
            while let Some(x) = frontier.pop() {
                for &g in &magma_gens {
                    let y = at(x, g);
                    if !reached[y] {
                        reached[y] = true;
                        frontier.push(y);
                    }
                }
            }
        }
        for &a in &magma_gens {
            for x in 0..n {
                let xa = at(x, a);
                for y in 0..n {
                    if at(xa, y) != at(x, at(a, y)) {
                        return Err(Error::NotAssociative { x, y: a, z: y });
                    }
                }
            }
        }

        let mut inverse = vec![0u32; n];
        for x in 0..n {
            let inv = (0..n)
                .find(|&y| at(x, y) == identity && at(y, x) == identity)
                .ok_or(Error::NoInverse { element: x })?;
            inverse[x] = inv as u32;
        }
        Ok(Arc::new(Self::assemble(n, table, identity, inverse)))
    }

    /// Builds a group from a table known to satisfy the axioms, e.g. the
    /// output of a quotient or product construction.
    pub(crate) fn from_trusted_table(n: usize, table: Vec<u32>) -> Arc<FiniteGroup> {
        debug_assert_eq!(table.len(), n * n);
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e * n + x] as usize == x))
            .expect("trusted table has an identity");
        let mut inverse = vec![0u32; n];
        for x in 0..n {
            let row = &table[x * n..(x + 1) * n];
            let y = row.iter().position(|&v| v as usize == identity).expect("trusted table has inverses");
            inverse[x] = y as u32;
        }
        Arc::new(Self::assemble(n, table, identity, inverse))
    }

    fn assemble(n: usize, table: Vec<u32>, identity: usize, inverse: Vec<u32>) -> FiniteGroup {
        let mut element_orders = vec![0u32; n];
        for x in 0..n {
            let mut k = 1u32;
            let mut p = x;
            while p != identity {
                p = table[p * n + x] as usize;
                k += 1;
            }
            element_orders[x] = k;
        }
        let mut g = FiniteGroup {
            order: n,
            table,
            identity,
            inverse,
            generators: Vec::new(),
            element_orders,
        };
        g.generators = g.greedy_generators();
        g
    }

    /// Repeatedly adds the element whose inclusion enlarges the generated
    /// subgroup the most; ties go to the smallest index. Only one candidate
    /// per left coset of the current subgroup is tried, since `x` and `xh`
    /// generate the same enlargement.
    fn greedy_generators(&self) -> Vec<usize> {
        let n = self.order;
        let mut gens: Vec<usize> = Vec::new();
        let mut current = vec![self.identity];
        while current.len() < n {
            let mut in_current = vec![false; n];
            for &h in &current {
                in_current[h] = true;
            }
            let mut covered = in_current.clone();
            let mut best: Option<(usize, Vec<usize>)> = None;
            for x in 0..n {
                if covered[x] {
                    continue;
                }
                for &h in &current {
                    covered[self.mul(x, h)] = true;
                }
                let mut trial = gens.clone();
                trial.push(x);
                let closure = self.closure_of(&trial);
                if best.as_ref().map_or(true, |(_, b)| closure.len() > b.len()) {
                    let full = closure.len() == n;
                    best = Some((x, closure));
                    if full {
                        break;
                    }
                }
            }
            let (x, closure) = best.expect("a proper subgroup leaves an uncovered coset");
            gens.push(x);
            current = closure;
        }
        gens
    }

    /// Elements of the subgroup generated by `elems`, in discovery order.
    pub(crate) fn closure_of(&self, elems: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut out = vec![self.identity];
        let mut i = 0;
        while i < out.len() {
            let x = out[i];
            for &g in elems {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    out.push(y);
                }
            }
            i += 1;
        }
        out
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g⁻¹`.
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    /// `x y x⁻¹ y⁻¹`.
    pub fn commutator(&self, x: usize, y: usize) -> usize {
        self.mul(self.mul(x, y), self.mul(self.inv(x), self.inv(y)))
    }

    pub fn pow(&self, x: usize, k: u64) -> usize {
        let k = k % self.element_orders[x] as u64;
        let mut acc = self.identity;
        for _ in 0..k {
            acc = self.mul(acc, x);
        }
        acc
    }

    pub fn element_order(&self, x: usize) -> usize {
        self.element_orders[x] as usize
    }

    /// The computed generating set. The closure of these elements is the whole group.
    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter().all(|&a| g.iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Least common multiple of the element orders.
    pub fn exponent(&self) -> usize {
        self.element_orders.iter().fold(1usize, |acc, &o| lcm(acc, o as usize))
    }

    /// Sorted multiset of element orders, the first isomorphism invariant.
    pub fn order_profile(&self) -> Vec<usize> {
        let mut v: Vec<usize> = self.element_orders.iter().map(|&o| o as usize).collect();
        v.sort_unstable();
        v
    }

    /// Rows of the multiplication table, for serialization.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|a| (0..self.order).map(|b| self.mul(a, b)).collect())
            .collect()
    }

    /// The trivial group.
    pub fn trivial() -> Arc<FiniteGroup> {
        Self::from_trusted_table(1, vec![0])
    }
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub(crate) fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

/// Structural identity check used for `Arc`-shared groups.
#[inline]
pub(crate) fn same_group(a: &Arc<FiniteGroup>, b: &Arc<FiniteGroup>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}
