//! Backtracking over generator images.
//!
//! Generators are assigned in order. After each assignment the partial map is
//! extended to the subgroup generated so far by breadth-first closure, and any
//! element that would receive two different images prunes the branch. The
//! restriction of a homomorphism to a subgroup is a homomorphism, so no valid
//! map is ever pruned.

use std::ops::ControlFlow;

use super::FiniteGroup;
use crate::{Error, Limits, Result};

const UNSET: u32 = u32::MAX;

pub(crate) struct GenSearch<'a> {
    pub src: &'a FiniteGroup,
    pub dst: &'a FiniteGroup,
    pub gens: &'a [usize],
    /// Candidate images per generator, in the order they are tried.
    pub candidates: Vec<Vec<usize>>,
    /// Reject partial maps that are not injective.
    pub injective: bool,
    pub limits: &'a Limits,
}

struct State {
    map: Vec<u32>,
    used: Vec<bool>,
    assigned: Vec<usize>,
    nodes: usize,
}

impl GenSearch<'_> {
    /// Calls `visit` with every full element map, in lexicographic order of
    /// the generator images. `visit` may stop the search early.
    pub fn run(&self, mut visit: impl FnMut(&[u32]) -> ControlFlow<()>) -> Result<()> {
        let mut st = State {
            map: vec![UNSET; self.src.order()],
            used: vec![false; self.dst.order()],
            assigned: vec![self.src.identity()],
            nodes: 0,
        };
        st.map[self.src.identity()] = self.dst.identity() as u32;
        st.used[self.dst.identity()] = true;
        let mut images = vec![0usize; self.gens.len()];
        match self.descend(0, &mut st, &mut images, &mut visit)? {
            ControlFlow::Continue(()) | ControlFlow::Break(()) => Ok(()),
        }
    }

    fn descend(
        &self,
        depth: usize,
        st: &mut State,
        images: &mut [usize],
        visit: &mut impl FnMut(&[u32]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>> {
        if depth == self.gens.len() {
            debug_assert_eq!(st.assigned.len(), self.src.order());
            return Ok(visit(&st.map));
        }
        for &cand in &self.candidates[depth] {
            st.nodes += 1;
            if st.nodes > self.limits.max_search_nodes {
                return Err(Error::SizeLimitExceeded { what: "homomorphism search", limit: self.limits.max_search_nodes });
            }
            images[depth] = cand;
            let mark = st.assigned.len();
            if self.extend(depth, st, images) {
                if let ControlFlow::Break(()) = self.descend(depth + 1, st, images, visit)? {
                    self.undo(st, mark);
                    return Ok(ControlFlow::Break(()));
                }
            }
            self.undo(st, mark);
        }
        Ok(ControlFlow::Continue(()))
    }

    fn undo(&self, st: &mut State, mark: usize) {
        for &x in &st.assigned[mark..] {
            let v = st.map[x];
            st.map[x] = UNSET;
            if self.injective {
                st.used[v as usize] = false;
            }
        }
        st.assigned.truncate(mark);
    }

    /// Extends the map from `⟨g₀..g_{d-1}⟩` to `⟨g₀..g_d⟩`. Old elements only
    /// need the new generator; new elements need all generators so far.
    fn extend(&self, depth: usize, st: &mut State, images: &[usize]) -> bool {
        let old = st.assigned.len();
        let mut i = 0;
        while i < st.assigned.len() {
            let x = st.assigned[i];
            let first = if i < old { depth } else { 0 };
            for j in first..=depth {
                let y = self.src.mul(x, self.gens[j]);
                let c = self.dst.mul(st.map[x] as usize, images[j]) as u32;
                if st.map[y] == UNSET {
                    if self.injective {
                        if st.used[c as usize] {
                            return false;
                        }
                        st.used[c as usize] = true;
                    }
                    st.map[y] = c;
                    st.assigned.push(y);
                } else if st.map[y] != c {
                    return false;
                }
            }
            i += 1;
        }
        true
    }
}
