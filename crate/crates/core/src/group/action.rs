use std::fmt;
use std::sync::Arc;

use super::{same_group, FiniteGroup};
use crate::{Error, Result};

/// A left action of `actor` on `space` by group automorphisms, stored as a
/// full `actor.order() × space.order()` table.
#[derive(Clone)]
pub struct GroupAction {
    actor: Arc<FiniteGroup>,
    space: Arc<FiniteGroup>,
    table: Vec<u32>,
}

impl fmt::Debug for GroupAction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GroupAction({} on {})", self.actor.order(), self.space.order())
    }
}

impl PartialEq for GroupAction {
    fn eq(&self, other: &Self) -> bool {
        self.table == other.table && same_group(&self.actor, &other.actor) && same_group(&self.space, &other.space)
    }
}

impl Eq for GroupAction {}

impl GroupAction {
    /// Validates: each `act(b, -)` is an automorphism, `act(e, t) = t`, and
    /// `act(b·b', t) = act(b, act(b', t))`. The last two are checked against
    /// the actor's generators, which suffices because the set of `b'`
    /// satisfying the law for all `b` is closed under products.
    pub fn new(actor: Arc<FiniteGroup>, space: Arc<FiniteGroup>, rows: &[Vec<usize>]) -> Result<GroupAction> {
        if rows.len() != actor.order() {
            return Err(Error::InvalidAction(format!("expected {} rows, got {}", actor.order(), rows.len())));
        }
        let m = space.order();
        let mut table = Vec::with_capacity(actor.order() * m);
        for (b, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::InvalidAction(format!("row {b} has length {}, expected {m}", row.len())));
            }
            for (t, &v) in row.iter().enumerate() {
                if v >= m {
                    return Err(Error::InvalidAction(format!("act({b}, {t}) = {v} is out of range")));
                }
                table.push(v as u32);
            }
        }
        let action = GroupAction { actor, space, table };
        action.validate()?;
        Ok(action)
    }

    pub(crate) fn from_trusted(actor: Arc<FiniteGroup>, space: Arc<FiniteGroup>, table: Vec<u32>) -> GroupAction {
        debug_assert_eq!(table.len(), actor.order() * space.order());
        GroupAction { actor, space, table }
    }

    /// Builds an action from a closure and validates it.
    pub fn from_fn(actor: Arc<FiniteGroup>, space: Arc<FiniteGroup>, f: impl Fn(usize, usize) -> usize) -> Result<GroupAction> {
        let mut table = Vec::with_capacity(actor.order() * space.order());
        for b in actor.elements() {
            for t in space.elements() {
                let v = f(b, t);
                if v >= space.order() {
                    return Err(Error::InvalidAction(format!("act({b}, {t}) = {v} is out of range")));
                }
                table.push(v as u32);
            }
        }
        let action = GroupAction { actor, space, table };
        action.validate()?;
        Ok(action)
    }

    fn validate(&self) -> Result<()> {
        let (a, s) = (&self.actor, &self.space);
        for t in s.elements() {
            if self.act(a.identity(), t) != t {
                return Err(Error::InvalidAction(format!("identity moves {t}")));
            }
        }
        for b in a.elements() {
            let mut hit = vec![false; s.order()];
            for t in s.elements() {
                let v = self.act(b, t);
                if hit[v] {
                    return Err(Error::InvalidAction(format!("act({b}, -) is not injective at {t}")));
                }
                hit[v] = true;
                for &g in s.generators() {
                    if self.act(b, s.mul(t, g)) != s.mul(v, self.act(b, g)) {
                        return Err(Error::InvalidAction(format!("act({b}, -) is not a homomorphism at ({t}, {g})")));
                    }
                }
            }
            for &bp in a.generators() {
                let bb = a.mul(b, bp);
                for t in s.elements() {
                    if self.act(bb, t) != self.act(b, self.act(bp, t)) {
                        return Err(Error::InvalidAction(format!("act({b}*{bp}, {t}) != act({b}, act({bp}, {t}))")));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn trivial(actor: &Arc<FiniteGroup>, space: &Arc<FiniteGroup>) -> GroupAction {
        let row: Vec<u32> = (0..space.order() as u32).collect();
        let table = row.iter().copied().cycle().take(actor.order() * space.order()).collect();
        GroupAction { actor: actor.clone(), space: space.clone(), table }
    }

    /// `G` acting on itself by conjugation.
    pub fn conjugation(g: &Arc<FiniteGroup>) -> GroupAction {
        let mut table = Vec::with_capacity(g.order() * g.order());
        for b in g.elements() {
            for t in g.elements() {
                table.push(g.conj(b, t) as u32);
            }
        }
        GroupAction { actor: g.clone(), space: g.clone(), table }
    }

    pub fn actor(&self) -> &Arc<FiniteGroup> {
        &self.actor
    }

    pub fn space(&self) -> &Arc<FiniteGroup> {
        &self.space
    }

    /// `ᵇt`.
    #[inline]
    pub fn act(&self, b: usize, t: usize) -> usize {
        self.table[b * self.space.order() + t] as usize
    }

    pub fn is_trivial(&self) -> bool {
        self.actor.elements().all(|b| self.space.elements().all(|t| self.act(b, t) == t))
    }

    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.actor.elements().map(|b| self.space.elements().map(|t| self.act(b, t)).collect()).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_group, GroupSpec};
    use crate::Limits;

    #[test]
    fn inversion_action_of_c2_on_c3() {
        let c2 = named_group(&GroupSpec::Cyclic(2), &Limits::default()).unwrap();
        let c3 = named_group(&GroupSpec::Cyclic(3), &Limits::default()).unwrap();
        let act = GroupAction::from_fn(c2.clone(), c3.clone(), |b, t| if b == 0 { t } else { (3 - t) % 3 }).unwrap();
        assert_eq!(act.act(1, 1), 2);
        assert!(!act.is_trivial());
    }

    #[test]
    fn non_automorphism_is_rejected() {
        let c2 = named_group(&GroupSpec::Cyclic(2), &Limits::default()).unwrap();
        let c3 = named_group(&GroupSpec::Cyclic(3), &Limits::default()).unwrap();
        // Swapping 0 and 1 does not fix the identity of C3.
        let err = GroupAction::new(c2, c3, &[vec![0, 1, 2], vec![1, 0, 2]]).unwrap_err();
        assert!(matches!(err, Error::InvalidAction(_)));
    }
}
