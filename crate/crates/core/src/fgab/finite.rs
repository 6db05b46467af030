use std::sync::Arc;

use super::{Element, FgAbGroup};
use crate::group::FiniteGroup;
use crate::{Error, Result};

/// The Cayley table of a finite `FgAbGroup`. Element `i` is
/// `g.elements()[i]`, so the identity is `0`.
pub fn to_finite_group(g: &FgAbGroup) -> Result<(Arc<FiniteGroup>, Vec<Element>)> {
    let elems = g
        .elements()
        .ok_or_else(|| Error::Unsupported("an infinite group has no Cayley table".into()))?;
    let index: std::collections::HashMap<&Element, usize> = elems.iter().enumerate().map(|(i, e)| (e, i)).collect();
    let mut rows = Vec::with_capacity(elems.len());
    for x in &elems {
        let row = elems.iter().map(|y| g.add(x, y).map(|s| index[&s])).collect::<Result<Vec<_>>>()?;
        rows.push(row);
    }
    Ok((FiniteGroup::from_table(&rows)?, elems))
}

/// Invariant factors of a finite abelian group, read off from the number of
/// solutions of `x^{pᵏ} = 1` for each prime `p`.
pub fn abelian_invariants(g: &FiniteGroup) -> Result<FgAbGroup> {
    if !g.is_abelian() {
        return Err(Error::Precondition("abelian invariants need an abelian group".into()));
    }
    let n = g.order();
    let mut per_prime: Vec<Vec<i64>> = Vec::new();
    let mut rest = n;
    let mut p = 2;
    while rest > 1 {
        if rest % p == 0 {
            let mut pk = 1usize;
            while rest % p == 0 {
                rest /= p;
                pk *= p;
            }
            // s_k = log_p #{x : x^{p^k} = 1}; factors of size ≥ p^k number s_k − s_{k−1}.
            let mut s_prev = 0u32;
            let mut counts: Vec<u32> = Vec::new();
            let mut q = p;
            while q <= pk {
                let c = g.elements().filter(|&x| q % g.element_order(x) == 0).count();
                let s = c.ilog(p);
                counts.push(s - s_prev);
                s_prev = s;
                q *= p;
            }
            let mut exps: Vec<i64> = Vec::new();
            for (k, w) in counts.iter().enumerate() {
                let next = counts.get(k + 1).copied().unwrap_or(0);
                for _ in 0..(w - next) {
                    exps.push((p as i64).pow(k as u32 + 1));
                }
            }
            exps.sort_unstable_by(|a, b| b.cmp(a));
            per_prime.push(exps);
        }
        p += 1;
    }
    let k = per_prime.iter().map(Vec::len).max().unwrap_or(0);
    let mut invariants: Vec<i64> = (0..k).map(|i| per_prime.iter().filter_map(|e| e.get(i)).product()).collect();
    invariants.reverse();
    FgAbGroup::new(0, invariants)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::{named_group, GroupSpec};
    use crate::Limits;

    #[test]
    fn round_trip_through_tables() {
        for inv in [vec![], vec![2], vec![4], vec![2, 2], vec![2, 6], vec![2, 12], vec![3, 3]] {
            let g = FgAbGroup::new(0, inv).unwrap();
            let (t, _) = to_finite_group(&g).unwrap();
            assert_eq!(abelian_invariants(&t).unwrap(), g);
        }
    }

    #[test]
    fn named_abelian_groups() {
        let l = Limits::default();
        let c6 = named_group(&GroupSpec::Cyclic(6), &l).unwrap();
        assert_eq!(abelian_invariants(&c6).unwrap().invariants(), &[6]);
        let k = named_group(&GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(2)), &l).unwrap();
        assert_eq!(abelian_invariants(&k).unwrap().invariants(), &[2, 2]);
        assert!(abelian_invariants(&named_group(&GroupSpec::Symmetric(3), &l).unwrap()).is_err());
    }
}
