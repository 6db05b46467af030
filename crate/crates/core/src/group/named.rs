use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::FiniteGroup;
use crate::{Error, Limits, Result};

/// Named group builders with documented element orderings.
///
/// - `Cyclic(n)`: residues `0..n`.
/// - `Dihedral(n)`: order `2n`; element `rⁱsʲ` has index `j·n + i`
///   (rotations first).
/// - `Symmetric(n)`: permutations in lexicographic one-line order, composed
///   right to left, `(στ)(x) = σ(τ(x))`. Limited to `n ≤ 6`.
/// - `Alternating(n)`: the even permutations, in the same order. `n ≤ 6`.
/// - `Quaternion`: `aⁱbʲ` with `a⁴ = 1`, `b² = a²`, `bab⁻¹ = a⁻¹`, index `j·4 + i`.
/// - `Product(g, h)`: pairs `(x, y)` with index `x·|h| + y`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupSpec {
    Cyclic(usize),
    Dihedral(usize),
    Symmetric(usize),
    Alternating(usize),
    Quaternion,
    Product(Box<GroupSpec>, Box<GroupSpec>),
}

impl GroupSpec {
    pub fn order(&self) -> Option<usize> {
        match self {
            GroupSpec::Cyclic(n) => Some(*n),
            GroupSpec::Dihedral(n) => n.checked_mul(2),
            GroupSpec::Symmetric(n) => factorial(*n),
            GroupSpec::Alternating(n) => factorial(*n).map(|f| if *n >= 2 { f / 2 } else { f }),
            GroupSpec::Quaternion => Some(8),
            GroupSpec::Product(a, b) => a.order()?.checked_mul(b.order()?),
        }
    }

    pub fn product(a: GroupSpec, b: GroupSpec) -> GroupSpec {
        GroupSpec::Product(Box::new(a), Box::new(b))
    }
}

impl std::fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            GroupSpec::Cyclic(n) => write!(f, "C{n}"),
            GroupSpec::Dihedral(n) => write!(f, "D{n}"),
            GroupSpec::Symmetric(n) => write!(f, "S{n}"),
            GroupSpec::Alternating(n) => write!(f, "A{n}"),
            GroupSpec::Quaternion => write!(f, "Q8"),
            GroupSpec::Product(a, b) => write!(f, "{a}x{b}"),
        }
    }
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

/// Builds a named group. Fails with `SizeLimitExceeded` above `limits.max_order`.
pub fn named_group(spec: &GroupSpec, limits: &Limits) -> Result<Arc<FiniteGroup>> {
    let order = spec.order().ok_or(Error::SizeLimitExceeded { what: "group order", limit: limits.max_order })?;
    if order > limits.max_order {
        return Err(Error::SizeLimitExceeded { what: "group order", limit: limits.max_order });
    }
    match spec {
        GroupSpec::Cyclic(n) | GroupSpec::Dihedral(n) if *n == 0 => {
            Err(Error::Precondition("group parameter must be at least 1".into()))
        }
        GroupSpec::Symmetric(n) | GroupSpec::Alternating(n) if *n == 0 || *n > 6 => {
            Err(Error::Precondition("symmetric and alternating groups need 1 <= n <= 6".into()))
        }
        GroupSpec::Cyclic(n) => {
            let n = *n;
            let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u32).collect();
            Ok(FiniteGroup::from_trusted_table(n, table))
        }
        GroupSpec::Dihedral(n) => {
            let n = *n;
            let m = 2 * n;
            let split = |x: usize| (x % n, x / n);
            let mut table = Vec::with_capacity(m * m);
            for x in 0..m {
                let (a, b) = split(x);
                for y in 0..m {
                    let (c, d) = split(y);
                    let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
                    table.push((((b + d) % 2) * n + rot) as u32);
                }
            }
            Ok(FiniteGroup::from_trusted_table(m, table))
        }
        GroupSpec::Symmetric(n) => Ok(permutation_group(*n, false)),
        GroupSpec::Alternating(n) => Ok(permutation_group(*n, true)),
        GroupSpec::Quaternion => {
            let split = |x: usize| (x % 4, x / 4);
            let mut table = Vec::with_capacity(64);
            for x in 0..8 {
                let (i, j) = split(x);
                for y in 0..8 {
                    let (k, l) = split(y);
                    let mut e = if j == 0 { i + k } else { i + 4 - k };
                    let mut b = j + l;
                    if b == 2 {
                        b = 0;
                        e += 2;
                    }
                    table.push((b * 4 + e % 4) as u32);
                }
            }
            Ok(FiniteGroup::from_trusted_table(8, table))
        }
        GroupSpec::Product(a, b) => {
            let ga = named_group(a, limits)?;
            let gb = named_group(b, limits)?;
            Ok(direct_product(&ga, &gb))
        }
    }
}

/// Direct product with lexicographic pair indexing.
pub(crate) fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Arc<FiniteGroup> {
    let (na, nb) = (a.order(), b.order());
    let n = na * nb;
    let mut table = Vec::with_capacity(n * n);
    for x in 0..n {
        for y in 0..n {
            let p = a.mul(x / nb, y / nb);
            let q = b.mul(x % nb, y % nb);
            table.push((p * nb + q) as u32);
        }
    }
    FiniteGroup::from_trusted_table(n, table)
}

fn permutation_group(n: usize, even_only: bool) -> Arc<FiniteGroup> {
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut current: Vec<usize> = (0..n).collect();
    loop {
        if !even_only || is_even(&current) {
            perms.push(current.clone());
        }
        if !next_permutation(&mut current) {
            break;
        }
    }
    let index: std::collections::HashMap<Vec<usize>, usize> =
        perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
    let m = perms.len();
    let mut table = Vec::with_capacity(m * m);
    for p in &perms {
        for q in &perms {
            let pq: Vec<usize> = q.iter().map(|&x| p[x]).collect();
            table.push(index[&pq] as u32);
        }
    }
    FiniteGroup::from_trusted_table(m, table)
}

fn is_even(p: &[usize]) -> bool {
    let mut inversions = 0;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inversions += 1;
            }
        }
    }
    inversions % 2 == 0
}

fn next_permutation(p: &mut [usize]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}
