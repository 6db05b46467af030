//! Short human-readable names for small groups and crossed modules.

use std::sync::Arc;

use xmodlab_core::fgab::abelian_invariants;
use xmodlab_core::group::{are_isomorphic_grp, named_group, FiniteGroup, GroupSpec};
use xmodlab_core::xmod::CrossedModule;
use xmodlab_core::Limits;

fn candidates(order: usize) -> Vec<GroupSpec> {
    let mut out = Vec::new();
    if order % 2 == 0 && order >= 6 {
        out.push(GroupSpec::Dihedral(order / 2));
    }
    match order {
        6 => out.push(GroupSpec::Symmetric(3)),
        8 => out.push(GroupSpec::Quaternion),
        12 => {
            out.push(GroupSpec::Alternating(4));
            out.push(GroupSpec::product(GroupSpec::Symmetric(3), GroupSpec::Cyclic(2)));
        }
        24 => {
            out.push(GroupSpec::Symmetric(4));
            out.push(GroupSpec::product(GroupSpec::Alternating(4), GroupSpec::Cyclic(2)));
            out.push(GroupSpec::product(GroupSpec::Dihedral(4), GroupSpec::Cyclic(3)));
            out.push(GroupSpec::product(GroupSpec::Quaternion, GroupSpec::Cyclic(3)));
        }
        16 => {
            out.push(GroupSpec::product(GroupSpec::Dihedral(4), GroupSpec::Cyclic(2)));
            out.push(GroupSpec::product(GroupSpec::Quaternion, GroupSpec::Cyclic(2)));
        }
        _ => {}
    }
    out
}

/// `1`, an invariant-factor name such as `C2xC4`, a recognized nonabelian
/// name, or `G<order>`.
pub fn group_name(g: &Arc<FiniteGroup>) -> String {
    if g.is_trivial() {
        return "1".into();
    }
    if g.is_abelian() {
        if let Ok(a) = abelian_invariants(g) {
            return a.invariants().iter().map(|d| format!("C{d}")).collect::<Vec<_>>().join("x");
        }
    }
    let limits = Limits::default();
    for spec in candidates(g.order()) {
        if let Ok(h) = named_group(&spec, &limits) {
            if matches!(are_isomorphic_grp(g, &h, &limits), Ok(Some(_))) {
                return match spec {
                    GroupSpec::Dihedral(3) => "S3".into(),
                    s => s.to_string(),
                };
            }
        }
    }
    format!("G{}", g.order())
}

/// `X G` when the bottom is trivial, `R G` for an isomorphic boundary,
/// otherwise `(bottom -> top)`.
pub fn xmod_name(t: &CrossedModule) -> String {
    if t.bottom().is_trivial() {
        return format!("X {}", group_name(t.top()));
    }
    if t.boundary().is_bijective() {
        return format!("R {}", group_name(t.top()));
    }
    format!("({} -> {})", group_name(t.bottom()), group_name(t.top()))
}
