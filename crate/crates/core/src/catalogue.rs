//! A fixed catalogue of small crossed modules, plus deliberately broken
//! inputs for exercising the axiom checks.

use std::sync::Arc;

use crate::group::{named_group, normal_subgroups, quotient_grp, FiniteGroup, GroupAction, GroupHom, GroupSpec, Subgroup};
use crate::xmod::{functor_r, functor_x, make_xmod, CrossedModule};
use crate::Limits;

#[derive(Clone, Debug)]
pub struct Entry {
    pub name: String,
    pub object: Arc<CrossedModule>,
}

fn klein() -> GroupSpec {
    GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(2))
}

pub fn group(spec: &GroupSpec) -> Arc<FiniteGroup> {
    named_group(spec, &Limits::default()).expect("catalogue groups are small")
}

fn normal_of_order(g: &Arc<FiniteGroup>, order: usize, cyclic: Option<bool>) -> Subgroup {
    normal_subgroups(g)
        .into_iter()
        .find(|n| {
            n.order() == order
                && cyclic.map_or(true, |c| c == n.members().iter().any(|&x| g.element_order(x) == order))
        })
        .expect("catalogue subgroup exists")
}

fn center(g: &Arc<FiniteGroup>) -> Subgroup {
    let members: Vec<usize> = g.elements().filter(|&z| g.elements().all(|x| g.mul(z, x) == g.mul(x, z))).collect();
    Subgroup::from_members(g.clone(), &members).expect("the center is a subgroup")
}

/// Reduction `C4 → C2`.
pub fn reduction_c4_c2() -> GroupHom {
    GroupHom::from_generator_images(group(&GroupSpec::Cyclic(4)), group(&GroupSpec::Cyclic(2)), &[1]).expect("valid")
}

/// `(C3, C2, trivial, inversion)`.
pub fn inversion_module() -> Arc<CrossedModule> {
    let c3 = group(&GroupSpec::Cyclic(3));
    let c2 = group(&GroupSpec::Cyclic(2));
    let inv = GroupAction::from_fn(c2.clone(), c3.clone(), |b, t| if b == 0 { t } else { c3.inv(t) }).expect("valid");
    make_xmod(GroupHom::trivial(&c3, &c2), inv).expect("valid")
}

/// The standard catalogue: 36 crossed modules with both levels of order at
/// most 24, in a fixed order.
pub fn standard() -> Vec<Entry> {
    let mut out = Vec::new();
    let mut push = |name: &str, object: Arc<CrossedModule>| out.push(Entry { name: name.to_string(), object });

    let xs = [
        ("X1", GroupSpec::Cyclic(1)),
        ("XC2", GroupSpec::Cyclic(2)),
        ("XC3", GroupSpec::Cyclic(3)),
        ("XC4", GroupSpec::Cyclic(4)),
        ("XK4", klein()),
        ("XS3", GroupSpec::Symmetric(3)),
        ("XD4", GroupSpec::Dihedral(4)),
        ("XQ8", GroupSpec::Quaternion),
        ("XC6", GroupSpec::Cyclic(6)),
        ("XA4", GroupSpec::Alternating(4)),
        ("XS4", GroupSpec::Symmetric(4)),
    ];
    for (name, spec) in &xs {
        push(name, functor_x(&group(spec)));
    }
    let rs = [
        ("RC2", GroupSpec::Cyclic(2)),
        ("RC3", GroupSpec::Cyclic(3)),
        ("RC4", GroupSpec::Cyclic(4)),
        ("RK4", klein()),
        ("RS3", GroupSpec::Symmetric(3)),
        ("RD4", GroupSpec::Dihedral(4)),
        ("RQ8", GroupSpec::Quaternion),
        ("RA4", GroupSpec::Alternating(4)),
    ];
    for (name, spec) in &rs {
        push(name, functor_r(&group(spec)));
    }

    let s3 = group(&GroupSpec::Symmetric(3));
    let c4 = group(&GroupSpec::Cyclic(4));
    let d4 = group(&GroupSpec::Dihedral(4));
    let q8 = group(&GroupSpec::Quaternion);
    let a4 = group(&GroupSpec::Alternating(4));
    let s4 = group(&GroupSpec::Symmetric(4));
    let incl = |g: &Arc<FiniteGroup>, n: Subgroup| CrossedModule::normal_inclusion(g, &n).expect("normal");
    push("A3<S3", incl(&s3, normal_of_order(&s3, 3, None)));
    push("C4<D4", incl(&d4, normal_of_order(&d4, 4, Some(true))));
    push("K4<D4", incl(&d4, normal_of_order(&d4, 4, Some(false))));
    push("Z<D4", incl(&d4, center(&d4)));
    push("Z<Q8", incl(&q8, center(&q8)));
    push("C2<C4", incl(&c4, normal_of_order(&c4, 2, None)));
    push("K4<A4", incl(&a4, normal_of_order(&a4, 4, None)));
    push("K4<S4", incl(&s4, normal_of_order(&s4, 4, None)));
    push("A4<S4", incl(&s4, normal_of_order(&s4, 12, None)));

    for (name, spec) in [("C2>1", GroupSpec::Cyclic(2)), ("C3>1", GroupSpec::Cyclic(3)), ("C4>1", GroupSpec::Cyclic(4)), ("K4>1", klein())] {
        push(name, CrossedModule::over_trivial(&group(&spec)).expect("abelian"));
    }
    push("C3~C2", inversion_module());

    let central = |g: &Arc<FiniteGroup>| {
        let q = quotient_grp(g, &center(g)).expect("normal");
        CrossedModule::central_extension(q.projection).expect("central kernel")
    };
    push("Q8>K4", central(&q8));
    push("D4>K4", central(&d4));
    push("C4>C2", CrossedModule::central_extension(reduction_c4_c2()).expect("abelian"));
    out
}

/// Looks up an entry of [`standard`] by name.
pub fn by_name(name: &str) -> Option<Arc<CrossedModule>> {
    standard().into_iter().find(|e| e.name == name).map(|e| e.object)
}

/// Boundary/action pairs that violate an axiom, each with a label.
pub fn corrupted() -> Vec<(String, GroupHom, GroupAction)> {
    let mut out = Vec::new();
    let d4 = group(&GroupSpec::Dihedral(4));
    let rot = normal_of_order(&d4, 4, Some(true));
    let (c4, incl) = rot.to_group();
    out.push(("C4<D4 with trivial action".to_string(), incl, GroupAction::trivial(&d4, &c4)));

    let s3 = group(&GroupSpec::Symmetric(3));
    out.push(("identity on S3 with trivial action".to_string(), GroupHom::identity(&s3), GroupAction::trivial(&s3, &s3)));

    let one = FiniteGroup::trivial();
    out.push(("S3 over 1 with trivial action".to_string(), GroupHom::trivial(&s3, &one), GroupAction::trivial(&one, &s3)));

    let red = reduction_c4_c2();
    let c4 = red.src().clone();
    let c2 = red.dst().clone();
    let inv = GroupAction::from_fn(c2, c4.clone(), |b, t| if b == 0 { t } else { c4.inv(t) }).expect("valid action");
    out.push(("C4 over C2 acting by inversion".to_string(), red, inv));

    let q8 = group(&GroupSpec::Quaternion);
    out.push(("identity on Q8 with trivial action".to_string(), GroupHom::identity(&q8), GroupAction::trivial(&q8, &q8)));
    out
}

/// Validates every corrupted input, returning the labels of those accepted.
pub fn accepted_corruptions() -> Vec<String> {
    corrupted()
        .into_iter()
        .filter(|(_, d, a)| make_xmod(d.clone(), a.clone()).is_ok())
        .map(|(n, _, _)| n)
        .collect()
}
