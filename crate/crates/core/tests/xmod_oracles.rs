//! Crossed-module constructions against exhaustive searches.

use std::collections::BTreeSet;
use std::sync::Arc;

use proptest::prelude::*;
use xmodlab_core::catalogue::{standard, Entry};
use xmodlab_core::group::{all_subgroups, enumerate_homs, normal_subgroups, GroupSpec, Subgroup};
use xmodlab_core::xmod::{
    all_normal_subs, check_tr_r_adjunction, check_x_tr_adjunction, descend, enumerate_xmod_morphisms, make_xmod, xkernel, xnormal_closure,
    xnormal_closure_formula, xpullback, xquotient, CrossedModule, SubCrossedModule, XModMorphism,
};
use xmodlab_core::Limits;

fn lim() -> Limits {
    Limits::default()
}

fn small(max_level: usize) -> Vec<Entry> {
    standard()
        .into_iter()
        .filter(|e| e.object.bottom().order() <= max_level && e.object.top().order() <= max_level)
        .collect()
}

type Pair = (Vec<usize>, Vec<usize>);

fn key(s: &SubCrossedModule) -> Pair {
    (s.n1().members().to_vec(), s.n2().members().to_vec())
}

/// Every pair `(N₁ ≤ T₁, N₂ ⊴ T₂)` meeting the normality conditions, tested
/// element by element.
fn brute_normal_subs(t: &CrossedModule) -> Vec<(Subgroup, Subgroup)> {
    let (t1, t2) = (t.bottom(), t.top());
    let mut out = Vec::new();
    for n2 in normal_subgroups(t2) {
        for n1 in all_subgroups(t1) {
            let boundary = n1.members().iter().all(|&x| n2.contains(t.d(x)));
            let stable = t2.elements().all(|b| n1.members().iter().all(|&x| n1.contains(t.act(b, x))));
            let commutators =
                n2.members().iter().all(|&n| t1.elements().all(|x| n1.contains(t1.mul(t.act(n, x), t1.inv(x)))));
            if boundary && stable && commutators {
                out.push((n1.clone(), n2.clone()));
            }
        }
    }
    out
}

fn brute_closure(all: &[(Subgroup, Subgroup)], s1: &[usize], s2: &[usize]) -> Pair {
    let containing: Vec<&(Subgroup, Subgroup)> =
        all.iter().filter(|(n1, n2)| s1.iter().all(|&x| n1.contains(x)) && s2.iter().all(|&x| n2.contains(x))).collect();
    let meet = |f: &dyn Fn(&(Subgroup, Subgroup)) -> &Subgroup| -> Vec<usize> {
        let mut acc: BTreeSet<usize> = f(containing[0]).members().iter().copied().collect();
        for c in &containing[1..] {
            let m: BTreeSet<usize> = f(c).members().iter().copied().collect();
            acc = acc.intersection(&m).copied().collect();
        }
        acc.into_iter().collect()
    };
    (meet(&|p| &p.0), meet(&|p| &p.1))
}

#[test]
fn normal_sub_enumeration_matches_brute_force() {
    for e in small(24) {
        let brute: BTreeSet<Pair> =
            brute_normal_subs(&e.object).iter().map(|(a, b)| (a.members().to_vec(), b.members().to_vec())).collect();
        let fast: BTreeSet<Pair> = all_normal_subs(&e.object).iter().map(key).collect();
        assert_eq!(fast, brute, "{}", e.name);
    }
}

#[test]
fn closure_fixpoint_matches_intersection_of_normal_subs() {
    let mut checked = 0;
    for e in small(16) {
        let t = &e.object;
        let all = brute_normal_subs(t);
        for x in t.bottom().elements() {
            for y in t.top().elements() {
                let fix = xnormal_closure(t, &[x], &[y]).unwrap();
                assert_eq!(key(&fix), brute_closure(&all, &[x], &[y]), "{} ({x}, {y})", e.name);
                assert_eq!(fix, xnormal_closure_formula(t, &[x], &[y]).unwrap(), "{}", e.name);
                checked += 1;
            }
            let fix = xnormal_closure(t, &[x], &[]).unwrap();
            assert_eq!(key(&fix), brute_closure(&all, &[x], &[]), "{} ({x}, -)", e.name);
        }
    }
    assert!(checked > 500);
}

#[test]
fn morphism_enumeration_matches_filtered_hom_pairs() {
    let corpus = small(8);
    for a in &corpus {
        for b in &corpus {
            let fast: BTreeSet<Pair> =
                enumerate_xmod_morphisms(&a.object, &b.object, &lim()).unwrap().iter().map(|m| (m.f1().map(), m.f2().map())).collect();
            let mut brute = BTreeSet::new();
            for f1 in enumerate_homs(a.object.bottom(), b.object.bottom(), &lim()).unwrap() {
                for f2 in enumerate_homs(a.object.top(), b.object.top(), &lim()).unwrap() {
                    let (s, t) = (&a.object, &b.object);
                    let square = s.bottom().elements().all(|x| t.d(f1.apply(x)) == f2.apply(s.d(x)));
                    let equivariant = s
                        .top()
                        .elements()
                        .all(|g| s.bottom().elements().all(|x| f1.apply(s.act(g, x)) == t.act(f2.apply(g), f1.apply(x))));
                    if square && equivariant {
                        brute.insert((f1.map(), f2.map()));
                    }
                }
            }
            assert_eq!(fast, brute, "{} -> {}", a.name, b.name);
        }
    }
}

#[test]
fn kernels_quotients_and_revalidation() {
    for e in standard() {
        for n in all_normal_subs(&e.object) {
            let q = xquotient(&n).unwrap();
            assert!(q.projection.is_regular_epi());
            assert_eq!(xkernel(&q.projection), n, "{}", e.name);
            assert!(xkernel(&q.projection).is_normal());
            let again = make_xmod(q.object.boundary().clone(), q.object.action().clone());
            assert!(again.is_ok(), "{} quotient fails revalidation", e.name);
        }
    }
}

/// Morphisms of rows `N' → T' → Q'` over `N → T → Q` in the small corpus.
fn row_maps(max_level: usize) -> Vec<(XModMorphism, SubCrossedModule, SubCrossedModule)> {
    let corpus = small(max_level);
    let mut out = Vec::new();
    for src in &corpus {
        for dst in &corpus {
            let morphisms = enumerate_xmod_morphisms(&src.object, &dst.object, &lim()).unwrap();
            for m in morphisms.iter().take(12) {
                for np in all_normal_subs(&src.object) {
                    for n in all_normal_subs(&dst.object) {
                        let into = np.n1().members().iter().all(|&x| n.n1().contains(m.f1().apply(x)))
                            && np.n2().members().iter().all(|&x| n.n2().contains(m.f2().apply(x)));
                        if into {
                            out.push((m.clone(), np.clone(), n));
                        }
                    }
                }
            }
        }
    }
    out
}

#[test]
fn diagram_lemmas_on_generated_rows() {
    let mut iso_cases = 0;
    let mut epi_cases = 0;
    for (m, np, n) in row_maps(6) {
        let qp = xquotient(&np).unwrap();
        let q = xquotient(&n).unwrap();
        let w = descend(&qp.projection, &m.then(&q.projection).unwrap()).unwrap();
        let u_bij = |f: &xmodlab_core::group::GroupHom, a: &Subgroup, b: &Subgroup| {
            let img: BTreeSet<usize> = a.members().iter().map(|&x| f.apply(x)).collect();
            a.members().len() == b.order() && img.len() == b.order() && img.iter().all(|&y| b.contains(y))
        };
        let u_onto = |f: &xmodlab_core::group::GroupHom, a: &Subgroup, b: &Subgroup| {
            let img: BTreeSet<usize> = a.members().iter().map(|&x| f.apply(x)).collect();
            img.len() == b.order()
        };
        if u_bij(m.f1(), np.n1(), n.n1()) && u_bij(m.f2(), np.n2(), n.n2()) {
            let pb = xpullback(&q.projection, &w).unwrap();
            let c = pb.mediate(&m, &qp.projection).unwrap();
            assert!(c.is_iso(), "right square of {m:?} is not a pullback");
            iso_cases += 1;
        }
        if u_onto(m.f1(), np.n1(), n.n1()) && u_onto(m.f2(), np.n2(), n.n2()) && w.is_regular_epi() {
            assert!(m.is_regular_epi(), "middle map of {m:?} is not a regular epi");
            epi_cases += 1;
        }
    }
    assert!(iso_cases >= 20 && epi_cases >= 20, "{iso_cases} {epi_cases}");
}

#[test]
fn adjunctions_on_the_small_corpus() {
    let groups: Vec<_> = [GroupSpec::Cyclic(2), GroupSpec::Cyclic(3), GroupSpec::Symmetric(3), GroupSpec::Dihedral(4)]
        .iter()
        .map(xmodlab_core::catalogue::group)
        .collect();
    for e in small(12) {
        for g in &groups {
            assert!(check_tr_r_adjunction(&e.object, g, &lim()).unwrap(), "{} / {g:?}", e.name);
            assert!(check_x_tr_adjunction(g, &e.object, &lim()).unwrap(), "{} / {g:?}", e.name);
        }
    }
}

fn objects() -> Vec<Arc<CrossedModule>> {
    small(8).into_iter().map(|e| e.object).collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(120))]

    #[test]
    fn pullback_cones_mediate_uniquely(i in 0usize..40, j in 0usize..40, k in 0usize..40, x in 0usize..40, s in any::<u64>()) {
        let objs = objects();
        let n = objs.len();
        let (a, b, c, xo) = (&objs[i % n], &objs[j % n], &objs[k % n], &objs[x % n]);
        let fs = enumerate_xmod_morphisms(a, c, &lim()).unwrap();
        let gs = enumerate_xmod_morphisms(b, c, &lim()).unwrap();
        let f = &fs[s as usize % fs.len()];
        let g = &gs[(s >> 20) as usize % gs.len()];
        let pb = xpullback(f, g).unwrap();
        let to_p = enumerate_xmod_morphisms(xo, &pb.object, &lim()).unwrap();
        let xa = enumerate_xmod_morphisms(xo, a, &lim()).unwrap();
        let xb = enumerate_xmod_morphisms(xo, b, &lim()).unwrap();
        for h1 in xa.iter().take(5) {
            for h2 in xb.iter().take(5) {
                let commutes = h1.then(f).unwrap() == h2.then(g).unwrap();
                let through = to_p
                    .iter()
                    .filter(|m| m.then(&pb.to_left).unwrap() == *h1 && m.then(&pb.to_right).unwrap() == *h2)
                    .count();
                prop_assert_eq!(through, usize::from(commutes));
                prop_assert_eq!(pb.mediate(h1, h2).is_ok(), commutes);
            }
        }
    }
}
