//! Corpus-wide properties of the localization engines.

use std::sync::Arc;

use xmodlab_core::catalogue::{by_name, group, reduction_c4_c2, standard};
use xmodlab_core::group::{normal_closure_grp, GroupSpec};
use xmodlab_core::localize::{loc_ab, loc_pxz, nullify, Localizer};
use xmodlab_core::xmod::{all_normal_subs, descend, enumerate_xmod_morphisms, functor_x, xkernel, CrossedModule, XModMorphism};
use xmodlab_core::Limits;

fn lim() -> Limits {
    Limits::default()
}

fn localizers() -> Vec<Localizer> {
    vec![
        Localizer::Ab,
        Localizer::I,
        Localizer::Pxz,
        Localizer::nullification("XC2", by_name("XC2").unwrap()),
        Localizer::nullification("RC2", by_name("RC2").unwrap()),
        Localizer::lf("Xphi", XModMorphism::functor_x(&reduction_c4_c2())).unwrap(),
    ]
}

#[test]
fn localizations_are_idempotent() {
    for l in localizers() {
        for e in standard() {
            let r = l.localize(&e.object, &lim()).unwrap();
            assert!(l.is_local(&r.local, &lim()).unwrap(), "{l} on {}", e.name);
            assert!(l.localize(&r.local, &lim()).unwrap().coaugmentation.is_iso(), "{l} on {}", e.name);
            assert!(l.is_equivalence(&r.coaugmentation, &lim()).unwrap(), "{l} on {}", e.name);
        }
    }
}

#[test]
fn morphisms_into_locals_factor_uniquely() {
    let corpus: Vec<_> = standard().into_iter().filter(|e| e.object.size() <= 16).collect();
    for l in localizers() {
        let locals: Vec<&Arc<CrossedModule>> =
            corpus.iter().map(|e| &e.object).filter(|y| l.is_local(y, &lim()).unwrap()).take(8).collect();
        assert!(!locals.is_empty());
        for e in &corpus {
            let r = l.localize(&e.object, &lim()).unwrap();
            for y in &locals {
                let from_local = enumerate_xmod_morphisms(&r.local, y, &lim()).unwrap();
                for m in enumerate_xmod_morphisms(&e.object, y, &lim()).unwrap() {
                    let n = from_local.iter().filter(|u| r.coaugmentation.then(u).unwrap() == m).count();
                    assert_eq!(n, 1, "{l}: {} -> {y:?}", e.name);
                }
            }
        }
    }
}

#[test]
fn equivalences_compose() {
    for l in localizers().into_iter().filter(Localizer::is_regular_epi_kind) {
        for e in standard().into_iter().filter(|e| e.object.size() <= 16) {
            let r = l.localize(&e.object, &lim()).unwrap();
            for n in all_normal_subs(&e.object).into_iter().filter(|n| n.is_subset_of(&xkernel(&r.coaugmentation))) {
                let first = xmodlab_core::xmod::xquotient(&n).unwrap().projection;
                let second = descend(&first, &r.coaugmentation).unwrap();
                assert!(l.is_equivalence(&first, &lim()).unwrap(), "{l} {}", e.name);
                assert!(l.is_equivalence(&second, &lim()).unwrap(), "{l} {}", e.name);
                assert!(l.is_equivalence(&first.then(&second).unwrap(), &lim()).unwrap());
            }
        }
    }
}

#[test]
fn cyclic_nullification_reproduces_the_closed_formula() {
    for e in standard() {
        let m = e.object.top().exponent();
        let a = functor_x(&group(&GroupSpec::Cyclic(m)));
        let generic = nullify(&a, &e.object, &lim()).unwrap();
        let closed = loc_pxz(&e.object).unwrap();
        let comparison = descend(&closed.coaugmentation, &generic.coaugmentation).unwrap();
        assert!(comparison.is_iso(), "{}", e.name);
    }
}

#[test]
fn abelianization_is_the_smallest_abelian_quotient() {
    for e in standard() {
        let t = &e.object;
        let (t1, t2) = (t.bottom(), t.top());
        let abelian_quotients: Vec<_> = all_normal_subs(t)
            .into_iter()
            .filter(|n| {
                t2.elements().all(|a| t2.elements().all(|b| n.n2().contains(t2.commutator(a, b))))
                    && t2.elements().all(|b| t1.elements().all(|x| n.n1().contains(t1.mul(t.act(b, x), t1.inv(x)))))
            })
            .collect();
        let k = xkernel(&loc_ab(t).unwrap().coaugmentation);
        assert!(abelian_quotients.contains(&k), "{}", e.name);
        assert!(abelian_quotients.iter().all(|n| k.is_subset_of(n)), "{}", e.name);
        let all_commutators: Vec<usize> = t2.elements().flat_map(|a| t2.elements().map(move |b| (a, b))).map(|(a, b)| t2.commutator(a, b)).collect();
        assert_eq!(k.n2(), &normal_closure_grp(t2, &all_commutators), "{}", e.name);
    }
}

#[test]
fn abelianization_of_x_s3_is_x_c2() {
    let r = loc_ab(&by_name("XS3").unwrap()).unwrap();
    assert!(r.local.bottom().is_trivial());
    assert_eq!(r.local.top().order(), 2);
    assert!(xmodlab_core::xmod::are_isomorphic_xmod(&r.local, &by_name("XC2").unwrap(), &lim()).unwrap().is_some());
}

#[test]
fn abelianization_is_not_a_perfect_nullification() {
    let xs3 = by_name("XS3").unwrap();
    let ab = loc_ab(&xs3).unwrap();
    let mut candidates = 0;
    for e in standard() {
        let top = e.object.top();
        let perfect = normal_closure_grp(top, &top.elements().flat_map(|a| top.elements().map(move |b| top.commutator(a, b))).collect::<Vec<_>>()).order()
            == top.order();
        if !perfect {
            continue;
        }
        candidates += 1;
        let p = nullify(&e.object, &xs3, &lim()).unwrap();
        assert!(p.coaugmentation.is_iso(), "{}", e.name);
        assert_ne!(p.local.size(), ab.local.size());
    }
    assert!(candidates >= 3);
}

#[test]
fn lf_traces_are_equivalences() {
    let l = Localizer::lf("Xphi", XModMorphism::functor_x(&reduction_c4_c2())).unwrap();
    for e in standard() {
        let r = l.localize(&e.object, &lim()).unwrap();
        let mut acc = XModMorphism::identity(&e.object);
        for step in &r.trace {
            assert!(step.is_regular_epi());
            assert!(l.is_equivalence(step, &lim()).unwrap());
            acc = acc.then(step).unwrap();
        }
        assert_eq!(acc, r.coaugmentation, "{}", e.name);
    }
}
