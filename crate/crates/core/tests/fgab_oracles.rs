//! The abelian backend against the Cayley-table backend, and normal-form
//! properties of the Smith reduction.

use std::collections::HashMap;
use std::sync::Arc;

use proptest::prelude::*;
use xmodlab_core::fgab::{
    ab_pullback, abelian_invariants, enumerate_ab_homs, fgab_from_relations, lf_ab_localize, to_finite_group, AbHom, AbQuotient, Element,
    FgAbGroup,
};
use xmodlab_core::group::{pullback_grp, quotient_grp, FiniteGroup, GroupHom, Subgroup};
use xmodlab_core::Limits;

const CHAINS: &[&[i64]] = &[
    &[],
    &[2],
    &[3],
    &[4],
    &[2, 2],
    &[5],
    &[6],
    &[2, 4],
    &[8],
    &[3, 3],
    &[2, 2, 2],
    &[2, 6],
    &[12],
    &[4, 4],
    &[2, 8],
    &[2, 2, 4],
];

fn finite_ab() -> impl Strategy<Value = FgAbGroup> {
    (0..CHAINS.len()).prop_map(|i| FgAbGroup::new(0, CHAINS[i].to_vec()).unwrap())
}

fn lim() -> Limits {
    Limits::default()
}

struct Encoded {
    group: Arc<FiniteGroup>,
    index: HashMap<Element, usize>,
}

fn encode(g: &FgAbGroup) -> Encoded {
    let (group, elems) = to_finite_group(g).unwrap();
    let index = elems.into_iter().enumerate().map(|(i, e)| (e, i)).collect();
    Encoded { group, index }
}

fn encode_hom(f: &AbHom, src: &Encoded, dst: &Encoded) -> GroupHom {
    let mut map = vec![0; src.group.order()];
    for (e, &i) in &src.index {
        map[i] = dst.index[&f.apply(e).unwrap()];
    }
    GroupHom::new(src.group.clone(), dst.group.clone(), map).unwrap()
}

fn structure(s: &Subgroup) -> FgAbGroup {
    abelian_invariants(&s.to_group().0).unwrap()
}

fn pick_hom(a: &FgAbGroup, b: &FgAbGroup, k: usize) -> AbHom {
    let homs = enumerate_ab_homs(a, b, &lim()).unwrap();
    homs[k % homs.len()].clone()
}

#[test]
fn table_round_trip_recovers_the_invariants() {
    for chain in CHAINS {
        let g = FgAbGroup::new(0, chain.to_vec()).unwrap();
        let e = encode(&g);
        assert_eq!(abelian_invariants(&e.group).unwrap(), g);
        assert_eq!(e.group.order() as i64, g.order().unwrap());
    }
}

#[test]
fn hom_counts_match_the_table_backend() {
    for a in CHAINS.iter().take(10) {
        for b in CHAINS.iter().take(10) {
            let (a, b) = (FgAbGroup::new(0, a.to_vec()).unwrap(), FgAbGroup::new(0, b.to_vec()).unwrap());
            let (ea, eb) = (encode(&a), encode(&b));
            let n_ab = enumerate_ab_homs(&a, &b, &lim()).unwrap().len();
            let n_grp = xmodlab_core::group::enumerate_homs(&ea.group, &eb.group, &lim()).unwrap().len();
            assert_eq!(n_ab, n_grp, "{a} -> {b}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn normal_form_is_idempotent(rows in 1usize..4, rels in prop::collection::vec(prop::collection::vec(-9i64..10, 3), 0..5)) {
        let rels: Vec<Element> = rels.into_iter().map(|r| r[..rows].to_vec()).collect();
        let g = fgab_from_relations(rows, &rels).unwrap();
        let n = g.ngens();
        let diag: Vec<Element> = (0..n).map(|i| {
            let mut r = vec![0; n];
            r[i] = g.gen_order(i);
            r
        }).collect();
        prop_assert_eq!(fgab_from_relations(n, &diag).unwrap(), g.clone());
        prop_assert!(g.invariants().windows(2).all(|w| w[1] % w[0] == 0));
        prop_assert!(g.invariants().iter().all(|&d| d >= 2));
    }

    #[test]
    fn kernels_images_cokernels_agree(a in finite_ab(), b in finite_ab(), k in any::<usize>()) {
        let f = pick_hom(&a, &b, k);
        let (ea, eb) = (encode(&a), encode(&b));
        let h = encode_hom(&f, &ea, &eb);
        prop_assert_eq!(f.kernel().unwrap().group, structure(&h.kernel()));
        prop_assert_eq!(f.image().unwrap().group, structure(&h.image()));
        let coker = AbQuotient::new(&b, f.columns()).unwrap();
        let q = quotient_grp(&eb.group, &h.image()).unwrap();
        prop_assert_eq!(coker.group, abelian_invariants(&q.group).unwrap());
        prop_assert_eq!(f.is_injective().unwrap(), h.is_injective());
        prop_assert_eq!(f.is_surjective().unwrap(), h.is_surjective());
    }

    #[test]
    fn pullbacks_agree(a in finite_ab(), b in finite_ab(), c in finite_ab(), k in any::<usize>(), j in any::<usize>()) {
        let f = pick_hom(&a, &c, k);
        let g = pick_hom(&b, &c, j);
        let (ea, eb, ec) = (encode(&a), encode(&b), encode(&c));
        let p = pullback_grp(&encode_hom(&f, &ea, &ec), &encode_hom(&g, &eb, &ec)).unwrap();
        prop_assume!(p.group.order() <= 64);
        let ab = ab_pullback(&f, &g).unwrap();
        prop_assert_eq!(ab.group, abelian_invariants(&p.group).unwrap());
        prop_assert_eq!(ab.to_a.then(&f).unwrap(), ab.to_b.then(&g).unwrap());
    }
}

fn phi_local(phi: &AbHom, y: &FgAbGroup) -> bool {
    let ker = phi.kernel_generators().unwrap();
    enumerate_ab_homs(phi.src(), y, &lim())
        .unwrap()
        .iter()
        .all(|g| ker.iter().all(|k| y.is_zero(&g.apply(k).unwrap())))
}

#[test]
fn kill_kernel_localization_is_local_and_universal() {
    let c2 = FgAbGroup::cyclic(2);
    let c4 = FgAbGroup::cyclic(4);
    let phis = [
        AbHom::new(c4.clone(), c2.clone(), vec![vec![1]]).unwrap(),
        AbHom::new(FgAbGroup::new(0, vec![2, 2]).unwrap(), c2.clone(), vec![vec![1], vec![0]]).unwrap(),
        AbHom::new(FgAbGroup::cyclic(6), FgAbGroup::cyclic(3), vec![vec![1]]).unwrap(),
    ];
    let tests = [FgAbGroup::free(1), c2.clone(), FgAbGroup::new(0, vec![2, 2]).unwrap(), FgAbGroup::new(1, vec![2]).unwrap()];
    let sources = [c4.clone(), FgAbGroup::new(0, vec![2, 4]).unwrap(), FgAbGroup::cyclic(8), FgAbGroup::new(0, vec![4, 4]).unwrap(), FgAbGroup::cyclic(12)];
    for phi in &phis {
        for t in &sources {
            let (lt, ell) = lf_ab_localize(phi, t, &lim()).unwrap();
            assert!(phi_local(phi, &lt), "{t} localized to {lt}");
            for y in tests.iter().filter(|y| phi_local(phi, y)) {
                for h in enumerate_ab_homs(t, y, &lim()).unwrap() {
                    let through: Vec<AbHom> = xmodlab_core::fgab::enumerate_ab_homs_boxed(&lt, y, 3, &lim())
                        .unwrap()
                        .into_iter()
                        .filter(|u| ell.then(u).unwrap() == h)
                        .collect();
                    assert_eq!(through.len(), 1, "{h:?} through {lt}");
                }
            }
        }
    }
}
