//! End-to-end acceptance run: one line per criterion, nonzero exit on any
//! failure.

use std::collections::BTreeSet;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::sync::{Arc, OnceLock};
use std::time::{Duration, Instant};

use serde_json::Value;
use xmodlab_core::catalogue::{accepted_corruptions, by_name, corrupted, group, reduction_c4_c2, standard, Entry};
use xmodlab_core::fgab::{abelian_invariants, enumerate_ab_homs, to_finite_group, FgAbGroup};
use xmodlab_core::flat::{
    admissibility_scan, admissibility_squares, apply_to_ses, birkhoff_check, commutation_check, conditional_flatness_samples,
    conditional_flatness_scan, fiberwise_condition, fiberwise_localize, flat_sequences, isokernel_check, nullification_ladder,
    AdmissibilitySquare, ScanOptions,
};
use xmodlab_core::group::{
    all_subgroups, enumerate_homs, named_group, normal_closure_grp, normal_subgroups, FiniteGroup, GroupSpec, Subgroup,
};
use xmodlab_core::localize::{loc_ab, loc_pxz, nullify, Localizer};
use xmodlab_core::xmod::{are_isomorphic_xmod, descend, functor_x, make_xmod, xkernel, xnormal_closure, CrossedModule, XModMorphism};
use xmodlab_core::{Error, Limits};

type Check = Result<String, String>;

fn lim() -> Limits {
    Limits::default()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e2s(e: Error) -> String {
    e.to_string()
}

fn p_a(e: &Entry) -> Localizer {
    Localizer::nullification(e.name.clone(), e.object.clone())
}

fn lxphi() -> Localizer {
    Localizer::lf("Xphi", XModMorphism::functor_x(&reduction_c4_c2())).expect("Xphi is a morphism")
}

fn c1_axioms() -> Check {
    let cat = standard();
    ensure(cat.len() >= 30, || format!("catalogue has {} entries", cat.len()))?;
    let (mut x, mut r, mut incl) = (0, 0, 0);
    for e in &cat {
        let t = &e.object;
        ensure(t.bottom().order() <= 24 && t.top().order() <= 24, || format!("{} is too large", e.name))?;
        make_xmod(t.boundary().clone(), t.action().clone()).map_err(|err| format!("{}: {err}", e.name))?;
        if e.name.starts_with('X') {
            x += 1;
        } else if e.name.starts_with('R') {
            r += 1;
        } else if e.name.contains('<') {
            incl += 1;
        }
    }
    ensure(x > 0 && r > 0 && incl > 0, || "catalogue misses a family".into())?;
    let bad = corrupted();
    for (label, d, a) in &bad {
        let (t1, t2) = (d.src(), d.dst());
        match make_xmod(d.clone(), a.clone()) {
            Ok(_) => return Err(format!("accepted corrupted input `{label}`")),
            Err(Error::Cm1Violation { b, t }) => {
                ensure(d.apply(a.act(b, t)) != t2.conj(b, d.apply(t)), || format!("`{label}`: CM1 witness ({b}, {t}) is not a violation"))?
            }
            Err(Error::Cm2Violation { s, t }) => {
                ensure(a.act(d.apply(t), s) != t1.conj(t, s), || format!("`{label}`: CM2 witness ({s}, {t}) is not a violation"))?
            }
            Err(other) => return Err(format!("`{label}` rejected without an axiom witness: {other}")),
        }
    }
    ensure(accepted_corruptions().is_empty(), || format!("accepted: {:?}", accepted_corruptions()))?;
    Ok(format!("{} objects ({x} X, {r} R, {incl} inclusions), {} corruptions rejected with witnesses", cat.len(), bad.len()))
}

fn c2_closed_formula() -> Check {
    let cat = standard();
    for e in &cat {
        let m = e.object.top().exponent();
        let a = functor_x(&group(&GroupSpec::Cyclic(m)));
        let generic = nullify(&a, &e.object, &lim()).map_err(e2s)?;
        let closed = loc_pxz(&e.object).map_err(e2s)?;
        let comparison = descend(&closed.coaugmentation, &generic.coaugmentation).map_err(|err| format!("{}: {err}", e.name))?;
        ensure(comparison.is_iso(), || format!("{}: comparison is not an isomorphism", e.name))?;
    }
    Ok(format!("comparison isomorphisms on all {} objects", cat.len()))
}

fn c3_abelianization() -> Check {
    let r = loc_ab(&by_name("XS3").unwrap()).map_err(e2s)?;
    let xc2 = by_name("XC2").unwrap();
    ensure(are_isomorphic_xmod(&r.local, &xc2, &lim()).map_err(e2s)?.is_some(), || "Ab(X S3) is not X C2".into())?;
    let cat = standard();
    for e in &cat {
        let t = &e.object;
        let (t1, t2) = (t.bottom(), t.top());
        let commutators: Vec<usize> = t2.elements().flat_map(|a| t2.elements().map(move |b| t2.commutator(a, b))).collect();
        let moved: Vec<usize> = t2.elements().flat_map(|b| t1.elements().map(move |x| (b, x))).map(|(b, x)| t1.mul(t.act(b, x), t1.inv(x))).collect();
        let k = xkernel(&loc_ab(t).map_err(e2s)?.coaugmentation);
        ensure(k.n2().members() == normal_closure_grp(t2, &commutators).members(), || format!("{}: level 2 differs", e.name))?;
        ensure(k.n1().members() == Subgroup::generated(t1, &moved).members(), || format!("{}: level 1 differs", e.name))?;
    }
    Ok(format!("Ab(X S3) = X C2; levelwise brute force agrees on {} objects", cat.len()))
}

fn c4_counterexample() -> Check {
    let bin = env!("CARGO_BIN_EXE_xmodlab");
    let text = Command::new(bin).arg("counterexample").output().map_err(|e| e.to_string())?;
    let json = Command::new(bin).args(["--json", "counterexample"]).output().map_err(|e| e.to_string())?;
    ensure(text.status.code() == Some(1) && json.status.code() == Some(1), || format!("exit codes {:?}, {:?}", text.status, json.status))?;
    let out = String::from_utf8_lossy(&text.stdout);
    for needle in ["(1, Z+C2)", "(Z, Z+C2, C2)", "= 2", "NOT FLAT"] {
        ensure(out.contains(needle), || format!("report lacks `{needle}`:\n{out}"))?;
    }
    let v: Value = serde_json::from_slice(&json.stdout).map_err(|e| e.to_string())?;
    let r = &v["result"];
    let ab = |rank: i64, inv: &[i64]| serde_json::json!({ "rank": rank, "invariants": inv });
    ensure(r["middle"] == ab(1, &[2]), || format!("middle {}", r["middle"]))?;
    ensure(r["localized"] == serde_json::json!([ab(1, &[]), ab(1, &[2]), ab(0, &[2])]), || format!("localized {}", r["localized"]))?;
    ensure(r["index"] == 2 && r["flat"] == false, || format!("index {} flat {}", r["index"], r["flat"]))?;
    Ok("middle Z+C2, localized (Z, Z+C2, C2), index 2, NOT FLAT, exit 1".into())
}

struct Square {
    a: Entry,
    sq: AdmissibilitySquare,
}

fn nullification_squares() -> &'static Result<Vec<Square>, String> {
    static SQUARES: OnceLock<Result<Vec<Square>, String>> = OnceLock::new();
    SQUARES.get_or_init(|| {
        let cat = standard();
        let opts = ScanOptions { max_squares: 12, ..ScanOptions::default() };
        let mut out = Vec::new();
        for a in &cat {
            let (squares, _) = admissibility_squares(&p_a(a), &cat, &opts).map_err(|e| format!("P_{}: {e}", a.name))?;
            out.extend(squares.into_iter().map(|(_, sq)| Square { a: a.clone(), sq }));
        }
        Ok(out)
    })
}

fn c5_isokernel() -> Check {
    let squares = nullification_squares().as_ref().map_err(Clone::clone)?;
    ensure(squares.len() >= 50, || format!("only {} squares", squares.len()))?;
    let mut nontrivial = 0;
    for s in squares {
        let ok = isokernel_check(&s.a.object, &s.sq.h, &s.sq.q, &lim()).map_err(|e| format!("A = {}: {e}", s.a.name))?;
        ensure(ok, || format!("isokernel fails for A = {}, Q of orders [{}, {}]", s.a.name, s.sq.q.bottom().order(), s.sq.q.top().order()))?;
        if !s.sq.ell_q.is_iso() {
            nontrivial += 1;
        }
    }
    let sources: BTreeSet<&str> = squares.iter().map(|s| s.a.name.as_str()).collect();
    Ok(format!("{} squares over {} choices of A ({nontrivial} with Q not local)", squares.len(), sources.len()))
}

fn c6_pa_admissible() -> Check {
    let cat = standard();
    let opts = ScanOptions::default();
    let mut checked = 0;
    for a in &cat {
        let r = admissibility_scan(&p_a(a), &cat, &opts).map_err(e2s)?;
        ensure(r.passes(), || format!("P_{}: {:?}", a.name, r.failures))?;
        checked += r.checked;
    }
    let squares = nullification_squares().as_ref().map_err(Clone::clone)?;
    let mut stages = 0;
    for s in squares {
        let ladder = nullification_ladder(&s.a.object, &s.sq.h, &s.sq.q, &lim()).map_err(|e| format!("ladder for A = {}: {e}", s.a.name))?;
        stages += ladder.stages.len();
    }
    Ok(format!("{} localizers, {checked} squares pass; {} ladders, {stages} stages assert cleanly", cat.len(), squares.len()))
}

fn c7_verdicts() -> Check {
    ensure(!Localizer::I.is_regular_epi_kind(), || "I reported as regular-epi".into())?;
    let cat = standard();
    let opts = ScanOptions::default();
    let cases = [
        (Localizer::Ab, true),
        (Localizer::Pxz, true),
        (Localizer::nullification("XC2", by_name("XC2").unwrap()), true),
        (lxphi(), false),
    ];
    let mut parts = Vec::new();
    for (l, expected) in cases {
        let a = admissibility_scan(&l, &cat, &opts).map_err(e2s)?;
        let c = conditional_flatness_scan(&l, &cat, &opts).map_err(e2s)?;
        ensure(a.passes() == expected && c.passes() == expected, || {
            format!("{l}: admissibility {} / conditional flatness {}, expected {expected}", a.passes(), c.passes())
        })?;
        parts.push(format!("{l} {}", if expected { "pass/pass" } else { "fail/fail" }));
    }
    Ok(format!("{}; I excluded", parts.join(", ")))
}

fn c8_i_flat() -> Check {
    let seqs = flat_sequences(&standard(), &ScanOptions::default()).map_err(e2s)?;
    ensure(seqs.len() >= 100, || format!("only {} sequences", seqs.len()))?;
    for (name, s) in &seqs {
        ensure(apply_to_ses(&Localizer::I, s, &lim()).map_err(e2s)?.is_flat(), || format!("{name} is not I-flat"))?;
    }
    Ok(format!("{}/{} sequences I-flat", seqs.len(), seqs.len()))
}

fn c9_fiberwise() -> Check {
    let cat = standard();
    let opts = ScanOptions::default();
    let seqs = flat_sequences(&cat, &opts).map_err(e2s)?;
    let mut flat_total = 0;
    for l in [Localizer::Ab, Localizer::Pxz, Localizer::nullification("XC2", by_name("XC2").unwrap()), lxphi()] {
        for (name, s) in &seqs {
            if !apply_to_ses(&l, s, &lim()).map_err(e2s)?.is_flat() {
                continue;
            }
            flat_total += 1;
            ensure(fiberwise_condition(&l, s, &lim()).map_err(e2s)?, || format!("{l}: fiberwise condition fails on {name}"))?;
            let f = fiberwise_localize(&l, s, &lim()).map_err(e2s)?;
            ensure(f.comparison_is_equivalence, || format!("{l}: comparison is not an equivalence on {name}"))?;
        }
    }
    let mut samples = Vec::new();
    for l in [Localizer::Ab, Localizer::Pxz, Localizer::nullification("XC2", by_name("XC2").unwrap())] {
        let mut n = 0;
        for (name, s, targets) in conditional_flatness_samples(&l, &cat, &opts).map_err(e2s)? {
            for (t, g) in targets {
                ensure(commutation_check(&l, &s, &g, &lim()).map_err(e2s)?, || format!("{l}: commutation fails on {name} along {t}"))?;
                n += 1;
            }
        }
        ensure(n >= 30, || format!("{l}: only {n} commutation samples"))?;
        samples.push(format!("{l} {n}"));
    }
    Ok(format!("{flat_total} flat (localizer, sequence) pairs; commutation samples: {}", samples.join(", ")))
}

type Pair = (Vec<usize>, Vec<usize>);

fn brute_closure(s1: &[usize], s2: &[usize], normals: &[(Subgroup, Subgroup)]) -> Pair {
    let mut acc: Option<(BTreeSet<usize>, BTreeSet<usize>)> = None;
    for (n1, n2) in normals {
        if !(s1.iter().all(|&x| n1.contains(x)) && s2.iter().all(|&x| n2.contains(x))) {
            continue;
        }
        let (a, b): (BTreeSet<usize>, BTreeSet<usize>) = (n1.members().iter().copied().collect(), n2.members().iter().copied().collect());
        acc = Some(match acc {
            None => (a, b),
            Some((x, y)) => (x.intersection(&a).copied().collect(), y.intersection(&b).copied().collect()),
        });
    }
    let (a, b) = acc.expect("the whole object contains everything");
    (a.into_iter().collect(), b.into_iter().collect())
}

fn brute_normals(t: &CrossedModule) -> Vec<(Subgroup, Subgroup)> {
    let (t1, t2) = (t.bottom(), t.top());
    let mut out = Vec::new();
    for n2 in normal_subgroups(t2) {
        for n1 in all_subgroups(t1) {
            let ok = n1.members().iter().all(|&x| n2.contains(t.d(x)))
                && t2.elements().all(|b| n1.members().iter().all(|&x| n1.contains(t.act(b, x))))
                && n2.members().iter().all(|&n| t1.elements().all(|x| n1.contains(t1.mul(t.act(n, x), t1.inv(x)))));
            if ok {
                out.push((n1.clone(), n2.clone()));
            }
        }
    }
    out
}

fn brute_homs(g: &FiniteGroup, h: &FiniteGroup) -> BTreeSet<Vec<usize>> {
    fn go(g: &FiniteGroup, h: &FiniteGroup, map: &mut Vec<usize>, out: &mut BTreeSet<Vec<usize>>) {
        let k = map.len();
        if k == g.order() {
            out.insert(map.clone());
            return;
        }
        for y in h.elements() {
            map.push(y);
            if (0..=k).all(|i| (0..=k).all(|j| g.mul(i, j) > k || map[g.mul(i, j)] == h.mul(map[i], map[j]))) {
                go(g, h, map, out);
            }
            map.pop();
        }
    }
    let mut out = BTreeSet::new();
    go(g, h, &mut Vec::new(), &mut out);
    out
}

fn c10_oracles() -> Check {
    let mut closures = 0;
    for e in standard().into_iter().filter(|e| e.object.bottom().order() <= 16 && e.object.top().order() <= 16) {
        let t = &e.object;
        let normals = brute_normals(t);
        for x in t.bottom().elements() {
            for y in t.top().elements() {
                let fix = xnormal_closure(t, &[x], &[y]).map_err(e2s)?;
                let got = (fix.n1().members().to_vec(), fix.n2().members().to_vec());
                ensure(got == brute_closure(&[x], &[y], &normals), || format!("{}: closure of ({x}, {y}) differs", e.name))?;
                closures += 1;
            }
        }
    }
    let specs = [
        GroupSpec::Cyclic(1),
        GroupSpec::Cyclic(2),
        GroupSpec::Cyclic(3),
        GroupSpec::Cyclic(4),
        GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(2)),
        GroupSpec::Cyclic(6),
        GroupSpec::Symmetric(3),
        GroupSpec::Dihedral(4),
        GroupSpec::Quaternion,
        GroupSpec::Cyclic(8),
        GroupSpec::Alternating(4),
        GroupSpec::Dihedral(6),
    ];
    let groups: Vec<Arc<FiniteGroup>> = specs.iter().map(|s| named_group(s, &lim()).unwrap()).collect();
    let mut pairs = 0;
    for g in &groups {
        for h in &groups {
            if g.order() * h.order() > 64 {
                continue;
            }
            let fast: BTreeSet<Vec<usize>> = enumerate_homs(g, h, &lim()).map_err(e2s)?.iter().map(|f| f.map()).collect();
            ensure(fast == brute_homs(g, h), || format!("homs {} -> {} differ", g.order(), h.order()))?;
            pairs += 1;
        }
    }
    let chains: [&[i64]; 10] = [&[], &[2], &[3], &[4], &[2, 2], &[6], &[2, 4], &[8], &[2, 2, 2], &[12]];
    let ab: Vec<FgAbGroup> = chains.iter().map(|c| FgAbGroup::new(0, c.to_vec()).unwrap()).collect();
    let tables: Vec<Arc<FiniteGroup>> = ab.iter().map(|g| to_finite_group(g).map(|(t, _)| t)).collect::<Result<_, _>>().map_err(e2s)?;
    for (g, t) in ab.iter().zip(&tables) {
        ensure(&abelian_invariants(t).map_err(e2s)? == g, || format!("{g} does not round-trip"))?;
    }
    let mut ab_pairs = 0;
    for (i, a) in ab.iter().enumerate() {
        for (j, b) in ab.iter().enumerate() {
            let n_ab = enumerate_ab_homs(a, b, &lim()).map_err(e2s)?.len();
            let n_grp = enumerate_homs(&tables[i], &tables[j], &lim()).map_err(e2s)?.len();
            ensure(n_ab == n_grp, || format!("Hom({a}, {b}): {n_ab} vs {n_grp}"))?;
            ab_pairs += 1;
        }
    }
    Ok(format!("{closures} closures, {pairs} hom pairs, {ab_pairs} abelian hom pairs agree"))
}

fn c11_birkhoff() -> Check {
    let cat = standard();
    match birkhoff_check(&Localizer::Pxz, &cat, &lim()).map_err(e2s)? {
        None => Ok(format!("P_XZ-locals closed under subobjects and regular quotients on {} objects", cat.len())),
        Some(w) => Err(w),
    }
}

fn main() -> ExitCode {
    let criteria: [(u32, &str, fn() -> Check, Option<Duration>); 11] = [
        (1, "axiom engine", c1_axioms, Some(Duration::from_secs(10))),
        (2, "closed-formula agreement", c2_closed_formula, Some(Duration::from_secs(60))),
        (3, "abelianization", c3_abelianization, None),
        (4, "counterexample", c4_counterexample, Some(Duration::from_secs(1))),
        (5, "isokernel", c5_isokernel, None),
        (6, "P_A admissibility and ladders", c6_pa_admissible, None),
        (7, "verdict agreement", c7_verdicts, None),
        (8, "I-flatness", c8_i_flat, None),
        (9, "fiberwise suite", c9_fiberwise, None),
        (10, "oracle equivalences", c10_oracles, None),
        (11, "Birkhoff check", c11_birkhoff, None),
    ];
    let mut failed = 0;
    for (n, title, run, budget) in criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = match (outcome, budget) {
            (Ok(_), Some(b)) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            (o, _) => o,
        };
        match outcome {
            Ok(detail) => println!("criterion {n:>2} PASS  {title}: {detail} [{:.2} s]", elapsed.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("criterion {n:>2} FAIL  {title}: {why} [{:.2} s]", elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of 11 criteria pass", 11 - failed);
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
