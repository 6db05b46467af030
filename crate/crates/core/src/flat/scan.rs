//! Corpus scans for the two sides of the admissibility/conditional-flatness
//! equivalence, plus the closure check for local objects.
//!
//! Finite scans draw from a catalogue of crossed modules. Localizers that
//! act on `X`-embedded abelian objects are also scanned over a small family
//! of finitely generated abelian groups, with homomorphisms out of free
//! groups boxed. Items that hit a search budget are counted as skipped,
//! never as failures.

use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{admissibility_check, apply_to_ses, pullback_ses, AdmissibilitySquare};
use crate::catalogue::Entry;
use crate::fgab::{ab_pullback, enumerate_ab_homs, enumerate_ab_homs_boxed, AbHom, AbQuotient, Element, FgAbGroup};
use crate::group::all_subgroups;
use crate::localize::{LocalizationResult, Localizer};
use crate::xab::{make_xab_ses, xab_flat_check, AbLocalizer, XAbSes};
use crate::xmod::{
    all_normal_subs, enumerate_xmod_morphisms, xquotient, CrossedModule, ShortExactSequence, SubCrossedModule, XModMorphism,
};
use crate::{Error, Limits, Result};

#[derive(Clone, Debug)]
pub struct ScanOptions {
    pub seed: u64,
    /// Most admissibility squares checked on the finite side.
    pub max_squares: usize,
    /// Most sequences drawn on the finite side.
    pub max_sequences: usize,
    /// Pullback morphisms tried per flat sequence.
    pub pullbacks_per_sequence: usize,
    /// Corpus objects searched for pullback sources per sequence.
    pub sources_per_sequence: usize,
    /// Box for homomorphisms out of free abelian groups.
    pub ab_bound: i64,
    pub limits: Limits,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions {
            seed: 0,
            max_squares: 300,
            max_sequences: 160,
            pullbacks_per_sequence: 3,
            sources_per_sequence: 4,
            ab_bound: 2,
            limits: Limits::default(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ScanReport {
    pub localizer: String,
    pub side: String,
    pub checked: usize,
    pub passed: usize,
    pub failed: usize,
    /// Items abandoned because a budget ran out.
    pub skipped: usize,
    /// Squares where the equivalence test and the row flatness test disagree.
    pub inconsistent: usize,
    pub failures: Vec<String>,
}

impl ScanReport {
    fn new(l: &str, side: &str) -> ScanReport {
        ScanReport { localizer: l.to_string(), side: side.to_string(), ..ScanReport::default() }
    }

    pub fn passes(&self) -> bool {
        self.failed == 0 && self.inconsistent == 0
    }

    fn record(&mut self, label: String, outcome: Result<bool>) {
        match outcome {
            Ok(true) => {
                self.checked += 1;
                self.passed += 1;
            }
            Ok(false) => {
                self.checked += 1;
                self.failed += 1;
                self.failures.push(label);
            }
            Err(Error::SizeLimitExceeded { .. }) => self.skipped += 1,
            Err(e) => {
                self.checked += 1;
                self.failed += 1;
                self.failures.push(format!("{label}: {e}"));
            }
        }
    }

    fn skip(&mut self, e: Error) -> Result<()> {
        match e {
            Error::SizeLimitExceeded { .. } => {
                self.skipped += 1;
                Ok(())
            }
            e => Err(e),
        }
    }
}

fn rng(opts: &ScanOptions, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(opts.seed ^ salt.wrapping_mul(0x9e37_79b9_7f4a_7c15))
}

fn sample<T>(mut items: Vec<T>, cap: usize, rng: &mut ChaCha8Rng) -> Vec<T> {
    if items.len() > cap {
        items.shuffle(rng);
        items.truncate(cap);
    }
    items
}

/// Small finitely generated abelian groups used by the abelian-side scans.
pub fn ab_family() -> Vec<(String, FgAbGroup)> {
    let g = |r, inv: &[i64]| FgAbGroup::new(r, inv.to_vec()).expect("valid invariants");
    vec![
        ("1".into(), FgAbGroup::trivial()),
        ("Z".into(), g(1, &[])),
        ("C2".into(), g(0, &[2])),
        ("C3".into(), g(0, &[3])),
        ("C4".into(), g(0, &[4])),
        ("C2xC2".into(), g(0, &[2, 2])),
        ("ZxC2".into(), g(1, &[2])),
        ("ZxC4".into(), g(1, &[4])),
        ("Z2".into(), g(2, &[])),
    ]
}

fn ab_homs(b: &FgAbGroup, t: &FgAbGroup, opts: &ScanOptions) -> Result<Vec<AbHom>> {
    if b.is_finite() {
        enumerate_ab_homs(b, t, &opts.limits)
    } else {
        enumerate_ab_homs_boxed(b, t, opts.ab_bound, &opts.limits)
    }
}

fn localize_all(l: &Localizer, corpus: &[Entry], limits: &Limits) -> Vec<Result<LocalizationResult>> {
    corpus.par_iter().map(|e| l.localize(&e.object, limits)).collect()
}

/// Regular epimorphisms `h: LT → LQ` for `T, Q` in the corpus, with `Q`.
/// Distinct local objects are used once each as sources.
pub fn admissibility_squares(l: &Localizer, corpus: &[Entry], opts: &ScanOptions) -> Result<(Vec<(String, AdmissibilitySquare)>, usize)> {
    let locals = localize_all(l, corpus, &opts.limits);
    let mut skipped = 0;
    let mut sources: Vec<(String, Arc<CrossedModule>)> = Vec::new();
    for (e, r) in corpus.iter().zip(&locals) {
        match r {
            Ok(r) if !sources.iter().any(|(_, s)| **s == *r.local) => sources.push((format!("L{}", e.name), r.local.clone())),
            Ok(_) => {}
            Err(Error::SizeLimitExceeded { .. }) => skipped += 1,
            Err(e) => return Err(e.clone()),
        }
    }
    let per_q: Vec<Result<Vec<(String, AdmissibilitySquare)>>> = corpus
        .par_iter()
        .zip(locals.par_iter())
        .map(|(qe, lq)| {
            let Ok(lq) = lq else { return Ok(Vec::new()) };
            let mut out = Vec::new();
            for (sname, src) in &sources {
                for h in enumerate_xmod_morphisms(src, &lq.local, &opts.limits)? {
                    if h.is_regular_epi() {
                        let label = format!("h: {sname} -> L{} #{}", qe.name, out.len());
                        out.push((label, AdmissibilitySquare::trusted(l, h, qe.object.clone(), lq.coaugmentation.clone())?));
                    }
                }
            }
            Ok(out)
        })
        .collect();
    let mut all = Vec::new();
    for r in per_q {
        match r {
            Ok(v) => all.extend(v),
            Err(Error::SizeLimitExceeded { .. }) => skipped += 1,
            Err(e) => return Err(e),
        }
    }
    Ok((sample(all, opts.max_squares, &mut rng(opts, 1)), skipped))
}

fn finite_admissibility(l: &Localizer, corpus: &[Entry], opts: &ScanOptions, report: &mut ScanReport) -> Result<()> {
    let (squares, skipped) = admissibility_squares(l, corpus, opts)?;
    report.skipped += skipped;
    let results: Vec<_> = squares
        .par_iter()
        .map(|(label, sq)| (label.clone(), admissibility_check(sq, &opts.limits)))
        .collect();
    for (label, r) in results {
        if let Ok(r) = &r {
            if !r.consistent() {
                report.inconsistent += 1;
            }
        }
        report.record(label, r.map(|r| r.admissible()));
    }
    Ok(())
}

fn ab_admissibility(l: &AbLocalizer, opts: &ScanOptions, report: &mut ScanReport) -> Result<()> {
    let family = ab_family();
    let mut locals = Vec::new();
    for (name, t) in &family {
        let lt = l.localize(t, &opts.limits)?.group;
        if !locals.iter().any(|(_, x)| *x == lt) {
            locals.push((format!("L{name}"), lt));
        }
    }
    for (qname, q) in &family {
        let lq: AbQuotient = l.localize(q, &opts.limits)?;
        for (sname, lt) in &locals {
            let homs = match ab_homs(lt, &lq.group, opts) {
                Ok(h) => h,
                Err(e) => {
                    report.skip(e)?;
                    continue;
                }
            };
            for h in homs {
                if !h.is_surjective()? {
                    continue;
                }
                let label = format!("ab h: {sname} -> L{qname} {:?}", h.columns());
                let outcome = (|| {
                    let w = ab_pullback(&h, &lq.projection)?;
                    let equivalence = l.is_equivalence(&w.to_a, &opts.limits)?;
                    let k = w.to_b.kernel()?;
                    let row = make_xab_ses(k.inclusion, w.to_b.clone())?;
                    Ok((equivalence, xab_flat_check(l, &row, &opts.limits)?.flat))
                })();
                if let Ok((eq, flat)) = outcome {
                    if eq != flat {
                        report.inconsistent += 1;
                    }
                }
                report.record(label, outcome.map(|(eq, _)| eq));
            }
        }
    }
    Ok(())
}

/// Side (2): pullbacks of regular epis between local objects along
/// coaugmentations.
pub fn admissibility_scan(l: &Localizer, corpus: &[Entry], opts: &ScanOptions) -> Result<ScanReport> {
    let mut report = ScanReport::new(&l.to_string(), "admissibility");
    finite_admissibility(l, corpus, opts, &mut report)?;
    if let Ok(al) = AbLocalizer::realize(l, &opts.limits) {
        ab_admissibility(&al, opts, &mut report)?;
    }
    Ok(report)
}

/// `N → T → T/N` for every normal subcrossed module of every corpus
/// object, sampled down to `max_sequences`.
pub fn flat_sequences(corpus: &[Entry], opts: &ScanOptions) -> Result<Vec<(String, ShortExactSequence)>> {
    let per: Vec<Result<Vec<(String, ShortExactSequence)>>> = corpus
        .par_iter()
        .map(|e| {
            all_normal_subs(&e.object)
                .iter()
                .enumerate()
                .map(|(i, n)| Ok((format!("{} / N{i}", e.name), ShortExactSequence::from_normal(n)?)))
                .collect()
        })
        .collect();
    let mut all = Vec::new();
    for r in per {
        all.extend(r?);
    }
    Ok(sample(all, opts.max_sequences, &mut rng(opts, 2)))
}

/// For each sequence, a seeded choice of morphisms `g: Q' → Q` from corpus
/// objects, always including the identity of `Q`.
pub fn pullback_targets(
    s: &ShortExactSequence,
    corpus: &[Entry],
    opts: &ScanOptions,
    salt: u64,
) -> Result<Vec<(String, XModMorphism)>> {
    let mut r = rng(opts, 3 + salt);
    let q = s.quotient();
    let mut sources: Vec<&Entry> = corpus.iter().collect();
    sources.shuffle(&mut r);
    let mut out = vec![("id".to_string(), XModMorphism::identity(q))];
    let mut found = Vec::new();
    for e in sources.into_iter().take(opts.sources_per_sequence) {
        match enumerate_xmod_morphisms(&e.object, q, &opts.limits) {
            Ok(ms) => found.extend(ms.into_iter().filter(|m| !m.is_trivial()).map(|m| (e.name.clone(), m))),
            Err(Error::SizeLimitExceeded { .. }) => {}
            Err(e) => return Err(e),
        }
    }
    out.extend(sample(found, opts.pullbacks_per_sequence.saturating_sub(1), &mut r));
    Ok(out)
}

/// `L`-flat sequences of the corpus with their pullback morphisms.
pub fn conditional_flatness_samples(
    l: &Localizer,
    corpus: &[Entry],
    opts: &ScanOptions,
) -> Result<Vec<(String, ShortExactSequence, Vec<(String, XModMorphism)>)>> {
    let seqs = flat_sequences(corpus, opts)?;
    let out: Vec<Result<Option<_>>> = seqs
        .into_par_iter()
        .enumerate()
        .map(|(i, (name, s))| {
            match apply_to_ses(l, &s, &opts.limits) {
                Ok(r) if r.is_flat() => {}
                Ok(_) | Err(Error::SizeLimitExceeded { .. }) => return Ok(None),
                Err(e) => return Err(e),
            }
            let targets = pullback_targets(&s, corpus, opts, i as u64)?;
            Ok(Some((name, s, targets)))
        })
        .collect();
    let mut all = Vec::new();
    for r in out {
        if let Some(x) = r? {
            all.push(x);
        }
    }
    Ok(all)
}

fn ab_conditional_flatness(l: &AbLocalizer, opts: &ScanOptions, report: &mut ScanReport) -> Result<()> {
    let family = ab_family();
    for (tname, t) in &family {
        let mut gens: Vec<Element> = Vec::new();
        for v in enumerate_ab_homs_boxed(&FgAbGroup::free(1), t, opts.ab_bound, &opts.limits)? {
            let x = v.columns()[0].clone();
            if !gens.contains(&x) {
                gens.push(x);
            }
        }
        for v in gens {
            let s: XAbSes = XAbSes::from_generators(t, &[v.clone()])?;
            if !xab_flat_check(l, &s, &opts.limits)?.flat {
                continue;
            }
            for (qname, q2) in &family {
                let homs = match ab_homs(q2, s.quotient(), opts) {
                    Ok(h) => h,
                    Err(e) => {
                        report.skip(e)?;
                        continue;
                    }
                };
                for g in homs {
                    let label = format!("ab <{v:?}> in {tname} pulled back from {qname} along {:?}", g.columns());
                    let outcome = s.pullback(&g).and_then(|p| Ok(xab_flat_check(l, &p.ses, &opts.limits)?.flat));
                    report.record(label, outcome);
                }
            }
        }
    }
    Ok(())
}

/// Side (1): pullbacks of `L`-flat sequences stay `L`-flat.
pub fn conditional_flatness_scan(l: &Localizer, corpus: &[Entry], opts: &ScanOptions) -> Result<ScanReport> {
    let mut report = ScanReport::new(&l.to_string(), "conditional flatness");
    let samples = conditional_flatness_samples(l, corpus, opts)?;
    let checks: Vec<(String, Result<bool>)> = samples
        .par_iter()
        .flat_map_iter(|(name, s, targets)| {
            targets.iter().map(move |(src, g)| {
                let label = format!("{name} pulled back from {src}");
                (label, pullback_ses(s, g).and_then(|p| Ok(apply_to_ses(l, &p.ses, &opts.limits)?.is_flat())))
            })
        })
        .collect();
    for (label, r) in checks {
        report.record(label, r);
    }
    if let Ok(al) = AbLocalizer::realize(l, &opts.limits) {
        ab_conditional_flatness(&al, opts, &mut report)?;
    }
    Ok(report)
}

/// Every `(H₁, H₂)` with `H₂ ≤ T₂`, `H₁ ≤ T₁`, `∂H₁ ⊆ H₂` and `H₁` stable
/// under `H₂`.
pub fn all_subcrossed_modules(t: &Arc<CrossedModule>) -> Vec<SubCrossedModule> {
    let lower = all_subgroups(t.bottom());
    let mut out = Vec::new();
    for h2 in all_subgroups(t.top()) {
        for h1 in &lower {
            let closed = h1.members().iter().all(|&x| h2.contains(t.d(x)));
            let stable = closed && h2.members().iter().all(|&b| h1.members().iter().all(|&x| h1.contains(t.act(b, x))));
            if stable {
                out.push(SubCrossedModule::new(t.clone(), h1.clone(), h2.clone()).expect("checked above"));
            }
        }
    }
    out
}

/// Whether the local objects of the corpus are closed under subobjects and
/// quotients. Returns the first counterexample found.
pub fn birkhoff_check(l: &Localizer, corpus: &[Entry], limits: &Limits) -> Result<Option<String>> {
    let results: Vec<Result<Option<String>>> = corpus
        .par_iter()
        .map(|e| {
            if !l.is_local(&e.object, limits)? {
                return Ok(None);
            }
            for (i, s) in all_subcrossed_modules(&e.object).iter().enumerate() {
                let (sub, _) = s.to_xmod();
                if !l.is_local(&sub, limits)? {
                    return Ok(Some(format!("subobject #{i} of {} ({} -> {}) is not local", e.name, s.n1().order(), s.n2().order())));
                }
            }
            for (i, n) in all_normal_subs(&e.object).iter().enumerate() {
                let q = xquotient(n)?.object;
                if !l.is_local(&q, limits)? {
                    return Ok(Some(format!("quotient #{i} of {} is not local", e.name)));
                }
            }
            Ok(None)
        })
        .collect();
    for r in results {
        if let Some(w) = r? {
            return Ok(Some(w));
        }
    }
    Ok(None)
}
