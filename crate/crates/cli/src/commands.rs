//! Subcommand implementations. Each returns an [`Outcome`] carrying the
//! text report, the machine summary and the exit code.

use std::fmt::Write as _;

use serde_json::{json, Value};
use xmodlab_core::fgab::AbHom;
use xmodlab_core::flat::{
    admissibility_scan, apply_to_ses, conditional_flatness_scan, counterexample_demo, counterexample_pipeline, fiberwise_localize,
    fiberwise_witness, CounterexampleReport, FlatFailure, ScanOptions, ScanReport,
};
use xmodlab_core::localize::nullify;
use xmodlab_core::xmod::{xkernel, CrossedModule};
use xmodlab_core::{Error, Limits};

use crate::corpus::Corpus;
use crate::describe::xmod_name;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
}

#[derive(Debug)]
pub struct Outcome {
    pub command: &'static str,
    pub status: Status,
    pub text: String,
    pub result: Value,
}

impl Outcome {
    pub fn exit_code(&self) -> i32 {
        match self.status {
            Status::Pass => 0,
            Status::Fail => 1,
        }
    }

    pub fn summary(&self) -> Value {
        json!({
            "command": self.command,
            "status": match self.status { Status::Pass => "pass", Status::Fail => "fail" },
            "exit_code": self.exit_code(),
            "result": self.result,
        })
    }
}

/// A usage or validation problem; exit code 2.
#[derive(Debug)]
pub struct CommandError {
    pub command: &'static str,
    pub message: String,
}

impl CommandError {
    pub fn summary(&self) -> Value {
        json!({ "command": self.command, "status": "error", "exit_code": 2, "error": self.message })
    }
}

impl std::fmt::Display for CommandError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}: {}", self.command, self.message)
    }
}

type CmdResult = Result<Outcome, CommandError>;

fn err(command: &'static str) -> impl Fn(String) -> CommandError {
    move |message| CommandError { command, message }
}

fn core_err(command: &'static str) -> impl Fn(Error) -> CommandError {
    move |e| CommandError { command, message: e.to_string() }
}

fn outcome(command: &'static str, pass: bool, text: String, result: Value) -> Outcome {
    Outcome { command, status: if pass { Status::Pass } else { Status::Fail }, text, result }
}

fn orders(t: &CrossedModule) -> [usize; 2] {
    [t.bottom().order(), t.top().order()]
}

fn object_json(t: &CrossedModule) -> Value {
    json!({ "name": xmod_name(t), "orders": orders(t) })
}

pub fn validate(corpus: &Corpus) -> CmdResult {
    let text = format!(
        "ok: {} groups, {} crossed modules, {} morphisms, {} sequences, {} localizers, {} abelian homomorphisms\n",
        corpus.groups.len(),
        corpus.xmods.len(),
        corpus.morphisms.len(),
        corpus.sequences.len(),
        corpus.localizers.len(),
        corpus.ab_homs.len()
    );
    let result = json!({
        "groups": corpus.groups.keys().collect::<Vec<_>>(),
        "xmods": corpus.xmods.keys().collect::<Vec<_>>(),
        "morphisms": corpus.morphisms.keys().collect::<Vec<_>>(),
        "sequences": corpus.sequences.keys().collect::<Vec<_>>(),
        "localizers": corpus.localizers.keys().collect::<Vec<_>>(),
        "ab_homs": corpus.ab_homs.keys().collect::<Vec<_>>(),
    });
    Ok(outcome("validate", true, text, result))
}

pub fn localize(corpus: &Corpus, object: &str, localizer: &str, limits: &Limits) -> CmdResult {
    const C: &str = "localize";
    let t = corpus.xmod(object).ok_or_else(|| err(C)(format!("unknown crossed module `{object}`")))?;
    let l = corpus.localizer(localizer).map_err(err(C))?;
    let r = l.localize(&t, limits).map_err(core_err(C))?;
    let k = xkernel(&r.coaugmentation);
    let mut text = format!("{l}({object}) = {}\n", xmod_name(&r.local));
    let _ = writeln!(text, "  orders {:?} -> {:?}", orders(&t), orders(&r.local));
    let _ = writeln!(text, "  kernel of the coaugmentation has orders [{}, {}]", k.n1().order(), k.n2().order());
    if !r.trace.is_empty() {
        let _ = writeln!(text, "  {} stage(s)", r.trace.len());
    }
    let result = json!({
        "object": object,
        "localizer": l.to_string(),
        "source": object_json(&t),
        "local": object_json(&r.local),
        "kernel_orders": [k.n1().order(), k.n2().order()],
        "stages": r.trace.len(),
    });
    Ok(outcome(C, true, text, result))
}

pub fn nullify_cmd(corpus: &Corpus, object: &str, a: &str, limits: &Limits) -> CmdResult {
    const C: &str = "nullify";
    let t = corpus.xmod(object).ok_or_else(|| err(C)(format!("unknown crossed module `{object}`")))?;
    let av = corpus.xmod(a).ok_or_else(|| err(C)(format!("unknown crossed module `{a}`")))?;
    let r = nullify(&av, &t, limits).map_err(core_err(C))?;
    let trivial = r.local.is_trivial();
    let mut text = format!("P_{a}({object}) = {}", xmod_name(&r.local));
    text.push_str(if trivial { " (trivial)\n" } else { "\n" });
    let _ = writeln!(text, "  {} stage(s)", r.trace.len());
    for (i, step) in r.trace.iter().enumerate() {
        let _ = writeln!(text, "  stage {}: {:?} -> {:?}", i + 1, orders(step.src()), orders(step.dst()));
    }
    let result = json!({
        "object": object,
        "a": a,
        "local": object_json(&r.local),
        "trivial": trivial,
        "stages": r.trace.len(),
    });
    Ok(outcome(C, true, text, result))
}

fn failure_text(f: &FlatFailure) -> String {
    let mut s = format!("{}: {} (witness {})", f.level, f.stage, f.witness);
    if let Some(i) = f.index {
        let _ = write!(s, ", index {i}");
    }
    s
}

pub fn flat_check(corpus: &Corpus, sequence: &str, localizer: &str, limits: &Limits) -> CmdResult {
    const C: &str = "flat-check";
    let s = corpus.sequence(sequence).map_err(err(C))?;
    let l = corpus.localizer(localizer).map_err(err(C))?;
    let r = apply_to_ses(&l, &s, limits).map_err(core_err(C))?;
    let mut text = format!(
        "{l} applied to {sequence}: {} -> {} -> {}\n",
        xmod_name(&r.kernel.local),
        xmod_name(&r.middle.local),
        xmod_name(&r.quotient.local)
    );
    match &r.failure {
        None => text.push_str("FLAT\n"),
        Some(f) => {
            let _ = writeln!(text, "NOT FLAT at {}", failure_text(f));
        }
    }
    let result = json!({
        "sequence": sequence,
        "localizer": l.to_string(),
        "localized": [object_json(&r.kernel.local), object_json(&r.middle.local), object_json(&r.quotient.local)],
        "flat": r.is_flat(),
        "failure": r.failure,
    });
    Ok(outcome(C, r.is_flat(), text, result))
}

pub fn fiberwise(corpus: &Corpus, sequence: &str, localizer: &str, limits: &Limits) -> CmdResult {
    const C: &str = "fiberwise";
    let s = corpus.sequence(sequence).map_err(err(C))?;
    let l = corpus.localizer(localizer).map_err(err(C))?;
    match fiberwise_witness(&l, &s, limits).map_err(core_err(C))? {
        Some((x2, t1)) => {
            let text = format!("fiberwise condition fails for {l} on {sequence}: x2 = {x2}, t1 = {t1}\n");
            let result = json!({ "sequence": sequence, "localizer": l.to_string(), "condition": false, "witness": [x2, t1] });
            Ok(outcome(C, false, text, result))
        }
        None => {
            let f = fiberwise_localize(&l, &s, limits).map_err(core_err(C))?;
            let mut text = format!("fiberwise condition holds for {l} on {sequence}\n");
            let _ = writeln!(
                text,
                "  localized row: {} -> {} -> {}",
                xmod_name(f.ses.kernel()),
                xmod_name(f.ses.middle()),
                xmod_name(f.ses.quotient())
            );
            let _ = writeln!(text, "  comparison T -> E is an equivalence for {l}: {}", f.comparison_is_equivalence);
            let result = json!({
                "sequence": sequence,
                "localizer": l.to_string(),
                "condition": true,
                "row": [object_json(f.ses.kernel()), object_json(f.ses.middle()), object_json(f.ses.quotient())],
                "comparison_is_equivalence": f.comparison_is_equivalence,
            });
            Ok(outcome(C, f.comparison_is_equivalence, text, result))
        }
    }
}

fn scan_line(r: &ScanReport) -> String {
    format!(
        "  {:<20} checked {:>5}  passed {:>5}  failed {:>4}  skipped {:>3}  inconsistent {}",
        r.side, r.checked, r.passed, r.failed, r.skipped, r.inconsistent
    )
}

pub fn admissibility(corpus: &Corpus, localizer: &str, opts: &ScanOptions) -> CmdResult {
    const C: &str = "admissibility-scan";
    let l = corpus.localizer(localizer).map_err(err(C))?;
    if !l.is_regular_epi_kind() {
        return Err(err(C)(format!("{l} is not a regular-epi localizer")));
    }
    let entries = corpus.entries();
    let a = admissibility_scan(&l, &entries, opts).map_err(core_err(C))?;
    let c = conditional_flatness_scan(&l, &entries, opts).map_err(core_err(C))?;
    let agree = a.passes() == c.passes();
    let verdict = |b: bool| if b { "pass" } else { "fail" };
    let mut text = format!("{l} on {} crossed modules (seed {})\n", entries.len(), opts.seed);
    let _ = writeln!(text, "{}", scan_line(&a));
    let _ = writeln!(text, "{}", scan_line(&c));
    for f in a.failures.iter().chain(&c.failures).take(5) {
        let _ = writeln!(text, "  failure: {f}");
    }
    let _ = writeln!(
        text,
        "admissibility {}, conditional flatness {}, verdicts {}",
        verdict(a.passes()),
        verdict(c.passes()),
        if agree { "agree" } else { "DISAGREE" }
    );
    let result = json!({ "localizer": l.to_string(), "admissibility": a, "conditional_flatness": c, "agree": agree });
    Ok(outcome(C, a.passes() && c.passes(), text, result))
}

pub fn counterexample(corpus: &Corpus, phi: Option<&str>, along: Option<&str>, limits: &Limits) -> CmdResult {
    const C: &str = "counterexample";
    let lookup = |n: &str| -> Result<AbHom, CommandError> {
        corpus.ab_homs.get(n).cloned().ok_or_else(|| err(C)(format!("unknown abelian homomorphism `{n}`")))
    };
    let r: CounterexampleReport = match (phi, along) {
        (None, None) => counterexample_demo(limits).map_err(core_err(C))?,
        (Some(p), g) => {
            let p = lookup(p)?;
            let g = match g {
                Some(g) => lookup(g)?,
                None => p.clone(),
            };
            counterexample_pipeline(&p, &g, limits).map_err(core_err(C))?
        }
        (None, Some(_)) => return Err(err(C)("--along needs --phi".into())),
    };
    let [ln, lt, lq] = &r.localized;
    let mut text = String::from("X Z --2--> X Z --> X C2, pulled back and localized\n");
    let _ = writeln!(text, "  middle object: (1, {})", r.middle);
    let _ = writeln!(text, "  localized row: ({ln}, {lt}, {lq})");
    let _ = writeln!(text, "  L(kappa) injective: {}", r.kernel_map_injective);
    let _ = writeln!(text, "  L(alpha) surjective: {}", r.quotient_map_surjective);
    match r.index {
        Some(i) => {
            let _ = writeln!(text, "  [ker L(alpha) : im L(kappa)] = {i}");
        }
        None => text.push_str("  [ker L(alpha) : im L(kappa)] is infinite\n"),
    }
    let _ = writeln!(text, "{}", r.verdict());
    let result = serde_json::to_value(&r).expect("reports serialize");
    Ok(outcome(C, r.flat, text, result))
}

pub fn export(corpus: &Corpus) -> CmdResult {
    let text = corpus.to_json() + "\n";
    let result = serde_json::to_value(corpus.to_file()).expect("corpus files serialize");
    Ok(outcome("export", true, text, result))
}

/// Localizer names accepted on the command line, for help text.
pub fn localizer_help() -> &'static str {
    "ab, i, pxz, nullify:<xmod>, lf:<morphism>, or a name from the corpus `localizers` section"
}
