//! The JSON corpus format.
//!
//! ```json
//! {
//!   "groups":     { "D4": "dihedral:4", "K": { "table": [[0, 1], [1, 0]] },
//!                   "ZC2": { "fgab": { "rank": 1, "invariants": [2] } } },
//!   "xmods":      { "XS3": { "x": "symmetric:3" },
//!                   "C4<D4": { "inclusion": "D4", "generators": [1] },
//!                   "C3~C2": { "bottom": "cyclic:3", "top": "cyclic:2",
//!                              "boundary": "trivial", "action": [[0, 1, 2], [0, 2, 1]] } },
//!   "morphisms":  { "Xphi": { "src": "XC4", "dst": "XC2", "f1": "trivial", "f2": [0, 1, 0, 1] } },
//!   "sequences":  { "rot": { "normal": "C4<D4", "n1": [2], "n2": [2] },
//!                   "row": { "kappa": "k", "alpha": "a" } },
//!   "localizers": { "P2": "nullify:XC2", "Lphi": "lf:Xphi", "ab": "ab" },
//!   "ab_homs":    { "phi": { "src": "C4ab", "dst": "C2ab", "matrix": [[1]] } }
//! }
//! ```
//!
//! Group references are either names from `groups` or builder strings:
//! `trivial`, `cyclic:n`, `dihedral:n`, `symmetric:n`, `alternating:n`,
//! `quaternion`, `product:<builder>,<builder>`. Maps are full element maps
//! or `"trivial"` / `"identity"`; actions are `[actor][space]` tables or
//! `"trivial"` / `"conjugation"`.

use std::collections::BTreeMap;
use std::path::Path;
use std::sync::Arc;

use serde::{Deserialize, Serialize};
use thiserror::Error;
use xmodlab_core::catalogue::{self, Entry};
use xmodlab_core::fgab::{to_finite_group, AbHom, FgAbGroup};
use xmodlab_core::group::{named_group, FiniteGroup, GroupAction, GroupHom, GroupSpec, Subgroup};
use xmodlab_core::localize::Localizer;
use xmodlab_core::xmod::{all_normal_subs, make_ses, make_xmod, CrossedModule, ShortExactSequence, SubCrossedModule, XModMorphism};
use xmodlab_core::{Error, Limits};

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {message}")]
    Io { path: String, message: String },
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse { line: usize, column: usize, message: String },
    #[error("{section}.{name}: {message}")]
    Spec { section: &'static str, name: String, message: String },
    #[error("{section}.{name}: {source}")]
    Validation { section: &'static str, name: String, source: Error },
    #[error("{section}.{name}: unknown reference `{reference}`")]
    Unknown { section: &'static str, name: String, reference: String },
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CorpusFile {
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub groups: BTreeMap<String, GroupDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub xmods: BTreeMap<String, XModDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub sequences: BTreeMap<String, SequenceDef>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub localizers: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub ab_homs: BTreeMap<String, AbHomDef>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupDef {
    Builder(String),
    Table { table: Vec<Vec<usize>> },
    Fgab { fgab: FgAbSpec },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FgAbSpec {
    #[serde(default)]
    pub rank: usize,
    #[serde(default)]
    pub invariants: Vec<i64>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum MapDef {
    Named(String),
    Images(Vec<usize>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ActionDef {
    Named(String),
    Table(Vec<Vec<usize>>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum XModDef {
    X { x: String },
    R { r: String },
    Inclusion { inclusion: String, generators: Vec<usize> },
    General { bottom: String, top: String, boundary: MapDef, action: ActionDef },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismDef {
    pub src: String,
    pub dst: String,
    pub f1: MapDef,
    pub f2: MapDef,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SequenceDef {
    Maps { kappa: String, alpha: String },
    Normal { normal: String, n1: Vec<usize>, n2: Vec<usize> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AbHomDef {
    pub src: String,
    pub dst: String,
    /// `dst.ngens() × src.ngens()`.
    pub matrix: Vec<Vec<i64>>,
}

/// A validated corpus.
#[derive(Clone, Debug, Default)]
pub struct Corpus {
    pub groups: BTreeMap<String, Arc<FiniteGroup>>,
    pub ab_groups: BTreeMap<String, FgAbGroup>,
    pub xmods: BTreeMap<String, Arc<CrossedModule>>,
    pub morphisms: BTreeMap<String, XModMorphism>,
    pub sequences: BTreeMap<String, ShortExactSequence>,
    pub localizers: BTreeMap<String, (String, Localizer)>,
    pub ab_homs: BTreeMap<String, AbHom>,
}

fn spec_err(section: &'static str, name: &str, message: impl Into<String>) -> CorpusError {
    CorpusError::Spec { section, name: name.to_string(), message: message.into() }
}

fn invalid<'a>(section: &'static str, name: &'a str) -> impl Fn(Error) -> CorpusError + 'a {
    move |source| CorpusError::Validation { section, name: name.to_string(), source }
}

fn unknown(section: &'static str, name: &str, reference: &str) -> CorpusError {
    CorpusError::Unknown { section, name: name.to_string(), reference: reference.to_string() }
}

/// Parses a builder string such as `dihedral:4` or `product:cyclic:2,cyclic:2`.
pub fn parse_builder(s: &str) -> Option<GroupSpec> {
    let s = s.trim();
    if let Some(rest) = s.strip_prefix("product:") {
        let (a, b) = rest.split_once(',')?;
        return Some(GroupSpec::product(parse_builder(a)?, parse_builder(b)?));
    }
    match s {
        "trivial" => return Some(GroupSpec::Cyclic(1)),
        "quaternion" => return Some(GroupSpec::Quaternion),
        _ => {}
    }
    let (kind, n) = s.split_once(':')?;
    let n: usize = n.parse().ok()?;
    match kind {
        "cyclic" => Some(GroupSpec::Cyclic(n)),
        "dihedral" => Some(GroupSpec::Dihedral(n)),
        "symmetric" => Some(GroupSpec::Symmetric(n)),
        "alternating" => Some(GroupSpec::Alternating(n)),
        _ => None,
    }
}

/// Parses `ab`, `i`, `pxz`, `nullify:<xmod>` or `lf:<morphism>`.
pub fn parse_localizer(spec: &str, corpus: &Corpus) -> Result<Localizer, String> {
    match spec {
        "ab" => return Ok(Localizer::Ab),
        "i" => return Ok(Localizer::I),
        "pxz" => return Ok(Localizer::Pxz),
        _ => {}
    }
    if let Some(a) = spec.strip_prefix("nullify:") {
        let obj = corpus.xmod(a).ok_or_else(|| format!("unknown crossed module `{a}`"))?;
        return Ok(Localizer::nullification(a, obj));
    }
    if let Some(f) = spec.strip_prefix("lf:") {
        let m = corpus.morphisms.get(f).ok_or_else(|| format!("unknown morphism `{f}`"))?;
        return Localizer::lf(f, m.clone()).map_err(|e| e.to_string());
    }
    Err(format!("`{spec}` is not a localizer (expected ab, i, pxz, nullify:<xmod> or lf:<morphism>)"))
}

impl Corpus {
    pub fn from_json(text: &str, limits: &Limits) -> Result<Corpus, CorpusError> {
        let file: CorpusFile = serde_json::from_str(text)
            .map_err(|e| CorpusError::Parse { line: e.line(), column: e.column(), message: e.to_string() })?;
        Corpus::from_file(&file, limits)
    }

    pub fn load(path: &Path, limits: &Limits) -> Result<Corpus, CorpusError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CorpusError::Io { path: path.display().to_string(), message: e.to_string() })?;
        Corpus::from_json(&text, limits)
    }

    /// The built-in catalogue, with `Xphi` and the standard localizers.
    pub fn builtin() -> Corpus {
        let mut c = Corpus::default();
        for e in catalogue::standard() {
            c.xmods.insert(e.name, e.object);
        }
        let phi = catalogue::reduction_c4_c2();
        c.groups.insert("C4".into(), phi.src().clone());
        c.groups.insert("C2".into(), phi.dst().clone());
        c.morphisms.insert("Xphi".into(), XModMorphism::functor_x(&phi));
        for spec in ["ab", "i", "pxz", "nullify:XC2", "lf:Xphi"] {
            let l = parse_localizer(spec, &c).expect("built-in localizers resolve");
            c.localizers.insert(spec.to_string(), (spec.to_string(), l));
        }
        c
    }

    pub fn from_file(file: &CorpusFile, limits: &Limits) -> Result<Corpus, CorpusError> {
        let mut c = Corpus::default();
        for (name, def) in &file.groups {
            match def {
                GroupDef::Builder(s) => {
                    let spec = parse_builder(s).ok_or_else(|| spec_err("groups", name, format!("unknown builder `{s}`")))?;
                    c.groups.insert(name.clone(), named_group(&spec, limits).map_err(invalid("groups", name))?);
                }
                GroupDef::Table { table } => {
                    c.groups.insert(name.clone(), FiniteGroup::from_table(table).map_err(invalid("groups", name))?);
                }
                GroupDef::Fgab { fgab } => {
                    let g = FgAbGroup::new(fgab.rank, fgab.invariants.clone()).map_err(invalid("groups", name))?;
                    if g.is_finite() {
                        let (table, _) = to_finite_group(&g).map_err(invalid("groups", name))?;
                        c.groups.insert(name.clone(), table);
                    }
                    c.ab_groups.insert(name.clone(), g);
                }
            }
        }
        for (name, def) in &file.xmods {
            let t = c.build_xmod(name, def, limits)?;
            c.xmods.insert(name.clone(), t);
        }
        for (name, def) in &file.morphisms {
            let src = c.xmod(&def.src).ok_or_else(|| unknown("morphisms", name, &def.src))?;
            let dst = c.xmod(&def.dst).ok_or_else(|| unknown("morphisms", name, &def.dst))?;
            let f1 = build_map("morphisms", name, src.bottom(), dst.bottom(), &def.f1)?;
            let f2 = build_map("morphisms", name, src.top(), dst.top(), &def.f2)?;
            let m = XModMorphism::new(src, dst, f1, f2).map_err(invalid("morphisms", name))?;
            c.morphisms.insert(name.clone(), m);
        }
        for (name, def) in &file.sequences {
            let s = match def {
                SequenceDef::Maps { kappa, alpha } => {
                    let k = c.morphisms.get(kappa).ok_or_else(|| unknown("sequences", name, kappa))?;
                    let a = c.morphisms.get(alpha).ok_or_else(|| unknown("sequences", name, alpha))?;
                    make_ses(k.clone(), a.clone()).map_err(invalid("sequences", name))?
                }
                SequenceDef::Normal { normal, n1, n2 } => {
                    let t = c.xmod(normal).ok_or_else(|| unknown("sequences", name, normal))?;
                    for (&x, order) in n1.iter().map(|x| (x, t.bottom().order())).chain(n2.iter().map(|x| (x, t.top().order()))) {
                        if x >= order {
                            return Err(spec_err("sequences", name, format!("element {x} is out of range")));
                        }
                    }
                    let sub = SubCrossedModule::new(t.clone(), Subgroup::generated(t.bottom(), n1), Subgroup::generated(t.top(), n2))
                        .map_err(invalid("sequences", name))?;
                    if let Some(v) = sub.violation() {
                        return Err(spec_err("sequences", name, format!("not a normal subcrossed module: {v}")));
                    }
                    ShortExactSequence::from_normal(&sub).map_err(invalid("sequences", name))?
                }
            };
            c.sequences.insert(name.clone(), s);
        }
        for (name, def) in &file.ab_homs {
            let src = c.ab_groups.get(&def.src).ok_or_else(|| unknown("ab_homs", name, &def.src))?;
            let dst = c.ab_groups.get(&def.dst).ok_or_else(|| unknown("ab_homs", name, &def.dst))?;
            let h = AbHom::from_matrix(src.clone(), dst.clone(), &def.matrix).map_err(invalid("ab_homs", name))?;
            c.ab_homs.insert(name.clone(), h);
        }
        for (name, spec) in &file.localizers {
            let l = parse_localizer(spec, &c).map_err(|m| spec_err("localizers", name, m))?;
            c.localizers.insert(name.clone(), (spec.clone(), l));
        }
        Ok(c)
    }

    fn group_ref(&self, section: &'static str, name: &str, r: &str, limits: &Limits) -> Result<Arc<FiniteGroup>, CorpusError> {
        if let Some(g) = self.groups.get(r) {
            return Ok(g.clone());
        }
        let spec = parse_builder(r).ok_or_else(|| unknown(section, name, r))?;
        named_group(&spec, limits).map_err(invalid(section, name))
    }

    fn build_xmod(&self, name: &str, def: &XModDef, limits: &Limits) -> Result<Arc<CrossedModule>, CorpusError> {
        const S: &str = "xmods";
        match def {
            XModDef::X { x } => Ok(xmodlab_core::xmod::functor_x(&self.group_ref(S, name, x, limits)?)),
            XModDef::R { r } => Ok(xmodlab_core::xmod::functor_r(&self.group_ref(S, name, r, limits)?)),
            XModDef::Inclusion { inclusion, generators } => {
                let g = self.group_ref(S, name, inclusion, limits)?;
                if let Some(&x) = generators.iter().find(|&&x| x >= g.order()) {
                    return Err(spec_err(S, name, format!("element {x} is out of range")));
                }
                let n = Subgroup::generated(&g, generators);
                CrossedModule::normal_inclusion(&g, &n).map_err(invalid(S, name))
            }
            XModDef::General { bottom, top, boundary, action } => {
                let b = self.group_ref(S, name, bottom, limits)?;
                let t = self.group_ref(S, name, top, limits)?;
                let d = build_map(S, name, &b, &t, boundary)?;
                let act = match action {
                    ActionDef::Named(s) if s == "trivial" => GroupAction::trivial(&t, &b),
                    ActionDef::Named(s) if s == "conjugation" => {
                        if b != t {
                            return Err(spec_err(S, name, "conjugation needs equal bottom and top groups"));
                        }
                        GroupAction::conjugation(&t)
                    }
                    ActionDef::Named(s) => return Err(spec_err(S, name, format!("unknown action `{s}`"))),
                    ActionDef::Table(rows) => GroupAction::new(t.clone(), b.clone(), rows).map_err(invalid(S, name))?,
                };
                make_xmod(d, act).map_err(invalid(S, name))
            }
        }
    }

    pub fn xmod(&self, name: &str) -> Option<Arc<CrossedModule>> {
        self.xmods.get(name).cloned()
    }

    /// A named sequence, or `<xmod>/N<i>` for the `i`-th normal subcrossed
    /// module of a corpus object.
    pub fn sequence(&self, name: &str) -> Result<ShortExactSequence, String> {
        if let Some(s) = self.sequences.get(name) {
            return Ok(s.clone());
        }
        let (obj, idx) = name.rsplit_once("/N").ok_or_else(|| format!("unknown sequence `{name}`"))?;
        let t = self.xmod(obj).ok_or_else(|| format!("unknown crossed module `{obj}`"))?;
        let i: usize = idx.parse().map_err(|_| format!("bad subobject index in `{name}`"))?;
        let subs = all_normal_subs(&t);
        let n = subs.get(i).ok_or_else(|| format!("`{obj}` has only {} normal subcrossed modules", subs.len()))?;
        ShortExactSequence::from_normal(n).map_err(|e| e.to_string())
    }

    pub fn localizer(&self, spec: &str) -> Result<Localizer, String> {
        match self.localizers.get(spec) {
            Some((_, l)) => Ok(l.clone()),
            None => parse_localizer(spec, self),
        }
    }

    /// Crossed modules in name order, as scan input.
    pub fn entries(&self) -> Vec<Entry> {
        self.xmods.iter().map(|(n, o)| Entry { name: n.clone(), object: o.clone() }).collect()
    }

    /// Canonical form: explicit tables and maps throughout. Objects belonging
    /// only to sequences get names of the form `<sequence>/N|T|Q`.
    pub fn to_file(&self) -> CorpusFile {
        let mut f = CorpusFile::default();
        for (name, g) in &self.groups {
            if !self.ab_groups.contains_key(name) {
                f.groups.insert(name.clone(), GroupDef::Table { table: g.table_rows() });
            }
        }
        for (name, g) in &self.ab_groups {
            f.groups.insert(name.clone(), GroupDef::Fgab { fgab: FgAbSpec { rank: g.rank(), invariants: g.invariants().to_vec() } });
        }
        let put_xmod = |f: &mut CorpusFile, name: &str, t: &CrossedModule| {
            let (bn, tn) = (format!("{name}/1"), format!("{name}/2"));
            f.groups.insert(bn.clone(), GroupDef::Table { table: t.bottom().table_rows() });
            f.groups.insert(tn.clone(), GroupDef::Table { table: t.top().table_rows() });
            f.xmods.insert(
                name.to_string(),
                XModDef::General {
                    bottom: bn,
                    top: tn,
                    boundary: MapDef::Images(t.boundary().map()),
                    action: ActionDef::Table(t.action().rows()),
                },
            );
        };
        for (name, t) in &self.xmods {
            put_xmod(&mut f, name, t);
        }
        let name_of = |f: &CorpusFile, t: &Arc<CrossedModule>| -> Option<String> {
            self.xmods.iter().find(|(n, o)| ***o == **t && f.xmods.contains_key(*n)).map(|(n, _)| n.clone())
        };
        let put_morphism = |f: &mut CorpusFile, name: &str, m: &XModMorphism, src: String, dst: String| {
            f.morphisms.insert(
                name.to_string(),
                MorphismDef { src, dst, f1: MapDef::Images(m.f1().map()), f2: MapDef::Images(m.f2().map()) },
            );
        };
        for (name, m) in &self.morphisms {
            let src = name_of(&f, m.src()).unwrap_or_else(|| format!("{name}/src"));
            let dst = name_of(&f, m.dst()).unwrap_or_else(|| format!("{name}/dst"));
            if !f.xmods.contains_key(&src) {
                put_xmod(&mut f, &src, m.src());
            }
            if !f.xmods.contains_key(&dst) {
                put_xmod(&mut f, &dst, m.dst());
            }
            put_morphism(&mut f, name, m, src, dst);
        }
        for (name, s) in &self.sequences {
            let names = [format!("{name}/N"), format!("{name}/T"), format!("{name}/Q")];
            for (n, t) in names.iter().zip([s.kernel(), s.middle(), s.quotient()]) {
                put_xmod(&mut f, n, t);
            }
            let (k, a) = (format!("{name}/kappa"), format!("{name}/alpha"));
            put_morphism(&mut f, &k, &s.kappa, names[0].clone(), names[1].clone());
            put_morphism(&mut f, &a, &s.alpha, names[1].clone(), names[2].clone());
            f.sequences.insert(name.clone(), SequenceDef::Maps { kappa: k, alpha: a });
        }
        for (name, h) in &self.ab_homs {
            let find = |g: &FgAbGroup| self.ab_groups.iter().find(|(_, x)| *x == g).map(|(n, _)| n.clone());
            if let (Some(src), Some(dst)) = (find(h.src()), find(h.dst())) {
                f.ab_homs.insert(name.clone(), AbHomDef { src, dst, matrix: h.matrix() });
            }
        }
        for (name, (spec, _)) in &self.localizers {
            f.localizers.insert(name.clone(), spec.clone());
        }
        f
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("corpus files serialize")
    }
}

fn build_map(
    section: &'static str,
    name: &str,
    src: &Arc<FiniteGroup>,
    dst: &Arc<FiniteGroup>,
    def: &MapDef,
) -> Result<GroupHom, CorpusError> {
    match def {
        MapDef::Named(s) if s == "trivial" => Ok(GroupHom::trivial(src, dst)),
        MapDef::Named(s) if s == "identity" => {
            if src != dst {
                return Err(spec_err(section, name, "identity needs equal groups"));
            }
            Ok(GroupHom::identity(src))
        }
        MapDef::Named(s) => Err(spec_err(section, name, format!("unknown map `{s}`"))),
        MapDef::Images(v) => GroupHom::new(src.clone(), dst.clone(), v.clone()).map_err(invalid(section, name)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builders() {
        assert_eq!(parse_builder("dihedral:4"), Some(GroupSpec::Dihedral(4)));
        assert_eq!(parse_builder(" trivial "), Some(GroupSpec::Cyclic(1)));
        assert_eq!(
            parse_builder("product:cyclic:2,cyclic:3"),
            Some(GroupSpec::product(GroupSpec::Cyclic(2), GroupSpec::Cyclic(3)))
        );
        assert_eq!(parse_builder("cyclic:"), None);
        assert_eq!(parse_builder("free:2"), None);
    }

    #[test]
    fn localizer_specs() {
        let c = Corpus::builtin();
        assert!(matches!(parse_localizer("ab", &c), Ok(Localizer::Ab)));
        assert!(parse_localizer("nullify:XC2", &c).is_ok());
        assert!(parse_localizer("nullify:XC7", &c).unwrap_err().contains("XC7"));
        assert!(parse_localizer("lf:Xphi", &c).is_ok());
        assert!(parse_localizer("bogus", &c).is_err());
    }

    #[test]
    fn builtin_contents() {
        let c = Corpus::builtin();
        assert_eq!(c.xmods.len(), catalogue::standard().len());
        assert_eq!(c.localizers.len(), 5);
        assert!(c.sequence("XD4/N0").is_ok());
        assert!(c.sequence("XD4").is_err());
    }

    #[test]
    fn explicit_definitions() {
        let text = r#"{
            "groups": { "K": { "table": [[0, 1], [1, 0]] } },
            "xmods": {
                "RK": { "bottom": "K", "top": "K", "boundary": "identity", "action": "conjugation" },
                "XK": { "x": "K" }
            },
            "morphisms": { "d": { "src": "XK", "dst": "RK", "f1": "trivial", "f2": "identity" } }
        }"#;
        let c = Corpus::from_json(text, &Limits::default()).unwrap();
        assert!(c.xmods["RK"].boundary().is_bijective());
        assert!(!c.morphisms["d"].is_regular_epi());
        let round = Corpus::from_json(&c.to_json(), &Limits::default()).unwrap();
        assert_eq!(round.to_json(), c.to_json());
    }
}
