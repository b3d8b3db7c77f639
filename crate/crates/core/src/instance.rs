//! JSON instance files: named soft sets, topologies and soft functions over
//! a labelled universe.

use std::collections::BTreeMap;
use std::fmt;
use std::marker::PhantomData;
use std::sync::Arc;

use serde::de::{self, Deserializer, MapAccess, Visitor};
use serde::{Deserialize, Serialize};

use crate::context::Context;
use crate::map::SoftFunction;
use crate::soft_set::SoftSet;
use crate::topology::{Flavor, SoftTopology};

pub const NULL_NAME: &str = "PHI";
pub const ABSOLUTE_NAME: &str = "FULL";

/// Fibers by parameter label.
pub type FiberMap = BTreeMap<String, Vec<String>>;
/// Point maps by parameter label.
pub type FunctionTable = BTreeMap<String, BTreeMap<String, String>>;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceFile {
    pub universe: Vec<String>,
    pub parameters: Vec<String>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty", deserialize_with = "unique_map")]
    pub soft_sets: BTreeMap<String, FiberMap>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty", deserialize_with = "unique_map")]
    pub topologies: BTreeMap<String, Vec<String>>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty", deserialize_with = "unique_map")]
    pub functions: BTreeMap<String, FunctionTable>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target_universe: Option<Vec<String>>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ErrorCode {
    Syntax,
    ReservedName,
    UnknownLabel,
    UnknownParameter,
    MissingParameter,
    DuplicateName,
    DuplicateLabel,
    UnknownName,
    NonTotalFunction,
    InvalidContext,
}

impl ErrorCode {
    pub fn name(self) -> &'static str {
        match self {
            ErrorCode::Syntax => "SYNTAX",
            ErrorCode::ReservedName => "RESERVED_NAME",
            ErrorCode::UnknownLabel => "UNKNOWN_LABEL",
            ErrorCode::UnknownParameter => "UNKNOWN_PARAMETER",
            ErrorCode::MissingParameter => "MISSING_PARAMETER",
            ErrorCode::DuplicateName => "DUPLICATE_NAME",
            ErrorCode::DuplicateLabel => "DUPLICATE_LABEL",
            ErrorCode::UnknownName => "UNKNOWN_NAME",
            ErrorCode::NonTotalFunction => "NON_TOTAL_FUNCTION",
            ErrorCode::InvalidContext => "INVALID_CONTEXT",
        }
    }
}

impl fmt::Display for ErrorCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InstanceError {
    pub code: ErrorCode,
    pub message: String,
    /// 1-based line of the offending text, when it can be located.
    pub line: Option<usize>,
}

impl fmt::Display for InstanceError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(l) => write!(f, "line {l}: {}: {}", self.code, self.message),
            None => write!(f, "{}: {}", self.code, self.message),
        }
    }
}

impl std::error::Error for InstanceError {}

const DUPLICATE_TAG: &str = "duplicate key ";

fn unique_map<'de, D, V>(d: D) -> Result<BTreeMap<String, V>, D::Error>
where
    D: Deserializer<'de>,
    V: Deserialize<'de>,
{
    struct Unique<V>(PhantomData<V>);

    impl<'de, V: Deserialize<'de>> Visitor<'de> for Unique<V> {
        type Value = BTreeMap<String, V>;

        fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
            f.write_str("an object with distinct keys")
        }

        fn visit_map<A: MapAccess<'de>>(self, mut access: A) -> Result<Self::Value, A::Error> {
            let mut out = BTreeMap::new();
            while let Some(key) = access.next_key::<String>()? {
                if out.contains_key(&key) {
                    return Err(de::Error::custom(format!("{DUPLICATE_TAG}`{key}`")));
                }
                let value = access.next_value()?;
                out.insert(key, value);
            }
            Ok(out)
        }
    }

    d.deserialize_map(Unique(PhantomData))
}

/// 1-based line of the first occurrence of `"needle"` as a JSON string.
fn locate(text: &str, needle: &str) -> Option<usize> {
    let quoted = format!("\"{needle}\"");
    let at = text.find(&quoted)?;
    Some(text[..at].matches('\n').count() + 1)
}

struct Errors<'a> {
    text: &'a str,
    list: Vec<InstanceError>,
}

impl Errors<'_> {
    fn push(&mut self, code: ErrorCode, near: &str, message: String) {
        let line = locate(self.text, near);
        self.list.push(InstanceError { code, message, line });
    }
}

/// Parses and checks an instance; fibers come back in universe order.
pub fn parse_instance(text: &str) -> Result<InstanceFile, Vec<InstanceError>> {
    let mut inst: InstanceFile = serde_json::from_str(text).map_err(|e| {
        let msg = e.to_string();
        let code = if msg.starts_with(DUPLICATE_TAG) {
            ErrorCode::DuplicateName
        } else {
            ErrorCode::Syntax
        };
        let message = match msg.rfind(" at line ") {
            Some(i) => msg[..i].to_string(),
            None => msg,
        };
        vec![InstanceError {
            code,
            message,
            line: Some(e.line()),
        }]
    })?;
    let mut errs = Errors { text, list: Vec::new() };
    check(&mut inst, &mut errs);
    if errs.list.is_empty() {
        Ok(inst)
    } else {
        Err(errs.list)
    }
}

fn check_labels(kind: &str, labels: &[String], errs: &mut Errors) {
    let mut seen = std::collections::BTreeSet::new();
    for l in labels {
        if !seen.insert(l) {
            errs.push(ErrorCode::DuplicateLabel, l, format!("{kind} label `{l}` appears twice"));
        }
    }
    if labels.is_empty() {
        errs.push(ErrorCode::InvalidContext, kind, format!("{kind} must be non-empty"));
    }
    if labels.len() > 64 {
        errs.push(ErrorCode::InvalidContext, kind, format!("{kind} has more than 64 labels"));
    }
}

fn sort_by_universe(labels: &mut Vec<String>, universe: &[String]) {
    labels.sort_by_key(|l| universe.iter().position(|u| u == l));
    labels.dedup();
}

fn check(inst: &mut InstanceFile, errs: &mut Errors) {
    check_labels("universe", &inst.universe, errs);
    check_labels("parameters", &inst.parameters, errs);
    if let Some(t) = &inst.target_universe {
        check_labels("target_universe", t, errs);
    }
    let target = inst.target_universe.clone().unwrap_or_else(|| inst.universe.clone());

    for (name, fibers) in inst.soft_sets.iter_mut() {
        if name == NULL_NAME || name == ABSOLUTE_NAME {
            errs.push(ErrorCode::ReservedName, name, format!("`{name}` is reserved"));
            continue;
        }
        for p in fibers.keys() {
            if !inst.parameters.contains(p) {
                errs.push(ErrorCode::UnknownParameter, name, format!("soft set `{name}` uses unknown parameter `{p}`"));
            }
        }
        for p in &inst.parameters {
            if !fibers.contains_key(p) {
                errs.push(ErrorCode::MissingParameter, name, format!("soft set `{name}` has no fiber for `{p}`"));
            }
        }
        let within = |u: &[String]| fibers.values().flatten().all(|l| u.contains(l));
        let universe = if within(&inst.universe) {
            &inst.universe
        } else if within(&target) {
            &target
        } else {
            let bad = fibers
                .values()
                .flatten()
                .find(|l| !inst.universe.contains(l))
                .cloned()
                .unwrap_or_default();
            errs.push(ErrorCode::UnknownLabel, name, format!("soft set `{name}` uses unknown label `{bad}`"));
            continue;
        };
        for labels in fibers.values_mut() {
            sort_by_universe(labels, universe);
        }
    }

    for (name, members) in &inst.topologies {
        if name == NULL_NAME || name == ABSOLUTE_NAME {
            errs.push(ErrorCode::ReservedName, name, format!("`{name}` is reserved"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for m in members {
            if m != NULL_NAME && m != ABSOLUTE_NAME && !inst.soft_sets.contains_key(m) {
                errs.push(ErrorCode::UnknownName, m, format!("topology `{name}` names unknown soft set `{m}`"));
            }
            if !seen.insert(m) {
                errs.push(ErrorCode::DuplicateName, m, format!("topology `{name}` lists `{m}` twice"));
            }
        }
        let clash = inst.soft_sets.contains_key(name);
        if clash {
            errs.push(ErrorCode::DuplicateName, name, format!("`{name}` names both a soft set and a topology"));
        }
    }

    for (name, table) in &inst.functions {
        if name == NULL_NAME || name == ABSOLUTE_NAME {
            errs.push(ErrorCode::ReservedName, name, format!("`{name}` is reserved"));
        }
        for p in table.keys() {
            if !inst.parameters.contains(p) {
                errs.push(ErrorCode::UnknownParameter, name, format!("function `{name}` uses unknown parameter `{p}`"));
            }
        }
        for p in &inst.parameters {
            let Some(row) = table.get(p) else {
                errs.push(ErrorCode::MissingParameter, name, format!("function `{name}` has no map for `{p}`"));
                continue;
            };
            for (from, to) in row {
                if !inst.universe.contains(from) {
                    errs.push(ErrorCode::UnknownLabel, name, format!("function `{name}` maps unknown point `{from}`"));
                }
                if !target.contains(to) {
                    errs.push(ErrorCode::UnknownLabel, name, format!("function `{name}` maps to unknown point `{to}`"));
                }
            }
            if let Some(missing) = inst.universe.iter().find(|x| !row.contains_key(*x)) {
                errs.push(
                    ErrorCode::NonTotalFunction,
                    name,
                    format!("function `{name}` does not map `{missing}` at `{p}`"),
                );
            }
        }
    }
}

/// Canonical pretty-printed JSON with a trailing newline.
pub fn emit_instance(inst: &InstanceFile) -> String {
    let mut s = serde_json::to_string_pretty(inst).expect("instance serializes");
    s.push('\n');
    s
}

/// A name that failed to resolve against an instance.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ResolveError {
    UnknownName(String),
    /// The soft sets of a topology do not live over one universe.
    WrongUniverse(String),
    Invalid(String, String),
}

impl fmt::Display for ResolveError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ResolveError::UnknownName(n) => write!(f, "unknown name `{n}`"),
            ResolveError::WrongUniverse(n) => write!(f, "`{n}` is not over the requested universe"),
            ResolveError::Invalid(n, e) => write!(f, "`{n}`: {e}"),
        }
    }
}

impl std::error::Error for ResolveError {}

impl InstanceFile {
    pub fn source_context(&self) -> Result<Arc<Context>, ResolveError> {
        Context::new(self.universe.clone(), self.parameters.clone())
            .map_err(|e| ResolveError::Invalid("universe".into(), e.to_string()))
    }

    /// The codomain of the functions; the source universe when no target is given.
    pub fn target_context(&self) -> Result<Arc<Context>, ResolveError> {
        match &self.target_universe {
            Some(t) => Context::new(t.clone(), self.parameters.clone())
                .map_err(|e| ResolveError::Invalid("target_universe".into(), e.to_string())),
            None => self.source_context(),
        }
    }

    pub fn soft_set(&self, ctx: &Arc<Context>, name: &str) -> Result<SoftSet, ResolveError> {
        match name {
            NULL_NAME => return Ok(SoftSet::null(ctx)),
            ABSOLUTE_NAME => return Ok(SoftSet::absolute(ctx)),
            _ => {}
        }
        let fibers = self
            .soft_sets
            .get(name)
            .ok_or_else(|| ResolveError::UnknownName(name.to_string()))?;
        let mut masks = Vec::with_capacity(ctx.parameter_count());
        for p in ctx.parameters() {
            let labels = fibers.get(p).ok_or_else(|| ResolveError::UnknownName(name.to_string()))?;
            let mask = ctx
                .mask_of(labels)
                .map_err(|_| ResolveError::WrongUniverse(name.to_string()))?;
            masks.push(mask);
        }
        SoftSet::from_masks(ctx, masks).map_err(|e| ResolveError::Invalid(name.to_string(), e.to_string()))
    }

    /// Member soft sets of a named topology, unvalidated.
    pub fn family(&self, ctx: &Arc<Context>, name: &str) -> Result<Vec<SoftSet>, ResolveError> {
        let members = self
            .topologies
            .get(name)
            .ok_or_else(|| ResolveError::UnknownName(name.to_string()))?;
        members
            .iter()
            .map(|m| match self.soft_set(ctx, m) {
                Err(ResolveError::WrongUniverse(_)) => Err(ResolveError::WrongUniverse(name.to_string())),
                other => other,
            })
            .collect()
    }

    pub fn topology(&self, ctx: &Arc<Context>, name: &str, flavor: Flavor) -> Result<SoftTopology, ResolveError> {
        let opens = self.family(ctx, name)?;
        SoftTopology::new(ctx, &opens, flavor).map_err(|e| ResolveError::Invalid(name.to_string(), e.to_string()))
    }

    pub fn function(&self, name: &str) -> Result<SoftFunction, ResolveError> {
        let table = self
            .functions
            .get(name)
            .ok_or_else(|| ResolveError::UnknownName(name.to_string()))?;
        let src = self.source_context()?;
        let tgt = self.target_context()?;
        SoftFunction::from_fn(&src, &tgt, |p, x| table.get(p).and_then(|row| row.get(x)).cloned())
            .map_err(|e| ResolveError::Invalid(name.to_string(), e.to_string()))
    }

    /// Records a soft set under `name`, fibers in universe order.
    pub fn insert_soft_set(&mut self, name: &str, s: &SoftSet) {
        let fibers = s
            .labels()
            .into_iter()
            .map(|(p, ls)| (p.to_string(), ls.into_iter().map(str::to_string).collect()))
            .collect();
        self.soft_sets.insert(name.to_string(), fibers);
    }

    pub fn insert_function(&mut self, name: &str, f: &SoftFunction) {
        let src = f.source();
        let tgt = f.target();
        let table = src
            .parameters()
            .iter()
            .zip(f.tables())
            .map(|(p, row)| {
                let m = row
                    .iter()
                    .enumerate()
                    .map(|(i, &j)| (src.universe()[i].clone(), tgt.universe()[j as usize].clone()))
                    .collect();
                (p.clone(), m)
            })
            .collect();
        self.functions.insert(name.to_string(), table);
    }

    pub fn empty(ctx: &Context) -> Self {
        InstanceFile {
            universe: ctx.universe().to_vec(),
            parameters: ctx.parameters().to_vec(),
            soft_sets: BTreeMap::new(),
            topologies: BTreeMap::new(),
            functions: BTreeMap::new(),
            target_universe: None,
        }
    }
}

/// Names used for a family of soft sets when writing an instance: the
/// reserved names for the trivial sets and `S1`, `S2`, ... for the rest.
pub fn name_family(inst: &mut InstanceFile, names: &mut BTreeMap<SoftSet, String>, family: &[SoftSet]) -> Vec<String> {
    family
        .iter()
        .map(|s| {
            if s.is_null() {
                return NULL_NAME.to_string();
            }
            if s.is_absolute() {
                return ABSOLUTE_NAME.to_string();
            }
            if let Some(n) = names.get(s) {
                return n.clone();
            }
            let n = format!("S{}", names.len() + 1);
            inst.insert_soft_set(&n, s);
            names.insert(s.clone(), n.clone());
            n
        })
        .collect()
}
