//! Report types shared by the commands, with a line-oriented text form and
//! a JSON form that mirrors the struct fields.

use std::collections::BTreeMap;
use std::fmt::{self, Write as _};
use std::sync::Arc;

use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};
use softtop_core::base::BaseWitness;
use softtop_core::instance::InstanceFile;
use softtop_core::separation::{InterpolationWitness, SeparationFailure};
use softtop_core::topology::{Missing, ValidationReport};
use softtop_core::{Context, SoftElement, SoftSet};

pub trait Render: Serialize {
    fn text(&self) -> String;
}

pub fn render<R: Render>(report: &R, json: bool) -> String {
    if json {
        let mut s = serde_json::to_string_pretty(report).expect("reports serialize");
        s.push('\n');
        s
    } else {
        report.text()
    }
}

/// Names the soft sets of an instance so reports can refer back to them.
pub struct Namer {
    names: BTreeMap<SoftSet, String>,
}

impl Namer {
    pub fn new(inst: &InstanceFile, ctx: &Arc<Context>) -> Self {
        let mut names = BTreeMap::new();
        names.insert(SoftSet::null(ctx), "PHI".to_string());
        names.insert(SoftSet::absolute(ctx), "FULL".to_string());
        for name in inst.soft_sets.keys() {
            if let Ok(s) = inst.soft_set(ctx, name) {
                names.entry(s).or_insert_with(|| name.clone());
            }
        }
        Namer { names }
    }

    pub fn set(&self, s: &SoftSet) -> SetView {
        SetView {
            name: self.names.get(s).cloned(),
            notation: s.to_string(),
            fibers: s
                .labels()
                .into_iter()
                .map(|(p, ls)| (p.to_string(), ls.into_iter().map(str::to_string).collect()))
                .collect(),
        }
    }

    pub fn sets<'a>(&self, family: impl IntoIterator<Item = &'a SoftSet>) -> Vec<SetView> {
        family.into_iter().map(|s| self.set(s)).collect()
    }
}

#[derive(Debug, Clone)]
pub struct SetView {
    pub name: Option<String>,
    pub notation: String,
    pub fibers: Vec<(String, Vec<String>)>,
}

impl Serialize for SetView {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("SetView", 3)?;
        st.serialize_field("name", &self.name)?;
        st.serialize_field("notation", &self.notation)?;
        st.serialize_field("fibers", &Ordered(&self.fibers))?;
        st.end()
    }
}

impl fmt::Display for SetView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name.as_deref().unwrap_or(&self.notation))
    }
}

/// Pairs serialized as a map, keeping their order.
struct Ordered<'a, V>(&'a [(String, V)]);

impl<V: Serialize> Serialize for Ordered<'_, V> {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut m = serializer.serialize_map(Some(self.0.len()))?;
        for (k, v) in self.0 {
            m.serialize_entry(k, v)?;
        }
        m.end()
    }
}

#[derive(Debug, Clone)]
pub struct ElementView {
    pub notation: String,
    pub choices: Vec<(String, String)>,
}

impl ElementView {
    pub fn new(x: &SoftElement) -> Self {
        let ctx = x.context();
        ElementView {
            notation: x.to_string(),
            choices: ctx
                .parameters()
                .iter()
                .zip(x.choices())
                .map(|(p, &c)| (p.clone(), ctx.universe()[c as usize].clone()))
                .collect(),
        }
    }
}

impl Serialize for ElementView {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut st = serializer.serialize_struct("ElementView", 2)?;
        st.serialize_field("notation", &self.notation)?;
        st.serialize_field("choices", &Ordered(&self.choices))?;
        st.end()
    }
}

impl fmt::Display for ElementView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.notation)
    }
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

fn braces<T: fmt::Display>(items: &[T]) -> String {
    format!("{{{}}}", join(items))
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MissingView {
    Set(SetView),
    Fiber { parameter: String, subset: Vec<String> },
}

impl fmt::Display for MissingView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MissingView::Set(s) => write!(f, "{s}"),
            MissingView::Fiber { parameter, subset } => write!(f, "{{{}}} at {parameter}", subset.join(",")),
        }
    }
}

#[derive(Serialize)]
pub struct ViolationView {
    pub kind: String,
    pub members: Vec<SetView>,
    pub missing: Option<MissingView>,
}

#[derive(Serialize)]
pub struct ValidateReport {
    pub topology: String,
    pub valid: bool,
    pub flavor: String,
    pub violations: Vec<ViolationView>,
    pub truncated: bool,
}

impl ValidateReport {
    pub fn new(topology: &str, report: &ValidationReport, ctx: &Context, namer: &Namer) -> Self {
        let violations = report
            .violations
            .iter()
            .map(|v| ViolationView {
                kind: v.kind.name().to_string(),
                members: namer.sets(&v.members),
                missing: v.missing.as_ref().map(|m| match m {
                    Missing::Set(s) => MissingView::Set(namer.set(s)),
                    Missing::Fiber { parameter, mask } => MissingView::Fiber {
                        parameter: ctx.parameters()[*parameter].clone(),
                        subset: ctx.labels_of(*mask).into_iter().map(str::to_string).collect(),
                    },
                }),
            })
            .collect();
        ValidateReport {
            topology: topology.to_string(),
            valid: report.valid,
            flavor: report.flavor.name().to_string(),
            violations,
            truncated: report.truncated,
        }
    }
}

impl Render for ValidateReport {
    fn text(&self) -> String {
        let mut out = format!("topology: {}\nflavor: {}\nvalid: {}\n", self.topology, self.flavor, self.valid);
        for v in &self.violations {
            let _ = write!(out, "violation: {} members: {}", v.kind, join(&v.members));
            if let Some(m) = &v.missing {
                let _ = write!(out, " missing: {m}");
            }
            out.push('\n');
        }
        if self.truncated {
            out.push_str("truncated: true\n");
        }
        out
    }
}

#[derive(Serialize)]
pub struct ClosedReport {
    pub topology: String,
    pub closed: Vec<SetView>,
}

impl Render for ClosedReport {
    fn text(&self) -> String {
        let mut out = format!("topology: {}\ncount: {}\n", self.topology, self.closed.len());
        for s in &self.closed {
            let _ = writeln!(out, "closed: {s} {}", s.notation);
        }
        out
    }
}

#[derive(Serialize)]
pub struct ClosureReport {
    pub topology: String,
    pub set: SetView,
    pub closure: SetView,
    pub closed: bool,
}

impl Render for ClosureReport {
    fn text(&self) -> String {
        format!(
            "topology: {}\nset: {}\nclosure: {}\nclosure notation: {}\nclosed: {}\n",
            self.topology, self.set, self.closure, self.closure.notation, self.closed
        )
    }
}

#[derive(Serialize)]
pub struct InteriorReport {
    pub topology: String,
    pub set: SetView,
    pub interior: SetView,
    pub interior_elements: Vec<ElementView>,
    pub open: bool,
}

impl Render for InteriorReport {
    fn text(&self) -> String {
        format!(
            "topology: {}\nset: {}\ninterior: {}\ninterior notation: {}\ninterior elements: {}\nopen: {}\n",
            self.topology,
            self.set,
            self.interior,
            self.interior.notation,
            braces(&self.interior_elements),
            self.open
        )
    }
}

#[derive(Serialize)]
pub struct DerivedReport {
    pub topology: String,
    pub set: SetView,
    pub limiting_elements: Vec<ElementView>,
    pub derived: SetView,
    pub weak_closure: SetView,
}

impl Render for DerivedReport {
    fn text(&self) -> String {
        format!(
            "topology: {}\nset: {}\nlimiting elements: {}\nderived: {}\nweak closure: {}\n",
            self.topology,
            self.set,
            braces(&self.limiting_elements),
            self.derived,
            self.weak_closure
        )
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum BaseWitnessView {
    NotOpen { set: SetView },
    MissingNull,
    Uncovered { element: ElementView, open: SetView },
}

impl BaseWitnessView {
    pub fn new(w: &BaseWitness, namer: &Namer) -> Self {
        match w {
            BaseWitness::NotOpen(s) => BaseWitnessView::NotOpen { set: namer.set(s) },
            BaseWitness::MissingNull => BaseWitnessView::MissingNull,
            BaseWitness::Uncovered { element, open } => BaseWitnessView::Uncovered {
                element: ElementView::new(element),
                open: namer.set(open),
            },
        }
    }
}

impl fmt::Display for BaseWitnessView {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BaseWitnessView::NotOpen { set } => write!(f, "{set} is not open"),
            BaseWitnessView::MissingNull => f.write_str("PHI is missing"),
            BaseWitnessView::Uncovered { element, open } => {
                write!(f, "no member contains {element} inside {open}")
            }
        }
    }
}

#[derive(Serialize)]
pub struct RefinementView {
    pub first: SetView,
    pub second: SetView,
    pub element: ElementView,
}

#[derive(Serialize)]
pub struct BaseReport {
    pub topology: String,
    pub candidate: String,
    pub is_base: bool,
    pub witness: Option<BaseWitnessView>,
    pub covers_by_unions: bool,
    pub null_member: bool,
    pub absolute_covered: bool,
    pub refinement: bool,
    pub refinement_witness: Option<RefinementView>,
}

impl Render for BaseReport {
    fn text(&self) -> String {
        let mut out = format!(
            "topology: {}\ncandidate: {}\nbase: {}\n",
            self.topology, self.candidate, self.is_base
        );
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {w}");
        }
        let _ = write!(
            out,
            "covers by unions: {}\nnull member: {}\nabsolute covered: {}\nrefinement: {}\n",
            self.covers_by_unions, self.null_member, self.absolute_covered, self.refinement
        );
        if let Some(r) = &self.refinement_witness {
            let _ = writeln!(out, "refinement witness: {} in {} and {}", r.element, r.first, r.second);
        }
        out
    }
}

#[derive(Serialize)]
pub struct SubbaseReport {
    pub topology: String,
    pub candidate: String,
    pub is_subbase: bool,
    pub witness: Option<BaseWitnessView>,
    pub finite_meets: Vec<SetView>,
}

impl Render for SubbaseReport {
    fn text(&self) -> String {
        let mut out = format!(
            "topology: {}\ncandidate: {}\nsubbase: {}\n",
            self.topology, self.candidate, self.is_subbase
        );
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {w}");
        }
        let _ = writeln!(out, "finite meets: {}", braces(&self.finite_meets));
        out
    }
}

#[derive(Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxiomWitness {
    Pair { first: ElementView, second: ElementView },
    PointAndClosed { element: ElementView, closed: SetView },
    TwoClosed { first: SetView, second: SetView },
    Element { element: ElementView, open: SetView },
    Closed { closed: SetView, open: SetView },
}

impl AxiomWitness {
    pub fn pair(x: &SoftElement, y: &SoftElement) -> Self {
        AxiomWitness::Pair {
            first: ElementView::new(x),
            second: ElementView::new(y),
        }
    }

    pub fn separation(w: &SeparationFailure, namer: &Namer) -> Self {
        match w {
            SeparationFailure::PointAndClosed { element, closed } => AxiomWitness::PointAndClosed {
                element: ElementView::new(element),
                closed: namer.set(closed),
            },
            SeparationFailure::TwoClosed(a, b) => AxiomWitness::TwoClosed {
                first: namer.set(a),
                second: namer.set(b),
            },
        }
    }

    pub fn interpolation(w: &InterpolationWitness, namer: &Namer) -> Self {
        match w {
            InterpolationWitness::Element { element, open } => AxiomWitness::Element {
                element: ElementView::new(element),
                open: namer.set(open),
            },
            InterpolationWitness::Closed { closed, open } => AxiomWitness::Closed {
                closed: namer.set(closed),
                open: namer.set(open),
            },
        }
    }
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AxiomWitness::Pair { first, second } => write!(f, "{first}, {second}"),
            AxiomWitness::PointAndClosed { element, closed } => write!(f, "{element}, {closed}"),
            AxiomWitness::TwoClosed { first, second } => write!(f, "{first}, {second}"),
            AxiomWitness::Element { element, open } => write!(f, "{element}, {open}"),
            AxiomWitness::Closed { closed, open } => write!(f, "{closed}, {open}"),
        }
    }
}

#[derive(Serialize)]
pub struct AxiomView {
    pub name: String,
    pub holds: bool,
    pub witness: Option<AxiomWitness>,
}

#[derive(Serialize)]
pub struct AxiomsReport {
    pub topology: String,
    pub axioms: Vec<AxiomView>,
    /// How disjointness of two open sets is read in the separation axioms.
    pub disjointness: String,
}

impl Render for AxiomsReport {
    fn text(&self) -> String {
        let mut out = String::new();
        for a in &self.axioms {
            let _ = writeln!(out, "{}: {}", a.name, a.holds);
        }
        for a in &self.axioms {
            if let Some(w) = &a.witness {
                let _ = writeln!(out, "witness {}: {w}", a.name);
            }
        }
        let _ = writeln!(out, "disjointness: {}", self.disjointness);
        out
    }
}

#[derive(Serialize)]
pub struct CriterionView {
    pub criterion: String,
    pub holds: bool,
}

#[derive(Serialize)]
pub struct ContinuityReport {
    pub function: String,
    pub from: String,
    pub to: String,
    pub criteria: Vec<CriterionView>,
    pub open_map: bool,
    pub closed_map: bool,
    pub homeomorphism: bool,
}

impl Render for ContinuityReport {
    fn text(&self) -> String {
        let mut out = format!("function: {}\nfrom: {}\nto: {}\n", self.function, self.from, self.to);
        for c in &self.criteria {
            let _ = writeln!(out, "{}: {}", c.criterion, c.holds);
        }
        let _ = write!(
            out,
            "open map: {}\nclosed map: {}\nhomeomorphism: {}\n",
            self.open_map, self.closed_map, self.homeomorphism
        );
        out
    }
}

#[derive(Serialize)]
pub struct GoalView {
    pub positive: String,
    pub negative: String,
    pub n: usize,
    pub m: usize,
    pub max_size: usize,
    pub isomorph_rejection: bool,
}

pub struct MineReport {
    pub goal: GoalView,
    pub witness: Option<InstanceFile>,
}

impl Serialize for MineReport {
    /// A found witness serializes as the bare instance document.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match &self.witness {
            Some(inst) => inst.serialize(serializer),
            None => {
                let mut st = serializer.serialize_struct("MineReport", 2)?;
                st.serialize_field("goal", &self.goal)?;
                st.serialize_field("found", &false)?;
                st.end()
            }
        }
    }
}

impl Render for MineReport {
    fn text(&self) -> String {
        let g = &self.goal;
        let mut out = format!(
            "goal: {} and not {}\nbounds: n={} m={} max size {}{}\nfound: {}\n",
            g.positive,
            g.negative,
            g.n,
            g.m,
            g.max_size,
            if g.isomorph_rejection { ", isomorph rejection" } else { "" },
            self.witness.is_some()
        );
        if let Some(inst) = &self.witness {
            out.push_str(&softtop_core::instance::emit_instance(inst));
        }
        out
    }
}

#[derive(Serialize)]
pub struct CheckView {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Serialize)]
pub struct FixtureView {
    pub id: String,
    pub passed: bool,
    pub checks: Vec<CheckView>,
}

#[derive(Serialize)]
pub struct CorpusView {
    pub passed: bool,
    pub fixtures: Vec<FixtureView>,
}

impl Render for CorpusView {
    fn text(&self) -> String {
        let mut out = String::new();
        for f in &self.fixtures {
            let verdict = if f.passed { "pass" } else { "FAIL" };
            let _ = writeln!(out, "{}: {verdict} ({} checks)", f.id, f.checks.len());
            for c in f.checks.iter().filter(|c| !c.passed) {
                let _ = writeln!(out, "  failed {}: {}", c.name, c.detail);
            }
        }
        let passed = self.fixtures.iter().filter(|f| f.passed).count();
        let _ = writeln!(out, "corpus: {passed}/{} fixtures passed", self.fixtures.len());
        out
    }
}
