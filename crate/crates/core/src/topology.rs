//! Soft topologies under three competing definitions, and the operators of
//! the elementary (CS) definition: closed sets, closure, interior, limiting
//! elements, derived sets and neighbourhoods.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use crate::context::{self, Context};
use crate::element::{generate, soft_elements, SoftElement, SoftElementSet};
use crate::error::{Result, SoftError};
use crate::soft_set::{admissible_soft_sets, SoftSet};

/// Default cap on the number of violations a report carries.
pub const DEFAULT_VIOLATION_LIMIT: usize = 10;

/// Which definition of soft topology a family is checked against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Flavor {
    /// Members in S(X); closed under elementary union and binary elementary intersection.
    Cs,
    /// Arbitrary soft sets; closed under fiberwise union and binary fiberwise intersection.
    ShabirNaz,
    /// Every per-parameter fiber family is a crisp topology.
    Hazra,
}

impl Flavor {
    pub fn name(self) -> &'static str {
        match self {
            Flavor::Cs => "cs",
            Flavor::ShabirNaz => "sn",
            Flavor::Hazra => "hazra",
        }
    }
}

impl std::str::FromStr for Flavor {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "cs" => Ok(Flavor::Cs),
            "sn" | "shabir-naz" | "shabir_naz" => Ok(Flavor::ShabirNaz),
            "hazra" => Ok(Flavor::Hazra),
            other => Err(format!("unknown topology definition `{other}`")),
        }
    }
}

impl fmt::Display for Flavor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    MissingNull,
    MissingAbsolute,
    MixedMember,
    UnionNotMember,
    IntersectionNotMember,
    FiberNotTopology,
}

impl ViolationKind {
    pub fn name(self) -> &'static str {
        match self {
            ViolationKind::MissingNull => "MISSING_NULL",
            ViolationKind::MissingAbsolute => "MISSING_ABSOLUTE",
            ViolationKind::MixedMember => "MIXED_MEMBER",
            ViolationKind::UnionNotMember => "UNION_NOT_MEMBER",
            ViolationKind::IntersectionNotMember => "INTERSECTION_NOT_MEMBER",
            ViolationKind::FiberNotTopology => "FIBER_NOT_TOPOLOGY",
        }
    }
}

/// What a violating combination failed to find in the family.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Missing {
    Set(SoftSet),
    /// A subset of the universe missing from the fiber family of `parameter`.
    Fiber { parameter: usize, mask: u64 },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub kind: ViolationKind,
    pub members: Vec<SoftSet>,
    pub missing: Option<Missing>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValidationReport {
    pub valid: bool,
    pub flavor: Flavor,
    pub violations: Vec<Violation>,
    /// More violations exist than were recorded.
    pub truncated: bool,
}

struct Collector {
    limit: usize,
    violations: Vec<Violation>,
    truncated: bool,
}

impl Collector {
    fn push(&mut self, v: Violation) -> bool {
        if self.violations.len() < self.limit {
            self.violations.push(v);
            true
        } else {
            self.truncated = true;
            false
        }
    }
}

pub fn validate(ctx: &Arc<Context>, opens: &[SoftSet], flavor: Flavor) -> Result<ValidationReport> {
    validate_with_limit(ctx, opens, flavor, DEFAULT_VIOLATION_LIMIT)
}

/// Checks the closure axioms of `flavor`, recording at most `limit` violations.
///
/// Binary closure is checked; for a finite family this is equivalent to
/// closure under arbitrary elementary unions.
pub fn validate_with_limit(
    ctx: &Arc<Context>,
    opens: &[SoftSet],
    flavor: Flavor,
    limit: usize,
) -> Result<ValidationReport> {
    for s in opens {
        context::ensure_same(ctx, s.context())?;
    }
    let family: BTreeSet<SoftSet> = opens.iter().cloned().collect();
    let members: Vec<&SoftSet> = family.iter().collect();
    let mut out = Collector {
        limit: limit.max(1),
        violations: Vec::new(),
        truncated: false,
    };
    match flavor {
        Flavor::Cs | Flavor::ShabirNaz => {
            check_trivials(ctx, &family, &mut out);
            if flavor == Flavor::Cs {
                for s in members.iter().filter(|s| !s.is_admissible()) {
                    out.push(Violation {
                        kind: ViolationKind::MixedMember,
                        members: vec![(*s).clone()],
                        missing: None,
                    });
                }
            }
            'pairs: for (i, a) in members.iter().enumerate() {
                for b in &members[i + 1..] {
                    let (union, meet) = match flavor {
                        Flavor::Cs => {
                            if !a.is_admissible() || !b.is_admissible() {
                                continue;
                            }
                            (a.e_union(b), a.e_meet(b))
                        }
                        _ => (
                            a.zip_unchecked(b, |x, y| x | y),
                            a.zip_unchecked(b, |x, y| x & y),
                        ),
                    };
                    for (kind, result) in [
                        (ViolationKind::UnionNotMember, union),
                        (ViolationKind::IntersectionNotMember, meet),
                    ] {
                        if !family.contains(&result) {
                            let pushed = out.push(Violation {
                                kind,
                                members: vec![(*a).clone(), (*b).clone()],
                                missing: Some(Missing::Set(result)),
                            });
                            if !pushed {
                                break 'pairs;
                            }
                        }
                    }
                }
            }
        }
        Flavor::Hazra => {
            for p in 0..ctx.parameter_count() {
                let mut witnesses: BTreeMap<u64, &SoftSet> = BTreeMap::new();
                for s in &members {
                    witnesses.entry(s.fiber(p)).or_insert(s);
                }
                if let Some((need, used)) = crisp_violation(ctx.full_mask(), &witnesses) {
                    out.push(Violation {
                        kind: ViolationKind::FiberNotTopology,
                        members: used.into_iter().cloned().collect(),
                        missing: Some(Missing::Fiber {
                            parameter: p,
                            mask: need,
                        }),
                    });
                }
            }
        }
    }
    Ok(ValidationReport {
        valid: out.violations.is_empty(),
        flavor,
        violations: out.violations,
        truncated: out.truncated,
    })
}

fn check_trivials(ctx: &Arc<Context>, family: &BTreeSet<SoftSet>, out: &mut Collector) {
    let null = SoftSet::null(ctx);
    if !family.contains(&null) {
        out.push(Violation {
            kind: ViolationKind::MissingNull,
            members: vec![],
            missing: Some(Missing::Set(null)),
        });
    }
    let full = SoftSet::absolute(ctx);
    if !family.contains(&full) {
        out.push(Violation {
            kind: ViolationKind::MissingAbsolute,
            members: vec![],
            missing: Some(Missing::Set(full)),
        });
    }
}

/// First missing subset of a fiber family that should be a crisp topology,
/// with the family members that produce it.
fn crisp_violation<'a>(
    full: u64,
    witnesses: &BTreeMap<u64, &'a SoftSet>,
) -> Option<(u64, Vec<&'a SoftSet>)> {
    if !witnesses.contains_key(&0) {
        return Some((0, vec![]));
    }
    if !witnesses.contains_key(&full) {
        return Some((full, vec![]));
    }
    let masks: Vec<(&u64, &&SoftSet)> = witnesses.iter().collect();
    for (i, (a, sa)) in masks.iter().enumerate() {
        for (b, sb) in &masks[i + 1..] {
            for need in [**a | **b, **a & **b] {
                if !witnesses.contains_key(&need) {
                    return Some((need, vec![**sa, **sb]));
                }
            }
        }
    }
    None
}

/// True when `family` (subsets of a universe with mask `full`) is a crisp topology.
pub fn is_crisp_topology(full: u64, family: &[u64]) -> bool {
    let set: BTreeSet<u64> = family.iter().copied().collect();
    set.contains(&0)
        && set.contains(&full)
        && set
            .iter()
            .all(|a| set.iter().all(|b| set.contains(&(a | b)) && set.contains(&(a & b))))
}

/// A family of soft sets that passed validation under one definition.
#[derive(Clone, PartialEq, Eq)]
pub struct SoftTopology {
    ctx: Arc<Context>,
    opens: Vec<SoftSet>,
    flavor: Flavor,
}

impl SoftTopology {
    pub fn new(ctx: &Arc<Context>, opens: &[SoftSet], flavor: Flavor) -> Result<Self> {
        let report = validate(ctx, opens, flavor)?;
        if !report.valid {
            return Err(SoftError::InvalidTopology(Box::new(report)));
        }
        Ok(Self::assume_valid(ctx, opens.to_vec(), flavor))
    }

    /// Skips validation; callers guarantee the family satisfies `flavor`.
    pub(crate) fn assume_valid(ctx: &Arc<Context>, mut opens: Vec<SoftSet>, flavor: Flavor) -> Self {
        opens.sort();
        opens.dedup();
        Self {
            ctx: Arc::clone(ctx),
            opens,
            flavor,
        }
    }

    /// The indiscrete topology `{null, absolute}`.
    pub fn indiscrete(ctx: &Arc<Context>) -> Self {
        Self::assume_valid(ctx, vec![SoftSet::null(ctx), SoftSet::absolute(ctx)], Flavor::Cs)
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    /// Open sets in canonical order.
    pub fn opens(&self) -> &[SoftSet] {
        &self.opens
    }

    pub fn flavor(&self) -> Flavor {
        self.flavor
    }

    pub fn len(&self) -> usize {
        self.opens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.opens.is_empty()
    }

    pub fn is_open(&self, s: &SoftSet) -> bool {
        self.opens.binary_search(s).is_ok()
    }

    pub(crate) fn require_cs(&self) -> Result<()> {
        if self.flavor == Flavor::Cs {
            Ok(())
        } else {
            Err(SoftError::NotCsTopology)
        }
    }

    fn check_operand(&self, f: &SoftSet) -> Result<()> {
        self.require_cs()?;
        context::ensure_same(&self.ctx, f.context())?;
        f.require_admissible()?;
        Ok(())
    }

    /// Closed: the relative complement lies in S(X) and the elementary
    /// complement is open.
    pub fn is_soft_closed(&self, f: &SoftSet) -> Result<bool> {
        self.check_operand(f)?;
        Ok(self.closed_unchecked(f))
    }

    pub(crate) fn closed_unchecked(&self, f: &SoftSet) -> bool {
        f.pointwise_complement().is_admissible() && self.is_open(&f.e_complement())
    }

    /// Every soft closed set, in canonical order.
    ///
    /// A closed set other than the absolute set is the relative complement of
    /// an open set whose complement is admissible, so this is computed from
    /// the opens directly.
    pub fn closed_family(&self) -> Result<Vec<SoftSet>> {
        self.require_cs()?;
        let mut out: Vec<SoftSet> = self
            .opens
            .iter()
            .map(SoftSet::pointwise_complement)
            .filter(SoftSet::is_admissible)
            .chain(std::iter::once(SoftSet::absolute(&self.ctx)))
            .collect();
        out.sort();
        out.dedup();
        Ok(out)
    }

    /// Elementary intersection of all closed supersets of `f`.
    pub fn closure(&self, f: &SoftSet) -> Result<SoftSet> {
        self.check_operand(f)?;
        Ok(self.closure_unchecked(f, &self.closed_family()?))
    }

    pub(crate) fn closure_unchecked(&self, f: &SoftSet, closed: &[SoftSet]) -> SoftSet {
        if f.is_null() {
            return f.clone();
        }
        // Every closed superset contains the proper set `f`, so the fiberwise
        // intersection stays proper and equals the elementary one.
        let mut acc = SoftSet::absolute(&self.ctx);
        for k in closed.iter().filter(|k| f.subset_unchecked(k)) {
            acc = acc.zip_unchecked(k, |a, b| a & b);
        }
        debug_assert!(acc.is_proper());
        acc
    }

    pub fn is_interior_element(&self, x: &SoftElement, f: &SoftSet) -> Result<bool> {
        self.check_operand(f)?;
        context::ensure_same(&self.ctx, x.context())?;
        Ok(x.in_unchecked(f)
            && self
                .opens
                .iter()
                .any(|g| x.in_unchecked(g) && g.subset_unchecked(f)))
    }

    /// Soft elements of `f` lying in some open set contained in `f`.
    pub fn interior_elements(&self, f: &SoftSet) -> Result<SoftElementSet> {
        self.check_operand(f)?;
        let mut out = BTreeSet::new();
        for g in self.opens.iter().filter(|g| g.subset_unchecked(f)) {
            out.extend(soft_elements(g)?.iter().cloned());
        }
        Ok(SoftElementSet::from_btree(&self.ctx, out))
    }

    /// The soft set generated by the interior elements of `f`.
    pub fn interior(&self, f: &SoftSet) -> Result<SoftSet> {
        Ok(generate(&self.interior_elements(f)?))
    }

    /// `x` is limiting for `f` when every open fiber containing `x(a)` meets
    /// `f(a)` outside the point `x(a)`.
    pub fn is_limiting_element(&self, x: &SoftElement, f: &SoftSet) -> Result<bool> {
        self.check_operand(f)?;
        context::ensure_same(&self.ctx, x.context())?;
        Ok(self.limiting_unchecked(x, f))
    }

    fn limiting_unchecked(&self, x: &SoftElement, f: &SoftSet) -> bool {
        self.opens.iter().all(|g| {
            (0..self.ctx.parameter_count()).all(|p| {
                let point = 1u64 << x.choice(p);
                g.fiber(p) & point == 0 || f.fiber(p) & g.fiber(p) & !point != 0
            })
        })
    }

    pub fn limiting_elements(&self, f: &SoftSet) -> Result<SoftElementSet> {
        self.check_operand(f)?;
        let found = SoftElement::all(&self.ctx)
            .filter(|x| self.limiting_unchecked(x, f))
            .collect();
        Ok(SoftElementSet::from_btree(&self.ctx, found))
    }

    /// The soft set generated by the limiting elements of `f`.
    pub fn derived_set(&self, f: &SoftSet) -> Result<SoftSet> {
        Ok(generate(&self.limiting_elements(f)?))
    }

    pub fn weak_closure(&self, f: &SoftSet) -> Result<SoftSet> {
        let d = self.derived_set(f)?;
        Ok(f.e_union(&d))
    }

    /// `f` is a neighbourhood of `x`: proper, and some open `g` has `x ∈ g ⊆ f`.
    pub fn is_nbd(&self, x: &SoftElement, f: &SoftSet) -> Result<bool> {
        self.require_cs()?;
        context::ensure_same(&self.ctx, x.context())?;
        context::ensure_same(&self.ctx, f.context())?;
        Ok(self.nbd_unchecked(x, f))
    }

    fn nbd_unchecked(&self, x: &SoftElement, f: &SoftSet) -> bool {
        f.is_proper()
            && self
                .opens
                .iter()
                .any(|g| x.in_unchecked(g) && g.subset_unchecked(f))
    }

    /// The full neighbourhood system of `x`, materialized by enumerating S(X).
    pub fn neighborhoods(&self, x: &SoftElement) -> Result<Vec<SoftSet>> {
        self.require_cs()?;
        context::ensure_same(&self.ctx, x.context())?;
        Ok(admissible_soft_sets(&self.ctx)
            .filter(|f| self.nbd_unchecked(x, f))
            .collect())
    }

    pub fn neighborhood_operator(&self) -> Result<NbdOperator> {
        let mut assignment = BTreeMap::new();
        for x in SoftElement::all(&self.ctx) {
            let family = self.neighborhoods(&x)?.into_iter().collect();
            assignment.insert(x, family);
        }
        NbdOperator::new(&self.ctx, assignment)
    }
}

impl fmt::Debug for SoftTopology {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "SoftTopology[{}]", self.flavor)?;
        f.debug_set().entries(self.opens.iter()).finish()
    }
}

/// The family of fibers of a topology at one parameter.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiberFamily {
    pub parameter: String,
    /// Distinct fiber masks, ascending.
    pub sets: Vec<u64>,
    pub is_crisp_topology: bool,
}

pub fn fiber_topologies(t: &SoftTopology) -> Vec<FiberFamily> {
    let ctx = t.context();
    ctx.parameters()
        .iter()
        .enumerate()
        .map(|(p, name)| {
            let sets: BTreeSet<u64> = t.opens().iter().map(|s| s.fiber(p)).collect();
            let sets: Vec<u64> = sets.into_iter().collect();
            FiberFamily {
                parameter: name.clone(),
                is_crisp_topology: is_crisp_topology(ctx.full_mask(), &sets),
                sets,
            }
        })
        .collect()
}

/// The CS topology of all admissible soft sets whose fibers are open in the
/// given per-parameter crisp topologies.
pub fn from_crisp(ctx: &Arc<Context>, fibers: &[Vec<u64>]) -> Result<SoftTopology> {
    if fibers.len() != ctx.parameter_count() {
        return Err(SoftError::FiberCount {
            expected: ctx.parameter_count(),
            actual: fibers.len(),
        });
    }
    let full = ctx.full_mask();
    let mut choices: Vec<Vec<u64>> = Vec::with_capacity(fibers.len());
    for (p, family) in fibers.iter().enumerate() {
        if family.iter().any(|f| f & !full != 0) || !is_crisp_topology(full, family) {
            return Err(SoftError::NotCrispTopology(ctx.parameters()[p].clone()));
        }
        let nonempty: BTreeSet<u64> = family.iter().copied().filter(|&f| f != 0).collect();
        choices.push(nonempty.into_iter().collect());
    }
    let mut opens = vec![SoftSet::null(ctx)];
    let mut cursor = vec![0usize; choices.len()];
    'outer: loop {
        opens.push(SoftSet::raw(
            ctx,
            cursor.iter().zip(&choices).map(|(&i, c)| c[i]).collect(),
        ));
        for (slot, c) in cursor.iter_mut().zip(&choices).rev() {
            if *slot + 1 < c.len() {
                *slot += 1;
                continue 'outer;
            }
            *slot = 0;
        }
        break;
    }
    let t = SoftTopology::assume_valid(ctx, opens, Flavor::Cs);
    debug_assert!(validate(ctx, t.opens(), Flavor::Cs).map(|r| r.valid).unwrap_or(false));
    Ok(t)
}

/// Intersection of two CS topologies; the result is again a CS topology.
pub fn intersect(t1: &SoftTopology, t2: &SoftTopology) -> Result<SoftTopology> {
    t1.require_cs()?;
    t2.require_cs()?;
    context::ensure_same(t1.context(), t2.context())?;
    let opens: Vec<SoftSet> = t1.opens().iter().filter(|s| t2.is_open(s)).cloned().collect();
    SoftTopology::new(t1.context(), &opens, Flavor::Cs)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum NbdAxiom {
    N1,
    N2,
    N3,
    N4,
    N5,
}

impl NbdAxiom {
    pub const ALL: [NbdAxiom; 5] = [NbdAxiom::N1, NbdAxiom::N2, NbdAxiom::N3, NbdAxiom::N4, NbdAxiom::N5];
}

/// Assignment of a family of soft sets to every soft element of the absolute set.
#[derive(Debug, Clone)]
pub struct NbdOperator {
    ctx: Arc<Context>,
    assignment: BTreeMap<SoftElement, BTreeSet<SoftSet>>,
}

impl NbdOperator {
    /// Rejects assignments that miss a soft element.
    pub fn new(ctx: &Arc<Context>, assignment: BTreeMap<SoftElement, BTreeSet<SoftSet>>) -> Result<Self> {
        for x in SoftElement::all(ctx) {
            if !assignment.contains_key(&x) {
                return Err(SoftError::NonTotalOperator(x.to_string()));
            }
        }
        for (x, family) in &assignment {
            context::ensure_same(ctx, x.context())?;
            for s in family {
                context::ensure_same(ctx, s.context())?;
            }
        }
        Ok(Self {
            ctx: Arc::clone(ctx),
            assignment,
        })
    }

    /// Assigns the same family to every soft element.
    pub fn constant(ctx: &Arc<Context>, family: &[SoftSet]) -> Result<Self> {
        let family: BTreeSet<SoftSet> = family.iter().cloned().collect();
        let assignment = SoftElement::all(ctx).map(|x| (x, family.clone())).collect();
        Self::new(ctx, assignment)
    }

    pub fn at(&self, x: &SoftElement) -> &BTreeSet<SoftSet> {
        &self.assignment[x]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbdWitness {
    pub element: SoftElement,
    pub sets: Vec<SoftSet>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomVerdict {
    pub axiom: NbdAxiom,
    pub holds: bool,
    pub witness: Option<NbdWitness>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NbdReport {
    pub verdicts: Vec<AxiomVerdict>,
}

impl NbdReport {
    pub fn all_hold(&self) -> bool {
        self.verdicts.iter().all(|v| v.holds)
    }

    pub fn verdict(&self, axiom: NbdAxiom) -> &AxiomVerdict {
        &self.verdicts[axiom as usize]
    }
}

/// Checks the neighbourhood-operator axioms N1 to N5.
pub fn check_nbd_operator(op: &NbdOperator) -> NbdReport {
    let ctx = &op.ctx;
    let universe: Vec<SoftSet> = admissible_soft_sets(ctx).collect();
    let mut verdicts = Vec::with_capacity(5);
    for axiom in NbdAxiom::ALL {
        let witness = op.assignment.iter().find_map(|(x, family)| {
            let fail = |sets: Vec<SoftSet>| {
                Some(NbdWitness {
                    element: x.clone(),
                    sets,
                })
            };
            match axiom {
                NbdAxiom::N1 => family.is_empty().then(|| fail(vec![])).flatten(),
                NbdAxiom::N2 => family
                    .iter()
                    .find(|f| !x.in_unchecked(f))
                    .and_then(|f| fail(vec![f.clone()])),
                NbdAxiom::N3 => family.iter().find_map(|f| {
                    universe
                        .iter()
                        .find(|g| f.subset_unchecked(g) && !family.contains(*g))
                        .and_then(|g| fail(vec![f.clone(), g.clone()]))
                }),
                NbdAxiom::N4 => family.iter().find_map(|f| {
                    family
                        .iter()
                        .find(|g| !family.contains(&f.e_meet(g)))
                        .and_then(|g| fail(vec![f.clone(), g.clone()]))
                }),
                NbdAxiom::N5 => family
                    .iter()
                    .find(|f| {
                        !family.iter().any(|g| {
                            g.subset_unchecked(f)
                                && soft_elements(g).is_ok_and(|elems| {
                                    elems.iter().all(|y| op.assignment[y].contains(g))
                                })
                        })
                    })
                    .and_then(|f| fail(vec![f.clone()])),
            }
        });
        verdicts.push(AxiomVerdict {
            axiom,
            holds: witness.is_none(),
            witness,
        });
    }
    NbdReport { verdicts }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<Context> {
        Context::standard(3, 2).unwrap()
    }

    fn s(c: &Arc<Context>, a: &[&str], b: &[&str]) -> SoftSet {
        SoftSet::from_labels(c, &[a, b]).unwrap()
    }

    fn el(c: &Arc<Context>, a: &str, b: &str) -> SoftElement {
        SoftElement::from_labels(c, &[a, b]).unwrap()
    }

    fn remark_38(c: &Arc<Context>) -> Vec<SoftSet> {
        vec![
            SoftSet::null(c),
            SoftSet::absolute(c),
            s(c, &["x", "y"], &["x", "z"]),
            s(c, &["z"], &["y", "z"]),
        ]
    }

    #[test]
    fn flavors_disagree_on_remark_38() {
        let c = ctx();
        let tau = remark_38(&c);
        assert!(validate(&c, &tau, Flavor::Cs).unwrap().valid);

        let sn = validate(&c, &tau, Flavor::ShabirNaz).unwrap();
        assert!(!sn.valid);
        assert!(sn.violations.iter().any(|v| v.kind == ViolationKind::IntersectionNotMember
            && v.missing == Some(Missing::Set(s(&c, &[], &["z"])))));

        let mut tau_prime = tau.clone();
        tau_prime.push(s(&c, &[], &["z"]));
        let cs = validate(&c, &tau_prime, Flavor::Cs).unwrap();
        assert!(!cs.valid);
        assert_eq!(cs.violations[0].kind, ViolationKind::MixedMember);
        assert!(validate(&c, &tau_prime, Flavor::ShabirNaz).unwrap().valid);
        assert!(validate(&c, &tau_prime, Flavor::Hazra).unwrap().valid);
        assert!(!validate(&c, &tau, Flavor::Hazra).unwrap().valid);
    }

    #[test]
    fn union_of_topologies_is_not_a_topology() {
        let c = ctx();
        let f1 = s(&c, &["x", "y"], &["x", "z"]);
        let f2 = s(&c, &["y"], &["y"]);
        let fam = vec![
            SoftSet::null(&c),
            SoftSet::absolute(&c),
            f1.clone(),
            s(&c, &["z"], &["y", "z"]),
            f2.clone(),
            s(&c, &["x", "z"], &["x", "z"]),
        ];
        let r = validate(&c, &fam, Flavor::Cs).unwrap();
        assert!(!r.valid);
        let h = s(&c, &["x", "y"], &["x", "y", "z"]);
        assert!(r.violations.iter().any(|v| v.kind == ViolationKind::UnionNotMember
            && v.missing == Some(Missing::Set(h.clone()))
            && v.members.contains(&f1)
            && v.members.contains(&f2)));
    }

    #[test]
    fn violation_limit() {
        let c = ctx();
        let fam: Vec<SoftSet> = admissible_soft_sets(&c).filter(|x| x.element_count() == 1).collect();
        let r = validate_with_limit(&c, &fam, Flavor::Cs, 3).unwrap();
        assert!(!r.valid);
        assert_eq!(r.violations.len(), 3);
        assert!(r.truncated);
    }

    #[test]
    fn fiber_families() {
        let c = ctx();
        let t = SoftTopology::new(&c, &remark_38(&c), Flavor::Cs).unwrap();
        let ff = fiber_topologies(&t);
        let beta: Vec<u64> = ff[1].sets.clone();
        assert_eq!(beta, vec![0, 0b101, 0b110, 0b111]);
        assert!(!ff[1].is_crisp_topology);
        assert!(ff[0].is_crisp_topology);

        let ind = SoftTopology::indiscrete(&c);
        assert!(fiber_topologies(&ind).iter().all(|f| f.is_crisp_topology && f.sets == vec![0, 7]));
    }

    #[test]
    fn crisp_generation() {
        let c = ctx();
        let a = vec![0, 7, 0b011, 0b100];
        let b = vec![0, 7, 0b101, 0b110, 0b100];
        assert_eq!(from_crisp(&c, &[a, b]).unwrap().len(), 13);

        let c2 = Context::standard(2, 2).unwrap();
        let discrete = vec![0, 1, 2, 3];
        assert_eq!(from_crisp(&c2, &[discrete.clone(), discrete]).unwrap().len(), 10);

        let ind = from_crisp(&c, &[vec![0, 7], vec![0, 7]]).unwrap();
        assert_eq!(ind, SoftTopology::indiscrete(&c));

        assert!(matches!(
            from_crisp(&c, &[vec![0, 7, 1, 2], vec![0, 7]]),
            Err(SoftError::NotCrispTopology(_))
        ));
    }

    #[test]
    fn intersection_of_topologies() {
        let c = ctx();
        let t1 = SoftTopology::new(&c, &remark_38(&c), Flavor::Cs).unwrap();
        let t2 = SoftTopology::new(
            &c,
            &[
                SoftSet::null(&c),
                SoftSet::absolute(&c),
                s(&c, &["y"], &["y"]),
                s(&c, &["x", "z"], &["x", "z"]),
            ],
            Flavor::Cs,
        )
        .unwrap();
        assert_eq!(intersect(&t1, &t2).unwrap(), SoftTopology::indiscrete(&c));
        assert_eq!(intersect(&t1, &t1).unwrap(), t1);
        assert_eq!(intersect(&t1, &SoftTopology::indiscrete(&c)).unwrap(), SoftTopology::indiscrete(&c));
    }

    #[test]
    fn closed_sets_and_closure() {
        let c = ctx();
        let t = SoftTopology::new(&c, &remark_38(&c), Flavor::Cs).unwrap();
        let p = s(&c, &["z"], &["y"]);
        let q = s(&c, &["x", "y"], &["x"]);
        assert_eq!(
            t.closed_family().unwrap(),
            vec![SoftSet::null(&c), q.clone(), p.clone(), SoftSet::absolute(&c)]
        );
        assert_eq!(t.closure(&p).unwrap(), p);
        let pq = p.elementary_union(&q).unwrap();
        assert!(t.closure(&pq).unwrap().is_absolute());
        assert!(t.closure(&SoftSet::null(&c)).unwrap().is_null());
        assert!(t.is_soft_closed(&SoftSet::absolute(&c)).unwrap());
        assert!(matches!(t.closure(&s(&c, &[], &["x"])), Err(SoftError::MixedOperand(_))));
    }

    #[test]
    fn closed_family_matches_enumeration() {
        let c = ctx();
        let t = SoftTopology::new(&c, &remark_38(&c), Flavor::Cs).unwrap();
        let brute: Vec<SoftSet> = admissible_soft_sets(&c)
            .filter(|f| t.is_soft_closed(f).unwrap())
            .collect();
        assert_eq!(brute, t.closed_family().unwrap());
    }

    #[test]
    fn only_trivially_closed_when_complement_mixed() {
        let c = ctx();
        let f = s(&c, &["x", "y", "z"], &["x", "z"]);
        let t = SoftTopology::new(&c, &[SoftSet::null(&c), SoftSet::absolute(&c), f], Flavor::Cs).unwrap();
        assert_eq!(t.closed_family().unwrap(), vec![SoftSet::null(&c), SoftSet::absolute(&c)]);
    }

    #[test]
    fn limiting_elements_of_remark_318() {
        let c = ctx();
        let t = SoftTopology::new(
            &c,
            &[
                SoftSet::null(&c),
                SoftSet::absolute(&c),
                s(&c, &["y", "z"], &["x"]),
                s(&c, &["y"], &["y", "z"]),
                s(&c, &["y", "z"], &["x", "y", "z"]),
            ],
            Flavor::Cs,
        )
        .unwrap();
        let cset = s(&c, &["x", "z"], &["y", "z"]);
        let lim: Vec<SoftElement> = t.limiting_elements(&cset).unwrap().iter().cloned().collect();
        assert_eq!(lim, vec![el(&c, "x", "y"), el(&c, "x", "z")]);
        assert_eq!(t.weak_closure(&cset).unwrap(), cset);
        assert!(!t.is_soft_closed(&cset).unwrap());
    }

    #[test]
    fn derived_set_in_indiscrete() {
        let c = ctx();
        let t = SoftTopology::indiscrete(&c);
        let f = s(&c, &["x", "y"], &["y", "z"]);
        assert!(t.derived_set(&f).unwrap().is_absolute());
    }

    #[test]
    fn interior_examples() {
        let c = ctx();
        let ind = SoftTopology::indiscrete(&c);
        assert_eq!(ind.interior_elements(&SoftSet::absolute(&c)).unwrap().len(), 9);
        assert!(ind.interior_elements(&s(&c, &["y"], &["y"])).unwrap().is_empty());

        let t = SoftTopology::new(&c, &remark_38(&c), Flavor::Cs).unwrap();
        let f = s(&c, &["x", "y"], &["x", "z"]);
        assert_eq!(t.interior(&f).unwrap(), f);
        assert!(t.is_interior_element(&el(&c, "x", "x"), &f).unwrap());
    }

    #[test]
    fn neighbourhoods() {
        let c = ctx();
        let ind = SoftTopology::indiscrete(&c);
        let x = el(&c, "x", "y");
        assert_eq!(ind.neighborhoods(&x).unwrap(), vec![SoftSet::absolute(&c)]);
        assert!(!ind.is_nbd(&x, &SoftSet::null(&c)).unwrap());

        let f = s(&c, &["x", "z"], &["y"]);
        let t = SoftTopology::new(
            &c,
            &[SoftSet::null(&c), SoftSet::absolute(&c), f.clone(), s(&c, &["y"], &["x", "z"])],
            Flavor::Cs,
        )
        .unwrap();
        let expected: Vec<SoftSet> = admissible_soft_sets(&c)
            .filter(|g| g.is_proper() && f.is_subset_of(g).unwrap())
            .collect();
        assert_eq!(t.neighborhoods(&x).unwrap(), expected);
    }

    #[test]
    fn nbd_operator_axioms() {
        let c = Context::standard(2, 2).unwrap();
        let t = from_crisp(&c, &[vec![0, 1, 3], vec![0, 2, 3]]).unwrap();
        assert!(check_nbd_operator(&t.neighborhood_operator().unwrap()).all_hold());

        let null_only = NbdOperator::constant(&c, &[SoftSet::null(&c)]).unwrap();
        let r = check_nbd_operator(&null_only);
        assert!(!r.verdict(NbdAxiom::N2).holds);

        let full_only = NbdOperator::constant(&c, &[SoftSet::absolute(&c)]).unwrap();
        assert!(check_nbd_operator(&full_only).all_hold());
    }

    #[test]
    fn operators_need_cs_flavor() {
        let c = ctx();
        let mut fam = remark_38(&c);
        fam.push(s(&c, &[], &["z"]));
        let sn = SoftTopology::new(&c, &fam, Flavor::ShabirNaz).unwrap();
        assert!(matches!(sn.closed_family(), Err(SoftError::NotCsTopology)));
    }
}
