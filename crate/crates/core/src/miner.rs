//! Exhaustive enumeration over small contexts and goal-directed
//! counterexample search.
//!
//! Soft sets are ordered by their fiber tuples and families by size, then
//! lexicographically as sorted lists. Search returns the first witness in
//! that order, so results do not depend on thread scheduling.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rayon::prelude::*;

use crate::base;
use crate::context::Context;
use crate::error::{Result, SoftError};
use crate::instance::{name_family, InstanceFile};
use crate::map::{all_functions, Continuity, SoftFunction};
use crate::separation::{self, Interpolation, Level};
use crate::soft_set::{admissible_soft_sets, all_soft_sets, SoftSet};
use crate::topology::{validate_with_limit, Flavor, SoftTopology};

pub const DEFAULT_CAP: u128 = 64;
pub const DEFAULT_MAX_SIZE: usize = 8;

macro_rules! predicates {
    ($($variant:ident => $name:literal, $kind:expr;)*) => {
        /// Registry of named predicates a goal can combine.
        #[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
        pub enum Predicate {
            $($variant,)*
        }

        impl Predicate {
            pub const ALL: &'static [Predicate] = &[$(Predicate::$variant,)*];

            pub fn name(self) -> &'static str {
                match self {
                    $(Predicate::$variant => $name,)*
                }
            }

            /// The kind of candidate the predicate is evaluated on; `None` for `ANY`.
            pub fn kind(self) -> Option<Kind> {
                match self {
                    $(Predicate::$variant => $kind,)*
                }
            }
        }
    };
}

predicates! {
    Any => "ANY", None;
    CsValid => "CS_VALID", Some(Kind::Topology);
    SnValid => "SN_VALID", Some(Kind::Topology);
    HazraValid => "HAZRA_VALID", Some(Kind::Topology);
    Regular => "REGULAR", Some(Kind::Topology);
    Normal => "NORMAL", Some(Kind::Topology);
    T0 => "T0", Some(Kind::Topology);
    T1 => "T1", Some(Kind::Topology);
    T2 => "T2", Some(Kind::Topology);
    Cond68 => "COND_68", Some(Kind::Topology);
    Cond611 => "COND_611", Some(Kind::Topology);
    ClosedUnionClosed => "CLOSED_UNION_CLOSED", Some(Kind::Topology);
    ClosureUnionEquality => "CLOSURE_UNION_EQUALITY", Some(Kind::Topology);
    Base43Condition => "BASE_43_CONDITION", Some(Kind::Base);
    Base45Conditions => "BASE_45_CONDITIONS", Some(Kind::Base);
    IsBase => "IS_BASE", Some(Kind::Base);
    Distributivity => "DISTRIBUTIVITY", Some(Kind::Algebra);
    Pointwise => "POINTWISE", Some(Kind::Map);
    PreimageOpen => "PREIMAGE_OPEN", Some(Kind::Map);
    ClosedPreimage => "CLOSED_PREIMAGE", Some(Kind::Map);
    OpenMap => "OPEN_MAP", Some(Kind::Map);
    ClosedMap => "CLOSED_MAP", Some(Kind::Map);
    Homeomorphism => "HOMEOMORPHISM", Some(Kind::Map);
}

impl Predicate {
    /// Topology predicates other than the rival-definition checks hold only on CS topologies.
    fn needs_cs(self) -> bool {
        self.kind() == Some(Kind::Topology) && !matches!(self, Predicate::SnValid | Predicate::HazraValid)
    }

    fn needs_mixed_pool(self) -> bool {
        matches!(self, Predicate::SnValid | Predicate::HazraValid)
    }
}

impl fmt::Display for Predicate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Predicate {
    type Err = SoftError;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.to_ascii_uppercase();
        Predicate::ALL
            .iter()
            .copied()
            .find(|p| p.name() == up)
            .ok_or_else(|| SoftError::InvalidGoal(format!("unknown predicate `{s}`")))
    }
}

/// What a goal searches over.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    /// A family of soft sets containing the null and absolute sets.
    Topology,
    /// A CS topology together with a subfamily of it.
    Base,
    /// An ordered triple of admissible soft sets.
    Algebra,
    /// A soft function from a context to itself between two CS topologies.
    Map,
}

/// Find a candidate satisfying `positive` and failing `negative`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinerGoal {
    pub positive: Predicate,
    pub negative: Predicate,
    pub n: usize,
    pub m: usize,
    /// Largest family size, counting the null and absolute sets.
    pub max_size: usize,
    /// Skip candidates that are not minimal under relabelling of the universe.
    pub isomorph_rejection: bool,
    /// Upper bound on the number of non-null candidate soft sets.
    pub cap: u128,
}

impl MinerGoal {
    pub fn new(positive: Predicate, negative: Predicate, n: usize, m: usize) -> Self {
        MinerGoal {
            positive,
            negative,
            n,
            m,
            max_size: DEFAULT_MAX_SIZE,
            isomorph_rejection: false,
            cap: DEFAULT_CAP,
        }
    }

    pub fn kind(&self) -> Result<Kind> {
        if self.positive == self.negative {
            return Err(SoftError::InvalidGoal("positive and negative predicates coincide".into()));
        }
        match (self.positive.kind(), self.negative.kind()) {
            (Some(a), Some(b)) if a != b => Err(SoftError::InvalidGoal(format!(
                "{} and {} apply to different kinds of candidate",
                self.positive, self.negative
            ))),
            (Some(k), _) | (None, Some(k)) => Ok(k),
            (None, None) => unreachable!("ANY is the only kindless predicate"),
        }
    }

    fn uses_mixed_pool(&self) -> bool {
        self.positive.needs_mixed_pool() || self.negative.needs_mixed_pool()
    }
}

fn pool_size(ctx: &Context, mixed: bool) -> u128 {
    let cells = (ctx.universe_size() * ctx.parameter_count()) as u32;
    if mixed {
        2u128.checked_pow(cells).map_or(u128::MAX, |v| v - 1)
    } else {
        ctx.admissible_count().saturating_sub(1)
    }
}

fn check_cap(ctx: &Context, mixed: bool, cap: u128) -> Result<()> {
    let required = pool_size(ctx, mixed);
    if required > cap {
        return Err(SoftError::CapExceeded { required, cap });
    }
    Ok(())
}

/// The members of S(X) in canonical order.
pub fn enumerate_soft_sets(ctx: &Arc<Context>, cap: u128) -> Result<Vec<SoftSet>> {
    check_cap(ctx, false, cap)?;
    Ok(admissible_soft_sets(ctx).collect())
}

/// Candidate soft sets with their operation tables, indexed in canonical order.
struct Pool {
    ctx: Arc<Context>,
    sets: Vec<SoftSet>,
    /// Binary operation results by `i * len + j`; `u32::MAX` when an operand is mixed.
    e_union: Vec<u32>,
    e_meet: Vec<u32>,
    p_union: Vec<u32>,
    p_meet: Vec<u32>,
}

impl Pool {
    fn new(ctx: &Arc<Context>, mixed: bool, cap: u128) -> Result<Self> {
        check_cap(ctx, mixed, cap)?;
        let sets: Vec<SoftSet> = if mixed {
            all_soft_sets(ctx).collect()
        } else {
            admissible_soft_sets(ctx).collect()
        };
        let index: HashMap<SoftSet, u32> = sets.iter().enumerate().map(|(i, s)| (s.clone(), i as u32)).collect();
        let len = sets.len();
        let mut e_union = vec![u32::MAX; len * len];
        let mut e_meet = vec![u32::MAX; len * len];
        let mut p_union = vec![u32::MAX; len * len];
        let mut p_meet = vec![u32::MAX; len * len];
        for (i, a) in sets.iter().enumerate() {
            for (j, b) in sets.iter().enumerate() {
                let k = i * len + j;
                if mixed {
                    p_union[k] = index[&a.zip_unchecked(b, |x, y| x | y)];
                    p_meet[k] = index[&a.zip_unchecked(b, |x, y| x & y)];
                }
                if a.is_admissible() && b.is_admissible() {
                    e_union[k] = index[&a.e_union(b)];
                    e_meet[k] = index[&a.e_meet(b)];
                }
            }
        }
        Ok(Pool {
            ctx: Arc::clone(ctx),
            sets,
            e_union,
            e_meet,
            p_union,
            p_meet,
        })
    }

    fn top(&self) -> u32 {
        (self.sets.len() - 1) as u32
    }

    fn family(&self, inner: &[u32]) -> Vec<SoftSet> {
        let mut out = Vec::with_capacity(inner.len() + 2);
        out.push(self.sets[0].clone());
        out.extend(inner.iter().map(|&i| self.sets[i as usize].clone()));
        out.push(self.sets[self.top() as usize].clone());
        out
    }

    fn tables(&self, mode: Closure) -> Option<(&[u32], &[u32])> {
        match mode {
            Closure::Elementary => Some((&self.e_union, &self.e_meet)),
            Closure::Pointwise => Some((&self.p_union, &self.p_meet)),
            Closure::None => None,
        }
    }

    /// Binary closure of `{null} ∪ inner ∪ {absolute}` under the tables of `mode`.
    fn closed(&self, inner: &[u32], mode: Closure) -> bool {
        let Some((union, meet)) = self.tables(mode) else {
            return true;
        };
        let len = self.sets.len();
        let top = self.top();
        let has = |x: u32| x == 0 || x == top || inner.contains(&x);
        if mode == Closure::Elementary && inner.iter().any(|&a| !self.sets[a as usize].is_admissible()) {
            return false;
        }
        inner.iter().enumerate().all(|(i, &a)| {
            inner[i + 1..].iter().all(|&b| {
                let k = a as usize * len + b as usize;
                union[k] != u32::MAX && has(union[k]) && has(meet[k])
            })
        })
    }
}

/// Which binary closure the enumerated families must satisfy.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Closure {
    Elementary,
    Pointwise,
    None,
}

/// Visits families of each size in canonical order and returns the first
/// non-`None` result. Families are passed as their sorted non-trivial members.
fn first_family<W, F>(pool: &Pool, mode: Closure, max_size: usize, visit: F) -> Option<W>
where
    W: Send,
    F: Fn(&[u32]) -> Option<W> + Sync,
{
    let top = pool.top();
    for size in 2..=max_size {
        let inner = size - 2;
        if inner == 0 {
            if let Some(w) = visit(&[]) {
                return Some(w);
            }
            continue;
        }
        if inner as u32 > top.saturating_sub(1) {
            break;
        }
        let found = (1..top).into_par_iter().find_map_first(|first| {
            let mut prefix = vec![first];
            if !viable(pool, mode, &prefix) {
                return None;
            }
            extend(pool, mode, inner, &mut prefix, &mut |f: &[u32]| visit(f))
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn extend<W, F>(pool: &Pool, mode: Closure, inner: usize, prefix: &mut Vec<u32>, visit: &mut F) -> Option<W>
where
    F: FnMut(&[u32]) -> Option<W>,
{
    if prefix.len() == inner {
        return if pool.closed(prefix, mode) { visit(prefix) } else { None };
    }
    let top = pool.top();
    let last = *prefix.last().expect("prefix is non-empty");
    // Leave room for the members still to be chosen.
    let bound = top - (inner - prefix.len() - 1) as u32;
    for next in last + 1..bound {
        prefix.push(next);
        if viable(pool, mode, prefix) {
            if let Some(w) = extend(pool, mode, inner, prefix, visit) {
                return Some(w);
            }
        }
        prefix.pop();
    }
    None
}

/// A prefix can still be completed: meets never exceed their operands and
/// unions never fall below them, so a missing result smaller than the last
/// member can no longer be added.
fn viable(pool: &Pool, mode: Closure, prefix: &[u32]) -> bool {
    let Some((union, meet)) = pool.tables(mode) else {
        return true;
    };
    let len = pool.sets.len();
    let top = pool.top();
    let last = *prefix.last().expect("prefix is non-empty");
    let has = |x: u32| x == 0 || x == top || prefix.contains(&x);
    for (i, &a) in prefix.iter().enumerate() {
        for &b in &prefix[i + 1..] {
            let k = a as usize * len + b as usize;
            if union[k] == u32::MAX {
                return false;
            }
            if !has(meet[k]) || (union[k] < last && !has(union[k])) {
                return false;
            }
        }
        if mode == Closure::Elementary && !pool.sets[a as usize].is_admissible() {
            return false;
        }
    }
    true
}

/// Every valid `flavor` topology with at most `max_size` members, in canonical order.
pub fn enumerate_topologies(
    ctx: &Arc<Context>,
    flavor: Flavor,
    max_size: usize,
    cap: u128,
) -> Result<Vec<SoftTopology>> {
    let pool = Pool::new(ctx, flavor != Flavor::Cs, cap)?;
    let mode = match flavor {
        Flavor::Cs => Closure::Elementary,
        Flavor::ShabirNaz => Closure::Pointwise,
        Flavor::Hazra => Closure::None,
    };
    Ok(collect_families(&pool, mode, max_size, |inner| {
        let family = pool.family(inner);
        let ok = match flavor {
            Flavor::Cs | Flavor::ShabirNaz => true,
            Flavor::Hazra => validate_with_limit(ctx, &family, flavor, 1).map(|r| r.valid).unwrap_or(false),
        };
        ok.then(|| SoftTopology::assume_valid(ctx, family, flavor))
    }))
}

fn collect_families<T, F>(pool: &Pool, mode: Closure, max_size: usize, keep: F) -> Vec<T>
where
    T: Send,
    F: Fn(&[u32]) -> Option<T> + Sync,
{
    let top = pool.top();
    let mut out = Vec::new();
    for size in 2..=max_size {
        let inner = size - 2;
        if inner == 0 {
            out.extend(keep(&[]));
            continue;
        }
        if inner as u32 > top.saturating_sub(1) {
            break;
        }
        let chunk: Vec<T> = (1..top)
            .into_par_iter()
            .flat_map_iter(|first| {
                let mut found = Vec::new();
                let mut prefix = vec![first];
                if viable(pool, mode, &prefix) {
                    let _: Option<()> = extend(pool, mode, inner, &mut prefix, &mut |f: &[u32]| {
                        found.extend(keep(f));
                        None
                    });
                }
                found
            })
            .collect();
        out.extend(chunk);
    }
    out
}

/// All permutations of `0..n` in lexicographic order.
fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut p: Vec<usize> = (0..n).collect();
    loop {
        out.push(p.clone());
        let Some(i) = (1..n).rev().find(|&i| p[i - 1] < p[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| p[j] > p[i - 1]).expect("a larger element exists");
        p.swap(i - 1, j);
        p[i..].reverse();
    }
}

fn permute_mask(mask: u64, perm: &[usize]) -> u64 {
    perm.iter()
        .enumerate()
        .filter(|(i, _)| mask >> i & 1 == 1)
        .fold(0, |acc, (_, &j)| acc | 1 << j)
}

fn permute_set(s: &SoftSet, perm: &[usize]) -> SoftSet {
    SoftSet::raw(s.context(), s.fibers().iter().map(|&f| permute_mask(f, perm)).collect())
}

fn permute_family(f: &[SoftSet], perm: &[usize]) -> Vec<SoftSet> {
    let mut out: Vec<SoftSet> = f.iter().map(|s| permute_set(s, perm)).collect();
    out.sort();
    out
}

fn permute_function(f: &SoftFunction, perm: &[usize]) -> Vec<Vec<usize>> {
    // The relabelled map sends perm(i) to perm(f(i)).
    f.tables()
        .map(|row| {
            let mut out = vec![0; row.len()];
            for (i, &j) in row.iter().enumerate() {
                out[perm[i]] = perm[j as usize];
            }
            out
        })
        .collect()
}

fn function_key(f: &SoftFunction) -> Vec<Vec<usize>> {
    f.tables().map(|r| r.iter().map(|&j| j as usize).collect()).collect()
}

/// A candidate satisfying a goal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum WitnessData {
    Family(Vec<SoftSet>),
    Base { topology: Vec<SoftSet>, candidate: Vec<SoftSet> },
    Triple([SoftSet; 3]),
    Map { function: SoftFunction, source: Vec<SoftSet>, target: Vec<SoftSet> },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub goal: MinerGoal,
    pub ctx: Arc<Context>,
    pub data: WitnessData,
}

impl Witness {
    /// The witness as an instance file: the family is named `tau`, a base
    /// candidate `B`, a triple `F`, `G`, `H`, and a map `f` from `source` to `target`.
    pub fn to_instance(&self) -> InstanceFile {
        let mut inst = InstanceFile::empty(&self.ctx);
        let mut names = BTreeMap::new();
        match &self.data {
            WitnessData::Family(family) => {
                let members = name_family(&mut inst, &mut names, family);
                inst.topologies.insert("tau".into(), members);
            }
            WitnessData::Base { topology, candidate } => {
                let members = name_family(&mut inst, &mut names, topology);
                inst.topologies.insert("tau".into(), members);
                let members = name_family(&mut inst, &mut names, candidate);
                inst.topologies.insert("B".into(), members);
            }
            WitnessData::Triple(sets) => {
                for (name, s) in ["F", "G", "H"].iter().zip(sets) {
                    inst.insert_soft_set(name, s);
                }
            }
            WitnessData::Map { function, source, target } => {
                let members = name_family(&mut inst, &mut names, source);
                inst.topologies.insert("source".into(), members);
                let members = name_family(&mut inst, &mut names, target);
                inst.topologies.insert("target".into(), members);
                inst.insert_function("f", function);
            }
        }
        inst
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Found(Box<Witness>),
    /// Every candidate within the bounds was checked.
    NotFound,
}

impl Outcome {
    pub fn witness(&self) -> Option<&Witness> {
        match self {
            Outcome::Found(w) => Some(w),
            Outcome::NotFound => None,
        }
    }
}

pub fn search(goal: &MinerGoal) -> Result<Outcome> {
    let kind = goal.kind()?;
    let ctx = Context::standard(goal.n, goal.m)?;
    let searcher = Searcher::new(goal, &ctx)?;
    let data = match kind {
        Kind::Topology => searcher.topology(),
        Kind::Base => searcher.base(),
        Kind::Algebra => searcher.algebra(),
        Kind::Map => searcher.map()?,
    };
    Ok(match data {
        Some(data) => Outcome::Found(Box::new(Witness {
            goal: goal.clone(),
            ctx,
            data,
        })),
        None => Outcome::NotFound,
    })
}

struct Searcher<'a> {
    goal: &'a MinerGoal,
    pool: Pool,
    perms: Vec<Vec<usize>>,
}

impl<'a> Searcher<'a> {
    fn new(goal: &'a MinerGoal, ctx: &Arc<Context>) -> Result<Self> {
        let pool = Pool::new(ctx, goal.uses_mixed_pool(), goal.cap)?;
        let perms = if goal.isomorph_rejection {
            permutations(ctx.universe_size())
        } else {
            Vec::new()
        };
        Ok(Searcher { goal, pool, perms })
    }

    fn ctx(&self) -> &Arc<Context> {
        &self.pool.ctx
    }

    fn holds(&self, eval: impl Fn(Predicate) -> bool) -> bool {
        eval(self.goal.positive) && !eval(self.goal.negative)
    }

    fn minimal_family(&self, family: &[SoftSet]) -> bool {
        self.perms.iter().all(|p| permute_family(family, p).as_slice() >= family)
    }

    /// Closure mode implied by the positive predicate, used to prune.
    fn pruning(&self) -> Closure {
        match self.goal.positive {
            p if p.needs_cs() => Closure::Elementary,
            Predicate::SnValid => Closure::Pointwise,
            _ => Closure::None,
        }
    }

    fn topology(&self) -> Option<WitnessData> {
        first_family(&self.pool, self.pruning(), self.goal.max_size, |inner| {
            let family = self.pool.family(inner);
            let cs = self.pool.closed(inner, Closure::Elementary);
            let t = cs.then(|| SoftTopology::assume_valid(self.ctx(), family.clone(), Flavor::Cs));
            let eval = |p: Predicate| self.topology_predicate(p, inner, &family, t.as_ref());
            (self.holds(eval) && self.minimal_family(&family)).then_some(WitnessData::Family(family))
        })
    }

    fn topology_predicate(
        &self,
        p: Predicate,
        inner: &[u32],
        family: &[SoftSet],
        t: Option<&SoftTopology>,
    ) -> bool {
        match p {
            Predicate::Any => true,
            // SN goals always run over the mixed pool, which has pointwise tables.
            Predicate::SnValid => self.pool.closed(inner, Closure::Pointwise),
            Predicate::HazraValid => validate_with_limit(self.ctx(), family, Flavor::Hazra, 1).is_ok_and(|r| r.valid),
            _ => t.is_some_and(|t| cs_predicate(p, t, &self.pool)),
        }
    }

    fn base(&self) -> Option<WitnessData> {
        first_family(&self.pool, Closure::Elementary, self.goal.max_size, |inner| {
            let family = self.pool.family(inner);
            if !self.minimal_family(&family) {
                return None;
            }
            let t = SoftTopology::assume_valid(self.ctx(), family.clone(), Flavor::Cs);
            // Candidates always carry the null set, which sits first in the family.
            subfamilies(family.len()).filter(|pick| pick.first() == Some(&0)).find_map(|pick| {
                let b: Vec<SoftSet> = pick.iter().map(|&i| family[i].clone()).collect();
                let eval = |p: Predicate| match p {
                    Predicate::Any => true,
                    Predicate::Base43Condition => base::covers_by_unions(&t, &b).unwrap_or(false),
                    Predicate::Base45Conditions => base::base_axioms(&b).is_ok_and(|r| r.all_hold()),
                    Predicate::IsBase => base::is_open_base(&t, &b).is_ok_and(|v| v.is_base),
                    _ => unreachable!("base goals use base predicates"),
                };
                self.holds(eval).then(|| WitnessData::Base {
                    topology: family.clone(),
                    candidate: b,
                })
            })
        })
    }

    fn algebra(&self) -> Option<WitnessData> {
        let sets: Vec<&SoftSet> = self.pool.sets.iter().filter(|s| s.is_admissible()).collect();
        let n = sets.len();
        (0..n).into_par_iter().find_map_first(|i| {
            for j in 0..n {
                for k in 0..n {
                    let triple = [sets[i], sets[j], sets[k]];
                    let eval = |p: Predicate| match p {
                        Predicate::Any => true,
                        Predicate::Distributivity => distributive(triple[0], triple[1], triple[2]),
                        _ => unreachable!("algebra goals use algebra predicates"),
                    };
                    if self.holds(eval) && self.minimal_triple(&triple) {
                        return Some(WitnessData::Triple(triple.map(SoftSet::clone)));
                    }
                }
            }
            None
        })
    }

    fn minimal_triple(&self, t: &[&SoftSet; 3]) -> bool {
        self.perms.iter().all(|p| {
            let image: Vec<SoftSet> = t.iter().map(|s| permute_set(s, p)).collect();
            image.iter().cmp(t.iter().copied()) != std::cmp::Ordering::Less
        })
    }

    fn map(&self) -> Result<Option<WitnessData>> {
        let ctx = self.ctx();
        let spaces = enumerate_topologies(ctx, Flavor::Cs, self.goal.max_size, self.goal.cap)?;
        let functions: Vec<SoftFunction> = all_functions(ctx, ctx)?.collect();
        Ok(spaces.par_iter().find_map_first(|source| {
            for target in &spaces {
                for f in &functions {
                    let eval = |p: Predicate| map_predicate(p, f, source, target);
                    if self.holds(eval) && self.minimal_map(f, source, target) {
                        return Some(WitnessData::Map {
                            function: f.clone(),
                            source: source.opens().to_vec(),
                            target: target.opens().to_vec(),
                        });
                    }
                }
            }
            None
        }))
    }

    fn minimal_map(&self, f: &SoftFunction, source: &SoftTopology, target: &SoftTopology) -> bool {
        let key = (source.opens().to_vec(), target.opens().to_vec(), function_key(f));
        self.perms.iter().all(|p| {
            let image = (
                permute_family(source.opens(), p),
                permute_family(target.opens(), p),
                permute_function(f, p),
            );
            image >= key
        })
    }
}

/// Subsets of `0..n` by size, then lexicographically.
fn subfamilies(n: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=n).flat_map(move |k| combinations(n, k))
}

fn combinations(n: usize, k: usize) -> impl Iterator<Item = Vec<usize>> {
    let mut next = (k <= n).then(|| (0..k).collect::<Vec<_>>());
    std::iter::from_fn(move || {
        let cur = next.take()?;
        let mut c = cur.clone();
        if let Some(i) = (0..k).rev().find(|&i| c[i] < n - k + i) {
            c[i] += 1;
            for j in i + 1..k {
                c[j] = c[j - 1] + 1;
            }
            next = Some(c);
        }
        Some(cur)
    })
}

/// Both distributive laws for the triple, with `h` distributed over `f` and `g`.
pub fn distributive(f: &SoftSet, g: &SoftSet, h: &SoftSet) -> bool {
    h.e_meet(&f.e_union(g)) == h.e_meet(f).e_union(&h.e_meet(g))
        && h.e_union(&f.e_meet(g)) == h.e_union(f).e_meet(&h.e_union(g))
}

fn cs_predicate(p: Predicate, t: &SoftTopology, pool: &Pool) -> bool {
    let sep = |level| separation::separation_axiom(t, level).is_ok_and(|v| v.holds);
    let interp = |kind| separation::interpolation_condition(t, kind).is_ok_and(|v| v.holds);
    match p {
        Predicate::CsValid => true,
        Predicate::Regular => separation::is_regular(t).unwrap_or(false),
        Predicate::Normal => separation::is_normal(t).unwrap_or(false),
        Predicate::T0 => sep(Level::T0),
        Predicate::T1 => sep(Level::T1),
        Predicate::T2 => sep(Level::T2),
        Predicate::Cond68 => interp(Interpolation::Regularity68),
        Predicate::Cond611 => interp(Interpolation::Normality611),
        Predicate::ClosedUnionClosed => closed_union_closed(t),
        Predicate::ClosureUnionEquality => closure_union_equality(t, pool),
        _ => unreachable!("not a CS topology predicate"),
    }
}

/// The elementary union of two closed sets is closed.
pub fn closed_union_closed(t: &SoftTopology) -> bool {
    let Ok(closed) = t.closed_family() else {
        return false;
    };
    closed
        .iter()
        .all(|a| closed.iter().all(|b| closed.binary_search(&a.e_union(b)).is_ok()))
}

/// Closure distributes over the elementary union of any two admissible soft sets.
fn closure_union_equality(t: &SoftTopology, pool: &Pool) -> bool {
    let Ok(closed) = t.closed_family() else {
        return false;
    };
    let sets: Vec<&SoftSet> = pool.sets.iter().filter(|s| s.is_admissible()).collect();
    let cl: Vec<SoftSet> = sets.iter().map(|s| t.closure_unchecked(s, &closed)).collect();
    let position: HashMap<&SoftSet, usize> = sets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    (0..sets.len()).all(|i| {
        (i..sets.len()).all(|j| {
            let joined = sets[i].e_union(sets[j]);
            cl[position[&joined]] == cl[i].e_union(&cl[j])
        })
    })
}

fn map_predicate(p: Predicate, f: &SoftFunction, source: &SoftTopology, target: &SoftTopology) -> bool {
    let cont = |c: Continuity| f.is_continuous(source, target, &c).unwrap_or(false);
    match p {
        Predicate::Any => true,
        Predicate::Pointwise => cont(Continuity::Pointwise),
        Predicate::PreimageOpen => cont(Continuity::PreimageOpen),
        Predicate::ClosedPreimage => cont(Continuity::ClosedPreimage),
        Predicate::OpenMap => f.is_open_map(source, target).unwrap_or(false),
        Predicate::ClosedMap => f.is_closed_map(source, target).unwrap_or(false),
        Predicate::Homeomorphism => f.is_homeomorphism(source, target).is_ok_and(|h| h.holds()),
        _ => unreachable!("not a map predicate"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::emit_instance;
    use crate::topology::validate;

    #[test]
    fn soft_set_counts() {
        for n in 1..=3 {
            for m in 1..=2 {
                let ctx = Context::standard(n, m).unwrap();
                let expected = (2u128.pow(n as u32) - 1).pow(m as u32) + 1;
                assert_eq!(enumerate_soft_sets(&ctx, DEFAULT_CAP).unwrap().len() as u128, expected);
            }
        }
        let big = Context::standard(4, 2).unwrap();
        assert!(matches!(
            enumerate_soft_sets(&big, DEFAULT_CAP),
            Err(SoftError::CapExceeded { required: 225, cap: 64 })
        ));
    }

    #[test]
    fn small_topology_lists() {
        let ctx = Context::standard(2, 1).unwrap();
        let ts = enumerate_topologies(&ctx, Flavor::Cs, 4, DEFAULT_CAP).unwrap();
        let x = SoftSet::from_labels(&ctx, &[&["x"]]).unwrap();
        let y = SoftSet::from_labels(&ctx, &[&["y"]]).unwrap();
        let has = |extra: &[&SoftSet]| ts.iter().any(|t| t.len() == extra.len() + 2 && extra.iter().all(|s| t.is_open(s)));
        assert!(has(&[]) && has(&[&x]) && has(&[&y]) && has(&[&x, &y]));
        assert_eq!(ts.len(), 4);
        let only = enumerate_topologies(&ctx, Flavor::Cs, 2, DEFAULT_CAP).unwrap();
        assert_eq!(only, vec![SoftTopology::indiscrete(&ctx)]);
    }

    /// The pruned enumeration agrees with validating every family directly.
    #[test]
    fn pruned_enumeration_matches_brute_force() {
        for (n, m) in [(2, 1), (1, 2), (2, 2)] {
            let ctx = Context::standard(n, m).unwrap();
            for flavor in [Flavor::Cs, Flavor::ShabirNaz, Flavor::Hazra] {
                let pool: Vec<SoftSet> = if flavor == Flavor::Cs {
                    admissible_soft_sets(&ctx).collect()
                } else {
                    all_soft_sets(&ctx).collect()
                };
                let inner = &pool[1..pool.len() - 1];
                let max = 6.min(inner.len() + 2);
                let mut brute = Vec::new();
                for k in 0..=max - 2 {
                    for pick in combinations(inner.len(), k) {
                        let mut fam = vec![pool[0].clone()];
                        fam.extend(pick.iter().map(|&i| inner[i].clone()));
                        fam.push(pool[pool.len() - 1].clone());
                        if validate(&ctx, &fam, flavor).unwrap().valid {
                            brute.push(fam);
                        }
                    }
                }
                let fast: Vec<Vec<SoftSet>> = enumerate_topologies(&ctx, flavor, max, 1 << 20)
                    .unwrap()
                    .into_iter()
                    .map(|t| t.opens().to_vec())
                    .collect();
                assert_eq!(fast, brute, "n={n} m={m} {flavor}");
            }
        }
    }

    #[test]
    fn includes_rival_definition_example() {
        let ctx = Context::standard(3, 2).unwrap();
        let ts = enumerate_topologies(&ctx, Flavor::Cs, 4, DEFAULT_CAP).unwrap();
        let f = SoftSet::from_labels(&ctx, &[&["x", "y"][..], &["x", "z"]]).unwrap();
        let g = SoftSet::from_labels(&ctx, &[&["z"][..], &["y", "z"]]).unwrap();
        let want = vec![SoftSet::null(&ctx), f, g, SoftSet::absolute(&ctx)];
        assert!(ts.iter().any(|t| t.opens() == want.as_slice()));
    }

    #[test]
    fn goal_validation() {
        let same = MinerGoal::new(Predicate::T1, Predicate::T1, 2, 2);
        assert!(matches!(search(&same), Err(SoftError::InvalidGoal(_))));
        let mixed = MinerGoal::new(Predicate::T1, Predicate::IsBase, 2, 2);
        assert!(matches!(search(&mixed), Err(SoftError::InvalidGoal(_))));
        assert!("nope".parse::<Predicate>().is_err());
        assert_eq!("cs_valid".parse::<Predicate>().unwrap(), Predicate::CsValid);
    }

    #[test]
    fn degenerate_universe_has_no_witness() {
        let goal = MinerGoal::new(Predicate::T1, Predicate::T2, 1, 1);
        assert_eq!(search(&goal).unwrap(), Outcome::NotFound);
    }

    #[test]
    fn cs_but_not_sn() {
        let goal = MinerGoal::new(Predicate::CsValid, Predicate::SnValid, 3, 2);
        let w = search(&goal).unwrap();
        let WitnessData::Family(fam) = &w.witness().unwrap().data else {
            panic!("expected a family");
        };
        let ctx = Context::standard(3, 2).unwrap();
        assert!(validate(&ctx, fam, Flavor::Cs).unwrap().valid);
        assert!(!validate(&ctx, fam, Flavor::ShabirNaz).unwrap().valid);
    }

    #[test]
    fn sn_but_not_cs_needs_mixed_members() {
        let goal = MinerGoal::new(Predicate::SnValid, Predicate::CsValid, 1, 2);
        let w = search(&goal).unwrap();
        let WitnessData::Family(fam) = &w.witness().unwrap().data else {
            panic!("expected a family");
        };
        assert!(fam.iter().any(|s| !s.is_admissible()));
    }

    #[test]
    fn deterministic_witness_files() {
        let goal = MinerGoal::new(Predicate::Regular, Predicate::Cond68, 2, 2);
        let a = emit_instance(&search(&goal).unwrap().witness().unwrap().to_instance());
        let b = emit_instance(&search(&goal).unwrap().witness().unwrap().to_instance());
        assert_eq!(a, b);
        assert!(crate::instance::parse_instance(&a).is_ok());
    }

    #[test]
    fn permutation_order() {
        assert_eq!(permutations(3).len(), 6);
        assert_eq!(permutations(3)[1], vec![0, 2, 1]);
        assert_eq!(combinations(4, 2).count(), 6);
        assert_eq!(combinations(2, 0).collect::<Vec<_>>(), vec![Vec::<usize>::new()]);
        assert_eq!(subfamilies(3).count(), 8);
    }

    #[test]
    fn isomorph_rejection_only_drops_relabellings() {
        let ctx = Context::standard(2, 1).unwrap();
        let plain = MinerGoal::new(Predicate::CsValid, Predicate::T0, 2, 1);
        let mut iso = plain.clone();
        iso.isomorph_rejection = true;
        // Both searches find the indiscrete space first.
        let a = search(&plain).unwrap();
        let b = search(&iso).unwrap();
        assert_eq!(a.witness().unwrap().data, b.witness().unwrap().data);
        let x = SoftSet::from_labels(&ctx, &[&["x"]]).unwrap();
        let y = SoftSet::from_labels(&ctx, &[&["y"]]).unwrap();
        let s = Searcher::new(&iso, &ctx).unwrap();
        let with = |z: &SoftSet| vec![SoftSet::null(&ctx), z.clone(), SoftSet::absolute(&ctx)];
        assert!(s.minimal_family(&with(&x)));
        assert!(!s.minimal_family(&with(&y)));
    }
}
