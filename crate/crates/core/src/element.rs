use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use crate::context::{self, Context};
use crate::error::{Result, SoftError};
use crate::soft_set::{Classification, SoftSet};

/// A choice function: one point of the universe per parameter.
#[derive(Clone)]
pub struct SoftElement {
    ctx: Arc<Context>,
    choices: Box<[u8]>,
}

impl SoftElement {
    /// Builds an element from point indices, in parameter order.
    pub fn new(ctx: &Arc<Context>, choices: impl Into<Vec<u8>>) -> Result<Self> {
        let choices: Vec<u8> = choices.into();
        if choices.len() != ctx.parameter_count() {
            return Err(SoftError::FiberCount {
                expected: ctx.parameter_count(),
                actual: choices.len(),
            });
        }
        if let Some(&c) = choices.iter().find(|&&c| c as usize >= ctx.universe_size()) {
            return Err(SoftError::UnknownLabel(format!("#{c}")));
        }
        Ok(Self::raw(ctx, choices))
    }

    pub fn from_labels<S: AsRef<str>>(ctx: &Arc<Context>, labels: &[S]) -> Result<Self> {
        let choices = labels
            .iter()
            .map(|l| ctx.point_index(l.as_ref()).map(|i| i as u8))
            .collect::<Result<Vec<_>>>()?;
        Self::new(ctx, choices)
    }

    /// The constant element choosing `label` at every parameter.
    pub fn constant(ctx: &Arc<Context>, label: &str) -> Result<Self> {
        let p = ctx.point_index(label)? as u8;
        Ok(Self::raw(ctx, vec![p; ctx.parameter_count()]))
    }

    pub(crate) fn raw(ctx: &Arc<Context>, choices: Vec<u8>) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            choices: choices.into_boxed_slice(),
        }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn choices(&self) -> &[u8] {
        &self.choices
    }

    pub fn choice(&self, parameter: usize) -> usize {
        self.choices[parameter] as usize
    }

    /// Membership: the choice lies in the fiber at every parameter.
    pub fn is_in(&self, set: &SoftSet) -> Result<bool> {
        context::ensure_same(&self.ctx, set.context())?;
        Ok(self.in_unchecked(set))
    }

    pub(crate) fn in_unchecked(&self, set: &SoftSet) -> bool {
        self.choices
            .iter()
            .zip(set.fibers())
            .all(|(&c, &f)| f >> c & 1 == 1)
    }

    /// Fiber mask of the single choice at each parameter.
    pub(crate) fn masks(&self) -> impl Iterator<Item = u64> + '_ {
        self.choices.iter().map(|&c| 1u64 << c)
    }

    /// Every soft element of the absolute soft set, in canonical order.
    pub fn all(ctx: &Arc<Context>) -> impl Iterator<Item = SoftElement> + '_ {
        let full = SoftSet::absolute(ctx);
        ProductIter::new(&full).map(move |c| SoftElement::raw(ctx, c))
    }
}

impl PartialEq for SoftElement {
    fn eq(&self, other: &Self) -> bool {
        self.choices == other.choices && context::same(&self.ctx, &other.ctx)
    }
}

impl Eq for SoftElement {}

impl std::hash::Hash for SoftElement {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.choices.hash(state);
    }
}

impl Ord for SoftElement {
    fn cmp(&self, other: &Self) -> Ordering {
        self.choices.cmp(&other.choices).then_with(|| {
            if Arc::ptr_eq(&self.ctx, &other.ctx) {
                Ordering::Equal
            } else {
                self.ctx.cmp(&other.ctx)
            }
        })
    }
}

impl PartialOrd for SoftElement {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `(a,b)`: the choice at each parameter, in parameter order.
impl fmt::Display for SoftElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let labels: Vec<&str> = self
            .choices
            .iter()
            .map(|&c| self.ctx.universe()[c as usize].as_str())
            .collect();
        write!(f, "({})", labels.join(","))
    }
}

impl fmt::Debug for SoftElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// A duplicate-free collection of soft elements over one context.
#[derive(Clone, PartialEq, Eq)]
pub struct SoftElementSet {
    ctx: Arc<Context>,
    elements: BTreeSet<SoftElement>,
}

impl SoftElementSet {
    pub fn new(ctx: &Arc<Context>, elements: impl IntoIterator<Item = SoftElement>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for e in elements {
            context::ensure_same(ctx, &e.ctx)?;
            set.insert(e);
        }
        Ok(Self {
            ctx: Arc::clone(ctx),
            elements: set,
        })
    }

    pub fn empty(ctx: &Arc<Context>) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            elements: BTreeSet::new(),
        }
    }

    pub(crate) fn from_btree(ctx: &Arc<Context>, elements: BTreeSet<SoftElement>) -> Self {
        Self {
            ctx: Arc::clone(ctx),
            elements,
        }
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, e: &SoftElement) -> bool {
        self.elements.contains(e)
    }

    pub fn iter(&self) -> impl Iterator<Item = &SoftElement> {
        self.elements.iter()
    }

    pub fn is_subset(&self, other: &SoftElementSet) -> bool {
        self.elements.is_subset(&other.elements)
    }

    pub fn union(&self, other: &SoftElementSet) -> Result<SoftElementSet> {
        context::ensure_same(&self.ctx, &other.ctx)?;
        Ok(Self::from_btree(
            &self.ctx,
            self.elements.union(&other.elements).cloned().collect(),
        ))
    }

    pub fn intersection(&self, other: &SoftElementSet) -> Result<SoftElementSet> {
        context::ensure_same(&self.ctx, &other.ctx)?;
        Ok(Self::from_btree(
            &self.ctx,
            self.elements.intersection(&other.elements).cloned().collect(),
        ))
    }
}

impl<'a> IntoIterator for &'a SoftElementSet {
    type Item = &'a SoftElement;
    type IntoIter = std::collections::btree_set::Iter<'a, SoftElement>;

    fn into_iter(self) -> Self::IntoIter {
        self.elements.iter()
    }
}

impl fmt::Debug for SoftElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements.iter()).finish()
    }
}

/// All soft elements of an admissible soft set (SE).
///
/// MIXED input is rejected rather than mapped to the empty collection.
pub fn soft_elements(s: &SoftSet) -> Result<SoftElementSet> {
    let ctx = s.context();
    match s.classify() {
        Classification::Mixed => Err(SoftError::MixedOperand(s.to_string())),
        Classification::Null => Ok(SoftElementSet::empty(ctx)),
        Classification::Proper => Ok(SoftElementSet::from_btree(
            ctx,
            ProductIter::new(s).map(|c| SoftElement::raw(ctx, c)).collect(),
        )),
    }
}

/// The soft set generated by a collection of soft elements (SS).
pub fn generate(b: &SoftElementSet) -> SoftSet {
    let mut fibers = vec![0u64; b.ctx.parameter_count()];
    for e in &b.elements {
        for (slot, mask) in fibers.iter_mut().zip(e.masks()) {
            *slot |= mask;
        }
    }
    SoftSet::raw(&b.ctx, fibers)
}

/// Cartesian product of the fibers of a soft set, as choice vectors.
struct ProductIter {
    fibers: Vec<Vec<u8>>,
    cursor: Option<Vec<usize>>,
}

impl ProductIter {
    fn new(s: &SoftSet) -> Self {
        let fibers: Vec<Vec<u8>> = s
            .fibers()
            .iter()
            .map(|&f| (0..64u8).filter(|&i| f >> i & 1 == 1).collect())
            .collect();
        let cursor = if fibers.iter().any(Vec::is_empty) {
            None
        } else {
            Some(vec![0; fibers.len()])
        };
        Self { fibers, cursor }
    }
}

impl Iterator for ProductIter {
    type Item = Vec<u8>;

    fn next(&mut self) -> Option<Vec<u8>> {
        let cur = self.cursor.as_mut()?;
        let item = cur.iter().zip(&self.fibers).map(|(&i, f)| f[i]).collect();
        let mut done = true;
        for (slot, fiber) in cur.iter_mut().zip(&self.fibers).rev() {
            if *slot + 1 < fiber.len() {
                *slot += 1;
                done = false;
                break;
            }
            *slot = 0;
        }
        if done {
            self.cursor = None;
        }
        Some(item)
    }
}
