use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use crate::context::{self, Context};
use crate::error::{Result, SoftError};

/// Where a soft set sits relative to the admissible collection S(X).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Classification {
    /// Every fiber is empty.
    Null,
    /// Every fiber is non-empty.
    Proper,
    /// Some fibers empty, some not; outside S(X).
    Mixed,
}

impl Classification {
    pub fn is_admissible(self) -> bool {
        !matches!(self, Classification::Mixed)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PointwiseOp {
    Union,
    Intersection,
    Complement,
}

/// A soft set: one fiber (a subset of the universe) per parameter.
///
/// Fibers are bitmasks over the ordered universe, so equality, ordering and
/// hashing are exact. The canonical order compares fiber tuples
/// lexicographically in parameter order.
#[derive(Clone)]
pub struct SoftSet {
    ctx: Arc<Context>,
    fibers: Box<[u64]>,
}

impl SoftSet {
    pub fn from_masks(ctx: &Arc<Context>, fibers: impl Into<Vec<u64>>) -> Result<Self> {
        let fibers: Vec<u64> = fibers.into();
        if fibers.len() != ctx.parameter_count() {
            return Err(SoftError::FiberCount {
                expected: ctx.parameter_count(),
                actual: fibers.len(),
            });
        }
        let full = ctx.full_mask();
        if let Some(&mask) = fibers.iter().find(|&&f| f & !full != 0) {
            return Err(SoftError::FiberOutOfRange {
                mask,
                size: ctx.universe_size(),
            });
        }
        Ok(Self::raw(ctx, fibers))
    }

    /// Builds a soft set from per-parameter label lists, in parameter order.
    pub fn from_labels<S: AsRef<str>>(ctx: &Arc<Context>, fibers: &[&[S]]) -> Result<Self> {
        let masks = fibers
            .iter()
            .map(|labels| ctx.mask_of(labels))
            .collect::<Result<Vec<_>>>()?;
        Self::from_masks(ctx, masks)
    }

    pub(crate) fn raw(ctx: &Arc<Context>, fibers: Vec<u64>) -> Self {
        debug_assert_eq!(fibers.len(), ctx.parameter_count());
        Self {
            ctx: Arc::clone(ctx),
            fibers: fibers.into_boxed_slice(),
        }
    }

    /// The null soft set.
    pub fn null(ctx: &Arc<Context>) -> Self {
        Self::raw(ctx, vec![0; ctx.parameter_count()])
    }

    /// The absolute soft set.
    pub fn absolute(ctx: &Arc<Context>) -> Self {
        Self::raw(ctx, vec![ctx.full_mask(); ctx.parameter_count()])
    }

    pub fn context(&self) -> &Arc<Context> {
        &self.ctx
    }

    pub fn fibers(&self) -> &[u64] {
        &self.fibers
    }

    pub fn fiber(&self, parameter: usize) -> u64 {
        self.fibers[parameter]
    }

    pub fn classify(&self) -> Classification {
        let empty = self.fibers.iter().filter(|&&f| f == 0).count();
        if empty == self.fibers.len() {
            Classification::Null
        } else if empty == 0 {
            Classification::Proper
        } else {
            Classification::Mixed
        }
    }

    pub fn is_null(&self) -> bool {
        self.fibers.iter().all(|&f| f == 0)
    }

    pub fn is_absolute(&self) -> bool {
        let full = self.ctx.full_mask();
        self.fibers.iter().all(|&f| f == full)
    }

    pub fn is_proper(&self) -> bool {
        self.fibers.iter().all(|&f| f != 0)
    }

    pub fn is_admissible(&self) -> bool {
        self.classify().is_admissible()
    }

    /// Rejects MIXED soft sets for operations whose domain is S(X).
    pub fn require_admissible(&self) -> Result<&Self> {
        if self.is_admissible() {
            Ok(self)
        } else {
            Err(SoftError::MixedOperand(self.to_string()))
        }
    }

    /// Fiberwise inclusion.
    pub fn is_subset_of(&self, other: &SoftSet) -> Result<bool> {
        context::ensure_same(&self.ctx, &other.ctx)?;
        Ok(self.subset_unchecked(other))
    }

    pub(crate) fn subset_unchecked(&self, other: &SoftSet) -> bool {
        self.fibers
            .iter()
            .zip(other.fibers.iter())
            .all(|(a, b)| a & !b == 0)
    }

    pub fn pointwise_union(&self, other: &SoftSet) -> Result<SoftSet> {
        context::ensure_same(&self.ctx, &other.ctx)?;
        Ok(self.zip_unchecked(other, |a, b| a | b))
    }

    pub fn pointwise_intersection(&self, other: &SoftSet) -> Result<SoftSet> {
        context::ensure_same(&self.ctx, &other.ctx)?;
        Ok(self.zip_unchecked(other, |a, b| a & b))
    }

    /// Relative complement, taken fiber by fiber.
    pub fn pointwise_complement(&self) -> SoftSet {
        let full = self.ctx.full_mask();
        Self::raw(&self.ctx, self.fibers.iter().map(|f| full & !f).collect())
    }

    pub(crate) fn zip_unchecked(&self, other: &SoftSet, op: impl Fn(u64, u64) -> u64) -> SoftSet {
        Self::raw(
            &self.ctx,
            self.fibers
                .iter()
                .zip(other.fibers.iter())
                .map(|(&a, &b)| op(a, b))
                .collect(),
        )
    }

    /// Number of soft elements, `prod |F(a)|`.
    pub fn element_count(&self) -> u128 {
        self.fibers
            .iter()
            .map(|f| f.count_ones() as u128)
            .product()
    }

    /// Display with `PHI` / `FULL` for the two trivial soft sets.
    pub fn display_named(&self) -> String {
        if self.is_null() {
            "PHI".into()
        } else if self.is_absolute() {
            "FULL".into()
        } else {
            self.to_string()
        }
    }

    /// Per-parameter label lists, in parameter order.
    pub fn labels(&self) -> Vec<(&str, Vec<&str>)> {
        self.ctx
            .parameters()
            .iter()
            .zip(self.fibers.iter())
            .map(|(p, &f)| (p.as_str(), self.ctx.labels_of(f)))
            .collect()
    }
}

/// Fiberwise set operation; the result may be MIXED.
pub fn pointwise(op: PointwiseOp, f: &SoftSet, g: Option<&SoftSet>) -> Result<SoftSet> {
    match (op, g) {
        (PointwiseOp::Complement, _) => Ok(f.pointwise_complement()),
        (PointwiseOp::Union, Some(g)) => f.pointwise_union(g),
        (PointwiseOp::Intersection, Some(g)) => f.pointwise_intersection(g),
        (_, None) => Ok(f.clone()),
    }
}

/// Every soft set over the context, MIXED ones included, in canonical order.
pub fn all_soft_sets(ctx: &Arc<Context>) -> impl Iterator<Item = SoftSet> + '_ {
    FiberOdometer::new(ctx, 0).map(move |f| SoftSet::raw(ctx, f))
}

/// Members of S(X) in canonical order: the null set first, then every PROPER set.
pub fn admissible_soft_sets(ctx: &Arc<Context>) -> impl Iterator<Item = SoftSet> + '_ {
    std::iter::once(SoftSet::null(ctx)).chain(FiberOdometer::new(ctx, 1).map(move |f| SoftSet::raw(ctx, f)))
}

/// Counts through fiber tuples with every fiber in `low..=full`.
struct FiberOdometer {
    low: u64,
    full: u64,
    next: Option<Vec<u64>>,
}

impl FiberOdometer {
    fn new(ctx: &Context, low: u64) -> Self {
        Self {
            low,
            full: ctx.full_mask(),
            next: Some(vec![low; ctx.parameter_count()]),
        }
    }
}

impl Iterator for FiberOdometer {
    type Item = Vec<u64>;

    fn next(&mut self) -> Option<Vec<u64>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        for slot in succ.iter_mut().rev() {
            if *slot < self.full {
                *slot += 1;
                self.next = Some(succ);
                return Some(current);
            }
            *slot = self.low;
        }
        Some(current)
    }
}

impl PartialEq for SoftSet {
    fn eq(&self, other: &Self) -> bool {
        self.fibers == other.fibers && context::same(&self.ctx, &other.ctx)
    }
}

impl Eq for SoftSet {}

impl Hash for SoftSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.fibers.hash(state);
    }
}

impl Ord for SoftSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.fibers.cmp(&other.fibers).then_with(|| {
            if Arc::ptr_eq(&self.ctx, &other.ctx) {
                Ordering::Equal
            } else {
                self.ctx.cmp(&other.ctx)
            }
        })
    }
}

impl PartialOrd for SoftSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `⟨{x}|{y,z}⟩`, fibers in parameter order.
impl fmt::Display for SoftSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("⟨")?;
        for (i, &mask) in self.fibers.iter().enumerate() {
            if i > 0 {
                f.write_str("|")?;
            }
            if mask == 0 {
                f.write_str("∅")?;
            } else {
                write!(f, "{{{}}}", self.ctx.labels_of(mask).join(","))?;
            }
        }
        f.write_str("⟩")
    }
}

impl fmt::Debug for SoftSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> Arc<Context> {
        Context::standard(3, 2).unwrap()
    }

    fn set(ctx: &Arc<Context>, a: &[&str], b: &[&str]) -> SoftSet {
        SoftSet::from_labels(ctx, &[a, b]).unwrap()
    }

    #[test]
    fn classification() {
        let c = ctx();
        assert_eq!(set(&c, &[], &[]).classify(), Classification::Null);
        assert_eq!(set(&c, &["x"], &["y"]).classify(), Classification::Proper);
        assert_eq!(set(&c, &[], &["z"]).classify(), Classification::Mixed);
    }

    #[test]
    fn subset_examples() {
        let c = ctx();
        let y2 = set(&c, &["y"], &["x"]);
        let y1 = set(&c, &["x", "y"], &["x", "y"]);
        assert!(y2.is_subset_of(&y1).unwrap());
        assert!(SoftSet::null(&c).is_subset_of(&y2).unwrap());
        assert!(!set(&c, &["x"], &["y"])
            .is_subset_of(&set(&c, &["y"], &["y"]))
            .unwrap());
    }

    #[test]
    fn pointwise_examples() {
        let c = ctx();
        let f = set(&c, &["x", "y"], &["x", "z"]);
        let g = set(&c, &["z"], &["y", "z"]);
        let meet = pointwise(PointwiseOp::Intersection, &f, Some(&g)).unwrap();
        assert_eq!(meet, set(&c, &[], &["z"]));
        assert_eq!(meet.classify(), Classification::Mixed);

        let h = set(&c, &["y", "z"], &["x", "z"]);
        let comp = pointwise(PointwiseOp::Complement, &h, None).unwrap();
        assert_eq!(comp, set(&c, &["x"], &["y"]));

        let phi = SoftSet::null(&c);
        assert_eq!(pointwise(PointwiseOp::Union, &phi, Some(&f)).unwrap(), f);
    }

    #[test]
    fn cross_context_rejected() {
        let a = Context::standard(3, 2).unwrap();
        let b = Context::standard(2, 2).unwrap();
        let r = SoftSet::null(&a).is_subset_of(&SoftSet::null(&b));
        assert!(matches!(r, Err(SoftError::ContextMismatch)));
    }

    #[test]
    fn enumeration_counts() {
        for n in 1..=3 {
            for m in 1..=2 {
                let c = Context::standard(n, m).unwrap();
                assert_eq!(admissible_soft_sets(&c).count() as u128, c.admissible_count());
                assert_eq!(all_soft_sets(&c).count(), 1 << (n * m));
            }
        }
    }

    #[test]
    fn canonical_order_is_sorted() {
        let c = ctx();
        let v: Vec<_> = admissible_soft_sets(&c).collect();
        assert!(v.windows(2).all(|w| w[0] < w[1]));
        assert!(v[0].is_null());
        assert!(v.last().unwrap().is_absolute());
    }

    #[test]
    fn display() {
        let c = ctx();
        assert_eq!(set(&c, &["x"], &["y", "z"]).to_string(), "⟨{x}|{y,z}⟩");
        assert_eq!(set(&c, &[], &["z"]).to_string(), "⟨∅|{z}⟩");
        assert_eq!(SoftSet::absolute(&c).display_named(), "FULL");
    }
}
