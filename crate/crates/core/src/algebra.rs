//! Elementary union, intersection and complement on S(X).
//!
//! These are the SS-generated operations: the result is the soft set spanned
//! by the soft elements satisfying the combined membership condition. For
//! union this is always the fiberwise union. For intersection and complement
//! the spanning set is a product of fibers, so it collapses to the null soft
//! set as soon as one fiber of the fiberwise result is empty.

use std::sync::Arc;

use crate::context::{self, Context};
use crate::error::Result;
use crate::soft_set::SoftSet;

/// Elementary union of any number of admissible soft sets; empty input is null.
pub fn elementary_union<'a, I>(ctx: &Arc<Context>, sets: I) -> Result<SoftSet>
where
    I: IntoIterator<Item = &'a SoftSet>,
{
    let mut acc = vec![0u64; ctx.parameter_count()];
    for s in sets {
        context::ensure_same(ctx, s.context())?;
        s.require_admissible()?;
        for (a, f) in acc.iter_mut().zip(s.fibers()) {
            *a |= f;
        }
    }
    Ok(SoftSet::raw(ctx, acc))
}

/// Elementary intersection of any number of admissible soft sets.
///
/// The common soft elements of the operands form the product of the
/// fiberwise intersections; when that product is empty the generated soft
/// set is null. Empty input yields the absolute soft set.
pub fn elementary_intersection<'a, I>(ctx: &Arc<Context>, sets: I) -> Result<SoftSet>
where
    I: IntoIterator<Item = &'a SoftSet>,
{
    let mut acc = vec![ctx.full_mask(); ctx.parameter_count()];
    for s in sets {
        context::ensure_same(ctx, s.context())?;
        s.require_admissible()?;
        for (a, f) in acc.iter_mut().zip(s.fibers()) {
            *a &= f;
        }
    }
    Ok(collapse(ctx, acc))
}

/// Elementary complement of an admissible soft set.
pub fn elementary_complement(f: &SoftSet) -> Result<SoftSet> {
    f.require_admissible()?;
    let comp = f.pointwise_complement();
    Ok(collapse(f.context(), comp.fibers().to_vec()))
}

fn collapse(ctx: &Arc<Context>, fibers: Vec<u64>) -> SoftSet {
    if fibers.contains(&0) {
        SoftSet::null(ctx)
    } else {
        SoftSet::raw(ctx, fibers)
    }
}

impl SoftSet {
    pub fn elementary_union(&self, other: &SoftSet) -> Result<SoftSet> {
        elementary_union(self.context(), [self, other])
    }

    pub fn elementary_intersection(&self, other: &SoftSet) -> Result<SoftSet> {
        elementary_intersection(self.context(), [self, other])
    }

    pub fn elementary_complement(&self) -> Result<SoftSet> {
        elementary_complement(self)
    }

    /// Binary union for operands already known to be admissible and co-contextual.
    pub(crate) fn e_union(&self, other: &SoftSet) -> SoftSet {
        self.zip_unchecked(other, |a, b| a | b)
    }

    pub(crate) fn e_meet(&self, other: &SoftSet) -> SoftSet {
        let fibers: Vec<u64> = self
            .fibers()
            .iter()
            .zip(other.fibers())
            .map(|(a, b)| a & b)
            .collect();
        collapse(self.context(), fibers)
    }

    pub(crate) fn e_complement(&self) -> SoftSet {
        collapse(self.context(), self.pointwise_complement().fibers().to_vec())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::element::{generate, soft_elements};
    use crate::error::SoftError;

    fn ctx() -> Arc<Context> {
        Context::standard(3, 2).unwrap()
    }

    fn s(c: &Arc<Context>, a: &[&str], b: &[&str]) -> SoftSet {
        SoftSet::from_labels(c, &[a, b]).unwrap()
    }

    #[test]
    fn union_examples() {
        let c = ctx();
        let f = s(&c, &["x"], &["y"]);
        let g = s(&c, &["y"], &["z"]);
        assert_eq!(f.elementary_union(&g).unwrap(), s(&c, &["x", "y"], &["y", "z"]));
        assert_eq!(f.elementary_union(&SoftSet::null(&c)).unwrap(), f);
        let a = s(&c, &["x", "y"], &["x", "z"]);
        let b = s(&c, &["z"], &["y", "z"]);
        assert!(a.elementary_union(&b).unwrap().is_absolute());
    }

    #[test]
    fn intersection_examples() {
        let c = ctx();
        let f = s(&c, &["x"], &["y"]);
        let h = s(&c, &["y"], &["y"]);
        assert!(f.elementary_intersection(&h).unwrap().is_null());

        let y2 = s(&c, &["y"], &["x"]);
        assert_eq!(SoftSet::absolute(&c).elementary_intersection(&y2).unwrap(), y2);

        let a = s(&c, &["x", "y"], &["x", "z"]);
        let b = s(&c, &["y", "z"], &["z"]);
        assert_eq!(a.elementary_intersection(&b).unwrap(), s(&c, &["y"], &["z"]));
    }

    #[test]
    fn intersection_matches_common_elements() {
        let c = ctx();
        let a = s(&c, &["x", "y"], &["x", "z"]);
        let b = s(&c, &["y", "z"], &["z"]);
        let common = soft_elements(&a)
            .unwrap()
            .intersection(&soft_elements(&b).unwrap())
            .unwrap();
        assert_eq!(common.len(), 1);
        assert_eq!(generate(&common), a.elementary_intersection(&b).unwrap());
    }

    #[test]
    fn complement_examples() {
        let c = ctx();
        assert_eq!(
            s(&c, &["x", "y"], &["x", "z"]).elementary_complement().unwrap(),
            s(&c, &["z"], &["y"])
        );
        assert!(SoftSet::null(&c).elementary_complement().unwrap().is_absolute());
        assert!(s(&c, &["x", "y", "z"], &["x", "z"])
            .elementary_complement()
            .unwrap()
            .is_null());
    }

    #[test]
    fn mixed_operands_rejected() {
        let c = ctx();
        let mixed = s(&c, &[], &["z"]);
        let f = s(&c, &["x"], &["y"]);
        assert!(matches!(f.elementary_union(&mixed), Err(SoftError::MixedOperand(_))));
        assert!(matches!(f.elementary_intersection(&mixed), Err(SoftError::MixedOperand(_))));
        assert!(matches!(mixed.elementary_complement(), Err(SoftError::MixedOperand(_))));
    }

    #[test]
    fn empty_operand_lists() {
        let c = ctx();
        assert!(elementary_union(&c, []).unwrap().is_null());
        assert!(elementary_intersection(&c, []).unwrap().is_absolute());
    }

    #[test]
    fn distributivity_failures() {
        let c = ctx();
        let f = s(&c, &["x"], &["y"]);
        let g = s(&c, &["y"], &["z"]);
        let h = s(&c, &["y"], &["y"]);
        let lhs = f.elementary_union(&g).unwrap().elementary_intersection(&h).unwrap();
        let rhs = f
            .elementary_intersection(&h)
            .unwrap()
            .elementary_union(&g.elementary_intersection(&h).unwrap())
            .unwrap();
        assert_eq!(lhs, h);
        assert!(rhs.is_null());

        let lhs2 = f.elementary_intersection(&h).unwrap().elementary_union(&g).unwrap();
        let rhs2 = f
            .elementary_union(&g)
            .unwrap()
            .elementary_intersection(&h.elementary_union(&g).unwrap())
            .unwrap();
        assert_eq!(lhs2, g);
        assert_eq!(rhs2, s(&c, &["y"], &["y", "z"]));
    }
}
