use std::sync::Arc;

use proptest::prelude::*;
use softtop_core::{generate, soft_elements, Context, SoftSet};

fn ctx() -> Arc<Context> {
    Context::standard(4, 3).unwrap()
}

fn soft_set() -> impl Strategy<Value = SoftSet> {
    prop::collection::vec(0u64..16, 3).prop_map(|fibers| {
        let s = SoftSet::from_masks(&ctx(), fibers).unwrap();
        if s.is_admissible() { s } else { SoftSet::null(&ctx()) }
    })
}

proptest! {
    #[test]
    fn union_is_commutative_and_associative(f in soft_set(), g in soft_set(), h in soft_set()) {
        prop_assert_eq!(f.elementary_union(&g)?, g.elementary_union(&f)?);
        prop_assert_eq!(
            f.elementary_union(&g)?.elementary_union(&h)?,
            f.elementary_union(&g.elementary_union(&h)?)?
        );
    }

    #[test]
    fn meet_is_commutative_and_below_both(f in soft_set(), g in soft_set()) {
        let meet = f.elementary_intersection(&g)?;
        prop_assert_eq!(&meet, &g.elementary_intersection(&f)?);
        prop_assert!(meet.is_subset_of(&f)?);
        prop_assert!(meet.is_subset_of(&g)?);
    }

    #[test]
    fn union_is_least_upper_bound(f in soft_set(), g in soft_set(), h in soft_set()) {
        let u = f.elementary_union(&g)?;
        prop_assert!(f.is_subset_of(&u)? && g.is_subset_of(&u)?);
        if f.is_subset_of(&h)? && g.is_subset_of(&h)? {
            prop_assert!(u.is_subset_of(&h)?);
        }
    }

    #[test]
    fn soft_elements_generate_the_set(f in soft_set()) {
        let elements = soft_elements(&f)?;
        prop_assert_eq!(elements.len() as u128, f.element_count());
        prop_assert_eq!(generate(&elements), f);
    }

    #[test]
    fn complement_is_disjoint(f in soft_set()) {
        let c = f.elementary_complement()?;
        prop_assert!(f.elementary_intersection(&c)?.is_null());
        if !c.is_null() {
            prop_assert!(f.elementary_union(&c)?.is_absolute());
        }
    }

    #[test]
    fn union_complement_is_meet_of_complements(f in soft_set(), g in soft_set()) {
        let lhs = f.elementary_union(&g)?.elementary_complement()?;
        let rhs = f.elementary_complement()?.elementary_intersection(&g.elementary_complement()?)?;
        prop_assert_eq!(lhs, rhs);
    }
}
