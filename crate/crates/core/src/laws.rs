//! Exhaustive law checks over small contexts.
//!
//! Each suite evaluates a fixed list of laws on every case in its range
//! and tallies cases, violations and the first counterexample per law.

use std::fmt;
use std::sync::Arc;

use crate::algebra;
use crate::base;
use crate::context::Context;
use crate::element::{generate, soft_elements, SoftElement, SoftElementSet};
use crate::error::Result;
use crate::map::{all_functions, Continuity, SoftFunction};
use crate::separation::{self, Interpolation, Level};
use crate::soft_set::{admissible_soft_sets, SoftSet};
use crate::topology::{check_nbd_operator, from_crisp, is_crisp_topology, validate, Flavor, SoftTopology};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: String,
    pub cases: u64,
    pub violations: u64,
    pub example: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SuiteReport {
    pub name: String,
    pub laws: Vec<LawReport>,
    /// Named occurrence counts that are observed rather than required.
    pub counts: Vec<(String, u64)>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.laws.iter().all(|l| l.violations == 0)
    }

    pub fn violated(&self) -> impl Iterator<Item = &LawReport> {
        self.laws.iter().filter(|l| l.violations > 0)
    }

    pub fn law(&self, name: &str) -> Option<&LawReport> {
        self.laws.iter().find(|l| l.law == name)
    }

    pub fn count(&self, name: &str) -> u64 {
        self.counts.iter().find(|(n, _)| n == name).map_or(0, |(_, c)| *c)
    }

    pub fn total_cases(&self) -> u64 {
        self.laws.iter().map(|l| l.cases).sum()
    }
}

impl fmt::Display for SuiteReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.name)?;
        for l in &self.laws {
            write!(f, "  {}: {} cases, {} violations", l.law, l.cases, l.violations)?;
            if let Some(e) = &l.example {
                write!(f, " (first: {e})")?;
            }
            writeln!(f)?;
        }
        for (n, c) in &self.counts {
            writeln!(f, "  {n}: {c}")?;
        }
        Ok(())
    }
}

struct Tally {
    name: String,
    laws: Vec<LawReport>,
    counts: Vec<(String, u64)>,
}

impl Tally {
    fn new(name: impl Into<String>, laws: &[&str]) -> Self {
        Tally {
            name: name.into(),
            laws: laws
                .iter()
                .map(|l| LawReport {
                    law: l.to_string(),
                    cases: 0,
                    violations: 0,
                    example: None,
                })
                .collect(),
            counts: Vec::new(),
        }
    }

    fn check(&mut self, law: &str, ok: bool, example: impl FnOnce() -> String) {
        let entry = self
            .laws
            .iter_mut()
            .find(|l| l.law == law)
            .unwrap_or_else(|| panic!("law `{law}` not registered"));
        entry.cases += 1;
        if !ok {
            entry.violations += 1;
            if entry.example.is_none() {
                entry.example = Some(example());
            }
        }
    }

    fn bump(&mut self, name: &str) {
        match self.counts.iter_mut().find(|(n, _)| n == name) {
            Some((_, c)) => *c += 1,
            None => self.counts.push((name.to_string(), 1)),
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            laws: self.laws,
            counts: self.counts,
        }
    }
}

fn show(sets: &[&SoftSet]) -> String {
    sets.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
}

pub const UNION_IS_FIBERWISE: &str = "elementary union is fiberwise union";
pub const MEET_IS_FIBERWISE: &str = "non-null elementary intersection is fiberwise";
pub const COMPLEMENT_INSIDE: &str = "elementary complement lies in relative complement";
pub const COMPLEMENT_EQUAL: &str = "non-null elementary complement equals relative complement";
pub const MEET_WITH_COMPLEMENT: &str = "meet with elementary complement is null";
pub const UNION_WITH_COMPLEMENT_INSIDE: &str = "union with elementary complement lies in absolute";
pub const UNION_WITH_COMPLEMENT: &str = "union with non-null elementary complement is absolute";
pub const INCLUSION_BY_ELEMENTS: &str = "inclusion matches soft-element inclusion";
pub const GENERATE_ROUND_TRIP: &str = "soft elements generate their soft set";
pub const GENERATED_UNION: &str = "union of generating collections generates the union";
pub const NARY_MEET_FIBERWISE: &str = "n-ary meet is fiberwise exactly when that is admissible";
pub const GENERATED_MEET: &str = "common generators span a subset of the meet";
pub const ELEMENTS_OF_MEET: &str = "soft elements of a meet are the common soft elements";
pub const ELEMENTS_OF_UNION: &str = "soft elements of a union contain both operands' elements";
pub const COMPLEMENT_INVOLUTION: &str = "elementary complement is an involution when both complements are admissible";
pub const DE_MORGAN_UNION: &str = "complement of a union is the meet of complements";
pub const DE_MORGAN_MEET: &str = "complement of a meet is the union of complements";
pub const FOLD_AGREES: &str = "binary fold of meets agrees with common soft elements";

/// Laws of the elementary algebra over every pair and triple of S(X).
///
/// `generator_subsets` additionally runs the generator laws over every
/// generating subcollection of the operands' soft elements; without it
/// only the full soft-element collections are used.
pub fn algebra_suite(ctx: &Arc<Context>, generator_subsets: bool) -> Result<SuiteReport> {
    let mut t = Tally::new(
        format!("elementary algebra, n={}, m={}", ctx.universe_size(), ctx.parameter_count()),
        &[
            UNION_IS_FIBERWISE,
            MEET_IS_FIBERWISE,
            COMPLEMENT_INSIDE,
            COMPLEMENT_EQUAL,
            MEET_WITH_COMPLEMENT,
            UNION_WITH_COMPLEMENT_INSIDE,
            UNION_WITH_COMPLEMENT,
            INCLUSION_BY_ELEMENTS,
            GENERATE_ROUND_TRIP,
            GENERATED_UNION,
            NARY_MEET_FIBERWISE,
            GENERATED_MEET,
            ELEMENTS_OF_MEET,
            ELEMENTS_OF_UNION,
            COMPLEMENT_INVOLUTION,
            DE_MORGAN_UNION,
            DE_MORGAN_MEET,
            FOLD_AGREES,
        ],
    );
    let sets: Vec<SoftSet> = admissible_soft_sets(ctx).collect();
    let elements: Vec<SoftElementSet> = sets.iter().map(soft_elements).collect::<Result<_>>()?;
    let absolute = SoftSet::absolute(ctx);

    for (f, se) in sets.iter().zip(&elements) {
        let comp = f.elementary_complement()?;
        let relative = f.pointwise_complement();
        t.check(COMPLEMENT_INSIDE, comp.is_subset_of(&relative)?, || f.to_string());
        if !comp.is_null() {
            t.check(COMPLEMENT_EQUAL, comp == relative, || f.to_string());
        }
        t.check(MEET_WITH_COMPLEMENT, f.elementary_intersection(&comp)?.is_null(), || f.to_string());
        let joined = f.elementary_union(&comp)?;
        t.check(UNION_WITH_COMPLEMENT_INSIDE, joined.is_subset_of(&absolute)?, || f.to_string());
        if !comp.is_null() {
            t.check(UNION_WITH_COMPLEMENT, joined == absolute, || f.to_string());
        }
        if relative.is_admissible() {
            let ok = comp == relative && comp.elementary_complement()? == *f;
            t.check(COMPLEMENT_INVOLUTION, ok, || f.to_string());
        }
        t.check(GENERATE_ROUND_TRIP, generate(se) == *f, || f.to_string());
    }

    for (i, f) in sets.iter().enumerate() {
        for (j, g) in sets.iter().enumerate() {
            let (sf, sg) = (&elements[i], &elements[j]);
            let pair = || show(&[f, g]);
            let union = f.elementary_union(g)?;
            let meet = f.elementary_intersection(g)?;
            t.check(UNION_IS_FIBERWISE, union == f.pointwise_union(g)?, pair);
            let fiberwise = f.pointwise_intersection(g)?;
            if !meet.is_null() {
                t.check(MEET_IS_FIBERWISE, meet == fiberwise, pair);
            }
            t.check(NARY_MEET_FIBERWISE, (meet == fiberwise) == fiberwise.is_admissible(), pair);
            if f.is_proper() && g.is_proper() {
                t.check(INCLUSION_BY_ELEMENTS, f.is_subset_of(g)? == sf.is_subset(sg), pair);
            }
            let common = sf.intersection(sg)?;
            t.check(ELEMENTS_OF_MEET, soft_elements(&meet)? == common, pair);
            let both = sf.union(sg)?;
            t.check(ELEMENTS_OF_UNION, both.is_subset(&soft_elements(&union)?), pair);
            t.check(GENERATED_UNION, generate(&both) == union, pair);
            t.check(GENERATED_MEET, generate(&common).is_subset_of(&meet)?, pair);
            let (cf, cg) = (f.elementary_complement()?, g.elementary_complement()?);
            t.check(DE_MORGAN_UNION, union.elementary_complement()? == cf.elementary_intersection(&cg)?, pair);
            t.check(DE_MORGAN_MEET, meet.elementary_complement()? == cf.elementary_union(&cg)?, pair);
        }
    }

    for (i, f) in sets.iter().enumerate() {
        for (j, g) in sets.iter().enumerate() {
            for (k, h) in sets.iter().enumerate() {
                let triple = [f, g, h];
                let shown = || show(&triple);
                let nary = algebra::elementary_intersection(ctx, triple)?;
                let fold = f.elementary_intersection(g)?.elementary_intersection(h)?;
                let common = elements[i].intersection(&elements[j])?.intersection(&elements[k])?;
                t.check(FOLD_AGREES, nary == fold && generate(&common) == fold, shown);
                let fiberwise = f.pointwise_intersection(g)?.pointwise_intersection(h)?;
                t.check(NARY_MEET_FIBERWISE, (nary == fiberwise) == fiberwise.is_admissible(), shown);
                t.check(GENERATED_MEET, generate(&common).is_subset_of(&nary)?, shown);
                let union = algebra::elementary_union(ctx, triple)?;
                let comps = [f.elementary_complement()?, g.elementary_complement()?, h.elementary_complement()?];
                let ok = union.elementary_complement()? == algebra::elementary_intersection(ctx, &comps)?;
                t.check(DE_MORGAN_UNION, ok, shown);
                let ok = nary.elementary_complement()? == algebra::elementary_union(ctx, &comps)?;
                t.check(DE_MORGAN_MEET, ok, shown);
            }
        }
    }

    if generator_subsets {
        let generators: Vec<Vec<SoftElementSet>> = elements.iter().map(generating_subsets).collect();
        for (i, f) in sets.iter().enumerate() {
            for (j, g) in sets.iter().enumerate() {
                let union = f.elementary_union(g)?;
                let meet = f.elementary_intersection(g)?;
                for b1 in &generators[i] {
                    for b2 in &generators[j] {
                        let pair = || format!("{} from {b1:?}, {} from {b2:?}", f, g);
                        t.check(GENERATED_UNION, generate(&b1.union(b2)?) == union, pair);
                        let common = generate(&b1.intersection(b2)?);
                        t.check(GENERATED_MEET, common.is_subset_of(&meet)?, pair);
                    }
                }
            }
        }
    }
    Ok(t.finish())
}

/// Subcollections of `se` that generate the same soft set.
fn generating_subsets(se: &SoftElementSet) -> Vec<SoftElementSet> {
    let all: Vec<&SoftElement> = se.iter().collect();
    let target = generate(se);
    let mut out = Vec::new();
    for mask in 0u64..(1 << all.len()) {
        let pick = all.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| (*x).clone());
        let b = SoftElementSet::new(se.context(), pick).expect("elements share the context");
        if generate(&b) == target {
            out.push(b);
        }
    }
    out
}

pub const NULL_ABSOLUTE_CLOSED: &str = "null and absolute sets are closed";
pub const CLOSED_MEETS: &str = "elementary meets of closed sets are closed";
pub const CLOSURE_FIXES_BOUNDS: &str = "closure fixes the null and absolute sets";
pub const CLOSURE_EXTENSIVE: &str = "closure contains the set";
pub const CLOSED_IFF_FIXED: &str = "closed exactly when equal to its closure";
pub const CLOSURE_IDEMPOTENT: &str = "closure is idempotent";
pub const CLOSURE_MONOTONE: &str = "closure is monotone";
pub const CLOSURE_UNION_INSIDE: &str = "union of closures lies in closure of union";
pub const CLOSURE_UNION_EQUAL: &str = "union of closures is the closure of the union when its complement is admissible";
pub const CLOSURE_MEET: &str = "closure of a meet lies in the meet of closures";
pub const INTERIOR_INSIDE: &str = "interior lies in the set";
pub const INTERIOR_MONOTONE: &str = "interior is monotone";
pub const INTERIOR_ELEMENTS_UNION: &str = "interior elements of a union include both operands' interior elements";
pub const INTERIOR_UNION: &str = "interior of a union contains the union of interiors";
pub const INTERIOR_ELEMENTS_MEET: &str = "common interior elements are interior to the meet";
pub const OPEN_IFF_INTERIOR: &str = "non-null set is open exactly when all its elements are interior";
pub const INTERIOR_IS_UNION_OF_OPENS: &str = "interior is the union of the open sets inside";
pub const INTERIOR_LARGEST_OPEN: &str = "interior is the largest open set inside";
pub const OPEN_IFF_NBD: &str = "non-null set is open exactly when it is a neighbourhood of its elements";
pub const NBD_AXIOMS: [&str; 5] = [
    "neighbourhood systems are non-empty",
    "neighbourhoods contain their element",
    "neighbourhoods are closed under supersets",
    "neighbourhoods are closed under meets",
    "neighbourhoods contain an open-like neighbourhood",
];
pub const HAZRA_FROM_CS: &str = "CS topology with admissible fiberwise meets is a Hazra topology";
pub const CS_FROM_HAZRA: &str = "admissible sets with open fibers form a CS topology";

/// Closure, interior and neighbourhood laws on each given CS topology, and
/// the transfer between CS and fiberwise topologies on the context.
pub fn topology_suite(ctx: &Arc<Context>, topologies: &[SoftTopology]) -> Result<SuiteReport> {
    let mut laws = vec![
        NULL_ABSOLUTE_CLOSED,
        CLOSED_MEETS,
        CLOSURE_FIXES_BOUNDS,
        CLOSURE_EXTENSIVE,
        CLOSED_IFF_FIXED,
        CLOSURE_IDEMPOTENT,
        CLOSURE_MONOTONE,
        CLOSURE_UNION_INSIDE,
        CLOSURE_UNION_EQUAL,
        CLOSURE_MEET,
        INTERIOR_INSIDE,
        INTERIOR_MONOTONE,
        INTERIOR_ELEMENTS_UNION,
        INTERIOR_UNION,
        INTERIOR_ELEMENTS_MEET,
        OPEN_IFF_INTERIOR,
        INTERIOR_IS_UNION_OF_OPENS,
        INTERIOR_LARGEST_OPEN,
        OPEN_IFF_NBD,
    ];
    laws.extend(NBD_AXIOMS);
    laws.extend([HAZRA_FROM_CS, CS_FROM_HAZRA]);
    let mut t = Tally::new(
        format!(
            "soft topology operators, n={}, m={}, {} topologies",
            ctx.universe_size(),
            ctx.parameter_count(),
            topologies.len()
        ),
        &laws,
    );
    let sets: Vec<SoftSet> = admissible_soft_sets(ctx).collect();
    let null = SoftSet::null(ctx);
    let absolute = SoftSet::absolute(ctx);

    for tau in topologies {
        let name = || format!("{:?}", tau.opens().iter().map(ToString::to_string).collect::<Vec<_>>());
        t.check(NULL_ABSOLUTE_CLOSED, tau.is_soft_closed(&null)? && tau.is_soft_closed(&absolute)?, name);
        let closed = tau.closed_family()?;
        for pick in 1u64..(1 << closed.len().min(16)) {
            let family = closed.iter().enumerate().filter(|(i, _)| pick >> i & 1 == 1).map(|(_, s)| s);
            let meet = algebra::elementary_intersection(ctx, family)?;
            t.check(CLOSED_MEETS, tau.is_soft_closed(&meet)?, || format!("{} in {}", meet, name()));
        }
        t.check(
            CLOSURE_FIXES_BOUNDS,
            tau.closure(&null)? == null && tau.closure(&absolute)? == absolute,
            name,
        );

        let closures: Vec<SoftSet> = sets.iter().map(|f| tau.closure(f)).collect::<Result<_>>()?;
        let interiors: Vec<SoftSet> = sets.iter().map(|f| tau.interior(f)).collect::<Result<_>>()?;
        let interior_elements: Vec<SoftElementSet> =
            sets.iter().map(|f| tau.interior_elements(f)).collect::<Result<_>>()?;
        let index = |s: &SoftSet| sets.binary_search(s).expect("admissible sets are enumerated");

        for (i, f) in sets.iter().enumerate() {
            let cl = &closures[i];
            let at = || format!("{} in {}", f, name());
            t.check(CLOSURE_EXTENSIVE, f.is_subset_of(cl)?, at);
            t.check(CLOSED_IFF_FIXED, tau.is_soft_closed(f)? == (f == cl), at);
            t.check(CLOSURE_IDEMPOTENT, closures[index(cl)] == *cl, at);
            let int = &interiors[i];
            t.check(INTERIOR_INSIDE, int.is_subset_of(f)?, at);
            let inside: Vec<&SoftSet> = tau.opens().iter().filter(|g| g.is_subset_of(f).unwrap_or(false)).collect();
            let spanned = algebra::elementary_union(ctx, inside.iter().copied())?;
            t.check(INTERIOR_IS_UNION_OF_OPENS, *int == spanned, at);
            let largest = tau.is_open(int) && inside.iter().all(|g| g.is_subset_of(int).unwrap_or(false));
            t.check(INTERIOR_LARGEST_OPEN, largest, at);
            if !f.is_null() {
                let elements = soft_elements(f)?;
                let all_interior = elements.iter().all(|x| interior_elements[i].contains(x));
                t.check(OPEN_IFF_INTERIOR, tau.is_open(f) == all_interior, at);
                let mut nbd_of_all = true;
                for x in elements.iter() {
                    nbd_of_all &= tau.is_nbd(x, f)?;
                }
                t.check(OPEN_IFF_NBD, tau.is_open(f) == nbd_of_all, at);
            }
        }

        for (i, f) in sets.iter().enumerate() {
            for (j, g) in sets.iter().enumerate() {
                let at = || format!("{}, {} in {}", f, g, name());
                let (cf, cg) = (&closures[i], &closures[j]);
                if f.is_subset_of(g)? {
                    t.check(CLOSURE_MONOTONE, cf.is_subset_of(cg)?, at);
                    t.check(INTERIOR_MONOTONE, interiors[i].is_subset_of(&interiors[j])?, at);
                }
                let union = f.elementary_union(g)?;
                let u = index(&union);
                let joined = cf.elementary_union(cg)?;
                t.check(CLOSURE_UNION_INSIDE, joined.is_subset_of(&closures[u])?, at);
                if joined.pointwise_complement().is_admissible() {
                    t.check(CLOSURE_UNION_EQUAL, joined == closures[u], at);
                }
                let meet = f.elementary_intersection(g)?;
                let mi = index(&meet);
                t.check(CLOSURE_MEET, closures[mi].is_subset_of(&cf.elementary_intersection(cg)?)?, at);
                let both = interior_elements[i].union(&interior_elements[j])?;
                t.check(INTERIOR_ELEMENTS_UNION, both.is_subset(&interior_elements[u]), at);
                let joined_int = interiors[i].elementary_union(&interiors[j])?;
                t.check(INTERIOR_UNION, joined_int.is_subset_of(&interiors[u])?, at);
                let common = interior_elements[i].intersection(&interior_elements[j])?;
                t.check(INTERIOR_ELEMENTS_MEET, common.is_subset(&interior_elements[mi]), at);
            }
        }

        let report = check_nbd_operator(&tau.neighborhood_operator()?);
        for (law, v) in NBD_AXIOMS.iter().zip(&report.verdicts) {
            t.check(law, v.holds, || format!("{:?} in {}", v.witness, name()));
        }

        let pairwise = tau.opens().iter().all(|f| {
            tau.opens()
                .iter()
                .all(|g| f.pointwise_intersection(g).is_ok_and(|m| m.is_admissible()))
        });
        if pairwise {
            t.check(HAZRA_FROM_CS, validate(ctx, tau.opens(), Flavor::Hazra)?.valid, name);
        }
    }

    let crisp = crisp_topologies(ctx);
    let mut cursor = vec![0usize; ctx.parameter_count()];
    'tuples: loop {
        let fibers: Vec<Vec<u64>> = cursor.iter().map(|&i| crisp[i].clone()).collect();
        let derived = from_crisp(ctx, &fibers)?;
        let valid = validate(ctx, derived.opens(), Flavor::Cs)?.valid;
        t.check(CS_FROM_HAZRA, valid, || format!("{fibers:?}"));
        for slot in cursor.iter_mut().rev() {
            *slot += 1;
            if *slot < crisp.len() {
                continue 'tuples;
            }
            *slot = 0;
        }
        break;
    }
    Ok(t.finish())
}

/// Every topology on the universe, as sorted lists of subset masks.
fn crisp_topologies(ctx: &Context) -> Vec<Vec<u64>> {
    let full = ctx.full_mask();
    let subsets: Vec<u64> = (0..=full).collect();
    let inner = subsets.len() - 2;
    (0u64..(1 << inner))
        .map(|pick| {
            let mut family = vec![0, full];
            family.extend((1..full).filter(|s| pick >> (s - 1) & 1 == 1));
            family.sort_unstable();
            family
        })
        .filter(|family| is_crisp_topology(full, family))
        .collect()
}

pub const IMAGE_OF_PREIMAGE: &str = "image of the preimage lies in the set";
pub const PREIMAGE_OF_IMAGE: &str = "set lies in the preimage of its image";
pub const IMAGE_MONOTONE: &str = "image is monotone";
pub const IMAGE_UNION: &str = "image of a union is the union of images";
pub const IMAGE_MEET: &str = "image of a meet lies in the meet of images";
pub const IMAGE_MEET_INJECTIVE: &str = "injective image of a meet is the meet of images";
pub const PREIMAGE_MONOTONE: &str = "preimage is monotone";
pub const PREIMAGE_UNION: &str = "preimage of a union is the union of preimages";
pub const PREIMAGE_MEET: &str = "preimage of a meet is the meet of preimages";
pub const POINTWISE_IFF_OPEN: &str = "pointwise continuity iff preimages of opens are open";
pub const OPEN_IFF_SUBBASE: &str = "preimages of opens are open iff some sub-base has open preimages";
pub const OPEN_IMPLIES_CLOSED: &str = "open preimages imply closed preimages of closed sets";
pub const HOMEO_IFF_BOTH_CONTINUOUS: &str = "homeomorphism iff bijective with both directions continuous";
pub const HOMEO_IFF_OPEN_CONTINUOUS: &str = "homeomorphism iff bijective, open and continuous";
pub const HOMEO_IFF_INVERSE: &str = "homeomorphism iff the inverse is a homeomorphism";
pub const CLOSED_WITHOUT_CONTINUITY: &str = "closed preimages without continuity";

/// Image and preimage laws for every soft function on the context, and the
/// continuity and homeomorphism equivalences for every pair of topologies.
pub fn continuity_suite(ctx: &Arc<Context>, topologies: &[SoftTopology]) -> Result<SuiteReport> {
    let mut t = Tally::new(
        format!(
            "soft functions, n={}, m={}, {} topologies",
            ctx.universe_size(),
            ctx.parameter_count(),
            topologies.len()
        ),
        &[
            IMAGE_OF_PREIMAGE,
            PREIMAGE_OF_IMAGE,
            IMAGE_MONOTONE,
            IMAGE_UNION,
            IMAGE_MEET,
            IMAGE_MEET_INJECTIVE,
            PREIMAGE_MONOTONE,
            PREIMAGE_UNION,
            PREIMAGE_MEET,
            POINTWISE_IFF_OPEN,
            OPEN_IFF_SUBBASE,
            OPEN_IMPLIES_CLOSED,
            HOMEO_IFF_BOTH_CONTINUOUS,
            HOMEO_IFF_OPEN_CONTINUOUS,
            HOMEO_IFF_INVERSE,
        ],
    );
    let sets: Vec<SoftSet> = admissible_soft_sets(ctx).collect();
    for f in all_functions(ctx, ctx)? {
        function_laws(&mut t, &f, &sets)?;
        for tau in topologies {
            for nu in topologies {
                continuity_laws(&mut t, &f, tau, nu)?;
            }
        }
    }
    Ok(t.finish())
}

fn describe(f: &SoftFunction) -> String {
    format!("{f:?}")
}

fn function_laws(t: &mut Tally, f: &SoftFunction, sets: &[SoftSet]) -> Result<()> {
    let injective = f.classify().injective;
    for a in sets {
        let at = || format!("{} under {}", a, describe(f));
        t.check(IMAGE_OF_PREIMAGE, f.image(&f.preimage(a)?)?.is_subset_of(a)?, at);
        t.check(PREIMAGE_OF_IMAGE, a.is_subset_of(&f.preimage(&f.image(a)?)?)?, at);
    }
    for a in sets {
        for b in sets {
            let at = || format!("{}, {} under {}", a, b, describe(f));
            let (fa, fb) = (f.image(a)?, f.image(b)?);
            let (pa, pb) = (f.preimage(a)?, f.preimage(b)?);
            if a.is_subset_of(b)? {
                t.check(IMAGE_MONOTONE, fa.is_subset_of(&fb)?, at);
                t.check(PREIMAGE_MONOTONE, pa.is_subset_of(&pb)?, at);
            }
            let union = a.elementary_union(b)?;
            let meet = a.elementary_intersection(b)?;
            t.check(IMAGE_UNION, f.image(&union)? == fa.elementary_union(&fb)?, at);
            let image_meet = f.image(&meet)?;
            let meet_images = fa.elementary_intersection(&fb)?;
            t.check(IMAGE_MEET, image_meet.is_subset_of(&meet_images)?, at);
            if injective {
                t.check(IMAGE_MEET_INJECTIVE, image_meet == meet_images, at);
            }
            t.check(PREIMAGE_UNION, f.preimage(&union)? == pa.elementary_union(&pb)?, at);
            t.check(PREIMAGE_MEET, f.preimage(&meet)? == pa.elementary_intersection(&pb)?, at);
        }
    }
    Ok(())
}

fn continuity_laws(t: &mut Tally, f: &SoftFunction, tau: &SoftTopology, nu: &SoftTopology) -> Result<()> {
    let at = || {
        format!(
            "{} from {:?} to {:?}",
            describe(f),
            tau.opens().iter().map(ToString::to_string).collect::<Vec<_>>(),
            nu.opens().iter().map(ToString::to_string).collect::<Vec<_>>()
        )
    };
    let pointwise = f.is_continuous(tau, nu, &Continuity::Pointwise)?;
    let open = f.is_continuous(tau, nu, &Continuity::PreimageOpen)?;
    let closed = f.is_continuous(tau, nu, &Continuity::ClosedPreimage)?;
    // Sub-bases are upward closed within the topology, so some sub-base has
    // open preimages exactly when the opens with open preimages form one.
    let good: Vec<SoftSet> = nu
        .opens()
        .iter()
        .filter(|v| f.preimage(v).is_ok_and(|p| tau.is_open(&p)))
        .cloned()
        .collect();
    let subbase = base::is_subbase(nu, &good)?.is_base;
    if subbase {
        debug_assert!(f.is_continuous(tau, nu, &Continuity::Subbase(good.clone()))?);
    }
    t.check(POINTWISE_IFF_OPEN, pointwise == open, at);
    t.check(OPEN_IFF_SUBBASE, open == subbase, at);
    if open {
        t.check(OPEN_IMPLIES_CLOSED, closed, at);
    }
    if closed && !pointwise {
        t.bump(CLOSED_WITHOUT_CONTINUITY);
    }

    let homeo = f.is_homeomorphism(tau, nu)?.holds();
    let class = f.classify();
    let inverse = f.inverse();
    let both = class.bijective()
        && pointwise
        && match &inverse {
            Some(g) => g.is_continuous(nu, tau, &Continuity::Pointwise)?,
            None => false,
        };
    t.check(HOMEO_IFF_BOTH_CONTINUOUS, homeo == both, at);
    let open_map = class.bijective() && pointwise && f.is_open_map(tau, nu)?;
    t.check(HOMEO_IFF_OPEN_CONTINUOUS, homeo == open_map, at);
    let inverse_homeo = match &inverse {
        Some(g) => g.is_homeomorphism(nu, tau)?.holds(),
        None => false,
    };
    t.check(HOMEO_IFF_INVERSE, homeo == inverse_homeo, at);
    Ok(())
}

pub const T2_IMPLIES_T1: &str = "T2 implies T1";
pub const T1_IMPLIES_T0: &str = "T1 implies T0";
pub const T1_SINGLETONS_CLOSED: &str = "singletons are closed in a T1 space";
pub const COND68_IMPLIES_REGULAR: &str = "point interpolation implies regularity";
pub const COND611_IMPLIES_NORMAL: &str = "closed-set interpolation implies normality";

/// Implications between separation properties on each given topology.
pub fn separation_suite(ctx: &Arc<Context>, topologies: &[SoftTopology]) -> Result<SuiteReport> {
    let mut t = Tally::new(
        format!(
            "separation, n={}, m={}, {} topologies",
            ctx.universe_size(),
            ctx.parameter_count(),
            topologies.len()
        ),
        &[
            T2_IMPLIES_T1,
            T1_IMPLIES_T0,
            T1_SINGLETONS_CLOSED,
            COND68_IMPLIES_REGULAR,
            COND611_IMPLIES_NORMAL,
        ],
    );
    for tau in topologies {
        let name = || format!("{:?}", tau.opens().iter().map(ToString::to_string).collect::<Vec<_>>());
        let level = |l| separation::separation_axiom(tau, l).map(|v| v.holds);
        let (t0, t1, t2) = (level(Level::T0)?, level(Level::T1)?, level(Level::T2)?);
        if t2 {
            t.check(T2_IMPLIES_T1, t1, name);
            t.bump("T2");
        }
        if t1 {
            t.check(T1_IMPLIES_T0, t0, name);
            for x in SoftElement::all(ctx) {
                let closed = tau.is_soft_closed(&separation::singleton(&x))?;
                t.check(T1_SINGLETONS_CLOSED, closed, || format!("{x} in {}", name()));
            }
            t.bump("T1");
        }
        if t0 {
            t.bump("T0");
        }
        if separation::interpolation_condition(tau, Interpolation::Regularity68)?.holds {
            t.check(COND68_IMPLIES_REGULAR, separation::is_regular(tau)?, name);
        }
        if separation::interpolation_condition(tau, Interpolation::Normality611)?.holds {
            t.check(COND611_IMPLIES_NORMAL, separation::is_normal(tau)?, name);
        }
    }
    Ok(t.finish())
}
