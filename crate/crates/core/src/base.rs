//! Open bases and sub-bases of a CS soft topology.

use std::collections::BTreeSet;

use crate::context;
use crate::element::{soft_elements, SoftElement};
use crate::error::Result;
use crate::soft_set::SoftSet;
use crate::topology::SoftTopology;

/// Why a candidate family fails to be an open base.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BaseWitness {
    NotOpen(SoftSet),
    MissingNull,
    /// No member contains `element` while staying inside `open`.
    Uncovered { element: SoftElement, open: SoftSet },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseVerdict {
    pub is_base: bool,
    pub witness: Option<BaseWitness>,
}

fn check_family(t: &SoftTopology, b: &[SoftSet]) -> Result<()> {
    for s in b {
        context::ensure_same(t.context(), s.context())?;
    }
    Ok(())
}

/// Every soft element of every open set sits in a member that stays inside it.
///
/// Witnesses are the first failing (element, open) pair with elements in
/// canonical order on the outside.
pub fn is_open_base(t: &SoftTopology, b: &[SoftSet]) -> Result<BaseVerdict> {
    check_family(t, b)?;
    let fail = |w| Ok(BaseVerdict { is_base: false, witness: Some(w) });
    if let Some(s) = b.iter().find(|s| !t.is_open(s)) {
        return fail(BaseWitness::NotOpen(s.clone()));
    }
    if !b.iter().any(SoftSet::is_null) {
        return fail(BaseWitness::MissingNull);
    }
    for x in SoftElement::all(t.context()) {
        for f in t.opens().iter().filter(|f| x.in_unchecked(f)) {
            let covered = b.iter().any(|g| x.in_unchecked(g) && g.subset_unchecked(f));
            if !covered {
                return fail(BaseWitness::Uncovered {
                    element: x,
                    open: f.clone(),
                });
            }
        }
    }
    Ok(BaseVerdict {
        is_base: true,
        witness: None,
    })
}

/// First open set that is not an elementary union of members of `b`.
pub fn uncovered_open(t: &SoftTopology, b: &[SoftSet]) -> Result<Option<SoftSet>> {
    check_family(t, b)?;
    if b.iter().any(|s| !t.is_open(s)) {
        return Ok(t.opens().first().cloned());
    }
    Ok(t.opens()
        .iter()
        .find(|f| {
            // The largest union of members inside `f` is the only candidate.
            let mut acc = SoftSet::null(t.context());
            for g in b.iter().filter(|g| g.subset_unchecked(f)) {
                acc = acc.e_union(g);
            }
            acc != **f
        })
        .cloned())
}

/// Every open set is an elementary union of members of `b`; the null set is the empty union.
pub fn covers_by_unions(t: &SoftTopology, b: &[SoftSet]) -> Result<bool> {
    Ok(uncovered_open(t, b)?.is_none())
}

/// The three necessary conditions a base satisfies, checked on `b` alone.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BaseAxiomsReport {
    /// The null soft set is a member.
    pub null_member: bool,
    /// The absolute soft set is an elementary union of members.
    pub absolute_covered: bool,
    /// Every element of a pairwise elementary intersection sits in a member inside it.
    pub refinement: bool,
    pub refinement_witness: Option<(SoftSet, SoftSet, SoftElement)>,
}

impl BaseAxiomsReport {
    pub fn all_hold(&self) -> bool {
        self.null_member && self.absolute_covered && self.refinement
    }
}

pub fn base_axioms(b: &[SoftSet]) -> Result<BaseAxiomsReport> {
    let Some(first) = b.first() else {
        return Ok(BaseAxiomsReport {
            null_member: false,
            absolute_covered: false,
            refinement: true,
            refinement_witness: None,
        });
    };
    let ctx = first.context();
    for s in b {
        context::ensure_same(ctx, s.context())?;
        s.require_admissible()?;
    }
    let members: Vec<&SoftSet> = b.iter().collect::<BTreeSet<_>>().into_iter().collect();
    let null_member = members.iter().any(|s| s.is_null());
    let absolute_covered = members
        .iter()
        .fold(SoftSet::null(ctx), |acc, s| acc.e_union(s))
        .is_absolute();
    let mut refinement_witness = None;
    'outer: for (i, f1) in members.iter().enumerate() {
        for f2 in &members[i..] {
            let meet = f1.e_meet(f2);
            for x in soft_elements(&meet)?.iter() {
                let refined = members
                    .iter()
                    .any(|f3| x.in_unchecked(f3) && f3.subset_unchecked(&meet));
                if !refined {
                    refinement_witness = Some(((*f1).clone(), (*f2).clone(), x.clone()));
                    break 'outer;
                }
            }
        }
    }
    Ok(BaseAxiomsReport {
        null_member,
        absolute_covered,
        refinement: refinement_witness.is_none(),
        refinement_witness,
    })
}

/// All elementary intersections of finite subfamilies of `s` (the empty
/// intersection being the absolute set), with the null set adjoined.
pub fn intersection_closure(t: &SoftTopology, s: &[SoftSet]) -> Result<Vec<SoftSet>> {
    check_family(t, s)?;
    for m in s {
        m.require_admissible()?;
    }
    let ctx = t.context();
    let mut family: BTreeSet<SoftSet> = s.iter().cloned().collect();
    family.insert(SoftSet::absolute(ctx));
    // Binary meets suffice: the n-ary elementary intersection is the binary fold.
    loop {
        let members: Vec<SoftSet> = family.iter().cloned().collect();
        let before = family.len();
        for (i, a) in members.iter().enumerate() {
            for b in &members[i + 1..] {
                family.insert(a.e_meet(b));
            }
        }
        if family.len() == before {
            break;
        }
    }
    family.insert(SoftSet::null(ctx));
    Ok(family.into_iter().collect())
}

/// `s` is a sub-base when its finite elementary intersections form an open base.
pub fn is_subbase(t: &SoftTopology, s: &[SoftSet]) -> Result<BaseVerdict> {
    check_family(t, s)?;
    if let Some(m) = s.iter().find(|m| !t.is_open(m)) {
        return Ok(BaseVerdict {
            is_base: false,
            witness: Some(BaseWitness::NotOpen(m.clone())),
        });
    }
    is_open_base(t, &intersection_closure(t, s)?)
}
