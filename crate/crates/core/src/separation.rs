//! Separation axioms over totally distinct soft elements, regularity,
//! normality and the two closure interpolation conditions.

use std::fmt;

use crate::context;
use crate::element::SoftElement;
use crate::error::Result;
use crate::soft_set::SoftSet;
use crate::topology::SoftTopology;

/// Distinct choices at every parameter.
pub fn totally_distinct(x: &SoftElement, y: &SoftElement) -> Result<bool> {
    context::ensure_same(x.context(), y.context())?;
    Ok(distinct_unchecked(x, y))
}

fn distinct_unchecked(x: &SoftElement, y: &SoftElement) -> bool {
    x.choices().iter().zip(y.choices()).all(|(a, b)| a != b)
}

/// The soft set whose only soft element is `x`.
pub fn singleton(x: &SoftElement) -> SoftSet {
    SoftSet::raw(x.context(), x.masks().collect())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Level {
    T0,
    T1,
    T2,
}

impl Level {
    pub fn name(self) -> &'static str {
        match self {
            Level::T0 => "T0",
            Level::T1 => "T1",
            Level::T2 => "T2",
        }
    }
}

impl fmt::Display for Level {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeparationVerdict {
    pub holds: bool,
    /// First totally distinct pair that no open set separates.
    pub witness: Option<(SoftElement, SoftElement)>,
}

/// `x` lies in `f` and `y` outside it at every parameter.
fn keeps_apart(f: &SoftSet, x: &SoftElement, y: &SoftElement) -> bool {
    x.masks()
        .zip(y.masks())
        .zip(f.fibers())
        .all(|((mx, my), &fib)| fib & mx != 0 && fib & my == 0)
}

/// At every parameter, one of the two lies in `f` and the other does not.
fn splits(f: &SoftSet, x: &SoftElement, y: &SoftElement) -> bool {
    x.masks()
        .zip(y.masks())
        .zip(f.fibers())
        .all(|((mx, my), &fib)| (fib & mx != 0) != (fib & my != 0))
}

fn pair_separated(t: &SoftTopology, level: Level, x: &SoftElement, y: &SoftElement) -> bool {
    let opens = t.opens();
    match level {
        Level::T0 => opens.iter().any(|f| splits(f, x, y)),
        Level::T1 => {
            opens.iter().any(|f| keeps_apart(f, x, y)) && opens.iter().any(|g| keeps_apart(g, y, x))
        }
        Level::T2 => opens.iter().filter(|f| x.in_unchecked(f)).any(|f| {
            opens
                .iter()
                .filter(|g| y.in_unchecked(g))
                .any(|g| f.fibers().iter().zip(g.fibers()).all(|(a, b)| a & b == 0))
        }),
    }
}

pub fn separation_axiom(t: &SoftTopology, level: Level) -> Result<SeparationVerdict> {
    t.closed_family()?;
    let elements: Vec<SoftElement> = SoftElement::all(t.context()).collect();
    for (i, x) in elements.iter().enumerate() {
        for y in &elements[i + 1..] {
            if distinct_unchecked(x, y) && !pair_separated(t, level, x, y) {
                return Ok(SeparationVerdict {
                    holds: false,
                    witness: Some((x.clone(), y.clone())),
                });
            }
        }
    }
    Ok(SeparationVerdict {
        holds: true,
        witness: None,
    })
}

/// What a failed regularity or normality check could not separate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SeparationFailure {
    /// A closed set and a soft element outside it at every parameter.
    PointAndClosed { element: SoftElement, closed: SoftSet },
    /// Two closed sets with empty fiberwise intersection.
    TwoClosed(SoftSet, SoftSet),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularityVerdict {
    pub holds: bool,
    pub witness: Option<SeparationFailure>,
}

/// Opens `g ⊇ a` and `h ⊇ b` exist with empty elementary intersection.
fn opens_apart(t: &SoftTopology, a: &SoftSet, b: &SoftSet) -> bool {
    let opens = t.opens();
    opens.iter().filter(|g| a.subset_unchecked(g)).any(|g| {
        opens
            .iter()
            .filter(|h| b.subset_unchecked(h))
            .any(|h| g.e_meet(h).is_null())
    })
}

/// Closed `K` and `x` missing `K` at every parameter are held apart by
/// opens whose elementary intersection is null.
pub fn regularity(t: &SoftTopology) -> Result<RegularityVerdict> {
    let closed = t.closed_family()?;
    for k in &closed {
        for x in SoftElement::all(t.context()) {
            let outside = x.masks().zip(k.fibers()).all(|(m, f)| m & f == 0);
            if outside && !opens_apart(t, k, &singleton(&x)) {
                return Ok(RegularityVerdict {
                    holds: false,
                    witness: Some(SeparationFailure::PointAndClosed { element: x, closed: k.clone() }),
                });
            }
        }
    }
    Ok(RegularityVerdict { holds: true, witness: None })
}

/// Closed sets with empty fiberwise intersection are held apart by opens
/// whose elementary intersection is null.
pub fn normality(t: &SoftTopology) -> Result<RegularityVerdict> {
    let closed = t.closed_family()?;
    for (i, f) in closed.iter().enumerate() {
        for g in &closed[i..] {
            let disjoint = f.fibers().iter().zip(g.fibers()).all(|(a, b)| a & b == 0);
            if disjoint && !opens_apart(t, f, g) {
                return Ok(RegularityVerdict {
                    holds: false,
                    witness: Some(SeparationFailure::TwoClosed(f.clone(), g.clone())),
                });
            }
        }
    }
    Ok(RegularityVerdict { holds: true, witness: None })
}

pub fn is_regular(t: &SoftTopology) -> Result<bool> {
    Ok(regularity(t)?.holds)
}

pub fn is_normal(t: &SoftTopology) -> Result<bool> {
    Ok(normality(t)?.holds)
}

pub fn is_t3(t: &SoftTopology) -> Result<bool> {
    Ok(is_regular(t)? && separation_axiom(t, Level::T1)?.holds)
}

pub fn is_t4(t: &SoftTopology) -> Result<bool> {
    Ok(is_normal(t)? && separation_axiom(t, Level::T1)?.holds)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Interpolation {
    /// Every open set around a soft element contains the closure of a smaller open set around it.
    Regularity68,
    /// The same with a closed set in place of the soft element.
    Normality611,
}

impl Interpolation {
    pub fn name(self) -> &'static str {
        match self {
            Interpolation::Regularity68 => "REGULARITY_68",
            Interpolation::Normality611 => "NORMALITY_611",
        }
    }
}

/// The object an interpolation condition failed to shrink into `open`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InterpolationWitness {
    Element { element: SoftElement, open: SoftSet },
    Closed { closed: SoftSet, open: SoftSet },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InterpolationVerdict {
    pub holds: bool,
    pub witness: Option<InterpolationWitness>,
}

pub fn interpolation_condition(t: &SoftTopology, kind: Interpolation) -> Result<InterpolationVerdict> {
    let closed = t.closed_family()?;
    let closures: Vec<SoftSet> = t.opens().iter().map(|v| t.closure_unchecked(v, &closed)).collect();
    // Some open V contains `inner` and has its closure inside `u`.
    let shrinks = |inner: &SoftSet, u: &SoftSet| {
        t.opens()
            .iter()
            .zip(&closures)
            .any(|(v, cl)| inner.subset_unchecked(v) && cl.subset_unchecked(u))
    };
    let fail = |w| Ok(InterpolationVerdict { holds: false, witness: Some(w) });
    match kind {
        Interpolation::Regularity68 => {
            for x in SoftElement::all(t.context()) {
                let point = singleton(&x);
                for u in t.opens().iter().filter(|u| x.in_unchecked(u)) {
                    if !shrinks(&point, u) {
                        return fail(InterpolationWitness::Element { element: x, open: u.clone() });
                    }
                }
            }
        }
        Interpolation::Normality611 => {
            for k in &closed {
                for u in t.opens().iter().filter(|u| k.subset_unchecked(u)) {
                    if !shrinks(k, u) {
                        return fail(InterpolationWitness::Closed { closed: k.clone(), open: u.clone() });
                    }
                }
            }
        }
    }
    Ok(InterpolationVerdict { holds: true, witness: None })
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::context::Context;
    use crate::topology::{from_crisp, Flavor};

    fn s(c: &Arc<Context>, a: &[&str], b: &[&str]) -> SoftSet {
        SoftSet::from_labels(c, &[a, b]).unwrap()
    }

    fn e(c: &Arc<Context>, a: &str, b: &str) -> SoftElement {
        SoftElement::from_labels(c, &[a, b]).unwrap()
    }

    fn topology(c: &Arc<Context>, sets: &[SoftSet]) -> SoftTopology {
        let mut opens = vec![SoftSet::null(c), SoftSet::absolute(c)];
        opens.extend(sets.iter().cloned());
        SoftTopology::new(c, &opens, Flavor::Cs).unwrap()
    }

    fn example_67() -> (Arc<Context>, SoftTopology) {
        let c = Context::standard(3, 2).unwrap();
        let t = topology(&c, &[s(&c, &["x", "z"], &["y"]), s(&c, &["y"], &["x", "z"])]);
        (c, t)
    }

    fn example_69() -> (Arc<Context>, SoftTopology, Vec<SoftSet>) {
        let c = Context::standard(2, 2).unwrap();
        let f = vec![
            s(&c, &["x", "y"], &["x"]),
            s(&c, &["y"], &["x", "y"]),
            s(&c, &["y"], &["x"]),
            s(&c, &["x"], &["y"]),
        ];
        (Arc::clone(&c), topology(&c, &f), f)
    }

    fn example_612() -> (Arc<Context>, SoftTopology, Vec<SoftSet>) {
        let c = Context::standard(2, 2).unwrap();
        let f = vec![s(&c, &["x", "y"], &["x"]), s(&c, &["x"], &["y"]), s(&c, &["y"], &["x"])];
        (Arc::clone(&c), topology(&c, &f[..2]), f)
    }

    #[test]
    fn distinctness_and_singletons() {
        let c = Context::standard(3, 2).unwrap();
        assert!(totally_distinct(&e(&c, "x", "y"), &e(&c, "y", "x")).unwrap());
        assert!(!totally_distinct(&e(&c, "x", "y"), &e(&c, "x", "z")).unwrap());
        assert!(totally_distinct(&e(&c, "x", "x"), &e(&c, "y", "z")).unwrap());
        assert_eq!(singleton(&e(&c, "x", "y")), s(&c, &["x"], &["y"]));
        let one = crate::element::soft_elements(&singleton(&e(&c, "z", "x"))).unwrap();
        assert_eq!(one.iter().cloned().collect::<Vec<_>>(), vec![e(&c, "z", "x")]);
    }

    #[test]
    fn discrete_is_t2_and_normal() {
        let c = Context::standard(2, 2).unwrap();
        let t = from_crisp(&c, &[vec![0, 1, 2, 3], vec![0, 1, 2, 3]]).unwrap();
        for level in [Level::T0, Level::T1, Level::T2] {
            assert!(separation_axiom(&t, level).unwrap().holds);
        }
        assert!(is_normal(&t).unwrap());
        assert!(is_t4(&t).unwrap());
    }

    #[test]
    fn indiscrete_space() {
        let c = Context::standard(2, 2).unwrap();
        let t = SoftTopology::indiscrete(&c);
        let v = separation_axiom(&t, Level::T0).unwrap();
        assert!(!v.holds);
        assert_eq!(v.witness, Some((e(&c, "x", "x"), e(&c, "y", "y"))));
        assert!(is_regular(&t).unwrap());
        assert!(is_normal(&t).unwrap());
        assert!(!is_t3(&t).unwrap());
        for kind in [Interpolation::Regularity68, Interpolation::Normality611] {
            assert!(interpolation_condition(&t, kind).unwrap().holds);
        }
    }

    #[test]
    fn example_67_axioms() {
        let (c, t) = example_67();
        assert!(is_regular(&t).unwrap());
        assert!(!separation_axiom(&t, Level::T1).unwrap().holds);
        // No open set puts x and z on opposite sides at either parameter.
        let v = separation_axiom(&t, Level::T0).unwrap();
        assert!(!v.holds);
        let (a, b) = v.witness.unwrap();
        assert!(totally_distinct(&a, &b).unwrap());
        assert_eq!((a, b), (e(&c, "x", "x"), e(&c, "y", "z")));
    }

    #[test]
    fn example_69_regular_without_interpolation() {
        let (c, t, f) = example_69();
        assert!(is_regular(&t).unwrap());
        let v = interpolation_condition(&t, Interpolation::Regularity68).unwrap();
        assert_eq!(
            v.witness,
            Some(InterpolationWitness::Element {
                element: SoftElement::constant(&c, "x").unwrap(),
                open: f[0].clone(),
            })
        );
    }

    #[test]
    fn example_612_normal_without_interpolation() {
        let (_, t, f) = example_612();
        assert!(is_normal(&t).unwrap());
        let v = interpolation_condition(&t, Interpolation::Normality611).unwrap();
        assert!(!v.holds);
        assert_eq!(
            v.witness,
            Some(InterpolationWitness::Closed {
                closed: f[2].clone(),
                open: f[0].clone(),
            })
        );
    }
}
