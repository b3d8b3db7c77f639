//! Worked examples shipped with the crate, each replayed against its
//! recorded expectations.

use std::fmt;
use std::sync::Arc;

use crate::base::{self, BaseWitness};
use crate::context::Context;
use crate::element::{generate, soft_elements, SoftElement, SoftElementSet};
use crate::instance::{parse_instance, InstanceFile};
use crate::map::Continuity;
use crate::separation::{self, Interpolation, InterpolationWitness, Level};
use crate::soft_set::SoftSet;
use crate::topology::{validate, Flavor, Missing, SoftTopology};

/// A named instance file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Fixture {
    pub id: String,
    pub text: String,
}

impl Fixture {
    pub fn new(id: impl Into<String>, text: impl Into<String>) -> Self {
        Fixture {
            id: id.into(),
            text: text.into(),
        }
    }
}

macro_rules! builtin {
    ($($id:literal),* $(,)?) => {
        &[$(($id, include_str!(concat!("../fixtures/", $id, ".json"))),)*]
    };
}

const BUILTIN: &[(&str, &str)] = builtin![
    "FIX-2.18", "FIX-2.20", "FIX-2.22", "FIX-3.6", "FIX-3.8", "FIX-3.12", "FIX-3.15",
    "FIX-3.18", "FIX-4.2", "FIX-5.9", "FIX-6.7", "FIX-6.9", "FIX-6.12",
];

/// The shipped fixtures in catalog order.
pub fn catalog() -> Vec<Fixture> {
    BUILTIN.iter().map(|(id, text)| Fixture::new(*id, *text)).collect()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FixtureReport {
    pub id: String,
    pub checks: Vec<Check>,
}

impl FixtureReport {
    pub fn passed(&self) -> bool {
        !self.checks.is_empty() && self.checks.iter().all(|c| c.passed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CorpusReport {
    pub fixtures: Vec<FixtureReport>,
}

impl CorpusReport {
    pub fn passed(&self) -> bool {
        self.fixtures.iter().all(FixtureReport::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FixtureReport> {
        self.fixtures.iter().filter(|f| !f.passed())
    }
}

pub fn verify_corpus(fixtures: &[Fixture]) -> CorpusReport {
    CorpusReport {
        fixtures: fixtures.iter().map(verify_fixture).collect(),
    }
}

pub fn verify_fixture(fixture: &Fixture) -> FixtureReport {
    let mut c = Checker::default();
    match parse_instance(&fixture.text) {
        Err(errors) => {
            let detail = errors.iter().map(ToString::to_string).collect::<Vec<_>>().join("; ");
            c.fail("parse", detail);
        }
        Ok(inst) => {
            let run = match fixture.id.as_str() {
                "FIX-2.18" => fix_2_18,
                "FIX-2.20" => fix_2_20,
                "FIX-2.22" => fix_2_22,
                "FIX-3.6" => fix_3_6,
                "FIX-3.8" => fix_3_8,
                "FIX-3.12" => fix_3_12,
                "FIX-3.15" => fix_3_15,
                "FIX-3.18" => fix_3_18,
                "FIX-4.2" => fix_4_2,
                "FIX-5.9" => fix_5_9,
                "FIX-6.7" => fix_6_7,
                "FIX-6.9" => fix_6_9,
                "FIX-6.12" => fix_6_12,
                _ => unknown,
            };
            if let Err(e) = run(&Env::new(&inst), &mut c) {
                c.fail("resolve", e);
            }
        }
    }
    FixtureReport {
        id: fixture.id.clone(),
        checks: c.checks,
    }
}

#[derive(Default)]
struct Checker {
    checks: Vec<Check>,
}

impl Checker {
    fn check(&mut self, name: &str, passed: bool, detail: impl Into<String>) {
        self.checks.push(Check {
            name: name.to_string(),
            passed,
            detail: detail.into(),
        });
    }

    fn fail(&mut self, name: &str, detail: impl Into<String>) {
        self.check(name, false, detail);
    }

    fn truth(&mut self, name: &str, actual: bool, expected: bool) {
        self.check(name, actual == expected, format!("{actual}, expected {expected}"));
    }

    fn equal<T: PartialEq + fmt::Display>(&mut self, name: &str, actual: &T, expected: &T) {
        self.check(name, actual == expected, format!("{actual}, expected {expected}"));
    }

    fn differ<T: PartialEq + fmt::Display>(&mut self, name: &str, left: &T, right: &T) {
        self.check(name, left != right, format!("{left} vs {right}"));
    }
}

type Outcome = std::result::Result<(), String>;

struct Env<'a> {
    inst: &'a InstanceFile,
}

impl<'a> Env<'a> {
    fn new(inst: &'a InstanceFile) -> Self {
        Env { inst }
    }

    fn ctx(&self) -> std::result::Result<Arc<Context>, String> {
        self.inst.source_context().map_err(err)
    }

    fn set(&self, name: &str) -> std::result::Result<SoftSet, String> {
        self.inst.soft_set(&self.ctx()?, name).map_err(err)
    }

    fn family(&self, name: &str) -> std::result::Result<Vec<SoftSet>, String> {
        self.inst.family(&self.ctx()?, name).map_err(err)
    }

    fn topology(&self, name: &str) -> std::result::Result<SoftTopology, String> {
        self.inst.topology(&self.ctx()?, name, Flavor::Cs).map_err(err)
    }

    /// A soft set with one point per fiber, read as a soft element.
    fn element(&self, name: &str) -> std::result::Result<SoftElement, String> {
        let set = self.set(name)?;
        let elements = soft_elements(&set).map_err(err)?;
        let first = elements.iter().next().cloned();
        match first {
            Some(x) if elements.len() == 1 => Ok(x),
            _ => Err(format!("`{name}` is not a single soft element")),
        }
    }

    /// The soft elements named by a family of singleton soft sets.
    fn elements(&self, family: &str) -> std::result::Result<SoftElementSet, String> {
        let names = self
            .inst
            .topologies
            .get(family)
            .ok_or_else(|| format!("unknown name `{family}`"))?;
        let xs = names.iter().map(|n| self.element(n)).collect::<std::result::Result<Vec<_>, _>>()?;
        SoftElementSet::new(&self.ctx()?, xs).map_err(err)
    }
}

fn err(e: impl fmt::Display) -> String {
    e.to_string()
}

struct Elements<'a>(&'a SoftElementSet);

impl fmt::Display for Elements<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let items: Vec<String> = self.0.iter().map(ToString::to_string).collect();
        write!(f, "{{{}}}", items.join(", "))
    }
}

impl PartialEq for Elements<'_> {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

fn unknown(_: &Env, c: &mut Checker) -> Outcome {
    c.fail("catalog", "no expectations recorded for this fixture");
    Ok(())
}

fn fix_2_18(env: &Env, c: &mut Checker) -> Outcome {
    let ctx = env.ctx()?;
    let b1 = env.elements("B1")?;
    let b2 = env.elements("B2")?;
    let y1 = env.set("Y1")?;
    let y2 = env.set("Y2")?;
    c.equal("Y1 = SS(B1)", &generate(&b1), &y1);
    c.equal("Y2 = SS(B2)", &generate(&b2), &y2);
    let common = b1.intersection(&b2).map_err(err)?;
    c.equal("SS(B1 ∩ B2) = PHI", &generate(&common), &SoftSet::null(&ctx));
    let meet = y1.elementary_intersection(&y2).map_err(err)?;
    c.equal("Y1 ⋒ Y2 = Y2", &meet, &y2);
    c.differ("Y1 ⋒ Y2 ≠ SS(B1 ∩ B2)", &meet, &generate(&common));
    Ok(())
}

fn fix_2_20(env: &Env, c: &mut Checker) -> Outcome {
    let y = env.set("Y")?;
    let z = env.set("Z")?;
    let parts = soft_elements(&y).map_err(err)?.union(&soft_elements(&z).map_err(err)?).map_err(err)?;
    let joined = soft_elements(&y.elementary_union(&z).map_err(err)?).map_err(err)?;
    c.equal("SE(Y) ∪ SE(Z)", &Elements(&parts), &Elements(&env.elements("expected_union")?));
    c.equal(
        "SE(Y ⋓ Z)",
        &Elements(&joined),
        &Elements(&env.elements("expected_elementary_union")?),
    );
    c.equal("|SE(Y) ∪ SE(Z)|", &parts.len(), &2);
    c.equal("|SE(Y ⋓ Z)|", &joined.len(), &4);
    Ok(())
}

fn fix_2_22(env: &Env, c: &mut Checker) -> Outcome {
    let ctx = env.ctx()?;
    let (f, g, h) = (env.set("F")?, env.set("G")?, env.set("H")?);
    let u = |a: &SoftSet, b: &SoftSet| a.elementary_union(b).map_err(err);
    let m = |a: &SoftSet, b: &SoftSet| a.elementary_intersection(b).map_err(err);

    let left = m(&u(&f, &g)?, &h)?;
    let right = u(&m(&f, &h)?, &m(&g, &h)?)?;
    c.equal("(F ⋓ G) ⋒ H = H", &left, &h);
    c.equal("(F ⋒ H) ⋓ (G ⋒ H) = PHI", &right, &SoftSet::null(&ctx));
    c.differ("⋒ does not distribute over ⋓", &left, &right);

    let left = u(&m(&f, &h)?, &g)?;
    let right = m(&u(&f, &g)?, &u(&h, &g)?)?;
    let expected = SoftSet::from_labels(&ctx, &[&["y"], &["y", "z"]]).map_err(err)?;
    c.equal("(F ⋒ H) ⋓ G = G", &left, &g);
    c.equal("(F ⋓ G) ⋒ (H ⋓ G)", &right, &expected);
    c.differ("⋓ does not distribute over ⋒", &left, &right);
    Ok(())
}

fn fix_3_6(env: &Env, c: &mut Checker) -> Outcome {
    let t = env.topology("tau")?;
    let (fc, gc) = (env.set("Fc")?, env.set("Gc")?);
    c.equal("F complement", &env.set("F")?.elementary_complement().map_err(err)?, &fc);
    c.equal("G complement", &env.set("G")?.elementary_complement().map_err(err)?, &gc);
    let ctx = env.ctx()?;
    let mut expected = vec![SoftSet::null(&ctx), fc.clone(), gc.clone(), SoftSet::absolute(&ctx)];
    expected.sort();
    let closed = t.closed_family().map_err(err)?;
    c.check("closed family", closed == expected, format!("{} closed sets", closed.len()));
    let joined = fc.elementary_union(&gc).map_err(err)?;
    c.truth("Fc ⋓ Gc closed", t.is_soft_closed(&joined).map_err(err)?, false);
    Ok(())
}

fn missing_set(report: &crate::topology::ValidationReport) -> Option<SoftSet> {
    report.violations.iter().find_map(|v| match &v.missing {
        Some(Missing::Set(s)) => Some(s.clone()),
        _ => None,
    })
}

fn fix_3_8(env: &Env, c: &mut Checker) -> Outcome {
    let ctx = env.ctx()?;
    let tau = env.family("tau")?;
    let tau_prime = env.family("tauPrime")?;
    let verdict = |fam: &[SoftSet], flavor| validate(&ctx, fam, flavor).map_err(err);
    c.equal("tau size", &tau.len(), &4);
    c.truth("tau CS", verdict(&tau, Flavor::Cs)?.valid, true);
    let sn = verdict(&tau, Flavor::ShabirNaz)?;
    c.truth("tau SN", sn.valid, false);
    let meet = SoftSet::from_labels(&ctx, &[&[] as &[&str], &["z"]]).map_err(err)?;
    match missing_set(&sn) {
        Some(s) => c.equal("tau SN witness", &s, &meet),
        None => c.fail("tau SN witness", "no missing set reported"),
    }
    c.truth("tau Hazra", verdict(&tau, Flavor::Hazra)?.valid, false);
    c.truth("tauPrime SN", verdict(&tau_prime, Flavor::ShabirNaz)?.valid, true);
    c.truth("tauPrime CS", verdict(&tau_prime, Flavor::Cs)?.valid, false);
    c.truth("tauPrime Hazra", verdict(&tau_prime, Flavor::Hazra)?.valid, true);
    Ok(())
}

fn fix_3_12(env: &Env, c: &mut Checker) -> Outcome {
    let ctx = env.ctx()?;
    let t1 = env.family("tau1")?;
    let t2 = env.family("tau2")?;
    c.truth("tau1 CS", validate(&ctx, &t1, Flavor::Cs).map_err(err)?.valid, true);
    c.truth("tau2 CS", validate(&ctx, &t2, Flavor::Cs).map_err(err)?.valid, true);
    let mut union: Vec<SoftSet> = t1.iter().chain(&t2).cloned().collect();
    union.sort();
    union.dedup();
    let report = validate(&ctx, &union, Flavor::Cs).map_err(err)?;
    c.truth("tau1 ∪ tau2 CS", report.valid, false);
    let h = env.set("H")?;
    c.equal("F1 ⋓ F2 = H", &env.set("F1")?.elementary_union(&env.set("F2")?).map_err(err)?, &h);
    let found = report
        .violations
        .iter()
        .any(|v| v.missing == Some(Missing::Set(h.clone())));
    c.check("missing union H", found, format!("{} violations", report.violations.len()));
    Ok(())
}

fn fix_3_15(env: &Env, c: &mut Checker) -> Outcome {
    let ctx = env.ctx()?;
    let t = env.topology("tau1")?;
    let (p, q, puq) = (env.set("P")?, env.set("Q")?, env.set("PuQ")?);
    let cl = |s: &SoftSet| t.closure(s).map_err(err);
    c.equal("cl P = P", &cl(&p)?, &p);
    c.equal("cl Q = Q", &cl(&q)?, &q);
    let joined = cl(&p)?.elementary_union(&cl(&q)?).map_err(err)?;
    c.equal("cl P ⋓ cl Q", &joined, &puq);
    let whole = cl(&p.elementary_union(&q).map_err(err)?)?;
    c.equal("cl(P ⋓ Q)", &whole, &SoftSet::absolute(&ctx));
    c.differ("cl P ⋓ cl Q ≠ cl(P ⋓ Q)", &joined, &whole);
    Ok(())
}

fn fix_3_18(env: &Env, c: &mut Checker) -> Outcome {
    let t = env.topology("tau")?;
    let set = env.set("C")?;
    let limiting = t.limiting_elements(&set).map_err(err)?;
    c.equal("limiting elements of C", &Elements(&limiting), &Elements(&env.elements("limiting")?));
    let inside = limiting.iter().all(|x| x.is_in(&set).unwrap_or(false));
    c.check("limiting elements lie in C", inside, "");
    c.truth("C closed", t.is_soft_closed(&set).map_err(err)?, false);
    Ok(())
}

fn fix_4_2(env: &Env, c: &mut Checker) -> Outcome {
    let ctx = env.ctx()?;
    let t = env.topology("tau")?;
    let good = env.family("B_good")?;
    let bad = env.family("B_bad")?;
    c.truth("B_good base", base::is_open_base(&t, &good).map_err(err)?.is_base, true);
    c.truth("B_bad unions cover tau", base::covers_by_unions(&t, &bad).map_err(err)?, true);
    c.truth("B_bad base conditions", base::base_axioms(&bad).map_err(err)?.all_hold(), true);
    let verdict = base::is_open_base(&t, &bad).map_err(err)?;
    c.truth("B_bad base", verdict.is_base, false);
    let expected = BaseWitness::Uncovered {
        element: SoftElement::constant(&ctx, "x").map_err(err)?,
        open: env.set("F6")?,
    };
    let detail = format!("{:?}", verdict.witness);
    c.check("B_bad witness", verdict.witness == Some(expected), detail);
    Ok(())
}

fn fix_5_9(env: &Env, c: &mut Checker) -> Outcome {
    let t1 = env.topology("tau1")?;
    let t2 = env.topology("tau2")?;
    let i = env.inst.function("i").map_err(err)?;
    let cont = |crit| i.is_continuous(&t2, &t1, &crit).map_err(err);
    c.truth("closed preimage", cont(Continuity::ClosedPreimage)?, true);
    c.truth("pointwise", cont(Continuity::Pointwise)?, false);
    let back = i.preimage(&env.set("F")?).map_err(err)?;
    c.truth("preimage of F open", t2.is_open(&back), false);
    Ok(())
}

fn fix_6_7(env: &Env, c: &mut Checker) -> Outcome {
    let t = env.topology("tau")?;
    c.truth("regular", separation::is_regular(&t).map_err(err)?, true);
    c.truth("T1", separation::separation_axiom(&t, Level::T1).map_err(err)?.holds, false);
    Ok(())
}

fn fix_6_9(env: &Env, c: &mut Checker) -> Outcome {
    let ctx = env.ctx()?;
    let t = env.topology("tau")?;
    c.truth("regular", separation::is_regular(&t).map_err(err)?, true);
    let v = separation::interpolation_condition(&t, Interpolation::Regularity68).map_err(err)?;
    c.truth("interpolation at points", v.holds, false);
    let expected = InterpolationWitness::Element {
        element: SoftElement::constant(&ctx, "x").map_err(err)?,
        open: env.set("F1")?,
    };
    let detail = format!("{:?}", v.witness);
    c.check("witness", v.witness == Some(expected), detail);
    Ok(())
}

fn fix_6_12(env: &Env, c: &mut Checker) -> Outcome {
    let t = env.topology("tau")?;
    c.truth("normal", separation::is_normal(&t).map_err(err)?, true);
    let v = separation::interpolation_condition(&t, Interpolation::Normality611).map_err(err)?;
    c.truth("interpolation at closed sets", v.holds, false);
    let expected = InterpolationWitness::Closed {
        closed: env.set("F3")?,
        open: env.set("F1")?,
    };
    let detail = format!("{:?}", v.witness);
    c.check("witness", v.witness == Some(expected), detail);
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::emit_instance;

    #[test]
    fn catalog_passes() {
        let report = verify_corpus(&catalog());
        assert_eq!(report.fixtures.len(), 13);
        if let Some(f) = report.failures().next() {
            let bad: Vec<_> = f.checks.iter().filter(|c| !c.passed).collect();
            panic!("{} failed: {bad:?}", f.id);
        }
        assert!(report.passed());
    }

    #[test]
    fn corrupted_distributivity_fixture_fails() {
        let mut inst = parse_instance(BUILTIN[2].1).unwrap();
        let h = inst.soft_sets.get_mut("H").unwrap();
        h.insert("alpha".into(), vec!["z".into()]);
        h.insert("beta".into(), vec!["y".into()]);
        let report = verify_fixture(&Fixture::new("FIX-2.22", emit_instance(&inst)));
        assert!(!report.passed());
        let failed: Vec<&str> = report.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
        assert!(failed.contains(&"⋒ does not distribute over ⋓"), "{failed:?}");
    }

    #[test]
    fn empty_catalog() {
        let report = verify_corpus(&[]);
        assert!(report.fixtures.is_empty());
        assert!(report.passed());
    }

    #[test]
    fn unknown_fixture_fails() {
        let text = BUILTIN[0].1;
        assert!(!verify_fixture(&Fixture::new("FIX-9.99", text)).passed());
        assert!(!verify_fixture(&Fixture::new("FIX-2.18", "{")).passed());
    }

    #[test]
    fn fixtures_round_trip() {
        for f in catalog() {
            let inst = parse_instance(&f.text).unwrap();
            assert_eq!(parse_instance(&emit_instance(&inst)).unwrap(), inst, "{}", f.id);
        }
    }
}
