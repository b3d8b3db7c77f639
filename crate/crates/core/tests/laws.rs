use std::collections::BTreeSet;

use softtop_core::laws::{self, SuiteReport};
use softtop_core::{miner, Context, Flavor, SoftTopology};

fn violated(report: &SuiteReport) -> BTreeSet<&str> {
    report.violated().map(|l| l.law.as_str()).collect()
}

fn cs_topologies(n: usize, m: usize, max_size: usize) -> (std::sync::Arc<Context>, Vec<SoftTopology>) {
    let ctx = Context::standard(n, m).unwrap();
    let all = miner::enumerate_topologies(&ctx, Flavor::Cs, max_size, 1 << 20).unwrap();
    (ctx, all)
}

#[test]
fn algebra_laws_with_generator_subsets() {
    let ctx = Context::standard(2, 2).unwrap();
    let report = laws::algebra_suite(&ctx, true).unwrap();
    assert_eq!(violated(&report), BTreeSet::from([laws::DE_MORGAN_MEET]));
    assert!(report.law(laws::GENERATED_MEET).unwrap().cases > 0);
}

#[test]
fn algebra_laws_at_three_points() {
    let ctx = Context::standard(3, 2).unwrap();
    let report = laws::algebra_suite(&ctx, false).unwrap();
    assert_eq!(violated(&report), BTreeSet::from([laws::DE_MORGAN_MEET]));
    let meet = report.law(laws::DE_MORGAN_MEET).unwrap();
    assert_eq!(meet.cases, 127_500);
    assert_eq!(meet.violations, 73_668);
}

#[test]
fn topology_laws_hold_on_every_small_topology() {
    let (ctx, all) = cs_topologies(2, 2, 64);
    assert_eq!(all.len(), 90);
    let report = laws::topology_suite(&ctx, &all).unwrap();
    assert!(report.passed(), "{report}");
    assert!(report.law(laws::HAZRA_FROM_CS).unwrap().cases > 0);
    assert_eq!(report.law(laws::CS_FROM_HAZRA).unwrap().cases, 16);
}

#[test]
fn topology_laws_on_a_three_point_sample() {
    let (ctx, all) = cs_topologies(3, 2, 6);
    let sample: Vec<_> = all.into_iter().step_by(47).collect();
    let report = laws::topology_suite(&ctx, &sample).unwrap();
    assert!(report.passed(), "{report}");
}

#[test]
fn continuity_laws_fail_only_on_preimage_identities() {
    let (ctx, all) = cs_topologies(2, 2, 64);
    let report = laws::continuity_suite(&ctx, &all).unwrap();
    assert_eq!(
        violated(&report),
        BTreeSet::from([laws::PREIMAGE_UNION, laws::OPEN_IMPLIES_CLOSED])
    );
    assert!(report.count(laws::CLOSED_WITHOUT_CONTINUITY) > 0);
}

#[test]
fn separation_implications() {
    let (ctx, all) = cs_topologies(2, 2, 64);
    let report = laws::separation_suite(&ctx, &all).unwrap();
    assert!(report.passed(), "{report}");
    assert_eq!(report.count("T1"), report.count("T2"));
}
