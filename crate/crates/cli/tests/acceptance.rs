//! Acceptance run: one PASS or FAIL line per criterion, then details for
//! the failures. Exits nonzero when any criterion fails.

use std::process::{Command, ExitCode};
use std::sync::Arc;
use std::time::{Duration, Instant};

use serde_json::Value;
use softtop_core::instance::{emit_instance, parse_instance, InstanceFile};
use softtop_core::laws::{self, SuiteReport};
use softtop_core::map::all_functions;
use softtop_core::miner::{self, MinerGoal, Outcome, Predicate};
use softtop_core::separation::{self, Interpolation};
use softtop_core::{Context, Flavor, SoftTopology};

const BUDGET: Duration = Duration::from_secs(60);
const CAP: u128 = 1 << 20;

type Criterion = (&'static str, fn() -> Verdict);

struct Verdict {
    passed: bool,
    summary: String,
    details: Vec<String>,
}

impl Verdict {
    fn new() -> Self {
        Verdict {
            passed: true,
            summary: String::new(),
            details: vec![],
        }
    }

    fn require(&mut self, ok: bool, what: impl Into<String>) {
        if !ok {
            self.passed = false;
            self.details.push(what.into());
        }
    }

    fn suite(&mut self, report: &SuiteReport, elapsed: Duration) {
        self.require(
            elapsed < BUDGET,
            format!("{} took {:.1}s", report.name, elapsed.as_secs_f64()),
        );
        for law in report.violated() {
            self.require(
                false,
                format!(
                    "{}: {} of {} cases violate `{}`, first {}",
                    report.name,
                    law.violations,
                    law.cases,
                    law.law,
                    law.example.as_deref().unwrap_or("-")
                ),
            );
        }
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn softtop(args: &[&str]) -> (bool, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_softtop"))
        .args(args)
        .env_remove("SOFTTOP_CAP")
        .output()
        .expect("softtop runs");
    (out.status.success(), out.stdout)
}

fn cs_topologies(ctx: &Arc<Context>, max_size: usize) -> Vec<SoftTopology> {
    miner::enumerate_topologies(ctx, Flavor::Cs, max_size, CAP).expect("enumeration within cap")
}

fn corpus() -> Verdict {
    let mut v = Verdict::new();
    let (ok, out) = softtop(&["corpus", "--json"]);
    v.require(ok, "softtop corpus exited with an error");
    let report: Value = serde_json::from_slice(&out).unwrap_or(Value::Null);
    let fixtures = report["fixtures"].as_array().cloned().unwrap_or_default();
    let passed = fixtures.iter().filter(|f| f["passed"] == true).count();
    v.require(fixtures.len() == 13, format!("{} fixtures in the catalog", fixtures.len()));
    for f in fixtures.iter().filter(|f| f["passed"] != true) {
        for c in f["checks"].as_array().into_iter().flatten().filter(|c| c["passed"] != true) {
            v.require(false, format!("{} {}: {}", f["id"], c["name"], c["detail"]));
        }
    }
    v.summary = format!("{passed}/{} fixtures reproduce", fixtures.len());
    v
}

fn algebra() -> Verdict {
    let mut v = Verdict::new();
    let ctx = Context::standard(3, 2).unwrap();
    let (report, elapsed) = timed(|| laws::algebra_suite(&ctx, false).unwrap());
    v.suite(&report, elapsed);
    v.summary = format!(
        "{} laws, {} cases over 50 soft sets, {:.1}s",
        report.laws.len(),
        report.total_cases(),
        elapsed.as_secs_f64()
    );
    v
}

fn topology() -> Verdict {
    let mut v = Verdict::new();
    let small = Context::standard(2, 2).unwrap();
    let all = cs_topologies(&small, 64);
    let (report, elapsed) = timed(|| laws::topology_suite(&small, &all).unwrap());
    v.suite(&report, elapsed);
    let large = Context::standard(3, 2).unwrap();
    let sample: Vec<_> = cs_topologies(&large, 6).into_iter().step_by(23).collect();
    let (sampled, elapsed) = timed(|| laws::topology_suite(&large, &sample).unwrap());
    v.suite(&sampled, elapsed);
    v.summary = format!(
        "{} topologies at n=2 and {} sampled at n=3, {} cases",
        all.len(),
        sample.len(),
        report.total_cases() + sampled.total_cases()
    );
    v
}

fn found(goal: &MinerGoal) -> Option<InstanceFile> {
    match miner::search(goal).ok()? {
        Outcome::Found(w) => Some(w.to_instance()),
        Outcome::NotFound => None,
    }
}

fn continuity() -> Verdict {
    let mut v = Verdict::new();
    let ctx = Context::standard(2, 2).unwrap();
    let all = cs_topologies(&ctx, 64);
    let (report, elapsed) = timed(|| laws::continuity_suite(&ctx, &all).unwrap());
    v.suite(&report, elapsed);
    let gap = report.count(laws::CLOSED_WITHOUT_CONTINUITY);
    v.require(gap > 0, "no function has closed preimages without being continuous");
    let goal = MinerGoal::new(Predicate::ClosedPreimage, Predicate::Pointwise, 3, 2);
    let mined = found(&goal);
    v.require(mined.is_some(), "miner found no closed-preimage map that is not continuous at n=3");
    v.summary = format!(
        "{} functions x {} topology pairs, {} closed-preimage maps that are not continuous",
        all_functions(&ctx, &ctx).unwrap().count(),
        all.len() * all.len(),
        gap
    );
    v
}

fn separation() -> Verdict {
    let mut v = Verdict::new();
    let ctx = Context::standard(2, 2).unwrap();
    let all = cs_topologies(&ctx, 64);
    let (report, elapsed) = timed(|| laws::separation_suite(&ctx, &all).unwrap());
    v.suite(&report, elapsed);
    let goals = [
        (Predicate::Regular, Predicate::Cond68, Interpolation::Regularity68),
        (Predicate::Normal, Predicate::Cond611, Interpolation::Normality611),
    ];
    let mut witnesses = 0;
    for (positive, negative, condition) in goals {
        let goal = MinerGoal::new(positive, negative, 2, 2);
        let Some(inst) = found(&goal) else {
            v.require(false, format!("no witness for {positive} without {negative}"));
            continue;
        };
        let wctx = inst.source_context().unwrap();
        let t = inst.topology(&wctx, "tau", Flavor::Cs).unwrap();
        let holds = match positive {
            Predicate::Regular => separation::is_regular(&t).unwrap(),
            _ => separation::is_normal(&t).unwrap(),
        };
        let fails = !separation::interpolation_condition(&t, condition).unwrap().holds;
        v.require(holds && fails, format!("witness for {positive} without {negative} does not check out"));
        witnesses += 1;
    }
    v.summary = format!(
        "{} topologies, {} implication cases, {witnesses} converse witnesses at n=2, m=2",
        all.len(),
        report.total_cases()
    );
    v
}

fn determinism() -> Verdict {
    let mut v = Verdict::new();
    for n in 1..=3usize {
        for m in 1..=2u32 {
            let ctx = Context::standard(n, m as usize).unwrap();
            let count = miner::enumerate_soft_sets(&ctx, CAP).unwrap().len();
            let expected = ((1usize << n) - 1).pow(m) + 1;
            v.require(count == expected, format!("n={n}, m={m}: {count} soft sets, expected {expected}"));
        }
    }
    let goals: [&[&str]; 4] = [
        &["--positive", "CS_VALID", "--negative", "SN_VALID", "--n", "3", "--m", "2"],
        &["--positive", "BASE_45_CONDITIONS", "--negative", "IS_BASE", "--n", "3", "--m", "2"],
        &["--positive", "CLOSED_PREIMAGE", "--negative", "POINTWISE", "--n", "2", "--m", "2"],
        &["--positive", "NORMAL", "--negative", "COND_611", "--n", "2", "--m", "2"],
    ];
    for goal in goals {
        let mut args = vec!["mine", "--json"];
        args.extend_from_slice(goal);
        let (ok, first) = softtop(&args);
        v.require(ok, format!("mine {goal:?} failed"));
        for _ in 0..2 {
            let (_, again) = softtop(&args);
            v.require(again == first, format!("mine {goal:?} emitted different bytes"));
        }
        let text = String::from_utf8_lossy(&first);
        let round_trip = parse_instance(&text).map(|inst| emit_instance(&inst) == text);
        v.require(round_trip == Ok(true), format!("mine {goal:?} witness does not round-trip"));
    }
    v.summary = format!("soft set counts for n<=3, m<=2; {} goals re-mined", goals.len());
    v
}

fn main() -> ExitCode {
    let criteria: [Criterion; 6] = [
        ("fixture corpus", corpus),
        ("soft-set algebra laws", algebra),
        ("topology operator laws", topology),
        ("continuity laws", continuity),
        ("separation laws and converse witnesses", separation),
        ("miner counts and determinism", determinism),
    ];
    let mut failed = vec![];
    for (i, (name, check)) in criteria.iter().enumerate() {
        let v = check();
        let mark = if v.passed { "PASS" } else { "FAIL" };
        println!("criterion {}: {mark} {name}: {}", i + 1, v.summary);
        if !v.passed {
            failed.push((i + 1, v.details));
        }
    }
    for (i, details) in &failed {
        for d in details {
            println!("  criterion {i}: {d}");
        }
    }
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
