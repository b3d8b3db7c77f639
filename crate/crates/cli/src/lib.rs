//! The `softtop` command line: loads an instance file, runs one command
//! and renders its report as text or JSON.
//!
//! Verdicts are reports, whatever their value. Only unreadable input,
//! unresolvable names and failed preconditions are errors.

pub mod report;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use anyhow::{anyhow, bail, Context as _, Result};
use clap::{Parser, Subcommand, ValueEnum};
use softtop_core::base;
use softtop_core::corpus::{self, Fixture};
use softtop_core::instance::{parse_instance, InstanceFile};
use softtop_core::map::Continuity;
use softtop_core::miner::{self, MinerGoal, Outcome, Predicate};
use softtop_core::separation::{self, Interpolation, Level};
use softtop_core::topology::validate;
use softtop_core::{Context, Flavor, SoftTopology};

use report::*;

pub const CAP_VAR: &str = "SOFTTOP_CAP";

#[derive(Parser, Debug)]
#[command(name = "softtop", version, about = "Finite soft topology workbench")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Instance file to read; `-` reads standard input.
    #[arg(long, global = true)]
    pub file: Option<PathBuf>,
    /// Print the report as JSON.
    #[arg(long, global = true)]
    pub json: bool,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check a family against one of the topology definitions.
    Validate {
        #[arg(long = "def", value_enum, default_value = "cs")]
        definition: Definition,
        #[arg(long, default_value = "tau")]
        topology: String,
    },
    /// List the closed soft sets.
    Closed {
        #[arg(long, default_value = "tau")]
        topology: String,
    },
    Closure {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "tau")]
        topology: String,
    },
    Interior {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "tau")]
        topology: String,
    },
    /// Limiting elements and derived set.
    Derived {
        #[arg(long)]
        set: String,
        #[arg(long, default_value = "tau")]
        topology: String,
    },
    /// Check whether a family is an open base.
    Base {
        #[arg(long)]
        candidate: String,
        #[arg(long, default_value = "tau")]
        topology: String,
    },
    Subbase {
        #[arg(long)]
        candidate: String,
        #[arg(long, default_value = "tau")]
        topology: String,
    },
    /// Separation axioms and interpolation conditions.
    Axioms {
        #[arg(long, default_value = "tau")]
        topology: String,
    },
    Continuity {
        #[arg(long = "fn")]
        function: String,
        #[arg(long)]
        from: String,
        #[arg(long)]
        to: String,
        /// Every applicable criterion when omitted.
        #[arg(long, value_enum)]
        criterion: Option<Criterion>,
        /// Sub-base of the target topology, for the sub-base criterion.
        #[arg(long)]
        subbase: Option<String>,
    },
    /// Search for a witness of `positive` that fails `negative`.
    Mine {
        #[arg(long)]
        positive: String,
        #[arg(long)]
        negative: String,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long, default_value_t = miner::DEFAULT_MAX_SIZE)]
        max_size: usize,
        /// Skip candidates that are relabellings of an earlier one.
        #[arg(long)]
        iso: bool,
    },
    /// Check the fixture catalog, or the given fixture files.
    Corpus { paths: Vec<PathBuf> },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
pub enum Definition {
    Cs,
    Sn,
    Hazra,
}

impl From<Definition> for Flavor {
    fn from(d: Definition) -> Flavor {
        match d {
            Definition::Cs => Flavor::Cs,
            Definition::Sn => Flavor::ShabirNaz,
            Definition::Hazra => Flavor::Hazra,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    Pointwise,
    PreimageOpen,
    Subbase,
    ClosedPreimage,
}

/// Runs a parsed command line and returns the rendered report.
pub fn run(cli: &Cli) -> Result<String> {
    let json = cli.json;
    match &cli.command {
        Command::Mine {
            positive,
            negative,
            n,
            m,
            max_size,
            iso,
        } => mine(positive, negative, *n, *m, *max_size, *iso, json),
        Command::Corpus { paths } => run_corpus(paths, cli.file.as_deref(), json),
        command => {
            let path = cli.file.as_deref().ok_or_else(|| anyhow!("this command needs --file"))?;
            let inst = load(path)?;
            with_instance(command, &inst, json)
        }
    }
}

pub fn load(path: &Path) -> Result<InstanceFile> {
    let text = if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin().read_to_string(&mut s).context("reading standard input")?;
        s
    } else {
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?
    };
    parse_instance(&text).map_err(|errors| {
        let lines: Vec<String> = errors.iter().map(ToString::to_string).collect();
        anyhow!("{}: invalid instance\n{}", path.display(), lines.join("\n"))
    })
}

fn cs_topology(inst: &InstanceFile, ctx: &Arc<Context>, name: &str) -> Result<SoftTopology> {
    Ok(inst.topology(ctx, name, Flavor::Cs)?)
}

fn with_instance(command: &Command, inst: &InstanceFile, json: bool) -> Result<String> {
    let ctx = inst.source_context()?;
    let namer = Namer::new(inst, &ctx);
    let out = match command {
        Command::Validate { definition, topology } => {
            let family = inst.family(&ctx, topology)?;
            let report = validate(&ctx, &family, (*definition).into())?;
            render(&ValidateReport::new(topology, &report, &ctx, &namer), json)
        }
        Command::Closed { topology } => {
            let t = cs_topology(inst, &ctx, topology)?;
            let closed = t.closed_family()?;
            let report = ClosedReport {
                topology: topology.clone(),
                closed: namer.sets(&closed),
            };
            render(&report, json)
        }
        Command::Closure { set, topology } => {
            let t = cs_topology(inst, &ctx, topology)?;
            let f = inst.soft_set(&ctx, set)?;
            let report = ClosureReport {
                topology: topology.clone(),
                set: namer.set(&f),
                closure: namer.set(&t.closure(&f)?),
                closed: t.is_soft_closed(&f)?,
            };
            render(&report, json)
        }
        Command::Interior { set, topology } => {
            let t = cs_topology(inst, &ctx, topology)?;
            let f = inst.soft_set(&ctx, set)?;
            let report = InteriorReport {
                topology: topology.clone(),
                set: namer.set(&f),
                interior: namer.set(&t.interior(&f)?),
                interior_elements: t.interior_elements(&f)?.iter().map(ElementView::new).collect(),
                open: t.is_open(&f),
            };
            render(&report, json)
        }
        Command::Derived { set, topology } => {
            let t = cs_topology(inst, &ctx, topology)?;
            let f = inst.soft_set(&ctx, set)?;
            let report = DerivedReport {
                topology: topology.clone(),
                set: namer.set(&f),
                limiting_elements: t.limiting_elements(&f)?.iter().map(ElementView::new).collect(),
                derived: namer.set(&t.derived_set(&f)?),
                weak_closure: namer.set(&t.weak_closure(&f)?),
            };
            render(&report, json)
        }
        Command::Base { candidate, topology } => {
            let t = cs_topology(inst, &ctx, topology)?;
            let b = inst.family(&ctx, candidate)?;
            let verdict = base::is_open_base(&t, &b)?;
            let axioms = base::base_axioms(&b)?;
            let report = BaseReport {
                topology: topology.clone(),
                candidate: candidate.clone(),
                is_base: verdict.is_base,
                witness: verdict.witness.as_ref().map(|w| BaseWitnessView::new(w, &namer)),
                covers_by_unions: base::covers_by_unions(&t, &b)?,
                null_member: axioms.null_member,
                absolute_covered: axioms.absolute_covered,
                refinement: axioms.refinement,
                refinement_witness: axioms.refinement_witness.as_ref().map(|(a, b, x)| RefinementView {
                    first: namer.set(a),
                    second: namer.set(b),
                    element: ElementView::new(x),
                }),
            };
            render(&report, json)
        }
        Command::Subbase { candidate, topology } => {
            let t = cs_topology(inst, &ctx, topology)?;
            let s = inst.family(&ctx, candidate)?;
            let verdict = base::is_subbase(&t, &s)?;
            let report = SubbaseReport {
                topology: topology.clone(),
                candidate: candidate.clone(),
                is_subbase: verdict.is_base,
                witness: verdict.witness.as_ref().map(|w| BaseWitnessView::new(w, &namer)),
                finite_meets: namer.sets(&base::intersection_closure(&t, &s)?),
            };
            render(&report, json)
        }
        Command::Axioms { topology } => {
            let t = cs_topology(inst, &ctx, topology)?;
            render(&axioms(&t, topology, &namer)?, json)
        }
        Command::Continuity {
            function,
            from,
            to,
            criterion,
            subbase,
        } => {
            let f = inst.function(function)?;
            let tgt = inst.target_context()?;
            let t_src = cs_topology(inst, &ctx, from)?;
            let t_tgt = cs_topology(inst, &tgt, to)?;
            let subbase = match subbase {
                Some(name) => Some(inst.family(&tgt, name)?),
                None if *criterion == Some(Criterion::Subbase) => {
                    bail!("the sub-base criterion needs --subbase")
                }
                None => None,
            };
            let mut wanted = vec![];
            let all = criterion.is_none();
            if all || *criterion == Some(Criterion::Pointwise) {
                wanted.push(Continuity::Pointwise);
            }
            if all || *criterion == Some(Criterion::PreimageOpen) {
                wanted.push(Continuity::PreimageOpen);
            }
            if let Some(s) = subbase.filter(|_| all || *criterion == Some(Criterion::Subbase)) {
                wanted.push(Continuity::Subbase(s));
            }
            if all || *criterion == Some(Criterion::ClosedPreimage) {
                wanted.push(Continuity::ClosedPreimage);
            }
            let criteria = wanted
                .iter()
                .map(|c| {
                    Ok(CriterionView {
                        criterion: c.name().to_ascii_lowercase(),
                        holds: f.is_continuous(&t_src, &t_tgt, c)?,
                    })
                })
                .collect::<Result<_>>()?;
            let report = ContinuityReport {
                function: function.clone(),
                from: from.clone(),
                to: to.clone(),
                criteria,
                open_map: f.is_open_map(&t_src, &t_tgt)?,
                closed_map: f.is_closed_map(&t_src, &t_tgt)?,
                homeomorphism: f.is_homeomorphism(&t_src, &t_tgt)?.holds(),
            };
            render(&report, json)
        }
        Command::Mine { .. } | Command::Corpus { .. } => unreachable!("handled without an instance"),
    };
    Ok(out)
}

fn axioms(t: &SoftTopology, topology: &str, namer: &Namer) -> Result<AxiomsReport> {
    let mut axioms = vec![];
    for level in [Level::T0, Level::T1, Level::T2] {
        let v = separation::separation_axiom(t, level)?;
        axioms.push(AxiomView {
            name: level.name().to_string(),
            holds: v.holds,
            witness: v.witness.as_ref().map(|(x, y)| AxiomWitness::pair(x, y)),
        });
    }
    let separated = [
        ("regular", separation::regularity(t)?, "T3", separation::is_t3(t)?),
        ("normal", separation::normality(t)?, "T4", separation::is_t4(t)?),
    ];
    for (name, v, strong, strong_holds) in separated {
        axioms.push(AxiomView {
            name: name.to_string(),
            holds: v.holds,
            witness: v.witness.as_ref().map(|w| AxiomWitness::separation(w, namer)),
        });
        axioms.push(AxiomView {
            name: strong.to_string(),
            holds: strong_holds,
            witness: None,
        });
    }
    for (name, kind) in [
        ("COND_68", Interpolation::Regularity68),
        ("COND_611", Interpolation::Normality611),
    ] {
        let v = separation::interpolation_condition(t, kind)?;
        axioms.push(AxiomView {
            name: name.to_string(),
            holds: v.holds,
            witness: v.witness.as_ref().map(|w| AxiomWitness::interpolation(w, namer)),
        });
    }
    Ok(AxiomsReport {
        topology: topology.to_string(),
        axioms,
        disjointness: "open sets are disjoint when their elementary intersection is PHI".into(),
    })
}

/// Miner enumeration cap, from the environment when set.
pub fn cap_from_env() -> Result<u128> {
    match std::env::var(CAP_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{CAP_VAR} must be a non-negative integer, got `{v}`")),
        Err(std::env::VarError::NotPresent) => Ok(miner::DEFAULT_CAP),
        Err(e) => Err(anyhow!("{CAP_VAR}: {e}")),
    }
}

fn mine(positive: &str, negative: &str, n: usize, m: usize, max_size: usize, iso: bool, json: bool) -> Result<String> {
    let positive: Predicate = positive.parse()?;
    let negative: Predicate = negative.parse()?;
    let goal = MinerGoal {
        max_size,
        isomorph_rejection: iso,
        cap: cap_from_env()?,
        ..MinerGoal::new(positive, negative, n, m)
    };
    let outcome = miner::search(&goal)?;
    let report = MineReport {
        goal: GoalView {
            positive: positive.name().to_string(),
            negative: negative.name().to_string(),
            n,
            m,
            max_size,
            isomorph_rejection: iso,
        },
        witness: match &outcome {
            Outcome::Found(w) => Some(w.to_instance()),
            Outcome::NotFound => None,
        },
    };
    Ok(render(&report, json))
}

fn run_corpus(paths: &[PathBuf], file: Option<&Path>, json: bool) -> Result<String> {
    let mut paths: Vec<&Path> = paths.iter().map(PathBuf::as_path).collect();
    paths.extend(file);
    let fixtures = if paths.is_empty() {
        corpus::catalog()
    } else {
        paths
            .iter()
            .map(|p| {
                let id = p
                    .file_stem()
                    .and_then(|s| s.to_str())
                    .ok_or_else(|| anyhow!("{}: no fixture id in the file name", p.display()))?;
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                Ok(Fixture::new(id, text))
            })
            .collect::<Result<_>>()?
    };
    let report = corpus::verify_corpus(&fixtures);
    let view = CorpusView {
        passed: report.passed(),
        fixtures: report
            .fixtures
            .iter()
            .map(|f| FixtureView {
                id: f.id.clone(),
                passed: f.passed(),
                checks: f
                    .checks
                    .iter()
                    .map(|c| CheckView {
                        name: c.name.clone(),
                        passed: c.passed,
                        detail: c.detail.clone(),
                    })
                    .collect(),
            })
            .collect(),
    };
    Ok(render(&view, json))
}
