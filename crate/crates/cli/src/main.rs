//! `fairdiv` command line: generate instances, run the allocation procedures,
//! check fairness notions, verify exhaustive claims and export graphs.
//!
//! Exit codes: 0 success or the property holds, 1 a fairness property or claim
//! fails, 2 usage, input or class errors, 3 budget or iteration-cap trips.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fairdiv::algorithms::{
    build_cut_and_choose_graph, cut_and_choose_graph_procedure, match_and_freeze_with,
    reversed_round_robin_traced, FreezeRule,
};
use fairdiv::document::{allocation_from_json, allocation_to_json, instance_from_json, instance_to_json};
use fairdiv::dot::{compat_to_dot, pointer_graph_to_dot};
use fairdiv::instances::{sample_random, BinaryMode, GeneratorKind, GeneratorSpec};
use fairdiv::oracles::{
    check, check_efx, exists_fair_allocation, mms_feasibility_counterexample, nash_welfare_maximizers,
    CompatGraph,
};
use fairdiv::{Allocation, Budget, Error, FairnessNotion, Instance};
use serde_json::json;

#[derive(Parser)]
#[command(name = "fairdiv", version, about = "Exact fair division of indivisible items")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write an instance document.
    Gen(GenArgs),
    /// Run an allocation procedure on an instance.
    Solve(SolveArgs),
    /// Check one fairness notion for an allocation.
    Check(CheckArgs),
    /// Verify an exhaustive claim about an instance.
    Verify(VerifyArgs),
    /// Export a graph in DOT format.
    ExportGraph(ExportArgs),
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Stars,
    Separation3,
    Mnw,
    PmmsNotEfx,
    Table1,
    RandomBivalued,
    RandomFactoredBivalued,
    RandomPairDemand,
    RandomBinaryMmsFeasible,
    RandomBinaryAdditive,
    RandomAdditive,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long, value_enum)]
    kind: Kind,
    /// Number of agents (stars and random kinds).
    #[arg(long)]
    n: Option<usize>,
    /// Number of items (random kinds).
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Let random-bivalued draw `b = 0`.
    #[arg(long)]
    allow_zero_b: bool,
    /// Force monotone binary tables.
    #[arg(long)]
    monotone: bool,
    /// Force `v(∅) = 0` in binary tables.
    #[arg(long)]
    normalized: bool,
    /// Output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Algo {
    Maf,
    Ccg,
    Rrr,
}

#[derive(Clone, Copy, ValueEnum)]
enum RuleArg {
    Component,
    AlternatingPath,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long, value_enum)]
    algo: Algo,
    #[arg(long = "in")]
    input: PathBuf,
    /// Print the line-oriented trace to stdout.
    #[arg(long)]
    trace: bool,
    /// Allocation output file; stdout when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value = "component")]
    freeze_rule: RuleArg,
    /// Agent receiving the leftovers in rrr.
    #[arg(long, default_value_t = 0)]
    leftover_owner: usize,
}

#[derive(Clone, Copy, ValueEnum)]
enum NotionArg {
    Efx,
    #[value(name = "efx+")]
    EfxPositive,
    Pmms,
    Mms,
    Feasible,
}

#[derive(Args)]
struct CheckArgs {
    #[arg(long, value_enum)]
    notion: NotionArg,
    #[arg(long = "in")]
    input: PathBuf,
    /// Allocation document; not needed for `feasible`.
    #[arg(long)]
    alloc: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum Claim {
    NoPmms,
    MmsExists,
    MnwNotEfx,
    TriangleFree,
}

#[derive(Args)]
struct VerifyArgs {
    #[arg(long, value_enum)]
    claim: Claim,
    #[arg(long = "in")]
    input: PathBuf,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Compat,
    Ccg,
}

#[derive(Args)]
struct ExportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long, value_enum)]
    kind: GraphKind,
    /// DOT output file; stdout when absent.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Cut-and-choose iteration to draw (1-based).
    #[arg(long, default_value_t = 1)]
    iteration: usize,
    /// Draw the pointer graph of this allocation instead of a procedure iteration.
    #[arg(long)]
    alloc: Option<PathBuf>,
    /// Agent `s` used with `--alloc`.
    #[arg(long, default_value_t = 0)]
    s: usize,
}

enum Failure {
    Usage(String),
    Core(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Core(
                Error::BudgetExceeded { .. } | Error::IterationCap { .. } | Error::RejectionLimit { .. },
            ) => 3,
            Failure::Core(_) => 2,
        }
    }

    fn message(&self) -> String {
        match self {
            Failure::Usage(msg) => msg.clone(),
            Failure::Core(e) => e.to_string(),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn budget() -> Result<Budget, Failure> {
    match std::env::var("FAIRDIV_BUDGET") {
        Err(_) => Ok(Budget::DEFAULT),
        Ok(raw) => raw
            .trim()
            .parse::<u64>()
            .ok()
            .or_else(|| raw.trim().parse::<f64>().ok().filter(|x| *x >= 0.0).map(|x| x as u64))
            .map(Budget)
            .ok_or_else(|| Failure::Usage(format!("FAIRDIV_BUDGET must be a non-negative number, got {raw:?}"))),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure::Usage(format!("cannot read {}: {e}", path.display())))
}

fn emit(path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Usage(format!("cannot write {}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_instance(path: &Path) -> Result<Instance, Failure> {
    Ok(instance_from_json(&read(path)?)?)
}

fn load_allocation(path: &Path, inst: &Instance) -> Result<Allocation, Failure> {
    let x = allocation_from_json(&read(path)?)?;
    x.validate(inst).map_err(Error::from)?;
    Ok(x)
}

fn pretty(value: &serde_json::Value) -> String {
    format!("{}\n", serde_json::to_string_pretty(value).expect("JSON values serialize"))
}

fn gen(args: GenArgs) -> Outcome {
    let need = |v: Option<usize>, flag: &str| {
        v.ok_or_else(|| Failure::Usage(format!("--{flag} is required for this kind")))
    };
    let kind = match args.kind {
        Kind::Stars => GeneratorKind::NonexistenceStars { n: need(args.n, "n")? },
        Kind::Separation3 => GeneratorKind::Separation3,
        Kind::Mnw => GeneratorKind::MnwCounterexample,
        Kind::PmmsNotEfx => GeneratorKind::PmmsNotEfxExample,
        Kind::Table1 => GeneratorKind::Table1Example,
        random => {
            let (n, m) = (need(args.n, "n")?, need(args.m, "m")?);
            match random {
                Kind::RandomBivalued => GeneratorKind::RandomBivalued { n, m, allow_zero_b: args.allow_zero_b },
                Kind::RandomFactoredBivalued => GeneratorKind::RandomFactoredBivalued { n, m },
                Kind::RandomPairDemand => GeneratorKind::RandomPairDemand { n, m },
                Kind::RandomBinaryMmsFeasible => GeneratorKind::RandomBinaryMmsFeasible {
                    n,
                    m,
                    mode: BinaryMode { monotone: args.monotone, normalized: args.normalized },
                },
                Kind::RandomBinaryAdditive => GeneratorKind::RandomBinaryAdditive { n, m },
                _ => GeneratorKind::RandomAdditive { n, m },
            }
        }
    };
    let sampled = sample_random(&GeneratorSpec::new(kind, args.seed))?;
    if sampled.rejections > 0 {
        eprintln!("rejected {} proposals", sampled.rejections);
    }
    emit(args.out.as_deref(), &instance_to_json(&sampled.instance))?;
    Ok(true)
}

fn solve(args: SolveArgs) -> Outcome {
    let inst = load_instance(&args.input)?;
    let (x, log) = match args.algo {
        Algo::Maf => {
            let rule = match args.freeze_rule {
                RuleArg::Component => FreezeRule::Component,
                RuleArg::AlternatingPath => FreezeRule::AlternatingPath,
            };
            let (x, trace) = match_and_freeze_with(&inst, rule)?;
            let log = trace.to_log(&inst, &x);
            (x, log)
        }
        Algo::Ccg => {
            let (x, trace) = cut_and_choose_graph_procedure(&inst)?;
            (x, trace.to_log())
        }
        Algo::Rrr => {
            let (x, trace) = reversed_round_robin_traced(&inst, args.leftover_owner)?;
            let log = trace.to_log(&inst);
            (x, log)
        }
    };
    emit(args.out.as_deref(), &allocation_to_json(&x))?;
    if args.trace {
        print!("{log}");
    }
    Ok(true)
}

fn check_cmd(args: CheckArgs) -> Outcome {
    let inst = load_instance(&args.input)?;
    let budget = budget()?;
    let notion = match args.notion {
        NotionArg::Feasible => {
            let mut counterexamples = Vec::new();
            for (agent, v) in inst.valuations().iter().enumerate() {
                if let Some(set) = mms_feasibility_counterexample(v, budget)? {
                    counterexamples.push(json!({ "agent": agent, "bundle": set }));
                }
            }
            let holds = counterexamples.is_empty();
            print!("{}", pretty(&json!({ "notion": "feasible", "holds": holds, "counterexamples": counterexamples })));
            return Ok(holds);
        }
        NotionArg::Efx => FairnessNotion::Efx,
        NotionArg::EfxPositive => FairnessNotion::EfxPositive,
        NotionArg::Pmms => FairnessNotion::Pmms,
        NotionArg::Mms => FairnessNotion::Mms,
    };
    let path = args
        .alloc
        .ok_or_else(|| Failure::Usage("--alloc is required for this notion".into()))?;
    let x = load_allocation(&path, &inst)?;
    let report = check(&inst, &x, notion, budget)?;
    print!("{}", pretty(&serde_json::to_value(&report).expect("reports serialize")));
    Ok(report.holds)
}

fn verify(args: VerifyArgs) -> Outcome {
    let inst = load_instance(&args.input)?;
    let budget = budget()?;
    let start = Instant::now();
    let (holds, mut verdict) = match args.claim {
        Claim::NoPmms | Claim::MmsExists => {
            let (notion, claim) = match args.claim {
                Claim::NoPmms => (FairnessNotion::Pmms, "no-pmms"),
                _ => (FairnessNotion::Mms, "mms-exists"),
            };
            let out = exists_fair_allocation(&inst, notion, budget)?;
            let holds = out.found.is_some() == (notion == FairnessNotion::Mms);
            let found = out.found.map(|x| x.bundles);
            (holds, json!({ "claim": claim, "scanned": out.scanned, "found": found }))
        }
        Claim::MnwNotEfx => {
            let out = nash_welfare_maximizers(&inst, budget)?;
            let efx: Vec<bool> = out.argmax.iter().map(|x| check_efx(&inst, x).holds).collect();
            let holds = !efx.iter().any(|&e| e);
            let maximizers: Vec<_> = out.argmax.iter().map(|x| &x.bundles).collect();
            let verdict = json!({
                "claim": "mnw-not-efx",
                "scanned": out.scanned,
                "max_nw": fairdiv::document::fmt_rational(&out.max_nw),
                "maximizers": maximizers,
                "maximizer_efx": efx,
            });
            (holds, verdict)
        }
        Claim::TriangleFree => {
            let graph = CompatGraph::build(&inst, budget)?;
            let triangle = graph.find_triangle().map(|t| {
                t.map(|idx| {
                    let node = graph.nodes[idx];
                    json!({ "agent": node.agent, "bundle": node.bundle })
                })
            });
            let verdict = json!({
                "claim": "triangle-free",
                "nodes": graph.visible_nodes().len(),
                "edges": graph.edges.len(),
                "triangle": triangle,
            });
            (triangle.is_none(), verdict)
        }
    };
    verdict["holds"] = json!(holds);
    verdict["elapsed_ms"] = json!(start.elapsed().as_millis() as u64);
    print!("{}", pretty(&verdict));
    Ok(holds)
}

fn export_graph(args: ExportArgs) -> Outcome {
    let inst = load_instance(&args.input)?;
    let dot = match args.kind {
        GraphKind::Compat => compat_to_dot(&inst, &CompatGraph::build(&inst, budget()?)?),
        GraphKind::Ccg => match &args.alloc {
            Some(path) => {
                let x = load_allocation(path, &inst)?;
                pointer_graph_to_dot(&build_cut_and_choose_graph(&inst, &x, args.s)?, args.s)
            }
            None => {
                let (_, trace) = cut_and_choose_graph_procedure(&inst)?;
                let it = args.iteration.checked_sub(1).and_then(|t| trace.iterations.get(t)).ok_or_else(|| {
                    Failure::Usage(format!(
                        "iteration {} not available; the run has {} iterations",
                        args.iteration,
                        trace.iterations.len()
                    ))
                })?;
                pointer_graph_to_dot(&it.pi, it.s)
            }
        },
    };
    emit(args.dot.as_deref(), &dot)?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = match cli.command {
        Command::Gen(a) => gen(a),
        Command::Solve(a) => solve(a),
        Command::Check(a) => check_cmd(a),
        Command::Verify(a) => verify(a),
        Command::ExportGraph(a) => export_graph(a),
    };
    match outcome {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
