//! `decontam`: generate topologies, run decontamination strategies, query
//! the exact immunity oracle, verify the mesh cut-matching bound, and
//! render the bounds table.

use std::fs;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};

use decontam_core::dynamics::{self, RecontaminationRule, SemanticVariant, Verdict};
use decontam_core::matching::{verify_lemma, CoverageMode};
use decontam_core::oracle::{immunity_number, OracleLimits, OracleResult};
use decontam_core::strategy::{resolve, ResolveOptions};
use decontam_core::Graph;

mod formats;
mod table;
mod topo;

#[derive(Parser)]
#[command(
    name = "decontam",
    about = "Mobile-agent graph decontamination under temporal immunity"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Emit a generated topology as an edge list.
    Generate {
        #[arg(long)]
        topo: String,
        /// Output path; stdout when omitted.
        #[arg(long)]
        out: Option<std::path::PathBuf>,
    },
    /// Run a strategy against the contagion dynamics.
    Simulate(SimulateArgs),
    /// Exact immunity number of a small graph.
    Oracle(OracleArgs),
    /// Check the mesh cut-matching bound over half-sized subsets.
    VerifyMatching(VerifyMatchingArgs),
    /// Summary table: formula bounds vs measured runs vs oracle values.
    BoundsTable(BoundsTableArgs),
}

#[derive(Args)]
struct SubjectArgs {
    /// Topology string, e.g. `cycle:7`, `mesh:3,4`, `spider:2,2,2`.
    #[arg(long, conflicts_with = "edge_list")]
    topo: Option<String>,
    /// Edge-list file instead of a generated topology.
    #[arg(long)]
    edge_list: Option<std::path::PathBuf>,
}

impl SubjectArgs {
    fn load(&self) -> Result<topo::Subject> {
        match (&self.topo, &self.edge_list) {
            (Some(spec), None) => topo::parse_topology(spec),
            (None, Some(path)) => {
                let text = fs::read_to_string(path)
                    .with_context(|| format!("reading {}", path.display()))?;
                Ok(topo::Subject {
                    graph: formats::parse_edge_list(&text)?,
                    desc: None,
                    label: path.display().to_string(),
                })
            }
            _ => bail!("exactly one of --topo or --edge-list is required"),
        }
    }
}

#[derive(Copy, Clone, ValueEnum)]
enum VariantArg {
    Strict,
    Lenient,
}

#[derive(Args)]
struct SimulateArgs {
    #[command(flatten)]
    subject: SubjectArgs,
    /// Strategy identifier (see `--strategy help` for the list).
    #[arg(long)]
    strategy: String,
    /// Explicit τ, or `paper` to use the strategy's formula.
    #[arg(long, default_value = "paper")]
    tau: String,
    /// Recontamination rule; defaults to the strategy's contract variant.
    #[arg(long)]
    variant: Option<VariantArg>,
    /// Allow the agent to stay put for a tick.
    #[arg(long)]
    allow_stay: bool,
    /// Tick budget; defaults to 8·n·(τ+2).
    #[arg(long)]
    budget: Option<u64>,
    /// Write the run trace to this path.
    #[arg(long)]
    trace: Option<std::path::PathBuf>,
    /// Height multiplier for tree-smallh.
    #[arg(long)]
    alpha: Option<u32>,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    subject: SubjectArgs,
    #[arg(long, value_enum, default_value_t = VariantArg::Strict)]
    variant: VariantArg,
    #[arg(long)]
    allow_stay: bool,
    /// Scan limit; defaults to 2(n−1).
    #[arg(long)]
    tau_max: Option<u32>,
    /// Cap on the encoded configuration space.
    #[arg(long, default_value_t = 500_000_000)]
    state_budget: u64,
    /// Cap on configurations actually explored.
    #[arg(long, default_value_t = 80_000_000)]
    explored_cap: u64,
}

#[derive(Copy, Clone, ValueEnum)]
enum ModeArg {
    Exhaustive,
    Sampled,
}

#[derive(Args)]
struct VerifyMatchingArgs {
    /// Mesh side s (n = s²); must be even.
    #[arg(long)]
    side: usize,
    #[arg(long, value_enum, default_value_t = ModeArg::Exhaustive)]
    mode: ModeArg,
    #[arg(long, default_value_t = 100_000)]
    samples: u64,
    #[arg(long, default_value_t = topo::DEFAULT_SEED)]
    seed: u64,
}

#[derive(Copy, Clone, ValueEnum)]
enum FormatArg {
    Human,
    Tsv,
}

#[derive(Args)]
struct BoundsTableArgs {
    #[arg(long, value_enum, default_value_t = FormatArg::Human)]
    format: FormatArg,
    /// Path row size.
    #[arg(long, default_value_t = 8)]
    path_n: usize,
    /// Cycle row size.
    #[arg(long, default_value_t = 6)]
    cycle_n: usize,
    /// Complete-graph row size.
    #[arg(long, default_value_t = 5)]
    complete_n: usize,
    /// Tree row size (seeded random tree).
    #[arg(long, default_value_t = 400)]
    tree_n: usize,
    /// Seed for the tree and general rows.
    #[arg(long, default_value_t = topo::DEFAULT_SEED)]
    seed: u64,
    /// Skip oracle columns (fast tables).
    #[arg(long)]
    no_oracle: bool,
}

fn variant_of(arg: Option<VariantArg>, default: SemanticVariant, allow_stay: bool) -> SemanticVariant {
    let rule = match arg {
        Some(VariantArg::Strict) => RecontaminationRule::Strict,
        Some(VariantArg::Lenient) => RecontaminationRule::Lenient,
        None => default.rule,
    };
    SemanticVariant { rule, allow_stay }
}

fn main() -> ExitCode {
    // Die quietly when the output pipe closes (e.g. piped into `head`).
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    match dispatch() {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(1)
        }
    }
}

fn dispatch() -> Result<ExitCode> {
    match Cli::parse().cmd {
        Cmd::Generate { topo: spec, out } => {
            let subject = topo::parse_topology(&spec)?;
            let text = formats::write_edge_list(&subject.graph, &subject.label);
            match out {
                Some(path) => fs::write(&path, text)
                    .with_context(|| format!("writing {}", path.display()))?,
                None => print!("{text}"),
            }
            Ok(ExitCode::SUCCESS)
        }
        Cmd::Simulate(args) => cmd_simulate(args),
        Cmd::Oracle(args) => cmd_oracle(args),
        Cmd::VerifyMatching(args) => cmd_verify_matching(args),
        Cmd::BoundsTable(args) => table::cmd_bounds_table(args),
    }
}

fn cmd_simulate(args: SimulateArgs) -> Result<ExitCode> {
    let subject = args.subject.load()?;
    let resolved = resolve(
        &args.strategy,
        &subject.graph,
        subject.desc.as_ref(),
        ResolveOptions { alpha: args.alpha },
    )?;
    let tau = match args.tau.as_str() {
        "paper" => resolved.formula_tau,
        explicit => explicit
            .parse::<u32>()
            .map_err(|_| anyhow!("--tau takes a number or `paper`"))?,
    };
    let variant = variant_of(args.variant, resolved.variant, args.allow_stay);
    let budget = args
        .budget
        .unwrap_or_else(|| dynamics::default_tick_budget(subject.graph.vertex_count(), tau));
    let mut strategy = resolved.strategy;
    let (outcome, trace) = dynamics::run(&subject.graph, strategy.as_mut(), tau, variant, budget)?;
    if let Some(path) = args.trace {
        fs::write(&path, formats::render_trace(&trace))
            .with_context(|| format!("writing {}", path.display()))?;
    }
    let result = match outcome.verdict {
        Verdict::FullyClean => "fully_clean",
        Verdict::BudgetExhausted => "budget_exhausted",
    };
    println!(
        "result={result} ticks={} monotone={} tau={tau}",
        outcome.ticks_used, outcome.monotone
    );
    Ok(match outcome.verdict {
        Verdict::FullyClean => ExitCode::SUCCESS,
        Verdict::BudgetExhausted => ExitCode::from(2),
    })
}

fn cmd_oracle(args: OracleArgs) -> Result<ExitCode> {
    let subject = args.subject.load()?;
    let variant = SemanticVariant {
        rule: match args.variant {
            VariantArg::Strict => RecontaminationRule::Strict,
            VariantArg::Lenient => RecontaminationRule::Lenient,
        },
        allow_stay: args.allow_stay,
    };
    let limits = OracleLimits {
        state_budget: args.state_budget,
        explored_cap: args.explored_cap,
    };
    let result = timed_immunity(&subject.graph, variant, args.tau_max, &limits)?;
    for row in &result.table {
        println!(
            "tau={} feasible={} states={}",
            row.tau, row.feasible, row.explored
        );
    }
    println!("iota={}", result.iota);
    print!("{}", formats::render_script(&result.witness));
    Ok(ExitCode::SUCCESS)
}

/// Oracle run with wall-clock timing attached.
pub fn timed_immunity(
    g: &Graph,
    variant: SemanticVariant,
    tau_max: Option<u32>,
    limits: &OracleLimits,
) -> Result<OracleResult> {
    let start = Instant::now();
    let mut result = immunity_number(g, variant, tau_max, limits)?;
    result.wall_time = Some(start.elapsed());
    Ok(result)
}

fn cmd_verify_matching(args: VerifyMatchingArgs) -> Result<ExitCode> {
    let mode = match args.mode {
        ModeArg::Exhaustive => CoverageMode::Exhaustive,
        ModeArg::Sampled => CoverageMode::Sampled {
            samples: args.samples,
            seed: args.seed,
        },
    };
    let report = verify_lemma(args.side, mode)?;
    println!("side={}", report.side);
    match report.mode {
        CoverageMode::Exhaustive => println!("mode=exhaustive"),
        CoverageMode::Sampled { samples, seed } => {
            println!("mode=sampled samples={samples} seed={seed}")
        }
    }
    println!("subsets={}", report.subsets_checked);
    println!("min_matching={}", report.min_matching);
    println!(
        "worst_w={}",
        report
            .worst_w
            .iter()
            .map(|v| v.to_string())
            .collect::<Vec<_>>()
            .join(",")
    );
    println!("minimizer_count={}", report.minimizer_count);
    println!(
        "non_rectangular_minimizer={}",
        report.non_rectangular_minimizer
    );
    println!("pass={}", report.pass);
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
