//! The bounds table: one row per studied topology, comparing the formula
//! bounds against a measured strategy run and, where tractable, the exact
//! oracle value.

use std::process::ExitCode;

use anyhow::Result;

use decontam_core::dynamics::{self, SemanticVariant, Verdict};
use decontam_core::oracle::OracleLimits;
use decontam_core::strategy::{resolve, ResolveOptions};
use decontam_core::topology::{self, TopologyDescriptor};
use decontam_core::{Error as CoreError, Graph};

use crate::{formats, timed_immunity, BoundsTableArgs, FormatArg};

struct Row {
    topology: String,
    upper: String,
    lower: String,
    strategy: &'static str,
    measured: String,
    oracle: String,
}

fn measure(g: &Graph, desc: Option<&TopologyDescriptor>, id: &'static str) -> String {
    let resolved = match resolve(id, g, desc, ResolveOptions::default()) {
        Ok(r) => r,
        Err(e) => return format!("unavailable ({e})"),
    };
    let tau = resolved.formula_tau;
    let budget = dynamics::default_tick_budget(g.vertex_count(), tau);
    let mut strategy = resolved.strategy;
    match dynamics::run(g, strategy.as_mut(), tau, resolved.variant, budget) {
        Ok((outcome, _)) => {
            let result = match outcome.verdict {
                Verdict::FullyClean => "clean",
                Verdict::BudgetExhausted => "exhausted",
            };
            format!(
                "tau={tau} ({}) {result} ticks={} monotone={}",
                formats::variant_name(resolved.variant),
                outcome.ticks_used,
                outcome.monotone
            )
        }
        Err(e) => format!("run failed ({e})"),
    }
}

/// Exact value, or `?` when the search is out of budget.
fn oracle_cell(g: &Graph, variant: SemanticVariant, skip: bool) -> String {
    if skip {
        return "?".into();
    }
    let limits = OracleLimits::default();
    match timed_immunity(g, variant, None, &limits) {
        Ok(result) => format!("{}", result.iota),
        Err(e) => match e.downcast_ref::<CoreError>() {
            Some(CoreError::Resource(_)) => "?".into(),
            _ => format!("error ({e})"),
        },
    }
}

pub fn cmd_bounds_table(args: BoundsTableArgs) -> Result<ExitCode> {
    let strict = SemanticVariant::STRICT;
    let mut rows = Vec::new();

    {
        let n = args.path_n;
        let g = topology::path(n)?;
        let desc = TopologyDescriptor::Path { n };
        rows.push(Row {
            topology: format!("path P_{n}"),
            upper: "0".into(),
            lower: "0".into(),
            strategy: "path-sweep",
            measured: measure(&g, Some(&desc), "path-sweep"),
            oracle: oracle_cell(&g, strict, args.no_oracle),
        });
    }
    {
        let n = args.cycle_n;
        let g = topology::cycle(n)?;
        let desc = TopologyDescriptor::Cycle { n };
        rows.push(Row {
            topology: format!("cycle C_{n}"),
            upper: "2".into(),
            lower: "2".into(),
            strategy: "cycle-sweep",
            measured: measure(&g, Some(&desc), "cycle-sweep"),
            oracle: oracle_cell(&g, strict, args.no_oracle),
        });
    }
    {
        let n = args.complete_n;
        let g = topology::complete(n)?;
        let desc = TopologyDescriptor::Complete { n };
        rows.push(Row {
            topology: format!("complete K_{n}"),
            upper: format!("n-1 = {}", n - 1),
            lower: format!("n-1 = {}", n - 1),
            strategy: "complete-seq",
            measured: measure(&g, Some(&desc), "complete-seq"),
            oracle: oracle_cell(&g, strict, args.no_oracle),
        });
    }
    {
        let (m, n) = (3, 4);
        let g = topology::complete_bipartite(m, n)?;
        let desc = TopologyDescriptor::CompleteBipartite { m, n };
        rows.push(Row {
            topology: format!("complete bipartite K_{{{m},{n}}}"),
            upper: format!("2m-1 = {}", 2 * m - 1),
            lower: format!("2(m-1) = {}", 2 * (m - 1)),
            strategy: "bipartite-interleave",
            measured: measure(&g, Some(&desc), "bipartite-interleave"),
            oracle: format!(
                "strict {} / lenient {}",
                oracle_cell(&g, strict, args.no_oracle),
                oracle_cell(&g, SemanticVariant::LENIENT, args.no_oracle)
            ),
        });
    }
    {
        let leaves = 5;
        let g = topology::star(leaves)?;
        let desc = TopologyDescriptor::Star { leaves };
        rows.push(Row {
            topology: format!("star S_{leaves}"),
            upper: "1".into(),
            lower: "1".into(),
            strategy: "star-shuttle",
            measured: measure(&g, Some(&desc), "star-shuttle"),
            oracle: oracle_cell(&g, strict, args.no_oracle),
        });
    }
    {
        let arms = vec![2usize, 2, 2];
        let g = topology::spider(&arms)?;
        let n = g.vertex_count();
        let desc = TopologyDescriptor::Spider { arms };
        let upper = decontam_core::strategy::sqrt_bound_tau(16, n);
        rows.push(Row {
            topology: format!("spider ({n} vertices)"),
            upper: format!("4*sqrt(n) -> {upper}"),
            lower: "-".into(),
            strategy: "spider-sqrt",
            measured: measure(&g, Some(&desc), "spider-sqrt"),
            oracle: oracle_cell(&g, strict, args.no_oracle),
        });
    }
    {
        let n = args.tree_n;
        let g = topology::random_tree(n, args.seed)?;
        let desc = TopologyDescriptor::RandomTree {
            n,
            seed: args.seed,
        };
        let upper = decontam_core::strategy::sqrt_bound_tau(900, n);
        rows.push(Row {
            topology: format!("tree ({n} vertices, seed {})", args.seed),
            upper: format!("30*sqrt(n) -> {upper}"),
            lower: "-".into(),
            strategy: "tree-sqrt",
            measured: measure(&g, Some(&desc), "tree-sqrt"),
            oracle: if n <= 8 {
                oracle_cell(&g, strict, args.no_oracle)
            } else {
                "?".into()
            },
        });
    }
    {
        let (p, q) = (3, 4);
        let g = topology::mesh(p, q)?;
        let desc = TopologyDescriptor::Mesh { p, q };
        rows.push(Row {
            topology: format!("mesh {p}x{q}"),
            upper: format!("p = {p}"),
            lower: format!("> p/2 = {}", p as f64 / 2.0),
            strategy: "mesh-column",
            measured: measure(&g, Some(&desc), "mesh-column"),
            oracle: oracle_cell(&g, strict, args.no_oracle),
        });
    }
    {
        // Small random connected graph: a seeded tree plus extra edges.
        let n = 7;
        let tree = topology::random_tree(n, args.seed)?;
        let mut edges: Vec<_> = tree.edges().to_vec();
        edges.push((0, n - 1));
        edges.push((1, n - 2));
        let g = Graph::new(n, edges)?;
        rows.push(Row {
            topology: format!("general ({n} vertices, seed {})", args.seed),
            upper: format!("n-1 = {}", n - 1),
            lower: format!("n-1 = {} (complete case)", n - 1),
            strategy: "terminal",
            measured: measure(&g, None, "terminal"),
            oracle: oracle_cell(&g, strict, args.no_oracle),
        });
    }

    match args.format {
        FormatArg::Tsv => {
            println!("topology\tupper\tlower\tstrategy\tmeasured\toracle_iota");
            for r in rows {
                println!(
                    "{}\t{}\t{}\t{}\t{}\t{}",
                    r.topology, r.upper, r.lower, r.strategy, r.measured, r.oracle
                );
            }
        }
        FormatArg::Human => {
            println!(
                "{:<34} {:<18} {:<22} {:<20} {:<46} oracle",
                "topology", "upper bound", "lower bound", "strategy", "measured"
            );
            for r in rows {
                println!(
                    "{:<34} {:<18} {:<22} {:<20} {:<46} {}",
                    r.topology, r.upper, r.lower, r.strategy, r.measured, r.oracle
                );
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}
