//! Decontamination strategies, one per constructive bound in the model.
//!
//! A strategy is a deterministic full-information policy: it sees the
//! graph, the immunity value and the complete simulation state, and emits
//! the agent's next destination. Most strategies compile to a fixed
//! [`MoveScript`]; the tree and terminal-walk strategies react to the
//! contamination map and stay policies.

use alloc::boxed::Box;
use alloc::format;
use alloc::vec::Vec;

use crate::dynamics::{SemanticVariant, SimState};
use crate::error::Error;
use crate::graph::{canonical_center, Graph, TreeView, Vertex};
use crate::topology::TopologyDescriptor;
use crate::Result;

mod basic;
mod kahn;
mod mesh;
mod spider;
mod tree;

pub use basic::{
    bipartite_interleaved, complete_sequential, cycle_sweep, generic_dfs, generic_terminal,
    path_sweep, star_shuttle, TerminalStrategy,
};
pub use kahn::kahn_star_strategy;
pub use mesh::{mesh_column_sweep, MeshSweepPlan};
pub use spider::{spider_iterative, spider_sqrt, SpiderSchedule};
pub use tree::{binary_two_phase, kary_inorder, tree_small_height, tree_sqrt, TreeSqrtStrategy};

/// A deterministic policy mapping the current state to the next move.
pub trait Strategy {
    fn name(&self) -> &str;
    /// Initial agent placement.
    fn placement(&self) -> Vertex;
    /// Next destination, or `None` once the strategy has no further moves.
    fn next_move(&mut self, g: &Graph, tau: u32, state: &SimState) -> Option<Vertex>;
}

/// Precompiled strategy form: a placement and a destination sequence in
/// which consecutive entries are adjacent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoveScript {
    pub placement: Vertex,
    pub moves: Vec<Vertex>,
}

impl MoveScript {
    /// Checks the adjacency invariant against a graph.
    pub fn validate(&self, g: &Graph) -> Result<()> {
        let mut at = self.placement;
        if at >= g.vertex_count() {
            return Err(Error::contract("script placement out of range"));
        }
        for (i, &m) in self.moves.iter().enumerate() {
            if !g.has_edge(at, m) && at != m {
                return Err(Error::contract(format!(
                    "script move {i} ({at} -> {m}) is not an edge"
                )));
            }
            at = m;
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.moves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.moves.is_empty()
    }
}

/// Wraps a [`MoveScript`] as a [`Strategy`]; yields `None` when exhausted.
#[derive(Debug, Clone)]
pub struct ScriptStrategy {
    name: alloc::string::String,
    script: MoveScript,
    cursor: usize,
}

impl ScriptStrategy {
    pub fn new(name: &str, script: MoveScript) -> Self {
        ScriptStrategy {
            name: name.into(),
            script,
            cursor: 0,
        }
    }

    pub fn script(&self) -> &MoveScript {
        &self.script
    }
}

impl Strategy for ScriptStrategy {
    fn name(&self) -> &str {
        &self.name
    }

    fn placement(&self) -> Vertex {
        self.script.placement
    }

    fn next_move(&mut self, _g: &Graph, _tau: u32, _state: &SimState) -> Option<Vertex> {
        let m = self.script.moves.get(self.cursor).copied();
        self.cursor += 1;
        m
    }
}

/// Integer ceiling square root.
pub(crate) fn ceil_sqrt(x: u64) -> u64 {
    let r = x.isqrt();
    if r * r == x {
        r
    } else {
        r + 1
    }
}

/// τ for a `c·√n` bound, computed exactly as ⌈√(c²·n)⌉.
pub fn sqrt_bound_tau(c_squared: u64, n: usize) -> u32 {
    ceil_sqrt(c_squared * n as u64) as u32
}

/// Stable strategy identifiers exposed on the command line.
pub const STRATEGY_IDS: &[&str] = &[
    "path-sweep",
    "cycle-sweep",
    "complete-seq",
    "bipartite-interleave",
    "star-shuttle",
    "spider-iter",
    "spider-sqrt",
    "kary-inorder",
    "binary-2phase",
    "mesh-column",
    "tree-smallh",
    "tree-sqrt",
    "dfs",
    "terminal",
    "kahn-star",
];

/// A catalog entry resolved against a concrete instance: the policy, the
/// τ its bound prescribes, and the semantic variant the bound is stated
/// under.
pub struct ResolvedStrategy {
    pub id: &'static str,
    pub strategy: Box<dyn Strategy>,
    /// τ given by the strategy's formula for this instance (ceilinged).
    pub formula_tau: u32,
    /// Variant under which the strategy's contract holds.
    pub variant: SemanticVariant,
}

/// Options consumed by [`resolve`].
#[derive(Debug, Clone, Copy, Default)]
pub struct ResolveOptions {
    /// Height multiplier for `tree-smallh` (must exceed 2; defaults to 3).
    pub alpha: Option<u32>,
}

fn tree_rooted_at_center(g: &Graph) -> Result<TreeView<'_>> {
    let root = canonical_center(g)?;
    TreeView::rooted(g, root)
}

fn tree_root_for(g: &Graph, desc: Option<&TopologyDescriptor>) -> Result<Vertex> {
    match desc {
        Some(TopologyDescriptor::KaryTree { .. }) => Ok(0),
        _ => canonical_center(g),
    }
}

/// Builds the named strategy for a concrete graph, returning the policy
/// together with its formula τ and contract variant.
pub fn resolve(
    id: &str,
    g: &Graph,
    desc: Option<&TopologyDescriptor>,
    opts: ResolveOptions,
) -> Result<ResolvedStrategy> {
    let n = g.vertex_count();
    let scripted = |id: &'static str, script: MoveScript, tau: u32, variant: SemanticVariant| {
        Ok(ResolvedStrategy {
            id,
            strategy: Box::new(ScriptStrategy::new(id, script)),
            formula_tau: tau,
            variant,
        })
    };
    match id {
        "path-sweep" => scripted("path-sweep", path_sweep(g)?, 0, SemanticVariant::STRICT),
        "cycle-sweep" => scripted("cycle-sweep", cycle_sweep(g)?, 2, SemanticVariant::STRICT),
        "complete-seq" => scripted(
            "complete-seq",
            complete_sequential(g)?,
            (n - 1) as u32,
            SemanticVariant::STRICT,
        ),
        "bipartite-interleave" => {
            let (script, m) = bipartite_interleaved(g)?;
            scripted(
                "bipartite-interleave",
                script,
                2 * m as u32 - 1,
                SemanticVariant::LENIENT,
            )
        }
        "star-shuttle" => scripted("star-shuttle", star_shuttle(g)?, 1, SemanticVariant::LENIENT),
        "spider-iter" => {
            let root = spider::spider_root(g)?;
            let (schedule, script) = spider_iterative(g, root)?;
            scripted(
                "spider-iter",
                script,
                schedule.recommended_tau,
                SemanticVariant::STRICT,
            )
        }
        "spider-sqrt" => {
            let root = spider::spider_root(g)?;
            let tau = ceil_sqrt(16 * n as u64) as u32;
            scripted(
                "spider-sqrt",
                spider_sqrt(g, root)?,
                tau,
                SemanticVariant::STRICT,
            )
        }
        "kary-inorder" => {
            let root = tree_root_for(g, desc)?;
            let t = TreeView::rooted(g, root)?;
            let tau = if t.height() == 0 { 0 } else { 2 * t.height() - 1 };
            scripted("kary-inorder", kary_inorder(&t)?, tau, SemanticVariant::LENIENT)
        }
        "binary-2phase" => {
            let root = tree_root_for(g, desc)?;
            let t = TreeView::rooted(g, root)?;
            if t.height() < 2 {
                return Err(Error::applicability(
                    "binary two-phase requires height >= 2",
                ));
            }
            let tau = 2 * t.height() - 3;
            scripted(
                "binary-2phase",
                binary_two_phase(&t)?,
                tau,
                SemanticVariant::LENIENT,
            )
        }
        "mesh-column" => {
            let (p, q) = match desc {
                Some(&TopologyDescriptor::Mesh { p, q }) => (p, q),
                _ => {
                    return Err(Error::applicability(
                        "mesh-column requires a mesh topology descriptor",
                    ))
                }
            };
            let plan = mesh_column_sweep(g, p, q)?;
            let rows = p.min(q);
            let tau = if rows == 1 { 0 } else { rows as u32 };
            scripted("mesh-column", plan.script, tau, SemanticVariant::STRICT)
        }
        "tree-smallh" => {
            let alpha = opts.alpha.unwrap_or(3);
            let t = tree_rooted_at_center(g)?;
            let tau = alpha * t.height().max(1);
            scripted(
                "tree-smallh",
                tree_small_height(&t, alpha)?,
                tau,
                SemanticVariant::STRICT,
            )
        }
        "tree-sqrt" => {
            let t = tree_rooted_at_center(g)?;
            let tau = ceil_sqrt(900 * n as u64) as u32;
            Ok(ResolvedStrategy {
                id: "tree-sqrt",
                strategy: Box::new(tree_sqrt(&t)?),
                formula_tau: tau,
                variant: SemanticVariant::STRICT,
            })
        }
        "dfs" => scripted(
            "dfs",
            generic_dfs(g)?,
            2 * (n as u32 - 1),
            SemanticVariant::STRICT,
        ),
        "terminal" => Ok(ResolvedStrategy {
            id: "terminal",
            strategy: Box::new(generic_terminal(g)?),
            formula_tau: (n - 1) as u32,
            variant: SemanticVariant::STRICT,
        }),
        "kahn-star" => {
            let (arms, long_len) = match desc {
                Some(&TopologyDescriptor::KahnPair { arms, long_len }) => (arms, long_len),
                _ => {
                    return Err(Error::applicability(
                        "kahn-star requires a kahn_pair topology descriptor",
                    ))
                }
            };
            scripted(
                "kahn-star",
                kahn_star_strategy(g, arms, long_len)?,
                kahn::kahn_star_tau(arms, long_len),
                SemanticVariant::STRICT,
            )
        }
        other => Err(Error::parameter(format!(
            "unknown strategy id `{other}` (valid: {})",
            STRATEGY_IDS.join(", ")
        ))),
    }
}
