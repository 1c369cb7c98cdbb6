//! Topology argument parsing: `family:params` strings and edge-list files.

use anyhow::{anyhow, bail, Context, Result};

use decontam_core::topology::{self, TopologyDescriptor};
use decontam_core::Graph;

/// Fixed default seed so runs are reproducible without flags.
pub const DEFAULT_SEED: u64 = 1729;

/// A resolved simulation subject: the graph, and the descriptor when the
/// graph came from a generator.
pub struct Subject {
    pub graph: Graph,
    pub desc: Option<TopologyDescriptor>,
    pub label: String,
}

/// Parses `family:params`. The Kahn construction is exposed as two
/// members: `kahn_g:a,L` (the plain spider) and `kahn_gstar:a,L` (with
/// the added fan edges).
pub fn parse_topology(spec: &str) -> Result<Subject> {
    let (family, params) = match spec.split_once(':') {
        Some((f, p)) => (f, p),
        None => (spec, ""),
    };
    let nums: Vec<u64> = if params.is_empty() {
        vec![]
    } else {
        params
            .split(',')
            .map(|t| t.trim().parse::<u64>().context("numeric parameter"))
            .collect::<Result<_>>()?
    };
    let arg = |i: usize| -> Result<usize> {
        nums.get(i)
            .map(|&v| v as usize)
            .ok_or_else(|| anyhow!("`{spec}`: missing parameter {}", i + 1))
    };

    let desc = match family {
        "path" => TopologyDescriptor::Path { n: arg(0)? },
        "cycle" => TopologyDescriptor::Cycle { n: arg(0)? },
        "complete" => TopologyDescriptor::Complete { n: arg(0)? },
        "bipartite" => TopologyDescriptor::CompleteBipartite {
            m: arg(0)?,
            n: arg(1)?,
        },
        "star" => TopologyDescriptor::Star { leaves: arg(0)? },
        "spider" => TopologyDescriptor::Spider {
            arms: nums.iter().map(|&v| v as usize).collect(),
        },
        "kary" => TopologyDescriptor::KaryTree {
            k: arg(0)?,
            h: arg(1)? as u32,
        },
        "mesh" => TopologyDescriptor::Mesh {
            p: arg(0)?,
            q: arg(1)?,
        },
        "cylinder" => TopologyDescriptor::Cylinder {
            p: arg(0)?,
            q: arg(1)?,
        },
        "random_tree" => TopologyDescriptor::RandomTree {
            n: arg(0)?,
            seed: nums.get(1).copied().unwrap_or(DEFAULT_SEED),
        },
        "kahn_g" | "kahn_gstar" => TopologyDescriptor::KahnPair {
            arms: arg(0)?,
            long_len: arg(1)?,
        },
        other => bail!(
            "unknown topology family `{other}` (try path, cycle, complete, bipartite, star, \
             spider, kary, mesh, cylinder, random_tree, kahn_g, kahn_gstar)"
        ),
    };

    let graph = match (&desc, family) {
        (TopologyDescriptor::KahnPair { arms, long_len }, "kahn_g") => {
            topology::kahn_pair(*arms, *long_len)?.0
        }
        (TopologyDescriptor::KahnPair { arms, long_len }, _) => {
            topology::kahn_pair(*arms, *long_len)?.1
        }
        _ => topology::generate_graph(&desc)?,
    };
    Ok(Subject {
        graph,
        label: spec.to_string(),
        desc: Some(desc),
    })
}
