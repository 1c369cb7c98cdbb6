//! Text file formats: edge lists, traces, and move scripts.
//!
//! Edge list: optional `#` comment lines, a first data line holding the
//! vertex count, then one `u v` pair per line (0-based, whitespace
//! separated). This is the interchange format for every subcommand.

use std::fmt::Write as _;

use anyhow::{bail, Context, Result};

use decontam_core::dynamics::{SemanticVariant, Trace};
use decontam_core::strategy::MoveScript;
use decontam_core::{Graph, Vertex};

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut n: Option<usize> = None;
    let mut edges: Vec<(Vertex, Vertex)> = Vec::new();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        match n {
            None => {
                n = Some(
                    fields
                        .next()
                        .unwrap()
                        .parse()
                        .with_context(|| format!("line {}: vertex count", lineno + 1))?,
                );
                if fields.next().is_some() {
                    bail!("line {}: expected only the vertex count", lineno + 1);
                }
            }
            Some(_) => {
                let u: Vertex = fields
                    .next()
                    .context("edge line missing endpoints")?
                    .parse()
                    .with_context(|| format!("line {}", lineno + 1))?;
                let v: Vertex = fields
                    .next()
                    .with_context(|| format!("line {}: missing second endpoint", lineno + 1))?
                    .parse()
                    .with_context(|| format!("line {}", lineno + 1))?;
                if fields.next().is_some() {
                    bail!("line {}: expected exactly two endpoints", lineno + 1);
                }
                edges.push((u, v));
            }
        }
    }
    let n = n.context("edge list missing the vertex-count line")?;
    Ok(Graph::new(n, edges)?)
}

pub fn write_edge_list(g: &Graph, label: &str) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{} # {label}", g.vertex_count());
    for &(u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

fn csv(vertices: &[Vertex]) -> String {
    let items: Vec<String> = vertices.iter().map(|v| v.to_string()).collect();
    items.join(",")
}

pub fn variant_name(variant: SemanticVariant) -> String {
    let mut name = variant.rule_name().to_string();
    if variant.allow_stay {
        name.push_str(",allow-stay");
    }
    name
}

/// One tick per line: `tick agent cleaned=<csv> recontaminated=<csv>
/// clean_count=<int>`, preceded by a header recording the run identity.
pub fn render_trace(trace: &Trace) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "# graph={} tau={} variant={} strategy={}",
        trace.graph_digest,
        trace.tau,
        variant_name(trace.variant),
        trace.strategy
    );
    for rec in &trace.records {
        let _ = writeln!(
            out,
            "{} {} cleaned={} recontaminated={} clean_count={}",
            rec.tick,
            csv(&rec.moves),
            csv(&rec.cleaned),
            csv(&rec.recontaminated),
            rec.clean_count
        );
    }
    out
}

/// A placement line plus the destination list.
pub fn render_script(script: &MoveScript) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "placement={}", script.placement);
    let _ = writeln!(out, "moves={}", csv(&script.moves));
    out
}
