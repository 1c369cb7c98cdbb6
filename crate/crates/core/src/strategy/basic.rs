//! Strategies for the elementary families, plus the two generic-graph
//! strategies (spanning-tree DFS and the terminal-vertex walk).

use alloc::vec;
use alloc::vec::Vec;

use crate::dynamics::SimState;
use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::Result;

use super::{MoveScript, Strategy};

/// Leaf-to-leaf sweep of a path; succeeds with τ = 0.
pub fn path_sweep(g: &Graph) -> Result<MoveScript> {
    let n = g.vertex_count();
    if n == 1 {
        return Ok(MoveScript {
            placement: 0,
            moves: vec![],
        });
    }
    let ends: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) == 1).collect();
    let path_like = ends.len() == 2
        && g.vertices().all(|v| g.degree(v) <= 2)
        && g.edge_count() == n - 1
        && g.is_connected();
    if !path_like {
        return Err(Error::applicability("path-sweep requires a path graph"));
    }
    let start = ends[0];
    let mut moves = Vec::with_capacity(n - 1);
    let mut prev = start;
    let mut cur = start;
    for _ in 0..n - 1 {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w != prev)
            .expect("interior path vertex has a forward neighbor");
        moves.push(next);
        prev = cur;
        cur = next;
    }
    Ok(MoveScript {
        placement: start,
        moves,
    })
}

/// Fixed-direction walk around a cycle, two laps; succeeds with τ = 2 and
/// is nonmonotone.
pub fn cycle_sweep(g: &Graph) -> Result<MoveScript> {
    let n = g.vertex_count();
    let cycle_like =
        n >= 4 && g.vertices().all(|v| g.degree(v) == 2) && g.edge_count() == n && g.is_connected();
    if !cycle_like {
        return Err(Error::applicability("cycle-sweep requires a cycle with n >= 4"));
    }
    let mut moves = Vec::with_capacity(2 * n);
    let mut prev = 0;
    let mut cur = g.neighbors(0)[0];
    moves.push(cur);
    for _ in 1..2 * n {
        let next = g
            .neighbors(cur)
            .iter()
            .copied()
            .find(|&w| w != prev)
            .expect("cycle vertex has two neighbors");
        moves.push(next);
        prev = cur;
        cur = next;
    }
    Ok(MoveScript {
        placement: 0,
        moves,
    })
}

/// Sequential visit of all vertices of a complete graph; succeeds with
/// τ = n − 1 under the strict rule.
pub fn complete_sequential(g: &Graph) -> Result<MoveScript> {
    let n = g.vertex_count();
    if g.edge_count() != n * (n - 1) / 2 {
        return Err(Error::applicability(
            "complete-seq requires a complete graph",
        ));
    }
    Ok(MoveScript {
        placement: 0,
        moves: (1..n).collect(),
    })
}

/// The interleaved walk `a1, b1, a2, b2, ..., am, bm, a1, b(m+1), ...` on a
/// complete bipartite graph with side sizes `3 <= m <= n`. Succeeds with
/// τ = 2m − 1 under the lenient rule and cleans in 2n − 1 ticks. Returns
/// the script and the smaller side size `m`.
pub fn bipartite_interleaved(g: &Graph) -> Result<(MoveScript, usize)> {
    let total = g.vertex_count();
    // Two-color; any odd cycle or incompleteness disqualifies.
    let mut color = vec![u8::MAX; total];
    let mut stack = vec![0];
    color[0] = 0;
    while let Some(u) = stack.pop() {
        for &w in g.neighbors(u) {
            if color[w] == u8::MAX {
                color[w] = 1 - color[u];
                stack.push(w);
            } else if color[w] == color[u] {
                return Err(Error::applicability("graph is not bipartite"));
            }
        }
    }
    if !g.is_connected() {
        return Err(Error::applicability("graph is disconnected"));
    }
    let mut side_a: Vec<Vertex> = g.vertices().filter(|&v| color[v] == 0).collect();
    let mut side_b: Vec<Vertex> = g.vertices().filter(|&v| color[v] == 1).collect();
    if side_a.len() > side_b.len() {
        core::mem::swap(&mut side_a, &mut side_b);
    }
    let (m, n) = (side_a.len(), side_b.len());
    if g.edge_count() != m * n {
        return Err(Error::applicability("graph is not complete bipartite"));
    }
    if m < 3 {
        return Err(Error::applicability(
            "interleaved walk requires the smaller side to have size >= 3",
        ));
    }
    let mut seq = Vec::with_capacity(2 * n);
    for i in 0..m {
        seq.push(side_a[i]);
        seq.push(side_b[i]);
    }
    for j in m..n {
        seq.push(side_a[(j - m) % m]);
        seq.push(side_b[j]);
    }
    let placement = seq[0];
    let moves = seq[1..].to_vec();
    Ok((MoveScript { placement, moves }, m))
}

/// Center-start shuttle visiting each leaf in turn; succeeds with τ = 1
/// (monotone under the lenient rule).
pub fn star_shuttle(g: &Graph) -> Result<MoveScript> {
    let n = g.vertex_count();
    if n < 2 {
        return Err(Error::applicability("star requires at least one leaf"));
    }
    let center = g
        .vertices()
        .find(|&v| g.degree(v) == n - 1)
        .ok_or_else(|| Error::applicability("star-shuttle requires a star graph"))?;
    if g.vertices().any(|v| v != center && g.degree(v) != 1) {
        return Err(Error::applicability("star-shuttle requires a star graph"));
    }
    let leaves: Vec<Vertex> = g.vertices().filter(|&v| v != center).collect();
    let mut moves = Vec::with_capacity(2 * leaves.len() - 1);
    for (i, &leaf) in leaves.iter().enumerate() {
        moves.push(leaf);
        if i + 1 < leaves.len() {
            moves.push(center);
        }
    }
    Ok(MoveScript {
        placement: center,
        moves,
    })
}

/// Depth-first traversal of a spanning tree: monotone, exactly 2(n − 1)
/// moves, succeeds with τ = 2(n − 1).
pub fn generic_dfs(g: &Graph) -> Result<MoveScript> {
    if !g.is_connected() {
        return Err(Error::applicability("dfs strategy requires connectivity"));
    }
    let n = g.vertex_count();
    let mut visited = vec![false; n];
    let mut moves = Vec::with_capacity(2 * (n - 1));
    visited[0] = true;
    // Euler tour with an explicit stack of (vertex, neighbor cursor).
    let mut stack: Vec<(Vertex, usize)> = vec![(0, 0)];
    while let Some(&(v, cursor)) = stack.last() {
        let nbrs = g.neighbors(v);
        if cursor < nbrs.len() {
            stack.last_mut().expect("nonempty").1 += 1;
            let w = nbrs[cursor];
            if !visited[w] {
                visited[w] = true;
                moves.push(w);
                stack.push((w, 0));
            }
        } else {
            stack.pop();
            if let Some(&(parent, _)) = stack.last() {
                moves.push(parent);
            }
        }
    }
    Ok(MoveScript {
        placement: 0,
        moves,
    })
}

/// Walk phase of the terminal-vertex strategy.
enum WalkMode {
    Advance,
    /// Walking back toward the walk origin along the recorded path.
    Retreat { idx: usize },
    /// Returning from the origin to the far end of the recorded path.
    Forward { idx: usize },
}

/// The terminal-vertex walk: extend a path of first visits; when stuck at
/// a vertex whose neighbors are all visited (a terminal vertex), drop it,
/// walk back to the origin and return, then branch off the path's end.
/// Succeeds with τ = n − 1.
pub struct TerminalStrategy {
    visited: Vec<bool>,
    deleted: Vec<bool>,
    path: Vec<Vertex>,
    mode: WalkMode,
}

/// Builds the terminal-vertex walk starting from vertex 0.
pub fn generic_terminal(g: &Graph) -> Result<TerminalStrategy> {
    if !g.is_connected() {
        return Err(Error::applicability(
            "terminal strategy requires connectivity",
        ));
    }
    let n = g.vertex_count();
    let mut visited = vec![false; n];
    visited[0] = true;
    Ok(TerminalStrategy {
        visited,
        deleted: vec![false; n],
        path: vec![0],
        mode: WalkMode::Advance,
    })
}

impl Strategy for TerminalStrategy {
    fn name(&self) -> &str {
        "terminal"
    }

    fn placement(&self) -> Vertex {
        0
    }

    fn next_move(&mut self, g: &Graph, _tau: u32, _state: &SimState) -> Option<Vertex> {
        loop {
            match self.mode {
                WalkMode::Advance => {
                    let u = *self.path.last()?;
                    let next = g
                        .neighbors(u)
                        .iter()
                        .copied()
                        .find(|&w| !self.visited[w] && !self.deleted[w]);
                    if let Some(w) = next {
                        self.visited[w] = true;
                        self.path.push(w);
                        return Some(w);
                    }
                    // u is a terminal vertex: delete it and walk home.
                    self.deleted[u] = true;
                    self.path.pop();
                    if self.path.is_empty() {
                        return None;
                    }
                    self.mode = WalkMode::Retreat {
                        idx: self.path.len() - 1,
                    };
                }
                WalkMode::Retreat { idx } => {
                    let dest = self.path[idx];
                    self.mode = if idx == 0 {
                        if self.path.len() == 1 {
                            WalkMode::Advance
                        } else {
                            WalkMode::Forward { idx: 1 }
                        }
                    } else {
                        WalkMode::Retreat { idx: idx - 1 }
                    };
                    return Some(dest);
                }
                WalkMode::Forward { idx } => {
                    let dest = self.path[idx];
                    self.mode = if idx + 1 < self.path.len() {
                        WalkMode::Forward { idx: idx + 1 }
                    } else {
                        WalkMode::Advance
                    };
                    return Some(dest);
                }
            }
        }
    }
}
