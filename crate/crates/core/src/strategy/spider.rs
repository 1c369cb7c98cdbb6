//! Spider strategies: the iterative per-arm sweep and its square-root
//! refinement for spiders with many short arms.

use alloc::vec;
use alloc::vec::Vec;

use crate::dynamics::{self, SemanticVariant, SimState};
use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::Result;

use super::{ceil_sqrt, MoveScript, Strategy};

/// Finds the spider root: the unique vertex of degree >= 3 of a tree whose
/// other vertices have degree <= 2. A degenerate two-arm spider (a path)
/// is rejected; use the path strategy there.
pub fn spider_root(g: &Graph) -> Result<Vertex> {
    if g.edge_count() != g.vertex_count() - 1 || !g.is_connected() {
        return Err(Error::applicability("spider strategies require a tree"));
    }
    let mut hubs = g.vertices().filter(|&v| g.degree(v) >= 3);
    match (hubs.next(), hubs.next()) {
        (Some(root), None) => Ok(root),
        (None, _) => Err(Error::applicability("no vertex of degree >= 3")),
        _ => Err(Error::applicability("more than one vertex of degree >= 3")),
    }
}

/// Splits a spider into its arms: root-outward vertex lists.
fn spider_arms(g: &Graph, root: Vertex) -> Result<Vec<Vec<Vertex>>> {
    let mut arms = Vec::new();
    for &first in g.neighbors(root) {
        let mut arm = vec![first];
        let mut prev = root;
        let mut cur = first;
        loop {
            if g.degree(cur) > 2 {
                return Err(Error::applicability("branching inside a spider arm"));
            }
            match g.neighbors(cur).iter().copied().find(|&w| w != prev) {
                Some(next) => {
                    arm.push(next);
                    prev = cur;
                    cur = next;
                }
                None => break,
            }
        }
        arms.push(arm);
    }
    Ok(arms)
}

/// The iterative schedule: arm processing order, the farthest contaminated
/// target observed on every arm entry, and the τ the closed-form bound
/// prescribes.
#[derive(Debug, Clone)]
pub struct SpiderSchedule {
    /// Arms in processing order (descending length, then identity).
    pub arms: Vec<Vec<Vertex>>,
    /// `(iteration, arm index, farthest contaminated vertex)` per sweep.
    pub targets: Vec<(usize, usize, Vertex)>,
    /// Recommended τ: ⌈Δ + √(Δ² + 4m)⌉ for root degree Δ and longest arm m.
    pub recommended_tau: u32,
}

/// Recommended immunity for the iterative spider sweep.
pub fn spider_iter_tau(max_degree: usize, longest_arm: usize) -> u32 {
    let d = max_degree as u64;
    let m = longest_arm as u64;
    (d + ceil_sqrt(d * d + 4 * m)) as u32
}

enum SpiderPhase {
    AtRoot,
    Outbound { arm: usize, pos: usize },
    Inbound { arm: usize, pos: usize },
}

/// Full-information policy behind the iterative sweep. In iteration `j`
/// the agent serves arms `j, j-1, ..., 1`, each up to its farthest
/// contaminated vertex, returning to the root in between. Extra full
/// sweeps run after iteration Δ until the covered arms are clean.
pub struct SpiderPolicy {
    root: Vertex,
    arms: Vec<Vec<Vertex>>,
    iteration: usize,
    /// Arm indices still to serve this sweep, popped from the back.
    pending: Vec<usize>,
    phase: SpiderPhase,
    sweep_had_work: bool,
    extra_sweeps: usize,
    targets: Vec<(usize, usize, Vertex)>,
}

impl SpiderPolicy {
    /// `arms` must be root-outward vertex lists; they are reordered by
    /// descending length, ties by first vertex.
    fn new(root: Vertex, mut arms: Vec<Vec<Vertex>>) -> Self {
        arms.sort_by(|a, b| b.len().cmp(&a.len()).then(a[0].cmp(&b[0])));
        SpiderPolicy {
            root,
            arms,
            iteration: 1,
            pending: vec![0],
            phase: SpiderPhase::AtRoot,
            sweep_had_work: false,
            extra_sweeps: 0,
            targets: Vec::new(),
        }
    }

    fn farthest_dirty(&self, state: &SimState, arm: usize, beyond: usize) -> Option<usize> {
        self.arms[arm]
            .iter()
            .enumerate()
            .skip(beyond)
            .filter(|&(_, &v)| !state.is_clean(v))
            .map(|(i, _)| i)
            .next_back()
    }

    /// Starts the next iteration (or extra sweep); false when done.
    fn refill(&mut self) -> bool {
        if self.iteration < self.arms.len() {
            self.iteration += 1;
        } else if self.sweep_had_work && self.extra_sweeps <= 2 * self.arms.len() + 4 {
            self.extra_sweeps += 1;
        } else {
            return false;
        }
        self.pending = (0..self.iteration).collect();
        self.sweep_had_work = false;
        true
    }
}

impl Strategy for SpiderPolicy {
    fn name(&self) -> &str {
        "spider-iter"
    }

    fn placement(&self) -> Vertex {
        self.root
    }

    fn next_move(&mut self, _g: &Graph, _tau: u32, state: &SimState) -> Option<Vertex> {
        loop {
            match self.phase {
                SpiderPhase::AtRoot => match self.pending.pop() {
                    Some(arm) => {
                        if let Some(far) = self.farthest_dirty(state, arm, 0) {
                            self.targets
                                .push((self.iteration, arm, self.arms[arm][far]));
                            self.phase = SpiderPhase::Outbound { arm, pos: 0 };
                            self.sweep_had_work = true;
                            return Some(self.arms[arm][0]);
                        }
                    }
                    None => {
                        if !self.refill() {
                            return None;
                        }
                    }
                },
                SpiderPhase::Outbound { arm, pos } => {
                    if self.farthest_dirty(state, arm, pos + 1).is_some() {
                        self.phase = SpiderPhase::Outbound { arm, pos: pos + 1 };
                        return Some(self.arms[arm][pos + 1]);
                    }
                    self.phase = SpiderPhase::Inbound { arm, pos };
                }
                SpiderPhase::Inbound { arm, pos } => {
                    if pos == 0 {
                        self.phase = SpiderPhase::AtRoot;
                        return Some(self.root);
                    }
                    self.phase = SpiderPhase::Inbound { arm, pos: pos - 1 };
                    return Some(self.arms[arm][pos - 1]);
                }
            }
        }
    }
}

/// Compiles the iterative sweep for a spider rooted at its hub by running
/// the policy against the dynamics at the recommended τ.
pub fn spider_iterative(g: &Graph, root: Vertex) -> Result<(SpiderSchedule, MoveScript)> {
    let arms = spider_arms(g, root)?;
    let longest = arms.iter().map(Vec::len).max().unwrap_or(0);
    let tau = spider_iter_tau(g.degree(root), longest);
    let mut policy = SpiderPolicy::new(root, arms);
    let script = compile(g, &mut policy, tau)?;
    let schedule = SpiderSchedule {
        arms: policy.arms,
        targets: policy.targets,
        recommended_tau: tau,
    };
    Ok((schedule, script))
}

/// Square-root spider strategy: sweep the long arms (length >= √n)
/// iteratively, then finish the short arms with leaf shuttles. Succeeds
/// with τ = ⌈4√n⌉.
pub fn spider_sqrt(g: &Graph, root: Vertex) -> Result<MoveScript> {
    let arms = spider_arms(g, root)?;
    let n = g.vertex_count() as u64;
    let threshold = ceil_sqrt(n) as usize;
    let tau = ceil_sqrt(16 * n) as u32;
    let (long, short): (Vec<_>, Vec<_>) = arms.into_iter().partition(|a| a.len() >= threshold);
    let mut policy = SqrtSpiderPolicy {
        root,
        long: (!long.is_empty()).then(|| SpiderPolicy::new(root, long)),
        shuttle: short
            .iter()
            .flat_map(|arm| {
                // Out to the tip and back, vertex by vertex.
                arm.iter()
                    .copied()
                    .chain(arm.iter().rev().skip(1).copied())
                    .chain(core::iter::once(root))
            })
            .collect(),
        shuttle_cursor: 0,
    };
    compile(g, &mut policy, tau)
}

struct SqrtSpiderPolicy {
    root: Vertex,
    long: Option<SpiderPolicy>,
    shuttle: Vec<Vertex>,
    shuttle_cursor: usize,
}

impl Strategy for SqrtSpiderPolicy {
    fn name(&self) -> &str {
        "spider-sqrt"
    }

    fn placement(&self) -> Vertex {
        self.root
    }

    fn next_move(&mut self, g: &Graph, tau: u32, state: &SimState) -> Option<Vertex> {
        if let Some(long) = &mut self.long {
            if let Some(m) = long.next_move(g, tau, state) {
                return Some(m);
            }
            self.long = None;
        }
        let m = self.shuttle.get(self.shuttle_cursor).copied();
        self.shuttle_cursor += 1;
        m
    }
}

/// Runs a policy against the dynamics, recording the move list.
fn compile(g: &Graph, policy: &mut dyn Strategy, tau: u32) -> Result<MoveScript> {
    let placement = policy.placement();
    let mut state = dynamics::init(g, &[placement], tau, SemanticVariant::STRICT)?;
    let mut moves = Vec::new();
    let budget = dynamics::default_tick_budget(g.vertex_count(), tau);
    while !state.all_clean() && state.tick() < budget {
        let Some(dest) = policy.next_move(g, tau, &state) else {
            break;
        };
        dynamics::step(g, &mut state, &[dest], tau, SemanticVariant::STRICT)?;
        moves.push(dest);
    }
    Ok(MoveScript { placement, moves })
}
