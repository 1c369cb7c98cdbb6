//! Discrete-time contagion dynamics.
//!
//! A tick applies, in order:
//!
//! 1. every agent moves to its destination, which becomes clean with its
//!    exposure timer reset;
//! 2. every clean unoccupied vertex with a contaminated neighbor (as of
//!    after the moves, before any recontamination this tick) has its
//!    exposure timer incremented; clean unoccupied vertices with no
//!    contaminated neighbor are reset to zero;
//! 3. recontamination: under the strict rule a vertex flips once its
//!    uninterrupted exposure reaches τ; under the lenient rule once it
//!    exceeds τ. With τ = 0 under the strict rule any exposed vertex flips
//!    immediately, and the flips cascade within the tick until no clean
//!    unoccupied vertex has a contaminated neighbor — the classical
//!    zero-immunity search model.
//!
//! Newly recontaminated vertices influence their neighbors' exposure only
//! from the next tick (except for the τ = 0 cascade above).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::strategy::Strategy;
use crate::Result;

/// Recontamination rule: does exposure reaching exactly τ flip a vertex
/// (strict) or only exceeding it (lenient)?
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum RecontaminationRule {
    #[default]
    Strict,
    Lenient,
}

/// The semantic knobs of the model.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct SemanticVariant {
    pub rule: RecontaminationRule,
    /// May an agent stay put for a tick instead of moving to a neighbor?
    pub allow_stay: bool,
}

impl SemanticVariant {
    pub const STRICT: SemanticVariant = SemanticVariant {
        rule: RecontaminationRule::Strict,
        allow_stay: false,
    };
    pub const LENIENT: SemanticVariant = SemanticVariant {
        rule: RecontaminationRule::Lenient,
        allow_stay: false,
    };

    /// Exposure value at which a vertex flips.
    pub fn flip_threshold(&self, tau: u32) -> u32 {
        match self.rule {
            // τ = 0 strict: any exposed vertex flips (exposure is >= 1
            // right after the increment).
            RecontaminationRule::Strict => tau.max(1),
            RecontaminationRule::Lenient => tau + 1,
        }
    }

    /// The τ = 0 strict rule recontaminates through clean territory within
    /// the tick.
    pub fn cascades(&self, tau: u32) -> bool {
        self.rule == RecontaminationRule::Strict && tau == 0
    }

    pub fn rule_name(&self) -> &'static str {
        match self.rule {
            RecontaminationRule::Strict => "strict",
            RecontaminationRule::Lenient => "lenient",
        }
    }
}

/// One tick's full world state.
#[derive(Debug, Clone, Eq)]
pub struct SimState {
    tick: u64,
    agents: Vec<Vertex>,
    clean: Vec<bool>,
    occupied: Vec<bool>,
    /// Exposure timer Ξ(v); meaningful only for clean vertices, kept at 0
    /// for contaminated ones.
    exposure: Vec<u32>,
    /// Per-vertex count of contaminated neighbors.
    cont_nbr: Vec<u32>,
    contaminated: usize,
    /// Vertices with a contaminated neighbor, scanned for exposure updates;
    /// lazily pruned once the count returns to zero.
    watch: Vec<Vertex>,
    in_watch: Vec<bool>,
}

impl PartialEq for SimState {
    fn eq(&self, other: &Self) -> bool {
        // The watch list is scheduling state, not world state.
        self.tick == other.tick
            && self.agents == other.agents
            && self.clean == other.clean
            && self.exposure == other.exposure
    }
}

impl SimState {
    pub fn tick(&self) -> u64 {
        self.tick
    }

    pub fn agents(&self) -> &[Vertex] {
        &self.agents
    }

    pub fn agent(&self) -> Vertex {
        self.agents[0]
    }

    pub fn is_clean(&self, v: Vertex) -> bool {
        self.clean[v]
    }

    pub fn is_occupied(&self, v: Vertex) -> bool {
        self.occupied[v]
    }

    pub fn exposure(&self, v: Vertex) -> u32 {
        self.exposure[v]
    }

    pub fn clean_count(&self) -> usize {
        self.clean.len() - self.contaminated
    }

    pub fn contaminated_count(&self) -> usize {
        self.contaminated
    }

    pub fn all_clean(&self) -> bool {
        self.contaminated == 0
    }

    pub fn contaminated_vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        (0..self.clean.len()).filter(move |&v| !self.clean[v])
    }

    fn push_watch(&mut self, v: Vertex) {
        if !self.in_watch[v] && self.cont_nbr[v] > 0 {
            self.in_watch[v] = true;
            self.watch.push(v);
        }
    }

    fn make_clean(&mut self, g: &Graph, v: Vertex) {
        if !self.clean[v] {
            self.clean[v] = true;
            self.contaminated -= 1;
            for &w in g.neighbors(v) {
                self.cont_nbr[w] -= 1;
                if self.cont_nbr[w] == 0 && self.clean[w] {
                    // All neighbors decontaminated: exposure resets.
                    self.exposure[w] = 0;
                }
            }
        }
        self.push_watch(v);
    }

    fn make_contaminated(&mut self, g: &Graph, v: Vertex) {
        debug_assert!(self.clean[v] && !self.occupied[v]);
        self.clean[v] = false;
        self.exposure[v] = 0;
        self.contaminated += 1;
        for &w in g.neighbors(v) {
            self.cont_nbr[w] += 1;
            self.push_watch(w);
        }
    }
}

/// Record of a single tick, as stored in a [`Trace`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TickRecord {
    pub tick: u64,
    pub moves: Vec<Vertex>,
    pub cleaned: Vec<Vertex>,
    pub recontaminated: Vec<Vertex>,
    pub clean_count: usize,
    /// FNV-1a digest of the exposure vector after the tick.
    pub exposure_digest: u64,
}

/// Append-only run log: replaying `moves` from the initial placement
/// reproduces the final state exactly.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Trace {
    pub graph_digest: String,
    pub tau: u32,
    pub variant: SemanticVariant,
    pub strategy: String,
    pub placements: Vec<Vertex>,
    pub records: Vec<TickRecord>,
}

impl Trace {
    pub fn is_monotone(&self) -> bool {
        self.records.iter().all(|r| r.recontaminated.is_empty())
    }
}

/// Final verdict of a run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    FullyClean,
    BudgetExhausted,
}

/// Summary of a run.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub verdict: Verdict,
    pub ticks_used: u64,
    pub peak_clean: usize,
    pub monotone: bool,
}

/// Default driver budget: generous against every cataloged strategy.
pub fn default_tick_budget(n: usize, tau: u32) -> u64 {
    8 * n as u64 * (tau as u64 + 2)
}

/// Initial state: every placement vertex clean with zero exposure, all
/// other vertices contaminated.
pub fn init(
    g: &Graph,
    placements: &[Vertex],
    _tau: u32,
    _variant: SemanticVariant,
) -> Result<SimState> {
    if placements.is_empty() {
        return Err(Error::contract("at least one agent placement required"));
    }
    let n = g.vertex_count();
    for &v in placements {
        if v >= n {
            return Err(Error::contract(format!("placement {v} out of range")));
        }
    }
    let mut state = SimState {
        tick: 0,
        agents: placements.to_vec(),
        clean: vec![false; n],
        occupied: vec![false; n],
        exposure: vec![0; n],
        cont_nbr: vec![0; n],
        contaminated: n,
        watch: Vec::new(),
        in_watch: vec![false; n],
    };
    for v in 0..n {
        state.cont_nbr[v] = g.degree(v) as u32;
    }
    for &v in placements {
        state.occupied[v] = true;
        state.make_clean(g, v);
    }
    Ok(state)
}

fn fnv1a(data: impl Iterator<Item = u64>) -> u64 {
    let mut hash = 0xcbf29ce484222325u64;
    for word in data {
        for byte in word.to_le_bytes() {
            hash ^= byte as u64;
            hash = hash.wrapping_mul(0x100000001b3);
        }
    }
    hash
}

/// Applies one tick. `moves` gives each agent's destination, which must be
/// a neighbor of its current vertex (or the vertex itself when the variant
/// allows staying). Simultaneous multi-agent moves are resolved in agent
/// index order; cleaning is idempotent so the order is unobservable.
pub fn step(
    g: &Graph,
    state: &mut SimState,
    moves: &[Vertex],
    tau: u32,
    variant: SemanticVariant,
) -> Result<TickRecord> {
    if moves.len() != state.agents.len() {
        return Err(Error::contract(format!(
            "expected {} moves, got {}",
            state.agents.len(),
            moves.len()
        )));
    }
    for (idx, (&from, &to)) in state.agents.iter().zip(moves).enumerate() {
        let legal = g.has_edge(from, to) || (variant.allow_stay && from == to);
        if !legal {
            return Err(Error::contract(format!(
                "agent {idx} cannot move {from} -> {to}: not an edge"
            )));
        }
    }

    // Phase 1: move and decontaminate destinations.
    let mut cleaned = Vec::new();
    for &v in state.agents.iter() {
        state.occupied[v] = false;
    }
    for (idx, &to) in moves.iter().enumerate() {
        state.agents[idx] = to;
        state.occupied[to] = true;
        if !state.clean[to] {
            state.make_clean(g, to);
            cleaned.push(to);
        }
        state.exposure[to] = 0; // visit resets the timer
    }
    cleaned.sort_unstable();

    // Phase 2: exposure update against post-move, pre-flip contamination.
    let threshold = variant.flip_threshold(tau);
    let mut flips = Vec::new();
    let mut watch_idx = 0;
    while watch_idx < state.watch.len() {
        let v = state.watch[watch_idx];
        if state.cont_nbr[v] == 0 {
            // Exposure already reset when the count hit zero.
            state.in_watch[v] = false;
            state.watch.swap_remove(watch_idx);
            continue;
        }
        watch_idx += 1;
        if state.clean[v] && !state.occupied[v] {
            state.exposure[v] += 1;
            if state.exposure[v] >= threshold {
                flips.push(v);
            }
        }
    }

    // Phase 3: simultaneous recontamination, cascading at strict τ = 0.
    let mut recontaminated = Vec::new();
    for &v in &flips {
        state.make_contaminated(g, v);
        recontaminated.push(v);
    }
    if variant.cascades(tau) {
        let mut cursor = 0;
        while cursor < recontaminated.len() {
            let u = recontaminated[cursor];
            cursor += 1;
            for &w in g.neighbors(u) {
                if state.clean[w] && !state.occupied[w] {
                    state.make_contaminated(g, w);
                    recontaminated.push(w);
                }
            }
        }
    }
    recontaminated.sort_unstable();

    state.tick += 1;
    Ok(TickRecord {
        tick: state.tick,
        moves: moves.to_vec(),
        cleaned,
        recontaminated,
        clean_count: state.clean_count(),
        exposure_digest: fnv1a(state.exposure.iter().map(|&x| x as u64)),
    })
}

/// Drives a strategy against the dynamics until the graph is fully clean
/// or the tick budget (or the strategy's script) is exhausted.
pub fn run(
    g: &Graph,
    strategy: &mut dyn Strategy,
    tau: u32,
    variant: SemanticVariant,
    tick_budget: u64,
) -> Result<(Outcome, Trace)> {
    if tick_budget == 0 {
        return Err(Error::contract("tick budget must be at least 1"));
    }
    let placement = strategy.placement();
    let mut state = init(g, &[placement], tau, variant)?;
    let mut trace = Trace {
        graph_digest: g.digest(),
        tau,
        variant,
        strategy: String::from(strategy.name()),
        placements: vec![placement],
        records: Vec::new(),
    };
    let mut peak = state.clean_count();
    while !state.all_clean() && state.tick() < tick_budget {
        let Some(dest) = strategy.next_move(g, tau, &state) else {
            break; // script exhausted
        };
        let record = step(g, &mut state, &[dest], tau, variant)?;
        peak = peak.max(record.clean_count);
        trace.records.push(record);
    }
    let verdict = if state.all_clean() {
        Verdict::FullyClean
    } else {
        Verdict::BudgetExhausted
    };
    let outcome = Outcome {
        verdict,
        ticks_used: state.tick(),
        peak_clean: peak,
        monotone: trace.is_monotone(),
    };
    Ok((outcome, trace))
}

/// Replays an explicit move list from a placement; used to validate oracle
/// witnesses and serialized scripts against the engine.
pub fn replay(
    g: &Graph,
    placement: Vertex,
    moves: &[Vertex],
    tau: u32,
    variant: SemanticVariant,
) -> Result<(Outcome, Trace)> {
    let mut script = crate::strategy::ScriptStrategy::new(
        "replay",
        crate::strategy::MoveScript {
            placement,
            moves: moves.to_vec(),
        },
    );
    let budget = default_tick_budget(g.vertex_count(), tau).max(moves.len() as u64 + 1);
    run(g, &mut script, tau, variant, budget)
}
