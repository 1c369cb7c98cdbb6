//! Exact immunity numbers for small graphs.
//!
//! A configuration packs the agent position and one symbol per vertex
//! (contaminated, or clean with its current exposure) into a single
//! integer. Feasibility of a given τ is decided by breadth-first
//! reachability over the single-agent step relation from every initial
//! placement; the immunity number is the smallest feasible τ, found by a
//! linear scan from zero (feasibility is monotone in τ, and the scan
//! doubles as the check).

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::dynamics::{SemanticVariant, SimState};
use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::strategy::MoveScript;
use crate::Result;

/// Search resource bounds.
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    /// Cap on the encoded configuration space `n·(radix)^n`.
    pub state_budget: u64,
    /// Cap on configurations actually explored (memory guard).
    pub explored_cap: u64,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            state_budget: 500_000_000,
            explored_cap: 80_000_000,
        }
    }
}

/// Packed-configuration codec for one (graph, τ, variant) triple.
pub struct ConfigSpace<'g> {
    g: &'g Graph,
    n: usize,
    tau: u32,
    variant: SemanticVariant,
    radix: u64,
    weight: Vec<u64>,
    agent_weight: u64,
}

pub const CONTAMINATED: u8 = 0;

impl<'g> ConfigSpace<'g> {
    pub fn new(g: &'g Graph, tau: u32, variant: SemanticVariant) -> Result<Self> {
        let n = g.vertex_count();
        // Clean symbols cover the at-rest exposure range.
        let clean_symbols = match variant.rule {
            crate::dynamics::RecontaminationRule::Strict => tau.max(1) as u64,
            crate::dynamics::RecontaminationRule::Lenient => tau as u64 + 1,
        };
        let radix = clean_symbols + 1;
        if radix > 250 {
            return Err(Error::resource(format!(
                "per-vertex alphabet {radix} too large to pack"
            )));
        }
        let mut weight = Vec::with_capacity(n);
        let mut acc: u128 = 1;
        for _ in 0..n {
            weight.push(acc as u64);
            acc = acc.saturating_mul(radix as u128);
        }
        // Codes are agent·radix^n + digits, so the whole space must pack.
        if acc.saturating_mul(n as u128) > u64::MAX as u128 {
            return Err(Error::resource(
                "configuration space exceeds 64-bit packing",
            ));
        }
        Ok(ConfigSpace {
            g,
            n,
            tau,
            variant,
            radix,
            weight,
            agent_weight: acc as u64,
        })
    }

    /// Total number of encoded configurations, `n · radix^n`.
    pub fn space_size(&self) -> u128 {
        self.n as u128 * self.agent_weight as u128
    }

    pub fn radix(&self) -> u64 {
        self.radix
    }

    /// Initial configuration: the placement clean at zero exposure,
    /// everything else contaminated.
    pub fn initial(&self, placement: Vertex) -> u64 {
        placement as u64 * self.agent_weight + self.weight[placement]
    }

    pub fn agent_of(&self, config: u64) -> Vertex {
        (config / self.agent_weight) as Vertex
    }

    pub fn decode_symbols(&self, config: u64, out: &mut Vec<u8>) {
        out.clear();
        let mut rest = config % self.agent_weight;
        for _ in 0..self.n {
            out.push((rest % self.radix) as u8);
            rest /= self.radix;
        }
    }

    fn encode_symbols(&self, agent: Vertex, syms: &[u8]) -> u64 {
        let mut code = agent as u64 * self.agent_weight;
        for (v, &s) in syms.iter().enumerate() {
            code += s as u64 * self.weight[v];
        }
        code
    }

    /// Packs a dynamics state (single agent).
    pub fn encode_state(&self, state: &SimState) -> u64 {
        let mut syms = Vec::with_capacity(self.n);
        for v in 0..self.n {
            if state.is_clean(v) {
                syms.push(1 + state.exposure(v) as u8);
            } else {
                syms.push(CONTAMINATED);
            }
        }
        self.encode_symbols(state.agent(), &syms)
    }

    /// Applies one tick of the step relation to a packed configuration.
    /// `dest` must be a legal destination. Returns the successor and
    /// whether it is fully clean. `syms` and `flips` are scratch buffers.
    pub fn transition(
        &self,
        syms: &mut Vec<u8>,
        flips: &mut Vec<Vertex>,
        config: u64,
        dest: Vertex,
    ) -> (u64, bool) {
        self.decode_symbols(config, syms);
        // Move and decontaminate the destination.
        syms[dest] = 1;
        // Exposure update against post-move, pre-flip contamination.
        let threshold = self.variant.flip_threshold(self.tau) as u64;
        flips.clear();
        for v in 0..self.n {
            if v == dest || syms[v] == CONTAMINATED {
                continue;
            }
            let exposed = self
                .g
                .neighbors(v)
                .iter()
                .any(|&w| syms[w] == CONTAMINATED);
            if exposed {
                if syms[v] as u64 >= threshold {
                    flips.push(v);
                } else {
                    syms[v] += 1;
                }
            } else {
                syms[v] = 1;
            }
        }
        // Recontamination, cascading at strict τ = 0.
        let mut cursor = 0;
        for &v in flips.iter() {
            syms[v] = CONTAMINATED;
        }
        if self.variant.cascades(self.tau) {
            while cursor < flips.len() {
                let u = flips[cursor];
                cursor += 1;
                for &w in self.g.neighbors(u) {
                    if w != dest && syms[w] != CONTAMINATED {
                        syms[w] = CONTAMINATED;
                        flips.push(w);
                    }
                }
            }
        }
        let all_clean = syms.iter().all(|&s| s != CONTAMINATED);
        (self.encode_symbols(dest, syms), all_clean)
    }
}

struct BitSet {
    bits: Vec<u64>,
}

impl BitSet {
    fn new(len: u64) -> Self {
        BitSet {
            bits: vec![0u64; len.div_ceil(64) as usize],
        }
    }

    fn insert(&mut self, idx: u64) -> bool {
        let (word, bit) = ((idx / 64) as usize, idx % 64);
        let fresh = self.bits[word] & (1 << bit) == 0;
        self.bits[word] |= 1 << bit;
        fresh
    }
}

/// Outcome of a single-τ feasibility search.
#[derive(Debug, Clone)]
pub struct Feasibility {
    pub tau: u32,
    pub feasible: bool,
    /// Configurations explored before the answer was known.
    pub explored: u64,
    pub witness: Option<MoveScript>,
}

/// Decides whether τ suffices to fully decontaminate `g` (single agent,
/// best initial placement) and returns a shortest witness when it does.
pub fn feasible(
    g: &Graph,
    tau: u32,
    variant: SemanticVariant,
    limits: &OracleLimits,
) -> Result<Feasibility> {
    if !g.is_connected() {
        return Err(Error::structure("oracle requires a connected graph"));
    }
    let space = ConfigSpace::new(g, tau, variant)?;
    if space.space_size() > limits.state_budget as u128 {
        return Err(Error::resource(format!(
            "configuration space {} exceeds the state budget {}",
            space.space_size(),
            limits.state_budget
        )));
    }
    let n = g.vertex_count();

    let mut visited = BitSet::new(space.space_size() as u64);
    let mut codes: Vec<u64> = Vec::new();
    let mut parents: Vec<u32> = Vec::new();
    let mut moves_in: Vec<u8> = Vec::new();

    let reconstruct = |idx: usize, codes: &[u64], parents: &[u32], moves_in: &[u8]| {
        let mut rev = Vec::new();
        let mut i = idx;
        while parents[i] != u32::MAX {
            rev.push(moves_in[i] as Vertex);
            i = parents[i] as usize;
        }
        rev.reverse();
        MoveScript {
            placement: space.agent_of(codes[i]),
            moves: rev,
        }
    };

    for v in 0..n {
        let code = space.initial(v);
        if visited.insert(code) {
            codes.push(code);
            parents.push(u32::MAX);
            moves_in.push(0);
        }
    }
    if n == 1 {
        return Ok(Feasibility {
            tau,
            feasible: true,
            explored: 1,
            witness: Some(MoveScript {
                placement: 0,
                moves: vec![],
            }),
        });
    }

    let mut syms = Vec::new();
    let mut flips = Vec::new();
    let mut cursor = 0usize;
    while cursor < codes.len() {
        let config = codes[cursor];
        let agent = space.agent_of(config);
        let stay = variant.allow_stay.then_some(agent);
        for &dest in g.neighbors(agent).iter().chain(stay.iter()) {
            let (next, all_clean) = space.transition(&mut syms, &mut flips, config, dest);
            if visited.insert(next) {
                codes.push(next);
                parents.push(cursor as u32);
                moves_in.push(dest as u8);
                if all_clean {
                    let witness = reconstruct(codes.len() - 1, &codes, &parents, &moves_in);
                    return Ok(Feasibility {
                        tau,
                        feasible: true,
                        explored: codes.len() as u64,
                        witness: Some(witness),
                    });
                }
            }
        }
        cursor += 1;
        if codes.len() as u64 > limits.explored_cap {
            return Err(Error::resource(format!(
                "explored configurations exceed the cap {}",
                limits.explored_cap
            )));
        }
    }
    Ok(Feasibility {
        tau,
        feasible: false,
        explored: codes.len() as u64,
        witness: None,
    })
}

/// Per-τ scan row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauRow {
    pub tau: u32,
    pub feasible: bool,
    pub explored: u64,
}

/// Exact immunity computation result.
#[derive(Debug, Clone)]
pub struct OracleResult {
    pub graph_digest: String,
    pub variant: SemanticVariant,
    /// The least feasible τ.
    pub iota: u32,
    /// Scan rows for τ = 0 ..= iota.
    pub table: Vec<TauRow>,
    /// Shortest witness at τ = iota.
    pub witness: MoveScript,
    pub explored_total: u64,
    /// Filled in by callers that can read a clock.
    pub wall_time: Option<core::time::Duration>,
}

/// Smallest τ for which `g` can be fully decontaminated, scanning upward
/// from zero. `tau_max` defaults to 2(n − 1), which always suffices.
pub fn immunity_number(
    g: &Graph,
    variant: SemanticVariant,
    tau_max: Option<u32>,
    limits: &OracleLimits,
) -> Result<OracleResult> {
    let tau_max = tau_max.unwrap_or(2 * (g.vertex_count() as u32).saturating_sub(1));
    let mut table = Vec::new();
    let mut explored_total = 0;
    for tau in 0..=tau_max {
        let out = feasible(g, tau, variant, limits)?;
        explored_total += out.explored;
        table.push(TauRow {
            tau,
            feasible: out.feasible,
            explored: out.explored,
        });
        if out.feasible {
            return Ok(OracleResult {
                graph_digest: g.digest(),
                variant,
                iota: tau,
                table,
                witness: out.witness.expect("feasible search yields a witness"),
                explored_total,
                wall_time: None,
            });
        }
    }
    Err(Error::structure(format!(
        "no feasible immunity found up to tau_max = {tau_max}"
    )))
}

/// Comparison of a strategy's prescribed τ against the exact value.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossCheck {
    pub strategy_tau: u32,
    pub iota: u32,
    /// Strategy slack over the optimum.
    pub gap: u32,
    /// Upper-bound soundness: the strategy never undercuts the oracle.
    pub consistent: bool,
}

pub fn cross_check(strategy_tau: u32, oracle: &OracleResult) -> CrossCheck {
    CrossCheck {
        strategy_tau,
        iota: oracle.iota,
        gap: strategy_tau.saturating_sub(oracle.iota),
        consistent: strategy_tau >= oracle.iota,
    }
}
