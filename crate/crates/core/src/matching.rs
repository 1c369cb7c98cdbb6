//! Cut-matching bound for square meshes: any half-sized vertex subset of
//! an s×s mesh admits a matching of size at least s across its boundary.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::topology;
use crate::Result;

/// A half/half bipartition of the vertices of an s×s mesh.
#[derive(Debug, Clone)]
pub struct CutInstance {
    pub side: usize,
    pub mesh: Graph,
    /// Membership of the selected half W.
    pub in_w: Vec<bool>,
}

impl CutInstance {
    pub fn new(side: usize, w: &[Vertex]) -> Result<Self> {
        let n = side * side;
        if !n.is_multiple_of(2) {
            return Err(Error::parameter("mesh side must make n = s^2 even"));
        }
        let mut in_w = vec![false; n];
        for &v in w {
            if v >= n {
                return Err(Error::contract(format!("vertex {v} outside the mesh")));
            }
            if in_w[v] {
                return Err(Error::contract(format!("vertex {v} listed twice")));
            }
            in_w[v] = true;
        }
        if w.len() != n / 2 {
            return Err(Error::contract(format!(
                "|W| must be exactly {}, got {}",
                n / 2,
                w.len()
            )));
        }
        Ok(CutInstance {
            side,
            mesh: topology::mesh(side, side)?,
            in_w,
        })
    }

    /// Edges with exactly one endpoint in W, as (w_vertex, other) pairs.
    pub fn cut_edges(&self) -> Vec<(Vertex, Vertex)> {
        self.mesh
            .edges()
            .iter()
            .filter(|&&(u, v)| self.in_w[u] != self.in_w[v])
            .map(|&(u, v)| if self.in_w[u] { (u, v) } else { (v, u) })
            .collect()
    }
}

/// Maximum bipartite matching over a cut-edge list, by repeated
/// augmenting-path search. Returns the matched pairs.
pub fn max_cut_matching(inst: &CutInstance) -> Vec<(Vertex, Vertex)> {
    let cut = inst.cut_edges();
    max_matching_over(&cut)
}

/// Maximum matching of an explicit bipartite edge list (left, right).
fn max_matching_over(edges: &[(Vertex, Vertex)]) -> Vec<(Vertex, Vertex)> {
    let mut lefts: Vec<Vertex> = edges.iter().map(|&(u, _)| u).collect();
    lefts.sort_unstable();
    lefts.dedup();
    let mut adj: Vec<Vec<Vertex>> = vec![Vec::new(); lefts.len()];
    for &(u, v) in edges {
        let i = lefts.binary_search(&u).expect("left present");
        adj[i].push(v);
    }

    // match_right: right vertex -> left index.
    let mut match_right: alloc::collections::BTreeMap<Vertex, usize> =
        alloc::collections::BTreeMap::new();
    let mut match_left: Vec<Option<Vertex>> = vec![None; lefts.len()];

    fn try_augment(
        i: usize,
        adj: &[Vec<Vertex>],
        match_right: &mut alloc::collections::BTreeMap<Vertex, usize>,
        match_left: &mut [Option<Vertex>],
        seen: &mut alloc::collections::BTreeSet<Vertex>,
    ) -> bool {
        for &r in &adj[i] {
            if !seen.insert(r) {
                continue;
            }
            let taken = match_right.get(&r).copied();
            match taken {
                None => {
                    match_right.insert(r, i);
                    match_left[i] = Some(r);
                    return true;
                }
                Some(j) => {
                    if try_augment(j, adj, match_right, match_left, seen) {
                        match_right.insert(r, i);
                        match_left[i] = Some(r);
                        return true;
                    }
                }
            }
        }
        false
    }

    // Grow until a full pass over unmatched left vertices finds no
    // augmenting path; that final failed sweep certifies maximality.
    let mut grew = true;
    while grew {
        grew = false;
        for i in 0..lefts.len() {
            if match_left[i].is_none() {
                let mut seen = alloc::collections::BTreeSet::new();
                if try_augment(i, &adj, &mut match_right, &mut match_left, &mut seen) {
                    grew = true;
                }
            }
        }
    }
    match_left
        .iter()
        .enumerate()
        .filter_map(|(i, r)| r.map(|r| (lefts[i], r)))
        .collect()
}

/// How the subset space was covered.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum CoverageMode {
    Exhaustive,
    Sampled { samples: u64, seed: u64 },
}

/// Verification report for one mesh side.
#[derive(Debug, Clone)]
pub struct LemmaReport {
    pub side: usize,
    pub mode: CoverageMode,
    pub subsets_checked: u64,
    pub min_matching: usize,
    /// A subset attaining the minimum (first found, reproducible order).
    pub worst_w: Vec<Vertex>,
    /// Number of subsets attaining the minimum (exhaustive mode).
    pub minimizer_count: u64,
    /// Whether any minimizer is not a rectangular subgrid.
    pub non_rectangular_minimizer: bool,
    /// min_matching >= side.
    pub pass: bool,
}

/// Is W an axis-aligned rectangular subgrid of the s×s mesh?
pub fn is_rectangular(side: usize, w: &[Vertex]) -> bool {
    let (mut min_c, mut max_c, mut min_r, mut max_r) = (usize::MAX, 0, usize::MAX, 0);
    for &v in w {
        let (c, r) = (v / side, v % side);
        min_c = min_c.min(c);
        max_c = max_c.max(c);
        min_r = min_r.min(r);
        max_r = max_r.max(r);
    }
    (max_c - min_c + 1) * (max_r - min_r + 1) == w.len()
}

/// Exhaustive verification is kept to sides that enumerate quickly.
pub const MAX_EXHAUSTIVE_SIDE: usize = 4;

/// Checks the bound `max cut matching >= s` over half-sized subsets,
/// exhaustively (s <= 4) or by seeded sampling.
pub fn verify_lemma(side: usize, mode: CoverageMode) -> Result<LemmaReport> {
    if side < 2 || !side.is_multiple_of(2) {
        return Err(Error::parameter(
            "verification requires an even side >= 2 so that |W| = n/2 exists",
        ));
    }
    let n = side * side;
    let half = n / 2;
    let mesh = topology::mesh(side, side)?;
    let cut_of = |members: &[Vertex]| -> Vec<(Vertex, Vertex)> {
        let mut in_w = vec![false; n];
        for &v in members {
            in_w[v] = true;
        }
        mesh.edges()
            .iter()
            .filter(|&&(u, v)| in_w[u] != in_w[v])
            .map(|&(u, v)| if in_w[u] { (u, v) } else { (v, u) })
            .collect()
    };

    let mut min_matching = usize::MAX;
    let mut worst: Vec<Vertex> = Vec::new();
    let mut minimizer_count = 0u64;
    let mut non_rect = false;
    let mut checked = 0u64;

    let mut consider = |members: &[Vertex]| {
        checked += 1;
        let size = max_matching_over(&cut_of(members)).len();
        if size < min_matching {
            min_matching = size;
            worst = members.to_vec();
            minimizer_count = 1;
            non_rect = !is_rectangular(side, members);
        } else if size == min_matching {
            minimizer_count += 1;
            non_rect |= !is_rectangular(side, members);
        }
    };

    match mode {
        CoverageMode::Exhaustive => {
            if side > MAX_EXHAUSTIVE_SIDE {
                return Err(Error::resource(format!(
                    "exhaustive mode is limited to side <= {MAX_EXHAUSTIVE_SIDE}"
                )));
            }
            // Gosper's hack walks the half-sized masks in colexicographic
            // order, so the worst witness is reproducible.
            let mut mask: u32 = (1u32 << half) - 1;
            let limit: u32 = 1u32 << n;
            while mask < limit {
                let members: Vec<Vertex> =
                    (0..n).filter(|&v| mask & (1 << v) != 0).collect();
                consider(&members);
                let c = mask & mask.wrapping_neg();
                let r = mask + c;
                mask = (((r ^ mask) >> 2) / c) | r;
                if c == 0 {
                    break;
                }
            }
        }
        CoverageMode::Sampled { samples, seed } => {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut pool: Vec<Vertex> = (0..n).collect();
            for _ in 0..samples {
                for i in 0..half {
                    let j = rng.gen_range(i..n);
                    pool.swap(i, j);
                }
                let mut members = pool[..half].to_vec();
                members.sort_unstable();
                consider(&members);
            }
        }
    }

    Ok(LemmaReport {
        side,
        mode,
        subsets_checked: checked,
        min_matching,
        worst_w: worst,
        minimizer_count,
        non_rectangular_minimizer: non_rect,
        pass: min_matching >= side,
    })
}
