//! Strategy for the augmented alternating-arm spider `G*`.
//!
//! In `G*` each long arm comes with a companion short-arm tip adjacent to
//! the root and to every vertex of the arm, so each pair supports weaved
//! walks whose exposure windows stay short. The script sweeps the first
//! pair inward from its far end, serves every further pair from the root
//! (lap plus a repair shuttle for the pair's arm head), and finishes the
//! last pair with a tip-interleaved outward sweep.
//!
//! With τ = 2 the walk fully decontaminates every `G*` with two pairs, and
//! every `G*` with arms of length at most two. For three or more pairs of
//! longer arms no τ = 2 schedule exists at all (the exact oracle rules it
//! out on the 6-arm length-3 instance); there the walk needs τ = max(2, L).

use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::topology;
use crate::Result;

use super::MoveScript;

struct Pair {
    /// Long arm, root-outward.
    arm: Vec<Vertex>,
    /// Companion tip, adjacent to the root and the whole arm.
    tip: Vertex,
}

fn pairs_of(arms: usize, long_len: usize) -> Vec<Pair> {
    let mut pairs = Vec::new();
    let mut next = 1;
    for _ in 0..arms / 2 {
        let arm: Vec<Vertex> = (next..next + long_len).collect();
        let tip = next + long_len;
        next = tip + 1;
        pairs.push(Pair { arm, tip });
    }
    pairs
}

/// Compiles the weave walk for `G*` from a generated Kahn pair.
pub fn kahn_star_strategy(g: &Graph, arms: usize, long_len: usize) -> Result<MoveScript> {
    let (_, expected) = topology::kahn_pair(arms, long_len)?;
    if g != &expected {
        return Err(Error::applicability(
            "kahn-star requires the generated G* layout",
        ));
    }
    let root: Vertex = 0;
    let pairs = pairs_of(arms, long_len);
    let count = pairs.len();

    // First pair: enter at the far end, sweep inward with the tip
    // interleaved (every cleaned vertex sees the contaminated tip through
    // a fan edge, so the tip must be refreshed every other move), finish
    // at the root.
    let first = &pairs[0];
    let placement = *first.arm.last().expect("nonempty arm");
    let len = first.arm.len();
    let mut moves: Vec<Vertex> = Vec::new();
    match len {
        1 => moves.push(first.tip),
        2 => {
            moves.push(first.arm[0]);
            moves.push(first.tip);
        }
        _ => {
            moves.push(first.arm[len - 2]);
            for j in (0..len - 2).rev() {
                moves.push(first.tip);
                moves.push(first.arm[j]);
            }
        }
    }
    moves.push(root);

    for (idx, pair) in pairs.iter().enumerate().skip(1) {
        let last = idx + 1 == count;
        if last {
            // Tip-interleaved outward sweep; nothing is left to expose the
            // root afterwards, so no return is needed.
            for (j, &v) in pair.arm.iter().enumerate() {
                moves.push(v);
                if j + 1 < pair.arm.len() {
                    moves.push(pair.tip);
                }
            }
            if pair.arm.len() == 1 {
                moves.push(pair.tip);
            }
        } else {
            // Middle pair: lap the arm, close through the tip, then repair
            // the arm head which the root's one flip may have cost.
            moves.extend_from_slice(&pair.arm);
            moves.push(pair.tip);
            moves.push(root);
            moves.push(pair.arm[0]);
            moves.push(root);
        }
    }
    Ok(MoveScript { placement, moves })
}

/// τ sufficient for [`kahn_star_strategy`]: 2 wherever a τ = 2 schedule
/// exists (two pairs, or arms of length at most two), and max(2, L) for
/// three or more pairs of longer arms, where the middle-pair laps leave
/// the root briefly contaminated.
pub fn kahn_star_tau(arms: usize, long_len: usize) -> u32 {
    if arms <= 4 || long_len <= 2 {
        2
    } else {
        long_len.max(2) as u32
    }
}
