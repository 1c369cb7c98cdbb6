//! Column-by-column mesh sweep.
//!
//! Each column is cleaned nonmonotonically: up the fresh column, a short
//! incursion into the next one, then back down — after which the column is
//! declared and never recontaminates. Succeeds with τ = p on a p×q mesh
//! (p <= q; wider-than-tall inputs are transposed).

use alloc::vec::Vec;

use crate::error::Error;
use crate::graph::{Graph, Vertex};
use crate::topology;
use crate::Result;

use super::MoveScript;

/// Sweep script plus the tick at which each column is declared clean
/// (columns 1-based in the effective, possibly transposed, orientation).
#[derive(Debug, Clone)]
pub struct MeshSweepPlan {
    pub script: MoveScript,
    pub declarations: Vec<(usize, u64)>,
}

pub fn mesh_column_sweep(g: &Graph, p: usize, q: usize) -> Result<MeshSweepPlan> {
    let expected = topology::mesh(p, q)?;
    if g != &expected {
        return Err(Error::applicability(
            "mesh-column requires the column-major p x q mesh layout",
        ));
    }
    let transposed = p > q;
    let (rows, cols) = if transposed { (q, p) } else { (p, q) };
    // Effective coordinates: column i in 1..=cols, row j in 1..=rows.
    let at = |i: usize, j: usize| -> Vertex {
        if transposed {
            topology::mesh_vertex(p, j, i)
        } else {
            topology::mesh_vertex(p, i, j)
        }
    };

    let mut moves: Vec<Vertex> = Vec::new();
    let mut declarations = Vec::new();

    if rows == 1 {
        for i in 2..=cols {
            moves.push(at(i, 1));
            declarations.push((i - 1, (i - 1) as u64));
        }
        declarations.push((cols, (cols - 1) as u64));
        return Ok(MeshSweepPlan {
            script: MoveScript {
                placement: at(1, 1),
                moves,
            },
            declarations,
        });
    }

    // Row the incursion into the next column turns back at: ⌈rows/2⌉ + 1.
    let mid = rows.div_ceil(2) + 1;

    for j in 2..=rows {
        moves.push(at(1, j));
    }
    for k in 1..cols {
        // Agent sits at the top of column k.
        moves.push(at(k + 1, rows));
        for j in (mid..rows).rev() {
            moves.push(at(k + 1, j));
        }
        moves.push(at(k, mid));
        for j in (1..mid).rev() {
            moves.push(at(k, j));
        }
        declarations.push((k, moves.len() as u64));
        if k < cols - 1 {
            moves.push(at(k + 1, 1));
            for j in 2..=rows {
                moves.push(at(k + 1, j));
            }
        }
    }
    moves.push(at(cols, 1));
    for j in 2..=rows {
        moves.push(at(cols, j));
    }
    declarations.push((cols, moves.len() as u64));

    Ok(MeshSweepPlan {
        script: MoveScript {
            placement: at(1, 1),
            moves,
        },
        declarations,
    })
}
