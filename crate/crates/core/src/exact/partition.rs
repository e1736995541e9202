//! Subset tables and the partition dynamic program behind the one-way value.

use rayon::prelude::*;

use crate::game::XorGame;

use super::gray::TIE_TOL;

/// Best signed aggregate for every nonempty subset of a row list.
///
/// Masks index positions in the row list. `signs[mask]` has bit `j` set when
/// row `j` plays `-1`; the lowest member of each mask always plays `+1`.
pub(crate) struct SubsetTable {
    pub values: Vec<f64>,
    pub signs: Vec<u32>,
}

/// Depth-first walk over all signed subsets, `Θ(3^k · n)` work.
pub(crate) fn subset_table(game: &XorGame, rows: &[usize]) -> SubsetTable {
    let k = rows.len();
    assert!(k <= 24, "subset table over {k} rows");
    let n = game.n();
    let size = 1usize << k;
    let mut table = SubsetTable { values: vec![f64::NEG_INFINITY; size], signs: vec![0; size] };
    table.values[0] = 0.0;
    // stack[d] holds the aggregate after d chosen rows
    let mut stack = vec![vec![0.0; n]; k + 1];
    extend(game, rows, 0, 0, 0, 0, &mut stack, &mut table);
    table
}

#[allow(clippy::too_many_arguments)]
fn extend(
    game: &XorGame,
    rows: &[usize],
    start: usize,
    depth: usize,
    mask: usize,
    bits: u32,
    stack: &mut [Vec<f64>],
    table: &mut SubsetTable,
) {
    for j in start..rows.len() {
        let row = game.row(rows[j]);
        let signs: &[f64] = if mask == 0 { &[1.0] } else { &[1.0, -1.0] };
        for &s in signs {
            let (head, tail) = stack.split_at_mut(depth + 1);
            let (parent, child) = (&head[depth], &mut tail[0]);
            let mut value = 0.0;
            for ((c, &p), &g) in child.iter_mut().zip(parent.iter()).zip(row) {
                *c = p + s * g;
                value += c.abs();
            }
            let m = mask | 1 << j;
            let b = if s < 0.0 { bits | 1 << j } else { bits };
            // visiting order is +1 before -1, so strict > keeps the canonical witness
            if value > table.values[m] {
                table.values[m] = value;
                table.signs[m] = b;
            }
            extend(game, rows, j + 1, depth + 1, m, b, stack, table);
        }
    }
}

/// Maximum total block value over partitions of all `k` rows into at most
/// `blocks` parts. Returns the value and the blocks, ordered by lowest member.
pub(crate) fn best_partition(values: &[f64], k: usize, blocks: usize) -> (f64, Vec<usize>) {
    let full = (1usize << k) - 1;
    let size = 1usize << k;
    let mut prev = vec![f64::NEG_INFINITY; size];
    prev[0] = 0.0;
    let mut choices: Vec<Vec<u32>> = Vec::with_capacity(blocks);
    for _ in 0..blocks {
        let layer: Vec<(f64, u32)> = (0..size)
            .into_par_iter()
            .map(|mask| {
                let mut best = (prev[mask], 0u32);
                if mask == 0 {
                    return best;
                }
                let low = mask & mask.wrapping_neg();
                let rest = mask ^ low;
                let mut sub = rest;
                loop {
                    let block = sub | low;
                    let v = values[block] + prev[mask ^ block];
                    if v > best.0 + TIE_TOL || best.0 == f64::NEG_INFINITY {
                        best = (v, block as u32);
                    }
                    if sub == 0 {
                        break;
                    }
                    sub = (sub - 1) & rest;
                }
                best
            })
            .collect();
        prev = layer.iter().map(|p| p.0).collect();
        choices.push(layer.into_iter().map(|p| p.1).collect());
    }
    let mut parts = Vec::new();
    let mut mask = full;
    let mut layer = blocks;
    while mask != 0 {
        let block = choices[layer - 1][mask] as usize;
        if block != 0 {
            parts.push(block);
            mask ^= block;
        }
        layer -= 1;
    }
    parts.sort_by_key(|b| b.trailing_zeros());
    (prev[full], parts)
}
