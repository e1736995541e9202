//! Gray-code enumeration of Alice's sign vectors.
//!
//! For a fixed set of rows the kernel walks all `2^{k-1}` sign patterns with the
//! first row pinned to `+1`. Consecutive patterns differ in one row, so the
//! column aggregates `Σ_x α_x G[x][·]` are updated in `O(n)` per step.
//!
//! Games whose nonzero costs share one magnitude (uniform random sign games,
//! block games) run on an exact `i16` lane, everything else on `f64`.

use rayon::prelude::*;

use crate::game::XorGame;

/// Values closer than this are treated as ties on the `f64` lane.
pub(crate) const TIE_TOL: f64 = 1e-12;

/// Minimum Gray steps per work chunk.
const MIN_CHUNK: u64 = 1 << 12;
/// Upper bound on the number of chunks; fixed so results do not depend on
/// the worker count.
const MAX_CHUNKS: u64 = 256;
/// The `f64` lane rebuilds its aggregates from scratch this often.
const REFRESH: u64 = 1 << 12;

trait Lane: Copy + Send + Sync {
    const ZERO: Self;
    const EXACT: bool;
    fn add(self, o: Self) -> Self;
    fn sub(self, o: Self) -> Self;
    fn abs(self) -> Self;
    fn to_f64(self) -> f64;
}

impl Lane for f64 {
    const ZERO: Self = 0.0;
    const EXACT: bool = false;
    #[inline(always)]
    fn add(self, o: Self) -> Self {
        self + o
    }
    #[inline(always)]
    fn sub(self, o: Self) -> Self {
        self - o
    }
    #[inline(always)]
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn to_f64(self) -> f64 {
        self
    }
}

impl Lane for i16 {
    const ZERO: Self = 0;
    const EXACT: bool = true;
    #[inline(always)]
    fn add(self, o: Self) -> Self {
        self.wrapping_add(o)
    }
    #[inline(always)]
    fn sub(self, o: Self) -> Self {
        self.wrapping_sub(o)
    }
    #[inline(always)]
    fn abs(self) -> Self {
        self.wrapping_abs()
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
}

/// `true` when `a` precedes `b` in the canonical order: bit `j` set means row
/// `j + 1` plays `-1`, and `+1` sorts before `-1` at the first difference.
#[inline]
pub(crate) fn lex_less(a: u64, b: u64) -> bool {
    let d = a ^ b;
    d != 0 && a & (d & d.wrapping_neg()) == 0
}

#[inline]
fn gray(i: u64) -> u64 {
    i ^ (i >> 1)
}

struct Kernel<'a, T> {
    m: usize,
    // rows[j] and 2·rows[j], each of width m
    rows: Vec<&'a [T]>,
    twice: Vec<Vec<T>>,
}

impl<T: Lane + PartialOrd> Kernel<'_, T> {
    fn init(&self, code: u64, col: &mut [T]) -> T {
        col.fill(T::ZERO);
        for (j, row) in self.rows.iter().enumerate() {
            let neg = j > 0 && (code >> (j - 1)) & 1 == 1;
            for (c, &v) in col.iter_mut().zip(row.iter()) {
                *c = if neg { c.sub(v) } else { c.add(v) };
            }
        }
        col.iter().fold(T::ZERO, |acc, c| acc.add(c.abs()))
    }

    fn better(a: T, a_code: u64, b: T, b_code: u64) -> bool {
        if T::EXACT {
            a > b || (a == b && lex_less(a_code, b_code))
        } else {
            let (a, b) = (a.to_f64(), b.to_f64());
            a > b + TIE_TOL || (a >= b - TIE_TOL && lex_less(a_code, b_code))
        }
    }

    fn chunk(&self, start: u64, end: u64) -> (T, u64) {
        let mut col = vec![T::ZERO; self.m];
        let mut code = gray(start);
        let mut best = (self.init(code, &mut col), code);
        for i in start + 1..end {
            let bit = i.trailing_zeros() as usize;
            code ^= 1 << bit;
            let value = if !T::EXACT && i % REFRESH == 0 {
                self.init(code, &mut col)
            } else {
                let d = &self.twice[bit + 1];
                let mut acc = T::ZERO;
                if (code >> bit) & 1 == 1 {
                    for (c, &v) in col.iter_mut().zip(d.iter()) {
                        *c = c.sub(v);
                        acc = acc.add(c.abs());
                    }
                } else {
                    for (c, &v) in col.iter_mut().zip(d.iter()) {
                        *c = c.add(v);
                        acc = acc.add(c.abs());
                    }
                }
                acc
            };
            if Self::better(value, code, best.0, best.1) {
                best = (value, code);
            }
        }
        best
    }

    fn run(&self) -> u64 {
        let k = self.rows.len();
        let total = 1u64 << (k - 1);
        let size = (total / MAX_CHUNKS).max(MIN_CHUNK).min(total);
        let chunks = total.div_ceil(size);
        let bests: Vec<(T, u64)> = (0..chunks)
            .into_par_iter()
            .map(|c| self.chunk(c * size, ((c + 1) * size).min(total)))
            .collect();
        let mut best = bests[0];
        for &(v, code) in &bests[1..] {
            if Self::better(v, code, best.0, best.1) {
                best = (v, code);
            }
        }
        best.1
    }
}

fn decode(code: u64, k: usize) -> Vec<i8> {
    (0..k)
        .map(|j| if j > 0 && (code >> (j - 1)) & 1 == 1 { -1 } else { 1 })
        .collect()
}

/// Common magnitude of all nonzero costs in `rows`, if the integer lane fits.
fn common_magnitude(game: &XorGame, rows: &[usize]) -> Option<f64> {
    let mut mag = None;
    for &x in rows {
        for &v in game.row(x) {
            if v == 0.0 {
                continue;
            }
            match mag {
                None => mag = Some(v.abs()),
                Some(m) if m != v.abs() => return None,
                _ => {}
            }
        }
    }
    // |aggregate| ≤ k and the column sum of those is ≤ k·n.
    let bound = rows.len() * game.n() * 2;
    mag.filter(|_| bound <= i16::MAX as usize)
}

/// Optimal signs for `rows` (first entry `+1`), maximizing
/// `Σ_y |Σ_j α_j G[rows[j]][y]|`. Ties resolve to the canonical order.
pub(crate) fn best_signs(game: &XorGame, rows: &[usize]) -> Vec<i8> {
    let k = rows.len();
    assert!((1..64).contains(&k), "row set size {k} outside 1..64");
    if k == 1 {
        return vec![1];
    }
    let n = game.n();
    let code = if let Some(mag) = common_magnitude(game, rows) {
        let ints: Vec<Vec<i16>> = rows
            .iter()
            .map(|&x| game.row(x).iter().map(|&v| (v / mag).round() as i16).collect())
            .collect();
        let kernel = Kernel {
            m: n,
            rows: ints.iter().map(|r| r.as_slice()).collect(),
            twice: ints.iter().map(|r| r.iter().map(|&v| 2 * v).collect()).collect(),
        };
        kernel.run()
    } else {
        let kernel = Kernel {
            m: n,
            rows: rows.iter().map(|&x| game.row(x)).collect(),
            twice: rows.iter().map(|&x| game.row(x).iter().map(|&v| 2.0 * v).collect()).collect(),
        };
        kernel.run()
    };
    decode(code, k)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gray_sequence_flips_one_bit() {
        for i in 1..1000u64 {
            let d = gray(i) ^ gray(i - 1);
            assert_eq!(d.count_ones(), 1);
            assert_eq!(d.trailing_zeros(), i.trailing_zeros());
        }
    }

    #[test]
    fn canonical_order_prefers_plus_early() {
        // bit 0 = row 1
        assert!(lex_less(0b10, 0b01));
        assert!(lex_less(0b00, 0b01));
        assert!(!lex_less(0b01, 0b01));
    }

    #[test]
    fn both_lanes_agree() {
        let f = vec![1, -1, -1, -1, 1, -1, -1, -1, 1];
        let g = XorGame::uniform(3, f.clone()).unwrap();
        let rows = [0, 1, 2];
        let a = best_signs(&g, &rows);
        // perturb one probability so the integer lane is not eligible
        let mut pi = vec![1.0 / 9.0; 9];
        pi[0] += 1e-3;
        pi[8] -= 1e-3;
        let h = XorGame::from_flat(3, f, pi).unwrap();
        assert!(common_magnitude(&h, &rows).is_none());
        assert!(common_magnitude(&g, &rows).is_some());
        assert_eq!(a[0], 1);
        assert_eq!(best_signs(&h, &rows)[0], 1);
    }
}
