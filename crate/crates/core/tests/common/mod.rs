//! Brute-force reference values written directly from the definitions, kept
//! apart from the library's solvers.

#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use xorgame::XorGame;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random signs and a random distribution; roughly one game in four has
/// some rows with no mass.
pub fn random_game(n: usize, seed: u64) -> XorGame {
    let mut r = rng(seed);
    let sparse = r.random_bool(0.25);
    let dead: Vec<bool> = (0..n).map(|x| sparse && x > 0 && r.random_bool(0.3)).collect();
    let f: Vec<i8> = (0..n * n).map(|_| if r.random_bool(0.5) { 1 } else { -1 }).collect();
    let mut w: Vec<f64> = (0..n * n).map(|i| if dead[i / n] { 0.0 } else { r.random::<f64>() }).collect();
    let total: f64 = w.iter().sum();
    w.iter_mut().for_each(|v| *v /= total);
    XorGame::from_flat(n, f, w).expect("random game is valid")
}

pub fn uniform_sign_game(n: usize, seed: u64) -> XorGame {
    let mut r = rng(seed);
    XorGame::uniform(n, (0..n * n).map(|_| if r.random_bool(0.5) { 1 } else { -1 }).collect()).unwrap()
}

fn cost(g: &XorGame) -> Vec<Vec<f64>> {
    let n = g.n();
    (0..n).map(|x| (0..n).map(|y| g.sign(x, y) as f64 * g.prob(x, y)).collect()).collect()
}

/// `max Σ_y |Σ_x a_x G[x][y]|` over every sign vector `a`.
pub fn omega(g: &XorGame) -> f64 {
    let m = cost(g);
    let n = g.n();
    let mut best = f64::NEG_INFINITY;
    for code in 0u64..1 << n {
        let v: f64 = (0..n)
            .map(|y| (0..n).map(|x| if code >> x & 1 == 1 { -m[x][y] } else { m[x][y] }).sum::<f64>().abs())
            .sum();
        best = best.max(v);
    }
    best
}

/// Value of a block of rows: `max_a Σ_y |Σ_{x∈S} a_x G[x][y]|`.
pub fn block(g: &XorGame, rows: &[usize]) -> f64 {
    let m = cost(g);
    let mut best = 0.0f64;
    for code in 0u64..1 << rows.len() {
        let v: f64 = (0..g.n())
            .map(|y| {
                rows.iter()
                    .enumerate()
                    .map(|(i, &x)| if code >> i & 1 == 1 { -m[x][y] } else { m[x][y] })
                    .sum::<f64>()
                    .abs()
            })
            .sum();
        best = best.max(v);
    }
    best
}

/// One-way value with `t` messages: best over all maps `x ↦ message` of the
/// summed block values.
pub fn one_way(g: &XorGame, t: usize) -> f64 {
    let n = g.n();
    let mut best = 0.0f64;
    let mut map = vec![0usize; n];
    loop {
        let v: f64 = (0..t)
            .map(|i| {
                let rows: Vec<usize> = (0..n).filter(|&x| map[x] == i).collect();
                if rows.is_empty() {
                    0.0
                } else {
                    block(g, &rows)
                }
            })
            .sum();
        best = best.max(v);
        let mut i = 0;
        loop {
            if i == n {
                return best;
            }
            map[i] += 1;
            if map[i] < t {
                break;
            }
            map[i] = 0;
            i += 1;
        }
    }
}
