//! Random sign games with uniform input distribution.

use rand::Rng;

use crate::error::{Error, Result};
use crate::game::XorGame;
use crate::seed::rng_for;

fn random_signs(rows: usize, cols: usize, seed: u64) -> Vec<i8> {
    (0..rows)
        .flat_map(|x| {
            let mut rng = rng_for(seed, x as u64);
            (0..cols).map(move |_| if rng.random_bool(0.5) { 1 } else { -1 })
        })
        .collect()
}

/// i.i.d. uniform signs, `π = 1/n²`.
pub fn chevet_full_game(n: usize, seed: u64) -> Result<XorGame> {
    if n == 0 {
        return Err(Error::BadDimensions("n must be positive".into()));
    }
    XorGame::uniform(n, random_signs(n, n, seed))
}

/// Random signs on the top-left `2^c × 2^c` block, uniform there and zero
/// elsewhere. Signs outside the block are `+1`.
pub fn chevet_block_game(n: usize, c: u32, seed: u64) -> Result<XorGame> {
    if c >= usize::BITS || (1usize << c) > n {
        return Err(Error::BlockTooLarge { n, c });
    }
    let b = 1usize << c;
    let block = random_signs(b, b, seed);
    let mut f = vec![1i8; n * n];
    let mut pi = vec![0.0; n * n];
    let w = 1.0 / (b * b) as f64;
    for x in 0..b {
        for y in 0..b {
            f[x * n + y] = block[x * b + y];
            pi[x * n + y] = w;
        }
    }
    XorGame::from_flat(n, f, pi)
}
