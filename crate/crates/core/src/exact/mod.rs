//! Exact classical and one-way values.
//!
//! The classical value is the sup-to-sum norm of the cost matrix,
//! `ω(G) = max_α Σ_y |Σ_x α_x G[x][y]|`. With `c` bits of one-way
//! communication Alice splits her inputs into at most `2^c` blocks and Bob
//! answers each block separately, so `ω_c¹(G)` is the best partition of the
//! rows scored by the sum of per-block classical values.

mod gray;
mod partition;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::game::XorGame;

/// Size limits for the exponential solvers.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ExactConfig {
    /// Largest number of active rows for sign enumeration.
    pub classical_cap: usize,
    /// Largest number of active rows for the partition DP.
    pub dp_cap: usize,
}

impl Default for ExactConfig {
    fn default() -> Self {
        Self { classical_cap: 24, dp_cap: 14 }
    }
}

/// A deterministic local strategy and its value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ValueCertificate {
    pub value: f64,
    pub alice_signs: Vec<i8>,
    pub bob_signs: Vec<i8>,
}

impl ValueCertificate {
    /// Completes Alice's signs with Bob's best response.
    pub fn from_alice(game: &XorGame, alice_signs: Vec<i8>) -> Self {
        let agg = aggregate(game, (0..game.n()).map(|x| (x, alice_signs[x])));
        let bob_signs: Vec<i8> = agg.iter().map(|&v| sign_of(v)).collect();
        let value = bilinear(game, &alice_signs, &bob_signs);
        Self { value, alice_signs, bob_signs }
    }

    /// Flips both players so that Alice's first sign is `+1`.
    pub fn canonical(mut self) -> Self {
        if self.alice_signs.first() == Some(&-1) {
            self.alice_signs.iter_mut().for_each(|s| *s = -*s);
            self.bob_signs.iter_mut().for_each(|s| *s = -*s);
        }
        self
    }
}

/// Alice's partition of her inputs into messages, with the signs realizing the
/// one-way value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionCertificate {
    pub value: f64,
    pub bits: u32,
    /// Message alphabet size, `min(2^bits, n)`.
    pub t: usize,
    pub message_map: Vec<usize>,
    pub alice_signs: Vec<i8>,
    /// `t` rows of Bob's answers, one per message.
    pub bob_signs: Vec<Vec<i8>>,
}

impl PartitionCertificate {
    /// Builds the certificate for a given message map and Alice signs, with
    /// Bob answering each message optimally.
    pub fn from_partition(
        game: &XorGame,
        bits: u32,
        t: usize,
        message_map: Vec<usize>,
        alice_signs: Vec<i8>,
    ) -> Self {
        let mut bob_signs = vec![vec![1i8; game.n()]; t];
        let mut value = 0.0;
        for (i, bob) in bob_signs.iter_mut().enumerate() {
            let members = (0..game.n())
                .filter(|&x| message_map[x] == i)
                .map(|x| (x, alice_signs[x]));
            let agg = aggregate(game, members);
            for (b, v) in bob.iter_mut().zip(&agg) {
                *b = sign_of(*v);
            }
            value += agg.iter().map(|v| v.abs()).sum::<f64>();
        }
        Self { value, bits, t, message_map, alice_signs, bob_signs }
    }
}

/// Block values of every nonempty subset of Alice's inputs, keyed by bitmask.
#[derive(Clone, Debug)]
pub struct BlockValueTable {
    n: usize,
    values: Vec<f64>,
    signs: Vec<u32>,
}

impl BlockValueTable {
    pub fn n(&self) -> usize {
        self.n
    }

    /// Value of `mask`, or `None` for the empty set.
    pub fn get(&self, mask: u64) -> Option<f64> {
        (mask != 0).then(|| self.values[mask as usize])
    }

    /// Optimal signs on the members of `mask` (`+1` outside it).
    pub fn signs(&self, mask: u64) -> Vec<i8> {
        let bits = self.signs[mask as usize];
        (0..self.n).map(|x| if bits >> x & 1 == 1 { -1 } else { 1 }).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (u64, f64)> + '_ {
        self.values.iter().enumerate().skip(1).map(|(m, &v)| (m as u64, v))
    }
}

/// Which space a vector sequence lives in for [`weak_p_norm`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Ambient {
    /// `ℓ_∞^d`; dual ball extreme points are `±e_j`.
    Sup,
    /// `ℓ_1^d`; dual ball extreme points are sign vectors.
    Sum,
}

pub(crate) fn sign_of(v: f64) -> i8 {
    if v >= 0.0 {
        1
    } else {
        -1
    }
}

/// `Σ_x α_x G[x][·]` over the given (row, sign) pairs.
pub(crate) fn aggregate(game: &XorGame, members: impl Iterator<Item = (usize, i8)>) -> Vec<f64> {
    let mut agg = vec![0.0; game.n()];
    for (x, s) in members {
        let s = s as f64;
        for (a, &g) in agg.iter_mut().zip(game.row(x)) {
            *a += s * g;
        }
    }
    agg
}

/// `Σ_{x,y} G[x][y] a_x b_y`.
pub fn bilinear(game: &XorGame, alice: &[i8], bob: &[i8]) -> f64 {
    (0..game.n())
        .map(|x| {
            let inner: f64 = game.row(x).iter().zip(bob).map(|(&g, &b)| g * b as f64).sum();
            alice[x] as f64 * inner
        })
        .sum()
}

fn ensure_cap(active: usize, cap: usize) -> Result<()> {
    if active > cap {
        return Err(Error::ExactCapExceeded { n: active, cap });
    }
    Ok(())
}

/// `ω(G)` with default caps.
pub fn classical_value(game: &XorGame) -> Result<ValueCertificate> {
    classical_value_with(game, &ExactConfig::default())
}

/// `ω(G)` by Gray-code enumeration over Alice's signs.
///
/// Rows without probability mass do not affect the value and play `+1`; the
/// cap applies to the number of active rows. Among optimal strategies the
/// certificate is the one with `+1` as early as possible.
pub fn classical_value_with(game: &XorGame, cfg: &ExactConfig) -> Result<ValueCertificate> {
    let active = game.active_rows();
    ensure_cap(active.len(), cfg.classical_cap)?;
    let mut alice = vec![1i8; game.n()];
    if !active.is_empty() {
        for (&x, s) in active.iter().zip(gray::best_signs(game, &active)) {
            alice[x] = s;
        }
    }
    Ok(ValueCertificate::from_alice(game, alice))
}

/// Classical value of the sub-game on Alice's inputs in `subset`.
pub fn block_value(game: &XorGame, subset: u64) -> Result<f64> {
    block_value_with(game, subset, &ExactConfig::default())
}

pub fn block_value_with(game: &XorGame, subset: u64, cfg: &ExactConfig) -> Result<f64> {
    let rows: Vec<usize> = (0..game.n().min(64)).filter(|&x| subset >> x & 1 == 1).collect();
    if rows.is_empty() {
        return Err(Error::EmptySubset);
    }
    if game.n() < 64 && subset >> game.n() != 0 {
        return Err(Error::InvalidParameter(format!("subset {subset:#b} has bits beyond n")));
    }
    ensure_cap(rows.len(), cfg.classical_cap)?;
    let signs = gray::best_signs(game, &rows);
    let agg = aggregate(game, rows.iter().copied().zip(signs));
    Ok(agg.iter().map(|v| v.abs()).sum())
}

pub fn block_value_table(game: &XorGame) -> Result<BlockValueTable> {
    block_value_table_with(game, &ExactConfig::default())
}

/// Every block value at once; `Θ(3^n · n)` work.
pub fn block_value_table_with(game: &XorGame, cfg: &ExactConfig) -> Result<BlockValueTable> {
    let n = game.n();
    if n > cfg.dp_cap {
        return Err(Error::DpCapExceeded { n, cap: cfg.dp_cap });
    }
    let rows: Vec<usize> = (0..n).collect();
    let table = partition::subset_table(game, &rows);
    Ok(BlockValueTable { n, values: table.values, signs: table.signs })
}

/// Message alphabet size for `bits` of communication on `n` inputs.
pub fn alphabet(bits: u32, n: usize) -> usize {
    if bits >= usize::BITS - 1 {
        n
    } else {
        (1usize << bits).min(n)
    }
}

/// `ω_c¹(G)` with default caps.
pub fn one_way_value(game: &XorGame, bits: u32) -> Result<PartitionCertificate> {
    one_way_value_with(game, bits, &ExactConfig::default())
}

pub fn one_way_value_with(game: &XorGame, bits: u32, cfg: &ExactConfig) -> Result<PartitionCertificate> {
    Ok(one_way_values_with(game, &[bits], cfg)?.remove(0))
}

/// `ω_c¹(G)` for several bit budgets, sharing one subset table.
pub fn one_way_values_with(
    game: &XorGame,
    bits: &[u32],
    cfg: &ExactConfig,
) -> Result<Vec<PartitionCertificate>> {
    let n = game.n();
    let active = game.active_rows();
    let needs_dp = bits.iter().any(|&c| alphabet(c, n) < active.len());
    if needs_dp && active.len() > cfg.dp_cap {
        return Err(Error::DpCapExceeded { n: active.len(), cap: cfg.dp_cap });
    }
    let table = needs_dp.then(|| partition::subset_table(game, &active));
    Ok(bits
        .iter()
        .map(|&c| {
            let t = alphabet(c, n);
            if t >= n {
                let map = (0..n).collect();
                return PartitionCertificate::from_partition(game, c, t, map, vec![1; n]);
            }
            let mut map = vec![0usize; n];
            let mut alice = vec![1i8; n];
            if t >= active.len() {
                for (i, &x) in active.iter().enumerate() {
                    map[x] = i;
                }
            } else {
                let table = table.as_ref().expect("table built when needed");
                let (_, blocks) = partition::best_partition(&table.values, active.len(), t);
                for (i, &block) in blocks.iter().enumerate() {
                    let bits = table.signs[block];
                    for (j, &x) in active.iter().enumerate() {
                        if block >> j & 1 == 1 {
                            map[x] = i;
                            alice[x] = if bits >> j & 1 == 1 { -1 } else { 1 };
                        }
                    }
                }
            }
            PartitionCertificate::from_partition(game, c, t, map, alice)
        })
        .collect())
}

/// Weak `p`-summing norm `sup_{φ ∈ B_{X*}} (Σ_i |φ(v_i)|^p)^{1/p}`.
///
/// The supremum of a convex function over the dual ball is attained at an
/// extreme point, so the extreme points are enumerated directly.
pub fn weak_p_norm(vectors: &[Vec<f64>], ambient: Ambient, p: f64) -> Result<f64> {
    weak_p_norm_with(vectors, ambient, p, &ExactConfig::default())
}

pub fn weak_p_norm_with(vectors: &[Vec<f64>], ambient: Ambient, p: f64, cfg: &ExactConfig) -> Result<f64> {
    if vectors.is_empty() {
        return Err(Error::InvalidParameter("weak norm of an empty sequence".into()));
    }
    if !(p >= 1.0) || !p.is_finite() {
        return Err(Error::InvalidParameter(format!("p = {p} must be a finite real ≥ 1")));
    }
    let d = vectors[0].len();
    if vectors.iter().any(|v| v.len() != d) {
        return Err(Error::DimensionMismatch("vectors of different lengths".into()));
    }
    let score = |vals: &mut dyn Iterator<Item = f64>| vals.map(|v| v.abs().powf(p)).sum::<f64>();
    let best = match ambient {
        Ambient::Sup => (0..d)
            .map(|j| score(&mut vectors.iter().map(|v| v[j])))
            .fold(0.0, f64::max),
        Ambient::Sum => {
            ensure_cap(d, cfg.classical_cap)?;
            if d == 0 {
                0.0
            } else {
                // Gray walk over sign functionals with the first coordinate fixed
                let mut dots: Vec<f64> = vectors.iter().map(|v| v.iter().sum()).collect();
                let mut code = 0u64;
                let mut best = score(&mut dots.iter().copied());
                for i in 1..1u64 << (d - 1) {
                    let bit = i.trailing_zeros() as usize;
                    code ^= 1 << bit;
                    let s = if code >> bit & 1 == 1 { -2.0 } else { 2.0 };
                    for (dot, v) in dots.iter_mut().zip(vectors) {
                        *dot += s * v[bit + 1];
                    }
                    best = best.max(score(&mut dots.iter().copied()));
                }
                best
            }
        }
    };
    Ok(best.powf(1.0 / p))
}
