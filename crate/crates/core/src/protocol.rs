//! Operational one-way protocols, brute-force reference oracles, and the
//! rewriting of rectangle (two-way) strategies into one-way protocols.

use std::collections::HashMap;

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, sign_of, PartitionCertificate, ValueCertificate};
use crate::game::XorGame;
use crate::seed::rng_for;

/// Largest game size for [`naive_classical`].
pub const NAIVE_CAP: usize = 10;
/// Largest game size for [`enumerate_one_way`].
pub const ENUMERATION_CAP: usize = 7;
/// Largest message alphabet for [`enumerate_one_way`].
pub const ENUMERATION_ALPHABET_CAP: usize = 4;

/// Alice sends `message_map[x]`, answers `alice_signs[x]`; Bob answers
/// `bob_signs[message][y]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OneWayProtocol {
    pub t: usize,
    #[serde(rename = "m")]
    pub message_map: Vec<usize>,
    #[serde(rename = "a")]
    pub alice_signs: Vec<i8>,
    #[serde(rename = "b")]
    pub bob_signs: Vec<Vec<i8>>,
}

impl OneWayProtocol {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("protocol serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let p: Self = serde_json::from_str(text)?;
        if p.bob_signs.len() != p.t || p.message_map.iter().any(|&m| m >= p.t) {
            return Err(Error::DimensionMismatch("message indices must lie below t".into()));
        }
        Ok(p)
    }

    fn check(&self, n: usize) -> Result<()> {
        let bad = self.message_map.len() != n
            || self.alice_signs.len() != n
            || self.bob_signs.len() != self.t
            || self.bob_signs.iter().any(|r| r.len() != n)
            || self.message_map.iter().any(|&m| m >= self.t);
        if bad {
            return Err(Error::DimensionMismatch(format!(
                "protocol does not fit a game on {n} inputs"
            )));
        }
        Ok(())
    }
}

impl From<&PartitionCertificate> for OneWayProtocol {
    fn from(cert: &PartitionCertificate) -> Self {
        Self {
            t: cert.t,
            message_map: cert.message_map.clone(),
            alice_signs: cert.alice_signs.clone(),
            bob_signs: cert.bob_signs.clone(),
        }
    }
}

/// One combinatorial rectangle with its sign pair.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Rectangle {
    pub rows: Vec<usize>,
    pub cols: Vec<usize>,
    /// Alice's answer for every input; only entries in `rows` matter.
    pub alice: Vec<i8>,
    /// Bob's answer for every input; only entries in `cols` matter.
    pub bob: Vec<i8>,
}

/// A deterministic two-way strategy: rectangles tiling `[n] × [n]`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RectanglePartition {
    pub n: usize,
    pub rects: Vec<Rectangle>,
}

impl RectanglePartition {
    /// Index of the rectangle containing each cell, or an error if the
    /// rectangles overlap or leave a gap.
    pub fn cell_owners(&self) -> Result<Vec<usize>> {
        let n = self.n;
        let mut owner = vec![usize::MAX; n * n];
        for (i, r) in self.rects.iter().enumerate() {
            if r.alice.len() != n || r.bob.len() != n {
                return Err(Error::NotAPartition(format!("rectangle {i} has sign vectors of wrong length")));
            }
            for &x in &r.rows {
                for &y in &r.cols {
                    if x >= n || y >= n {
                        return Err(Error::NotAPartition(format!("cell ({x}, {y}) outside the square")));
                    }
                    let cell = &mut owner[x * n + y];
                    if *cell != usize::MAX {
                        return Err(Error::NotAPartition(format!("cell ({x}, {y}) covered twice")));
                    }
                    *cell = i;
                }
            }
        }
        if let Some(i) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::NotAPartition(format!("cell ({}, {}) uncovered", i / n, i % n)));
        }
        Ok(owner)
    }

    /// `Σ_i Σ_{(x,y) ∈ R_i} α^i(x) β^i(y) G[x][y]`.
    pub fn value(&self, game: &XorGame) -> Result<f64> {
        let owner = self.cell_owners()?;
        if game.n() != self.n {
            return Err(Error::DimensionMismatch("partition and game sizes differ".into()));
        }
        let n = self.n;
        let mut v = 0.0;
        for x in 0..n {
            for y in 0..n {
                let r = &self.rects[owner[x * n + y]];
                v += (r.alice[x] * r.bob[y]) as f64 * game.cost(x, y);
            }
        }
        Ok(v)
    }

    /// Partition produced by a random `c`-round protocol tree: each node lets
    /// Alice or Bob split the current row or column set in two. Leaves get
    /// random sign pairs.
    pub fn random_tree(n: usize, c: u32, seed: u64) -> Self {
        let mut rng = rng_for(seed, 0);
        let mut leaves = vec![((0..n).collect::<Vec<_>>(), (0..n).collect::<Vec<_>>())];
        for _ in 0..c {
            let mut next = Vec::with_capacity(leaves.len() * 2);
            for (rows, cols) in leaves {
                let alice_speaks = rng.random_bool(0.5);
                let set = if alice_speaks { &rows } else { &cols };
                let (left, right): (Vec<usize>, Vec<usize>) = set.iter().partition(|_| rng.random_bool(0.5));
                if alice_speaks {
                    next.push((left, cols.clone()));
                    next.push((right, cols));
                } else {
                    next.push((rows.clone(), left));
                    next.push((rows, right));
                }
            }
            leaves = next;
        }
        let signs = |rng: &mut rand_chacha::ChaCha8Rng| -> Vec<i8> {
            (0..n).map(|_| if rng.random_bool(0.5) { 1 } else { -1 }).collect()
        };
        let rects = leaves
            .into_iter()
            .map(|(rows, cols)| Rectangle { rows, cols, alice: signs(&mut rng), bob: signs(&mut rng) })
            .collect();
        Self { n, rects }
    }
}

/// Shared randomness as a finite convex combination of protocols.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProtocolMixture {
    pub components: Vec<(f64, OneWayProtocol)>,
}

impl ProtocolMixture {
    pub fn new(components: Vec<(f64, OneWayProtocol)>) -> Result<Self> {
        let total: f64 = components.iter().map(|c| c.0).sum();
        if components.is_empty() || components.iter().any(|c| !(c.0 >= 0.0)) || (total - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParameter(format!(
                "mixture weights must be nonnegative and sum to 1, got {total}"
            )));
        }
        Ok(Self { components })
    }
}

/// `Σ_{x,y} G[x][y] · a[x] · b[m(x)][y]`.
pub fn protocol_value(game: &XorGame, prot: &OneWayProtocol) -> Result<f64> {
    prot.check(game.n())?;
    Ok((0..game.n())
        .map(|x| {
            let bob = &prot.bob_signs[prot.message_map[x]];
            let inner: f64 = game.row(x).iter().zip(bob).map(|(&g, &b)| g * b as f64).sum();
            prot.alice_signs[x] as f64 * inner
        })
        .sum())
}

/// Bob's optimal answers for a fixed message map and Alice signs.
/// The alphabet is one more than the largest message used.
pub fn best_bob_responses(game: &XorGame, message_map: &[usize], alice_signs: &[i8]) -> Result<OneWayProtocol> {
    let t = message_map.iter().max().map_or(1, |&m| m + 1);
    best_bob_responses_with_alphabet(game, t, message_map, alice_signs)
}

pub fn best_bob_responses_with_alphabet(
    game: &XorGame,
    t: usize,
    message_map: &[usize],
    alice_signs: &[i8],
) -> Result<OneWayProtocol> {
    let n = game.n();
    if message_map.len() != n || alice_signs.len() != n || message_map.iter().any(|&m| m >= t) {
        return Err(Error::DimensionMismatch("message map or signs do not fit the game".into()));
    }
    let mut agg = vec![vec![0.0; n]; t];
    for x in 0..n {
        let s = alice_signs[x] as f64;
        for (a, &g) in agg[message_map[x]].iter_mut().zip(game.row(x)) {
            *a += s * g;
        }
    }
    Ok(OneWayProtocol {
        t,
        message_map: message_map.to_vec(),
        alice_signs: alice_signs.to_vec(),
        bob_signs: agg.iter().map(|row| row.iter().map(|&v| sign_of(v)).collect()).collect(),
    })
}

/// Exhaustive one-way optimum over all `t^n` message maps and `2^n` Alice
/// signs, `t = 2^bits`. Reference oracle for the partition DP.
pub fn enumerate_one_way(game: &XorGame, bits: u32) -> Result<OneWayProtocol> {
    let n = game.n();
    if n > ENUMERATION_CAP || bits > 2 {
        return Err(Error::OracleCapExceeded(format!(
            "one-way enumeration needs n ≤ {ENUMERATION_CAP} and 2^c ≤ {ENUMERATION_ALPHABET_CAP}, got n = {n}, c = {bits}"
        )));
    }
    let t = 1usize << bits;
    let maps = t.pow(n as u32);
    let mut best: Option<(f64, Vec<usize>, Vec<i8>)> = None;
    let mut map = vec![0usize; n];
    for code in 0..maps {
        let mut rest = code;
        for m in map.iter_mut() {
            *m = rest % t;
            rest /= t;
        }
        for signs in 0..1u32 << n {
            let alice: Vec<i8> = (0..n).map(|x| if signs >> x & 1 == 1 { -1 } else { 1 }).collect();
            let value = split_value(game, t, &map, &alice);
            if best.as_ref().is_none_or(|b| value > b.0) {
                best = Some((value, map.clone(), alice));
            }
        }
    }
    let (_, map, alice) = best.expect("at least one protocol");
    best_bob_responses_with_alphabet(game, t, &map, &alice)
}

/// `Σ_i Σ_y |Σ_{x: m(x)=i} a_x G[x][y]|`.
fn split_value(game: &XorGame, t: usize, map: &[usize], alice: &[i8]) -> f64 {
    let n = game.n();
    let mut agg = vec![0.0; t * n];
    for x in 0..n {
        let s = alice[x] as f64;
        let block = &mut agg[map[x] * n..(map[x] + 1) * n];
        for (a, &g) in block.iter_mut().zip(game.row(x)) {
            *a += s * g;
        }
    }
    agg.iter().map(|v| v.abs()).sum()
}

/// Classical value by double enumeration over both players' signs.
pub fn naive_classical(game: &XorGame) -> Result<ValueCertificate> {
    let n = game.n();
    if n > NAIVE_CAP {
        return Err(Error::OracleCapExceeded(format!("naive enumeration needs n ≤ {NAIVE_CAP}, got {n}")));
    }
    let decode = |code: u32| -> Vec<i8> { (0..n).map(|i| if code >> i & 1 == 1 { -1 } else { 1 }).collect() };
    let mut best = (f64::NEG_INFINITY, 0u32, 0u32);
    for b in 0..1u32 << n {
        let bob = decode(b);
        let column: Vec<f64> = (0..n)
            .map(|x| game.row(x).iter().zip(&bob).map(|(&g, &s)| g * s as f64).sum())
            .collect();
        for a in 0..1u32 << n {
            let v: f64 = column
                .iter()
                .enumerate()
                .map(|(x, &c)| if a >> x & 1 == 1 { -c } else { c })
                .sum();
            if v > best.0 {
                best = (v, a, b);
            }
        }
    }
    let (alice, bob) = (decode(best.1), decode(best.2));
    let value = exact::bilinear(game, &alice, &bob);
    Ok(ValueCertificate { value, alice_signs: alice, bob_signs: bob })
}

/// Rewrites a rectangle strategy as a one-way protocol. Each of Alice's
/// inputs induces a row of answer products; Alice answers with the row's first
/// entry and sends the index of the row scaled by that sign, so rows that are
/// negations of each other share a message. Bob then answers optimally.
/// Returns the protocol and the number of messages used.
pub fn two_way_to_one_way(game: &XorGame, rect: &RectanglePartition) -> Result<(OneWayProtocol, usize)> {
    let owner = rect.cell_owners()?;
    let n = rect.n;
    if game.n() != n {
        return Err(Error::DimensionMismatch("partition and game sizes differ".into()));
    }
    let mut patterns: HashMap<Vec<i8>, usize> = HashMap::new();
    let mut map = vec![0usize; n];
    let mut alice = vec![1i8; n];
    for x in 0..n {
        let row: Vec<i8> = (0..n)
            .map(|y| {
                let r = &rect.rects[owner[x * n + y]];
                r.alice[x] * r.bob[y]
            })
            .collect();
        alice[x] = row[0];
        let normalized: Vec<i8> = row.iter().map(|&s| s * row[0]).collect();
        let next = patterns.len();
        map[x] = *patterns.entry(normalized).or_insert(next);
    }
    let distinct = patterns.len();
    let prot = best_bob_responses_with_alphabet(game, distinct, &map, &alice)?;
    Ok((prot, distinct))
}

/// Exact mixture value and a Monte Carlo estimate from `rounds` draws.
pub fn mixture_value(game: &XorGame, mix: &ProtocolMixture, rounds: usize, seed: u64) -> Result<(f64, f64)> {
    let values = mix
        .components
        .iter()
        .map(|(_, p)| protocol_value(game, p))
        .collect::<Result<Vec<_>>>()?;
    let exact: f64 = mix.components.iter().zip(&values).map(|((w, _), v)| w * v).sum();
    if rounds == 0 {
        return Ok((exact, exact));
    }
    let dist = WeightedIndex::new(mix.components.iter().map(|c| c.0))
        .map_err(|e| Error::InvalidParameter(e.to_string()))?;
    let mut rng = rng_for(seed, 0);
    let total: f64 = (0..rounds).map(|_| values[dist.sample(&mut rng)]).sum();
    Ok((exact, total / rounds as f64))
}

/// Random protocol with `t` messages, for tests and examples.
pub fn random_protocol(n: usize, t: usize, seed: u64) -> OneWayProtocol {
    let mut rng = rng_for(seed, 0);
    let sign = |rng: &mut rand_chacha::ChaCha8Rng| if rng.random_bool(0.5) { 1i8 } else { -1 };
    let mut message_map: Vec<usize> = (0..n).map(|x| x % t).collect();
    message_map.shuffle(&mut rng);
    OneWayProtocol {
        t,
        message_map,
        alice_signs: (0..n).map(|_| sign(&mut rng)).collect(),
        bob_signs: (0..t).map(|_| (0..n).map(|_| sign(&mut rng)).collect()).collect(),
    }
}
