//! Feasible strategies for games beyond the exact caps.
//!
//! Every certificate returned here is an actual strategy, so its value is a
//! lower bound on the true optimum. The vector relaxation is a search device
//! only; its value is not a certified bound on anything.

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{alphabet, bilinear, sign_of, PartitionCertificate, ValueCertificate};
use crate::game::XorGame;
use crate::seed::rng_for;

/// Smallest improvement a local move must make to be taken.
const MOVE_TOL: f64 = 1e-13;
/// Values closer than this count as equal when comparing restarts.
const TIE_TOL: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SearchParams {
    pub restarts: usize,
    pub max_iters: usize,
    pub initial_temperature: f64,
    pub decay: f64,
    pub seed: u64,
    pub relaxation_rank: usize,
    pub sweeps: usize,
}

impl Default for SearchParams {
    fn default() -> Self {
        Self {
            restarts: 20,
            max_iters: 5000,
            initial_temperature: 0.1,
            decay: 0.995,
            seed: 0,
            relaxation_rank: 8,
            sweeps: 500,
        }
    }
}

impl SearchParams {
    pub fn with_seed(seed: u64) -> Self {
        Self { seed, ..Self::default() }
    }

    pub fn validate(&self) -> Result<()> {
        if self.restarts == 0 || self.relaxation_rank == 0 || !(self.decay > 0.0 && self.decay < 1.0) {
            return Err(Error::InvalidParameter(format!(
                "search needs restarts ≥ 1, relaxation_rank ≥ 1 and decay in (0, 1): {self:?}"
            )));
        }
        if !(self.initial_temperature >= 0.0) {
            return Err(Error::InvalidParameter("temperature must be nonnegative".into()));
        }
        Ok(())
    }
}

fn random_sign(rng: &mut ChaCha8Rng) -> i8 {
    if rng.random_bool(0.5) {
        1
    } else {
        -1
    }
}

/// Picks the best of per-restart results: highest value, then lowest index.
fn pick_best<T>(results: Vec<T>, value: impl Fn(&T) -> f64) -> T {
    let mut iter = results.into_iter();
    let mut best = iter.next().expect("at least one restart");
    for r in iter {
        if value(&r) > value(&best) + TIE_TOL {
            best = r;
        }
    }
    best
}

/// Single-flip local search from `alice`, Bob best-responding throughout.
pub fn hill_climb_from(game: &XorGame, alice: Vec<i8>, max_passes: usize) -> ValueCertificate {
    let active = game.active_rows();
    let mut alice = alice;
    let n = game.n();
    let fresh = |alice: &[i8]| {
        let mut col = vec![0.0; n];
        for &x in &active {
            let s = alice[x] as f64;
            for (c, &g) in col.iter_mut().zip(game.row(x)) {
                *c += s * g;
            }
        }
        col
    };
    let mut col = fresh(&alice);
    for _ in 0..max_passes.max(1) {
        let mut improved = false;
        for &x in &active {
            let s = 2.0 * alice[x] as f64;
            let row = game.row(x);
            let gain: f64 = col.iter().zip(row).map(|(&c, &g)| (c - s * g).abs() - c.abs()).sum();
            if gain > MOVE_TOL {
                for (c, &g) in col.iter_mut().zip(row) {
                    *c -= s * g;
                }
                alice[x] = -alice[x];
                improved = true;
            }
        }
        if !improved {
            break;
        }
        col = fresh(&alice);
    }
    ValueCertificate::from_alice(game, alice).canonical()
}

/// Best single-flip local optimum over `params.restarts` random starts.
pub fn hill_climb_classical(game: &XorGame, params: &SearchParams) -> Result<ValueCertificate> {
    params.validate()?;
    let results: Vec<ValueCertificate> = (0..params.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng_for(params.seed, r as u64);
            let alice = (0..game.n()).map(|_| random_sign(&mut rng)).collect();
            hill_climb_from(game, alice, params.max_iters)
        })
        .collect();
    Ok(pick_best(results, |c| c.value))
}

/// Mutable annealing state: message map, signs and per-message aggregates.
struct Split<'a> {
    game: &'a XorGame,
    map: Vec<usize>,
    alice: Vec<i8>,
    agg: Vec<Vec<f64>>,
    norms: Vec<f64>,
}

impl<'a> Split<'a> {
    fn new(game: &'a XorGame, t: usize, map: Vec<usize>, alice: Vec<i8>) -> Self {
        let n = game.n();
        let mut agg = vec![vec![0.0; n]; t];
        for x in 0..n {
            let s = alice[x] as f64;
            for (a, &g) in agg[map[x]].iter_mut().zip(game.row(x)) {
                *a += s * g;
            }
        }
        let norms = agg.iter().map(|a| a.iter().map(|v| v.abs()).sum()).collect();
        Self { game, map, alice, agg, norms }
    }

    fn value(&self) -> f64 {
        self.norms.iter().sum()
    }

    /// Norm of message `i`'s aggregate after adding `scale · α_x G[x]`.
    fn shifted(&self, i: usize, x: usize, scale: f64) -> f64 {
        let s = scale * self.alice[x] as f64;
        self.agg[i].iter().zip(self.game.row(x)).map(|(&a, &g)| (a + s * g).abs()).sum()
    }

    fn flip_delta(&self, x: usize) -> f64 {
        let i = self.map[x];
        self.shifted(i, x, -2.0) - self.norms[i]
    }

    fn move_delta(&self, x: usize, j: usize) -> f64 {
        let i = self.map[x];
        self.shifted(i, x, -1.0) - self.norms[i] + self.shifted(j, x, 1.0) - self.norms[j]
    }

    fn add(&mut self, i: usize, x: usize, scale: f64) {
        let s = scale * self.alice[x] as f64;
        for (a, &g) in self.agg[i].iter_mut().zip(self.game.row(x)) {
            *a += s * g;
        }
        self.norms[i] = self.agg[i].iter().map(|v| v.abs()).sum();
    }

    fn flip(&mut self, x: usize) {
        let i = self.map[x];
        self.add(i, x, -2.0);
        self.alice[x] = -self.alice[x];
    }

    fn reassign(&mut self, x: usize, j: usize) {
        let i = self.map[x];
        self.add(i, x, -1.0);
        self.map[x] = j;
        self.add(j, x, 1.0);
    }

    /// First-improvement descent over flips and reassignments.
    fn polish(&mut self, active: &[usize]) {
        let t = self.agg.len();
        loop {
            let mut improved = false;
            for &x in active {
                if self.flip_delta(x) > MOVE_TOL {
                    self.flip(x);
                    improved = true;
                }
                for j in 0..t {
                    if j != self.map[x] && self.move_delta(x, j) > MOVE_TOL {
                        self.reassign(x, j);
                        improved = true;
                    }
                }
            }
            if !improved {
                break;
            }
        }
    }
}

/// Simulated annealing over message maps and Alice signs for `ω_c¹`.
///
/// Moves reassign one input to another message or flip one Alice sign;
/// acceptance is Metropolis with geometric cooling, and every restart ends
/// with a greedy descent from its best state.
pub fn anneal_one_way(game: &XorGame, bits: u32, params: &SearchParams) -> Result<PartitionCertificate> {
    params.validate()?;
    let n = game.n();
    let t = alphabet(bits, n);
    let active = game.active_rows();
    if t >= active.len() {
        let mut map = vec![0; n];
        if t >= n {
            map = (0..n).collect();
        } else {
            for (i, &x) in active.iter().enumerate() {
                map[x] = i;
            }
        }
        return Ok(PartitionCertificate::from_partition(game, bits, t, map, vec![1; n]));
    }
    let results: Vec<PartitionCertificate> = (0..params.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng_for(params.seed, r as u64);
            let mut map = vec![0usize; n];
            for &x in &active {
                map[x] = rng.random_range(0..t);
            }
            let alice = (0..n).map(|_| random_sign(&mut rng)).collect();
            let mut state = Split::new(game, t, map, alice);
            let mut best = (state.value(), state.map.clone(), state.alice.clone());
            let mut temp = params.initial_temperature;
            for _ in 0..params.max_iters {
                let x = active[rng.random_range(0..active.len())];
                let flip = t == 1 || rng.random_bool(0.5);
                let (delta, target) = if flip {
                    (state.flip_delta(x), None)
                } else {
                    let mut j = rng.random_range(0..t - 1);
                    if j >= state.map[x] {
                        j += 1;
                    }
                    (state.move_delta(x, j), Some(j))
                };
                let accept = delta >= 0.0 || (temp > 0.0 && rng.random::<f64>() < (delta / temp).exp());
                if accept {
                    match target {
                        None => state.flip(x),
                        Some(j) => state.reassign(x, j),
                    }
                    if state.value() > best.0 + MOVE_TOL {
                        best = (state.value(), state.map.clone(), state.alice.clone());
                    }
                }
                temp *= params.decay;
            }
            let mut state = Split::new(game, t, best.1, best.2);
            state.polish(&active);
            PartitionCertificate::from_partition(game, bits, t, state.map, state.alice)
        })
        .collect();
    Ok(pick_best(results, |c| c.value))
}

/// Output of the unit-vector relaxation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Relaxation {
    pub value: f64,
    pub alice_vectors: Vec<Vec<f64>>,
    pub bob_vectors: Vec<Vec<f64>>,
    /// Objective after every sweep; nondecreasing.
    pub history: Vec<f64>,
}

fn normalize_into(target: &mut [f64], w: &[f64]) -> f64 {
    let norm = w.iter().map(|v| v * v).sum::<f64>().sqrt();
    if norm > 1e-300 {
        for (t, &v) in target.iter_mut().zip(w) {
            *t = v / norm;
        }
    }
    norm
}

/// Alternating exact maximization over Bob's then Alice's unit vectors.
fn ascend(game: &XorGame, mut u: Vec<Vec<f64>>, mut v: Vec<Vec<f64>>, sweeps: usize) -> Relaxation {
    let n = game.n();
    let rank = u.first().map_or(1, |r| r.len());
    let mut history = Vec::new();
    let mut w = vec![0.0; rank];
    for _ in 0..sweeps.max(1) {
        for y in 0..n {
            w.fill(0.0);
            for (x, ux) in u.iter().enumerate() {
                let g = game.cost(x, y);
                if g != 0.0 {
                    w.iter_mut().zip(ux).for_each(|(a, &b)| *a += g * b);
                }
            }
            normalize_into(&mut v[y], &w);
        }
        let mut objective = 0.0;
        for x in 0..n {
            w.fill(0.0);
            for (&g, vy) in game.row(x).iter().zip(&v) {
                if g != 0.0 {
                    w.iter_mut().zip(vy).for_each(|(a, &b)| *a += g * b);
                }
            }
            objective += normalize_into(&mut u[x], &w);
        }
        let converged = history.last().is_some_and(|&last: &f64| objective - last < 1e-14);
        history.push(objective);
        if converged {
            break;
        }
    }
    Relaxation { value: *history.last().expect("one sweep"), alice_vectors: u, bob_vectors: v, history }
}

fn random_unit(rng: &mut ChaCha8Rng, rank: usize) -> Vec<f64> {
    loop {
        let g: Vec<f64> = (0..rank).map(|_| rng.sample(StandardNormal)).collect();
        let norm = g.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm > 1e-12 {
            return g.into_iter().map(|v| v / norm).collect();
        }
    }
}

/// Maximizes `Σ G[x][y] ⟨u_x, v_y⟩` over unit vectors of dimension
/// `relaxation_rank` by block-coordinate ascent; best over restarts.
pub fn vector_relaxation(game: &XorGame, params: &SearchParams) -> Result<Relaxation> {
    params.validate()?;
    let n = game.n();
    let rank = params.relaxation_rank;
    let results: Vec<Relaxation> = (0..params.restarts)
        .into_par_iter()
        .map(|r| {
            let mut rng = rng_for(params.seed, r as u64);
            let u = (0..n).map(|_| random_unit(&mut rng, rank)).collect();
            let v = (0..n).map(|_| random_unit(&mut rng, rank)).collect();
            ascend(game, u, v, params.sweeps)
        })
        .collect();
    Ok(pick_best(results, |r| r.value))
}

/// Ascent started from the rank-one embedding of Alice's signs.
pub fn vector_relaxation_seeded(game: &XorGame, params: &SearchParams, alice_signs: &[i8]) -> Result<Relaxation> {
    params.validate()?;
    if alice_signs.len() != game.n() {
        return Err(Error::DimensionMismatch("seed signs do not fit the game".into()));
    }
    let rank = params.relaxation_rank;
    let axis = |s: f64| {
        let mut e = vec![0.0; rank];
        e[0] = s;
        e
    };
    let u = alice_signs.iter().map(|&s| axis(s as f64)).collect();
    let v = (0..game.n()).map(|_| axis(1.0)).collect();
    Ok(ascend(game, u, v, params.sweeps))
}

/// Random-hyperplane rounding of relaxation vectors. Each round rounds both
/// sides' vectors and lets the other player best-respond; the best sign
/// certificate over all rounds is returned.
pub fn hyperplane_round(
    game: &XorGame,
    alice_vectors: &[Vec<f64>],
    bob_vectors: &[Vec<f64>],
    rounds: usize,
    seed: u64,
) -> Result<ValueCertificate> {
    let n = game.n();
    if alice_vectors.len() != n || bob_vectors.len() != n {
        return Err(Error::DimensionMismatch("one vector per input is required".into()));
    }
    let rank = alice_vectors.first().map_or(0, |v| v.len());
    if rank == 0 || alice_vectors.iter().chain(bob_vectors).any(|v| v.len() != rank) {
        return Err(Error::DimensionMismatch("vectors must share one positive dimension".into()));
    }
    let project = |vs: &[Vec<f64>], g: &[f64]| -> Vec<i8> {
        vs.iter().map(|v| sign_of(v.iter().zip(g).map(|(a, b)| a * b).sum())).collect()
    };
    let results: Vec<ValueCertificate> = (0..rounds.max(1))
        .map(|r| {
            let mut rng = rng_for(seed, r as u64);
            let g: Vec<f64> = (0..rank).map(|_| rng.sample(StandardNormal)).collect();
            let from_alice = ValueCertificate::from_alice(game, project(alice_vectors, &g)).canonical();
            let bob = project(bob_vectors, &g);
            let alice: Vec<i8> = (0..n)
                .map(|x| sign_of(game.row(x).iter().zip(&bob).map(|(&c, &b)| c * b as f64).sum()))
                .collect();
            let value = bilinear(game, &alice, &bob);
            if value > from_alice.value + TIE_TOL {
                ValueCertificate { value, alice_signs: alice, bob_signs: bob }.canonical()
            } else {
                from_alice
            }
        })
        .collect();
    Ok(pick_best(results, |c| c.value))
}
