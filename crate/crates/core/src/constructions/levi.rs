//! Games whose classical and one-way values both sit near a prescribed `δ`.
//!
//! The operator is `T = A ∘ S ∘ P`: `P` keeps the first `k` coordinates,
//! `S = k^{−1/p} id` maps `ℓ_∞^k → ℓ_p^k` with norm 1 and 1-summing norm
//! `k^{1/q} = 1/δ`, and `A` is a random p-stable embedding of `ℓ_p^k` into
//! `ℓ_1^rows`. Normalizing `T` by its 1-summing norm gives the game.
//!
//! The embedding's distortion is measured on samples rather than guaranteed,
//! so the values are reported as intervals.

use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::game::XorGame;
use crate::seed::{derive_seed, rng_for};

use super::stable::{draw, stable_abs_mean};

/// Largest game size `levi_game` will materialize densely.
pub const LEVI_GAME_CAP: usize = 8192;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct LeviParams {
    pub delta: f64,
    pub alpha: f64,
    /// Number of vectors the one-way value is allowed.
    pub t: u64,
    pub epsilon: f64,
    /// `log2(alpha)`.
    pub theta0: f64,
    pub m0: u32,
    pub k: u64,
    pub q: f64,
    pub p: f64,
}

impl LeviParams {
    /// `π₁(S) = k · ‖k^{−1/p} e_i‖_p = k^{1 − 1/p} = k^{1/q}`.
    pub fn pi1_of_s(&self) -> f64 {
        (self.k as f64).powf(1.0 / self.q)
    }
}

/// `t = 2^{2^c}`: a one-way budget of that many messages covers every
/// two-way protocol with `c` bits.
pub fn t_for_bits(c: u32) -> Result<u64> {
    if c > 5 {
        return Err(Error::InvalidParameter(format!("2^(2^{c}) messages overflow")));
    }
    Ok(1u64 << (1u32 << c))
}

/// Parameters of the construction for target value `delta`, `t` vectors and
/// slack `epsilon`.
///
/// `m0` is the least `m` with `t^{θ0/m} < 1 + ε`, raised further until
/// `q = m0/θ0 > 2` so that `1 < p < 2`.
pub fn levi_params(delta: f64, t: u64, epsilon: f64) -> Result<LeviParams> {
    if !(delta > 0.0 && delta < 1.0) {
        return Err(Error::InvalidParameter(format!("delta = {delta} must lie in (0, 1)")));
    }
    if !(epsilon > 0.0) || t == 0 {
        return Err(Error::InvalidParameter("epsilon must be positive and t ≥ 1".into()));
    }
    let alpha = 1.0 / delta;
    let theta0 = alpha.log2();
    if !(theta0 > 1e-9) {
        return Err(Error::DegenerateDelta(delta));
    }
    let log_t = (t as f64).ln();
    let target = epsilon.ln_1p();
    let mut m0 = 1u32;
    while (theta0 * log_t / m0 as f64) >= target {
        m0 += 1;
        if m0 >= 63 {
            return Err(Error::HugeK { m0 });
        }
    }
    while m0 as f64 / theta0 <= 2.0 {
        m0 += 1;
        if m0 >= 63 {
            return Err(Error::HugeK { m0 });
        }
    }
    let q = m0 as f64 / theta0;
    let p = q / (q - 1.0);
    if !(p > 1.0 && p < 2.0) {
        return Err(Error::DegenerateDelta(delta));
    }
    Ok(LeviParams { delta, alpha, t, epsilon, theta0, m0, k: 1u64 << m0, q, p })
}

/// Linear map `ℓ_p^k → ℓ_1^rows`, `(Ax)_j = normalization · Σ_i M[j][i] x_i`
/// with i.i.d. standard p-stable `M`.
#[derive(Clone, Debug, PartialEq)]
pub struct EmbeddingSpec {
    pub p: f64,
    pub k: usize,
    pub rows: usize,
    /// Row-major, `rows × k`.
    pub matrix: Vec<f64>,
    /// `1 / (rows · E|X|)`, so that `E‖A e_i‖₁ = 1`.
    pub normalization: f64,
}

impl EmbeddingSpec {
    pub fn apply(&self, x: &[f64]) -> Vec<f64> {
        self.matrix
            .chunks_exact(self.k)
            .map(|row| self.normalization * row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>())
            .collect()
    }

    /// `‖Ax‖₁`.
    pub fn image_norm(&self, x: &[f64]) -> f64 {
        self.matrix
            .chunks_exact(self.k)
            .map(|row| row.iter().zip(x).map(|(a, b)| a * b).sum::<f64>().abs())
            .sum::<f64>()
            * self.normalization
    }

    /// `‖A e_i‖₁`.
    pub fn column_norm(&self, i: usize) -> f64 {
        self.matrix.chunks_exact(self.k).map(|row| row[i].abs()).sum::<f64>() * self.normalization
    }

    /// `‖Ax‖₁ / ‖x‖_p`.
    pub fn ratio(&self, x: &[f64]) -> f64 {
        self.image_norm(x) / p_norm(x, self.p)
    }
}

pub fn p_norm(x: &[f64], p: f64) -> f64 {
    x.iter().map(|v| v.abs().powf(p)).sum::<f64>().powf(1.0 / p)
}

pub fn stable_embedding(k: usize, rows: usize, p: f64, seed: u64) -> Result<EmbeddingSpec> {
    if !(p > 1.0 && p < 2.0) {
        return Err(Error::BadStabilityIndex(p));
    }
    if k == 0 || rows < k {
        return Err(Error::BadDimensions(format!("need rows ≥ k ≥ 1, got k = {k}, rows = {rows}")));
    }
    let matrix = (0..rows)
        .into_par_iter()
        .flat_map_iter(|j| {
            let mut rng = rng_for(seed, j as u64);
            (0..k).map(move |_| draw(p, &mut rng))
        })
        .collect();
    let normalization = 1.0 / (rows as f64 * stable_abs_mean(p)?);
    Ok(EmbeddingSpec { p, k, rows, matrix, normalization })
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DistortionReport {
    pub lower: f64,
    pub upper: f64,
    /// Number of directions evaluated.
    pub samples: usize,
}

impl DistortionReport {
    pub fn ratio(&self) -> f64 {
        self.upper / self.lower
    }

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }
}

/// Extremes of `‖Ax‖₁/‖x‖_p` over the basis vectors, the all-ones vector and
/// `samples` uniformly random directions.
pub fn distortion_estimate(emb: &EmbeddingSpec, samples: usize, seed: u64) -> DistortionReport {
    let k = emb.k;
    let mut ratios: Vec<f64> = (0..k).map(|i| emb.column_norm(i)).collect();
    ratios.push(emb.ratio(&vec![1.0; k]));
    let random: Vec<f64> = (0..samples)
        .into_par_iter()
        .map(|s| {
            let mut rng = rng_for(seed, s as u64);
            let x: Vec<f64> = (0..k).map(|_| rand::Rng::sample(&mut rng, StandardNormal)).collect();
            emb.ratio(&x)
        })
        .collect();
    ratios.extend(random);
    let lower = ratios.iter().copied().fold(f64::INFINITY, f64::min);
    let upper = ratios.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    DistortionReport { lower, upper, samples: ratios.len() }
}

#[derive(Clone, Debug, Serialize)]
pub struct LeviGameReport {
    #[serde(skip)]
    pub game: XorGame,
    pub params: LeviParams,
    pub rows: usize,
    pub distortion: DistortionReport,
    /// `π₁(T)`, the normalizing constant; close to `alpha`.
    pub pi1_of_t: f64,
    /// `π₁(S) = k^{1/q}`, equal to `alpha`.
    pub pi1_of_s: f64,
    pub omega_interval: (f64, f64),
    pub one_way_interval: (f64, f64),
}

/// Builds the game `T / π₁(T)` on `rows` inputs per player.
///
/// `ω = ‖T‖/π₁(T)` is bracketed below by the all-ones input on the first `k`
/// coordinates and above by the measured upper distortion (`‖S ∘ P‖ = 1`).
/// With `t` vectors, Hölder gives `π₁^t(T) ≤ t^{1/q} π_p(T)`, which bounds the
/// one-way value by `t^{1/q}` times the upper distortion.
pub fn levi_game(params: &LeviParams, rows: usize, samples: usize, seed: u64) -> Result<LeviGameReport> {
    let k = usize::try_from(params.k).map_err(|_| Error::HugeK { m0: params.m0 })?;
    if rows < k {
        return Err(Error::BadDimensions(format!("rows = {rows} must be at least k = {k}")));
    }
    if rows > LEVI_GAME_CAP {
        return Err(Error::BadDimensions(format!("rows = {rows} exceeds the dense game cap {LEVI_GAME_CAP}")));
    }
    let emb = stable_embedding(k, rows, params.p, derive_seed(seed, 0))?;
    let distortion = distortion_estimate(&emb, samples, derive_seed(seed, 1));
    let scale = (k as f64).powf(-1.0 / params.p);

    // G[x][y] = T(e_x)(y) = scale · (A e_x)_y for x < k; the other rows are zero
    let n = rows;
    let weight = emb.normalization * scale;
    let pi1_of_t = weight * emb.matrix.iter().map(|v| v.abs()).sum::<f64>();
    let mut f = vec![1i8; n * n];
    let mut pi = vec![0.0; n * n];
    for (y, row) in emb.matrix.chunks_exact(k).enumerate() {
        for (x, &m) in row.iter().enumerate() {
            f[x * n + y] = if m < 0.0 { -1 } else { 1 };
            pi[x * n + y] = weight * m.abs() / pi1_of_t;
        }
    }
    let game = XorGame::from_flat(n, f, pi)?;

    let ones = vec![scale; k];
    let omega_lower = (emb.image_norm(&ones) / pi1_of_t).min(1.0);
    let omega_upper = (distortion.upper / pi1_of_t).clamp(omega_lower, 1.0);
    let t_factor = (params.t as f64).powf(1.0 / params.q);
    let one_way_upper = (t_factor * distortion.upper / pi1_of_t).clamp(omega_lower, 1.0);
    Ok(LeviGameReport {
        game,
        params: *params,
        rows,
        distortion,
        pi1_of_t,
        pi1_of_s: params.pi1_of_s(),
        omega_interval: (omega_lower, omega_upper),
        one_way_interval: (omega_lower, one_way_upper),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parameters_from_the_construction() {
        let p = levi_params(0.5, 2, 0.1).unwrap();
        assert_eq!((p.theta0, p.m0, p.k, p.q), (1.0, 8, 256, 8.0));
        assert!((p.p - 8.0 / 7.0).abs() < 1e-15);
        assert_eq!(p.pi1_of_s(), 2.0);
        let p = levi_params(0.5, 2, 0.5).unwrap();
        assert_eq!((p.m0, p.k, p.q, p.p), (3, 8, 3.0, 1.5));
    }

    #[test]
    fn parameter_validation() {
        assert!(matches!(levi_params(1.0 - 1e-13, 2, 0.1), Err(Error::DegenerateDelta(_))));
        assert!(matches!(levi_params(1e-9, 1 << 32, 1e-3), Err(Error::HugeK { .. })));
        assert!(levi_params(0.0, 2, 0.1).is_err());
        assert!(levi_params(0.5, 2, 0.0).is_err());
        assert_eq!(t_for_bits(0).unwrap(), 2);
        assert_eq!(t_for_bits(2).unwrap(), 16);
    }

    #[test]
    fn embedding_is_linear() {
        let emb = stable_embedding(3, 64, 1.5, 4).unwrap();
        assert!(emb.apply(&[0.0; 3]).iter().all(|&v| v == 0.0));
        let x = [0.3, -1.2, 0.7];
        let scaled: Vec<f64> = x.iter().map(|v| -2.5 * v).collect();
        assert!((emb.image_norm(&scaled) - 2.5 * emb.image_norm(&x)).abs() < 1e-12);
        let l1: f64 = emb.apply(&x).iter().map(|v| v.abs()).sum();
        assert!((l1 - emb.image_norm(&x)).abs() < 1e-12);
        assert!(matches!(stable_embedding(4, 3, 1.5, 0), Err(Error::BadDimensions(_))));
    }

    #[test]
    fn single_column_distortion() {
        let emb = stable_embedding(1, 4096, 1.5, 21).unwrap();
        let d = distortion_estimate(&emb, 50, 2);
        assert!((d.lower - d.upper).abs() < 1e-12);
        assert!((d.upper - emb.column_norm(0)).abs() < 1e-12);
        assert!((emb.column_norm(0) - 1.0).abs() < 0.1);
    }

    #[test]
    fn small_levi_game() {
        let params = levi_params(0.5, 2, 0.5).unwrap();
        let report = levi_game(&params, 64, 200, 3).unwrap();
        assert!((report.game.pi_1_norm() - 1.0).abs() < 1e-12);
        assert_eq!(report.game.active_rows().len(), 8);
        let (lo, hi) = report.omega_interval;
        assert!(0.0 <= lo && lo <= hi && hi <= 1.0);
        assert!(report.one_way_interval.1 >= hi);
        assert!(matches!(levi_game(&params, 4, 10, 0), Err(Error::BadDimensions(_))));
    }
}
