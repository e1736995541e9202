//! Symmetric p-stable sampling (Chambers–Mallows–Stuck), normalized so the
//! characteristic function is `exp(−|u|^p)`.

use std::f64::consts::PI;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::seed::rng_for;

const CHUNK: usize = 1 << 16;

fn check_index(p: f64) -> Result<()> {
    if !(p > 1.0 && p <= 2.0) {
        return Err(Error::BadStabilityIndex(p));
    }
    Ok(())
}

/// One draw: `sin(pθ)/cos(θ)^{1/p} · (cos((p−1)θ)/W)^{(1−p)/p}` with
/// `θ ~ U(−π/2, π/2)` and `W ~ Exp(1)`.
pub(crate) fn draw(p: f64, rng: &mut ChaCha8Rng) -> f64 {
    let theta = loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            break PI * (u - 0.5);
        }
    };
    let w: f64 = rng.sample(Exp1);
    (p * theta).sin() / theta.cos().powf(1.0 / p) * (((p - 1.0) * theta).cos() / w).powf((1.0 - p) / p)
}

/// `count` i.i.d. symmetric p-stable draws, reproducible from `seed`
/// regardless of the thread pool.
pub fn sample_stable(p: f64, count: usize, seed: u64) -> Result<Vec<f64>> {
    check_index(p)?;
    let chunks = count.div_ceil(CHUNK);
    Ok((0..chunks)
        .into_par_iter()
        .flat_map_iter(|c| {
            let mut rng = rng_for(seed, c as u64);
            let len = CHUNK.min(count - c * CHUNK);
            (0..len).map(move |_| draw(p, &mut rng))
        })
        .collect())
}

/// `E|X| = (2/π) Γ(1 − 1/p)` for a standard symmetric p-stable `X`.
pub fn stable_abs_mean(p: f64) -> Result<f64> {
    check_index(p)?;
    Ok(2.0 / PI * statrs::function::gamma::gamma(1.0 - 1.0 / p))
}

/// Median-of-means estimate of `E|X|`; robust where heavy tails make the
/// plain sample mean converge slowly.
pub fn empirical_abs_mean(p: f64, samples: usize, groups: usize, seed: u64) -> Result<f64> {
    if groups == 0 || samples < groups {
        return Err(Error::InvalidParameter(format!("need 1 ≤ groups ≤ samples, got {groups}, {samples}")));
    }
    let draws = sample_stable(p, samples, seed)?;
    let size = samples / groups;
    let mut means: Vec<f64> = draws
        .chunks_exact(size)
        .take(groups)
        .map(|g| g.iter().map(|v| v.abs()).sum::<f64>() / size as f64)
        .collect();
    means.sort_by(f64::total_cmp);
    Ok(means[means.len() / 2])
}

/// Mean of `cos(u X)` over the sample, the empirical characteristic function
/// of a symmetric law.
pub fn empirical_char_fn(samples: &[f64], u: f64) -> f64 {
    samples.iter().map(|&x| (u * x).cos()).sum::<f64>() / samples.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_case() {
        let xs = sample_stable(2.0, 200_000, 11).unwrap();
        assert!((empirical_char_fn(&xs, 1.0) - (-1f64).exp()).abs() < 0.01);
        // p = 2 is N(0, 2)
        let var = xs.iter().map(|x| x * x).sum::<f64>() / xs.len() as f64;
        assert!((var - 2.0).abs() < 0.05);
        assert!((stable_abs_mean(2.0).unwrap() - 2.0 / PI.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn symmetric() {
        let xs = sample_stable(1.5, 200_000, 3).unwrap();
        let mean_sign = xs.iter().map(|x| x.signum()).sum::<f64>() / xs.len() as f64;
        assert!(mean_sign.abs() < 0.01);
    }

    #[test]
    fn deterministic_and_validated() {
        assert_eq!(sample_stable(1.3, 70_000, 5).unwrap(), sample_stable(1.3, 70_000, 5).unwrap());
        assert_eq!(sample_stable(1.3, 70_001, 5).unwrap().len(), 70_001);
        assert!(matches!(sample_stable(1.0, 10, 0), Err(Error::BadStabilityIndex(_))));
        assert!(matches!(sample_stable(2.5, 10, 0), Err(Error::BadStabilityIndex(_))));
    }

    #[test]
    fn abs_mean_estimate() {
        let exact = stable_abs_mean(1.5).unwrap();
        let est = empirical_abs_mean(1.5, 200_000, 20, 8).unwrap();
        assert!((est / exact - 1.0).abs() < 0.05, "{est} vs {exact}");
    }
}
