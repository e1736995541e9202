use rand::Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::bounds::{self, Constants, Interval};
use crate::constructions::{self, DistortionReport, LeviParams};
use crate::error::{Error, Result};
use crate::exact::{self, ExactConfig};
use crate::search::{self, SearchParams};
use crate::seed::{derive_seed, rng_for};

use super::args::{BellArgs, ChevetArgs, ConcentrationArgs, TightnessArgs};
use super::generate::build_levi;
use super::{csv_string, fmt_float};

/// Slack allowed when checking an inequality between computed values.
pub const CHECK_TOL: f64 = 1e-12;

const MIN_SAMPLES: usize = 100;

fn need_samples(samples: usize) -> Result<()> {
    if samples < MIN_SAMPLES {
        return Err(Error::InvalidParameter(format!("need at least {MIN_SAMPLES} samples, got {samples}")));
    }
    Ok(())
}

fn need_exact(n: usize, cap: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::BadDimensions("n must be positive".into()));
    }
    if n > cap {
        return Err(Error::ExactCapExceeded { n, cap });
    }
    Ok(())
}

fn median(sorted: &[f64]) -> f64 {
    let m = sorted.len() / 2;
    if sorted.len() % 2 == 1 {
        sorted[m]
    } else {
        (sorted[m - 1] + sorted[m]) / 2.0
    }
}

fn omega_of_sign_game(n: usize, seed: u64) -> Result<f64> {
    Ok(exact::classical_value(&constructions::chevet_full_game(n, seed)?)?.value)
}

#[derive(Clone, Debug, Serialize)]
pub struct TailRow {
    pub r: f64,
    pub empirical_tail: f64,
    pub bound: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct FlipRow {
    /// Sample whose game was perturbed.
    pub sample: usize,
    pub x: usize,
    pub y: usize,
    pub omega: f64,
    pub delta: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConcentrationReport {
    pub n: usize,
    pub samples: usize,
    pub omegas: Vec<f64>,
    pub median: f64,
    pub min: f64,
    pub max: f64,
    pub tails: Vec<TailRow>,
    pub flips: Vec<FlipRow>,
    /// `2/n²`: one entry of a uniform game carries mass `1/n²`.
    pub lipschitz_bound: f64,
    pub flip_violations: usize,
}

impl ConcentrationReport {
    pub fn to_csv(&self) -> Result<String> {
        let blank = String::new;
        let mut rows = Vec::new();
        for (i, &w) in self.omegas.iter().enumerate() {
            rows.push(vec!["sample".into(), i.to_string(), fmt_float(w), blank(), blank(), blank(), blank()]);
        }
        rows.push(vec!["median".into(), blank(), fmt_float(self.median), blank(), blank(), blank(), blank()]);
        for t in &self.tails {
            rows.push(vec![
                "tail".into(),
                blank(),
                fmt_float(self.median),
                blank(),
                fmt_float(t.r),
                fmt_float(t.empirical_tail),
                fmt_float(t.bound),
            ]);
        }
        for (j, f) in self.flips.iter().enumerate() {
            rows.push(vec![
                "flip".into(),
                j.to_string(),
                fmt_float(f.omega),
                fmt_float(f.delta),
                blank(),
                blank(),
                fmt_float(self.lipschitz_bound),
            ]);
        }
        csv_string(&["record", "index", "omega", "delta", "r", "empirical_tail", "bound"], rows)
    }
}

/// Exact `ω` of `samples` uniform random sign games, tail frequencies around
/// the sample median, and the change of `ω` under random single-entry flips.
pub fn cmd_experiment_concentration(a: &ConcentrationArgs) -> Result<ConcentrationReport> {
    need_exact(a.n, ExactConfig::default().classical_cap)?;
    need_samples(a.samples)?;
    if a.r.iter().any(|r| !(*r >= 0.0)) {
        return Err(Error::InvalidParameter("radii must be nonnegative".into()));
    }
    let n = a.n;
    let game_seed = derive_seed(a.seed, 0);
    let omegas = (0..a.samples)
        .into_par_iter()
        .map(|s| omega_of_sign_game(n, derive_seed(game_seed, s as u64)))
        .collect::<Result<Vec<f64>>>()?;
    let mut sorted = omegas.clone();
    sorted.sort_by(f64::total_cmp);
    let m = median(&sorted);
    let tails = a
        .r
        .iter()
        .map(|&r| TailRow {
            r,
            empirical_tail: omegas.iter().filter(|&&w| (w - m).abs() >= r).count() as f64 / a.samples as f64,
            bound: bounds::concentration_bound(n, r),
        })
        .collect();

    let flip_seed = derive_seed(a.seed, 1);
    let flips = (0..a.flips)
        .into_par_iter()
        .map(|j| {
            let mut rng = rng_for(flip_seed, j as u64);
            let sample = rng.random_range(0..a.samples);
            let (x, y) = (rng.random_range(0..n), rng.random_range(0..n));
            let game = constructions::chevet_full_game(n, derive_seed(game_seed, sample as u64))?;
            let omega = exact::classical_value(&game.flip_entry(x, y)?)?.value;
            Ok(FlipRow { sample, x, y, omega, delta: (omega - omegas[sample]).abs() })
        })
        .collect::<Result<Vec<FlipRow>>>()?;
    let lipschitz_bound = 2.0 / (n * n) as f64;
    let flip_violations = flips.iter().filter(|f| f.delta > lipschitz_bound + CHECK_TOL).count();
    Ok(ConcentrationReport {
        n,
        samples: a.samples,
        median: m,
        min: sorted[0],
        max: sorted[sorted.len() - 1],
        omegas,
        tails,
        flips,
        lipschitz_bound,
        flip_violations,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct TightnessRow {
    pub family: &'static str,
    pub n: usize,
    pub c: u32,
    pub seed: usize,
    pub omega: f64,
    pub one_way: f64,
    /// `ω_c¹ / ω`.
    pub ratio: f64,
    /// `K_G · 2^{c/2}`.
    pub grothendieck_bound: f64,
    /// `ω_c¹ · √n / 2^{c/2}`.
    pub scaled: f64,
    pub floor: f64,
    pub upper_ok: bool,
    pub floor_ok: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct TightnessReport {
    pub rows: Vec<TightnessRow>,
}

impl TightnessReport {
    pub fn violations(&self) -> usize {
        self.rows.iter().filter(|r| !(r.upper_ok && r.floor_ok)).count()
    }

    pub fn to_csv(&self) -> Result<String> {
        let rows = self.rows.iter().map(|r| {
            vec![
                r.family.to_string(),
                r.n.to_string(),
                r.c.to_string(),
                r.seed.to_string(),
                fmt_float(r.omega),
                fmt_float(r.one_way),
                fmt_float(r.ratio),
                fmt_float(r.grothendieck_bound),
                fmt_float(r.scaled),
                fmt_float(r.floor),
                r.upper_ok.to_string(),
                r.floor_ok.to_string(),
            ]
        });
        csv_string(
            &[
                "family",
                "n",
                "c",
                "seed",
                "omega",
                "one_way",
                "ratio",
                "grothendieck_bound",
                "scaled",
                "floor",
                "upper_ok",
                "floor_ok",
            ],
            rows,
        )
    }
}

fn tightness_row(family: &'static str, n: usize, c: u32, seed: usize, omega: f64, one_way: f64) -> TightnessRow {
    let consts = Constants::default();
    let half = 2f64.powf(c as f64 / 2.0);
    let grothendieck_bound = consts.k_g * half;
    let floor = bounds::one_way_floor(n, c, &consts);
    TightnessRow {
        family,
        n,
        c,
        seed,
        omega,
        one_way,
        ratio: one_way / omega,
        grothendieck_bound,
        scaled: one_way * (n as f64).sqrt() / half,
        floor,
        upper_ok: one_way <= grothendieck_bound * omega + CHECK_TOL,
        floor_ok: one_way >= floor - CHECK_TOL,
    }
}

fn ceil_log2(n: usize) -> u32 {
    usize::BITS - (n - 1).leading_zeros()
}

/// Exact `ω` and `ω_c¹` of random sign games (every `c` up to `⌈log₂ n⌉`) and
/// of random sign blocks of side `2^c`, against both one-way bounds.
pub fn cmd_experiment_tightness(a: &TightnessArgs) -> Result<TightnessReport> {
    let cfg = ExactConfig::default();
    for &n in &a.n {
        need_exact(n, cfg.dp_cap)?;
    }
    if a.seeds == 0 {
        return Err(Error::InvalidParameter("need at least one seed".into()));
    }
    let mut jobs = Vec::new();
    for &n in &a.n {
        for s in 0..a.seeds {
            jobs.push(("chevet", n, None, s));
        }
        for c in 0..=n.ilog2() {
            for s in 0..a.seeds {
                jobs.push(("chevet-block", n, Some(c), s));
            }
        }
    }
    let rows: Vec<Vec<TightnessRow>> = jobs
        .par_iter()
        .enumerate()
        .map(|(j, &(family, n, block, s))| {
            let seed = derive_seed(a.seed, j as u64);
            match block {
                None => {
                    let game = constructions::chevet_full_game(n, seed)?;
                    let omega = exact::classical_value_with(&game, &cfg)?.value;
                    let bits: Vec<u32> = (0..=ceil_log2(n)).collect();
                    let certs = exact::one_way_values_with(&game, &bits, &cfg)?;
                    Ok(bits.iter().zip(certs).map(|(&c, w)| tightness_row(family, n, c, s, omega, w.value)).collect())
                }
                Some(c) => {
                    let game = constructions::chevet_block_game(n, c, seed)?;
                    let omega = exact::classical_value_with(&game, &cfg)?.value;
                    let one_way = exact::one_way_value_with(&game, c, &cfg)?.value;
                    Ok(vec![tightness_row(family, n, c, s, omega, one_way)])
                }
            }
        })
        .collect::<Result<_>>()?;
    Ok(TightnessReport { rows: rows.into_iter().flatten().collect() })
}

#[derive(Clone, Debug, Serialize)]
pub struct ChevetRow {
    pub n: usize,
    pub samples: usize,
    /// Mean of `n² ω`, the unnormalized bilinear maximum.
    pub mean: f64,
    pub std_err: f64,
    /// `2 b n^{3/2}`.
    pub bound: f64,
    pub margin: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChevetReport {
    pub rows: Vec<ChevetRow>,
    /// Least-squares slope of `ln mean` against `ln n`.
    pub loglog_slope: f64,
}

impl ChevetReport {
    pub fn to_csv(&self) -> Result<String> {
        let rows = self.rows.iter().map(|r| {
            vec![
                r.n.to_string(),
                r.samples.to_string(),
                fmt_float(r.mean),
                fmt_float(r.std_err),
                fmt_float(r.bound),
                fmt_float(r.margin),
                fmt_float(self.loglog_slope),
            ]
        });
        csv_string(&["n", "samples", "mean", "std_err", "bound", "margin", "loglog_slope"], rows)
    }
}

fn loglog_slope(points: &[(f64, f64)]) -> f64 {
    if points.len() < 2 {
        return f64::NAN;
    }
    let k = points.len() as f64;
    let (xs, ys): (Vec<f64>, Vec<f64>) = points.iter().map(|&(x, y)| (x.ln(), y.ln())).unzip();
    let mx = xs.iter().sum::<f64>() / k;
    let my = ys.iter().sum::<f64>() / k;
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

/// Monte Carlo mean of `n² ω` for uniform random sign games.
pub fn cmd_experiment_chevet(a: &ChevetArgs) -> Result<ChevetReport> {
    let cap = ExactConfig::default().classical_cap;
    for &n in &a.n {
        need_exact(n, cap)?;
    }
    need_samples(a.samples)?;
    let consts = Constants::default();
    let rows = a
        .n
        .iter()
        .enumerate()
        .map(|(i, &n)| {
            let size_seed = derive_seed(a.seed, i as u64);
            let raw = (0..a.samples)
                .into_par_iter()
                .map(|s| Ok(omega_of_sign_game(n, derive_seed(size_seed, s as u64))? * (n * n) as f64))
                .collect::<Result<Vec<f64>>>()?;
            let k = raw.len() as f64;
            let mean = raw.iter().sum::<f64>() / k;
            let var = raw.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (k - 1.0);
            let bound = bounds::chevet_mean_bound(n, &consts);
            Ok(ChevetRow { n, samples: a.samples, mean, std_err: (var / k).sqrt(), bound, margin: bound - mean })
        })
        .collect::<Result<Vec<_>>>()?;
    let points: Vec<(f64, f64)> = rows.iter().map(|r| (r.n as f64, r.mean)).collect();
    Ok(ChevetReport { loglog_slope: loglog_slope(&points), rows })
}

#[derive(Clone, Debug, Serialize)]
pub struct TwoWayReport {
    /// Largest `c` with `2^{2^c} ≤ t`.
    pub c: u32,
    pub lower: f64,
    pub upper: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct BellReport {
    pub delta: f64,
    pub params: LeviParams,
    pub rows: usize,
    pub distortion: DistortionReport,
    pub pi1_of_t: f64,
    pub pi1_of_s: f64,
    pub omega_interval: (f64, f64),
    pub one_way_interval: (f64, f64),
    /// `[δ · distortion.lower, δ (1 + ε) · distortion.upper]`.
    pub target_window: (f64, f64),
    /// `distortion.upper / distortion.lower`.
    pub widening: f64,
    /// `(1 + ε) · widening`, the allowed ratio of interval ends.
    pub ratio_limit: f64,
    pub omega_ratio: f64,
    pub one_way_ratio: f64,
    pub identity_holds: bool,
    /// Value of the best sign strategy found by local search.
    pub heuristic_omega: f64,
    pub heuristic_in_omega_interval: bool,
    pub delta_in_omega_interval: bool,
    pub delta_in_one_way_interval: bool,
    pub two_way: TwoWayReport,
}

/// Largest `c` with `2^{2^c} ≤ t`, so that `t` messages cover every `c`-bit
/// two-way protocol.
fn two_way_bits(t: u64) -> u32 {
    let mut c = 0;
    while c < 5 && constructions::t_for_bits(c + 1).is_ok_and(|need| need <= t) {
        c += 1;
    }
    c
}

fn widened_contains(interval: (f64, f64), w: f64, v: f64) -> bool {
    interval.0 / w <= v && v <= interval.1 * w
}

/// Builds the p-stable game and reports its value intervals around `delta`.
pub fn cmd_experiment_bell(a: &BellArgs) -> Result<BellReport> {
    let report = build_levi(&a.target)?;
    let params = report.params;
    let d = report.distortion;
    let widening = d.upper / d.lower;
    let ratio_limit = (1.0 + params.epsilon) * widening;
    let (ol, ou) = report.omega_interval;
    let (wl, wu) = report.one_way_interval;

    let search = SearchParams {
        restarts: a.restarts,
        seed: derive_seed(a.target.seed, 2),
        ..SearchParams::default()
    };
    let n = report.game.n();
    let mut heuristic = search::hill_climb_from(&report.game, vec![1; n], search.max_iters).value;
    heuristic = heuristic.max(search::hill_climb_classical(&report.game, &search)?.value);

    let c = two_way_bits(params.t);
    let sandwich = bounds::two_way_sandwich(
        n,
        c,
        Interval::new(ol, ou),
        Interval::new(wl, wu),
        Some(Interval::new(wl, wu)),
        &Constants::default(),
    )?;
    Ok(BellReport {
        delta: params.delta,
        params,
        rows: report.rows,
        distortion: d,
        pi1_of_t: report.pi1_of_t,
        pi1_of_s: report.pi1_of_s,
        omega_interval: (ol, ou),
        one_way_interval: (wl, wu),
        target_window: (params.delta * d.lower, params.delta * (1.0 + params.epsilon) * d.upper),
        widening,
        ratio_limit,
        omega_ratio: ou / ol,
        one_way_ratio: wu / wl,
        identity_holds: ou / ol <= ratio_limit * (1.0 + CHECK_TOL) && wu / wl <= ratio_limit * (1.0 + CHECK_TOL),
        heuristic_omega: heuristic,
        heuristic_in_omega_interval: ol - CHECK_TOL <= heuristic && heuristic <= ou + CHECK_TOL,
        delta_in_omega_interval: widened_contains((ol, ou), widening, params.delta),
        delta_in_one_way_interval: widened_contains((wl, wu), widening, params.delta),
        two_way: TwoWayReport { c, lower: sandwich.two_way_lower, upper: sandwich.two_way_upper },
    })
}
