//! Closed-form bounds relating `ω`, `ω_c¹` and `ω_c`.
//!
//! Every bound that limits a game value is clipped to `[0, 1]`: games are
//! normalized so the total mass, and hence every value, is at most one.


use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exact::{self, ExactConfig};
use crate::game::XorGame;

/// Krivine's upper bound `π / (2 ln(1 + √2))` on the Grothendieck constant.
pub const KRIVINE: f64 = 1.782_213_978_191_369_3;

/// Constant of the Bernoulli form of Chevet's inequality.
pub const CHEVET_B: f64 = 1.253_314_137_315_500_3;

/// Slack between two bounds that still counts as consistent.
pub const CONSISTENCY_TOL: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Constants {
    pub k_g: f64,
    pub chevet_b: f64,
}

impl Default for Constants {
    fn default() -> Self {
        Self { k_g: KRIVINE, chevet_b: CHEVET_B }
    }
}

impl Constants {
    pub fn new(k_g: f64, chevet_b: f64) -> Result<Self> {
        if !(k_g >= 1.0) || !(chevet_b > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "constants need k_g ≥ 1 and chevet_b > 0, got {k_g}, {chevet_b}"
            )));
        }
        Ok(Self { k_g, chevet_b })
    }
}

/// A value known to lie in `[lower, upper]`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub lower: f64,
    pub upper: f64,
}

impl Interval {
    pub fn exact(v: f64) -> Self {
        Self { lower: v, upper: v }
    }

    pub fn new(lower: f64, upper: f64) -> Self {
        Self { lower, upper }
    }

    pub fn is_exact(&self) -> bool {
        self.lower == self.upper
    }

    pub fn contains(&self, v: f64) -> bool {
        self.lower <= v && v <= self.upper
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BoundReport {
    pub c: u32,
    pub omega: Interval,
    pub omega_one_way: Interval,
    pub discrepancy_upper: f64,
    pub grothendieck_one_way_upper: f64,
    pub one_way_floor: f64,
    pub two_way_lower: f64,
    pub two_way_upper: f64,
    /// Whether `2^c` divides `n`.
    pub block_size_exact: bool,
    pub constants: Constants,
}

fn pow2(c: u32, half: bool) -> f64 {
    let e = c as f64;
    2f64.powf(if half { e / 2.0 } else { e })
}

fn clipped_product(value: f64, factor: f64) -> f64 {
    if value == 0.0 {
        0.0
    } else {
        (value * factor).clamp(0.0, 1.0)
    }
}

/// `min(2^c · ω, 1)`.
pub fn discrepancy_upper(omega: f64, c: u32) -> f64 {
    clipped_product(omega, pow2(c, false))
}

/// `min(K_G · 2^{c/2} · ω, 1)`.
pub fn grothendieck_one_way_upper(omega: f64, c: u32, consts: &Constants) -> f64 {
    clipped_product(omega, consts.k_g * pow2(c, true))
}

pub fn block_size_exact(n: usize, c: u32) -> bool {
    c < usize::BITS && n.is_multiple_of(1usize << c)
}

/// Lower bound on `ω_c¹` valid for every game on `n` inputs:
/// `2^{c/2} / (K_G √n)`, halved when `2^c` does not divide `n`.
pub fn one_way_floor(n: usize, c: u32, consts: &Constants) -> f64 {
    let base = pow2(c, true) / (consts.k_g * (n as f64).sqrt());
    let floor = if block_size_exact(n, c) { base } else { base / 2.0 };
    floor.min(1.0)
}

/// Expected raw bilinear maximum of an `n × n` random sign matrix is at most
/// `2 b n^{3/2}`.
pub fn chevet_mean_bound(n: usize, consts: &Constants) -> f64 {
    2.0 * consts.chevet_b * (n as f64).powf(1.5)
}

/// `2 exp(−n² r² / 2)`.
pub fn concentration_bound(n: usize, r: f64) -> f64 {
    let n = n as f64;
    2.0 * (-(n * n * r * r) / 2.0).exp()
}

/// Sandwich for the two-way value `ω_c`.
///
/// The lower end is the one-way value with the same budget. The upper end
/// takes the best of the trivial bound 1, `2^c · ω_c¹`, the discrepancy bound
/// `2^c · ω`, and (when supplied) the one-way value with `2^c` bits, which
/// dominates because each of Alice's inputs induces one of at most
/// `2^{2^c}` answer rows.
pub fn two_way_sandwich(
    n: usize,
    c: u32,
    omega: Interval,
    one_way: Interval,
    one_way_doubled: Option<Interval>,
    consts: &Constants,
) -> Result<BoundReport> {
    let mut upper = 1f64
        .min(clipped_product(one_way.upper, pow2(c, false)))
        .min(discrepancy_upper(omega.upper, c));
    if let Some(d) = one_way_doubled {
        upper = upper.min(d.upper);
    }
    let lower = one_way.lower.max(omega.lower);
    if lower > upper + CONSISTENCY_TOL {
        return Err(Error::InconsistentInputs { lower, upper });
    }
    Ok(BoundReport {
        c,
        omega,
        omega_one_way: one_way,
        discrepancy_upper: discrepancy_upper(omega.upper, c),
        grothendieck_one_way_upper: grothendieck_one_way_upper(omega.upper, c, consts),
        one_way_floor: one_way_floor(n, c, consts),
        two_way_lower: lower,
        // exact inputs can disagree in the last ulp
        two_way_upper: upper.max(lower),
        block_size_exact: block_size_exact(n, c),
        constants: *consts,
    })
}

/// Bit budget `2^c`, saturating.
pub fn doubled_bits(c: u32) -> u32 {
    if c >= 31 {
        u32::MAX
    } else {
        1 << c
    }
}

/// Full report from the exact solvers.
pub fn exact_report(game: &XorGame, c: u32, cfg: &ExactConfig, consts: &Constants) -> Result<BoundReport> {
    let omega = exact::classical_value_with(game, cfg)?.value;
    let values = exact::one_way_values_with(game, &[c, doubled_bits(c)], cfg)?;
    two_way_sandwich(
        game.n(),
        c,
        Interval::exact(omega),
        Interval::exact(values[0].value),
        Some(Interval::exact(values[1].value)),
        consts,
    )
}

/// Largest `n` for which [`spectral_upper`] runs a dense SVD.
pub const SPECTRAL_CAP: usize = 1024;

/// `ω ≤ n · σ_max(G)`, since sign vectors have Euclidean norm `√n`.
/// A relative slack of `1e-9` covers rounding in the SVD.
pub fn spectral_upper(game: &XorGame) -> Option<f64> {
    let n = game.n();
    if n > SPECTRAL_CAP {
        return None;
    }
    let m = nalgebra::DMatrix::from_row_slice(n, n, game.costs());
    let sigma = m.singular_values().max();
    Some((n as f64 * sigma * (1.0 + 1e-9)).min(1.0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    const K: Constants = Constants { k_g: KRIVINE, chevet_b: CHEVET_B };

    #[test]
    fn constants() {
        assert!((KRIVINE - PI / (2.0 * 2f64.sqrt().ln_1p())).abs() < 1e-15);
        assert!((CHEVET_B - (PI / 2.0).sqrt()).abs() < 1e-15);
        assert!(Constants::new(0.5, 1.0).is_err());
    }

    #[test]
    fn discrepancy() {
        assert_eq!(discrepancy_upper(0.5, 0), 0.5);
        assert_eq!(discrepancy_upper(0.5, 1), 1.0);
        assert!((discrepancy_upper(1.0 / 9.0, 2) - 4.0 / 9.0).abs() < 1e-15);
        assert_eq!(discrepancy_upper(0.0, 5000), 0.0);
    }

    #[test]
    fn grothendieck_upper() {
        assert_eq!(grothendieck_one_way_upper(0.5, 1, &K), 1.0);
        assert!((grothendieck_one_way_upper(0.1, 0, &K) - 0.178_221).abs() < 1e-6);
        assert_eq!(grothendieck_one_way_upper(0.0, 7, &K), 0.0);
    }

    #[test]
    fn floors() {
        assert!((one_way_floor(2, 0, &K) - 0.396_75).abs() < 1e-5);
        assert!((one_way_floor(2, 1, &K) - 0.561_10).abs() < 1e-5);
        assert!((one_way_floor(3, 1, &K) - 0.229_07).abs() < 1e-5);
        assert!(!block_size_exact(3, 1));
        assert!(block_size_exact(12, 2));
    }

    #[test]
    fn sandwiches() {
        let chsh = XorGame::chsh();
        let r = exact_report(&chsh, 1, &ExactConfig::default(), &K).unwrap();
        assert_eq!((r.two_way_lower, r.two_way_upper), (1.0, 1.0));
        let g = XorGame::uniform(3, vec![1, -1, -1, -1, 1, -1, -1, -1, 1]).unwrap();
        let r = exact_report(&g, 1, &ExactConfig::default(), &K).unwrap();
        assert!((r.two_way_lower - 7.0 / 9.0).abs() < 1e-15);
        assert_eq!(r.two_way_upper, 1.0);
        let r = exact_report(&g, 0, &ExactConfig::default(), &K).unwrap();
        assert_eq!(r.two_way_lower, r.two_way_upper);
        assert!((r.two_way_lower - 5.0 / 9.0).abs() < 1e-15);
        let bad = two_way_sandwich(3, 1, Interval::exact(0.1), Interval::exact(0.9), None, &K);
        assert!(matches!(bad, Err(Error::InconsistentInputs { .. })));
    }

    #[test]
    fn spectral_bound_dominates() {
        let g = XorGame::uniform(3, vec![1, -1, -1, -1, 1, -1, -1, -1, 1]).unwrap();
        let s = spectral_upper(&g).unwrap();
        assert!(s >= 5.0 / 9.0);
        assert!((concentration_bound(16, 0.3) - 2.0 * (-11.52f64).exp()).abs() < 1e-12);
        assert!((chevet_mean_bound(16, &K) - 160.42).abs() < 0.01);
    }
}
