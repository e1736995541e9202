//! XOR game data model.
//!
//! A game on `n` inputs per player is a sign matrix `f` and a probability
//! matrix `pi`. All solvers work on the cost matrix `G = f ∘ pi`, stored dense
//! and row-major: row `x` is Alice's input, column `y` is Bob's.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Tolerance on `|Σ pi − 1|`.
pub const PROB_SUM_TOL: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq)]
pub struct XorGame {
    n: usize,
    f: Vec<i8>,
    // f[x][y] * pi[x][y]; pi is recovered as |cost| since f is a sign.
    cost: Vec<f64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct ValidationReport {
    pub ok: bool,
    pub violations: Vec<(String, String)>,
}

impl ValidationReport {
    fn push(&mut self, field: &str, description: String) {
        self.ok = false;
        self.violations.push((field.to_owned(), description));
    }
}

/// On-disk representation: `{"n": int, "f": [[int]], "pi": [[float]]}`.
#[derive(Debug, Serialize, Deserialize)]
struct GameFile {
    n: usize,
    f: Vec<Vec<i64>>,
    pi: Vec<Vec<f64>>,
}

/// Checks every game invariant without stopping at the first failure.
pub fn validate(f: &[Vec<i64>], pi: &[Vec<f64>]) -> ValidationReport {
    let mut report = ValidationReport { ok: true, violations: Vec::new() };
    let n = f.len();
    if n == 0 {
        report.push("n", "game must have at least one input".into());
    }
    if pi.len() != n {
        report.push("pi", format!("{} rows, expected {n}", pi.len()));
    }
    for (x, row) in f.iter().enumerate() {
        if row.len() != n {
            report.push("f", format!("row {x} has {} entries, expected {n}", row.len()));
        }
        for (y, &v) in row.iter().enumerate() {
            if v != 1 && v != -1 {
                report.push("f", format!("f[{x}][{y}] = {v} is not ±1"));
            }
        }
    }
    let mut total = 0.0;
    for (x, row) in pi.iter().enumerate() {
        if row.len() != n {
            report.push("pi", format!("row {x} has {} entries, expected {n}", row.len()));
        }
        for (y, &p) in row.iter().enumerate() {
            if !(p >= 0.0) || !p.is_finite() {
                report.push("pi", format!("pi[{x}][{y}] = {p} is not a nonnegative real"));
            }
            total += p;
        }
    }
    if (total - 1.0).abs() > PROB_SUM_TOL {
        report.push("pi", format!("entries sum to {total}, expected 1"));
    }
    report
}

/// Builds a validated game from a sign matrix and a probability matrix.
pub fn build_game(f: &[Vec<i64>], pi: &[Vec<f64>]) -> Result<XorGame> {
    let n = f.len();
    if n == 0 {
        return Err(Error::DimensionMismatch("empty sign matrix".into()));
    }
    if pi.len() != n || f.iter().any(|r| r.len() != n) || pi.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch(format!(
            "f and pi must both be {n}x{n} square matrices"
        )));
    }
    for (x, row) in f.iter().enumerate() {
        for (y, &v) in row.iter().enumerate() {
            if v != 1 && v != -1 {
                return Err(Error::NotASign { x, y, value: v });
            }
        }
    }
    let flat_f = f.iter().flatten().map(|&v| v as i8).collect();
    let flat_pi = pi.iter().flatten().copied().collect();
    XorGame::from_flat(n, flat_f, flat_pi)
}

/// Absolute entry sum of an arbitrary square cost matrix.
pub fn pi_1_norm_raw(matrix: &[Vec<f64>]) -> f64 {
    matrix.iter().flatten().map(|v| v.abs()).sum()
}

impl XorGame {
    /// Builds a game from row-major flat buffers.
    pub fn from_flat(n: usize, f: Vec<i8>, pi: Vec<f64>) -> Result<Self> {
        if n == 0 || f.len() != n * n || pi.len() != n * n {
            return Err(Error::DimensionMismatch(format!(
                "expected {} entries, got f: {}, pi: {}",
                n * n,
                f.len(),
                pi.len()
            )));
        }
        if let Some(i) = f.iter().position(|&s| s != 1 && s != -1) {
            return Err(Error::NotASign { x: i / n, y: i % n, value: f[i] as i64 });
        }
        if let Some(i) = pi.iter().position(|&p| !(p >= 0.0) || !p.is_finite()) {
            return Err(Error::NotADistribution(format!(
                "pi[{}][{}] = {} is not a nonnegative real",
                i / n,
                i % n,
                pi[i]
            )));
        }
        let total: f64 = pi.iter().sum();
        if (total - 1.0).abs() > PROB_SUM_TOL {
            return Err(Error::NotADistribution(format!("entries sum to {total}")));
        }
        let cost = f.iter().zip(&pi).map(|(&s, &p)| s as f64 * p).collect();
        Ok(Self { n, f, cost })
    }

    /// The CHSH game: `f = [[1, 1], [1, -1]]` with uniform inputs.
    pub fn chsh() -> Self {
        Self::from_flat(2, vec![1, 1, 1, -1], vec![0.25; 4]).expect("valid game")
    }

    /// Uniform distribution over the given sign matrix.
    pub fn uniform(n: usize, f: Vec<i8>) -> Result<Self> {
        let w = 1.0 / (n * n) as f64;
        Self::from_flat(n, f, vec![w; n * n])
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn sign(&self, x: usize, y: usize) -> i8 {
        self.f[x * self.n + y]
    }

    pub fn prob(&self, x: usize, y: usize) -> f64 {
        self.cost[x * self.n + y].abs()
    }

    pub fn cost(&self, x: usize, y: usize) -> f64 {
        self.cost[x * self.n + y]
    }

    /// Row `x` of the cost matrix.
    pub fn row(&self, x: usize) -> &[f64] {
        &self.cost[x * self.n..(x + 1) * self.n]
    }

    /// The whole cost matrix, row-major.
    pub fn costs(&self) -> &[f64] {
        &self.cost
    }

    pub fn signs(&self) -> &[i8] {
        &self.f
    }

    pub fn sign_matrix(&self) -> Vec<Vec<i64>> {
        self.f.chunks(self.n).map(|r| r.iter().map(|&s| s as i64).collect()).collect()
    }

    pub fn prob_matrix(&self) -> Vec<Vec<f64>> {
        self.cost.chunks(self.n).map(|r| r.iter().map(|v| v.abs()).collect()).collect()
    }

    /// `Σ_y |G[x][y]|`, the sum norm of the image of the basis vector `e_x`.
    pub fn row_norm(&self, x: usize) -> f64 {
        self.row(x).iter().map(|v| v.abs()).sum()
    }

    /// Inputs of Alice that carry probability mass.
    pub fn active_rows(&self) -> Vec<usize> {
        (0..self.n).filter(|&x| self.row(x).iter().any(|&v| v != 0.0)).collect()
    }

    /// `Σ_{x,y} |G[x][y]|`; equal to 1 for every valid game.
    pub fn pi_1_norm(&self) -> f64 {
        self.cost.iter().map(|v| v.abs()).sum()
    }

    /// Returns a copy with `f[x][y]` negated.
    pub fn flip_entry(&self, x: usize, y: usize) -> Result<Self> {
        if x >= self.n || y >= self.n {
            return Err(Error::IndexOutOfRange { x, y, n: self.n });
        }
        let mut out = self.clone();
        let i = x * self.n + y;
        out.f[i] = -out.f[i];
        out.cost[i] = -out.cost[i];
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        let file = GameFile { n: self.n, f: self.sign_matrix(), pi: self.prob_matrix() };
        serde_json::to_string(&file).expect("game serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let file: GameFile = serde_json::from_str(text)?;
        if file.f.len() != file.n {
            return Err(Error::DimensionMismatch(format!(
                "declared n = {} but f has {} rows",
                file.n,
                file.f.len()
            )));
        }
        build_game(&file.f, &file.pi)
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        Self::from_json(&std::fs::read_to_string(path)?)
    }

    pub fn write(&self, path: impl AsRef<Path>) -> Result<()> {
        std::fs::write(path, self.to_json())?;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_game() {
        let g = build_game(&[vec![1]], &[vec![1.0]]).unwrap();
        assert_eq!(g.costs(), &[1.0]);
        assert_eq!(g.pi_1_norm(), 1.0);
    }

    #[test]
    fn chsh_cost_matrix() {
        let g = build_game(&[vec![1, 1], vec![1, -1]], &[vec![0.25; 2], vec![0.25; 2]]).unwrap();
        assert_eq!(g.costs(), &[0.25, 0.25, 0.25, -0.25]);
        assert_eq!(g, XorGame::chsh());
    }

    #[test]
    fn rejects_bad_inputs() {
        let pi = vec![vec![0.225; 2], vec![0.225; 2]];
        assert!(matches!(
            build_game(&[vec![1, 1], vec![1, 1]], &pi),
            Err(Error::NotADistribution(_))
        ));
        let pi = vec![vec![0.25; 2], vec![0.25; 2]];
        assert!(matches!(
            build_game(&[vec![1, 0], vec![1, 1]], &pi),
            Err(Error::NotASign { x: 0, y: 1, value: 0 })
        ));
        assert!(matches!(
            build_game(&[vec![1, 1], vec![1, 1]], &[vec![1.0]]),
            Err(Error::DimensionMismatch(_))
        ));
        let neg = vec![vec![0.5, -0.25], vec![0.5, 0.25]];
        assert!(matches!(
            build_game(&[vec![1, 1], vec![1, 1]], &neg),
            Err(Error::NotADistribution(_))
        ));
    }

    #[test]
    fn validation_report_collects_everything() {
        let r = validate(&[vec![1, 2], vec![1, 1]], &[vec![0.5, 0.5], vec![0.5, 0.5]]);
        assert!(!r.ok);
        assert_eq!(r.violations.len(), 2);
        let ok = validate(&[vec![1]], &[vec![1.0]]);
        assert!(ok.ok && ok.violations.is_empty());
    }

    #[test]
    fn raw_norm_is_absolute_sum() {
        assert_eq!(pi_1_norm_raw(&[vec![1.0, -1.0], vec![1.0, 1.0]]), 4.0);
    }

    #[test]
    fn flip_is_an_involution() {
        let g = XorGame::uniform(3, vec![1; 9]).unwrap();
        let h = g.flip_entry(0, 0).unwrap();
        assert_eq!(h.sign(0, 0), -1);
        assert_eq!(h.signs()[1..], g.signs()[1..]);
        assert_eq!(h.prob_matrix(), g.prob_matrix());
        assert_eq!(h.flip_entry(0, 0).unwrap(), g);
        assert!(matches!(g.flip_entry(3, 0), Err(Error::IndexOutOfRange { .. })));
    }

    #[test]
    fn json_round_trip() {
        let g = XorGame::from_flat(2, vec![1, -1, -1, 1], vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let back = XorGame::from_json(&g.to_json()).unwrap();
        assert_eq!(back, g);
        assert!(XorGame::from_json(r#"{"n":3,"f":[[1]],"pi":[[1.0]]}"#).is_err());
    }
}
