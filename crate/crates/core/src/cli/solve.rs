use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::bounds::{self, BoundReport, Constants, Interval};
use crate::error::{Error, Result};
use crate::exact::{self, ExactConfig, PartitionCertificate, ValueCertificate};
use crate::game::XorGame;
use crate::protocol::OneWayProtocol;
use crate::search::{self, SearchParams};

use super::args::{Method, SolveArgs};

/// Relaxation restarts are only attempted up to this size.
const RELAXATION_CAP: usize = 512;

#[derive(Clone, Debug, Serialize)]
pub struct Certificates {
    pub classical: ValueCertificate,
    pub one_way: BTreeMap<u32, OneWayProtocol>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SolveReport {
    pub n: usize,
    pub method: Method,
    pub is_exact: bool,
    /// Exact `ω`, or the best value found by search.
    pub omega: f64,
    pub omega_interval: Interval,
    pub one_way: BTreeMap<u32, f64>,
    pub one_way_interval: BTreeMap<u32, Interval>,
    pub two_way_sandwich: BTreeMap<u32, [f64; 2]>,
    pub bounds: BTreeMap<u32, BoundReport>,
    pub certificates: Certificates,
}

impl serde::Serialize for Method {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(match self {
            Method::Auto => "auto",
            Method::Exact => "exact",
            Method::Heuristic => "heuristic",
        })
    }
}

fn default_bits(n: usize) -> Vec<u32> {
    let top = usize::BITS - (n.max(1) - 1).leading_zeros();
    (0..=top).collect()
}

pub fn cmd_solve(args: &SolveArgs) -> Result<SolveReport> {
    let game = XorGame::read(&args.game)?;
    let bits = if args.bits.is_empty() { default_bits(game.n()) } else { args.bits.clone() };
    let cfg = ExactConfig { classical_cap: args.classical_cap, dp_cap: args.dp_cap };
    match args.method {
        Method::Exact => solve_exact(&game, &bits, &cfg),
        Method::Heuristic => solve_heuristic(&game, &bits, args),
        Method::Auto => match solve_exact(&game, &bits, &cfg) {
            Err(e) if e.exit_code() == 3 => solve_heuristic(&game, &bits, args),
            other => other,
        },
    }
}

struct Solved {
    omega: Interval,
    classical: ValueCertificate,
    one_way: Vec<(Interval, PartitionCertificate)>,
    doubled: Vec<Interval>,
}

fn assemble(game: &XorGame, bits: &[u32], method: Method, s: Solved) -> Result<SolveReport> {
    let consts = Constants::default();
    let mut report = SolveReport {
        n: game.n(),
        method,
        is_exact: method == Method::Exact,
        omega: s.classical.value,
        omega_interval: s.omega,
        one_way: BTreeMap::new(),
        one_way_interval: BTreeMap::new(),
        two_way_sandwich: BTreeMap::new(),
        bounds: BTreeMap::new(),
        certificates: Certificates { classical: s.classical, one_way: BTreeMap::new() },
    };
    for ((&c, (interval, cert)), doubled) in bits.iter().zip(s.one_way).zip(s.doubled) {
        let b = bounds::two_way_sandwich(game.n(), c, s.omega, interval, Some(doubled), &consts)?;
        report.one_way.insert(c, cert.value);
        report.one_way_interval.insert(c, interval);
        report.two_way_sandwich.insert(c, [b.two_way_lower, b.two_way_upper]);
        report.bounds.insert(c, b);
        report.certificates.one_way.insert(c, OneWayProtocol::from(&cert));
    }
    Ok(report)
}

fn solve_exact(game: &XorGame, bits: &[u32], cfg: &ExactConfig) -> Result<SolveReport> {
    let classical = exact::classical_value_with(game, cfg)?;
    let all: BTreeSet<u32> = bits.iter().flat_map(|&c| [c, bounds::doubled_bits(c)]).collect();
    let all: Vec<u32> = all.into_iter().collect();
    let certs = exact::one_way_values_with(game, &all, cfg)?;
    let lookup = |c: u32| certs[all.binary_search(&c).expect("requested budget")].clone();
    let one_way = bits
        .iter()
        .map(|&c| {
            let cert = lookup(c);
            (Interval::exact(cert.value), cert)
        })
        .collect();
    let doubled = bits.iter().map(|&c| Interval::exact(lookup(bounds::doubled_bits(c)).value)).collect();
    let omega = Interval::exact(classical.value);
    assemble(game, bits, Method::Exact, Solved { omega, classical, one_way, doubled })
}

fn solve_heuristic(game: &XorGame, bits: &[u32], args: &SolveArgs) -> Result<SolveReport> {
    let seed = args
        .seed
        .ok_or_else(|| Error::InvalidParameter("the heuristic solver is randomized and needs --seed".into()))?;
    let params = SearchParams { restarts: args.restarts, max_iters: args.iters, seed, ..SearchParams::default() };
    params.validate()?;
    let n = game.n();
    let consts = Constants::default();

    let mut candidates = vec![
        search::hill_climb_classical(game, &params)?,
        search::hill_climb_from(game, vec![1; n], args.iters),
    ];
    if n <= RELAXATION_CAP {
        let relax = search::vector_relaxation(game, &params)?;
        let rounded = search::hyperplane_round(game, &relax.alice_vectors, &relax.bob_vectors, 64, seed)?;
        candidates.push(search::hill_climb_from(game, rounded.alice_signs, args.iters));
    }
    let classical = candidates
        .into_iter()
        .reduce(|best, c| if c.value > best.value { c } else { best })
        .expect("candidates are nonempty");
    let upper = bounds::spectral_upper(game).unwrap_or(1.0).max(classical.value);
    let omega = Interval::new(classical.value, upper);

    let mut one_way = Vec::with_capacity(bits.len());
    let mut doubled = Vec::with_capacity(bits.len());
    for &c in bits {
        let mut cert = search::anneal_one_way(game, c, &params)?;
        if cert.value < classical.value {
            // one message and the classical signs are always available
            cert = PartitionCertificate::from_partition(
                game,
                c,
                cert.t,
                vec![0; n],
                classical.alice_signs.clone(),
            );
        }
        let up = bounds::grothendieck_one_way_upper(upper, c, &consts).max(cert.value);
        one_way.push((Interval::new(cert.value, up), cert));
        let d_upper = bounds::grothendieck_one_way_upper(upper, bounds::doubled_bits(c), &consts);
        doubled.push(Interval::new(classical.value, d_upper.max(classical.value)));
    }
    assemble(game, bits, Method::Heuristic, Solved { omega, classical, one_way, doubled })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_budgets_reach_log_n() {
        assert_eq!(default_bits(1), vec![0]);
        assert_eq!(default_bits(2), vec![0, 1]);
        assert_eq!(default_bits(3), vec![0, 1, 2]);
        assert_eq!(default_bits(8), vec![0, 1, 2, 3]);
        assert_eq!(default_bits(9), vec![0, 1, 2, 3, 4]);
    }

    #[test]
    fn chsh_exact() {
        let r = solve_exact(&XorGame::chsh(), &[0, 1], &ExactConfig::default()).unwrap();
        assert_eq!(r.omega, 0.5);
        assert_eq!(r.one_way[&0], 0.5);
        assert_eq!(r.one_way[&1], 1.0);
        assert_eq!(r.two_way_sandwich[&1], [1.0, 1.0]);
        assert!(r.is_exact);
    }
}
