//! A game whose classical and one-way values both sit near a target delta.

use xorgame::constructions::{levi_game, levi_params, t_for_bits};

fn main() -> xorgame::Result<()> {
    let params = levi_params(0.5, t_for_bits(0)?, 0.1)?;
    println!(
        "delta 0.5, t 2, eps 0.1: theta0 {}, m0 {}, k {}, q {}, p {:.6}, k^(1/q) = {}",
        params.theta0,
        params.m0,
        params.k,
        params.q,
        params.p,
        params.pi1_of_s()
    );

    let small = levi_params(0.5, 2, 0.5)?;
    let report = levi_game(&small, 512, 1000, 9)?;
    println!(
        "k = {} on {} rows: distortion [{:.4}, {:.4}], pi1(T) = {:.4}",
        small.k, report.rows, report.distortion.lower, report.distortion.upper, report.pi1_of_t
    );
    println!("omega in [{:.4}, {:.4}]", report.omega_interval.0, report.omega_interval.1);
    println!("one-way value with t = 2 in [{:.4}, {:.4}]", report.one_way_interval.0, report.one_way_interval.1);
    Ok(())
}
