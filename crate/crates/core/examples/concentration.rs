//! The classical value of random sign games concentrates sharply.

use xorgame::bounds::concentration_bound;
use xorgame::constructions::chevet_full_game;
use xorgame::exact;

fn main() -> xorgame::Result<()> {
    let n = 12;
    let mut omegas = (0..300)
        .map(|s| Ok(exact::classical_value(&chevet_full_game(n, s)?)?.value))
        .collect::<xorgame::Result<Vec<f64>>>()?;
    omegas.sort_by(f64::total_cmp);
    let median = omegas[omegas.len() / 2];
    println!("n = {n}: omega ranges over [{:.4}, {:.4}], median {median:.4}", omegas[0], omegas[omegas.len() - 1]);
    for r in [0.02, 0.05, 0.1, 0.2] {
        let tail = omegas.iter().filter(|w| (*w - median).abs() >= r).count() as f64 / omegas.len() as f64;
        println!("  r = {r:4}: tail {tail:.3}, bound {:.3e}", concentration_bound(n, r));
    }

    let game = chevet_full_game(n, 0)?;
    let base = exact::classical_value(&game)?.value;
    let flipped = exact::classical_value(&game.flip_entry(3, 5)?)?.value;
    println!("flipping one entry moves omega by {:.5} (at most 2/n^2 = {:.5})", (flipped - base).abs(), 2.0 / (n * n) as f64);
    Ok(())
}
