//! Local search, annealing and the vector relaxation on a game too large for
//! the exact solvers.

use xorgame::bounds;
use xorgame::constructions::chevet_full_game;
use xorgame::search::{self, SearchParams};

fn main() -> xorgame::Result<()> {
    let game = chevet_full_game(60, 11)?;
    let params = SearchParams::with_seed(5);

    let climb = search::hill_climb_classical(&game, &params)?;
    println!("hill climbing: omega >= {:.5}", climb.value);

    let relax = search::vector_relaxation(&game, &params)?;
    println!("vector relaxation objective: {:.5} after {} sweeps", relax.value, relax.history.len());
    let rounded = search::hyperplane_round(&game, &relax.alice_vectors, &relax.bob_vectors, 64, 1)?;
    let polished = search::hill_climb_from(&game, rounded.alice_signs.clone(), 100);
    println!("rounded {:.5}, polished {:.5}", rounded.value, polished.value);

    let upper = bounds::spectral_upper(&game).unwrap_or(1.0);
    println!("spectral upper bound: {upper:.5}");

    for bits in 1..=3 {
        let cert = search::anneal_one_way(&game, bits, &params)?;
        println!("annealed one-way value, c = {bits}: {:.5}", cert.value);
    }
    Ok(())
}
