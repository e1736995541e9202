//! Exact values next to the closed-form bounds that relate them.

use xorgame::bounds::{self, Constants};
use xorgame::constructions::{chevet_block_game, chevet_full_game};
use xorgame::exact::ExactConfig;

fn main() -> xorgame::Result<()> {
    let consts = Constants::default();
    let cfg = ExactConfig::default();
    for (name, game) in [
        ("random signs, n = 12", chevet_full_game(12, 1)?),
        ("4x4 block in n = 12", chevet_block_game(12, 2, 1)?),
    ] {
        println!("{name}");
        for c in 0..=4 {
            let r = bounds::exact_report(&game, c, &cfg, &consts)?;
            println!(
                "  c = {c}: omega {:.4}  one-way {:.4}  in [floor {:.4}, K_G bound {:.4}]  two-way in [{:.4}, {:.4}]",
                r.omega.lower,
                r.omega_one_way.lower,
                r.one_way_floor,
                r.grothendieck_one_way_upper,
                r.two_way_lower,
                r.two_way_upper
            );
        }
        if let Some(s) = bounds::spectral_upper(&game) {
            println!("  spectral upper bound on omega: {s:.4}");
        }
    }
    Ok(())
}
