//! p-stable samples and the random embedding of l_p^k into l_1^rows.

use xorgame::constructions::{self, distortion_estimate, stable_embedding};

fn main() -> xorgame::Result<()> {
    for p in [1.2, 1.5, 2.0] {
        let xs = constructions::sample_stable(p, 200_000, 7)?;
        let cf = constructions::empirical_char_fn(&xs, 1.0);
        println!(
            "p = {p}: E cos(X) = {cf:.4} (target {:.4}), E|X| ~ {:.4} (exact {:.4})",
            (-1f64).exp(),
            constructions::empirical_abs_mean(p, 200_000, 20, 7)?,
            constructions::stable_abs_mean(p)?
        );
    }

    println!("distortion of k = 16 embeddings, p = 1.5:");
    for rows in [1024, 4096, 16384] {
        let emb = stable_embedding(16, rows, 1.5, 3)?;
        let d = distortion_estimate(&emb, 1000, 4);
        println!("  rows {rows:5}: [{:.4}, {:.4}] width {:.4}", d.lower, d.upper, d.width());
    }
    Ok(())
}
