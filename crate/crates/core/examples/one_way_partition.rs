//! One-way values as best partitions of Alice's inputs into message blocks.

use xorgame::constructions::chevet_full_game;
use xorgame::exact;

fn main() -> xorgame::Result<()> {
    let game = chevet_full_game(10, 3)?;
    let table = exact::block_value_table(&game)?;
    println!("block values of a 10x10 random sign game: {} subsets", table.iter().count());
    for mask in [0b1u64, 0b11, 0b111, (1 << 10) - 1] {
        println!("  block {mask:#012b}: {:.6}", table.get(mask).unwrap_or(0.0));
    }

    let bits: Vec<u32> = (0..=4).collect();
    let certs = exact::one_way_values_with(&game, &bits, &exact::ExactConfig::default())?;
    for cert in &certs {
        println!("c = {}  t = {:2}  value = {:.6}  messages = {:?}", cert.bits, cert.t, cert.value, cert.message_map);
    }
    Ok(())
}
