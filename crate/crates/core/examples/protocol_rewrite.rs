//! A rectangle strategy from a random two-way protocol tree, rewritten as a
//! one-way protocol that does at least as well.

use xorgame::constructions::chevet_full_game;
use xorgame::exact;
use xorgame::protocol::{self, OneWayProtocol, ProtocolMixture, RectanglePartition};

fn main() -> xorgame::Result<()> {
    let n = 8;
    let game = chevet_full_game(n, 21)?;
    for c in 1..=3 {
        let rect = RectanglePartition::random_tree(n, c, 100 + c as u64);
        let (prot, messages) = protocol::two_way_to_one_way(&game, &rect)?;
        println!(
            "c = {c}: {} rectangles, value {:+.4} -> one-way with {messages} messages (<= 2^2^c = {}), value {:+.4}",
            rect.rects.len(),
            rect.value(&game)?,
            1u64 << (1 << c),
            protocol::protocol_value(&game, &prot)?
        );
    }

    // mixing never beats the best component
    let best = OneWayProtocol::from(&exact::one_way_value(&game, 1)?);
    let random = protocol::random_protocol(n, 2, 1);
    println!("optimal one-bit protocol {:+.4}, random one {:+.4}", protocol::protocol_value(&game, &best)?, protocol::protocol_value(&game, &random)?);
    let mix = ProtocolMixture::new(vec![(0.3, random), (0.7, best)])?;
    let (exact, empirical) = protocol::mixture_value(&game, &mix, 100_000, 3)?;
    println!("shared randomness mixture: exact {exact:+.4}, sampled {empirical:+.4}");
    Ok(())
}
