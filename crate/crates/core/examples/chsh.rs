//! The CHSH game: classical value 1/2, and one bit of one-way communication
//! makes it perfect.

use xorgame::exact;
use xorgame::protocol::{self, OneWayProtocol};
use xorgame::XorGame;

fn main() -> xorgame::Result<()> {
    let game = XorGame::chsh();
    println!("game json: {}", game.to_json());

    let classical = exact::classical_value(&game)?;
    println!("omega = {}  (alice {:?}, bob {:?})", classical.value, classical.alice_signs, classical.bob_signs);
    println!("naive enumeration agrees: {}", protocol::naive_classical(&game)?.value);

    for bits in 0..=1 {
        let cert = exact::one_way_value(&game, bits)?;
        let prot = OneWayProtocol::from(&cert);
        println!(
            "omega_{bits}^1 = {}  protocol {}  (replayed value {})",
            cert.value,
            prot.to_json(),
            protocol::protocol_value(&game, &prot)?
        );
    }
    Ok(())
}
