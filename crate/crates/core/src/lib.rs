//! XOR games: classical and one-way communication values, the bounds that
//! relate them, protocol models, heuristics, and game generators.

pub mod bounds;
pub mod cli;
pub mod constructions;
pub mod error;
pub mod exact;
pub mod game;
pub mod protocol;
pub mod search;
pub mod seed;

pub use error::{Error, Result};
pub use game::XorGame;
