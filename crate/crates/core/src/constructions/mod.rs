//! Game generators.

pub mod chevet;
pub mod levi;
pub mod stable;

pub use chevet::{chevet_block_game, chevet_full_game};
pub use levi::{
    distortion_estimate, levi_game, levi_params, stable_embedding, t_for_bits, DistortionReport, EmbeddingSpec,
    LeviGameReport, LeviParams,
};
pub use stable::{empirical_abs_mean, empirical_char_fn, sample_stable, stable_abs_mean};
