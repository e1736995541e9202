use std::path::{Path, PathBuf};

use crate::constructions::{self, LeviGameReport};
use crate::error::Result;
use crate::game::XorGame;

use super::args::{GenerateCommand, LeviTarget};
use super::{emit, to_json};

/// What a generate command produced.
#[derive(Debug)]
pub enum GeneratedFiles {
    Game(XorGame),
    Levi { report: LeviGameReport, report_path: PathBuf },
}

impl GeneratedFiles {
    pub fn game(&self) -> &XorGame {
        match self {
            Self::Game(g) => g,
            Self::Levi { report, .. } => &report.game,
        }
    }
}

/// `game.json` becomes `game.report.json`.
pub fn sidecar_path(game: &Path) -> PathBuf {
    let stem = game.file_stem().map_or_else(|| "game".into(), |s| s.to_string_lossy().into_owned());
    game.with_file_name(format!("{stem}.report.json"))
}

pub(crate) fn build_levi(target: &LeviTarget) -> Result<LeviGameReport> {
    let t = match target.t {
        Some(t) => t,
        None => constructions::t_for_bits(target.c)?,
    };
    let params = constructions::levi_params(target.delta, t, target.epsilon)?;
    constructions::levi_game(&params, target.rows, target.samples, target.seed)
}

pub fn cmd_generate(cmd: &GenerateCommand) -> Result<GeneratedFiles> {
    match cmd {
        GenerateCommand::Chevet(a) => {
            let game = constructions::chevet_full_game(a.n, a.seed)?;
            emit(a.out.as_deref(), &game.to_json())?;
            Ok(GeneratedFiles::Game(game))
        }
        GenerateCommand::ChevetBlock(a) => {
            let game = constructions::chevet_block_game(a.n, a.c, a.seed)?;
            emit(a.out.as_deref(), &game.to_json())?;
            Ok(GeneratedFiles::Game(game))
        }
        GenerateCommand::Levi(a) => {
            let report = build_levi(&a.target)?;
            let path = a.report.clone().unwrap_or_else(|| sidecar_path(&a.out));
            report.game.write(&a.out)?;
            std::fs::write(&path, to_json(&report)?)?;
            Ok(GeneratedFiles::Levi { report, report_path: path })
        }
    }
}
