//! Rule engines for the nine supported game variants.

mod domineering;
mod goban;
pub mod grid;
mod pawns;

pub use domineering::DominoState;
pub use goban::{Goban, GobanRules};
pub use pawns::{PawnBoard, PieceKind};

use crate::engine::{GameConfig, GameKind};
use crate::error::{Error, Result};

/// Initial position of any configured game, grouped by engine.
#[derive(Clone, Debug)]
pub enum AnyGame {
    Goban(Goban),
    Pawns(PawnBoard),
    Domino(DominoState),
}

impl AnyGame {
    pub fn new(config: &GameConfig) -> Result<AnyGame> {
        config.validate()?;
        let (w, h) = (config.width, config.height);
        Ok(match config.kind {
            GameKind::Atarigo => AnyGame::Goban(Goban::new(GobanRules::Atarigo, w, h)),
            GameKind::Nogo => AnyGame::Goban(Goban::new(GobanRules::Nogo, w, h)),
            GameKind::Go => {
                let komi = config.komi.expect("validated");
                AnyGame::Goban(Goban::go(w, h, komi, config.move_limit))
            }
            GameKind::Breakthrough
            | GameKind::MisereBreakthrough
            | GameKind::Knightthrough
            | GameKind::MisereKnightthrough => {
                if h < 2 {
                    return Err(Error::Config(format!("{} needs at least two rows", config.kind)));
                }
                let piece = match config.kind {
                    GameKind::Breakthrough | GameKind::MisereBreakthrough => PieceKind::Pawn,
                    _ => PieceKind::Knight,
                };
                AnyGame::Pawns(PawnBoard::new(piece, config.is_misere(), w, h))
            }
            GameKind::Domineering | GameKind::MisereDomineering => {
                AnyGame::Domino(DominoState::new(config.is_misere(), w, h))
            }
        })
    }
}

/// Runs `$body` with `$state` bound to the concrete initial state of `$game`.
#[macro_export]
macro_rules! with_game {
    ($game:expr, $state:ident => $body:expr) => {
        match $game {
            $crate::games::AnyGame::Goban($state) => $body,
            $crate::games::AnyGame::Pawns($state) => $body,
            $crate::games::AnyGame::Domino($state) => $body,
        }
    };
}
