//! Game contract shared by every rule engine and solver.
//!
//! Values are negamax-style: a [`GameValue`] is always seen from the player
//! to move. `+1` is a proven win, `-1` a proven loss and `0` an unknown
//! result (depth cutoff, or the Go move limit).

use std::fmt;
use std::ops::Neg;
use std::str::FromStr;
use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Largest number of cells a board may have; every board fits one `u64`.
pub const MAX_CELLS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Player {
    First,
    Second,
}

impl Player {
    #[inline]
    pub fn opponent(self) -> Player {
        match self {
            Player::First => Player::Second,
            Player::Second => Player::First,
        }
    }

    #[inline]
    pub fn index(self) -> usize {
        self as usize
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GameValue(i8);

impl GameValue {
    pub const WIN: GameValue = GameValue(1);
    pub const UNKNOWN: GameValue = GameValue(0);
    pub const LOSS: GameValue = GameValue(-1);

    pub fn new(v: i8) -> GameValue {
        assert!((-1..=1).contains(&v), "game value out of range: {v}");
        GameValue(v)
    }

    #[inline]
    pub fn get(self) -> i8 {
        self.0
    }

    pub fn is_proven(self) -> bool {
        self.0 != 0
    }
}

impl Neg for GameValue {
    type Output = GameValue;

    #[inline]
    fn neg(self) -> GameValue {
        GameValue(-self.0)
    }
}

/// A move payload. Point games use `to` only (`from == to`), pawn games use
/// both squares, Domineering stores the two covered cells.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub from: u8,
    pub to: u8,
}

impl Move {
    pub const PASS: Move = Move { from: u8::MAX, to: u8::MAX };

    #[inline]
    pub fn point(p: usize) -> Move {
        Move { from: p as u8, to: p as u8 }
    }

    #[inline]
    pub fn step(from: usize, to: usize) -> Move {
        Move { from: from as u8, to: to as u8 }
    }

    #[inline]
    pub fn is_pass(self) -> bool {
        self == Move::PASS
    }
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_pass() {
            write!(f, "pass")
        } else if self.from == self.to {
            write!(f, "{}", self.to)
        } else {
            write!(f, "{}-{}", self.from, self.to)
        }
    }
}

/// Feature code of a move, used as an index into the playout policy.
pub type MoveCode = u32;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct StateHash(pub u64);

/// Outcome of inspecting a state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Ongoing,
    /// Game over with a winner.
    Won(Player),
    /// Artificial move limit reached (Go): evaluated as 0.
    Limit,
}

impl Status {
    pub fn is_over(self) -> bool {
        self != Status::Ongoing
    }

    /// Value of this status for `player`.
    pub fn value_for(self, player: Player) -> GameValue {
        match self {
            Status::Won(w) if w == player => GameValue::WIN,
            Status::Won(_) => GameValue::LOSS,
            Status::Ongoing | Status::Limit => GameValue::UNKNOWN,
        }
    }
}

/// The rule-engine contract. States are values: `play` never mutates `self`.
pub trait GameState: Clone + Send + Sync + 'static {
    fn to_move(&self) -> Player;

    /// Transposition key. For Go it ignores the superko history, so two
    /// states with the same key may still differ in their legal moves.
    fn hash(&self) -> StateHash;

    /// Key covering everything that affects the future of the game.
    fn full_key(&self) -> u64 {
        self.hash().0
    }

    /// Clears `moves`, fills it with the legal moves in generation order and
    /// reports whether the game is over. Terminal states leave `moves` empty.
    fn expand(&self, moves: &mut Vec<Move>) -> Status;

    fn play(&self, mv: Move) -> Self;

    fn move_code(&self, mv: Move) -> MoveCode;

    /// Exclusive upper bound of [`GameState::move_code`].
    fn code_space(&self) -> usize;

    /// Upper bound on the number of plies left before the game ends.
    fn remaining_bound(&self) -> u32;

    /// Winner used by playouts that stop on the move limit.
    fn limit_winner(&self) -> Player {
        self.to_move().opponent()
    }

    /// Hash recomputed from the position alone, ignoring incremental state.
    fn recompute_hash(&self) -> StateHash;

    fn render(&self) -> String;

    fn legal_moves(&self) -> Vec<Move> {
        let mut moves = Vec::new();
        self.expand(&mut moves);
        moves
    }

    fn is_terminal(&self) -> bool {
        let mut moves = Vec::new();
        self.expand(&mut moves).is_over()
    }

    /// `±1` for a finished game from the mover's point of view, `0` otherwise.
    fn evaluate(&self) -> GameValue {
        let mut moves = Vec::new();
        self.expand(&mut moves).value_for(self.to_move())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GameKind {
    Atarigo,
    Nogo,
    Go,
    Breakthrough,
    MisereBreakthrough,
    Knightthrough,
    MisereKnightthrough,
    Domineering,
    MisereDomineering,
}

impl GameKind {
    pub const ALL: [GameKind; 9] = [
        GameKind::Atarigo,
        GameKind::Nogo,
        GameKind::Go,
        GameKind::Breakthrough,
        GameKind::MisereBreakthrough,
        GameKind::Knightthrough,
        GameKind::MisereKnightthrough,
        GameKind::Domineering,
        GameKind::MisereDomineering,
    ];

    pub fn name(self) -> &'static str {
        match self {
            GameKind::Atarigo => "atarigo",
            GameKind::Nogo => "nogo",
            GameKind::Go => "go",
            GameKind::Breakthrough => "breakthrough",
            GameKind::MisereBreakthrough => "misere-breakthrough",
            GameKind::Knightthrough => "knightthrough",
            GameKind::MisereKnightthrough => "misere-knightthrough",
            GameKind::Domineering => "domineering",
            GameKind::MisereDomineering => "misere-domineering",
        }
    }

    pub fn title(self) -> &'static str {
        match self {
            GameKind::Atarigo => "Atarigo",
            GameKind::Nogo => "Nogo",
            GameKind::Go => "Go",
            GameKind::Breakthrough => "Breakthrough",
            GameKind::MisereBreakthrough => "Misere Breakthrough",
            GameKind::Knightthrough => "Knightthrough",
            GameKind::MisereKnightthrough => "Misere Knightthrough",
            GameKind::Domineering => "Domineering",
            GameKind::MisereDomineering => "Misere Domineering",
        }
    }

    pub fn is_misere(self) -> bool {
        matches!(
            self,
            GameKind::MisereBreakthrough
                | GameKind::MisereKnightthrough
                | GameKind::MisereDomineering
        )
    }
}

impl fmt::Display for GameKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GameKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<GameKind> {
        let norm = s.trim().to_ascii_lowercase().replace(['_', ' '], "-");
        GameKind::ALL
            .into_iter()
            .find(|k| k.name() == norm || k.name().replace('-', "") == norm)
            .ok_or_else(|| Error::Config(format!("unknown game '{s}'")))
    }
}

/// Board and rule parameters of one game instance.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GameConfig {
    pub kind: GameKind,
    pub width: usize,
    pub height: usize,
    /// Points given to White (Go only). Must be a half-integer.
    pub komi: Option<f64>,
    /// Go only; defaults to twice the number of cells.
    pub move_limit: Option<u32>,
}

impl GameConfig {
    pub fn new(kind: GameKind, width: usize, height: usize) -> GameConfig {
        GameConfig { kind, width, height, komi: None, move_limit: None }
    }

    pub fn go(width: usize, height: usize, komi: f64) -> GameConfig {
        GameConfig { kind: GameKind::Go, width, height, komi: Some(komi), move_limit: None }
    }

    pub fn cells(&self) -> usize {
        self.width * self.height
    }

    pub fn is_misere(&self) -> bool {
        self.kind.is_misere()
    }

    pub fn validate(&self) -> Result<()> {
        if self.width == 0 || self.height == 0 {
            return Err(Error::Config(format!(
                "board {}x{} must be at least 1x1",
                self.width, self.height
            )));
        }
        if self.cells() > MAX_CELLS {
            return Err(Error::Config(format!(
                "board {}x{} exceeds {MAX_CELLS} cells",
                self.width, self.height
            )));
        }
        match (self.kind, self.komi) {
            (GameKind::Go, None) => return Err(Error::Config("Go requires a komi".into())),
            (GameKind::Go, Some(k)) => {
                let twice = k * 2.0;
                if !k.is_finite() || twice.fract() != 0.0 || (twice as i64) % 2 == 0 {
                    return Err(Error::Config(format!("komi {k} must be a half-integer")));
                }
            }
            (_, Some(_)) => {
                return Err(Error::Config(format!("komi is only meaningful for Go, not {}", self.kind)))
            }
            (_, None) => {}
        }
        if self.move_limit.is_some() && self.kind != GameKind::Go {
            return Err(Error::Config("move limit is only meaningful for Go".into()));
        }
        Ok(())
    }
}

impl fmt::Display for GameConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {}x{}", self.kind, self.width, self.height)?;
        if let Some(k) = self.komi {
            write!(f, " komi {k}")?;
        }
        Ok(())
    }
}

// Zobrist keys. Layout: [color][cell], side to move, pass flag, move number.
const KEY_CELLS: usize = 2 * MAX_CELLS;
const KEY_SIDE: usize = KEY_CELLS;
const KEY_PASS: usize = KEY_SIDE + 1;
const KEY_MOVE_NUMBER: usize = KEY_PASS + 1;
const MAX_MOVE_NUMBER: usize = 4 * MAX_CELLS + 1;
const KEY_COUNT: usize = KEY_MOVE_NUMBER + MAX_MOVE_NUMBER;

#[inline]
pub(crate) fn splitmix64(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9E37_79B9_7F4A_7C15);
    x = (x ^ (x >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    x ^ (x >> 31)
}

fn keys() -> &'static [u64; KEY_COUNT] {
    static KEYS: OnceLock<[u64; KEY_COUNT]> = OnceLock::new();
    KEYS.get_or_init(|| {
        let mut keys = [0u64; KEY_COUNT];
        let mut seed = 0x5EED_0F_2019u64;
        for k in keys.iter_mut() {
            seed = splitmix64(seed);
            *k = seed;
        }
        keys
    })
}

pub(crate) mod zobrist {
    use super::*;

    #[inline]
    pub fn cell(player: Player, cell: usize) -> u64 {
        keys()[player.index() * MAX_CELLS + cell]
    }

    #[inline]
    pub fn side(player: Player) -> u64 {
        match player {
            Player::First => 0,
            Player::Second => keys()[KEY_SIDE],
        }
    }

    #[inline]
    pub fn pass() -> u64 {
        keys()[KEY_PASS]
    }

    #[inline]
    pub fn move_number(n: usize) -> u64 {
        keys()[KEY_MOVE_NUMBER + n.min(MAX_MOVE_NUMBER - 1)]
    }

    /// Hash of every stone in `bits` for `player`.
    pub fn stones(player: Player, mut bits: u64) -> u64 {
        let mut h = 0;
        while bits != 0 {
            let c = bits.trailing_zeros() as usize;
            h ^= cell(player, c);
            bits &= bits - 1;
        }
        h
    }
}
