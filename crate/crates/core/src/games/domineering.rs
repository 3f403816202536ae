//! Domineering and Misère Domineering. The first player places vertical dominoes.

use super::grid::{bits, Grid};
use crate::engine::{zobrist, GameState, Move, MoveCode, Player, StateHash, Status};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominoState {
    misere: bool,
    grid: Grid,
    occupied: u64,
    to_move: Player,
    hash: u64,
}

impl DominoState {
    pub fn new(misere: bool, width: usize, height: usize) -> DominoState {
        DominoState::with_to_move(misere, width, height, Player::First)
    }

    /// Empty board with `to_move` placing first (Horizontal when `Second`).
    pub fn with_to_move(misere: bool, width: usize, height: usize, to_move: Player) -> DominoState {
        let grid = Grid::new(width, height);
        DominoState { misere, grid, occupied: 0, to_move, hash: zobrist::side(to_move) }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn occupied(&self) -> u64 {
        self.occupied
    }

    /// Lower/left cells of every legal placement for `player`.
    pub fn anchors(&self, player: Player) -> u64 {
        let empty = self.grid.full() & !self.occupied;
        match player {
            Player::First => empty & self.grid.shift_down(empty),
            Player::Second => empty & self.grid.shift_left(empty),
        }
    }

    fn partner(&self, player: Player, anchor: usize) -> usize {
        match player {
            Player::First => anchor + self.grid.width(),
            Player::Second => anchor + 1,
        }
    }
}

impl GameState for DominoState {
    fn to_move(&self) -> Player {
        self.to_move
    }

    fn hash(&self) -> StateHash {
        StateHash(self.hash)
    }

    fn expand(&self, moves: &mut Vec<Move>) -> Status {
        moves.clear();
        let me = self.to_move;
        moves.extend(bits(self.anchors(me)).map(|a| Move::step(a, self.partner(me, a))));
        if moves.is_empty() {
            return Status::Won(if self.misere { me } else { me.opponent() });
        }
        Status::Ongoing
    }

    fn play(&self, mv: Move) -> DominoState {
        let cover = (1u64 << mv.from) | (1u64 << mv.to);
        debug_assert_eq!(self.occupied & cover, 0, "domino on occupied cells");
        let mut next = self.clone();
        next.occupied |= cover;
        // occupancy is colourless; key both cells on the first-player table
        next.hash ^= zobrist::cell(Player::First, mv.from as usize)
            ^ zobrist::cell(Player::First, mv.to as usize)
            ^ zobrist::side(self.to_move)
            ^ zobrist::side(self.to_move.opponent());
        next.to_move = self.to_move.opponent();
        next
    }

    fn move_code(&self, mv: Move) -> MoveCode {
        self.to_move.index() as u32 * 64 + mv.from as u32
    }

    fn code_space(&self) -> usize {
        128
    }

    fn remaining_bound(&self) -> u32 {
        (self.grid.full() & !self.occupied).count_ones() / 2
    }

    fn recompute_hash(&self) -> StateHash {
        StateHash(zobrist::stones(Player::First, self.occupied) ^ zobrist::side(self.to_move))
    }

    /// `#` covered, `.` empty; top row is the highest `y`.
    fn render(&self) -> String {
        let mut out = String::new();
        for y in (0..self.grid.height()).rev() {
            for x in 0..self.grid.width() {
                let covered = self.occupied & (1 << self.grid.index(x, y)) != 0;
                out.push(if covered { '#' } else { '.' });
            }
            out.push('\n');
        }
        out
    }
}
