//! Breakthrough and Knightthrough, with their misère variants.
//!
//! The first player starts on the low rows and moves towards `y = height - 1`.

use super::grid::{bits, Grid};
use crate::engine::{zobrist, GameState, Move, MoveCode, Player, StateHash, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PieceKind {
    /// One step forward straight or diagonally; captures diagonally only.
    Pawn,
    /// Forward knight jumps; captures on any destination.
    Knight,
}

const PAWN_STEPS: [(isize, isize); 3] = [(-1, 1), (0, 1), (1, 1)];
const KNIGHT_JUMPS: [(isize, isize); 4] = [(-2, 1), (-1, 2), (1, 2), (2, 1)];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PawnBoard {
    piece: PieceKind,
    misere: bool,
    grid: Grid,
    pieces: [u64; 2],
    to_move: Player,
    decided: Option<Player>,
    hash: u64,
}

impl PawnBoard {
    /// Initial position: two full rows per side (one row when `height < 4`).
    pub fn new(piece: PieceKind, misere: bool, width: usize, height: usize) -> PawnBoard {
        assert!(height >= 2, "pawn games need at least two rows");
        let grid = Grid::new(width, height);
        let rows = if height >= 4 { 2 } else { 1 };
        let mut first = 0;
        let mut second = 0;
        for r in 0..rows {
            first |= grid.row(r);
            second |= grid.row(height - 1 - r);
        }
        PawnBoard::from_pieces(piece, misere, width, height, first, second, Player::First)
    }

    pub fn from_pieces(
        piece: PieceKind,
        misere: bool,
        width: usize,
        height: usize,
        first: u64,
        second: u64,
        to_move: Player,
    ) -> PawnBoard {
        let grid = Grid::new(width, height);
        assert_eq!(first & second, 0);
        assert_eq!((first | second) & !grid.full(), 0);
        let mut b = PawnBoard {
            piece,
            misere,
            grid,
            pieces: [first, second],
            to_move,
            decided: None,
            hash: 0,
        };
        b.hash = b.recompute_hash().0;
        b
    }

    pub fn piece(&self) -> PieceKind {
        self.piece
    }

    pub fn is_misere(&self) -> bool {
        self.misere
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn pieces(&self, player: Player) -> u64 {
        self.pieces[player.index()]
    }

    fn pattern(&self) -> &'static [(isize, isize)] {
        match self.piece {
            PieceKind::Pawn => &PAWN_STEPS,
            PieceKind::Knight => &KNIGHT_JUMPS,
        }
    }

    #[inline]
    fn forward(player: Player) -> isize {
        match player {
            Player::First => 1,
            Player::Second => -1,
        }
    }

    /// Rank counted from `player`'s own back row.
    pub fn relative_rank(&self, player: Player, cell: usize) -> usize {
        let y = cell / self.grid.width();
        match player {
            Player::First => y,
            Player::Second => self.grid.height() - 1 - y,
        }
    }

    pub fn is_far_rank(&self, player: Player, cell: usize) -> bool {
        self.relative_rank(player, cell) == self.grid.height() - 1
    }

    pub fn is_capture(&self, mv: Move) -> bool {
        !mv.is_pass() && self.pieces[self.to_move.opponent().index()] & (1 << mv.to) != 0
    }

    /// Number of `player`'s pieces that could capture on `cell`.
    pub fn attackers(&self, player: Player, cell: usize) -> u32 {
        let (x, y) = self.grid.coords(cell);
        let dir = Self::forward(player);
        let mut count = 0;
        for &(dx, dy) in self.pattern() {
            if self.piece == PieceKind::Pawn && dx == 0 {
                continue;
            }
            let sx = x as isize - dx;
            let sy = y as isize - dy * dir;
            if self.grid.contains(sx, sy) {
                let src = self.grid.index(sx as usize, sy as usize);
                if self.pieces[player.index()] & (1 << src) != 0 {
                    count += 1;
                }
            }
        }
        count
    }

    fn generate(&self, moves: &mut Vec<Move>) {
        let me = self.to_move;
        let own = self.pieces[me.index()];
        let opp = self.pieces[me.opponent().index()];
        let dir = Self::forward(me);
        for from in bits(own) {
            let (x, y) = self.grid.coords(from);
            for &(dx, dy) in self.pattern() {
                let tx = x as isize + dx;
                let ty = y as isize + dy * dir;
                if !self.grid.contains(tx, ty) {
                    continue;
                }
                let to = self.grid.index(tx as usize, ty as usize);
                let bit = 1u64 << to;
                if own & bit != 0 {
                    continue;
                }
                if self.piece == PieceKind::Pawn && dx == 0 && opp & bit != 0 {
                    continue;
                }
                moves.push(Move::step(from, to));
            }
        }
    }
}

impl GameState for PawnBoard {
    fn to_move(&self) -> Player {
        self.to_move
    }

    fn hash(&self) -> StateHash {
        StateHash(self.hash)
    }

    fn expand(&self, moves: &mut Vec<Move>) -> Status {
        moves.clear();
        if let Some(w) = self.decided {
            return Status::Won(w);
        }
        self.generate(moves);
        if moves.is_empty() {
            let me = self.to_move;
            return Status::Won(if self.misere { me } else { me.opponent() });
        }
        Status::Ongoing
    }

    fn play(&self, mv: Move) -> PawnBoard {
        let me = self.to_move;
        let opp = me.opponent();
        let (from, to) = (mv.from as usize, mv.to as usize);
        debug_assert!(self.pieces[me.index()] & (1 << from) != 0, "no piece on {from}");
        debug_assert!(self.pieces[me.index()] & (1 << to) == 0, "own piece on {to}");
        let mut next = self.clone();
        next.pieces[me.index()] ^= (1 << from) | (1 << to);
        next.hash ^= zobrist::cell(me, from) ^ zobrist::cell(me, to);
        if self.pieces[opp.index()] & (1 << to) != 0 {
            next.pieces[opp.index()] &= !(1 << to);
            next.hash ^= zobrist::cell(opp, to);
        }
        next.to_move = opp;
        next.hash ^= zobrist::side(me) ^ zobrist::side(opp);
        if self.is_far_rank(me, to) {
            next.decided = Some(if self.misere { opp } else { me });
        }
        next
    }

    /// Player, from-square, to-square and whether the destination holds an enemy piece.
    fn move_code(&self, mv: Move) -> MoveCode {
        let capture = self.is_capture(mv) as u32;
        ((self.to_move.index() as u32 * 64 + mv.from as u32) * 64 + mv.to as u32) * 2 + capture
    }

    fn code_space(&self) -> usize {
        2 * 64 * 64 * 2
    }

    fn remaining_bound(&self) -> u32 {
        let h = self.grid.height();
        let first: usize = bits(self.pieces[0]).map(|c| h - 1 - c / self.grid.width()).sum();
        let second: usize = bits(self.pieces[1]).map(|c| c / self.grid.width()).sum();
        (first + second) as u32
    }

    fn recompute_hash(&self) -> StateHash {
        StateHash(
            zobrist::stones(Player::First, self.pieces[0])
                ^ zobrist::stones(Player::Second, self.pieces[1])
                ^ zobrist::side(self.to_move),
        )
    }

    /// `x` first player, `o` second player, `.` empty; top row is the highest `y`.
    fn render(&self) -> String {
        let mut out = String::new();
        for y in (0..self.grid.height()).rev() {
            for x in 0..self.grid.width() {
                let bit = 1u64 << self.grid.index(x, y);
                out.push(if self.pieces[0] & bit != 0 {
                    'x'
                } else if self.pieces[1] & bit != 0 {
                    'o'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn at(b: &PawnBoard, x: usize, y: usize) -> usize {
        b.grid().index(x, y)
    }

    #[test]
    fn initial_move_counts() {
        // front-row pawns on 5 files: 2 + 3 + 3 + 3 + 2
        let b = PawnBoard::new(PieceKind::Pawn, false, 5, 5);
        assert_eq!(b.legal_moves().len(), 13);
        let k = PawnBoard::new(PieceKind::Knight, false, 5, 5);
        assert_eq!(k.legal_moves().len(), 22);
    }

    #[test]
    fn pawn_cannot_capture_straight() {
        let probe = PawnBoard::from_pieces(PieceKind::Pawn, false, 3, 3, 1 << 4, 1 << 7, Player::First);
        let moves = probe.legal_moves();
        assert!(!moves.contains(&Move::step(4, 7)));
        assert!(moves.contains(&Move::step(4, 6)));
        assert!(moves.contains(&Move::step(4, 8)));
    }

    #[test]
    fn arrival_decides_the_game() {
        let b = PawnBoard::from_pieces(PieceKind::Pawn, false, 3, 3, 1 << 4, 1 << 0, Player::First);
        let won = b.play(Move::step(4, 7));
        assert_eq!(won.expand(&mut Vec::new()), Status::Won(Player::First));
        let m = PawnBoard::from_pieces(PieceKind::Pawn, true, 3, 3, 1 << 4, 1 << 0, Player::First);
        let lost = m.play(Move::step(4, 7));
        assert_eq!(lost.expand(&mut Vec::new()), Status::Won(Player::Second));
        // second player to move, first player's pawn on second's back rank: +1 for mover in misère
        assert_eq!(lost.evaluate().get(), 1);
    }

    #[test]
    fn blocked_player() {
        // 1-wide board: pawns face each other and neither can move
        let b = PawnBoard::from_pieces(PieceKind::Pawn, false, 1, 3, 1 << 0, 1 << 1, Player::First);
        assert_eq!(b.expand(&mut Vec::new()), Status::Won(Player::Second));
        let m = PawnBoard::from_pieces(PieceKind::Pawn, true, 1, 3, 1 << 0, 1 << 1, Player::First);
        assert_eq!(m.expand(&mut Vec::new()), Status::Won(Player::First));
    }

    #[test]
    fn knight_jumps_and_captures() {
        let k = PawnBoard::from_pieces(PieceKind::Knight, false, 5, 5, 1 << 2, 1 << 13, Player::First);
        let moves = k.legal_moves();
        // (2,0) -> (0,1) (4,1) (1,2) (3,2)
        assert_eq!(moves.len(), 4);
        let k2 = PawnBoard::from_pieces(PieceKind::Knight, false, 5, 5, 1 << 2, 1 << 11, Player::First);
        let cap = Move::step(2, 11);
        assert!(k2.legal_moves().contains(&cap));
        assert!(k2.is_capture(cap));
        assert_eq!(k2.play(cap).pieces(Player::Second), 0);
    }

    #[test]
    fn codes_distinguish_captures() {
        let b = PawnBoard::from_pieces(PieceKind::Pawn, false, 4, 4, 1 << 5, 1 << 10, Player::First);
        let quiet = b.move_code(Move::step(5, 8));
        let capture = b.move_code(Move::step(5, 10));
        assert_ne!(quiet, capture);
        assert_eq!(capture % 2, 1);
        assert!((capture as usize) < b.code_space());
    }

    #[test]
    fn attackers_follow_capture_geometry() {
        let b = PawnBoard::new(PieceKind::Pawn, false, 5, 5);
        // (2,2) is attacked by first-player pawns on (1,1) and (3,1), by second on (1,3),(3,3)
        assert_eq!(b.attackers(Player::First, at(&b, 2, 2)), 2);
        assert_eq!(b.attackers(Player::Second, at(&b, 2, 2)), 2);
        assert_eq!(b.attackers(Player::First, at(&b, 0, 2)), 1);
    }

    #[test]
    fn hash_matches_after_moves() {
        let mut b = PawnBoard::new(PieceKind::Knight, false, 4, 5);
        for _ in 0..6 {
            let moves = b.legal_moves();
            if moves.is_empty() {
                break;
            }
            b = b.play(moves[moves.len() / 2]);
            assert_eq!(b.hash(), b.recompute_hash());
        }
    }

    #[test]
    fn render_diagram() {
        let b = PawnBoard::new(PieceKind::Pawn, false, 3, 3);
        assert_eq!(b.render(), "ooo\n...\nxxx\n");
    }
}
