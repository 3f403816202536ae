//! Move ordering for the solvers. Lower scores are tried first; equal scores
//! keep generation order.

use std::cmp::Ordering;
use std::sync::Arc;

use crate::engine::{splitmix64, GameState, Move, MoveCode};
use crate::games::{DominoState, Goban, GobanRules, PawnBoard, PieceKind};
use crate::mcts::MonteCarloKnowledge;

/// Score of a move with no Monte Carlo evidence and a zero weight.
pub const MC_BASE: f64 = 1_000_000_000.0;

/// A node needs strictly more playouts than this before its move counts are used.
pub const MC_MIN_PLAYOUTS: u32 = 100;

/// Monte Carlo move ordering score of the move with `code` on `board`.
///
/// Starts from the learned weight of the code. If the search table holds the
/// position with more than [`MC_MIN_PLAYOUTS`] playouts, the playout count
/// of a visited legal move with the same code replaces it (the last such move
/// in generation order wins). Returns `1e9 - 1000 * value`.
pub fn order_mc<G: GameState>(board: &G, code: MoveCode, knowledge: &MonteCarloKnowledge) -> f64 {
    let mut ppaf = knowledge.policy.weight(code);
    if let Some(t) = knowledge.table.get(board.hash()) {
        if t.nb_playouts > MC_MIN_PLAYOUTS {
            for (edge, mv) in t.edges.iter().zip(board.legal_moves()) {
                if edge.playouts > 0 && board.move_code(mv) == code {
                    ppaf = edge.playouts as f64;
                }
            }
        }
    }
    MC_BASE - 1000.0 * ppaf
}

/// [`order_mc`] for every legal move at once; `codes` are the codes of the
/// legal moves in generation order.
pub fn order_mc_all<G: GameState>(board: &G, codes: &[MoveCode], knowledge: &MonteCarloKnowledge, out: &mut Vec<f64>) {
    out.clear();
    let entry = knowledge.table.get(board.hash()).filter(|t| t.nb_playouts > MC_MIN_PLAYOUTS);
    for &code in codes {
        let mut ppaf = knowledge.policy.weight(code);
        if let Some(t) = entry {
            for (edge, &c) in t.edges.iter().zip(codes) {
                if edge.playouts > 0 && c == code {
                    ppaf = edge.playouts as f64;
                }
            }
        }
        out.push(MC_BASE - 1000.0 * ppaf);
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct OrderingOptions {
    /// Floor the Atarigo liberty scores at 2 so they never outrank captures.
    pub clamp_heuristic: bool,
}

/// Game-specific ordering rules layered over Monte Carlo ordering.
pub trait MoveOrdering: GameState {
    /// Score of `mv`. `mc` carries the Monte Carlo score when Monte Carlo
    /// ordering is enabled.
    fn order_score(&self, mv: Move, mc: Option<f64>, opts: &OrderingOptions) -> f64;
}

/// Fallback for games without heuristics: Monte Carlo score or generation order.
pub fn order_default(mc: Option<f64>) -> f64 {
    mc.unwrap_or(0.0)
}

impl Goban {
    /// True if `cell` is the last liberty of an own string and playing it
    /// leaves the merged string with at least two liberties.
    pub fn escapes_atari(&self, cell: usize) -> bool {
        let me = self.stones(self.to_move());
        let bit = 1u64 << cell;
        let grid = self.grid();
        let adjacent_own = grid.neighbors(bit) & me;
        if adjacent_own == 0 {
            return false;
        }
        let mut in_atari = false;
        let mut rest = adjacent_own;
        while rest != 0 {
            let s = grid.flood(rest & rest.wrapping_neg(), me);
            rest &= !s;
            if self.liberties(s) == bit {
                in_atari = true;
            }
        }
        if !in_atari {
            return false;
        }
        let merged = grid.flood(bit, me | bit);
        (grid.neighbors(merged) & self.empty() & !bit).count_ones() >= 2
    }

    /// Atarigo ordering: captures, then atari escapes, then liberty pressure
    /// on adjacent opponent strings, else Monte Carlo or `20 - empty neighbours`.
    pub fn order_atarigo(&self, mv: Move, mc: Option<f64>, opts: &OrderingOptions) -> f64 {
        let cell = mv.to as usize;
        let opp = self.stones(self.to_move().opponent());
        let empty_adjacent = self.empty_adjacent(cell) as i32;
        let mut min_order = 361;
        for n in self.grid().adjacent(cell).into_iter().flatten() {
            if opp & (1 << n) != 0 {
                let libs = self.liberties(self.string_at(n)).count_ones() as i32;
                if libs == 1 {
                    return 0.0;
                }
                min_order = min_order.min(libs - 4 * empty_adjacent);
            }
        }
        if self.escapes_atari(cell) {
            return 1.0;
        }
        if min_order == 361 {
            return mc.unwrap_or((20 - empty_adjacent) as f64);
        }
        if opts.clamp_heuristic {
            min_order = min_order.max(2);
        }
        min_order as f64
    }
}

impl MoveOrdering for Goban {
    fn order_score(&self, mv: Move, mc: Option<f64>, opts: &OrderingOptions) -> f64 {
        match self.rules() {
            GobanRules::Atarigo => self.order_atarigo(mv, mc, opts),
            GobanRules::Nogo | GobanRules::Go => order_default(mc),
        }
    }
}

impl PawnBoard {
    /// True if the move reaches the far rank in the normal (non-misère) game.
    pub fn is_winning_move(&self, mv: Move) -> bool {
        !self.is_misere() && self.is_far_rank(self.to_move(), mv.to as usize)
    }

    /// Knightthrough ordering: wins, captures in the mover's first three
    /// ranks, supported advances into the last three ranks, then Monte Carlo
    /// (or 100).
    pub fn order_knightthrough(&self, mv: Move, mc: Option<f64>) -> f64 {
        let me = self.to_move();
        let dest = mv.to as usize;
        if self.is_winning_move(mv) {
            return 0.0;
        }
        let rank = self.relative_rank(me, dest);
        if self.is_capture(mv) && rank < 3 {
            return 1.0;
        }
        if rank + 3 >= self.grid().height() {
            let after = self.play(mv);
            if after.attackers(me, dest) > after.attackers(me.opponent(), dest) {
                return 2.0;
            }
        }
        mc.unwrap_or(100.0)
    }

    /// Breakthrough ordering: wins, then captures of enemy pawns inside the
    /// mover's first three ranks, then Monte Carlo (or 100).
    pub fn order_breakthrough(&self, mv: Move, mc: Option<f64>) -> f64 {
        if self.is_winning_move(mv) {
            return 0.0;
        }
        if self.is_capture(mv) && self.relative_rank(self.to_move(), mv.to as usize) < 3 {
            return 1.0;
        }
        mc.unwrap_or(100.0)
    }
}

impl MoveOrdering for PawnBoard {
    fn order_score(&self, mv: Move, mc: Option<f64>, _opts: &OrderingOptions) -> f64 {
        match (self.is_misere(), self.piece()) {
            (true, _) => order_default(mc),
            (false, PieceKind::Pawn) => self.order_breakthrough(mv, mc),
            (false, PieceKind::Knight) => self.order_knightthrough(mv, mc),
        }
    }
}

impl MoveOrdering for DominoState {
    fn order_score(&self, _mv: Move, mc: Option<f64>, _opts: &OrderingOptions) -> f64 {
        order_default(mc)
    }
}

/// A move's score with its generation index.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Ranked {
    pub score: f64,
    pub ordinal: u16,
}

impl Ranked {
    #[inline]
    fn cmp_key(&self, other: &Ranked) -> Ordering {
        self.score.total_cmp(&other.score).then(self.ordinal.cmp(&other.ordinal))
    }
}

/// Moves the best remaining entry of `ranked[k..]` to position `k` and
/// returns its ordinal. Calling it for `k = 0, 1, ...` yields a stable sort.
pub fn select_next(ranked: &mut [Ranked], k: usize) -> u16 {
    let mut best = k;
    for i in k + 1..ranked.len() {
        if ranked[i].cmp_key(&ranked[best]) == Ordering::Less {
            best = i;
        }
    }
    ranked.swap(k, best);
    ranked[k].ordinal
}

#[derive(Clone, Debug, Default)]
pub enum OrderingMode {
    /// Game heuristics without Monte Carlo information.
    #[default]
    Heuristic,
    MonteCarlo(Arc<MonteCarloKnowledge>),
    /// Pseudo-random but reproducible scores, for testing.
    Random(u64),
}

/// Scores moves at a node for a solver.
#[derive(Clone, Debug, Default)]
pub struct Orderer {
    pub mode: OrderingMode,
    pub options: OrderingOptions,
    codes: Vec<MoveCode>,
    mc: Vec<f64>,
}

impl Orderer {
    pub fn new(mode: OrderingMode, options: OrderingOptions) -> Orderer {
        Orderer { mode, options, codes: Vec::new(), mc: Vec::new() }
    }

    pub fn uses_monte_carlo(&self) -> bool {
        matches!(self.mode, OrderingMode::MonteCarlo(_))
    }

    /// Fills `out` with one [`Ranked`] per move.
    pub fn rank<G: MoveOrdering>(&mut self, state: &G, moves: &[Move], out: &mut Vec<Ranked>) {
        out.clear();
        match &self.mode {
            OrderingMode::Random(seed) => {
                let h = state.hash().0 ^ seed;
                out.extend(moves.iter().enumerate().map(|(i, m)| Ranked {
                    score: (splitmix64(h ^ ((m.from as u64) << 8 | m.to as u64)) >> 11) as f64,
                    ordinal: i as u16,
                }));
            }
            OrderingMode::Heuristic => {
                out.extend(moves.iter().enumerate().map(|(i, &m)| Ranked {
                    score: state.order_score(m, None, &self.options),
                    ordinal: i as u16,
                }));
            }
            OrderingMode::MonteCarlo(k) => {
                self.codes.clear();
                self.codes.extend(moves.iter().map(|&m| state.move_code(m)));
                order_mc_all(state, &self.codes, k, &mut self.mc);
                out.extend(moves.iter().enumerate().map(|(i, &m)| Ranked {
                    score: state.order_score(m, Some(self.mc[i]), &self.options),
                    ordinal: i as u16,
                }));
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::engine::Player;
    use crate::mcts::{EdgeStats, MctsEntry};

    fn goban(rules: GobanRules, w: usize, h: usize, rows: &[&str], to_move: Player) -> Goban {
        let (mut black, mut white) = (0u64, 0u64);
        for (i, row) in rows.iter().enumerate() {
            let y = h - 1 - i;
            for (x, ch) in row.chars().enumerate() {
                let bit = 1u64 << (y * w + x);
                match ch {
                    'X' => black |= bit,
                    'O' => white |= bit,
                    _ => {}
                }
            }
        }
        Goban::new(rules, w, h).from_stones(black, white, to_move)
    }

    fn knowledge_for<G: GameState>(board: &G, total: u32, counts: &[u32], weights: &[(MoveCode, f64)]) -> MonteCarloKnowledge {
        let mut k = MonteCarloKnowledge::empty(board.code_space(), 1.0);
        for &(c, w) in weights {
            k.policy.set_weight(c, w);
        }
        if !counts.is_empty() {
            let edges = board
                .legal_moves()
                .iter()
                .zip(counts)
                .map(|(&m, &p)| EdgeStats { code: board.move_code(m), playouts: p, wins: 0 })
                .collect();
            k.table.insert(board.hash(), MctsEntry { nb_playouts: total, edges, amaf: Vec::new() });
        }
        k
    }

    #[test]
    fn order_mc_without_entry_uses_weight() {
        let b = DominoState::new(false, 3, 3);
        let code = b.move_code(b.legal_moves()[0]);
        let k = knowledge_for(&b, 0, &[], &[]);
        assert_eq!(order_mc(&b, code, &k), 1e9);
        let k = knowledge_for(&b, 0, &[], &[(code, 2.5)]);
        assert_eq!(order_mc(&b, code, &k), 1e9 - 2500.0);
    }

    #[test]
    fn order_mc_table_branch() {
        let b = DominoState::new(false, 3, 3);
        let moves = b.legal_moves();
        let code = b.move_code(moves[1]);
        let k = knowledge_for(&b, 101, &[0, 500, 3], &[(code, 2.5)]);
        assert_eq!(order_mc(&b, code, &k), 1e9 - 500_000.0);
        // at exactly 100 playouts the weight is used
        let k = knowledge_for(&b, 100, &[0, 500, 3], &[(code, 2.5)]);
        assert_eq!(order_mc(&b, code, &k), 1e9 - 2500.0);
        // unvisited move falls back to the weight even with a large table entry
        let c0 = b.move_code(moves[0]);
        let k = knowledge_for(&b, 101, &[0, 500, 3], &[(c0, -1.0)]);
        assert_eq!(order_mc(&b, c0, &k), 1e9 + 1000.0);
    }

    #[test]
    fn batch_matches_single() {
        let b = Goban::new(GobanRules::Nogo, 3, 3).play(Move::point(4));
        let moves = b.legal_moves();
        let counts: Vec<u32> = (0..moves.len() as u32).map(|i| i * 7 % 5).collect();
        let k = knowledge_for(&b, 150, &counts, &[(b.move_code(moves[0]), 0.75)]);
        let codes: Vec<MoveCode> = moves.iter().map(|&m| b.move_code(m)).collect();
        let mut out = Vec::new();
        order_mc_all(&b, &codes, &k, &mut out);
        for (i, &c) in codes.iter().enumerate() {
            assert_eq!(out[i], order_mc(&b, c, &k));
        }
    }

    #[test]
    fn atarigo_capture_scores_zero() {
        // O at (0,0) with a single liberty at (1,0)
        let g = goban(GobanRules::Atarigo, 3, 3, &["...", "X..", "O.."], Player::First);
        assert_eq!(g.order_atarigo(Move::point(1), None, &OrderingOptions::default()), 0.0);
    }

    #[test]
    fn atarigo_quiet_move_uses_empty_neighbours() {
        let g = goban(GobanRules::Atarigo, 3, 3, &["...", "...", "..."], Player::First);
        // edge midpoint (1,0) has 3 empty neighbours
        assert_eq!(g.order_atarigo(Move::point(1), None, &OrderingOptions::default()), 17.0);
        assert_eq!(g.order_atarigo(Move::point(1), Some(123.0), &OrderingOptions::default()), 123.0);
    }

    #[test]
    fn atarigo_liberty_pressure_may_be_negative() {
        // O at centre of 5x5 after X elsewhere: O string has 4 libs; use a 2-liberty string
        // O at (0,2) and (0,1) on a 3x3: libs (0,0),(1,1),(1,2)... build explicitly:
        // 4x4: O at (1,1),(2,1) with X on (1,0),(2,0),(0,1),(3,1) -> libs (1,2),(2,2)
        let g = goban(
            GobanRules::Atarigo,
            4,
            4,
            &["....", "....", "XOOX", ".XX."],
            Player::First,
        );
        let cell = g.grid().index(1, 2);
        // (1,2) neighbours: (1,3) empty, (1,1) O, (0,2) empty, (2,2) empty -> 3 empty
        assert_eq!(g.empty_adjacent(cell), 3);
        let opts = OrderingOptions::default();
        assert_eq!(g.order_atarigo(Move::point(cell), None, &opts), -10.0);
        let clamp = OrderingOptions { clamp_heuristic: true };
        assert_eq!(g.order_atarigo(Move::point(cell), None, &clamp), 2.0);
    }

    #[test]
    fn atarigo_escape_scores_one() {
        // X at (0,0) in atari by O at (0,1); X escapes at (1,0)
        let g = goban(GobanRules::Atarigo, 3, 3, &["...", "O..", "X.."], Player::First);
        assert!(g.escapes_atari(1));
        assert_eq!(g.order_atarigo(Move::point(1), None, &OrderingOptions::default()), 1.0);
    }

    #[test]
    fn knightthrough_rules() {
        let w = 5;
        let idx = |x: usize, y: usize| y * w + x;
        // winning jump onto the far rank
        let b = PawnBoard::from_pieces(PieceKind::Knight, false, 5, 5, 1 << idx(2, 2), 1 << idx(0, 0), Player::First);
        assert_eq!(b.order_knightthrough(Move::step(idx(2, 2), idx(1, 4)), None), 0.0);
        // capture two ranks from the own back row
        let b = PawnBoard::from_pieces(
            PieceKind::Knight,
            false,
            5,
            5,
            1 << idx(1, 0),
            (1 << idx(2, 2)) | (1 << idx(4, 4)),
            Player::First,
        );
        assert_eq!(b.order_knightthrough(Move::step(idx(1, 0), idx(2, 2)), None), 1.0);
        // quiet move from the back rank with no support
        let b = PawnBoard::from_pieces(PieceKind::Knight, false, 6, 6, 1 << 1, 1 << 35, Player::First);
        assert_eq!(b.order_knightthrough(Move::step(1, 6 + 3), None), 100.0);
        assert_eq!(b.order_knightthrough(Move::step(1, 6 + 3), Some(7.0)), 7.0);
    }

    #[test]
    fn breakthrough_rules() {
        let idx = |x: usize, y: usize| y * 4 + x;
        let b = PawnBoard::from_pieces(
            PieceKind::Pawn,
            false,
            4,
            5,
            (1 << idx(1, 3)) | (1 << idx(0, 0)),
            (1 << idx(1, 1)) | (1 << idx(3, 4)),
            Player::First,
        );
        assert_eq!(b.order_breakthrough(Move::step(idx(1, 3), idx(1, 4)), None), 0.0);
        // enemy pawn on (1,1) is one rank from promotion
        assert_eq!(b.order_breakthrough(Move::step(idx(0, 0), idx(1, 1)), None), 1.0);
        assert_eq!(b.order_breakthrough(Move::step(idx(0, 0), idx(0, 1)), None), 100.0);
        assert_eq!(b.order_breakthrough(Move::step(idx(0, 0), idx(0, 1)), Some(9.0)), 9.0);
        let m = PawnBoard::from_pieces(PieceKind::Pawn, true, 4, 5, 1 << idx(1, 3), 1 << idx(3, 4), Player::First);
        assert_eq!(m.order_score(Move::step(idx(1, 3), idx(1, 4)), Some(5.0), &OrderingOptions::default()), 5.0);
    }

    #[test]
    fn nogo_without_mc_keeps_generation_order() {
        let g = Goban::new(GobanRules::Nogo, 3, 3);
        let moves = g.legal_moves();
        let mut orderer = Orderer::default();
        let mut ranked = Vec::new();
        orderer.rank(&g, &moves, &mut ranked);
        for k in 0..ranked.len() {
            assert_eq!(select_next(&mut ranked, k), k as u16);
        }
    }

    #[test]
    fn heuristics_precede_mc_scores() {
        let b = PawnBoard::from_pieces(PieceKind::Knight, false, 5, 5, 1 << 12, 1 << 0, Player::First);
        let moves = b.legal_moves();
        let mut k = MonteCarloKnowledge::empty(b.code_space(), 1.0);
        for &m in &moves {
            k.policy.set_weight(b.move_code(m), 999_000.0);
        }
        let mut orderer = Orderer::new(OrderingMode::MonteCarlo(Arc::new(k)), OrderingOptions::default());
        let mut ranked = Vec::new();
        orderer.rank(&b, &moves, &mut ranked);
        let first = select_next(&mut ranked, 0) as usize;
        assert!(b.is_winning_move(moves[first]));
    }
}
