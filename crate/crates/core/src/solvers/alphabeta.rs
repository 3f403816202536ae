//! Depth-limited negamax alpha-beta with a transposition table.
//!
//! Values live on {-1, 0, +1} from the side to move. A result is *exact*
//! when it rests on terminal evaluations only; depth cut-offs and Go move
//! limits produce inexact zeros. Exact results are reported with their true
//! value even when it lies outside the search window, which is what lets the
//! iterative-deepening driver stop early.

use std::time::Instant;

use super::tt::{SolverTable, TtEntry};
use super::{Aborted, SearchLimits};
use crate::engine::{GameValue, Move};
use crate::ordering::{select_next, MoveOrdering, Orderer, Ranked};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Score {
    pub value: i8,
    pub exact: bool,
}

#[derive(Default)]
struct PlyBuffers {
    moves: Vec<Move>,
    ranked: Vec<Ranked>,
}

pub struct AlphaBeta {
    tt: SolverTable,
    orderer: Orderer,
    limits: SearchLimits,
    started: Instant,
    moves_searched: u64,
    buffers: Vec<PlyBuffers>,
}

impl AlphaBeta {
    pub fn new(tt: SolverTable, orderer: Orderer, limits: SearchLimits) -> AlphaBeta {
        AlphaBeta { tt, orderer, limits, started: Instant::now(), moves_searched: 0, buffers: Vec::new() }
    }

    pub fn moves_searched(&self) -> u64 {
        self.moves_searched
    }

    pub fn table(&self) -> &SolverTable {
        &self.tt
    }

    /// Single search to `remaining_bound` plies with the full window.
    pub fn solve<G: MoveOrdering>(&mut self, root: &G) -> Result<GameValue, Aborted> {
        self.started = Instant::now();
        let depth = root.remaining_bound();
        let r = self.search(root, depth, -1, 1, 0)?;
        Ok(settle(r))
    }

    /// Null-window (0, 1) searches at increasing depth until the result is
    /// exact. The last iteration reaches `remaining_bound` and is decisive.
    pub fn solve_iterative<G: MoveOrdering>(&mut self, root: &G) -> Result<GameValue, Aborted> {
        self.started = Instant::now();
        let bound = root.remaining_bound().max(1);
        let mut last = Score { value: 0, exact: false };
        for depth in 1..=bound {
            last = self.search(root, depth, 0, 1, 0)?;
            if last.exact {
                break;
            }
        }
        Ok(settle(last))
    }

    #[inline]
    fn count_move(&mut self) -> Result<(), Aborted> {
        self.moves_searched += 1;
        if self.limits.max_moves.is_some_and(|m| self.moves_searched > m) {
            return Err(Aborted);
        }
        if self.moves_searched & 0xfff == 0 {
            if let Some(t) = self.limits.time {
                if self.started.elapsed() >= t {
                    return Err(Aborted);
                }
            }
        }
        Ok(())
    }

    pub fn search<G: MoveOrdering>(
        &mut self,
        state: &G,
        depth: u32,
        mut alpha: i8,
        beta: i8,
        ply: usize,
    ) -> Result<Score, Aborted> {
        if self.buffers.len() <= ply {
            self.buffers.resize_with(ply + 1, PlyBuffers::default);
        }
        let mut buf = std::mem::take(&mut self.buffers[ply]);
        let status = state.expand(&mut buf.moves);
        if status.is_over() {
            self.buffers[ply] = buf;
            let value = status.value_for(state.to_move()).get();
            return Ok(Score { value, exact: value != 0 });
        }
        if depth == 0 {
            self.buffers[ply] = buf;
            return Ok(Score { value: 0, exact: false });
        }

        let hash = state.hash();
        let full = state.full_key();
        let mut tt_move = None;
        if let Some(e) = self.tt.probe(hash) {
            // exact values are only reused under the same history
            if e.exact && e.full == full {
                let value = e.value;
                self.buffers[ply] = buf;
                return Ok(Score { value, exact: true });
            }
            tt_move = e.best;
        }

        self.orderer.rank(state, &buf.moves, &mut buf.ranked);
        // the table move goes first, the rest follow the ordering scores
        let mut start = 0;
        if let Some(tm) = tt_move {
            if let Some(i) = buf.moves.iter().position(|&m| m == tm) {
                let pos = buf.ranked.iter().position(|r| r.ordinal as usize == i).expect("ranked covers moves");
                buf.ranked.swap(0, pos);
                start = 1;
            }
        }

        let mut all_exact = true;
        let mut best = None;
        let mut result = None;
        for k in 0..buf.moves.len() {
            let ordinal = if k < start { buf.ranked[k].ordinal } else { select_next(&mut buf.ranked, k) };
            let mv = buf.moves[ordinal as usize];
            if best.is_none() {
                best = Some(mv);
            }
            if let Err(e) = self.count_move() {
                self.buffers[ply] = buf;
                return Err(e);
            }
            let child = state.play(mv);
            let r = match self.search(&child, depth - 1, -beta, -alpha, ply + 1) {
                Ok(r) => r,
                Err(e) => {
                    self.buffers[ply] = buf;
                    return Err(e);
                }
            };
            let eval = -r.value;
            all_exact &= r.exact;
            if eval > alpha {
                alpha = eval;
                best = Some(mv);
            }
            if alpha >= beta {
                // a cut on a proven win is itself proven
                let exact = r.exact && eval == 1;
                result = Some(Score { value: if exact { 1 } else { beta }, exact });
                break;
            }
        }
        self.buffers[ply] = buf;

        let score = result.unwrap_or(if all_exact {
            // every reply was a proven win for the opponent
            Score { value: -1, exact: true }
        } else {
            Score { value: alpha, exact: false }
        });
        self.tt.store(TtEntry {
            key: hash.0,
            full,
            value: score.value,
            exact: score.exact,
            best,
            depth: depth.min(u16::MAX as u32) as u16,
        });
        Ok(score)
    }
}

/// Maps a root score to the binary answer: only a proven +1 is a win.
fn settle(score: Score) -> GameValue {
    if score.exact && score.value > 0 {
        GameValue::WIN
    } else {
        GameValue::LOSS
    }
}
