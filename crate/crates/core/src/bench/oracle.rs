//! Reference solver: plain exhaustive negamax with no ordering and no pruning
//! beyond stopping at the first winning move. Independent of the solvers.

use std::collections::HashMap;

use crate::engine::{GameState, GameValue, Move, Status};

pub struct Oracle {
    memo: Option<HashMap<u64, i8>>,
    pub nodes: u64,
}

impl Oracle {
    /// With `memo` the value of each position is cached under its full key,
    /// which for Go includes the superko history.
    pub fn new(memo: bool) -> Oracle {
        Oracle { memo: memo.then(HashMap::new), nodes: 0 }
    }

    /// Game value for the player to move: +1, -1, or 0 when the best either
    /// side can force is a Go move-limit draw.
    pub fn value<G: GameState>(&mut self, state: &G) -> GameValue {
        GameValue::new(self.negamax(state))
    }

    fn negamax<G: GameState>(&mut self, state: &G) -> i8 {
        self.nodes += 1;
        let mut moves: Vec<Move> = Vec::new();
        match state.expand(&mut moves) {
            Status::Ongoing => {}
            s => return s.value_for(state.to_move()).get(),
        }
        let key = state.full_key();
        if let Some(&v) = self.memo.as_ref().and_then(|m| m.get(&key)) {
            return v;
        }
        let mut best = -1;
        for mv in moves {
            best = best.max(-self.negamax(&state.play(mv)));
            if best == 1 {
                break;
            }
        }
        if let Some(m) = self.memo.as_mut() {
            m.insert(key, best);
        }
        best
    }
}
