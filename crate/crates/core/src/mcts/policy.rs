//! Playout policy learned online: softmax over move-code weights, adapted
//! after every playout towards the moves of the winner.

use rand::Rng;

use crate::engine::{GameState, Move, MoveCode, Player, Status};

/// Weights are clamped to this magnitude before exponentiation.
pub const EXP_CLAMP: f64 = 50.0;

#[inline]
fn gibbs(weight: f64) -> f64 {
    weight.clamp(-EXP_CLAMP, EXP_CLAMP).exp()
}

#[derive(Clone, Debug, PartialEq)]
pub struct PolicyTable {
    weights: Vec<f64>,
    alpha: f64,
}

impl PolicyTable {
    pub fn new(code_space: usize, alpha: f64) -> PolicyTable {
        PolicyTable { weights: vec![0.0; code_space], alpha }
    }

    pub fn from_weights(weights: Vec<f64>, alpha: f64) -> PolicyTable {
        PolicyTable { weights, alpha }
    }

    #[inline]
    pub fn weight(&self, code: MoveCode) -> f64 {
        self.weights[code as usize]
    }

    pub fn set_weight(&mut self, code: MoveCode, w: f64) {
        self.weights[code as usize] = w;
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn code_space(&self) -> usize {
        self.weights.len()
    }

    /// Unnormalised selection probability of a code.
    #[inline]
    pub fn gibbs(&self, code: MoveCode) -> f64 {
        gibbs(self.weights[code as usize])
    }

    /// Samples an index into `codes` with probability proportional to
    /// `exp(weight)`.
    pub fn sample<R: Rng + ?Sized>(&self, codes: &[MoveCode], rng: &mut R) -> usize {
        debug_assert!(!codes.is_empty());
        let z: f64 = codes.iter().map(|&c| self.gibbs(c)).sum();
        let mut r = rng.gen::<f64>() * z;
        for (i, &c) in codes.iter().enumerate() {
            r -= self.gibbs(c);
            if r < 0.0 {
                return i;
            }
        }
        codes.len() - 1
    }

    /// Adapts the policy after one game, replaying `playout` from `board`.
    ///
    /// For every position where the winner was to move, the played code gains
    /// `alpha` and every legal code loses `alpha * exp(w) / z`, with the
    /// probabilities taken from the weights before this call. All updates are
    /// committed together at the end.
    pub fn adapt<G: GameState>(&mut self, winner: Player, board: &G, playout: &[Move]) {
        let mut record = PlayoutRecord::default();
        let mut board = board.clone();
        let mut moves = Vec::new();
        for &mv in playout {
            board.expand(&mut moves);
            let idx = moves.iter().position(|&m| m == mv).expect("playout move must be legal");
            let codes: Vec<MoveCode> = moves.iter().map(|&m| board.move_code(m)).collect();
            record.push(board.to_move(), &codes, idx);
            board = board.play(mv);
        }
        self.adapt_recorded(winner, &record, &mut Vec::new());
    }

    /// Same update as [`PolicyTable::adapt`] over an already recorded game.
    pub fn adapt_recorded(&mut self, winner: Player, record: &PlayoutRecord, deltas: &mut Vec<(MoveCode, f64)>) {
        deltas.clear();
        let alpha = self.alpha;
        for step in 0..record.len() {
            if record.movers[step] != winner {
                continue;
            }
            deltas.push((record.played[step], alpha));
            let legal = record.legal(step);
            let z: f64 = legal.iter().map(|&c| self.gibbs(c)).sum();
            for &c in legal {
                deltas.push((c, -alpha * self.gibbs(c) / z));
            }
        }
        for &(c, d) in deltas.iter() {
            self.weights[c as usize] += d;
        }
    }
}

/// Moves of one game with the legal codes seen at every position.
#[derive(Clone, Debug, Default)]
pub struct PlayoutRecord {
    movers: Vec<Player>,
    played: Vec<MoveCode>,
    offsets: Vec<usize>,
    codes: Vec<MoveCode>,
}

impl PlayoutRecord {
    pub fn clear(&mut self) {
        self.movers.clear();
        self.played.clear();
        self.offsets.clear();
        self.codes.clear();
    }

    pub fn push(&mut self, mover: Player, legal: &[MoveCode], played: usize) {
        self.movers.push(mover);
        self.played.push(legal[played]);
        self.offsets.push(self.codes.len());
        self.codes.extend_from_slice(legal);
    }

    pub fn len(&self) -> usize {
        self.movers.len()
    }

    pub fn is_empty(&self) -> bool {
        self.movers.is_empty()
    }

    pub fn mover(&self, step: usize) -> Player {
        self.movers[step]
    }

    pub fn played(&self, step: usize) -> MoveCode {
        self.played[step]
    }

    pub fn legal(&self, step: usize) -> &[MoveCode] {
        let end = self.offsets.get(step + 1).copied().unwrap_or(self.codes.len());
        &self.codes[self.offsets[step]..end]
    }
}

/// Plays `state` to the end with moves drawn from `policy`.
pub fn playout<G: GameState, R: Rng + ?Sized>(state: &G, policy: &PolicyTable, rng: &mut R) -> (Player, Vec<Move>) {
    let mut state = state.clone();
    let mut moves = Vec::new();
    let mut codes = Vec::new();
    let mut played = Vec::new();
    loop {
        match state.expand(&mut moves) {
            Status::Won(w) => return (w, played),
            Status::Limit => return (state.limit_winner(), played),
            Status::Ongoing => {}
        }
        codes.clear();
        codes.extend(moves.iter().map(|&m| state.move_code(m)));
        let mv = moves[policy.sample(&codes, rng)];
        played.push(mv);
        state = state.play(mv);
    }
}
