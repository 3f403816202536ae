//! Preliminary Monte Carlo search: GRAVE selection in the tree, softmax
//! playouts below it, and online adaptation of the playout policy.
//!
//! The resulting [`MonteCarloKnowledge`] (search table plus learned policy) is
//! read-only afterwards and drives the Monte Carlo move ordering of the
//! solvers.

mod policy;
pub mod snapshot;

use std::collections::HashMap;
use std::hash::{BuildHasherDefault, Hasher};

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::engine::{GameState, Move, MoveCode, Player, StateHash, Status};
pub use policy::{playout, PlayoutRecord, PolicyTable, EXP_CLAMP};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MctsConfig {
    pub playouts: u64,
    /// Playouts a node needs before its AMAF statistics are used below it.
    pub grave_ref: u32,
    pub grave_bias: f64,
    /// Policy learning rate.
    pub alpha: f64,
    pub seed: u64,
}

impl Default for MctsConfig {
    fn default() -> MctsConfig {
        MctsConfig { playouts: 10_000, grave_ref: 50, grave_bias: 1e-5, alpha: 1.0, seed: 0 }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct EdgeStats {
    pub code: MoveCode,
    pub playouts: u32,
    pub wins: u32,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct AmafStats {
    pub code: MoveCode,
    pub playouts: u32,
    pub wins: u32,
}

/// Statistics of one tree node. `edges` follow the generation order of the
/// legal moves; wins are counted for the player to move at the node.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct MctsEntry {
    pub nb_playouts: u32,
    pub edges: Vec<EdgeStats>,
    /// Sorted by code.
    pub amaf: Vec<AmafStats>,
}

impl MctsEntry {
    pub fn new(codes: &[MoveCode]) -> MctsEntry {
        MctsEntry {
            nb_playouts: 0,
            edges: codes.iter().map(|&code| EdgeStats { code, ..EdgeStats::default() }).collect(),
            amaf: Vec::new(),
        }
    }

    /// True when the entry was created for exactly these legal codes.
    pub fn matches(&self, codes: &[MoveCode]) -> bool {
        self.edges.len() == codes.len() && self.edges.iter().zip(codes).all(|(e, &c)| e.code == c)
    }

    pub fn amaf(&self, code: MoveCode) -> Option<&AmafStats> {
        self.amaf.binary_search_by_key(&code, |a| a.code).ok().map(|i| &self.amaf[i])
    }

    pub fn record_amaf(&mut self, code: MoveCode, win: bool) {
        let i = match self.amaf.binary_search_by_key(&code, |a| a.code) {
            Ok(i) => i,
            Err(i) => {
                self.amaf.insert(i, AmafStats { code, playouts: 0, wins: 0 });
                i
            }
        };
        self.amaf[i].playouts += 1;
        self.amaf[i].wins += win as u32;
    }
}

/// Zobrist keys are already uniformly distributed.
#[derive(Default)]
pub struct KeyHasher(u64);

impl Hasher for KeyHasher {
    fn finish(&self) -> u64 {
        self.0
    }

    fn write(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 = (self.0 << 8) ^ b as u64;
        }
    }

    fn write_u64(&mut self, n: u64) {
        self.0 = n;
    }
}

type KeyMap<V> = HashMap<u64, V, BuildHasherDefault<KeyHasher>>;

/// Unbounded table of tree nodes keyed by full state hash.
#[derive(Clone, Debug, Default)]
pub struct MctsTable {
    entries: KeyMap<MctsEntry>,
}

impl MctsTable {
    pub fn get(&self, hash: StateHash) -> Option<&MctsEntry> {
        self.entries.get(&hash.0)
    }

    pub fn insert(&mut self, hash: StateHash, entry: MctsEntry) {
        self.entries.insert(hash.0, entry);
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Entries in ascending hash order.
    pub fn sorted(&self) -> Vec<(StateHash, &MctsEntry)> {
        let mut v: Vec<_> = self.entries.iter().map(|(&h, e)| (StateHash(h), e)).collect();
        v.sort_unstable_by_key(|(h, _)| *h);
        v
    }
}

/// Output of [`run_mcts`], consumed by Monte Carlo move ordering.
#[derive(Clone, Debug)]
pub struct MonteCarloKnowledge {
    pub table: MctsTable,
    pub policy: PolicyTable,
    pub playouts: u64,
}

impl MonteCarloKnowledge {
    pub fn empty(code_space: usize, alpha: f64) -> MonteCarloKnowledge {
        MonteCarloKnowledge { table: MctsTable::default(), policy: PolicyTable::new(code_space, alpha), playouts: 0 }
    }
}

/// GRAVE move selection at an expanded node.
///
/// Unvisited moves are tried first, in generation order. Otherwise the move
/// maximising `(1 - b) * mean + b * amaf_mean` is chosen, where the AMAF
/// statistics come from `amaf_source` and
/// `b = amaf_p / (amaf_p + p + bias * amaf_p * p)`.
pub fn select_grave(entry: &MctsEntry, amaf_source: &MctsEntry, bias: f64) -> usize {
    if let Some(i) = entry.edges.iter().position(|e| e.playouts == 0) {
        return i;
    }
    let mut best = 0;
    let mut best_value = f64::NEG_INFINITY;
    for (i, e) in entry.edges.iter().enumerate() {
        let p = e.playouts as f64;
        let mean = e.wins as f64 / p;
        let value = match amaf_source.amaf(e.code) {
            Some(a) if a.playouts > 0 => {
                let ap = a.playouts as f64;
                let beta = ap / (ap + p + bias * ap * p);
                (1.0 - beta) * mean + beta * (a.wins as f64 / ap)
            }
            _ => mean,
        };
        if value > best_value {
            best_value = value;
            best = i;
        }
    }
    best
}

/// One tree node visited by a playout: its key, the chosen edge and the ply
/// at which it occurred in the game record.
#[derive(Clone, Copy, Debug)]
pub struct PathStep {
    pub hash: StateHash,
    pub edge: usize,
    pub ply: usize,
}

/// Updates node counters along `path` and AMAF counters for every code the
/// node's mover played from that ply on.
pub fn backpropagate(table: &mut MctsTable, path: &[PathStep], record: &PlayoutRecord, winner: Player, seen: &mut CodeStamps) {
    for step in path {
        let mover = record.mover(step.ply);
        let win = mover == winner;
        let entry = table.entries.get_mut(&step.hash.0).expect("path node in table");
        entry.nb_playouts += 1;
        let edge = &mut entry.edges[step.edge];
        edge.playouts += 1;
        edge.wins += win as u32;
        seen.next();
        for j in (step.ply..record.len()).filter(|&j| record.mover(j) == mover) {
            let code = record.played(j);
            if seen.first_visit(code) {
                entry.record_amaf(code, win);
            }
        }
    }
}

/// Deduplicates codes within one AMAF update.
#[derive(Clone, Debug, Default)]
pub struct CodeStamps {
    stamps: Vec<u32>,
    current: u32,
}

impl CodeStamps {
    pub fn new(code_space: usize) -> CodeStamps {
        CodeStamps { stamps: vec![0; code_space], current: 0 }
    }

    fn next(&mut self) {
        self.current = self.current.wrapping_add(1);
        if self.current == 0 {
            self.stamps.iter_mut().for_each(|s| *s = 0);
            self.current = 1;
        }
    }

    fn first_visit(&mut self, code: MoveCode) -> bool {
        let s = &mut self.stamps[code as usize];
        if *s == self.current {
            false
        } else {
            *s = self.current;
            true
        }
    }
}

/// Runs exactly `config.playouts` playouts from `root` (none if the root is
/// terminal) and returns the search table with the adapted policy.
pub fn run_mcts<G: GameState>(root: &G, config: &MctsConfig) -> MonteCarloKnowledge {
    let code_space = root.code_space();
    let mut knowledge = MonteCarloKnowledge::empty(code_space, config.alpha);
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let mut moves: Vec<Move> = Vec::new();
    let mut codes: Vec<MoveCode> = Vec::new();
    let mut record = PlayoutRecord::default();
    let mut path: Vec<PathStep> = Vec::new();
    let mut deltas = Vec::new();
    let mut seen = CodeStamps::new(code_space);
    let root_hash = root.hash();

    for _ in 0..config.playouts {
        let mut state = root.clone();
        let mut grave_source = root_hash;
        let mut in_tree = true;
        record.clear();
        path.clear();
        let winner = loop {
            match state.expand(&mut moves) {
                Status::Won(w) => break w,
                Status::Limit => break state.limit_winner(),
                Status::Ongoing => {}
            }
            codes.clear();
            codes.extend(moves.iter().map(|&m| state.move_code(m)));
            let idx = if in_tree {
                let hash = state.hash();
                let table = &mut knowledge.table;
                match table.get(hash) {
                    // a Go key can be shared by states whose superko history differs
                    Some(entry) if !entry.matches(&codes) => {
                        in_tree = false;
                        knowledge.policy.sample(&codes, &mut rng)
                    }
                    Some(entry) => {
                        if entry.nb_playouts >= config.grave_ref {
                            grave_source = hash;
                        }
                        let source = table.get(grave_source).unwrap_or(entry);
                        let idx = select_grave(entry, source, config.grave_bias);
                        path.push(PathStep { hash, edge: idx, ply: record.len() });
                        idx
                    }
                    None => {
                        table.insert(hash, MctsEntry::new(&codes));
                        in_tree = false;
                        let idx = knowledge.policy.sample(&codes, &mut rng);
                        path.push(PathStep { hash, edge: idx, ply: record.len() });
                        idx
                    }
                }
            } else {
                knowledge.policy.sample(&codes, &mut rng)
            };
            record.push(state.to_move(), &codes, idx);
            state = state.play(moves[idx]);
        };
        if record.is_empty() {
            break;
        }
        backpropagate(&mut knowledge.table, &path, &record, winner, &mut seen);
        knowledge.policy.adapt_recorded(winner, &record, &mut deltas);
        knowledge.playouts += 1;
    }
    knowledge
}
