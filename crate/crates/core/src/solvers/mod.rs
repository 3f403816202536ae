//! Exact solvers and the front door that wires them to move ordering and the
//! optional Monte Carlo phase.

mod alphabeta;
mod pn2;
mod tt;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;
use std::time::{Duration, Instant};

pub use alphabeta::{AlphaBeta, Score};
pub use pn2::{Pn2, DEFAULT_MAX_NODES, INF};
pub use tt::{SolverTable, TtEntry, DEFAULT_TT_BITS};

use crate::engine::{GameConfig, GameValue};
use crate::error::{Error, Result};
use crate::games::AnyGame;
use crate::mcts::{run_mcts, MctsConfig, MonteCarloKnowledge};
use crate::ordering::{MoveOrdering, Orderer, OrderingMode, OrderingOptions};

/// A search stopped by its move or time limit.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Aborted;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct SearchLimits {
    /// Maximum number of moves played by the solver.
    pub max_moves: Option<u64>,
    pub time: Option<Duration>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    Pn2,
    IdAbTt,
    AbTt,
    IdAbTtMc,
    AbTtMc,
}

impl Algorithm {
    pub const ALL: [Algorithm; 5] =
        [Algorithm::Pn2, Algorithm::IdAbTt, Algorithm::AbTt, Algorithm::IdAbTtMc, Algorithm::AbTtMc];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Pn2 => "pn2",
            Algorithm::IdAbTt => "id-ab-tt",
            Algorithm::AbTt => "ab-tt",
            Algorithm::IdAbTtMc => "id-ab-tt-mc",
            Algorithm::AbTtMc => "ab-tt-mc",
        }
    }

    /// Label used in report tables.
    pub fn label(self) -> &'static str {
        match self {
            Algorithm::Pn2 => "PN²",
            Algorithm::IdAbTt => "ID-αβ-TT",
            Algorithm::AbTt => "αβ-TT",
            Algorithm::IdAbTtMc => "ID-αβ-TT-MC",
            Algorithm::AbTtMc => "αβ-TT-MC",
        }
    }

    pub fn uses_monte_carlo(self) -> bool {
        matches!(self, Algorithm::IdAbTtMc | Algorithm::AbTtMc)
    }

    /// True when the result depends on the seed.
    pub fn is_randomized(self) -> bool {
        self.uses_monte_carlo()
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Algorithm> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::Config(format!("unknown algorithm `{s}`")))
    }
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub algorithm: Algorithm,
    /// Playouts, seed and learning parameters of the Monte Carlo phase.
    pub mcts: MctsConfig,
    pub limits: SearchLimits,
    pub tt_bits: u32,
    pub ordering: OrderingOptions,
    pub pn2_max_nodes: usize,
}

impl SolverConfig {
    pub fn new(algorithm: Algorithm) -> SolverConfig {
        SolverConfig {
            algorithm,
            mcts: MctsConfig::default(),
            limits: SearchLimits::default(),
            tt_bits: DEFAULT_TT_BITS,
            ordering: OrderingOptions::default(),
            pn2_max_nodes: DEFAULT_MAX_NODES,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    Won,
    Lost,
    Unsolved,
}

impl Outcome {
    pub fn from_value(v: GameValue) -> Outcome {
        if v.get() > 0 {
            Outcome::Won
        } else {
            Outcome::Lost
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Won => "Won",
            Outcome::Lost => "Lost",
            Outcome::Unsolved => "Unsolved",
        })
    }
}

#[derive(Clone, Debug)]
pub struct SolveReport {
    pub algorithm: Algorithm,
    /// Won means the player to move at the root forces a win.
    pub outcome: Outcome,
    /// Moves played by the solver, excluding the Monte Carlo phase.
    pub moves_searched: u64,
    pub solver_time: Duration,
    pub mcts_time: Duration,
    pub playouts: u64,
    pub seed: u64,
}

impl SolveReport {
    pub fn value(&self) -> Option<GameValue> {
        match self.outcome {
            Outcome::Won => Some(GameValue::WIN),
            Outcome::Lost => Some(GameValue::LOSS),
            Outcome::Unsolved => None,
        }
    }

    pub fn total_time(&self) -> Duration {
        self.solver_time + self.mcts_time
    }
}

/// Solves `root`. Monte Carlo algorithms run the preliminary search first
/// unless `knowledge` is supplied.
pub fn solve_state<G: MoveOrdering>(
    root: &G,
    config: &SolverConfig,
    knowledge: Option<Arc<MonteCarloKnowledge>>,
) -> SolveReport {
    let mut mcts_time = Duration::ZERO;
    let mut playouts = 0;
    let mode = if config.algorithm.uses_monte_carlo() {
        let k = knowledge.unwrap_or_else(|| {
            let t = Instant::now();
            let k = run_mcts(root, &config.mcts);
            mcts_time = t.elapsed();
            Arc::new(k)
        });
        playouts = k.playouts;
        OrderingMode::MonteCarlo(k)
    } else {
        OrderingMode::Heuristic
    };
    let orderer = Orderer::new(mode, config.ordering);

    let started = Instant::now();
    let (result, moves_searched) = match config.algorithm {
        Algorithm::Pn2 => {
            let mut s = Pn2::new(root, orderer, config.limits);
            s.max_nodes = config.pn2_max_nodes;
            (s.solve(), s.moves_searched())
        }
        alg => {
            let mut s = AlphaBeta::new(SolverTable::with_bits(config.tt_bits), orderer, config.limits);
            let r = match alg {
                Algorithm::IdAbTt | Algorithm::IdAbTtMc => s.solve_iterative(root),
                _ => s.solve(root),
            };
            (r, s.moves_searched())
        }
    };
    SolveReport {
        algorithm: config.algorithm,
        outcome: result.map_or(Outcome::Unsolved, Outcome::from_value),
        moves_searched,
        solver_time: started.elapsed(),
        mcts_time,
        playouts,
        seed: config.mcts.seed,
    }
}

/// Builds the initial position of `game` and solves it.
pub fn solve(game: &GameConfig, config: &SolverConfig) -> Result<SolveReport> {
    solve_with_knowledge(game, config, None)
}

pub fn solve_with_knowledge(
    game: &GameConfig,
    config: &SolverConfig,
    knowledge: Option<Arc<MonteCarloKnowledge>>,
) -> Result<SolveReport> {
    let g = AnyGame::new(game)?;
    Ok(crate::with_game!(&g, s => solve_state(s, config, knowledge)))
}
