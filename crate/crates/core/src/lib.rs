//! Solvers for small board games: alpha-beta and PN² searches whose move
//! ordering can be driven by a preliminary Monte Carlo search.

pub mod bench;
pub mod engine;
pub mod error;
pub mod games;
pub mod mcts;
pub mod ordering;
pub mod solvers;

pub use engine::{GameConfig, GameKind, GameState, GameValue, Move, MoveCode, Player, StateHash, Status};
pub use error::{Error, Result};
pub use games::AnyGame;
pub use solvers::{solve, solve_state, Algorithm, Outcome, SolveReport, SolverConfig};
