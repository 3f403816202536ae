//! Benchmark harness: suite files, job execution and result tables.

pub mod oracle;
mod suite;
mod table;

use std::panic::{self, AssertUnwindSafe};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::thread;
use std::time::Duration;

pub use oracle::Oracle;
pub use suite::{parse_suite, BenchSuite, Job};
pub use table::{emit_table, TableFormat, TableOptions, CSV_HEADER};

use crate::engine::GameConfig;
use crate::solvers::{solve, Algorithm, Outcome, SolveReport};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RowResult {
    Solved(Outcome),
    /// The job panicked or was misconfigured.
    Failed(String),
}

#[derive(Clone, Debug)]
pub struct ResultRow {
    pub id: String,
    pub game: GameConfig,
    pub algorithm: Algorithm,
    pub result: RowResult,
    pub moves: u64,
    pub solver_time: Duration,
    pub mcts_time: Duration,
    pub playouts: u64,
    pub seed: u64,
    pub expect: Option<Outcome>,
}

impl ResultRow {
    pub fn from_report(job: &Job, report: &SolveReport) -> ResultRow {
        ResultRow {
            id: job.id.clone(),
            game: job.game,
            algorithm: report.algorithm,
            result: RowResult::Solved(report.outcome),
            moves: report.moves_searched,
            solver_time: report.solver_time,
            mcts_time: report.mcts_time,
            playouts: report.playouts,
            seed: report.seed,
            expect: job.expect,
        }
    }

    fn failed(job: &Job, msg: String) -> ResultRow {
        ResultRow {
            id: job.id.clone(),
            game: job.game,
            algorithm: job.solver.algorithm,
            result: RowResult::Failed(msg),
            moves: 0,
            solver_time: Duration::ZERO,
            mcts_time: Duration::ZERO,
            playouts: 0,
            seed: job.solver.mcts.seed,
            expect: job.expect,
        }
    }

    pub fn outcome(&self) -> Option<Outcome> {
        match &self.result {
            RowResult::Solved(o) => Some(*o),
            RowResult::Failed(_) => None,
        }
    }

    pub fn total_time(&self) -> Duration {
        self.solver_time + self.mcts_time
    }

    /// A row is acceptable when it did not fail and, if an expected result is
    /// given, matches it.
    pub fn is_ok(&self) -> bool {
        match (&self.result, self.expect) {
            (RowResult::Failed(_), _) => false,
            (RowResult::Solved(o), Some(e)) => *o == e,
            (RowResult::Solved(_), None) => true,
        }
    }
}

pub fn run_job(job: &Job) -> ResultRow {
    let outcome = panic::catch_unwind(AssertUnwindSafe(|| solve(&job.game, &job.solver)));
    match outcome {
        Ok(Ok(report)) => ResultRow::from_report(job, &report),
        Ok(Err(e)) => ResultRow::failed(job, e.to_string()),
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "solver panicked".into());
            ResultRow::failed(job, msg)
        }
    }
}

/// Runs every job, up to `threads` at a time. Rows come back in suite order.
pub fn run_suite(suite: &BenchSuite, threads: usize) -> Vec<ResultRow> {
    let jobs = &suite.jobs;
    let rows: Mutex<Vec<Option<ResultRow>>> = Mutex::new(vec![None; jobs.len()]);
    let next = AtomicUsize::new(0);
    let workers = threads.clamp(1, jobs.len().max(1));
    thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(job) = jobs.get(i) else { break };
                let row = run_job(job);
                rows.lock().unwrap_or_else(|e| e.into_inner())[i] = Some(row);
            });
        }
    });
    rows.into_inner()
        .unwrap_or_else(|e| e.into_inner())
        .into_iter()
        .map(|r| r.expect("every job produces a row"))
        .collect()
}
