use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};

use gamesolver::bench::{emit_table, parse_suite, run_suite, Job, Oracle, ResultRow, TableFormat, TableOptions};
use gamesolver::mcts::snapshot::{read_snapshot, write_snapshot};
use gamesolver::mcts::{run_mcts, MctsConfig};
use gamesolver::ordering::OrderingOptions;
use gamesolver::solvers::{solve_with_knowledge, Algorithm, SolverConfig, DEFAULT_TT_BITS};
use gamesolver::{with_game, AnyGame, GameConfig, GameKind, GameState};

#[derive(Parser)]
#[command(name = "gamesolver", version, about = "Solve small board games exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve one game instance.
    Solve(SolveArgs),
    /// Run a suite file and print a result table.
    Bench(BenchArgs),
    /// Exhaustive reference value of a small instance.
    Oracle {
        #[command(flatten)]
        game: GameArgs,
        /// Disable memoisation.
        #[arg(long)]
        no_memo: bool,
    },
    /// Run the Monte Carlo phase only and save its knowledge.
    MctsDump {
        #[command(flatten)]
        game: GameArgs,
        #[arg(long, default_value_t = 10_000)]
        playouts: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Args)]
struct GameArgs {
    #[arg(long)]
    game: GameKind,
    #[arg(long)]
    width: usize,
    #[arg(long)]
    height: usize,
    /// Required for Go.
    #[arg(long)]
    komi: Option<f64>,
    /// Go only; defaults to twice the number of points.
    #[arg(long)]
    move_limit: Option<u32>,
}

impl GameArgs {
    fn config(&self) -> Result<GameConfig> {
        let mut c = GameConfig::new(self.game, self.width, self.height);
        c.komi = self.komi;
        c.move_limit = self.move_limit;
        c.validate()?;
        Ok(c)
    }
}

#[derive(Args)]
struct SolveArgs {
    #[command(flatten)]
    game: GameArgs,
    #[arg(long, default_value = "ab-tt-mc")]
    algorithm: Algorithm,
    #[arg(long, default_value_t = 10_000)]
    playouts: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Transposition table of 2^b - 1 entries, 0 disables it.
    #[arg(long, default_value_t = DEFAULT_TT_BITS)]
    tt_bits: u32,
    /// Seconds.
    #[arg(long)]
    time_limit: Option<f64>,
    /// Maximum number of solver moves.
    #[arg(long)]
    node_limit: Option<u64>,
    /// Never let the Atarigo heuristic rank a move above escapes.
    #[arg(long)]
    clamp_heuristic: bool,
    /// Use a snapshot from `mcts-dump` instead of searching.
    #[arg(long)]
    load_mcts: Option<PathBuf>,
    #[arg(long, default_value = "markdown")]
    format: TableFormat,
    /// Print `-` instead of times.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args)]
struct BenchArgs {
    #[arg(long)]
    suite: PathBuf,
    #[arg(long)]
    format: Option<TableFormat>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Concurrent jobs.
    #[arg(long, default_value_t = 1)]
    threads: usize,
    /// Skip jobs with this tag (repeatable).
    #[arg(long = "exclude-tag")]
    exclude_tags: Vec<String>,
    #[arg(long)]
    no_timings: bool,
}

fn time_limit(secs: Option<f64>) -> Result<Option<Duration>> {
    match secs {
        Some(s) if !(s > 0.0 && s.is_finite()) => bail!("time limit must be positive"),
        s => Ok(s.map(Duration::from_secs_f64)),
    }
}

fn solve_cmd(args: SolveArgs) -> Result<bool> {
    let game = args.game.config()?;
    let mut config = SolverConfig::new(args.algorithm);
    config.mcts = MctsConfig { playouts: args.playouts, seed: args.seed, ..MctsConfig::default() };
    config.tt_bits = args.tt_bits;
    config.limits.time = time_limit(args.time_limit)?;
    config.limits.max_moves = args.node_limit;
    config.ordering = OrderingOptions { clamp_heuristic: args.clamp_heuristic };
    if args.tt_bits > 32 {
        bail!("--tt-bits must be at most 32");
    }

    let knowledge = match &args.load_mcts {
        Some(path) => {
            let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
            let k = read_snapshot(&mut BufReader::new(file))?;
            let space = with_game!(&AnyGame::new(&game)?, s => s.code_space());
            if k.policy.code_space() != space {
                bail!("snapshot was made for a different game");
            }
            Some(Arc::new(k))
        }
        None => None,
    };
    let report = solve_with_knowledge(&game, &config, knowledge)?;
    let job = Job { id: "solve".into(), game, solver: config, tags: Vec::new(), expect: None };
    let row = ResultRow::from_report(&job, &report);
    let opts = TableOptions { format: args.format, timings: !args.no_timings };
    print!("{}", emit_table(&[row], &opts));
    Ok(report.value().is_some())
}

fn bench_cmd(args: BenchArgs) -> Result<bool> {
    let text = fs::read_to_string(&args.suite).with_context(|| format!("reading {}", args.suite.display()))?;
    let tags: Vec<&str> = args.exclude_tags.iter().map(String::as_str).collect();
    let suite = parse_suite(&text)?.without_tags(&tags);
    let rows = run_suite(&suite, args.threads);
    let opts = TableOptions { format: args.format.or(suite.format).unwrap_or_default(), timings: !args.no_timings };
    let table = emit_table(&rows, &opts);
    match &args.out {
        Some(path) => fs::write(path, &table).with_context(|| format!("writing {}", path.display()))?,
        None => print!("{table}"),
    }
    for r in rows.iter().filter(|r| !r.is_ok()) {
        eprintln!("job `{}`: {:?} (expected {:?})", r.id, r.result, r.expect);
    }
    Ok(rows.iter().all(ResultRow::is_ok))
}

fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Solve(args) => solve_cmd(args),
        Command::Bench(args) => bench_cmd(args),
        Command::Oracle { game, no_memo } => {
            let g = AnyGame::new(&game.config()?)?;
            let mut oracle = Oracle::new(!no_memo);
            let v = with_game!(&g, s => oracle.value(s));
            let label = match v.get() {
                1 => "Won",
                -1 => "Lost",
                _ => "Draw (move limit)",
            };
            println!("{label} for the first player ({} positions visited)", oracle.nodes);
            Ok(true)
        }
        Command::MctsDump { game, playouts, seed, out } => {
            let g = AnyGame::new(&game.config()?)?;
            let cfg = MctsConfig { playouts, seed, ..MctsConfig::default() };
            let k = with_game!(&g, s => run_mcts(s, &cfg));
            let mut w = BufWriter::new(File::create(&out).with_context(|| format!("creating {}", out.display()))?);
            write_snapshot(&mut w, &k)?;
            w.flush()?;
            println!("{} playouts, {} tree entries written to {}", k.playouts, k.table.len(), out.display());
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::FAILURE,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
