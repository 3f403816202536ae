//! Suite files: blocks of `key = value` lines separated by blank lines.
//! `#` starts a comment. A block holding only `format` sets the suite's
//! output format.
//!
//! ```text
//! id = go-3x3
//! game = go
//! width = 3
//! height = 3
//! komi = 8.5
//! algorithm = ab-tt-mc
//! playouts = 10000
//! seed = 1
//! expect = Won
//! ```
//!
//! Other keys: `move-limit`, `time-limit` (seconds), `node-limit`, `tt-bits`,
//! `clamp-heuristic` (`true`/`false`) and `tags` (comma separated).

use std::collections::HashSet;
use std::time::Duration;

use super::table::TableFormat;
use crate::engine::{GameConfig, GameKind};
use crate::error::{Error, Result};
use crate::solvers::{Algorithm, Outcome, SolverConfig};

#[derive(Clone, Debug)]
pub struct Job {
    pub id: String,
    pub game: GameConfig,
    pub solver: SolverConfig,
    pub tags: Vec<String>,
    pub expect: Option<Outcome>,
}

impl Job {
    pub fn has_tag(&self, tag: &str) -> bool {
        self.tags.iter().any(|t| t == tag)
    }
}

#[derive(Clone, Debug, Default)]
pub struct BenchSuite {
    pub jobs: Vec<Job>,
    pub format: Option<TableFormat>,
}

impl BenchSuite {
    /// Drops the jobs carrying any of `tags`.
    pub fn without_tags(mut self, tags: &[&str]) -> BenchSuite {
        self.jobs.retain(|j| !tags.iter().any(|t| j.has_tag(t)));
        self
    }
}

fn err(line: usize, msg: impl Into<String>) -> Error {
    Error::Suite { line, msg: msg.into() }
}

fn parse_num<T: std::str::FromStr>(line: usize, key: &str, v: &str) -> Result<T> {
    v.parse().map_err(|_| err(line, format!("invalid {key} `{v}`")))
}

fn positive<T: std::str::FromStr + PartialOrd + Default>(line: usize, key: &str, v: &str) -> Result<T> {
    let n: T = parse_num(line, key, v)?;
    if n <= T::default() {
        return Err(err(line, format!("{key} must be positive")));
    }
    Ok(n)
}

fn build_job(block: &[(usize, String, String)]) -> Result<Job> {
    let first_line = block[0].0;
    let mut seen = HashSet::new();
    let mut id = None;
    let mut kind = None;
    let (mut width, mut height) = (None, None);
    let mut komi = None;
    let mut move_limit = None;
    let mut algorithm = None;
    let mut solver = SolverConfig::new(Algorithm::AbTt);
    let mut tags = Vec::new();
    let mut expect = None;
    for (line, key, value) in block {
        let (line, v) = (*line, value.as_str());
        if !seen.insert(key.as_str()) {
            return Err(err(line, format!("duplicate key `{key}`")));
        }
        match key.as_str() {
            "id" => id = Some(v.to_string()),
            "game" => kind = Some(v.parse::<GameKind>().map_err(|e| err(line, e.to_string()))?),
            "width" => width = Some(positive::<usize>(line, key, v)?),
            "height" => height = Some(positive::<usize>(line, key, v)?),
            "komi" => komi = Some(parse_num::<f64>(line, key, v)?),
            "move-limit" => move_limit = Some(positive::<u32>(line, key, v)?),
            "algorithm" => algorithm = Some(v.parse::<Algorithm>().map_err(|e| err(line, e.to_string()))?),
            "playouts" => solver.mcts.playouts = parse_num(line, key, v)?,
            "seed" => solver.mcts.seed = parse_num(line, key, v)?,
            "time-limit" => {
                solver.limits.time = Some(Duration::from_secs_f64(positive::<f64>(line, key, v)?));
            }
            "node-limit" => solver.limits.max_moves = Some(positive::<u64>(line, key, v)?),
            "tt-bits" => {
                let b: u32 = parse_num(line, key, v)?;
                if b > 32 {
                    return Err(err(line, "tt-bits must be at most 32"));
                }
                solver.tt_bits = b;
            }
            "clamp-heuristic" => {
                solver.ordering.clamp_heuristic = match v {
                    "true" => true,
                    "false" => false,
                    _ => return Err(err(line, format!("clamp-heuristic must be true or false, not `{v}`"))),
                }
            }
            "tags" => tags = v.split(',').map(|t| t.trim().to_string()).filter(|t| !t.is_empty()).collect(),
            "expect" => {
                expect = Some(match v {
                    "Won" | "won" => Outcome::Won,
                    "Lost" | "lost" => Outcome::Lost,
                    _ => return Err(err(line, format!("expect must be Won or Lost, not `{v}`"))),
                })
            }
            other => return Err(err(line, format!("unknown key `{other}`"))),
        }
    }
    let missing = |k: &str| err(first_line, format!("job is missing `{k}`"));
    let id = id.ok_or_else(|| missing("id"))?;
    let mut game = GameConfig::new(kind.ok_or_else(|| missing("game"))?, width.ok_or_else(|| missing("width"))?, height.ok_or_else(|| missing("height"))?);
    game.komi = komi;
    game.move_limit = move_limit;
    game.validate().map_err(|e| err(first_line, format!("job `{id}`: {e}")))?;
    solver.algorithm = algorithm.ok_or_else(|| missing("algorithm"))?;
    Ok(Job { id, game, solver, tags, expect })
}

pub fn parse_suite(text: &str) -> Result<BenchSuite> {
    let mut blocks: Vec<Vec<(usize, String, String)>> = vec![Vec::new()];
    for (n, raw) in text.lines().enumerate() {
        let line = n + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if raw.trim().is_empty() {
            if !blocks.last().unwrap().is_empty() {
                blocks.push(Vec::new());
            }
            continue;
        }
        if content.is_empty() {
            continue;
        }
        let (k, v) = content.split_once('=').ok_or_else(|| err(line, format!("expected key = value, got `{content}`")))?;
        blocks.last_mut().unwrap().push((line, k.trim().to_string(), v.trim().to_string()));
    }

    let mut suite = BenchSuite::default();
    let mut ids = HashSet::new();
    for block in blocks.into_iter().filter(|b| !b.is_empty()) {
        if block.len() == 1 && block[0].1 == "format" {
            suite.format = Some(block[0].2.parse().map_err(|e: Error| err(block[0].0, e.to_string()))?);
            continue;
        }
        let job = build_job(&block)?;
        if !ids.insert(job.id.clone()) {
            return Err(err(block[0].0, format!("duplicate job id `{}`", job.id)));
        }
        suite.jobs.push(job);
    }
    Ok(suite)
}

#[cfg(test)]
mod tests {
    use super::*;

    const SAMPLE: &str = "\
# two jobs
format = markdown

id = a
game = nogo
width = 3
height = 2
algorithm = pn2
expect = Won

id = b   # trailing comment
game = go
width = 3
height = 3
komi = 8.5
algorithm = ab-tt-mc
playouts = 500
seed = 7
node-limit = 1000
time-limit = 2.5
tt-bits = 16
tags = overnight, slow
clamp-heuristic = true
";

    #[test]
    fn parses_sample() {
        let s = parse_suite(SAMPLE).unwrap();
        assert_eq!(s.format, Some(TableFormat::Markdown));
        assert_eq!(s.jobs.len(), 2);
        let b = &s.jobs[1];
        assert_eq!(b.id, "b");
        assert_eq!(b.game.komi, Some(8.5));
        assert_eq!(b.solver.algorithm, Algorithm::AbTtMc);
        assert!(b.solver.ordering.clamp_heuristic);
        assert!(!s.jobs[0].solver.ordering.clamp_heuristic);
        assert_eq!(b.solver.mcts.playouts, 500);
        assert_eq!(b.solver.mcts.seed, 7);
        assert_eq!(b.solver.limits.max_moves, Some(1000));
        assert_eq!(b.solver.limits.time, Some(Duration::from_millis(2500)));
        assert_eq!(b.solver.tt_bits, 16);
        assert!(b.has_tag("overnight"));
        assert_eq!(s.jobs[0].expect, Some(Outcome::Won));
        assert_eq!(s.without_tags(&["overnight"]).jobs.len(), 1);
    }

    #[test]
    fn empty_suite_has_no_jobs() {
        assert!(parse_suite("").unwrap().jobs.is_empty());
        assert!(parse_suite("# nothing\n\n").unwrap().jobs.is_empty());
    }

    #[test]
    fn rejects_bad_input() {
        let base = "id = x\ngame = nogo\nwidth = 2\nheight = 2\nalgorithm = pn2\n";
        assert!(parse_suite(base).is_ok());
        assert!(parse_suite(&format!("{base}\n{base}")).is_err(), "duplicate id");
        assert!(parse_suite(&base.replace("pn2", "dfpn")).is_err());
        assert!(parse_suite(&base.replace("width = 2", "width = 0")).is_err());
        assert!(parse_suite(&format!("{base}colour = red\n")).is_err());
        assert!(parse_suite(&format!("{base}time-limit = -1\n")).is_err());
        assert!(parse_suite("id = x\ngame = go\nwidth = 2\nheight = 2\nalgorithm = pn2\n").is_err(), "go needs komi");
        match parse_suite(&format!("{base}bogus\n")) {
            Err(Error::Suite { line, .. }) => assert_eq!(line, 6),
            other => panic!("unexpected {other:?}"),
        }
    }
}
