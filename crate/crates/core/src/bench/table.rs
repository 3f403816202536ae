//! CSV and markdown rendering of result rows.
//!
//! Unsolved rows carry lower bounds: `≥N` in CSV, `> N` and `> T s.` in
//! markdown. With timings disabled every time field prints as `-`, which
//! makes output byte-for-byte reproducible.

use std::fmt::Write;
use std::str::FromStr;

use super::{ResultRow, RowResult};
use crate::error::Error;
use crate::solvers::Outcome;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum TableFormat {
    #[default]
    Csv,
    Markdown,
}

impl FromStr for TableFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<TableFormat, Error> {
        match s {
            "csv" => Ok(TableFormat::Csv),
            "markdown" | "md" => Ok(TableFormat::Markdown),
            _ => Err(Error::Config(format!("unknown format `{s}`"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableOptions {
    pub format: TableFormat,
    pub timings: bool,
}

impl Default for TableOptions {
    fn default() -> TableOptions {
        TableOptions { format: TableFormat::Csv, timings: true }
    }
}

pub const CSV_HEADER: &str = "game,width,height,algorithm,result,moves,time_s,playouts,seed";

fn result_label(row: &ResultRow) -> &'static str {
    match &row.result {
        RowResult::Solved(Outcome::Won) => "Won",
        RowResult::Solved(Outcome::Lost) => "Lost",
        RowResult::Solved(Outcome::Unsolved) => "Unsolved",
        RowResult::Failed(_) => "Failed",
    }
}

fn unsolved(row: &ResultRow) -> bool {
    row.result == RowResult::Solved(Outcome::Unsolved)
}

/// Groups digits by three, as in `35 178 886`.
fn spaced(n: u64) -> String {
    let digits = n.to_string();
    let mut out = String::new();
    for (i, c) in digits.chars().enumerate() {
        if i > 0 && (digits.len() - i) % 3 == 0 {
            out.push(' ');
        }
        out.push(c);
    }
    out
}

fn csv(rows: &[ResultRow], opts: &TableOptions) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in rows {
        let bound = if unsolved(r) { "≥" } else { "" };
        let time = if opts.timings { format!("{bound}{:.3}", r.total_time().as_secs_f64()) } else { "-".into() };
        let _ = writeln!(
            out,
            "{},{},{},{},{},{bound}{},{time},{},{}",
            r.game.kind.name(),
            r.game.width,
            r.game.height,
            r.algorithm.name(),
            result_label(r),
            r.moves,
            r.playouts,
            r.seed
        );
    }
    out
}

fn markdown(rows: &[ResultRow], opts: &TableOptions) -> String {
    // consecutive rows on the same game and size share one table
    let mut out = String::new();
    let mut start = 0;
    while start < rows.len() {
        let g = rows[start].game;
        let end = start + rows[start..].iter().take_while(|r| r.game == g).count();
        let group = &rows[start..end];
        let results: Vec<&str> = group.iter().map(result_label).filter(|&l| l == "Won" || l == "Lost").collect();
        let result = match results.first() {
            Some(&first) if results.iter().all(|&l| l == first) => first,
            Some(_) => "Conflicting",
            None => "Unsolved",
        };
        if start > 0 {
            out.push('\n');
        }
        let _ = writeln!(out, "**{} {} × {}**, result: {}\n", g.kind.title(), g.width, g.height, result);
        out.push_str("| Algorithm | Playouts | Moves | Time |\n|:--|--:|--:|--:|\n");
        for r in group {
            let (moves, time) = match &r.result {
                RowResult::Failed(msg) => ("failed".to_string(), msg.replace('|', "/")),
                _ => {
                    let bound = if unsolved(r) { "> " } else { "" };
                    let time = if opts.timings {
                        format!("{bound}{:.2} s.", r.total_time().as_secs_f64())
                    } else {
                        "-".into()
                    };
                    (format!("{bound}{}", spaced(r.moves)), time)
                }
            };
            let playouts = if r.algorithm.uses_monte_carlo() { spaced(r.playouts) } else { String::new() };
            let _ = writeln!(out, "| {} | {} | {} | {} |", r.algorithm.label(), playouts, moves, time);
        }
        start = end;
    }
    out
}

pub fn emit_table(rows: &[ResultRow], opts: &TableOptions) -> String {
    match opts.format {
        TableFormat::Csv => csv(rows, opts),
        TableFormat::Markdown => markdown(rows, opts),
    }
}
