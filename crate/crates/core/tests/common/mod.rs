#![allow(dead_code)]

use gamesolver::{GameConfig, GameKind};

/// Instances small enough for the exhaustive oracle, covering every variant.
pub fn oracle_instances() -> Vec<GameConfig> {
    use GameKind::*;
    let mut out = Vec::new();
    let mut add = |kind: GameKind, sizes: &[(usize, usize)]| {
        out.extend(sizes.iter().map(|&(w, h)| GameConfig::new(kind, w, h)));
    };
    add(Nogo, &[(2, 2), (3, 2), (2, 3), (3, 3), (4, 2), (4, 3), (3, 4), (4, 4)]);
    add(Atarigo, &[(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (3, 4), (5, 3), (4, 4)]);
    add(Domineering, &[(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (3, 4), (4, 4), (5, 3), (8, 2)]);
    add(MisereDomineering, &[(2, 2), (3, 2), (3, 3), (4, 2), (4, 3), (3, 4), (4, 4), (5, 3), (8, 2)]);
    add(Breakthrough, &[(2, 2), (3, 3), (4, 3), (3, 4), (4, 4), (5, 3), (2, 6)]);
    add(MisereBreakthrough, &[(2, 2), (3, 3), (4, 3), (3, 4), (4, 4), (5, 3), (2, 6)]);
    add(Knightthrough, &[(2, 2), (3, 3), (3, 4), (4, 4), (2, 6)]);
    add(MisereKnightthrough, &[(2, 2), (3, 3), (4, 3), (3, 4), (4, 4), (5, 3), (2, 6)]);
    for &(w, h, komi) in &[(2, 1, 0.5), (3, 1, 0.5), (4, 1, 0.5), (5, 1, 1.5), (6, 1, 0.5), (2, 2, 0.5), (2, 2, -0.5), (3, 2, 0.5), (4, 2, 0.5)] {
        out.push(GameConfig::go(w, h, komi));
    }
    out
}
