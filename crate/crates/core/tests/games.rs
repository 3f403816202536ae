use gamesolver::bench::Oracle;
use gamesolver::games::{DominoState, Goban, GobanRules, PawnBoard, PieceKind};
use gamesolver::{with_game, AnyGame, GameConfig, GameKind, GameState, Move, Player, Status};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn all_configs() -> Vec<GameConfig> {
    let mut v: Vec<GameConfig> = GameKind::ALL
        .into_iter()
        .filter(|&k| k != GameKind::Go)
        .flat_map(|k| [(4, 4), (5, 3), (6, 5)].map(|(w, h)| GameConfig::new(k, w, h)))
        .collect();
    v.push(GameConfig::go(3, 3, 8.5));
    v.push(GameConfig::go(4, 3, 3.5));
    v
}

/// Plays uniformly random games, calling `check` on every state reached.
fn random_games<G: GameState>(root: &G, games: usize, seed: u64, mut check: impl FnMut(&G, &[Move], Status)) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut moves = Vec::new();
    for _ in 0..games {
        let mut s = root.clone();
        loop {
            let status = s.expand(&mut moves);
            check(&s, &moves, status);
            if status.is_over() {
                break;
            }
            s = s.play(*moves.choose(&mut rng).unwrap());
        }
    }
}

#[test]
fn incremental_hash_matches_recomputation() {
    for c in all_configs() {
        let g = AnyGame::new(&c).unwrap();
        with_game!(&g, root => random_games(root, 10_000 / 8, 1, |s, _, _| {
            assert_eq!(s.hash(), s.recompute_hash(), "{c}");
        }));
    }
}

#[test]
fn codes_stay_inside_code_space() {
    for c in all_configs() {
        let g = AnyGame::new(&c).unwrap();
        with_game!(&g, root => random_games(root, 300, 2, |s, moves, _| {
            for &m in moves {
                assert!((s.move_code(m) as usize) < s.code_space(), "{c}");
            }
        }));
    }
}

#[test]
fn play_leaves_the_input_untouched() {
    for c in all_configs() {
        let g = AnyGame::new(&c).unwrap();
        with_game!(&g, root => random_games(root, 50, 3, |s, moves, _| {
            let before = s.render();
            let h = s.hash();
            for &m in moves {
                let _ = s.play(m);
            }
            assert_eq!(s.render(), before);
            assert_eq!(s.hash(), h);
        }));
    }
}

#[test]
fn terminal_values_flip_with_perspective() {
    for c in all_configs() {
        let g = AnyGame::new(&c).unwrap();
        with_game!(&g, root => random_games(root, 100, 4, |s, _, status| {
            if status.is_over() {
                let me = status.value_for(s.to_move());
                assert_eq!(me, -status.value_for(s.to_move().opponent()));
                assert_eq!(s.evaluate(), me);
            }
        }));
    }
}

#[test]
fn random_games_respect_length_bounds() {
    for c in all_configs() {
        let g = AnyGame::new(&c).unwrap();
        let bound = with_game!(&g, s => s.remaining_bound());
        let cells = c.cells() as u32;
        let expected = match c.kind {
            GameKind::Go => 2 * cells,
            GameKind::Domineering | GameKind::MisereDomineering => cells / 2,
            GameKind::Atarigo | GameKind::Nogo => cells,
            _ => cells * c.height as u32,
        };
        assert!(bound <= expected, "{c}: bound {bound} above {expected}");
        with_game!(&g, root => {
            let mut plies = 0;
            let mut last = 0;
            random_games(root, 10_000 / 8, 5, |_, _, status| {
                plies += 1;
                if status.is_over() {
                    assert!(plies - 1 <= bound, "{c}: game of {} plies over bound {bound}", plies - 1);
                    last = plies;
                    plies = 0;
                }
            });
            assert!(last > 0);
        });
    }
}

fn flood_liberties(g: &Goban, cell: usize) -> u64 {
    // independent flood fill over coordinates
    let grid = g.grid();
    let (w, h) = (grid.width(), grid.height());
    let owner = |c: usize| {
        if g.stones(Player::First) >> c & 1 == 1 {
            1
        } else if g.stones(Player::Second) >> c & 1 == 1 {
            2
        } else {
            0
        }
    };
    let colour = owner(cell);
    let mut seen = vec![false; w * h];
    let mut stack = vec![cell];
    let mut libs = 0u64;
    seen[cell] = true;
    while let Some(c) = stack.pop() {
        let (x, y) = (c % w, c / w);
        let mut around = Vec::new();
        if x > 0 {
            around.push(c - 1);
        }
        if x + 1 < w {
            around.push(c + 1);
        }
        if y > 0 {
            around.push(c - w);
        }
        if y + 1 < h {
            around.push(c + w);
        }
        for n in around {
            match owner(n) {
                0 => libs |= 1 << n,
                o if o == colour && !seen[n] => {
                    seen[n] = true;
                    stack.push(n);
                }
                _ => {}
            }
        }
    }
    libs
}

#[test]
fn liberties_match_flood_fill() {
    for root in [Goban::go(4, 3, 3.5, None), Goban::new(GobanRules::Atarigo, 5, 4), Goban::new(GobanRules::Nogo, 4, 4)] {
        random_games(&root, 10_000 / 3, 6, |s, _, _| {
            let occupied = s.stones(Player::First) | s.stones(Player::Second);
            for cell in 0..s.grid().cells() {
                if occupied >> cell & 1 == 1 {
                    assert_eq!(s.liberties(s.string_at(cell)), flood_liberties(s, cell), "\n{}", s.render());
                }
            }
        });
    }
}

#[test]
fn nogo_values_are_transpose_symmetric() {
    for (w, h) in [(1, 2), (1, 3), (1, 5), (2, 3), (2, 4), (3, 4), (2, 6), (1, 8)] {
        let a = Oracle::new(true).value(&Goban::new(GobanRules::Nogo, w, h));
        let b = Oracle::new(true).value(&Goban::new(GobanRules::Nogo, h, w));
        assert_eq!(a, b, "Nogo {w}x{h}");
    }
}

#[test]
fn domineering_transpose_swaps_roles() {
    for w in 1..=4 {
        for h in 1..=4 {
            for misere in [false, true] {
                let vertical_first = Oracle::new(true).value(&DominoState::new(misere, w, h));
                let horizontal_first =
                    Oracle::new(true).value(&DominoState::with_to_move(misere, h, w, Player::Second));
                assert_eq!(vertical_first, horizontal_first, "{w}x{h} misere={misere}");
            }
        }
    }
}

#[test]
fn known_small_values() {
    let mut o = Oracle::new(false);
    // 1x1 Nogo: the only move is suicide, so the first player loses
    assert_eq!(o.value(&Goban::new(GobanRules::Nogo, 1, 1)).get(), -1);
    assert_eq!(o.value(&Goban::new(GobanRules::Nogo, 2, 2)).get(), 1);
    assert_eq!(o.value(&DominoState::new(false, 2, 2)).get(), 1);
    // Breakthrough 2x2: the first pawn captures diagonally onto the last rank
    assert_eq!(o.value(&PawnBoard::new(PieceKind::Pawn, false, 2, 2)).get(), 1);
}
