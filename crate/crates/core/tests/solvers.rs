mod common;

use gamesolver::bench::Oracle;
use gamesolver::games::{DominoState, Goban, GobanRules, PawnBoard, PieceKind};
use gamesolver::mcts::MctsConfig;
use gamesolver::ordering::{MoveOrdering, Orderer, OrderingMode, OrderingOptions};
use gamesolver::solvers::{AlphaBeta, Pn2, SearchLimits, SolverTable};
use gamesolver::{solve, solve_state, with_game, Algorithm, AnyGame, GameConfig, GameKind, Outcome, SolverConfig};

fn config(alg: Algorithm, seed: u64) -> SolverConfig {
    let mut c = SolverConfig::new(alg);
    c.mcts = MctsConfig { playouts: 500, seed, ..MctsConfig::default() };
    c.tt_bits = 16;
    c
}

fn oracle_outcome(g: &GameConfig) -> Outcome {
    let game = AnyGame::new(g).unwrap();
    let v = with_game!(&game, s => Oracle::new(true).value(s));
    Outcome::from_value(v)
}

/// Oracle instances cheap enough to solve many times over in a unit test.
fn quick_instances() -> Vec<GameConfig> {
    common::oracle_instances().into_iter().filter(|g| g.cells() <= 9).collect()
}

#[test]
fn all_algorithms_agree_with_the_oracle() {
    for g in quick_instances() {
        let expected = oracle_outcome(&g);
        for alg in Algorithm::ALL {
            let r = solve(&g, &config(alg, 1)).unwrap();
            assert_eq!(r.outcome, expected, "{alg} on {g}");
        }
    }
}

#[test]
fn table_size_does_not_change_the_value() {
    for g in quick_instances() {
        let expected = oracle_outcome(&g);
        for bits in [20, 16, 0] {
            for alg in [Algorithm::AbTt, Algorithm::IdAbTt] {
                let mut c = config(alg, 0);
                c.tt_bits = bits;
                assert_eq!(solve(&g, &c).unwrap().outcome, expected, "{alg} bits={bits} on {g}");
            }
        }
    }
}

fn solve_with_orderer<G: MoveOrdering>(root: &G, orderer: Orderer, iterative: bool) -> i8 {
    let mut ab = AlphaBeta::new(SolverTable::with_bits(12), orderer, SearchLimits::default());
    let v = if iterative { ab.solve_iterative(root) } else { ab.solve(root) };
    v.unwrap().get()
}

#[test]
fn random_orderings_keep_the_value() {
    for g in quick_instances() {
        let expected = if oracle_outcome(&g) == Outcome::Won { 1 } else { -1 };
        let game = AnyGame::new(&g).unwrap();
        for seed in 0..20 {
            let orderer = Orderer::new(OrderingMode::Random(seed), OrderingOptions::default());
            let (ab, id) = with_game!(&game, s => (
                solve_with_orderer(s, orderer.clone(), false),
                solve_with_orderer(s, orderer.clone(), true),
            ));
            assert_eq!((ab, id), (expected, expected), "seed {seed} on {g}");
            let pn = with_game!(&game, s => Pn2::new(s, orderer.clone(), SearchLimits::default()).solve().unwrap().get());
            assert_eq!(pn, expected, "pn2 seed {seed} on {g}");
        }
    }
}

#[test]
fn null_window_never_proves_a_false_win() {
    for g in common::oracle_instances() {
        if g.cells() > 12 {
            continue;
        }
        let id = solve(&g, &config(Algorithm::IdAbTtMc, 3)).unwrap();
        let full = solve(&g, &config(Algorithm::AbTt, 0)).unwrap();
        if id.outcome == Outcome::Won {
            assert_eq!(full.outcome, Outcome::Won, "{g}");
        }
    }
}

#[test]
fn proof_numbers_stay_consistent() {
    let roots: Vec<AnyGame> = [GameConfig::new(GameKind::Nogo, 3, 3), GameConfig::new(GameKind::Atarigo, 3, 3), GameConfig::go(3, 2, 0.5)]
        .iter()
        .map(|g| AnyGame::new(g).unwrap())
        .collect();
    for game in &roots {
        with_game!(game, s => {
            let mut pn = Pn2::new(s, Orderer::default(), SearchLimits::default());
            while pn.run(Some(1)).unwrap().is_none() {
                assert!(pn.is_consistent());
            }
            assert!(pn.is_consistent());
        });
    }
}

#[test]
fn immediate_win_is_found_at_once() {
    // Knightthrough 3x3: a knight jumps straight onto the last rank
    let root = PawnBoard::new(PieceKind::Knight, false, 3, 3);
    let mut pn = Pn2::new(&root, Orderer::default(), SearchLimits::default());
    assert_eq!(pn.run(Some(1)).unwrap().map(|v| v.get()), Some(1));
    assert_eq!(pn.numbers().0, 0);

    let mut ab = AlphaBeta::new(SolverTable::with_bits(10), Orderer::default(), SearchLimits::default());
    let s = ab.search(&root, 1, 0, 1, 0).unwrap();
    assert!(s.exact && s.value == 1);
    assert_eq!(ab.moves_searched(), 1, "the winning move is ordered first");
}

#[test]
fn depth_zero_under_null_window_is_inexact() {
    let root = Goban::new(GobanRules::Nogo, 3, 3);
    let mut ab = AlphaBeta::new(SolverTable::with_bits(10), Orderer::default(), SearchLimits::default());
    let s = ab.search(&root, 0, 0, 1, 0).unwrap();
    assert_eq!((s.value, s.exact), (0, false));
}

#[test]
fn terminal_root_is_lost_without_search() {
    let g = GameConfig::new(GameKind::Domineering, 1, 1);
    for alg in Algorithm::ALL {
        let r = solve(&g, &config(alg, 0)).unwrap();
        assert_eq!((r.outcome, r.moves_searched), (Outcome::Lost, 0), "{alg}");
    }
}

#[test]
fn move_limit_reports_unsolved() {
    let g = GameConfig::new(GameKind::Nogo, 4, 4);
    for alg in Algorithm::ALL {
        let mut c = config(alg, 0);
        c.limits.max_moves = Some(1000);
        let r = solve(&g, &c).unwrap();
        assert_eq!(r.outcome, Outcome::Unsolved, "{alg}");
        assert!(r.moves_searched > 1000);
    }
}

#[test]
fn repeated_runs_search_the_same_moves() {
    let g = GameConfig::new(GameKind::Atarigo, 4, 3);
    for alg in Algorithm::ALL {
        let a = solve(&g, &config(alg, 9)).unwrap();
        let b = solve(&g, &config(alg, 9)).unwrap();
        assert_eq!(a.moves_searched, b.moves_searched, "{alg}");
        assert_eq!(a.outcome, b.outcome);
    }
}

#[test]
fn unknown_algorithm_is_a_config_error() {
    assert!("dfpn".parse::<Algorithm>().is_err());
    for alg in Algorithm::ALL {
        assert_eq!(alg.name().parse::<Algorithm>().unwrap(), alg);
    }
}

#[test]
fn go_three_by_three_is_won_by_black() {
    let root = Goban::go(3, 3, 8.5, None);
    let r = solve_state(&root, &config(Algorithm::AbTtMc, 1), None);
    assert_eq!(r.outcome, Outcome::Won);
}

#[test]
fn domineering_and_pawn_solvers_match_on_mid_sizes() {
    let games = [DominoState::new(false, 5, 4), DominoState::new(true, 4, 4)];
    for g in &games {
        let a = solve_state(g, &config(Algorithm::AbTt, 0), None).outcome;
        let b = solve_state(g, &config(Algorithm::Pn2, 0), None).outcome;
        let c = solve_state(g, &config(Algorithm::IdAbTtMc, 2), None).outcome;
        assert_eq!((a, b), (c, c));
    }
}
