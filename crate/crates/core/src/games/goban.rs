//! Atarigo, Nogo and Go on small rectangular boards.
//!
//! Black is [`Player::First`]. Stones are kept as one bitboard per colour and
//! strings/liberties are recomputed by flood fill when needed.

use std::sync::Arc;

use super::grid::{bits, Grid};
use crate::engine::{splitmix64, zobrist, GameState, Move, MoveCode, Player, StateHash, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GobanRules {
    /// First capture wins; suicide without capture is illegal.
    Atarigo,
    /// Capturing (or self-capture) is illegal; a player without a move loses.
    Nogo,
    /// Area scoring with komi, positional superko, move limit.
    Go,
}

const PATTERNS: usize = 256;
const PASS_CODE_BASE: u32 = (2 * 64 * PATTERNS) as u32;

#[derive(Debug)]
struct History {
    position: u64,
    prev: Option<Arc<History>>,
}

#[derive(Clone, Debug)]
pub struct Goban {
    rules: GobanRules,
    grid: Grid,
    stones: [u64; 2],
    to_move: Player,
    moves_played: u16,
    passes: u8,
    winner: Option<Player>,
    komi_x2: i32,
    move_limit: u16,
    position_hash: u64,
    hash: u64,
    history: Option<Arc<History>>,
    history_key: u64,
}

/// Per-position string summary used by move generation.
struct Strings {
    /// Own stones belonging to strings with at least two liberties.
    own_safe: u64,
    /// Liberties of own strings in atari.
    own_atari_libs: u64,
    /// Single liberties of opponent strings in atari.
    opp_atari_libs: u64,
}

#[inline]
fn history_mix(position: u64) -> u64 {
    splitmix64(position ^ 0x6A09_E667_F3BC_C908)
}

impl Goban {
    pub fn new(rules: GobanRules, width: usize, height: usize) -> Goban {
        Goban::with_komi(rules, width, height, 0.5, None)
    }

    /// Go board; `move_limit` defaults to twice the number of cells.
    pub fn go(width: usize, height: usize, komi: f64, move_limit: Option<u32>) -> Goban {
        Goban::with_komi(GobanRules::Go, width, height, komi, move_limit)
    }

    fn with_komi(
        rules: GobanRules,
        width: usize,
        height: usize,
        komi: f64,
        move_limit: Option<u32>,
    ) -> Goban {
        let grid = Grid::new(width, height);
        let limit = move_limit.unwrap_or(2 * grid.cells() as u32);
        let mut g = Goban {
            rules,
            grid,
            stones: [0, 0],
            to_move: Player::First,
            moves_played: 0,
            passes: 0,
            winner: None,
            komi_x2: (komi * 2.0).round() as i32,
            move_limit: limit.min(u16::MAX as u32) as u16,
            position_hash: 0,
            hash: 0,
            history: None,
            history_key: 0,
        };
        if rules == GobanRules::Go {
            g.history = Some(Arc::new(History { position: 0, prev: None }));
            g.history_key = history_mix(0);
        }
        g.hash = g.compose_hash();
        g
    }

    /// Places stones directly, for tests and diagrams. Resets history to the
    /// resulting position.
    pub fn from_stones(mut self, black: u64, white: u64, to_move: Player) -> Goban {
        assert_eq!(black & white, 0);
        assert_eq!((black | white) & !self.grid.full(), 0);
        self.stones = [black, white];
        self.to_move = to_move;
        self.position_hash = zobrist::stones(Player::First, black) ^ zobrist::stones(Player::Second, white);
        if self.rules == GobanRules::Go {
            self.history = Some(Arc::new(History { position: self.position_hash, prev: None }));
            self.history_key = history_mix(self.position_hash);
        }
        self.hash = self.compose_hash();
        self
    }

    pub fn rules(&self) -> GobanRules {
        self.rules
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn stones(&self, player: Player) -> u64 {
        self.stones[player.index()]
    }

    pub fn empty(&self) -> u64 {
        self.grid.full() & !(self.stones[0] | self.stones[1])
    }

    pub fn moves_played(&self) -> u32 {
        self.moves_played as u32
    }

    pub fn move_limit(&self) -> u32 {
        self.move_limit as u32
    }

    pub fn komi(&self) -> f64 {
        self.komi_x2 as f64 / 2.0
    }

    /// String containing `cell` (empty mask if the cell is empty).
    pub fn string_at(&self, cell: usize) -> u64 {
        let bit = 1u64 << cell;
        let color = if self.stones[0] & bit != 0 {
            self.stones[0]
        } else if self.stones[1] & bit != 0 {
            self.stones[1]
        } else {
            return 0;
        };
        self.grid.flood(bit, color)
    }

    pub fn liberties(&self, string: u64) -> u64 {
        self.grid.neighbors(string) & self.empty()
    }

    pub fn empty_adjacent(&self, cell: usize) -> u32 {
        (self.grid.neighbors(1 << cell) & self.empty()).count_ones()
    }

    fn compose_hash(&self) -> u64 {
        let mut h = self.position_hash ^ zobrist::side(self.to_move);
        if self.rules == GobanRules::Go {
            if self.passes > 0 {
                h ^= zobrist::pass();
            }
            h ^= zobrist::move_number(self.moves_played as usize);
        }
        h
    }

    fn strings(&self) -> Strings {
        let me = self.to_move.index();
        let empty = self.empty();
        let mut out = Strings { own_safe: 0, own_atari_libs: 0, opp_atari_libs: 0 };
        let mut rest = self.stones[me];
        while rest != 0 {
            let s = self.grid.flood(rest & rest.wrapping_neg(), self.stones[me]);
            rest &= !s;
            let libs = self.grid.neighbors(s) & empty;
            if libs.count_ones() >= 2 {
                out.own_safe |= s;
            } else {
                out.own_atari_libs |= libs;
            }
        }
        let mut rest = self.stones[1 - me];
        while rest != 0 {
            let s = self.grid.flood(rest & rest.wrapping_neg(), self.stones[1 - me]);
            rest &= !s;
            let libs = self.grid.neighbors(s) & empty;
            if libs.count_ones() == 1 {
                out.opp_atari_libs |= libs;
            }
        }
        out
    }

    #[inline]
    fn is_suicide_without_capture(&self, cell: usize, strings: &Strings) -> bool {
        let n = self.grid.neighbors(1 << cell);
        n & self.empty() == 0 && n & strings.own_safe == 0
    }

    /// Opponent stones removed by playing `cell` for the mover.
    fn captures(&self, cell: usize) -> u64 {
        let bit = 1u64 << cell;
        let opp = self.stones[self.to_move.opponent().index()];
        let empty_after = self.empty() & !bit;
        let mut captured = 0;
        let mut adj = self.grid.neighbors(bit) & opp;
        while adj != 0 {
            let s = self.grid.flood(adj & adj.wrapping_neg(), opp);
            adj &= !s;
            if self.grid.neighbors(s) & empty_after == 0 {
                captured |= s;
            }
        }
        captured
    }

    fn history_contains(&self, position: u64) -> bool {
        let mut link = self.history.as_deref();
        while let Some(h) = link {
            if h.position == position {
                return true;
            }
            link = h.prev.as_deref();
        }
        false
    }

    /// Chinese area score for Black minus White, without komi.
    pub fn area_difference(&self) -> i32 {
        let empty = self.empty();
        let mut black = self.stones[0].count_ones() as i32;
        let mut white = self.stones[1].count_ones() as i32;
        let mut rest = empty;
        while rest != 0 {
            let region = self.grid.flood(rest & rest.wrapping_neg(), empty);
            rest &= !region;
            let border = self.grid.neighbors(region);
            let touches_black = border & self.stones[0] != 0;
            let touches_white = border & self.stones[1] != 0;
            match (touches_black, touches_white) {
                (true, false) => black += region.count_ones() as i32,
                (false, true) => white += region.count_ones() as i32,
                _ => {}
            }
        }
        black - white
    }

    /// Winner by area scoring with komi.
    pub fn score_winner(&self) -> Player {
        if 2 * self.area_difference() - self.komi_x2 > 0 {
            Player::First
        } else {
            Player::Second
        }
    }

    fn push_history(&mut self) {
        self.history = Some(Arc::new(History {
            position: self.position_hash,
            prev: self.history.take(),
        }));
        self.history_key ^= history_mix(self.position_hash);
    }

    /// Neighbour pattern of `cell` relative to the mover: 2 bits per side
    /// (0 empty, 1 own, 2 opponent, 3 edge) in up, down, left, right order.
    pub fn neighbor_pattern(&self, cell: usize) -> u32 {
        let me = self.stones[self.to_move.index()];
        let opp = self.stones[self.to_move.opponent().index()];
        let mut pattern = 0u32;
        for (i, n) in self.grid.adjacent(cell).into_iter().enumerate() {
            let v = match n {
                None => 3,
                Some(c) if me & (1 << c) != 0 => 1,
                Some(c) if opp & (1 << c) != 0 => 2,
                Some(_) => 0,
            };
            pattern |= v << (2 * i);
        }
        pattern
    }
}

impl GameState for Goban {
    fn to_move(&self) -> Player {
        self.to_move
    }

    fn hash(&self) -> StateHash {
        StateHash(self.hash)
    }

    fn full_key(&self) -> u64 {
        self.hash ^ self.history_key
    }

    fn expand(&self, moves: &mut Vec<Move>) -> Status {
        moves.clear();
        if let Some(w) = self.winner {
            return Status::Won(w);
        }
        let me = self.to_move;
        match self.rules {
            GobanRules::Atarigo | GobanRules::Nogo => {
                let strings = self.strings();
                for cell in bits(self.empty()) {
                    let captures = strings.opp_atari_libs & (1 << cell) != 0;
                    let suicide = self.is_suicide_without_capture(cell, &strings);
                    let legal = match self.rules {
                        GobanRules::Atarigo => captures || !suicide,
                        _ => !captures && !suicide,
                    };
                    if legal {
                        moves.push(Move::point(cell));
                    }
                }
                if moves.is_empty() {
                    return Status::Won(me.opponent());
                }
                Status::Ongoing
            }
            GobanRules::Go => {
                if self.passes >= 2 {
                    return Status::Won(self.score_winner());
                }
                if self.moves_played >= self.move_limit {
                    return Status::Limit;
                }
                let strings = self.strings();
                for cell in bits(self.empty()) {
                    let bit = 1u64 << cell;
                    let mut position = self.position_hash ^ zobrist::cell(me, cell);
                    if strings.opp_atari_libs & bit != 0 {
                        position ^= zobrist::stones(me.opponent(), self.captures(cell));
                    } else if self.is_suicide_without_capture(cell, &strings) {
                        continue;
                    }
                    if !self.history_contains(position) {
                        moves.push(Move::point(cell));
                    }
                }
                moves.push(Move::PASS);
                Status::Ongoing
            }
        }
    }

    fn play(&self, mv: Move) -> Goban {
        let mut next = self.clone();
        let me = self.to_move;
        next.moves_played += 1;
        next.to_move = me.opponent();
        if mv.is_pass() {
            debug_assert_eq!(self.rules, GobanRules::Go, "pass outside Go");
            next.passes += 1;
            next.hash = next.compose_hash();
            return next;
        }
        let cell = mv.to as usize;
        let bit = 1u64 << cell;
        debug_assert!(self.empty() & bit != 0, "move on occupied point {cell}");
        let captured = self.captures(cell);
        next.stones[me.index()] |= bit;
        next.position_hash ^= zobrist::cell(me, cell);
        next.passes = 0;
        match self.rules {
            GobanRules::Atarigo => {
                if captured != 0 {
                    next.winner = Some(me);
                }
            }
            GobanRules::Nogo => debug_assert_eq!(captured, 0, "capturing move in Nogo"),
            GobanRules::Go => {
                next.stones[me.opponent().index()] &= !captured;
                next.position_hash ^= zobrist::stones(me.opponent(), captured);
                debug_assert!(!self.history_contains(next.position_hash), "superko violation");
                next.push_history();
            }
        }
        next.hash = next.compose_hash();
        next
    }

    fn move_code(&self, mv: Move) -> MoveCode {
        if mv.is_pass() {
            return PASS_CODE_BASE + self.to_move.index() as u32;
        }
        let cell = mv.to as u32;
        ((self.to_move.index() as u32 * 64 + cell) * PATTERNS as u32) + self.neighbor_pattern(cell as usize)
    }

    fn code_space(&self) -> usize {
        PASS_CODE_BASE as usize + 2
    }

    fn remaining_bound(&self) -> u32 {
        match self.rules {
            GobanRules::Go => (self.move_limit as u32).saturating_sub(self.moves_played as u32),
            _ => self.empty().count_ones(),
        }
    }

    fn limit_winner(&self) -> Player {
        self.score_winner()
    }

    fn recompute_hash(&self) -> StateHash {
        let mut fresh = self.clone();
        fresh.position_hash = zobrist::stones(Player::First, self.stones[0])
            ^ zobrist::stones(Player::Second, self.stones[1]);
        if self.rules == GobanRules::Go {
            let mut key = 0;
            let mut link = self.history.as_deref();
            while let Some(h) = link {
                key ^= history_mix(h.position);
                link = h.prev.as_deref();
            }
            debug_assert_eq!(key, self.history_key, "history key out of sync");
        }
        StateHash(fresh.compose_hash())
    }

    /// `X` Black (first player), `O` White, `.` empty; top row is the highest `y`.
    fn render(&self) -> String {
        let mut out = String::new();
        for y in (0..self.grid.height()).rev() {
            for x in 0..self.grid.width() {
                let bit = 1u64 << self.grid.index(x, y);
                out.push(if self.stones[0] & bit != 0 {
                    'X'
                } else if self.stones[1] & bit != 0 {
                    'O'
                } else {
                    '.'
                });
            }
            out.push('\n');
        }
        out
    }
}
