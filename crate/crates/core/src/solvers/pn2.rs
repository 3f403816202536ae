//! Two-level proof-number search.
//!
//! The main tree is kept in an arena. Whenever a main-tree node is expanded,
//! every new non-terminal child is evaluated by a throw-away secondary
//! proof-number search whose node budget is the current size of the main
//! tree; the child takes over the proof and disproof numbers of that search.
//!
//! OR nodes are the positions where the root player moves. A proof means the
//! root player forces a win; a Go position that hits its move limit is a
//! disproof.

use std::time::Instant;

use super::{Aborted, SearchLimits};
use crate::engine::{GameState, GameValue, Move, Player, Status};
use crate::ordering::{select_next, MoveOrdering, Orderer, Ranked};

pub const INF: u64 = u64::MAX;

const NO_CHILDREN: u32 = u32::MAX;

#[derive(Clone, Debug)]
struct Node<G> {
    state: G,
    parent: u32,
    first_child: u32,
    child_count: u32,
    proof: u64,
    disproof: u64,
    or_node: bool,
}

impl<G> Node<G> {
    fn expanded(&self) -> bool {
        self.first_child != NO_CHILDREN
    }

    fn solved(&self) -> bool {
        self.proof == 0 || self.disproof == 0
    }
}

/// Shared bookkeeping for both levels.
struct Context<'a> {
    orderer: &'a mut Orderer,
    limits: &'a SearchLimits,
    started: Instant,
    moves_searched: &'a mut u64,
    moves: Vec<Move>,
    ranked: Vec<Ranked>,
    scratch: Vec<Move>,
}

impl Context<'_> {
    fn count_move(&mut self) -> Result<(), Aborted> {
        *self.moves_searched += 1;
        let n = *self.moves_searched;
        if self.limits.max_moves.is_some_and(|m| n > m) {
            return Err(Aborted);
        }
        if n & 0xfff == 0 {
            if let Some(t) = self.limits.time {
                if self.started.elapsed() >= t {
                    return Err(Aborted);
                }
            }
        }
        Ok(())
    }

    /// Children of `state` in ordering order.
    fn ordered_moves<G: MoveOrdering>(&mut self, state: &G) -> Vec<Move> {
        state.expand(&mut self.moves);
        self.orderer.rank(state, &self.moves, &mut self.ranked);
        (0..self.moves.len()).map(|k| self.moves[select_next(&mut self.ranked, k) as usize]).collect()
    }
}

fn initial_numbers<G: GameState>(state: &G, root_player: Player, scratch: &mut Vec<Move>) -> (u64, u64) {
    match state.expand(scratch) {
        Status::Won(w) if w == root_player => (0, INF),
        Status::Won(_) | Status::Limit => (INF, 0),
        Status::Ongoing => (1, 1),
    }
}

struct PnTree<G> {
    nodes: Vec<Node<G>>,
    root_player: Player,
}

impl<G: MoveOrdering> PnTree<G> {
    fn new(root: G, root_player: Player) -> PnTree<G> {
        let mut tree = PnTree { nodes: Vec::new(), root_player };
        tree.reset(root, &mut Vec::new());
        tree
    }

    /// Empties the tree, keeping its allocation, and plants a new root.
    fn reset(&mut self, root: G, scratch: &mut Vec<Move>) {
        let (proof, disproof) = initial_numbers(&root, self.root_player, scratch);
        let or_node = root.to_move() == self.root_player;
        self.nodes.clear();
        self.nodes.push(Node { state: root, parent: NO_CHILDREN, first_child: NO_CHILDREN, child_count: 0, proof, disproof, or_node });
    }

    fn root(&self) -> &Node<G> {
        &self.nodes[0]
    }

    fn most_proving(&self) -> usize {
        let mut i = 0;
        while self.nodes[i].expanded() {
            let n = &self.nodes[i];
            let children = n.first_child as usize..(n.first_child + n.child_count) as usize;
            // first minimum wins ties, so ordering order is respected
            i = if n.or_node {
                children.min_by_key(|&c| self.nodes[c].proof).expect("expanded node has children")
            } else {
                children.min_by_key(|&c| self.nodes[c].disproof).expect("expanded node has children")
            };
        }
        i
    }

    /// Creates the children of `leaf`. With `secondary`, each new
    /// non-terminal child is evaluated by a secondary search run in that
    /// spare tree, with the current tree size as its budget.
    fn expand(&mut self, leaf: usize, ctx: &mut Context<'_>, mut secondary: Option<&mut PnTree<G>>) -> Result<(), Aborted> {
        let state = self.nodes[leaf].state.clone();
        let moves = ctx.ordered_moves(&state);
        debug_assert!(!moves.is_empty(), "only unsolved leaves are expanded");
        let budget = self.nodes.len();
        let first = self.nodes.len() as u32;
        for mv in moves {
            ctx.count_move()?;
            let child = state.play(mv);
            let (mut proof, mut disproof) = initial_numbers(&child, self.root_player, &mut ctx.scratch);
            if let Some(spare) = secondary.as_deref_mut() {
                if proof != 0 && disproof != 0 {
                    (proof, disproof) = secondary_search(spare, child.clone(), budget, ctx)?;
                }
            }
            let or_node = child.to_move() == self.root_player;
            self.nodes.push(Node {
                state: child,
                parent: leaf as u32,
                first_child: NO_CHILDREN,
                child_count: 0,
                proof,
                disproof,
                or_node,
            });
        }
        let count = self.nodes.len() as u32 - first;
        let n = &mut self.nodes[leaf];
        n.first_child = first;
        n.child_count = count;
        Ok(())
    }

    fn recompute(&self, i: usize) -> (u64, u64) {
        let n = &self.nodes[i];
        let children = &self.nodes[n.first_child as usize..(n.first_child + n.child_count) as usize];
        let min_p = children.iter().map(|c| c.proof).min().unwrap_or(INF);
        let min_d = children.iter().map(|c| c.disproof).min().unwrap_or(INF);
        let sum_p = children.iter().fold(0u64, |s, c| s.saturating_add(c.proof));
        let sum_d = children.iter().fold(0u64, |s, c| s.saturating_add(c.disproof));
        if n.or_node {
            (min_p, sum_d)
        } else {
            (sum_p, min_d)
        }
    }

    fn update_ancestors(&mut self, mut i: usize) {
        loop {
            let (p, d) = self.recompute(i);
            let n = &mut self.nodes[i];
            let changed = n.proof != p || n.disproof != d;
            n.proof = p;
            n.disproof = d;
            if !changed || n.parent == NO_CHILDREN {
                return;
            }
            i = n.parent as usize;
        }
    }

    /// One select-expand-update cycle.
    fn step(&mut self, ctx: &mut Context<'_>, secondary: Option<&mut PnTree<G>>) -> Result<(), Aborted> {
        let leaf = self.most_proving();
        self.expand(leaf, ctx, secondary)?;
        self.update_ancestors(leaf);
        Ok(())
    }

    fn is_consistent(&self) -> bool {
        (0..self.nodes.len()).filter(|&i| self.nodes[i].expanded()).all(|i| {
            let n = &self.nodes[i];
            (n.proof, n.disproof) == self.recompute(i)
        })
    }
}

fn secondary_search<G: MoveOrdering>(tree: &mut PnTree<G>, root: G, budget: usize, ctx: &mut Context<'_>) -> Result<(u64, u64), Aborted> {
    tree.reset(root, &mut ctx.scratch);
    while !tree.root().solved() && tree.nodes.len() <= budget {
        tree.step(ctx, None)?;
    }
    Ok((tree.root().proof, tree.root().disproof))
}

/// Main PN² search with its own move ordering and limits.
pub struct Pn2<G> {
    tree: PnTree<G>,
    /// Reused by every secondary search.
    spare: PnTree<G>,
    orderer: Orderer,
    limits: SearchLimits,
    moves_searched: u64,
    /// Main-tree node cap; the search gives up once it is exceeded.
    pub max_nodes: usize,
}

pub const DEFAULT_MAX_NODES: usize = 20_000_000;

impl<G: MoveOrdering> Pn2<G> {
    pub fn new(root: &G, orderer: Orderer, limits: SearchLimits) -> Pn2<G> {
        Pn2 {
            tree: PnTree::new(root.clone(), root.to_move()),
            spare: PnTree { nodes: Vec::new(), root_player: root.to_move() },
            orderer,
            limits,
            moves_searched: 0,
            max_nodes: DEFAULT_MAX_NODES,
        }
    }

    pub fn moves_searched(&self) -> u64 {
        self.moves_searched
    }

    pub fn tree_size(&self) -> usize {
        self.tree.nodes.len()
    }

    /// Root proof and disproof numbers.
    pub fn numbers(&self) -> (u64, u64) {
        (self.tree.root().proof, self.tree.root().disproof)
    }

    pub fn result(&self) -> Option<GameValue> {
        match self.numbers() {
            (0, _) => Some(GameValue::WIN),
            (_, 0) => Some(GameValue::LOSS),
            _ => None,
        }
    }

    /// Every expanded main-tree node satisfies the min/sum recurrences.
    pub fn is_consistent(&self) -> bool {
        self.tree.is_consistent()
    }

    /// Runs at most `iterations` main-tree expansions (unbounded if `None`).
    /// Returns the root value once proven.
    pub fn run(&mut self, iterations: Option<u64>) -> Result<Option<GameValue>, Aborted> {
        let mut ctx = Context {
            orderer: &mut self.orderer,
            limits: &self.limits,
            started: Instant::now(),
            moves_searched: &mut self.moves_searched,
            moves: Vec::new(),
            ranked: Vec::new(),
            scratch: Vec::new(),
        };
        let mut done = 0;
        while !self.tree.root().solved() {
            if iterations.is_some_and(|n| done >= n) {
                return Ok(None);
            }
            if self.tree.nodes.len() > self.max_nodes {
                return Err(Aborted);
            }
            self.tree.step(&mut ctx, Some(&mut self.spare))?;
            done += 1;
        }
        Ok(self.result())
    }

    pub fn solve(&mut self) -> Result<GameValue, Aborted> {
        self.run(None).map(|v| v.expect("unbounded run ends solved"))
    }
}
