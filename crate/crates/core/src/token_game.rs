//! The token game behind the exact solver.
//!
//! One backward token chases k forward tokens over the instance graph. All
//! tokens start on s and must end on t. Forward tokens step along out-edges
//! at edge cost; the backward token steps *against* an in-edge at edge cost
//! (it is walking the future t-to-s path in reverse); a flip teleports a
//! forward token onto the backward token and vice versa at the cost of a
//! shortest walk between them — the two walks will share that stretch, which
//! the max-multiplicity objective bills only once. The cheapest play equals
//! the optimum of the (k, 1)-demand instance, and its move list replays into
//! concrete walks.
//!
//! States are multisets: forward tokens are interchangeable, so positions are
//! kept sorted and the state space shrinks by up to k!. The search is a lazy
//! Dijkstra over interned states; the game graph is never materialized.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, HashMap};
use std::time::Instant;

use smallvec::SmallVec;
use thiserror::Error;

use crate::graph::{Digraph, EdgeId, VertexId, Weight};
use crate::spt::ShortestPathTable;

/// Backward-token position first, then forward positions in sorted order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TokenState {
    tokens: SmallVec<[VertexId; 6]>,
}

impl TokenState {
    pub fn new(backward: VertexId, forward: &[VertexId]) -> Self {
        let mut tokens = SmallVec::with_capacity(forward.len() + 1);
        tokens.push(backward);
        tokens.extend_from_slice(forward);
        tokens[1..].sort_unstable();
        TokenState { tokens }
    }

    /// All k forward tokens and the backward token on one vertex.
    pub fn all_at(v: VertexId, k: u32) -> Self {
        TokenState {
            tokens: std::iter::repeat(v).take(k as usize + 1).collect(),
        }
    }

    pub fn backward(&self) -> VertexId {
        self.tokens[0]
    }

    pub fn forward(&self) -> &[VertexId] {
        &self.tokens[1..]
    }

    pub fn k(&self) -> u32 {
        (self.tokens.len() - 1) as u32
    }

    fn with_backward(&self, v: VertexId) -> TokenState {
        let mut tokens = self.tokens.clone();
        tokens[0] = v;
        TokenState { tokens }
    }

    /// Replaces one forward token currently on `from` with `to`.
    fn with_forward_moved(&self, from: VertexId, to: VertexId) -> TokenState {
        let mut tokens = self.tokens.clone();
        let i = tokens[1..].iter().position(|&p| p == from).expect("token present") + 1;
        tokens[i] = to;
        tokens[1..].sort_unstable();
        TokenState { tokens }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Move {
    /// The backward token retreats from the head of `edge` to its tail.
    Backward { edge: EdgeId },
    /// A forward token on the tail of `edge` advances to its head.
    Forward { edge: EdgeId },
    /// The forward token on `from` swaps places with the backward token,
    /// paying a shortest `from`-to-backward walk once.
    Flip { from: VertexId },
}

#[derive(Debug, Clone)]
pub struct Successor {
    pub mv: Move,
    pub cost: Weight,
    pub state: TokenState,
}

/// Enumerates the legal moves out of `state`. Duplicate forward positions are
/// expanded once (their successors are canonically equal), self-loop edges
/// are skipped, flips from the backward token's own vertex are suppressed
/// (they would be zero-cost self-edges), and flips across unreachable pairs
/// are skipped. The count is bounded by
/// `in_deg(backward) + sum out_deg(forward_i) + k`.
pub fn for_each_successor(
    graph: &Digraph,
    spt: &ShortestPathTable,
    state: &TokenState,
    mut f: impl FnMut(Successor),
) {
    let back = state.backward();
    for &e in graph.in_edges(back) {
        let edge = graph.edge(e);
        if edge.tail == edge.head {
            continue;
        }
        f(Successor {
            mv: Move::Backward { edge: e },
            cost: edge.weight,
            state: state.with_backward(edge.tail),
        });
    }
    let forward = state.forward();
    for (i, &v) in forward.iter().enumerate() {
        if i > 0 && forward[i - 1] == v {
            continue; // interchangeable token, same successors
        }
        for &e in graph.out_edges(v) {
            let edge = graph.edge(e);
            if edge.tail == edge.head {
                continue;
            }
            f(Successor {
                mv: Move::Forward { edge: e },
                cost: edge.weight,
                state: state.with_forward_moved(v, edge.head),
            });
        }
        if v != back {
            if let Some(d) = spt.dist(v, back) {
                f(Successor {
                    mv: Move::Flip { from: v },
                    cost: d,
                    state: state.with_forward_moved(v, back).with_backward(v),
                });
            }
        }
    }
}

pub fn neighbors(graph: &Digraph, spt: &ShortestPathTable, state: &TokenState) -> Vec<Successor> {
    let mut out = Vec::new();
    for_each_successor(graph, spt, state, |s| out.push(s));
    out
}

/// Applies `mv` to `state` if it is legal there, returning the successor and
/// the move's cost.
pub fn apply(
    graph: &Digraph,
    spt: &ShortestPathTable,
    state: &TokenState,
    mv: Move,
) -> Option<(TokenState, Weight)> {
    match mv {
        Move::Backward { edge } => {
            let e = graph.edge(edge);
            (e.head == state.backward() && e.tail != e.head)
                .then(|| (state.with_backward(e.tail), e.weight))
        }
        Move::Forward { edge } => {
            let e = graph.edge(edge);
            (state.forward().contains(&e.tail) && e.tail != e.head)
                .then(|| (state.with_forward_moved(e.tail, e.head), e.weight))
        }
        Move::Flip { from } => {
            let back = state.backward();
            if from == back || !state.forward().contains(&from) {
                return None;
            }
            let d = spt.dist(from, back)?;
            Some((state.with_forward_moved(from, back).with_backward(from), d))
        }
    }
}

#[derive(Debug, Clone)]
pub struct GamePlay {
    pub moves: Vec<Move>,
    pub cost: Weight,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchStats {
    /// States settled (popped with their final distance).
    pub expanded: usize,
    /// States ever discovered and interned.
    pub discovered: usize,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct SearchLimits {
    pub deadline: Option<Instant>,
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
#[error("token-game search hit its time budget after {expanded} states")]
pub struct SearchTimeout {
    pub expanded: usize,
}

/// Upper bound on the reachable canonical state count: n positions for the
/// backward token times multisets of size k over n forward positions.
pub fn state_space_bound(n: u32, k: u32) -> u128 {
    let n = n as u128;
    let k = k as u128;
    // C(n + k - 1, k), kept exact in 128 bits for the sizes we solve
    let mut binom: u128 = 1;
    for i in 0..k {
        binom = binom * (n + i) / (i + 1);
    }
    n * binom
}

/// Cheapest play from everyone-on-s to everyone-on-t, or `None` when no play
/// exists. Convenience wrapper that builds the shortest-path table itself.
pub fn solve_token_game(graph: &Digraph, s: VertexId, t: VertexId, k: u32) -> Option<GamePlay> {
    let spt = crate::spt::all_pairs_shortest_paths(graph);
    solve_token_game_with(graph, &spt, s, t, k, SearchLimits::default(), None)
        .expect("no deadline set")
        .0
}

/// Callback invoked once per settled state with its successor count.
pub type StateObserver<'a> = &'a mut dyn FnMut(&TokenState, usize);

/// Full-control entry point: caller supplies the shortest-path table, an
/// optional wall-clock deadline, and an optional observer called once per
/// settled state with its successor count.
pub fn solve_token_game_with(
    graph: &Digraph,
    spt: &ShortestPathTable,
    s: VertexId,
    t: VertexId,
    k: u32,
    limits: SearchLimits,
    mut observer: Option<StateObserver<'_>>,
) -> Result<(Option<GamePlay>, SearchStats), SearchTimeout> {
    assert!(k >= 1, "at least one forward token");
    assert!(s < graph.n() && t < graph.n(), "terminals in range");

    let start = TokenState::all_at(s, k);
    let goal = TokenState::all_at(t, k);

    let mut index: HashMap<TokenState, u32> = HashMap::new();
    let mut states: Vec<TokenState> = Vec::new();
    let mut dist: Vec<Weight> = Vec::new();
    let mut pred: Vec<Option<(u32, Move)>> = Vec::new();
    let mut settled: Vec<bool> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(Weight, u32)>> = BinaryHeap::new();

    let mut intern = |state: TokenState,
                      states: &mut Vec<TokenState>,
                      dist: &mut Vec<Weight>,
                      pred: &mut Vec<Option<(u32, Move)>>,
                      settled: &mut Vec<bool>|
     -> u32 {
        *index.entry(state).or_insert_with_key(|key| {
            let id = states.len() as u32;
            states.push(key.clone());
            dist.push(Weight::MAX);
            pred.push(None);
            settled.push(false);
            id
        })
    };

    let start_id = intern(start, &mut states, &mut dist, &mut pred, &mut settled);
    dist[start_id as usize] = 0;
    heap.push(Reverse((0, start_id)));

    let mut stats = SearchStats::default();
    let mut goal_id: Option<u32> = None;

    while let Some(Reverse((d, id))) = heap.pop() {
        if settled[id as usize] {
            continue;
        }
        settled[id as usize] = true;
        stats.expanded += 1;

        if let Some(deadline) = limits.deadline {
            if stats.expanded % 4096 == 0 && Instant::now() >= deadline {
                return Err(SearchTimeout { expanded: stats.expanded });
            }
        }

        let state = states[id as usize].clone();
        if state == goal {
            goal_id = Some(id);
            break;
        }

        let mut succ_count = 0usize;
        for_each_successor(graph, spt, &state, |succ| {
            succ_count += 1;
            let nd = d
                .checked_add(succ.cost)
                .expect("instance weight guard keeps play costs in range");
            let sid = intern(succ.state, &mut states, &mut dist, &mut pred, &mut settled);
            if nd < dist[sid as usize] {
                dist[sid as usize] = nd;
                pred[sid as usize] = Some((id, succ.mv));
                heap.push(Reverse((nd, sid)));
            }
        });
        if let Some(obs) = observer.as_deref_mut() {
            obs(&state, succ_count);
        }
    }

    stats.discovered = states.len();
    let Some(goal_id) = goal_id else {
        return Ok((None, stats));
    };

    let mut moves = Vec::new();
    let mut at = goal_id;
    while let Some((prev, mv)) = pred[at as usize] {
        moves.push(mv);
        at = prev;
    }
    moves.reverse();
    Ok((
        Some(GamePlay {
            moves,
            cost: dist[goal_id as usize],
        }),
        stats,
    ))
}

/// Replays a move list from `start`, validating legality and summing costs.
pub fn replay(
    graph: &Digraph,
    spt: &ShortestPathTable,
    start: &TokenState,
    moves: &[Move],
) -> Option<(TokenState, Weight)> {
    let mut state = start.clone();
    let mut total: Weight = 0;
    for &mv in moves {
        let (next, cost) = apply(graph, spt, &state, mv)?;
        state = next;
        total = total.checked_add(cost)?;
    }
    Some((state, total))
}
