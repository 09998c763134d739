//! Structure of optimal solutions: which stretches a forward and a backward
//! walk share, whether the backward walk meets them in reversed order, and a
//! local rewiring that repairs order violations without raising cost.
//!
//! Also hosts the 22-vertex fixture whose (2,2)-demand optima all violate
//! the pairwise-reversal pattern — the reason the exact solver stops at one
//! backward demand.

use std::collections::HashMap;

use thiserror::Error;

use crate::graph::{Digraph, EdgeId, Instance, Walk};

/// One maximal stretch of edges appearing in both walks, in forward-walk
/// order; `backward_rank` is its position among the stretches as the
/// backward walk meets them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SharedSubpath {
    pub edges: Vec<EdgeId>,
    pub backward_rank: usize,
}

// spans of each run in both walks, for the rewiring splice
struct Runs {
    // (start, end) inclusive edge positions in f, in f order
    f_spans: Vec<(usize, usize)>,
    // backward rank per run, indexed like f_spans
    b_ranks: Vec<usize>,
    // position in b of every edge
    b_pos: HashMap<EdgeId, usize>,
}

fn decompose(f: &Walk, b: &Walk) -> Runs {
    let mut b_pos: HashMap<EdgeId, usize> = HashMap::new();
    for (i, &e) in b.edges.iter().enumerate() {
        b_pos.entry(e).or_insert(i);
    }
    // a run extends while both walks advance in lockstep
    let mut f_spans: Vec<(usize, usize)> = Vec::new();
    let mut prev: Option<(usize, usize)> = None;
    for (i, &e) in f.edges.iter().enumerate() {
        if let Some(&p) = b_pos.get(&e) {
            match prev {
                Some((fi, bi)) if fi + 1 == i && bi + 1 == p => {
                    f_spans.last_mut().expect("a run is open").1 = i;
                }
                _ => f_spans.push((i, i)),
            }
            prev = Some((i, p));
        }
    }
    // runs are contiguous in b, so the first forward edge is also the first
    // the backward walk meets
    let mut order: Vec<usize> = (0..f_spans.len()).collect();
    order.sort_by_key(|&r| b_pos[&f.edges[f_spans[r].0]]);
    let mut b_ranks = vec![0; f_spans.len()];
    for (rank, &r) in order.iter().enumerate() {
        b_ranks[r] = rank;
    }
    Runs { f_spans, b_ranks, b_pos }
}

/// Maximal shared stretches of `(f, b)`, ordered along `f`. Both walks are
/// expected to be edge-simple (the solvers and the reference oracle only
/// produce such walks); repeated edges resolve to first occurrences.
pub fn shared_subpaths(f: &Walk, b: &Walk) -> Vec<SharedSubpath> {
    let runs = decompose(f, b);
    runs.f_spans
        .iter()
        .zip(&runs.b_ranks)
        .map(|(&(start, end), &backward_rank)| SharedSubpath {
            edges: f.edges[start..=end].to_vec(),
            backward_rank,
        })
        .collect()
}

/// True when the backward walk meets the shared stretches in exactly the
/// reverse of their forward order. Zero or one stretch is trivially fine.
pub fn is_path_reverse_compatible(f: &Walk, b: &Walk) -> bool {
    let runs = decompose(f, b);
    let d = runs.b_ranks.len();
    runs.b_ranks.iter().enumerate().all(|(j, &r)| r == d - 1 - j)
}

/// A backward walk compatible with every forward walk of the set.
pub fn is_reverse_compatible(forward: &[Walk], b: &Walk) -> bool {
    forward.iter().all(|f| is_path_reverse_compatible(f, b))
}

/// Every backward walk compatible with every forward walk.
pub fn is_general_reverse_compatible(forward: &[Walk], backward: &[Walk]) -> bool {
    backward.iter().all(|b| is_reverse_compatible(forward, b))
}

/// Total number of shared stretches between `b` and each forward walk. Each
/// successful rewiring strictly decreases this, so it bounds the repair loop.
pub fn rank(forward: &[Walk], b: &Walk) -> usize {
    forward.iter().map(|f| decompose(f, b).f_spans.len()).sum()
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RewireError {
    #[error("forward walk {index} and the backward walk are already compatible")]
    AlreadyCompatible { index: usize },
    #[error("forward walks {a} and {b} share edge {edge}; rewiring needs edge-disjoint forward walks")]
    ForwardWalksShareEdges { a: usize, b: usize, edge: EdgeId },
    #[error("forward walk index {index} out of range")]
    BadIndex { index: usize },
}

/// One repair step on the backward walk against forward walk `index`: find
/// two shared stretches the backward walk meets in forward order (they exist
/// whenever the pair is incompatible, adjacent in forward order), and replace
/// the backward walk's span between them with the forward walk's span. The
/// result costs no more than the original solution and has strictly smaller
/// rank. Forward walks must be pairwise edge-disjoint.
pub fn rewire_step(forward: &[Walk], b: &Walk, index: usize) -> Result<Walk, RewireError> {
    if index >= forward.len() {
        return Err(RewireError::BadIndex { index });
    }
    let mut seen: HashMap<EdgeId, usize> = HashMap::new();
    for (i, f) in forward.iter().enumerate() {
        for &e in &f.edges {
            if let Some(&other) = seen.get(&e) {
                if other != i {
                    return Err(RewireError::ForwardWalksShareEdges { a: other, b: i, edge: e });
                }
            }
            seen.insert(e, i);
        }
    }

    let f = &forward[index];
    let runs = decompose(f, b);
    // smallest adjacent pair met in forward order along b; none means the
    // ranks strictly descend, i.e. the pair is compatible
    let Some(j) = (0..runs.b_ranks.len().saturating_sub(1))
        .find(|&j| runs.b_ranks[j] < runs.b_ranks[j + 1])
    else {
        return Err(RewireError::AlreadyCompatible { index });
    };

    let f_start = runs.f_spans[j].0;
    let f_end = runs.f_spans[j + 1].1;
    let b_start = runs.b_pos[&f.edges[f_start]];
    let b_end = runs.b_pos[&f.edges[f_end]];
    debug_assert!(b_start <= b_end);

    let mut edges = Vec::with_capacity(b_start + (f_end - f_start + 1) + (b.edges.len() - b_end - 1));
    edges.extend_from_slice(&b.edges[..b_start]);
    edges.extend_from_slice(&f.edges[f_start..=f_end]);
    edges.extend_from_slice(&b.edges[b_end + 1..]);
    Ok(Walk::new(edges))
}

/// Repeatedly rewires until the backward walk is compatible with every
/// forward walk; returns the repaired walk and the number of steps taken.
/// Terminates within the initial rank.
pub fn rewire_to_compatible(forward: &[Walk], b: &Walk) -> Result<(Walk, usize), RewireError> {
    let mut current = b.clone();
    let budget = rank(forward, &current) + 1;
    for steps in 0..budget {
        let Some(bad) = (0..forward.len()).find(|&i| !is_path_reverse_compatible(&forward[i], &current))
        else {
            return Ok((current, steps));
        };
        current = rewire_step(forward, &current, bad)?;
    }
    unreachable!("rank strictly decreases per step, the loop must finish within budget");
}

/// The 22-vertex, 30-edge fixture with demands (2, 2): two weight-1 chains
/// from s to t plus eight weight-0 cross edges. Its optimum is 22, and no
/// optimal solution has all its backward walks reversal-compatible with both
/// forward chains.
pub fn build_counterexample() -> Instance {
    fixture().0
}

/// The exhibited optimum of the fixture: the two chains forward, and the two
/// zigzag backward paths covering them. Prices at exactly 22.
pub fn counterexample_optimum() -> (Vec<Walk>, Vec<Walk>) {
    let (_, f, b) = fixture();
    (f, b)
}

fn fixture() -> (Instance, Vec<Walk>, Vec<Walk>) {
    // ids: s=0, t=1, u1..u10 = 2..=11, v1..v10 = 12..=21
    let s = 0u32;
    let t = 1u32;
    let u = |i: u32| 1 + i; // i in 1..=10
    let v = |i: u32| 11 + i;
    let mut g = Digraph::new(22);

    let s_u1 = g.add_edge(s, u(1), 1);
    let mut u_chain = Vec::new(); // u_chain[i-1]: u_i -> u_{i+1}
    for i in 1..=9 {
        u_chain.push(g.add_edge(u(i), u(i + 1), 1));
    }
    let u10_t = g.add_edge(u(10), t, 1);
    let s_v1 = g.add_edge(s, v(1), 1);
    let mut v_chain = Vec::new();
    for i in 1..=9 {
        v_chain.push(g.add_edge(v(i), v(i + 1), 1));
    }
    let v10_t = g.add_edge(v(10), t, 1);

    let t_v7 = g.add_edge(t, v(7), 0);
    let t_v9 = g.add_edge(t, v(9), 0);
    let v8_u3 = g.add_edge(v(8), u(3), 0);
    let v10_u1 = g.add_edge(v(10), u(1), 0);
    let u2_v1 = g.add_edge(u(2), v(1), 0);
    let v6_u5 = g.add_edge(v(6), u(5), 0);
    let u4_s = g.add_edge(u(4), s, 0);
    let u6_s = g.add_edge(u(6), s, 0);

    let mut p1 = vec![s_u1];
    p1.extend_from_slice(&u_chain);
    p1.push(u10_t);
    let mut p2 = vec![s_v1];
    p2.extend_from_slice(&v_chain);
    p2.push(v10_t);

    // t v7 v8 u3 u4 s
    let p3 = vec![t_v7, v_chain[6], v8_u3, u_chain[2], u4_s];
    // t v9 v10 u1 u2 v1 v2 v3 v4 v5 v6 u5 u6 s
    let mut p4 = vec![t_v9, v_chain[8], v10_u1, u_chain[0], u2_v1];
    p4.extend_from_slice(&v_chain[0..5]);
    p4.push(v6_u5);
    p4.push(u_chain[4]);
    p4.push(u6_s);

    let instance = Instance::new(g, s, t, 2, 2).expect("fixture is well-formed");
    (
        instance,
        vec![Walk::new(p1), Walk::new(p2)],
        vec![Walk::new(p3), Walk::new(p4)],
    )
}
