//! Brute-force reference optimizer, independent of the game search.
//!
//! Backward walks are enumerated outright: under non-negative weights some
//! optimum uses only simple t-to-s paths (dropping a cycle never raises any
//! traversal count). For each backward multiset the forward side is priced
//! exactly by a min-cost flow in which an edge already crossed backward
//! `b(e)` times offers its first `b(e)` forward crossings for free —
//! `max(f, b) = b + max(0, f - b)` — and costs its weight thereafter.
//! Everything enumerates in a fixed lexicographic order, so results and
//! reported optima are reproducible.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::time::Instant;

use itertools::Itertools;
use thiserror::Error;

use crate::graph::{Digraph, Instance, Solution, VertexId, Walk, Weight};

#[derive(Debug, Clone, Copy)]
pub struct FlowArc {
    pub tail: VertexId,
    pub head: VertexId,
    pub cap: u32,
    pub cost: Weight,
}

#[derive(Debug, Clone)]
pub struct FlowNetwork {
    pub n: u32,
    pub arcs: Vec<FlowArc>,
}

/// Exact min-cost flow of the given value by successive shortest augmenting
/// paths with Johnson potentials. `None` when the network cannot carry that
/// much flow.
pub fn min_cost_flow(net: &FlowNetwork, source: VertexId, sink: VertexId, value: u32) -> Option<Weight> {
    let n = net.n as usize;
    // paired residual arcs: forward at even indices, reverse at odd
    let mut to: Vec<u32> = Vec::with_capacity(net.arcs.len() * 2);
    let mut cap: Vec<u32> = Vec::with_capacity(net.arcs.len() * 2);
    let mut cost: Vec<i128> = Vec::with_capacity(net.arcs.len() * 2);
    let mut adj: Vec<Vec<u32>> = vec![Vec::new(); n];
    for a in &net.arcs {
        adj[a.tail as usize].push(to.len() as u32);
        to.push(a.head);
        cap.push(a.cap);
        cost.push(a.cost as i128);
        adj[a.head as usize].push(to.len() as u32);
        to.push(a.tail);
        cap.push(0);
        cost.push(-(a.cost as i128));
    }

    let mut potential = vec![0i128; n];
    let mut dist = vec![i128::MAX; n];
    let mut via = vec![u32::MAX; n]; // residual arc used to reach each vertex
    let mut total: i128 = 0;
    let mut shipped: u32 = 0;

    while shipped < value {
        dist.fill(i128::MAX);
        via.fill(u32::MAX);
        dist[source as usize] = 0;
        let mut heap: BinaryHeap<Reverse<(i128, u32)>> = BinaryHeap::new();
        heap.push(Reverse((0, source)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if d > dist[v as usize] {
                continue;
            }
            for &ai in &adj[v as usize] {
                if cap[ai as usize] == 0 {
                    continue;
                }
                let u = to[ai as usize];
                let reduced = d + cost[ai as usize] + potential[v as usize] - potential[u as usize];
                debug_assert!(reduced >= d, "reduced costs stay non-negative");
                if reduced < dist[u as usize] {
                    dist[u as usize] = reduced;
                    via[u as usize] = ai;
                    heap.push(Reverse((reduced, u)));
                }
            }
        }
        if dist[sink as usize] == i128::MAX {
            return None;
        }
        for v in 0..n {
            if dist[v] != i128::MAX {
                potential[v] += dist[v];
            }
        }
        // bottleneck along the augmenting path, capped by what is still owed
        let mut push = value - shipped;
        let mut v = sink as usize;
        while v != source as usize {
            let ai = via[v] as usize;
            push = push.min(cap[ai]);
            v = to[ai ^ 1] as usize;
        }
        let mut v = sink as usize;
        while v != source as usize {
            let ai = via[v] as usize;
            cap[ai] -= push;
            cap[ai ^ 1] += push;
            total += cost[ai] * push as i128;
            v = to[ai ^ 1] as usize;
        }
        shipped += push;
    }
    u64::try_from(total).ok()
}

#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    /// Cap on simple paths enumerated per direction.
    pub max_paths: usize,
    pub deadline: Option<Instant>,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_paths: 100_000,
            deadline: None,
        }
    }
}

#[derive(Debug, Error, Clone, Copy, PartialEq, Eq)]
pub enum OracleError {
    #[error("simple-path enumeration exceeded the cap of {max_paths}")]
    LimitExceeded { max_paths: usize },
    #[error("oracle hit its time budget")]
    Timeout,
}

fn check_deadline(limits: &OracleLimits) -> Result<(), OracleError> {
    match limits.deadline {
        Some(d) if Instant::now() >= d => Err(OracleError::Timeout),
        _ => Ok(()),
    }
}

/// All simple (vertex-repetition-free) paths from `from` to `to`, as edge-id
/// walks, enumerated depth-first with out-edges ordered by (head, edge id).
/// Parallel edges yield distinct paths.
pub fn simple_paths(
    graph: &Digraph,
    from: VertexId,
    to: VertexId,
    limits: &OracleLimits,
) -> Result<Vec<Walk>, OracleError> {
    assert_ne!(from, to, "simple-path enumeration needs distinct endpoints");
    let n = graph.n() as usize;
    let mut ordered: Vec<Vec<u32>> = Vec::with_capacity(n);
    for v in 0..graph.n() {
        let mut es: Vec<u32> = graph
            .out_edges(v)
            .iter()
            .copied()
            .filter(|&e| graph.edge(e).head != graph.edge(e).tail)
            .collect();
        es.sort_by_key(|&e| (graph.edge(e).head, e));
        ordered.push(es);
    }

    let mut paths = Vec::new();
    let mut visited = vec![false; n];
    let mut stack: Vec<u32> = Vec::new();
    visited[from as usize] = true;

    #[allow(clippy::too_many_arguments)] // recursion plumbing, local to this function
    fn dfs(
        at: VertexId,
        to: VertexId,
        ordered: &[Vec<u32>],
        graph: &Digraph,
        visited: &mut [bool],
        stack: &mut Vec<u32>,
        paths: &mut Vec<Walk>,
        limits: &OracleLimits,
    ) -> Result<(), OracleError> {
        for &e in &ordered[at as usize] {
            let head = graph.edge(e).head;
            if head == to {
                if paths.len() >= limits.max_paths {
                    return Err(OracleError::LimitExceeded {
                        max_paths: limits.max_paths,
                    });
                }
                stack.push(e);
                paths.push(Walk::new(stack.clone()));
                stack.pop();
                continue;
            }
            if visited[head as usize] {
                continue;
            }
            visited[head as usize] = true;
            stack.push(e);
            dfs(head, to, ordered, graph, visited, stack, paths, limits)?;
            stack.pop();
            visited[head as usize] = false;
        }
        check_deadline(limits)
    }

    dfs(from, to, &ordered, graph, &mut visited, &mut stack, &mut paths, limits)?;
    Ok(paths)
}

/// Forward price against fixed backward usage: expand every edge into a
/// free tier of capacity `min(b(e), k1)` plus a paid tier at the edge weight,
/// then ship k1 units from s to t.
fn forward_price(instance: &Instance, backward_use: &[u32]) -> Option<Weight> {
    let g = &instance.graph;
    let mut arcs = Vec::with_capacity(g.m() as usize * 2);
    for (i, e) in g.edges().iter().enumerate() {
        if e.tail == e.head {
            continue;
        }
        let free = backward_use[i].min(instance.k1);
        if free > 0 {
            arcs.push(FlowArc {
                tail: e.tail,
                head: e.head,
                cap: free,
                cost: 0,
            });
        }
        if free < instance.k1 {
            arcs.push(FlowArc {
                tail: e.tail,
                head: e.head,
                cap: instance.k1 - free,
                cost: e.weight,
            });
        }
    }
    let net = FlowNetwork { n: g.n(), arcs };
    min_cost_flow(&net, instance.s, instance.t, instance.k1)
}

/// Exact optimum of an instance by exhaustive search, or `None` when the
/// demands cannot be met at all.
pub fn oracle_opt(instance: &Instance, limits: &OracleLimits) -> Result<Option<Weight>, OracleError> {
    let g = &instance.graph;
    let backward = simple_paths(g, instance.t, instance.s, limits)?;
    if backward.is_empty() {
        return Ok(None);
    }
    // forward feasibility does not depend on the backward choice
    if forward_price(instance, &vec![0; g.m() as usize]).is_none() {
        return Ok(None);
    }

    let weights: Vec<Weight> = backward
        .iter()
        .map(|w| w.weight(g).expect("instance weight guard"))
        .collect();
    let mut best: Option<Weight> = None;
    let mut usage = vec![0u32; g.m() as usize];
    for combo in (0..backward.len()).combinations_with_replacement(instance.k2 as usize) {
        check_deadline(limits)?;
        let mut bwd_cost: Weight = 0;
        for &i in &combo {
            bwd_cost = bwd_cost.checked_add(weights[i]).expect("instance weight guard");
        }
        if best.is_some_and(|b| bwd_cost >= b) {
            continue; // the flow cannot be negative
        }
        usage.fill(0);
        for &i in &combo {
            for &e in &backward[i].edges {
                usage[e as usize] += 1;
            }
        }
        let flow = forward_price(instance, &usage).expect("feasibility checked above");
        let total = bwd_cost.checked_add(flow).expect("instance weight guard");
        if best.map_or(true, |b| total < b) {
            best = Some(total);
        }
    }
    Ok(best)
}

/// Every optimal solution made of simple paths, as multisets of forward and
/// backward paths, in lexicographic enumeration order. Empty when the
/// instance is infeasible.
pub fn oracle_enumerate_optima(
    instance: &Instance,
    limits: &OracleLimits,
) -> Result<Vec<Solution>, OracleError> {
    let Some(opt) = oracle_opt(instance, limits)? else {
        return Ok(Vec::new());
    };
    let g = &instance.graph;
    let forward = simple_paths(g, instance.s, instance.t, limits)?;
    let backward = simple_paths(g, instance.t, instance.s, limits)?;
    let fwd_weight: Vec<Weight> = forward.iter().map(|w| w.weight(g).unwrap()).collect();
    let bwd_weight: Vec<Weight> = backward.iter().map(|w| w.weight(g).unwrap()).collect();

    let m = g.m() as usize;
    let mut fuse = vec![0u64; m];
    let mut buse = vec![0u64; m];
    let mut optima = Vec::new();
    for fc in (0..forward.len()).combinations_with_replacement(instance.k1 as usize) {
        check_deadline(limits)?;
        // a side's own weight already lower-bounds the joint cost
        let fwd_cost: Weight = fc.iter().map(|&i| fwd_weight[i]).sum();
        if fwd_cost > opt {
            continue;
        }
        fuse.fill(0);
        for &i in &fc {
            for &e in &forward[i].edges {
                fuse[e as usize] += 1;
            }
        }
        for bc in (0..backward.len()).combinations_with_replacement(instance.k2 as usize) {
            let bwd_cost: Weight = bc.iter().map(|&i| bwd_weight[i]).sum();
            if bwd_cost > opt {
                continue;
            }
            buse.fill(0);
            for &i in &bc {
                for &e in &backward[i].edges {
                    buse[e as usize] += 1;
                }
            }
            let mut cost: Weight = 0;
            for (i, e) in g.edges().iter().enumerate() {
                cost += e.weight * fuse[i].max(buse[i]); // in range: both sides were
                if cost > opt {
                    break;
                }
            }
            if cost == opt {
                optima.push(Solution {
                    forward: fc.iter().map(|&i| forward[i].clone()).collect(),
                    backward: bc.iter().map(|&i| backward[i].clone()).collect(),
                    cost,
                });
            }
        }
    }
    Ok(optima)
}
