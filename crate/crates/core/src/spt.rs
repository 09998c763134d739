//! All-pairs shortest paths with predecessor extraction.
//!
//! One Dijkstra run per source. Ties are settled lowest-vertex-id first and
//! edges relax in storage order, so the table (and every walk extracted from
//! it) is identical across runs — downstream search results depend on it.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use crate::graph::{Digraph, EdgeId, VertexId, Walk, Weight};

#[derive(Debug, Clone)]
pub struct ShortestPathTable {
    n: usize,
    // row-major [source][target]
    dist: Vec<Option<Weight>>,
    pred: Vec<Option<EdgeId>>,
}

impl ShortestPathTable {
    pub fn dist(&self, from: VertexId, to: VertexId) -> Option<Weight> {
        self.dist[from as usize * self.n + to as usize]
    }

    /// Last edge on the chosen shortest walk from `from` to `to`.
    pub fn pred_edge(&self, from: VertexId, to: VertexId) -> Option<EdgeId> {
        self.pred[from as usize * self.n + to as usize]
    }

    /// The concrete shortest walk backing `dist(from, to)`, rebuilt from the
    /// predecessor edges. `None` when `to` is unreachable; the empty walk
    /// when `from == to`.
    pub fn extract_walk(&self, graph: &Digraph, from: VertexId, to: VertexId) -> Option<Walk> {
        self.dist(from, to)?;
        let mut edges = Vec::new();
        let mut at = to;
        while at != from {
            let e = self.pred_edge(from, at).expect("finite dist implies a predecessor chain");
            edges.push(e);
            at = graph.edge(e).tail;
        }
        edges.reverse();
        Some(Walk::new(edges))
    }
}

/// Runs Dijkstra from every vertex. Self-loops are skipped: they can never
/// shorten a walk under non-negative weights.
pub fn all_pairs_shortest_paths(graph: &Digraph) -> ShortestPathTable {
    let n = graph.n() as usize;
    let mut table = ShortestPathTable {
        n,
        dist: vec![None; n * n],
        pred: vec![None; n * n],
    };
    let mut heap: BinaryHeap<Reverse<(Weight, VertexId)>> = BinaryHeap::new();
    let mut settled = vec![false; n];
    for source in 0..n as u32 {
        let row = source as usize * n;
        settled.fill(false);
        heap.clear();
        table.dist[row + source as usize] = Some(0);
        heap.push(Reverse((0, source)));
        while let Some(Reverse((d, v))) = heap.pop() {
            if settled[v as usize] {
                continue;
            }
            settled[v as usize] = true;
            for &e in graph.out_edges(v) {
                let edge = graph.edge(e);
                if edge.head == edge.tail {
                    continue;
                }
                let nd = d
                    .checked_add(edge.weight)
                    .expect("instance weight guard keeps path sums in range");
                let slot = row + edge.head as usize;
                if table.dist[slot].map_or(true, |old| nd < old) {
                    table.dist[slot] = Some(nd);
                    table.pred[slot] = Some(e);
                    heap.push(Reverse((nd, edge.head)));
                }
            }
        }
    }
    table
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distances_on_a_small_cycle() {
        let mut g = Digraph::new(4);
        g.add_edge(0, 1, 2);
        g.add_edge(1, 2, 3);
        g.add_edge(2, 3, 4);
        g.add_edge(3, 0, 5);
        let spt = all_pairs_shortest_paths(&g);
        assert_eq!(spt.dist(0, 3), Some(9));
        assert_eq!(spt.dist(3, 0), Some(5));
        assert_eq!(spt.dist(2, 1), Some(4 + 5 + 2));
        assert_eq!(spt.dist(1, 1), Some(0));
    }

    #[test]
    fn unreachable_is_none_and_self_walk_is_empty() {
        let mut g = Digraph::new(3);
        g.add_edge(0, 1, 1);
        let spt = all_pairs_shortest_paths(&g);
        assert_eq!(spt.dist(1, 0), None);
        assert_eq!(spt.dist(0, 2), None);
        assert!(spt.extract_walk(&g, 1, 0).is_none());
        assert_eq!(spt.extract_walk(&g, 2, 2), Some(Walk::empty()));
    }

    #[test]
    fn extracted_walk_matches_distance() {
        let mut g = Digraph::new(5);
        g.add_edge(0, 1, 2);
        g.add_edge(1, 4, 2);
        g.add_edge(0, 2, 1);
        g.add_edge(2, 3, 1);
        g.add_edge(3, 4, 1);
        let spt = all_pairs_shortest_paths(&g);
        let w = spt.extract_walk(&g, 0, 4).unwrap();
        assert!(w.validate(&g).is_ok());
        assert_eq!(w.start(&g), Some(0));
        assert_eq!(w.end(&g), Some(4));
        assert_eq!(w.weight(&g), Some(spt.dist(0, 4).unwrap()));
        assert_eq!(w.vertices(&g), vec![0, 2, 3, 4]);
    }

    #[test]
    fn parallel_edges_pick_the_cheaper_copy() {
        let mut g = Digraph::new(2);
        g.add_edge(0, 1, 9);
        let cheap = g.add_edge(0, 1, 3);
        let spt = all_pairs_shortest_paths(&g);
        assert_eq!(spt.dist(0, 1), Some(3));
        assert_eq!(spt.extract_walk(&g, 0, 1).unwrap().edges, vec![cheap]);
    }

    #[test]
    fn zero_weight_cycles_terminate() {
        let mut g = Digraph::new(3);
        g.add_edge(0, 1, 0);
        g.add_edge(1, 0, 0);
        g.add_edge(1, 1, 0);
        g.add_edge(1, 2, 7);
        let spt = all_pairs_shortest_paths(&g);
        assert_eq!(spt.dist(0, 2), Some(7));
        let w = spt.extract_walk(&g, 0, 2).unwrap();
        assert_eq!(w.vertices(&g), vec![0, 1, 2]);
    }
}
