//! Directed multigraphs, walks over them, and the max-multiplicity cost
//! `sum_e w(e) * max(forward uses of e, backward uses of e)` that every
//! solver in this crate optimizes.

use thiserror::Error;

pub type VertexId = u32;
pub type EdgeId = u32;

/// Non-negative 64-bit weight. Accumulation is always overflow-checked;
/// a sum that does not fit is reported as an error, never wrapped.
pub type Weight = u64;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Edge {
    pub tail: VertexId,
    pub head: VertexId,
    pub weight: Weight,
}

/// Directed multigraph. Parallel edges and self-loops are representable;
/// self-loops are ignored by the solvers (they can never help under
/// non-negative weights).
#[derive(Debug, Clone, Default)]
pub struct Digraph {
    edges: Vec<Edge>,
    out: Vec<Vec<EdgeId>>,
    inn: Vec<Vec<EdgeId>>,
}

impl Digraph {
    pub fn new(n: u32) -> Self {
        Digraph {
            edges: Vec::new(),
            out: vec![Vec::new(); n as usize],
            inn: vec![Vec::new(); n as usize],
        }
    }

    pub fn n(&self) -> u32 {
        self.out.len() as u32
    }

    pub fn m(&self) -> u32 {
        self.edges.len() as u32
    }

    /// Appends an edge and returns its id. Ids are dense and stable: the
    /// i-th call returns i.
    pub fn add_edge(&mut self, tail: VertexId, head: VertexId, weight: Weight) -> EdgeId {
        assert!(tail < self.n() && head < self.n(), "edge endpoint out of range");
        let id = self.edges.len() as EdgeId;
        self.edges.push(Edge { tail, head, weight });
        self.out[tail as usize].push(id);
        self.inn[head as usize].push(id);
        id
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e as usize]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn out_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.out[v as usize]
    }

    pub fn in_edges(&self, v: VertexId) -> &[EdgeId] {
        &self.inn[v as usize]
    }

    pub fn out_degree(&self, v: VertexId) -> usize {
        self.out[v as usize].len()
    }

    pub fn in_degree(&self, v: VertexId) -> usize {
        self.inn[v as usize].len()
    }

    /// Sum of all edge weights, wide enough that it cannot overflow.
    pub fn weight_sum(&self) -> u128 {
        self.edges.iter().map(|e| e.weight as u128).sum()
    }

    /// The same graph with every edge flipped. Edge ids are preserved.
    pub fn reversed(&self) -> Digraph {
        let mut g = Digraph::new(self.n());
        for e in &self.edges {
            g.add_edge(e.head, e.tail, e.weight);
        }
        g
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("walk is empty")]
    Empty,
    #[error("edge id {0} out of range")]
    UnknownEdge(EdgeId),
    #[error("edge {edge} leaves {found} but the walk is at {expected}")]
    Broken {
        edge: EdgeId,
        expected: VertexId,
        found: VertexId,
    },
}

/// A walk is an ordered edge-id sequence; the vertex sequence is implied.
/// Vertices and edges may repeat.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Walk {
    pub edges: Vec<EdgeId>,
}

impl Walk {
    pub fn new(edges: Vec<EdgeId>) -> Self {
        Walk { edges }
    }

    pub fn empty() -> Self {
        Walk { edges: Vec::new() }
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    /// Checks that consecutive edges chain head-to-tail in `graph`.
    pub fn validate(&self, graph: &Digraph) -> Result<(), WalkError> {
        let mut at: Option<VertexId> = None;
        for &e in &self.edges {
            if e >= graph.m() {
                return Err(WalkError::UnknownEdge(e));
            }
            let edge = graph.edge(e);
            if let Some(v) = at {
                if edge.tail != v {
                    return Err(WalkError::Broken {
                        edge: e,
                        expected: v,
                        found: edge.tail,
                    });
                }
            }
            at = Some(edge.head);
        }
        Ok(())
    }

    pub fn start(&self, graph: &Digraph) -> Option<VertexId> {
        self.edges.first().map(|&e| graph.edge(e).tail)
    }

    pub fn end(&self, graph: &Digraph) -> Option<VertexId> {
        self.edges.last().map(|&e| graph.edge(e).head)
    }

    /// Vertex sequence, one longer than the edge sequence. Empty walks give
    /// an empty sequence since they pin no vertex.
    pub fn vertices(&self, graph: &Digraph) -> Vec<VertexId> {
        let mut vs = Vec::with_capacity(self.edges.len() + 1);
        for (i, &e) in self.edges.iter().enumerate() {
            let edge = graph.edge(e);
            if i == 0 {
                vs.push(edge.tail);
            }
            vs.push(edge.head);
        }
        vs
    }

    /// Checked total weight of the walked edges, with multiplicity.
    pub fn weight(&self, graph: &Digraph) -> Option<Weight> {
        let mut sum: Weight = 0;
        for &e in &self.edges {
            sum = sum.checked_add(graph.edge(e).weight)?;
        }
        Some(sum)
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InstanceError {
    #[error("terminal {0} out of range")]
    TerminalOutOfRange(VertexId),
    #[error("source and sink terminals must differ")]
    EqualTerminals,
    #[error("demands must be positive, got ({k1}, {k2})")]
    ZeroDemand { k1: u32, k2: u32 },
    #[error("total edge weight times demand does not fit in 64 bits")]
    WeightRange,
}

/// An edge-weighted problem instance: find `k1` s-to-t walks and `k2`
/// t-to-s walks minimizing the max-multiplicity cost.
#[derive(Debug, Clone)]
pub struct Instance {
    pub graph: Digraph,
    pub s: VertexId,
    pub t: VertexId,
    pub k1: u32,
    pub k2: u32,
}

impl Instance {
    /// Validates terminals, demands, and the weight-range guard: the sum of
    /// all edge weights times (k1 + k2) must be representable, so that no
    /// downstream simple-path accumulation can overflow.
    pub fn new(graph: Digraph, s: VertexId, t: VertexId, k1: u32, k2: u32) -> Result<Self, InstanceError> {
        if s >= graph.n() {
            return Err(InstanceError::TerminalOutOfRange(s));
        }
        if t >= graph.n() {
            return Err(InstanceError::TerminalOutOfRange(t));
        }
        if s == t {
            return Err(InstanceError::EqualTerminals);
        }
        if k1 == 0 || k2 == 0 {
            return Err(InstanceError::ZeroDemand { k1, k2 });
        }
        let budget = graph.weight_sum().checked_mul((k1 + k2) as u128);
        match budget {
            Some(b) if b <= Weight::MAX as u128 => {}
            _ => return Err(InstanceError::WeightRange),
        }
        Ok(Instance { graph, s, t, k1, k2 })
    }

    /// The instance turned around: every edge reversed and the terminals
    /// exchanged, demands untouched. Forward walks of one instance are the
    /// reverse traversals of the other's, so the optimum is unchanged.
    ///
    /// Note the demands must NOT be swapped here: reversing edges and
    /// exchanging terminals already maps forward onto forward. The demand
    /// swap is its own symmetry — `(graph, t, s, k2, k1)` on the unreversed
    /// graph — and composing both leaves the terminals in place, not
    /// exchanged.
    pub fn reversed(&self) -> Instance {
        Instance {
            graph: self.graph.reversed(),
            s: self.t,
            t: self.s,
            k1: self.k1,
            k2: self.k2,
        }
    }

    /// The same graph with the terminal roles exchanged and the demands
    /// swapped with them. Backward walks become forward walks and vice
    /// versa; the max-of-both-directions cost is blind to the exchange, so
    /// the optimum is unchanged.
    pub fn role_swapped(&self) -> Instance {
        Instance {
            graph: self.graph.clone(),
            s: self.t,
            t: self.s,
            k1: self.k2,
            k2: self.k1,
        }
    }
}

/// A candidate or optimal solution: `forward[i]` walks s to t, `backward[j]`
/// walks t to s, and `cost` is the max-multiplicity cost of exactly these
/// walks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Solution {
    pub forward: Vec<Walk>,
    pub backward: Vec<Walk>,
    pub cost: Weight,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CostError {
    #[error("expected {expected} {side} walks, got {got}")]
    WalkCount {
        side: &'static str,
        expected: u32,
        got: usize,
    },
    #[error("{side} walk {index} invalid: {source}")]
    BadWalk {
        side: &'static str,
        index: usize,
        source: WalkError,
    },
    #[error("{side} walk {index} runs {got_start}->{got_end}, expected {want_start}->{want_end}")]
    Endpoints {
        side: &'static str,
        index: usize,
        want_start: VertexId,
        want_end: VertexId,
        got_start: VertexId,
        got_end: VertexId,
    },
    #[error("cost exceeds 64 bits")]
    Overflow,
}

fn check_side(
    instance: &Instance,
    side: &'static str,
    walks: &[Walk],
    expected: u32,
    want_start: VertexId,
    want_end: VertexId,
) -> Result<(), CostError> {
    if walks.len() != expected as usize {
        return Err(CostError::WalkCount {
            side,
            expected,
            got: walks.len(),
        });
    }
    for (index, w) in walks.iter().enumerate() {
        w.validate(&instance.graph)
            .and_then(|()| if w.is_empty() { Err(WalkError::Empty) } else { Ok(()) })
            .map_err(|source| CostError::BadWalk { side, index, source })?;
        let got_start = w.start(&instance.graph).unwrap();
        let got_end = w.end(&instance.graph).unwrap();
        if got_start != want_start || got_end != want_end {
            return Err(CostError::Endpoints {
                side,
                index,
                want_start,
                want_end,
                got_start,
                got_end,
            });
        }
    }
    Ok(())
}

/// Exact cost of a candidate solution: for every edge, the larger of its
/// forward and backward traversal counts (with multiplicity — a walk that
/// crosses an edge twice contributes two), times the edge weight.
pub fn evaluate_phi_cost(instance: &Instance, forward: &[Walk], backward: &[Walk]) -> Result<Weight, CostError> {
    check_side(instance, "forward", forward, instance.k1, instance.s, instance.t)?;
    check_side(instance, "backward", backward, instance.k2, instance.t, instance.s)?;

    let m = instance.graph.m() as usize;
    let mut fwd = vec![0u64; m];
    let mut bwd = vec![0u64; m];
    for w in forward {
        for &e in &w.edges {
            fwd[e as usize] += 1;
        }
    }
    for w in backward {
        for &e in &w.edges {
            bwd[e as usize] += 1;
        }
    }

    let mut cost: Weight = 0;
    for (i, edge) in instance.graph.edges().iter().enumerate() {
        let uses = fwd[i].max(bwd[i]);
        let contrib = edge.weight.checked_mul(uses).ok_or(CostError::Overflow)?;
        cost = cost.checked_add(contrib).ok_or(CostError::Overflow)?;
    }
    Ok(cost)
}

/// A vertex-weighted instance: edges are free, every vertex visit is billed
/// at the vertex's weight (terminals carry weight zero, they are part of
/// every walk anyway).
#[derive(Debug, Clone)]
pub struct VertexWeightedInstance {
    pub graph: Digraph,
    pub vertex_weights: Vec<Weight>,
    pub s: VertexId,
    pub t: VertexId,
    pub k1: u32,
    pub k2: u32,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VertexWeightedError {
    #[error("need one weight per vertex: {got} weights for {n} vertices")]
    WeightCount { got: usize, n: u32 },
    #[error("terminal {0} must have weight zero")]
    WeightedTerminal(VertexId),
    #[error("graph edges must carry weight zero in the vertex-weighted model")]
    WeightedEdge,
    #[error(transparent)]
    Instance(#[from] InstanceError),
}

impl VertexWeightedInstance {
    pub fn new(
        graph: Digraph,
        vertex_weights: Vec<Weight>,
        s: VertexId,
        t: VertexId,
        k1: u32,
        k2: u32,
    ) -> Result<Self, VertexWeightedError> {
        if vertex_weights.len() != graph.n() as usize {
            return Err(VertexWeightedError::WeightCount {
                got: vertex_weights.len(),
                n: graph.n(),
            });
        }
        if graph.edges().iter().any(|e| e.weight != 0) {
            return Err(VertexWeightedError::WeightedEdge);
        }
        // Reuse the plain-instance checks for terminals and demands.
        let probe = Instance::new(graph, s, t, k1, k2)?;
        let Instance { graph, s, t, k1, k2 } = probe;
        for &term in &[s, t] {
            if vertex_weights[term as usize] != 0 {
                return Err(VertexWeightedError::WeightedTerminal(term));
            }
        }
        Ok(VertexWeightedInstance {
            graph,
            vertex_weights,
            s,
            t,
            k1,
            k2,
        })
    }
}

/// Where each original vertex landed after splitting: terminals keep a single
/// image (`v_in == v_out`), every other vertex gets an in-copy and an out-copy
/// joined by the edge that carries its old weight.
#[derive(Debug, Clone)]
pub struct VertexSplit {
    pub v_in: Vec<VertexId>,
    pub v_out: Vec<VertexId>,
}

/// Vertex-weighted to edge-weighted: split each non-terminal `v` into
/// `(v_in, v_out)` bridged by an edge of weight `w(v)`; all original edges
/// become weight-0 edges between the appropriate copies. The optimum is
/// preserved exactly.
pub fn vertex_to_edge_weighted(vw: &VertexWeightedInstance) -> (Instance, VertexSplit) {
    let n = vw.graph.n();
    let mut v_in = vec![0 as VertexId; n as usize];
    let mut v_out = vec![0 as VertexId; n as usize];
    let mut next: VertexId = 0;
    for v in 0..n {
        if v == vw.s || v == vw.t {
            v_in[v as usize] = next;
            v_out[v as usize] = next;
            next += 1;
        } else {
            v_in[v as usize] = next;
            v_out[v as usize] = next + 1;
            next += 2;
        }
    }
    let mut g = Digraph::new(next);
    for e in vw.graph.edges() {
        g.add_edge(v_out[e.tail as usize], v_in[e.head as usize], 0);
    }
    for v in 0..n {
        if v != vw.s && v != vw.t {
            g.add_edge(v_in[v as usize], v_out[v as usize], vw.vertex_weights[v as usize]);
        }
    }
    let instance = Instance::new(g, v_in[vw.s as usize], v_in[vw.t as usize], vw.k1, vw.k2)
        .expect("split graph inherits a valid weight budget");
    (instance, VertexSplit { v_in, v_out })
}

/// Edge-weighted to vertex-weighted: subdivide every edge with a fresh vertex
/// that carries the edge's weight; all original vertices weigh zero. Returns
/// the subdivider vertex chosen for each original edge id. The optimum is
/// preserved exactly.
pub fn edge_to_vertex_weighted(instance: &Instance) -> (VertexWeightedInstance, Vec<VertexId>) {
    let n = instance.graph.n();
    let m = instance.graph.m();
    let mut g = Digraph::new(n + m);
    let mut weights = vec![0 as Weight; (n + m) as usize];
    let mut subdivider = Vec::with_capacity(m as usize);
    for (i, e) in instance.graph.edges().iter().enumerate() {
        let b = n + i as u32;
        g.add_edge(e.tail, b, 0);
        g.add_edge(b, e.head, 0);
        weights[b as usize] = e.weight;
        subdivider.push(b);
    }
    let vw = VertexWeightedInstance::new(g, weights, instance.s, instance.t, instance.k1, instance.k2)
        .expect("subdivision preserves instance validity");
    (vw, subdivider)
}
