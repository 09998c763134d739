//! Reduction pipeline from grid tiling: lower-bound instances whose optimum
//! certifies the solver's running-time exponent is best possible.
//!
//! A grid-tiling instance is a `k × k` array of sets `S[i][j] ⊆ [n] × [n]`;
//! a solution is one value per index, `δ : [k] → [n]`, with
//! `(δ[i], δ[j]) ∈ S[i][j]` for every ordered pair. Deciding existence is
//! hard in `k` already when the diagonal sets only carry pairs of equal
//! coordinates (the form [`clique_to_gridtiling`] produces), and
//! [`gridtiling_to_scss`] turns any such instance into a demand-`(2k−1, 1)`
//! two-terminal connection instance whose optimum is at most [`GadgetParams::beta`]
//! exactly when the tiling is solvable. Because the gadget optimum separates
//! at `β`, a faster exact solver would decide grid tiling faster than its
//! known limits allow.
//!
//! The gadget: one "row" strip per index `i` that the single backward walk
//! sweeps, one "column" strip per index `j` carried by a forward walk, and
//! `k − 1` expensive connector edges between consecutive row strips that are
//! amortized by otherwise-useless forward walks. Entry/exit weights (scaled
//! by [`GadgetParams::delta`]) force each strip crossing to stay at one
//! level — the strip's chosen value — and tiny two-step shortcuts, present
//! only at coordinates in `S[i][j]`, are the sole way to reach the target
//! cost: the backward sweep and a column walk can share a shortcut's second
//! half only when row level and column level pick an allowed pair.

use std::collections::BTreeMap;
use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    evaluate_phi_cost, Digraph, Instance, InstanceError, Solution, VertexId, Walk, Weight,
};
use crate::io::walk_from_vertices;

/// A `k × k` grid of pair sets over `[n] × [n]`, 1-based. Diagonal sets may
/// only contain pairs of equal coordinates, which keeps the one-assignment
/// solution notion equivalent to choosing row and column values separately.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridTilingInstance {
    pub k: u32,
    pub n: u32,
    sets: Vec<BTreeSet<(u32, u32)>>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GridTilingError {
    #[error("k and n must be positive, got k={k}, n={n}")]
    ZeroDimension { k: u32, n: u32 },
    #[error("expected {expected} sets (k²), got {got}")]
    SetCount { expected: usize, got: usize },
    #[error("set S[{i}][{j}] holds {pair:?}, outside [1, {n}]²")]
    CoordinateOutOfRange { i: u32, j: u32, pair: (u32, u32), n: u32 },
    #[error("diagonal set S[{i}][{i}] holds the unequal pair {pair:?}")]
    OffDiagonalEntry { i: u32, pair: (u32, u32) },
}

impl GridTilingInstance {
    /// `sets` is row-major: `S[i][j]` at index `(i−1)·k + (j−1)`.
    pub fn new(
        k: u32,
        n: u32,
        sets: Vec<BTreeSet<(u32, u32)>>,
    ) -> Result<Self, GridTilingError> {
        if k == 0 || n == 0 {
            return Err(GridTilingError::ZeroDimension { k, n });
        }
        let expected = (k as usize) * (k as usize);
        if sets.len() != expected {
            return Err(GridTilingError::SetCount { expected, got: sets.len() });
        }
        for i in 1..=k {
            for j in 1..=k {
                for &pair in &sets[((i - 1) * k + (j - 1)) as usize] {
                    let (x, y) = pair;
                    if x == 0 || y == 0 || x > n || y > n {
                        return Err(GridTilingError::CoordinateOutOfRange { i, j, pair, n });
                    }
                    if i == j && x != y {
                        return Err(GridTilingError::OffDiagonalEntry { i, pair });
                    }
                }
            }
        }
        Ok(Self { k, n, sets })
    }

    /// `S[i][j]`, 1-based.
    pub fn set(&self, i: u32, j: u32) -> &BTreeSet<(u32, u32)> {
        assert!((1..=self.k).contains(&i) && (1..=self.k).contains(&j));
        &self.sets[((i - 1) * self.k + (j - 1)) as usize]
    }

    /// Does `delta` (1-based values, one per index) satisfy every cell?
    pub fn is_solution(&self, delta: &[u32]) -> bool {
        delta.len() == self.k as usize
            && delta.iter().all(|&v| (1..=self.n).contains(&v))
            && (1..=self.k).all(|i| {
                (1..=self.k).all(|j| {
                    self.set(i, j).contains(&(delta[(i - 1) as usize], delta[(j - 1) as usize]))
                })
            })
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CliqueReductionError {
    #[error("edge ({u}, {v}) mentions a vertex outside 0..{n}")]
    EdgeOutOfRange { u: u32, v: u32, n: u32 },
    #[error("k and n must be positive, got k={k}, n={n}")]
    ZeroDimension { k: u32, n: u32 },
}

/// Encodes "does the undirected graph on `0..n` have a k-clique?" as grid
/// tiling: diagonal cells accept every vertex paired with itself, other
/// cells accept exactly the adjacent (1-based) pairs, so one value per index
/// means `k` pairwise-adjacent choices. Self-loops are ignored; a clique
/// never uses them.
pub fn clique_to_gridtiling(
    n: u32,
    edges: &[(u32, u32)],
    k: u32,
) -> Result<GridTilingInstance, CliqueReductionError> {
    if k == 0 || n == 0 {
        return Err(CliqueReductionError::ZeroDimension { k, n });
    }
    let mut adjacent = BTreeSet::new();
    for &(u, v) in edges {
        if u >= n || v >= n {
            return Err(CliqueReductionError::EdgeOutOfRange { u, v, n });
        }
        if u != v {
            adjacent.insert((u + 1, v + 1));
            adjacent.insert((v + 1, u + 1));
        }
    }
    let diagonal: BTreeSet<(u32, u32)> = (1..=n).map(|v| (v, v)).collect();
    let mut sets = Vec::with_capacity((k as usize) * (k as usize));
    for i in 1..=k {
        for j in 1..=k {
            sets.push(if i == j { diagonal.clone() } else { adjacent.clone() });
        }
    }
    Ok(GridTilingInstance::new(k, n, sets).expect("clique encoding is well-formed"))
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("assignment search stopped after {budget} assignments")]
pub struct BruteforceBudget {
    pub budget: u64,
}

/// First solution in lexicographic order, or `None`. Stops with an error
/// after examining `budget` assignments (there are `n^k` in total).
pub fn gridtiling_bruteforce(
    gt: &GridTilingInstance,
    budget: u64,
) -> Result<Option<Vec<u32>>, BruteforceBudget> {
    for (examined, delta) in (0..gt.k).map(|_| 1..=gt.n).multi_cartesian_product().enumerate() {
        if examined as u64 == budget {
            return Err(BruteforceBudget { budget });
        }
        if gt.is_solution(&delta) {
            return Ok(Some(delta));
        }
    }
    Ok(None)
}

/// Weights and targets of the gadget for a `k × n` tiling instance. Levels
/// inside the gadget run over `1..=n_eff` where `n_eff = n + 1`: tiling
/// coordinates are shifted up by one so every usable level has a
/// predecessor in both directions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GadgetParams {
    pub k: u32,
    pub n: u32,
    pub n_eff: u32,
    /// Unit for entry/exit weights; dwarfs everything level changes could save.
    pub delta: Weight,
    /// Weight of each of the `k − 1` row-connector edges.
    pub connector_weight: Weight,
    /// Cost of one strip crossing that keeps its level.
    pub alpha: Weight,
    /// Optimum of the gadget iff the tiling instance is solvable.
    pub beta: Weight,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GadgetError {
    #[error("gadget supports levels up to 80, got n_eff = {n_eff}")]
    TooManyLevels { n_eff: u32 },
    #[error("gadget weights exceed the 64-bit budget")]
    WeightRange,
    #[error("gadget instance rejected: {0}")]
    Instance(#[from] InstanceError),
}

impl GadgetParams {
    pub fn new(k: u32, n: u32) -> Result<Self, GadgetError> {
        let n_eff = n + 1;
        if n_eff > 80 {
            return Err(GadgetError::TooManyLevels { n_eff });
        }
        let ne = n_eff as u128;
        let ku = k as u128;
        let delta = 7 * ne.pow(6);
        let connector_weight = 53 * ne.pow(9);
        let alpha = delta * (ne * ku + 1) + 4 * (ku + 1) + 4 * ku * (ne - 1);
        let beta = (2 * ku * alpha + connector_weight * (ku - 1))
            .checked_sub(ku * ku + ku)
            .ok_or(GadgetError::WeightRange)?;
        let fit = |v: u128| Weight::try_from(v).map_err(|_| GadgetError::WeightRange);
        Ok(Self {
            k,
            n,
            n_eff,
            delta: fit(delta)?,
            connector_weight: fit(connector_weight)?,
            alpha: fit(alpha)?,
            beta: fit(beta)?,
        })
    }
}

/// The built gadget instance plus everything needed to read it: vertex
/// roles, canonical strip crossings, and the shortcut positions.
#[derive(Debug, Clone)]
pub struct GadgetLayout {
    pub instance: Instance,
    pub params: GadgetParams,
    a: Vec<VertexId>,
    b: Vec<VertexId>,
    c: Vec<VertexId>,
    d: Vec<VertexId>,
    e: Vec<VertexId>,
    f: Vec<VertexId>,
    row_in: Vec<Vec<VertexId>>,
    row_out: Vec<Vec<VertexId>>,
    col_in: Vec<Vec<VertexId>>,
    col_out: Vec<Vec<VertexId>>,
    grid_base: VertexId,
    shortcuts: BTreeMap<(u32, u32, u32, u32), VertexId>,
}

impl GadgetLayout {
    /// Cell `(i, j)`, position `(x, y)`; all four 1-based, `x, y ≤ n_eff`.
    pub fn grid(&self, i: u32, j: u32, x: u32, y: u32) -> VertexId {
        let k = self.params.k;
        let ne = self.params.n_eff;
        debug_assert!(i >= 1 && i <= k && j >= 1 && j <= k && x >= 1 && x <= ne && y >= 1 && y <= ne);
        self.grid_base + ((((i - 1) * k + (j - 1)) * ne + (x - 1)) * ne + (y - 1))
    }

    /// The shortcut's middle vertex at cell `(i, j)`, position `(x, y)`, if
    /// the (shifted) tiling set allows that position.
    pub fn shortcut(&self, i: u32, j: u32, x: u32, y: u32) -> Option<VertexId> {
        self.shortcuts.get(&(i, j, x, y)).copied()
    }

    pub fn shortcut_count(&self) -> usize {
        self.shortcuts.len()
    }

    /// Vertices of the straight crossing of row strip `i` at level `x`.
    pub fn row_vertices(&self, i: u32, x: u32) -> Vec<VertexId> {
        let ne = self.params.n_eff;
        let mut seq = vec![self.a[(i - 1) as usize], self.row_in[(i - 1) as usize][(x - 1) as usize]];
        for j in 1..=self.params.k {
            for y in 1..=ne {
                seq.push(self.grid(i, j, x, y));
            }
        }
        seq.push(self.row_out[(i - 1) as usize][(x - 1) as usize]);
        seq.push(self.b[(i - 1) as usize]);
        seq
    }

    /// Vertices of the crossing of column strip `j` at level `y`; detours
    /// through shortcut middles where the direct step was subdivided.
    pub fn col_vertices(&self, j: u32, y: u32) -> Vec<VertexId> {
        let ne = self.params.n_eff;
        let mut seq = vec![self.c[(j - 1) as usize], self.col_in[(j - 1) as usize][(y - 1) as usize]];
        for i in 1..=self.params.k {
            seq.push(self.grid(i, j, 1, y));
            for x in 2..=ne {
                if let Some(q) = self.shortcut(i, j, x, y) {
                    seq.push(q);
                }
                seq.push(self.grid(i, j, x, y));
            }
        }
        seq.push(self.col_out[(j - 1) as usize][(y - 1) as usize]);
        seq.push(self.d[(j - 1) as usize]);
        seq
    }

    pub fn row_walk(&self, i: u32, x: u32) -> Walk {
        walk_from_vertices(&self.instance.graph, &self.row_vertices(i, x))
            .expect("straight row crossings exist by construction")
    }

    pub fn col_walk(&self, j: u32, y: u32) -> Walk {
        walk_from_vertices(&self.instance.graph, &self.col_vertices(j, y))
            .expect("column crossings exist by construction")
    }
}

/// Builds the connection gadget for a tiling instance. The result asks for
/// `2k − 1` forward walks and one backward walk; its optimum is at most
/// `params.beta` exactly when the tiling instance has a solution.
pub fn gridtiling_to_scss(gt: &GridTilingInstance) -> Result<GadgetLayout, GadgetError> {
    let params = GadgetParams::new(gt.k, gt.n)?;
    let (k, ne) = (gt.k, params.n_eff);
    let d = params.delta;

    let mut next = 0u32;
    let mut take = |n: u32| {
        let base = next;
        next += n;
        base
    };
    let s = take(1);
    let t = take(1);
    let a: Vec<VertexId> = (0..k).map(|_| take(1)).collect();
    let b: Vec<VertexId> = (0..k).map(|_| take(1)).collect();
    let c: Vec<VertexId> = (0..k).map(|_| take(1)).collect();
    let dd: Vec<VertexId> = (0..k).map(|_| take(1)).collect();
    let e: Vec<VertexId> = (1..k).map(|_| take(1)).collect();
    let f: Vec<VertexId> = (1..k).map(|_| take(1)).collect();
    let row_in: Vec<Vec<VertexId>> = (0..k).map(|_| (0..ne).map(|_| take(1)).collect()).collect();
    let row_out: Vec<Vec<VertexId>> = (0..k).map(|_| (0..ne).map(|_| take(1)).collect()).collect();
    let col_in: Vec<Vec<VertexId>> = (0..k).map(|_| (0..ne).map(|_| take(1)).collect()).collect();
    let col_out: Vec<Vec<VertexId>> = (0..k).map(|_| (0..ne).map(|_| take(1)).collect()).collect();
    let grid_base = take(k * k * ne * ne);

    let mut shortcuts = BTreeMap::new();
    for i in 1..=k {
        for j in 1..=k {
            for &(sx, sy) in gt.set(i, j) {
                // tiling coordinates sit one level up inside the gadget
                shortcuts.insert((i, j, sx + 1, sy + 1), take(1));
            }
        }
    }

    let mut g = Digraph::new(next);
    let grid = |i: u32, j: u32, x: u32, y: u32| {
        grid_base + ((((i - 1) * k + (j - 1)) * ne + (x - 1)) * ne + (y - 1))
    };

    // entry/exit weights: a crossing that enters at level x and leaves at
    // level x' pays delta·(ne·k + 1 + x' − x); levels only ever increase
    // inside a strip, so staying level is optimal and any climb costs delta
    for i in 1..=k {
        for x in 1..=ne {
            let iu = (i - 1) as usize;
            let xu = (x - 1) as usize;
            g.add_edge(a[iu], row_in[iu][xu], d * ((ne * k - ne * i + ne + 1 - x) as Weight));
            g.add_edge(row_out[iu][xu], b[iu], d * ((ne * i - ne + x) as Weight));
        }
    }
    for j in 1..=k {
        for y in 1..=ne {
            let ju = (j - 1) as usize;
            let yu = (y - 1) as usize;
            g.add_edge(c[ju], col_in[ju][yu], d * ((ne * k - ne * j + ne + 1 - y) as Weight));
            g.add_edge(col_out[ju][yu], dd[ju], d * ((ne * j - ne + y) as Weight));
        }
    }

    // strip plumbing: into the first cell, between cells, out of the last
    for i in 1..=k {
        let iu = (i - 1) as usize;
        for x in 1..=ne {
            let xu = (x - 1) as usize;
            g.add_edge(row_in[iu][xu], grid(i, 1, x, 1), 4);
            for j in 1..k {
                g.add_edge(grid(i, j, x, ne), grid(i, j + 1, x, 1), 4);
            }
            g.add_edge(grid(i, k, x, ne), row_out[iu][xu], 4);
        }
    }
    for j in 1..=k {
        let ju = (j - 1) as usize;
        for y in 1..=ne {
            let yu = (y - 1) as usize;
            g.add_edge(col_in[ju][yu], grid(1, j, 1, y), 4);
            for i in 1..k {
                g.add_edge(grid(i, j, ne, y), grid(i + 1, j, 1, y), 4);
            }
            g.add_edge(grid(k, j, ne, y), col_out[ju][yu], 4);
        }
    }

    // cell interiors: right and down steps, down steps subdivided at
    // shortcut positions so columns pass through the shared middle
    for i in 1..=k {
        for j in 1..=k {
            for x in 1..=ne {
                for y in 1..ne {
                    g.add_edge(grid(i, j, x, y), grid(i, j, x, y + 1), 4);
                }
            }
            for x in 1..ne {
                for y in 1..=ne {
                    if !shortcuts.contains_key(&(i, j, x + 1, y)) {
                        g.add_edge(grid(i, j, x, y), grid(i, j, x + 1, y), 4);
                    }
                }
            }
        }
    }
    for (&(i, j, x, y), &q) in &shortcuts {
        let u = grid(i, j, x, y - 1);
        let p = grid(i, j, x - 1, y);
        let r = grid(i, j, x, y);
        g.add_edge(p, q, 2);
        g.add_edge(q, r, 2);
        // a row detour through q replaces a weight-4 right step: free in
        // diagonal cells, one extra elsewhere, and sharing q→r with the
        // column saves two — all k² cells must share to reach beta
        g.add_edge(u, q, if i == j { 2 } else { 3 });
    }

    // zero-weight wiring for terminals, plus the expensive row connectors
    for j in 0..k as usize {
        g.add_edge(s, c[j], 0);
        g.add_edge(dd[j], t, 0);
    }
    g.add_edge(t, a[(k - 1) as usize], 0);
    g.add_edge(b[0], s, 0);
    for i in 0..(k - 1) as usize {
        g.add_edge(s, e[i], 0);
        g.add_edge(f[i], t, 0);
        g.add_edge(b[i + 1], e[i], 0);
        g.add_edge(f[i], a[i], 0);
        g.add_edge(e[i], f[i], params.connector_weight);
    }

    let instance = Instance::new(g, s, t, 2 * k - 1, 1)?;
    Ok(GadgetLayout {
        instance,
        params,
        a,
        b,
        c,
        d: dd,
        e,
        f,
        row_in,
        row_out,
        col_in,
        col_out,
        grid_base,
        shortcuts,
    })
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AssembleError {
    #[error("assignment has {got} values, the gadget has {expected} strips")]
    WrongLength { expected: u32, got: usize },
    #[error("assignment value {value} for index {index} is outside 1..={n}")]
    ValueOutOfRange { index: u32, value: u32, n: u32 },
    #[error("cell ({i}, {j}) has no shortcut at the assigned levels; not a tiling solution")]
    NotASolution { i: u32, j: u32 },
}

/// The witness solution for a tiling assignment `delta`: every strip crosses
/// at its assigned level (shifted up by one) and the backward sweep detours
/// through each cell's shortcut, sharing its second half with the column
/// walk there. Fails if `delta` is not actually a solution, since then some
/// required shortcut is missing. The result prices at exactly `beta`.
pub fn assemble_intended_solution(
    layout: &GadgetLayout,
    delta: &[u32],
) -> Result<Solution, AssembleError> {
    let p = &layout.params;
    let (k, ne) = (p.k, p.n_eff);
    if delta.len() != k as usize {
        return Err(AssembleError::WrongLength { expected: k, got: delta.len() });
    }
    for (idx, &v) in delta.iter().enumerate() {
        if v == 0 || v > p.n {
            return Err(AssembleError::ValueOutOfRange { index: idx as u32 + 1, value: v, n: p.n });
        }
    }
    let level = |idx: u32| delta[(idx - 1) as usize] + 1;
    for i in 1..=k {
        for j in 1..=k {
            if layout.shortcut(i, j, level(i), level(j)).is_none() {
                return Err(AssembleError::NotASolution { i, j });
            }
        }
    }

    let graph = &layout.instance.graph;
    let resolve = |seq: &[VertexId]| {
        walk_from_vertices(graph, seq).expect("assembled sequences follow gadget edges")
    };

    let mut forward = Vec::with_capacity((2 * k - 1) as usize);
    for j in 1..=k {
        let mut seq = vec![layout.instance.s];
        seq.extend(layout.col_vertices(j, level(j)));
        seq.push(layout.instance.t);
        forward.push(resolve(&seq));
    }
    for i in 0..(k - 1) as usize {
        forward.push(resolve(&[layout.instance.s, layout.e[i], layout.f[i], layout.instance.t]));
    }

    let mut seq = vec![layout.instance.t];
    for i in (1..=k).rev() {
        let iu = (i - 1) as usize;
        let x = level(i);
        seq.push(layout.a[iu]);
        seq.push(layout.row_in[iu][(x - 1) as usize]);
        for j in 1..=k {
            let y = level(j);
            for yy in 1..y {
                seq.push(layout.grid(i, j, x, yy));
            }
            seq.push(layout.shortcut(i, j, x, y).expect("checked above"));
            for yy in y..=ne {
                seq.push(layout.grid(i, j, x, yy));
            }
        }
        seq.push(layout.row_out[iu][(x - 1) as usize]);
        seq.push(layout.b[iu]);
        if i > 1 {
            seq.push(layout.e[(i - 2) as usize]);
            seq.push(layout.f[(i - 2) as usize]);
        } else {
            seq.push(layout.instance.s);
        }
    }
    let backward = vec![resolve(&seq)];

    let cost = evaluate_phi_cost(&layout.instance, &forward, &backward)
        .expect("assembled walks satisfy the demand shape");
    Ok(Solution { forward, backward, cost })
}

/// One strip crossing recorded in a [`Certificate`].
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CanonicalPath {
    /// Strip index (row or column), 1-based.
    pub strip: u32,
    /// Gadget level of the crossing, `1..=n_eff`.
    pub level: u32,
    pub vertices: Vec<VertexId>,
    pub weight: Weight,
}

/// A machine-checkable record of one reduction run: the parameters, the
/// brute-force answer on the tiling side, the witness cost on the gadget
/// side, and every canonical strip crossing with its weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub params: GadgetParams,
    pub vertices: u32,
    pub edges: u32,
    /// Lexicographically first tiling solution, if any.
    pub tiling_solution: Option<Vec<u32>>,
    /// Cost of the assembled witness for that solution; equals `params.beta`.
    pub witness_cost: Option<Weight>,
    pub row_paths: Vec<CanonicalPath>,
    pub col_paths: Vec<CanonicalPath>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertifyError {
    #[error(transparent)]
    Gadget(#[from] GadgetError),
    #[error(transparent)]
    Budget(#[from] BruteforceBudget),
    #[error("canonical crossing priced at {got}, expected alpha = {alpha}")]
    CrossingMismatch { got: Weight, alpha: Weight },
    #[error("witness priced at {got}, expected beta = {beta}")]
    WitnessMismatch { got: Weight, beta: Weight },
}

/// Builds the gadget, brute-forces the tiling side, and cross-checks the
/// gadget's promises: every canonical crossing weighs `alpha`, and when the
/// tiling has a solution the assembled witness costs exactly `beta`.
pub fn certify(gt: &GridTilingInstance, budget: u64) -> Result<Certificate, CertifyError> {
    let layout = gridtiling_to_scss(gt)?;
    let p = layout.params;
    let mut row_paths = Vec::new();
    let mut col_paths = Vec::new();
    for strip in 1..=p.k {
        for level in 1..=p.n_eff {
            for (paths, vertices, walk) in [
                (&mut row_paths, layout.row_vertices(strip, level), layout.row_walk(strip, level)),
                (&mut col_paths, layout.col_vertices(strip, level), layout.col_walk(strip, level)),
            ] {
                let weight = walk.weight(&layout.instance.graph).expect("crossings fit in u64");
                if weight != p.alpha {
                    return Err(CertifyError::CrossingMismatch { got: weight, alpha: p.alpha });
                }
                paths.push(CanonicalPath { strip, level, vertices, weight });
            }
        }
    }
    let tiling_solution = gridtiling_bruteforce(gt, budget)?;
    let witness_cost = match &tiling_solution {
        Some(delta) => {
            let witness = assemble_intended_solution(&layout, delta)
                .expect("bruteforce solutions assemble");
            if witness.cost != p.beta {
                return Err(CertifyError::WitnessMismatch { got: witness.cost, beta: p.beta });
            }
            Some(witness.cost)
        }
        None => None,
    };
    Ok(Certificate {
        params: p,
        vertices: layout.instance.graph.n(),
        edges: layout.instance.graph.m(),
        tiling_solution,
        witness_cost,
        row_paths,
        col_paths,
    })
}
