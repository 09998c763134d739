//! Seeded random instance generation. The same spec and seed produce the
//! same instance on every platform, so test corpora can be named by their
//! parameters alone.

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Digraph, Instance, VertexId, Weight};

/// Parameters for one random instance. Vertices are `0..n` with `s = 0`,
/// `t = 1`; edge endpoints are uniform (self-loops allowed, parallel edges
/// allowed), weights uniform in `0..=wmax`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RandomSpec {
    pub n: u32,
    pub m: u32,
    pub wmax: Weight,
    pub k1: u32,
    pub k2: u32,
    pub seed: u64,
    /// Reserve the first `n` edges for a random Hamiltonian cycle, making
    /// the instance strongly connected (and so feasible for any demands).
    pub strongly_connected: bool,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RandomSpecError {
    #[error("need at least two vertices, got {n}")]
    TooFewVertices { n: u32 },
    #[error("strong connectivity reserves {n} cycle edges but only {m} were requested")]
    TooFewEdges { n: u32, m: u32 },
}

/// Generates the instance described by `spec`. Deterministic in `spec`.
pub fn random_instance(spec: &RandomSpec) -> Result<Instance, RandomSpecError> {
    if spec.n < 2 {
        return Err(RandomSpecError::TooFewVertices { n: spec.n });
    }
    if spec.strongly_connected && spec.m < spec.n {
        return Err(RandomSpecError::TooFewEdges { n: spec.n, m: spec.m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
    let mut g = Digraph::new(spec.n);
    let mut remaining = spec.m;
    if spec.strongly_connected {
        let mut order: Vec<VertexId> = (0..spec.n).collect();
        order.shuffle(&mut rng);
        for i in 0..spec.n as usize {
            let tail = order[i];
            let head = order[(i + 1) % spec.n as usize];
            g.add_edge(tail, head, rng.gen_range(0..=spec.wmax));
        }
        remaining -= spec.n;
    }
    for _ in 0..remaining {
        let tail = rng.gen_range(0..spec.n);
        let head = rng.gen_range(0..spec.n);
        g.add_edge(tail, head, rng.gen_range(0..=spec.wmax));
    }
    Ok(Instance::new(g, 0, 1, spec.k1, spec.k2).expect("spec guards terminal and demand shape"))
}
