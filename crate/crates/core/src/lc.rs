//! Local complementation and a small optimizer over the LC orbit.

use std::collections::{HashMap, VecDeque};

use thiserror::Error;

use crate::graph::{normalize_corrections, GraphState, LocalCorrection, LocalOp};
use crate::pattern::CompiledPattern;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LcError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("exhaustive search supports at most {max} nodes, got {n}")]
    TooLarge { n: usize, max: usize },
}

pub const EXHAUSTIVE_MAX_NODES: usize = 10;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct LcMove {
    pub vertex: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Objective {
    EdgeCount,
    MaxDegree,
}

impl Objective {
    /// Primary cost first, the other metric as a tie-breaker.
    pub fn key(self, g: &GraphState) -> (usize, usize) {
        match self {
            Objective::EdgeCount => (g.num_edges(), g.max_degree()),
            Objective::MaxDegree => (g.max_degree(), g.num_edges()),
        }
    }

    pub fn value(self, g: &GraphState) -> usize {
        self.key(g).0
    }
}

/// Toggle every edge inside the neighbourhood of `k`.
pub fn local_complement(g: &GraphState, k: usize) -> Result<GraphState, LcError> {
    let n = g.num_nodes();
    if k >= n {
        return Err(LcError::VertexOutOfRange { vertex: k, n });
    }
    let mut out = g.clone();
    let nb: Vec<usize> = g.neighbors(k).collect();
    for (i, &a) in nb.iter().enumerate() {
        for &b in &nb[i + 1..] {
            out.toggle_edge(a, b);
        }
    }
    Ok(out)
}

/// Complement the pattern's graph at `k` and prepend the inverse of
/// `√(−iX_k) ∏_{j ~ k} √(iZ_j)`, so the corrected state is unchanged.
pub fn lc_with_corrections(p: &CompiledPattern, k: usize) -> Result<CompiledPattern, LcError> {
    let graph = local_complement(&p.graph, k)?;
    let mut corrections = vec![LocalCorrection::new(k, LocalOp::SqrtXdg)];
    corrections.extend(
        p.graph
            .neighbors(k)
            .map(|j| LocalCorrection::new(j, LocalOp::P)),
    );
    corrections.extend_from_slice(&p.local_corrections);
    normalize_corrections(&mut corrections);
    Ok(CompiledPattern {
        graph,
        local_corrections: corrections,
        ..p.clone()
    })
}

/// Greedy steepest descent over single LC moves. Each step takes the move
/// with the lowest `(objective, secondary)` key, lowest vertex on ties, and
/// only if it strictly improves. Stops at a local minimum or after
/// `budget` moves.
pub fn optimize(
    p: &CompiledPattern,
    objective: Objective,
    budget: usize,
) -> (CompiledPattern, Vec<LcMove>) {
    let mut cur = p.clone();
    let mut moves = Vec::new();
    while moves.len() < budget {
        let mut best = objective.key(&cur.graph);
        let mut best_k = None;
        for k in 0..cur.num_nodes() {
            let key = objective.key(&local_complement(&cur.graph, k).expect("k in range"));
            if key < best {
                best = key;
                best_k = Some(k);
            }
        }
        let Some(k) = best_k else { break };
        cur = lc_with_corrections(&cur, k).expect("k in range");
        moves.push(LcMove { vertex: k });
    }
    (cur, moves)
}

/// Replay a move list.
pub fn apply_moves(p: &CompiledPattern, moves: &[LcMove]) -> Result<CompiledPattern, LcError> {
    moves
        .iter()
        .try_fold(p.clone(), |cur, m| lc_with_corrections(&cur, m.vertex))
}

fn edge_bits(g: &GraphState) -> u64 {
    let n = g.num_nodes();
    let mut bits = 0u64;
    let mut i = 0;
    for a in 0..n {
        for b in a + 1..n {
            if g.has_edge(a, b) {
                bits |= 1 << i;
            }
            i += 1;
        }
    }
    bits
}

/// Breadth-first search of the whole LC orbit; returns the best graph by
/// key and a shortest move sequence reaching it.
pub fn optimize_exhaustive(
    p: &CompiledPattern,
    objective: Objective,
) -> Result<(CompiledPattern, Vec<LcMove>), LcError> {
    let n = p.num_nodes();
    if n > EXHAUSTIVE_MAX_NODES {
        return Err(LcError::TooLarge {
            n,
            max: EXHAUSTIVE_MAX_NODES,
        });
    }
    // parent pointers: graph bits -> (previous bits, move)
    let start = edge_bits(&p.graph);
    let mut parent: HashMap<u64, Option<(u64, usize)>> = HashMap::from([(start, None)]);
    let mut queue = VecDeque::from([p.graph.clone()]);
    let mut best = (objective.key(&p.graph), start);
    while let Some(g) = queue.pop_front() {
        let bits = edge_bits(&g);
        for k in 0..n {
            let next = local_complement(&g, k)?;
            let nb = edge_bits(&next);
            if parent.contains_key(&nb) {
                continue;
            }
            parent.insert(nb, Some((bits, k)));
            let key = objective.key(&next);
            if key < best.0 {
                best = (key, nb);
            }
            queue.push_back(next);
        }
    }
    let mut moves = Vec::new();
    let mut at = best.1;
    while let Some(Some((prev, k))) = parent.get(&at) {
        moves.push(LcMove { vertex: *k });
        at = *prev;
    }
    moves.reverse();
    Ok((apply_moves(p, &moves)?, moves))
}
