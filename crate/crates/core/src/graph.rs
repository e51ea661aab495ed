//! Graph states and conversion of arbitrary stabilizer states into a
//! local-Clifford-equivalent graph state.

use std::fmt;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::tableau::{PauliString, StabilizerTableau, TableauError};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Role {
    Input,
    Output,
    Ancilla,
}

impl Role {
    fn dot_color(self) -> &'static str {
        match self {
            Role::Input => "palegreen",
            Role::Output => "lightblue",
            Role::Ancilla => "white",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("expected {expected} roles, got {got}")]
    RoleCount { expected: usize, got: usize },
    #[error("input is not a valid stabilizer state: {0}")]
    Malformed(#[from] TableauError),
    #[error("conversion left a non-graph tableau (internal error)")]
    NotGraphForm,
}

/// Undirected simple graph with a role per node.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphState {
    adjacency: Vec<Vec<bool>>,
    roles: Vec<Role>,
}

impl GraphState {
    /// Edgeless graph; every node starts as an `Output`.
    pub fn new(n: usize) -> Self {
        GraphState {
            adjacency: vec![vec![false; n]; n],
            roles: vec![Role::Output; n],
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = GraphState::new(n);
        for &(a, b) in edges {
            g.add_edge(a, b)?;
        }
        Ok(g)
    }

    pub fn num_nodes(&self) -> usize {
        self.adjacency.len()
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    pub fn set_roles(&mut self, roles: Vec<Role>) -> Result<(), GraphError> {
        if roles.len() != self.num_nodes() {
            return Err(GraphError::RoleCount {
                expected: self.num_nodes(),
                got: roles.len(),
            });
        }
        self.roles = roles;
        Ok(())
    }

    fn check(&self, v: usize) -> Result<(), GraphError> {
        if v >= self.num_nodes() {
            Err(GraphError::VertexOutOfRange {
                vertex: v,
                n: self.num_nodes(),
            })
        } else {
            Ok(())
        }
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a][b]
    }

    pub fn add_edge(&mut self, a: usize, b: usize) -> Result<(), GraphError> {
        self.check(a)?;
        self.check(b)?;
        if a == b {
            return Err(GraphError::SelfLoop(a));
        }
        self.adjacency[a][b] = true;
        self.adjacency[b][a] = true;
        Ok(())
    }

    pub(crate) fn toggle_edge(&mut self, a: usize, b: usize) {
        self.adjacency[a][b] ^= true;
        self.adjacency[b][a] ^= true;
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.adjacency[v]
            .iter()
            .enumerate()
            .filter_map(|(u, &e)| e.then_some(u))
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).count()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.num_nodes())
            .map(|v| self.degree(v))
            .max()
            .unwrap_or(0)
    }

    /// Edges `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let n = self.num_nodes();
        (0..n)
            .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
            .filter(|&(u, v)| self.adjacency[u][v])
            .collect()
    }

    pub fn num_edges(&self) -> usize {
        self.edges().len()
    }

    /// Canonical stabilizers `X_i ∏_{j ~ i} Z_j`, all with `+` sign.
    pub fn to_tableau(&self) -> StabilizerTableau {
        let n = self.num_nodes();
        let rows = (0..n)
            .map(|i| {
                let mut p = PauliString::identity(n);
                p.x[i] = true;
                p.z.clone_from(&self.adjacency[i]);
                p
            })
            .collect();
        StabilizerTableau::from_rows_unchecked(rows)
    }

    /// Undirected DOT rendering, nodes colored by role.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph G {\n  node [style=filled];\n");
        for (v, role) in self.roles.iter().enumerate() {
            let _ = writeln!(s, "  {v} [fillcolor={}];", role.dot_color());
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  {a} -- {b};");
        }
        s.push_str("}\n");
        s
    }
}

/// Single-qubit Clifford used as a local correction.
///
/// `P` is the phase gate `diag(1, i)`; `SqrtX` is `H·P·H`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum LocalOp {
    H,
    P,
    Pdag,
    Z,
    SqrtX,
    SqrtXdg,
}

impl LocalOp {
    pub fn inverse(self) -> LocalOp {
        match self {
            LocalOp::H => LocalOp::H,
            LocalOp::Z => LocalOp::Z,
            LocalOp::P => LocalOp::Pdag,
            LocalOp::Pdag => LocalOp::P,
            LocalOp::SqrtX => LocalOp::SqrtXdg,
            LocalOp::SqrtXdg => LocalOp::SqrtX,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LocalOp::H => "H",
            LocalOp::P => "P",
            LocalOp::Pdag => "Pdag",
            LocalOp::Z => "Z",
            LocalOp::SqrtX => "SqrtX",
            LocalOp::SqrtXdg => "SqrtXdg",
        }
    }

    pub(crate) fn apply_to(self, t: &mut StabilizerTableau, q: usize) {
        match self {
            LocalOp::H => t.h(q),
            LocalOp::P => t.s(q),
            LocalOp::Pdag => t.sdg(q),
            LocalOp::Z => t.z_gate(q),
            LocalOp::SqrtX => {
                t.h(q);
                t.s(q);
                t.h(q);
            }
            LocalOp::SqrtXdg => {
                t.h(q);
                t.sdg(q);
                t.h(q);
            }
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LocalCorrection {
    pub qubit: usize,
    pub op: LocalOp,
}

impl LocalCorrection {
    pub fn new(qubit: usize, op: LocalOp) -> Self {
        LocalCorrection { qubit, op }
    }
}

impl fmt::Display for LocalCorrection {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}@{}", self.op.name(), self.qubit)
    }
}

/// Sort corrections by qubit, keeping the relative order of ops on the
/// same qubit. Ops on different qubits commute, so the product is unchanged.
pub fn normalize_corrections(corrections: &mut [LocalCorrection]) {
    corrections.sort_by_key(|c| c.qubit);
}

/// A graph plus the local corrections that take its state back to the
/// stabilizer state it was extracted from. Corrections are listed in
/// application order, graph state first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphExtraction {
    pub graph: GraphState,
    pub corrections: Vec<LocalCorrection>,
}

/// Convert a stabilizer state into a local-Clifford-equivalent graph state.
///
/// Hadamards fill zero X-columns and complete the X-block rank, row
/// additions diagonalize it, then `Z` and `P†` clear negative signs and the
/// Z-block diagonal. Row operations are not recorded; they only change the
/// generating set.
pub fn to_graph(t: &StabilizerTableau) -> Result<GraphExtraction, GraphError> {
    t.validate()?;
    let n = t.num_qubits();
    let mut t = t.clone();
    let mut applied: Vec<LocalCorrection> = Vec::new();
    fn hadamard(t: &mut StabilizerTableau, q: usize, applied: &mut Vec<LocalCorrection>) {
        t.h(q);
        applied.push(LocalCorrection::new(q, LocalOp::H));
    }

    // zero X-columns: the Z-column must be non-zero, swap it in
    for q in 0..n {
        if (0..n).all(|r| !t.x(r, q)) {
            hadamard(&mut t, q, &mut applied);
        }
    }

    // upper-triangular X-block
    for i in 0..n {
        if (i..n).all(|r| !t.x(r, i)) {
            hadamard(&mut t, i, &mut applied);
        }
        if let Some(j) = (i..n).find(|&r| t.x(r, i)) {
            if j != i {
                t.swap_rows(i, j);
            }
        } else {
            return Err(GraphError::NotGraphForm);
        }
        for j in i + 1..n {
            if t.x(j, i) {
                t.rowsum(i, j)?;
            }
        }
    }

    // back-substitute to the identity
    for i in (0..n.saturating_sub(1)).rev() {
        for j in (i + 1..n).rev() {
            if t.x(i, j) {
                t.rowsum(j, i)?;
            }
        }
    }

    for i in 0..n {
        if t.is_negative(i) {
            t.z_gate(i);
            applied.push(LocalCorrection::new(i, LocalOp::Z));
        }
        if t.z(i, i) {
            t.sdg(i);
            applied.push(LocalCorrection::new(i, LocalOp::Pdag));
        }
    }

    let mut graph = GraphState::new(n);
    for i in 0..n {
        for j in 0..n {
            let expect_x = i == j;
            if t.x(i, j) != expect_x || t.z(i, j) != t.z(j, i) {
                return Err(GraphError::NotGraphForm);
            }
            if t.z(i, j) {
                graph.adjacency[i][j] = true;
            }
        }
        if t.z(i, i) || t.is_negative(i) {
            return Err(GraphError::NotGraphForm);
        }
    }

    let mut corrections: Vec<LocalCorrection> = applied
        .iter()
        .rev()
        .map(|c| LocalCorrection::new(c.qubit, c.op.inverse()))
        .collect();
    normalize_corrections(&mut corrections);
    Ok(GraphExtraction { graph, corrections })
}

/// Tableau of `corrections` applied, in order, to the graph state.
pub fn apply_corrections_inverse(
    graph: &GraphState,
    corrections: &[LocalCorrection],
) -> StabilizerTableau {
    let mut t = graph.to_tableau();
    for c in corrections {
        c.op.apply_to(&mut t, c.qubit);
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;

    fn tableau_of(src: &str) -> StabilizerTableau {
        let c = Circuit::parse(src).unwrap();
        let mut t = StabilizerTableau::from_init(c.initial_states()).unwrap();
        for g in c.gates() {
            t.apply_gate(g).unwrap();
        }
        t
    }

    fn corr(list: &[(usize, LocalOp)]) -> Vec<LocalCorrection> {
        list.iter()
            .map(|&(q, op)| LocalCorrection::new(q, op))
            .collect()
    }

    #[test]
    fn ghz_becomes_star() {
        let t = tableau_of("qubits 3\nh 0\ncnot 0 1\ncnot 1 2");
        let ext = to_graph(&t).unwrap();
        assert_eq!(ext.graph.edges(), vec![(0, 1), (0, 2)]);
        assert_eq!(ext.corrections, corr(&[(1, LocalOp::H), (2, LocalOp::H)]));
        assert!(apply_corrections_inverse(&ext.graph, &ext.corrections).same_group(&t));
    }

    #[test]
    fn cv_dagger_zero_zero_state() {
        let t = StabilizerTableau::from_strs(&["+ZIIII", "+IXXIZ", "+ZZZII", "+IIZZX", "+IZIIX"])
            .unwrap();
        let ext = to_graph(&t).unwrap();
        assert_eq!(ext.graph.edges(), vec![(1, 2), (1, 4)]);
        assert_eq!(ext.graph.degree(0), 0);
        assert_eq!(ext.graph.degree(3), 0);
        assert_eq!(
            ext.corrections,
            corr(&[(0, LocalOp::H), (2, LocalOp::H), (3, LocalOp::H)])
        );
    }

    #[test]
    fn cv_dagger_plus_zero_state() {
        let t = StabilizerTableau::from_strs(&["+XIXXI", "+IXXIZ", "+ZZZII", "+IIZZX", "+IZIIX"])
            .unwrap();
        let ext = to_graph(&t).unwrap();
        assert_eq!(ext.graph.edges(), vec![(0, 2), (0, 3), (1, 2), (1, 4)]);
        assert_eq!(ext.corrections, corr(&[(2, LocalOp::H), (3, LocalOp::H)]));
        let strs: Vec<String> = ext
            .graph
            .to_tableau()
            .rows()
            .iter()
            .map(|r| r.to_string())
            .collect();
        assert_eq!(strs, ["+XIZZI", "+IXZIZ", "+ZZXII", "+ZIIXI", "+IZIIX"]);
        let back = apply_corrections_inverse(&ext.graph, &ext.corrections);
        assert!(back.same_group(&t));
    }

    #[test]
    fn graph_tableaus() {
        let rows = |g: &GraphState| -> Vec<String> {
            g.to_tableau()
                .rows()
                .iter()
                .map(|r| r.to_string())
                .collect()
        };
        assert_eq!(rows(&GraphState::new(2)), ["+XI", "+IX"]);
        assert_eq!(
            rows(&GraphState::from_edges(2, &[(0, 1)]).unwrap()),
            ["+XZ", "+ZX"]
        );
        let star = GraphState::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        assert_eq!(rows(&star), ["+XZZ", "+ZXI", "+ZIX"]);
        assert_eq!(apply_corrections_inverse(&star, &[]), star.to_tableau());
    }

    #[test]
    fn graph_form_is_fixed_point() {
        let g = GraphState::from_edges(4, &[(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let ext = to_graph(&g.to_tableau()).unwrap();
        assert_eq!(ext.graph, g);
        assert!(ext.corrections.is_empty());
    }

    #[test]
    fn phases_and_y_diagonal_are_cleared() {
        // |0>: Z; |1>: -Z; S|+>: Y; -Y
        for rows in [["-Z"], ["+Y"], ["-Y"], ["-X"]] {
            let t = StabilizerTableau::from_strs(&rows).unwrap();
            let ext = to_graph(&t).unwrap();
            assert!(apply_corrections_inverse(&ext.graph, &ext.corrections).same_group(&t));
        }
        let t = StabilizerTableau::from_strs(&["+YZ", "-ZX"]).unwrap();
        let ext = to_graph(&t).unwrap();
        assert_eq!(ext.graph.edges(), vec![(0, 1)]);
        assert!(ext
            .corrections
            .iter()
            .any(|c| c.op == LocalOp::P && c.qubit == 0));
        assert!(apply_corrections_inverse(&ext.graph, &ext.corrections).same_group(&t));
    }

    #[test]
    fn rejects_malformed() {
        let bad = StabilizerTableau::from_rows_unchecked(vec![
            "+ZI".parse().unwrap(),
            "+ZI".parse().unwrap(),
        ]);
        assert!(matches!(to_graph(&bad), Err(GraphError::Malformed(_))));
    }

    #[test]
    fn edges_and_errors() {
        assert_eq!(
            GraphState::from_edges(2, &[(0, 2)]),
            Err(GraphError::VertexOutOfRange { vertex: 2, n: 2 })
        );
        assert_eq!(
            GraphState::from_edges(2, &[(1, 1)]),
            Err(GraphError::SelfLoop(1))
        );
        let mut g = GraphState::new(3);
        assert!(g.set_roles(vec![Role::Input]).is_err());
    }

    #[test]
    fn dot_output() {
        let mut g = GraphState::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        g.set_roles(vec![Role::Input, Role::Ancilla, Role::Output])
            .unwrap();
        let dot = g.to_dot();
        assert!(dot.starts_with("graph G {"));
        assert!(dot.contains("0 [fillcolor=palegreen];"));
        assert!(dot.contains("2 [fillcolor=lightblue];"));
        assert!(dot.contains("0 -- 1;") && dot.contains("0 -- 2;"));
    }
}
