//! The compiled measurement pattern and its JSON / DOT forms.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::circuit::InitState;
use crate::graph::{GraphExtraction, GraphState, LocalCorrection, Role};
use crate::icm::IcmCircuit;
use crate::tracker::{OutcomeSymbol, OutputCorrection, ScheduledMeasurement, TrackResult};

pub const FORMAT_VERSION: &str = "graphc/1";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("schema error at {path}: {message}")]
    Schema { path: String, message: String },
    #[error("invalid pattern: {0}")]
    Invalid(String),
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, PatternError> {
    Err(PatternError::Invalid(msg.into()))
}

/// Graph, local corrections, measurement schedule and output bookkeeping.
///
/// `local_corrections` are applied in order to the graph state and yield
/// the state right before the scheduled measurements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompiledPattern {
    pub graph: GraphState,
    pub local_corrections: Vec<LocalCorrection>,
    pub schedule: Vec<ScheduledMeasurement>,
    pub output_corrections: Vec<OutputCorrection>,
    /// Node carrying logical wire `w` at the end.
    pub outputs: Vec<usize>,
    /// Output nodes read in the computational basis after corrections.
    pub output_reads: Vec<usize>,
    pub input_labels: Vec<InitState>,
    pub t_count: usize,
}

/// On-disk layout. Field order here is the canonical JSON order.
#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct PatternDoc {
    version: String,
    num_nodes: usize,
    edges: Vec<[usize; 2]>,
    roles: Vec<Role>,
    input_labels: Vec<InitState>,
    outputs: Vec<usize>,
    local_corrections: Vec<LocalCorrection>,
    measurements: Vec<ScheduledMeasurement>,
    output_corrections: Vec<OutputCorrection>,
    output_reads: Vec<usize>,
    t_count: usize,
}

/// Put the pieces of one compilation together.
pub fn assemble(
    icm: &IcmCircuit,
    ext: GraphExtraction,
    tracked: TrackResult,
) -> Result<CompiledPattern, PatternError> {
    let GraphExtraction {
        mut graph,
        corrections,
    } = ext;
    if graph.num_nodes() != icm.num_wires() {
        return invalid(format!(
            "graph has {} nodes but the circuit has {} wires",
            graph.num_nodes(),
            icm.num_wires()
        ));
    }
    if tracked.schedule.len() != icm.t_count() {
        return invalid(format!(
            "{} scheduled measurements for {} teleportations",
            tracked.schedule.len(),
            icm.t_count()
        ));
    }
    graph
        .set_roles(icm.roles.clone())
        .map_err(|e| PatternError::Invalid(e.to_string()))?;
    let p = CompiledPattern {
        graph,
        local_corrections: corrections,
        schedule: tracked.schedule,
        output_corrections: tracked.outputs,
        outputs: icm.wire_map.clone(),
        output_reads: icm.output_reads.clone(),
        input_labels: icm.input_labels.clone(),
        t_count: icm.t_count(),
    };
    p.validate()?;
    Ok(p)
}

impl CompiledPattern {
    pub fn num_nodes(&self) -> usize {
        self.graph.num_nodes()
    }

    pub fn roles(&self) -> &[Role] {
        self.graph.roles()
    }

    /// Highest round index plus one.
    pub fn num_rounds(&self) -> usize {
        self.schedule.iter().map(|m| m.round + 1).max().unwrap_or(0)
    }

    /// Structural consistency checks shared by `assemble` and `from_json`.
    pub fn validate(&self) -> Result<(), PatternError> {
        let n = self.num_nodes();
        let roles = self.roles();
        if self.schedule.len() != self.t_count {
            return invalid(format!(
                "t_count is {} but {} measurements are scheduled",
                self.t_count,
                self.schedule.len()
            ));
        }
        if self.outputs.len() != self.input_labels.len() {
            return invalid(format!(
                "{} outputs for {} input labels",
                self.outputs.len(),
                self.input_labels.len()
            ));
        }
        for c in &self.local_corrections {
            if c.qubit >= n {
                return invalid(format!("correction on node {} of {n}", c.qubit));
            }
        }

        let mut seen_outputs = BTreeSet::new();
        for &w in &self.outputs {
            if w >= n || roles[w] != Role::Output {
                return invalid(format!("output {w} is not an output node"));
            }
            if !seen_outputs.insert(w) {
                return invalid(format!("output {w} listed twice"));
            }
        }
        let output_nodes = roles.iter().filter(|&&r| r == Role::Output).count();
        if output_nodes != self.outputs.len() {
            return invalid(format!(
                "{output_nodes} output-role nodes but {} outputs",
                self.outputs.len()
            ));
        }

        let mut rounds: HashMap<OutcomeSymbol, usize> = HashMap::new();
        let mut measured = BTreeSet::new();
        for m in &self.schedule {
            if m.wire >= n {
                return invalid(format!("measurement on node {} of {n}", m.wire));
            }
            if roles[m.wire] == Role::Output {
                return invalid(format!("output node {} is measured", m.wire));
            }
            if !measured.insert(m.wire) {
                return invalid(format!("node {} measured twice", m.wire));
            }
            if rounds.insert(m.symbol, m.round).is_some() {
                return invalid(format!("duplicate outcome symbol {}", m.symbol));
            }
        }
        for m in &self.schedule {
            for d in &m.basis_flip_deps {
                match rounds.get(d) {
                    Some(&r) if r < m.round => {}
                    Some(_) => {
                        return invalid(format!("{} is not scheduled before {}", d, m.symbol));
                    }
                    None => return invalid(format!("unknown outcome symbol {d}")),
                }
            }
            if let Some(d) = m
                .outcome_relabel_deps
                .iter()
                .find(|d| !rounds.contains_key(d))
            {
                return invalid(format!("unknown outcome symbol {d}"));
            }
        }
        for oc in &self.output_corrections {
            if !seen_outputs.contains(&oc.wire) {
                return invalid(format!("output correction on non-output node {}", oc.wire));
            }
            if let Some(d) = oc
                .x_deps
                .union(&oc.z_deps)
                .find(|d| !rounds.contains_key(d))
            {
                return invalid(format!("unknown outcome symbol {d}"));
            }
        }
        for &r in &self.output_reads {
            if !seen_outputs.contains(&r) {
                return invalid(format!("read of non-output node {r}"));
            }
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let doc = PatternDoc {
            version: FORMAT_VERSION.to_string(),
            num_nodes: self.num_nodes(),
            edges: self
                .graph
                .edges()
                .into_iter()
                .map(|(a, b)| [a, b])
                .collect(),
            roles: self.roles().to_vec(),
            input_labels: self.input_labels.clone(),
            outputs: self.outputs.clone(),
            local_corrections: self.local_corrections.clone(),
            measurements: self.schedule.clone(),
            output_corrections: self.output_corrections.clone(),
            output_reads: self.output_reads.clone(),
            t_count: self.t_count,
        };
        let mut s = serde_json::to_string_pretty(&doc).expect("pattern serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<CompiledPattern, PatternError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: PatternDoc = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            PatternError::Schema {
                path: if path == "." {
                    "/".to_string()
                } else {
                    to_pointer(&path)
                },
                message: e.into_inner().to_string(),
            }
        })?;

        if doc.version != FORMAT_VERSION {
            return Err(PatternError::Schema {
                path: "/version".into(),
                message: format!("expected {FORMAT_VERSION:?}, got {:?}", doc.version),
            });
        }
        let edges: Vec<(usize, usize)> = doc.edges.iter().map(|e| (e[0], e[1])).collect();
        let mut graph = GraphState::from_edges(doc.num_nodes, &edges)
            .map_err(|e| PatternError::Invalid(e.to_string()))?;
        if graph.num_edges() != edges.len() {
            return invalid("duplicate edge");
        }
        graph
            .set_roles(doc.roles)
            .map_err(|e| PatternError::Invalid(e.to_string()))?;
        let p = CompiledPattern {
            graph,
            local_corrections: doc.local_corrections,
            schedule: doc.measurements,
            output_corrections: doc.output_corrections,
            outputs: doc.outputs,
            output_reads: doc.output_reads,
            input_labels: doc.input_labels,
            t_count: doc.t_count,
        };
        p.validate()?;
        Ok(p)
    }

    /// DOT rendering: nodes colored by role and labeled with their
    /// measurement angle or output slot.
    pub fn to_dot(&self) -> String {
        let mut s = String::from("graph pattern {\n  node [style=filled];\n");
        for (v, role) in self.roles().iter().enumerate() {
            let label = if let Some(m) = self.schedule.iter().find(|m| m.wire == v) {
                let a = match m.angle {
                    crate::tracker::Angle::PlusPi4 => "+",
                    crate::tracker::Angle::MinusPi4 => "-",
                };
                format!("{v}\\nA({a}pi/4) r{}", m.round)
            } else if let Some(w) = self.outputs.iter().position(|&o| o == v) {
                format!("{v}\\nout {w}")
            } else {
                v.to_string()
            };
            let color = match role {
                Role::Input => "palegreen",
                Role::Output => "lightblue",
                Role::Ancilla => "white",
            };
            let _ = writeln!(s, "  {v} [label=\"{label}\", fillcolor={color}];");
        }
        for (a, b) in self.graph.edges() {
            let _ = writeln!(s, "  {a} -- {b};");
        }
        s.push_str("}\n");
        s
    }
}

/// `measurements[2].round` -> `/measurements/2/round`
fn to_pointer(path: &str) -> String {
    let mut out = String::new();
    for seg in path.split('.') {
        let mut rest = seg;
        if let Some(i) = rest.find('[') {
            out.push('/');
            out.push_str(&rest[..i]);
            rest = &rest[i..];
            while let Some(end) = rest.find(']') {
                out.push('/');
                out.push_str(&rest[1..end]);
                rest = &rest[end + 1..];
            }
        } else {
            out.push('/');
            out.push_str(rest);
        }
    }
    out.replace("//", "/")
}
