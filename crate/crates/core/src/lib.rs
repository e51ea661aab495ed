//! Compiles Clifford+T circuits into graph states with a feed-forward
//! measurement schedule, and checks the result against a dense simulator.
//!
//! Qubits are 0-indexed everywhere.

pub mod circuit;
pub mod error;
pub mod graph;
pub mod icm;
pub mod lc;
pub mod oracle;
pub mod pattern;
pub mod pipeline;
pub mod random;
pub mod tableau;
pub mod tracker;

pub use circuit::{Circuit, GateKind, InitState};
pub use error::{Error, Result};
pub use graph::{GraphState, LocalCorrection, LocalOp, Role};
pub use lc::{LcMove, Objective};
pub use pattern::CompiledPattern;
pub use pipeline::{compile, compile_detailed, CompileOptions};
