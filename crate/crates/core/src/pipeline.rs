//! End-to-end compilation: inverse ICM, prefix simulation, graph
//! extraction, Pauli tracking and optional LC optimization.

use crate::circuit::{Circuit, InitState};
use crate::error::Result;
use crate::graph::to_graph;
use crate::icm::to_inverse_icm;
use crate::lc::{optimize, optimize_exhaustive, LcMove, Objective};
use crate::pattern::{assemble, CompiledPattern};
use crate::tracker::track;

#[derive(Clone, Debug, PartialEq)]
pub struct CompileOptions {
    pub seed: u64,
    /// Replaces the circuit's declared initial states.
    pub input_state: Option<Vec<InitState>>,
    pub optimize: Option<Objective>,
    pub budget: usize,
    /// Search the whole LC orbit instead of greedy descent.
    pub exhaustive: bool,
}

impl Default for CompileOptions {
    fn default() -> Self {
        CompileOptions {
            seed: 0,
            input_state: None,
            optimize: None,
            budget: 100,
            exhaustive: false,
        }
    }
}

/// A compiled pattern and the LC moves the optimizer applied to it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Compilation {
    pub pattern: CompiledPattern,
    pub moves: Vec<LcMove>,
}

pub fn compile(c: &Circuit, opts: &CompileOptions) -> Result<CompiledPattern> {
    Ok(compile_detailed(c, opts)?.pattern)
}

pub fn compile_detailed(c: &Circuit, opts: &CompileOptions) -> Result<Compilation> {
    let mut c = c.clone();
    if let Some(labels) = &opts.input_state {
        c.set_initial_states(labels.clone())?;
    }
    let icm = to_inverse_icm(&c);
    let ext = to_graph(&icm.prefix_final_tableau(opts.seed))?;
    let tracked = track(&icm)?;
    let pattern = assemble(&icm, ext, tracked)?;
    let Some(objective) = opts.optimize else {
        return Ok(Compilation {
            pattern,
            moves: vec![],
        });
    };
    let (pattern, moves) = if opts.exhaustive {
        optimize_exhaustive(&pattern, objective)?
    } else {
        optimize(&pattern, objective, opts.budget)
    };
    Ok(Compilation { pattern, moves })
}
