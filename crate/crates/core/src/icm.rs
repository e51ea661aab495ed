//! Inverse-ICM rewriting: every T/T† becomes a CNOT onto a fresh `|0>`
//! ancilla plus a pending `A(±π/4)` measurement on the old wire, leaving a
//! Clifford-only prefix.

use std::fmt::Write as _;

use crate::circuit::{Circuit, GateKind, InitState};
use crate::graph::Role;
use crate::tableau::StabilizerTableau;

/// Which rotation a teleportation implements. `Plus` is T, measured as
/// `A(π/4)`; `Minus` is T†, measured as `A(-π/4)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum TSign {
    Plus,
    Minus,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TeleportedT {
    pub measured_wire: usize,
    pub continuation_wire: usize,
    pub sign: TSign,
    /// Id of the T/T† in the source circuit.
    pub source_gate_id: usize,
    /// Id of the teleporting CNOT in the prefix.
    pub prefix_gate_id: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IcmCircuit {
    pub clifford_prefix: Circuit,
    pub teleportations: Vec<TeleportedT>,
    /// Logical wire `w` ends on prefix wire `wire_map[w]`.
    pub wire_map: Vec<usize>,
    pub roles: Vec<Role>,
    /// Prefix wires read out in the computational basis at the end, in the
    /// order the source circuit measured them.
    pub output_reads: Vec<usize>,
    pub input_labels: Vec<InitState>,
}

/// Rewrite `c` into inverse-ICM form. Ancillas are numbered densely after
/// the original wires in teleportation order.
pub fn to_inverse_icm(c: &Circuit) -> IcmCircuit {
    let orig = c.num_wires();
    let total = orig + c.count_t_gates();
    let mut init = c.initial_states().to_vec();
    init.resize(total, InitState::Zero);
    let mut prefix = Circuit::with_initial_states(init).expect("at least one wire");

    let mut current: Vec<usize> = (0..orig).collect();
    let mut next_ancilla = orig;
    let mut teleportations = Vec::new();
    let mut output_reads = Vec::new();

    for g in c.gates() {
        match g.kind {
            GateKind::T | GateKind::Tdg => {
                let w = current[g.qubit()];
                let a = next_ancilla;
                next_ancilla += 1;
                let id = prefix.cnot(w, a).expect("fresh ancilla in range");
                teleportations.push(TeleportedT {
                    measured_wire: w,
                    continuation_wire: a,
                    sign: if g.kind == GateKind::T {
                        TSign::Plus
                    } else {
                        TSign::Minus
                    },
                    source_gate_id: g.id,
                    prefix_gate_id: id,
                });
                current[g.qubit()] = a;
            }
            GateKind::MeasureZ => output_reads.push(current[g.qubit()]),
            kind => {
                let targets: Vec<usize> = g.targets.iter().map(|&t| current[t]).collect();
                prefix
                    .push(kind, &targets)
                    .expect("retargeted gate stays valid");
            }
        }
    }

    let mut roles: Vec<Role> = (0..total)
        .map(|w| if w < orig { Role::Input } else { Role::Ancilla })
        .collect();
    for &w in &current {
        roles[w] = Role::Output;
    }

    IcmCircuit {
        clifford_prefix: prefix,
        teleportations,
        wire_map: current,
        roles,
        output_reads,
        input_labels: c.initial_states().to_vec(),
    }
}

impl IcmCircuit {
    pub fn num_wires(&self) -> usize {
        self.clifford_prefix.num_wires()
    }

    pub fn t_count(&self) -> usize {
        self.teleportations.len()
    }

    /// Stabilizer state after the whole prefix. The prefix has no
    /// measurements, so the seed never influences the result.
    pub fn prefix_final_tableau(&self, _seed: u64) -> StabilizerTableau {
        let mut t = StabilizerTableau::from_init(self.clifford_prefix.initial_states())
            .expect("prefix has at least one wire");
        for g in self.clifford_prefix.gates() {
            t.apply_gate(g).expect("prefix is Clifford-only");
        }
        t
    }

    /// Prefix in the circuit text format, with `# teleport` lines before
    /// each teleporting CNOT.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "qubits {}", self.num_wires());
        for (w, st) in self.clifford_prefix.initial_states().iter().enumerate() {
            if *st == InitState::Plus {
                let _ = writeln!(s, "init {w} plus");
            }
        }
        for g in self.clifford_prefix.gates() {
            if let Some(tp) = self
                .teleportations
                .iter()
                .find(|t| t.prefix_gate_id == g.id)
            {
                let angle = match tp.sign {
                    TSign::Plus => "+pi/4",
                    TSign::Minus => "-pi/4",
                };
                let _ = writeln!(
                    s,
                    "# teleport m{}: measure wire {} in A({angle}), continue on {}",
                    tp.source_gate_id, tp.measured_wire, tp.continuation_wire
                );
            }
            let _ = writeln!(s, "{g}");
        }
        s
    }
}
