//! Clifford+T circuit representation and its line-oriented text format.
//!
//! ```text
//! # three-qubit GHZ
//! qubits 3
//! h 0
//! cnot 0 1
//! cnot 1 2
//! ```
//!
//! Instructions are case-insensitive and `#` starts a comment. `qubits N`
//! must come first; `init <wire> zero|plus` lines must precede the first
//! gate.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GateKind {
    H,
    S,
    Sdg,
    X,
    Y,
    Z,
    Cnot,
    Cz,
    T,
    Tdg,
    MeasureZ,
}

impl GateKind {
    pub fn arity(self) -> usize {
        match self {
            GateKind::Cnot | GateKind::Cz => 2,
            _ => 1,
        }
    }

    pub fn is_clifford(self) -> bool {
        !matches!(self, GateKind::T | GateKind::Tdg | GateKind::MeasureZ)
    }

    pub fn is_t_like(self) -> bool {
        matches!(self, GateKind::T | GateKind::Tdg)
    }

    /// Mnemonic used by the text format.
    pub fn name(self) -> &'static str {
        match self {
            GateKind::H => "h",
            GateKind::S => "s",
            GateKind::Sdg => "sdg",
            GateKind::X => "x",
            GateKind::Y => "y",
            GateKind::Z => "z",
            GateKind::Cnot => "cnot",
            GateKind::Cz => "cz",
            GateKind::T => "t",
            GateKind::Tdg => "tdg",
            GateKind::MeasureZ => "measure",
        }
    }
}

impl FromStr for GateKind {
    type Err = ();

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "h" => GateKind::H,
            "s" => GateKind::S,
            "sdg" => GateKind::Sdg,
            "x" => GateKind::X,
            "y" => GateKind::Y,
            "z" => GateKind::Z,
            "cnot" => GateKind::Cnot,
            "cz" => GateKind::Cz,
            "t" => GateKind::T,
            "tdg" => GateKind::Tdg,
            "measure" => GateKind::MeasureZ,
            _ => return Err(()),
        })
    }
}

/// One operation. Two-qubit gates store `(control, target)` order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Gate {
    pub kind: GateKind,
    pub targets: Vec<usize>,
    pub id: usize,
}

impl Gate {
    pub fn new(kind: GateKind, targets: Vec<usize>, id: usize) -> Self {
        Gate { kind, targets, id }
    }

    pub fn qubit(&self) -> usize {
        self.targets[0]
    }
}

impl fmt::Display for Gate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.kind.name())?;
        for t in &self.targets {
            write!(f, " {t}")?;
        }
        Ok(())
    }
}

/// Per-wire preparation: `|0>` or `|+>`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum InitState {
    #[default]
    Zero,
    Plus,
}

impl InitState {
    /// Parse a compact label string such as `+0` (one character per wire).
    pub fn parse_labels(s: &str) -> Option<Vec<InitState>> {
        s.chars()
            .map(|c| match c {
                '0' => Some(InitState::Zero),
                '+' => Some(InitState::Plus),
                _ => None,
            })
            .collect()
    }

    pub fn label(self) -> char {
        match self {
            InitState::Zero => '0',
            InitState::Plus => '+',
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CircuitError {
    #[error("circuit must have at least one wire")]
    NoWires,
    #[error("wire index {wire} out of range for {num_wires} wires")]
    WireOutOfRange { wire: usize, num_wires: usize },
    #[error("gate `{gate}` expects {expected} target(s), got {got}")]
    Arity {
        gate: &'static str,
        expected: usize,
        got: usize,
    },
    #[error("gate `{0}` uses the same wire twice")]
    RepeatedTarget(&'static str),
    #[error("gate on wire {wire} follows a measurement of that wire")]
    GateAfterMeasurement { wire: usize },
    #[error("expected {expected} initial states, got {got}")]
    InitLength { expected: usize, got: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("unknown gate `{0}`")]
    UnknownGate(String),
    #[error(transparent)]
    Invalid(#[from] CircuitError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// Ordered gate list over `num_wires` wires.
///
/// Gate ids are `0..gates.len()` in program order. Measurements are terminal
/// per wire.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Circuit {
    num_wires: usize,
    initial_states: Vec<InitState>,
    gates: Vec<Gate>,
    measured: Vec<bool>,
}

impl Circuit {
    pub fn new(num_wires: usize) -> Result<Self, CircuitError> {
        if num_wires == 0 {
            return Err(CircuitError::NoWires);
        }
        Ok(Circuit {
            num_wires,
            initial_states: vec![InitState::Zero; num_wires],
            gates: Vec::new(),
            measured: vec![false; num_wires],
        })
    }

    pub fn with_initial_states(states: Vec<InitState>) -> Result<Self, CircuitError> {
        let mut c = Circuit::new(states.len())?;
        c.initial_states = states;
        Ok(c)
    }

    pub fn num_wires(&self) -> usize {
        self.num_wires
    }

    pub fn initial_states(&self) -> &[InitState] {
        &self.initial_states
    }

    pub fn gates(&self) -> &[Gate] {
        &self.gates
    }

    pub fn set_initial_state(&mut self, wire: usize, state: InitState) -> Result<(), CircuitError> {
        self.check_wire(wire)?;
        self.initial_states[wire] = state;
        Ok(())
    }

    pub fn set_initial_states(&mut self, states: Vec<InitState>) -> Result<(), CircuitError> {
        if states.len() != self.num_wires {
            return Err(CircuitError::InitLength {
                expected: self.num_wires,
                got: states.len(),
            });
        }
        self.initial_states = states;
        Ok(())
    }

    fn check_wire(&self, wire: usize) -> Result<(), CircuitError> {
        if wire >= self.num_wires {
            Err(CircuitError::WireOutOfRange {
                wire,
                num_wires: self.num_wires,
            })
        } else {
            Ok(())
        }
    }

    /// Append a gate, assigning it the next id.
    pub fn push(&mut self, kind: GateKind, targets: &[usize]) -> Result<usize, CircuitError> {
        if targets.len() != kind.arity() {
            return Err(CircuitError::Arity {
                gate: kind.name(),
                expected: kind.arity(),
                got: targets.len(),
            });
        }
        for &t in targets {
            self.check_wire(t)?;
            if self.measured[t] {
                return Err(CircuitError::GateAfterMeasurement { wire: t });
            }
        }
        if targets.len() == 2 && targets[0] == targets[1] {
            return Err(CircuitError::RepeatedTarget(kind.name()));
        }
        if kind == GateKind::MeasureZ {
            self.measured[targets[0]] = true;
        }
        let id = self.gates.len();
        self.gates.push(Gate::new(kind, targets.to_vec(), id));
        Ok(id)
    }

    pub fn h(&mut self, q: usize) -> Result<usize, CircuitError> {
        self.push(GateKind::H, &[q])
    }

    pub fn cnot(&mut self, c: usize, t: usize) -> Result<usize, CircuitError> {
        self.push(GateKind::Cnot, &[c, t])
    }

    /// Number of T and T† gates.
    pub fn count_t_gates(&self) -> usize {
        self.gates.iter().filter(|g| g.kind.is_t_like()).count()
    }

    /// True when the circuit has no T/T† and can be tableau-simulated end to end.
    pub fn is_clifford(&self) -> bool {
        self.gates.iter().all(|g| !g.kind.is_t_like())
    }

    pub fn has_measurements(&self) -> bool {
        self.measured.iter().any(|&m| m)
    }

    /// Parse the text format.
    pub fn parse(source: &str) -> Result<Circuit, ParseError> {
        let mut circuit: Option<Circuit> = None;
        for (idx, raw) in source.lines().enumerate() {
            let line = idx + 1;
            let err = |kind| ParseError { line, kind };
            let text = raw
                .split('#')
                .next()
                .unwrap_or("")
                .trim()
                .to_ascii_lowercase();
            if text.is_empty() {
                continue;
            }
            let mut words = text.split_whitespace();
            let head = words.next().unwrap_or_default();
            let args: Vec<&str> = words.collect();

            if head == "qubits" {
                if circuit.is_some() {
                    return Err(err(ParseErrorKind::Syntax(
                        "duplicate `qubits` declaration".into(),
                    )));
                }
                let [n] = args[..] else {
                    return Err(err(ParseErrorKind::Syntax(
                        "`qubits` takes one argument".into(),
                    )));
                };
                let n = parse_index(n).map_err(err)?;
                circuit = Some(Circuit::new(n).map_err(|e| err(e.into()))?);
                continue;
            }
            let Some(c) = circuit.as_mut() else {
                return Err(err(ParseErrorKind::Syntax(
                    "`qubits N` must be the first instruction".into(),
                )));
            };

            if head == "init" {
                if !c.gates.is_empty() {
                    return Err(err(ParseErrorKind::Syntax(
                        "`init` after the first gate".into(),
                    )));
                }
                let [wire, state] = args[..] else {
                    return Err(err(ParseErrorKind::Syntax(
                        "`init` takes a wire and `zero` or `plus`".into(),
                    )));
                };
                let wire = parse_index(wire).map_err(err)?;
                let state = match state {
                    "zero" => InitState::Zero,
                    "plus" => InitState::Plus,
                    other => {
                        return Err(err(ParseErrorKind::Syntax(format!(
                            "unknown initial state `{other}`"
                        ))))
                    }
                };
                c.set_initial_state(wire, state)
                    .map_err(|e| err(e.into()))?;
                continue;
            }

            let kind: GateKind = head
                .parse()
                .map_err(|_| err(ParseErrorKind::UnknownGate(head.to_string())))?;
            let targets = args
                .iter()
                .map(|a| parse_index(a))
                .collect::<Result<Vec<_>, _>>()
                .map_err(err)?;
            c.push(kind, &targets).map_err(|e| err(e.into()))?;
        }
        circuit.ok_or(ParseError {
            line: source.lines().count().max(1),
            kind: ParseErrorKind::Syntax("missing `qubits N` declaration".into()),
        })
    }
}

fn parse_index(s: &str) -> Result<usize, ParseErrorKind> {
    s.parse()
        .map_err(|_| ParseErrorKind::Syntax(format!("expected a non-negative integer, got `{s}`")))
}

impl FromStr for Circuit {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Circuit::parse(s)
    }
}

impl fmt::Display for Circuit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "qubits {}", self.num_wires)?;
        for (w, s) in self.initial_states.iter().enumerate() {
            if *s == InitState::Plus {
                writeln!(f, "init {w} plus")?;
            }
        }
        for g in &self.gates {
            writeln!(f, "{g}")?;
        }
        Ok(())
    }
}
