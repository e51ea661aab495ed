//! Pauli-frame tracking for teleported T gates.
//!
//! Each teleportation leaves a `Z^m` byproduct on its continuation wire,
//! where `m` is the outcome of the (frame-adjusted) `A(±π/4)` measurement.
//! Byproducts are pushed through the rest of the Clifford prefix. X-type
//! byproducts that land on a measured wire flip its angle
//! (`X A(θ) X = A(-θ)`), Z-type ones relabel its outcome
//! (`Z A(θ) Z = -A(θ)`), and whatever reaches an output wire becomes an
//! output correction.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::f64::consts::FRAC_PI_4;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Deserializer, Serialize, Serializer};
use thiserror::Error;

use crate::circuit::GateKind;
use crate::icm::{IcmCircuit, TSign};

/// Names one teleportation's measurement bit. Derived from the id of the
/// source T/T† gate and written `m<id>`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct OutcomeSymbol(pub usize);

impl fmt::Display for OutcomeSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "m{}", self.0)
    }
}

impl FromStr for OutcomeSymbol {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        s.strip_prefix('m')
            .and_then(|id| id.parse().ok())
            .map(OutcomeSymbol)
            .ok_or_else(|| format!("invalid outcome symbol `{s}`"))
    }
}

impl Serialize for OutcomeSymbol {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for OutcomeSymbol {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub type DepSet = BTreeSet<OutcomeSymbol>;

/// Measurement bits for a branch of the computation.
pub type OutcomeAssignment = BTreeMap<OutcomeSymbol, bool>;

fn toggle(set: &mut DepSet, other: &DepSet) {
    for s in other {
        if !set.remove(s) {
            set.insert(*s);
        }
    }
}

fn parity(set: &DepSet, outcomes: &OutcomeAssignment) -> Result<bool, TrackError> {
    set.iter().try_fold(false, |acc, s| {
        outcomes
            .get(s)
            .map(|&b| acc ^ b)
            .ok_or(TrackError::MissingOutcome(*s))
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TrackError {
    #[error("measurement {0} depends on an outcome that is not available earlier")]
    Cycle(OutcomeSymbol),
    #[error("no outcome given for {0}")]
    MissingOutcome(OutcomeSymbol),
}

/// Observable `A(θ) = cos θ X − sin θ Y` before frame adjustment.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Angle {
    #[serde(rename = "+pi/4")]
    PlusPi4,
    #[serde(rename = "-pi/4")]
    MinusPi4,
}

impl Angle {
    pub fn radians(self) -> f64 {
        match self {
            Angle::PlusPi4 => FRAC_PI_4,
            Angle::MinusPi4 => -FRAC_PI_4,
        }
    }
}

/// Per-wire X and Z byproduct dependencies.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct PauliFrame {
    pub x_deps: Vec<DepSet>,
    pub z_deps: Vec<DepSet>,
}

impl PauliFrame {
    pub fn new(n: usize) -> Self {
        PauliFrame {
            x_deps: vec![DepSet::new(); n],
            z_deps: vec![DepSet::new(); n],
        }
    }

    /// Conjugate the frame through a Clifford gate. Phases are dropped;
    /// only which Paulis are present matters.
    pub fn propagate(&mut self, kind: GateKind, targets: &[usize]) {
        match kind {
            GateKind::H => {
                let q = targets[0];
                std::mem::swap(&mut self.x_deps[q], &mut self.z_deps[q]);
            }
            GateKind::S | GateKind::Sdg => {
                // X -> ±Y = X·Z up to phase
                let q = targets[0];
                let x = self.x_deps[q].clone();
                toggle(&mut self.z_deps[q], &x);
            }
            GateKind::Cnot => {
                let (c, t) = (targets[0], targets[1]);
                let xc = self.x_deps[c].clone();
                toggle(&mut self.x_deps[t], &xc);
                let zt = self.z_deps[t].clone();
                toggle(&mut self.z_deps[c], &zt);
            }
            GateKind::Cz => {
                let (a, b) = (targets[0], targets[1]);
                let (xa, xb) = (self.x_deps[a].clone(), self.x_deps[b].clone());
                toggle(&mut self.z_deps[a], &xb);
                toggle(&mut self.z_deps[b], &xa);
            }
            GateKind::X | GateKind::Y | GateKind::Z => {}
            GateKind::T | GateKind::Tdg | GateKind::MeasureZ => {
                unreachable!("prefix is Clifford-only")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScheduledMeasurement {
    pub wire: usize,
    /// Bit produced by this measurement.
    pub symbol: OutcomeSymbol,
    pub angle: Angle,
    pub basis_flip_deps: DepSet,
    pub outcome_relabel_deps: DepSet,
    pub round: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputCorrection {
    pub wire: usize,
    pub x_deps: DepSet,
    pub z_deps: DepSet,
}

impl OutputCorrection {
    /// `(apply X, apply Z)` for a branch.
    pub fn resolve(&self, outcomes: &OutcomeAssignment) -> Result<(bool, bool), TrackError> {
        Ok((
            parity(&self.x_deps, outcomes)?,
            parity(&self.z_deps, outcomes)?,
        ))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrackResult {
    pub schedule: Vec<ScheduledMeasurement>,
    pub outputs: Vec<OutputCorrection>,
}

/// Build the measurement schedule and output corrections for an
/// inverse-ICM circuit.
pub fn track(icm: &IcmCircuit) -> Result<TrackResult, TrackError> {
    let n = icm.num_wires();
    let mut frame = PauliFrame::new(n);
    let teleports: HashMap<usize, _> = icm
        .teleportations
        .iter()
        .map(|t| (t.prefix_gate_id, t))
        .collect();

    for g in icm.clifford_prefix.gates() {
        frame.propagate(g.kind, &g.targets);
        if let Some(tp) = teleports.get(&g.id) {
            frame.z_deps[tp.continuation_wire].insert(OutcomeSymbol(tp.source_gate_id));
        }
    }

    // measured wires see no gates after their teleport, so the final frame
    // is the frame at measurement time
    let mut rounds: HashMap<OutcomeSymbol, usize> = HashMap::new();
    let mut schedule = Vec::with_capacity(icm.teleportations.len());
    for tp in &icm.teleportations {
        let symbol = OutcomeSymbol(tp.source_gate_id);
        let basis_flip_deps = frame.x_deps[tp.measured_wire].clone();
        let mut round = 0;
        for d in &basis_flip_deps {
            let r = rounds.get(d).ok_or(TrackError::Cycle(symbol))?;
            round = round.max(r + 1);
        }
        rounds.insert(symbol, round);
        schedule.push(ScheduledMeasurement {
            wire: tp.measured_wire,
            symbol,
            angle: match tp.sign {
                TSign::Plus => Angle::PlusPi4,
                TSign::Minus => Angle::MinusPi4,
            },
            basis_flip_deps,
            outcome_relabel_deps: frame.z_deps[tp.measured_wire].clone(),
            round,
        });
    }

    let outputs = icm
        .wire_map
        .iter()
        .filter(|&&w| !frame.x_deps[w].is_empty() || !frame.z_deps[w].is_empty())
        .map(|&w| OutputCorrection {
            wire: w,
            x_deps: frame.x_deps[w].clone(),
            z_deps: frame.z_deps[w].clone(),
        })
        .collect();

    Ok(TrackResult { schedule, outputs })
}

/// Concrete basis for one measurement in one branch.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ResolvedBasis {
    /// Signed angle of the observable actually measured.
    pub angle: f64,
    /// Measure `-A(angle)` instead of `A(angle)`.
    pub relabel: bool,
}

/// Apply the frame to a scheduled measurement: flip the angle when an odd
/// number of X-type dependencies fired, negate the observable when an odd
/// number of Z-type ones did.
pub fn resolve_basis(
    m: &ScheduledMeasurement,
    outcomes: &OutcomeAssignment,
) -> Result<ResolvedBasis, TrackError> {
    let flip = parity(&m.basis_flip_deps, outcomes)?;
    let relabel = parity(&m.outcome_relabel_deps, outcomes)?;
    let angle = if flip {
        -m.angle.radians()
    } else {
        m.angle.radians()
    };
    Ok(ResolvedBasis { angle, relabel })
}
