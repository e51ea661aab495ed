//! Dense statevector simulator used to check compiled patterns.
//!
//! Qubit `i` is bit `i` of the amplitude index.

use std::f64::consts::{FRAC_1_SQRT_2, FRAC_PI_4};

use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::circuit::{Circuit, GateKind, InitState};
use crate::graph::LocalOp;
use crate::pattern::CompiledPattern;
use crate::tableau::PauliString;
use crate::tracker::{resolve_basis, OutcomeAssignment, OutcomeSymbol, TrackError};

pub const DEFAULT_CAP: usize = 14;
pub const DEFAULT_TOL: f64 = 1e-9;
/// Enumerate every branch up to this many measurements, sample beyond.
pub const EXHAUSTIVE_LIMIT: usize = 8;

const ZERO: C = C::new(0.0, 0.0);
const ONE: C = C::new(1.0, 0.0);
const I: C = C::new(0.0, 1.0);

pub type Matrix2 = [[C; 2]; 2];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    #[error("{n} qubits exceeds the simulator cap of {cap}")]
    CapExceeded { n: usize, cap: usize },
    #[error("state dimensions differ ({0} vs {1} qubits)")]
    DimensionMismatch(usize, usize),
    #[error("circuit contains a measurement; only unitary circuits can be simulated")]
    Measurement,
    #[error("measurement branch {0} has zero probability")]
    ZeroProbability(OutcomeSymbol),
    #[error("qubits outside the kept register are entangled with it")]
    NotProduct,
    #[error(transparent)]
    Track(#[from] TrackError),
}

fn check_cap(n: usize, cap: usize) -> Result<(), OracleError> {
    if n > cap {
        Err(OracleError::CapExceeded { n, cap })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct DenseState {
    n: usize,
    amps: Vec<C>,
}

impl DenseState {
    /// `|0…0>` on `n` qubits.
    pub fn zero(n: usize, cap: usize) -> Result<Self, OracleError> {
        check_cap(n, cap)?;
        let mut amps = vec![ZERO; 1 << n];
        amps[0] = ONE;
        Ok(DenseState { n, amps })
    }

    pub fn from_labels(labels: &[InitState], cap: usize) -> Result<Self, OracleError> {
        let mut s = Self::zero(labels.len(), cap)?;
        for (q, l) in labels.iter().enumerate() {
            if *l == InitState::Plus {
                s.h(q);
            }
        }
        Ok(s)
    }

    /// Computational basis state; bit `i` of `index` is qubit `i`.
    pub fn basis(n: usize, index: usize) -> Self {
        let mut amps = vec![ZERO; 1 << n];
        amps[index] = ONE;
        DenseState { n, amps }
    }

    /// Normalizes the given amplitudes.
    pub fn from_amplitudes(amps: Vec<C>) -> Self {
        assert!(
            amps.len().is_power_of_two(),
            "length must be a power of two"
        );
        let n = amps.len().trailing_zeros() as usize;
        let mut s = DenseState { n, amps };
        s.normalize();
        s
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn amplitudes(&self) -> &[C] {
        &self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn normalize(&mut self) {
        let norm = self.norm();
        if norm > 0.0 {
            for a in &mut self.amps {
                *a /= norm;
            }
        }
    }

    pub fn inner(&self, other: &DenseState) -> Result<C, OracleError> {
        if self.n != other.n {
            return Err(OracleError::DimensionMismatch(self.n, other.n));
        }
        Ok(self
            .amps
            .iter()
            .zip(&other.amps)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn apply_1q(&mut self, q: usize, m: &Matrix2) {
        let bit = 1 << q;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    /// Apply `m` to `target` on the branch where every control is 1.
    pub fn apply_controlled(&mut self, controls: &[usize], target: usize, m: &Matrix2) {
        let mask = controls.iter().fold(0, |acc, &c| acc | 1 << c);
        let bit = 1 << target;
        for i in 0..self.amps.len() {
            if i & bit == 0 && i & mask == mask {
                let (a0, a1) = (self.amps[i], self.amps[i | bit]);
                self.amps[i] = m[0][0] * a0 + m[0][1] * a1;
                self.amps[i | bit] = m[1][0] * a0 + m[1][1] * a1;
            }
        }
    }

    pub fn h(&mut self, q: usize) {
        let s = C::new(FRAC_1_SQRT_2, 0.0);
        self.apply_1q(q, &[[s, s], [s, -s]]);
    }

    pub fn x(&mut self, q: usize) {
        self.apply_1q(q, &[[ZERO, ONE], [ONE, ZERO]]);
    }

    pub fn y(&mut self, q: usize) {
        self.apply_1q(q, &[[ZERO, -I], [I, ZERO]]);
    }

    pub fn z(&mut self, q: usize) {
        self.phase(q, -ONE);
    }

    pub fn s(&mut self, q: usize) {
        self.phase(q, I);
    }

    pub fn sdg(&mut self, q: usize) {
        self.phase(q, -I);
    }

    pub fn t(&mut self, q: usize) {
        self.phase(q, C::from_polar(1.0, FRAC_PI_4));
    }

    pub fn tdg(&mut self, q: usize) {
        self.phase(q, C::from_polar(1.0, -FRAC_PI_4));
    }

    /// `H S H`
    pub fn sqrt_x(&mut self, q: usize) {
        let (p, m) = (C::new(0.5, 0.5), C::new(0.5, -0.5));
        self.apply_1q(q, &[[p, m], [m, p]]);
    }

    /// `H S† H`
    pub fn sqrt_xdg(&mut self, q: usize) {
        let (p, m) = (C::new(0.5, -0.5), C::new(0.5, 0.5));
        self.apply_1q(q, &[[p, m], [m, p]]);
    }

    fn phase(&mut self, q: usize, ph: C) {
        let bit = 1 << q;
        for (i, a) in self.amps.iter_mut().enumerate() {
            if i & bit != 0 {
                *a *= ph;
            }
        }
    }

    pub fn cnot(&mut self, c: usize, t: usize) {
        let (cb, tb) = (1 << c, 1 << t);
        for i in 0..self.amps.len() {
            if i & cb != 0 && i & tb == 0 {
                self.amps.swap(i, i | tb);
            }
        }
    }

    pub fn cz(&mut self, a: usize, b: usize) {
        let mask = (1 << a) | (1 << b);
        for (i, amp) in self.amps.iter_mut().enumerate() {
            if i & mask == mask {
                *amp = -*amp;
            }
        }
    }

    /// Doubly controlled X.
    pub fn ccx(&mut self, a: usize, b: usize, t: usize) {
        self.apply_controlled(&[a, b], t, &[[ZERO, ONE], [ONE, ZERO]]);
    }

    pub fn apply_gate(&mut self, kind: GateKind, targets: &[usize]) -> Result<(), OracleError> {
        let q = targets[0];
        match kind {
            GateKind::H => self.h(q),
            GateKind::S => self.s(q),
            GateKind::Sdg => self.sdg(q),
            GateKind::X => self.x(q),
            GateKind::Y => self.y(q),
            GateKind::Z => self.z(q),
            GateKind::T => self.t(q),
            GateKind::Tdg => self.tdg(q),
            GateKind::Cnot => self.cnot(q, targets[1]),
            GateKind::Cz => self.cz(q, targets[1]),
            GateKind::MeasureZ => return Err(OracleError::Measurement),
        }
        Ok(())
    }

    pub fn apply_local(&mut self, op: LocalOp, q: usize) {
        match op {
            LocalOp::H => self.h(q),
            LocalOp::P => self.s(q),
            LocalOp::Pdag => self.sdg(q),
            LocalOp::Z => self.z(q),
            LocalOp::SqrtX => self.sqrt_x(q),
            LocalOp::SqrtXdg => self.sqrt_xdg(q),
        }
    }

    /// Apply a signed Pauli string as an operator.
    pub fn apply_pauli(&mut self, p: &PauliString) {
        for q in 0..p.len() {
            match p.letter(q) {
                'X' => self.x(q),
                'Y' => self.y(q),
                'Z' => self.z(q),
                _ => {}
            }
        }
        if p.negative {
            for a in &mut self.amps {
                *a = -*a;
            }
        }
    }

    /// True if `p|ψ> = |ψ>` to within `tol` in every amplitude.
    pub fn is_stabilized_by(&self, p: &PauliString, tol: f64) -> bool {
        let mut moved = self.clone();
        moved.apply_pauli(p);
        moved
            .amps
            .iter()
            .zip(&self.amps)
            .all(|(a, b)| (a - b).norm() <= tol)
    }

    fn project(&mut self, q: usize, v: [C; 2]) -> f64 {
        let bit = 1 << q;
        let mut weight = 0.0;
        for i in 0..self.amps.len() {
            if i & bit == 0 {
                let inner = v[0].conj() * self.amps[i] + v[1].conj() * self.amps[i | bit];
                weight += inner.norm_sqr();
                self.amps[i] = v[0] * inner;
                self.amps[i | bit] = v[1] * inner;
            }
        }
        self.normalize();
        weight
    }

    /// Project qubit `q` onto `|outcome>` and renormalize; returns the
    /// branch probability. A zero-probability branch leaves the zero vector.
    pub fn measure_z(&mut self, q: usize, outcome: bool) -> f64 {
        self.project(q, if outcome { [ZERO, ONE] } else { [ONE, ZERO] })
    }

    /// Project qubit `q` onto the eigenvector of `sign·A(angle)` with
    /// eigenvalue `(−1)^outcome`, where `A(θ) = cos θ X − sin θ Y`.
    /// Returns the branch probability; a zero-probability branch leaves
    /// the zero vector.
    pub fn measure_rotated(&mut self, q: usize, angle: f64, sign: i8, outcome: bool) -> f64 {
        let lambda = if (sign < 0) != outcome { -1.0 } else { 1.0 };
        let v1 = C::from_polar(lambda, -angle) * FRAC_1_SQRT_2;
        self.project(q, [C::new(FRAC_1_SQRT_2, 0.0), v1])
    }

    /// Split off the qubits in `keep`, which must be unentangled with the
    /// rest. Qubit `keep[i]` becomes qubit `i` of the result.
    pub fn factor_out(&self, keep: &[usize]) -> Result<DenseState, OracleError> {
        let rest: Vec<usize> = (0..self.n).filter(|q| !keep.contains(q)).collect();
        let spread = |idx: usize, qs: &[usize]| {
            qs.iter()
                .enumerate()
                .fold(0, |acc, (i, &q)| acc | (((idx >> i) & 1) << q))
        };
        let (dk, dr) = (1usize << keep.len(), 1usize << rest.len());
        // largest amplitude fixes a reference configuration of the rest
        let peak = (0..self.amps.len())
            .max_by(|&a, &b| self.amps[a].norm_sqr().total_cmp(&self.amps[b].norm_sqr()))
            .expect("non-empty state");
        let r0 = (0..dr)
            .find(|&r| spread(r, &rest) == peak & spread(dr - 1, &rest))
            .expect("peak decomposes");
        let mut kept = DenseState {
            n: keep.len(),
            amps: (0..dk)
                .map(|k| self.amps[spread(k, keep) | spread(r0, &rest)])
                .collect(),
        };
        kept.normalize();
        let mut residual = 0.0;
        for r in 0..dr {
            let col: Vec<C> = (0..dk)
                .map(|k| self.amps[spread(k, keep) | spread(r, &rest)])
                .collect();
            let coef: C = kept.amps.iter().zip(&col).map(|(a, b)| a.conj() * b).sum();
            residual += col
                .iter()
                .zip(&kept.amps)
                .map(|(c, a)| (c - coef * a).norm_sqr())
                .sum::<f64>();
        }
        if residual > 1e-12 {
            return Err(OracleError::NotProduct);
        }
        Ok(kept)
    }
}

/// `|<a|b>| ≥ 1 − tol` for normalized states.
pub fn equal_up_to_global_phase(
    a: &DenseState,
    b: &DenseState,
    tol: f64,
) -> Result<bool, OracleError> {
    Ok(a.inner(b)?.norm() >= 1.0 - tol)
}

/// Exact state of a measurement-free circuit from its declared inputs.
pub fn run_circuit(c: &Circuit, cap: usize) -> Result<DenseState, OracleError> {
    let mut s = DenseState::from_labels(c.initial_states(), cap)?;
    for g in c.gates() {
        s.apply_gate(g.kind, &g.targets)?;
    }
    Ok(s)
}

/// Same as `run_circuit` but skips terminal measurements.
pub fn run_unitary_part(c: &Circuit, cap: usize) -> Result<DenseState, OracleError> {
    let mut s = DenseState::from_labels(c.initial_states(), cap)?;
    for g in c.gates().iter().filter(|g| g.kind != GateKind::MeasureZ) {
        s.apply_gate(g.kind, &g.targets)?;
    }
    Ok(s)
}

/// `V† = (1/2)[[1−i, 1+i], [1+i, 1−i]]`
pub fn v_dagger_matrix() -> Matrix2 {
    let (a, b) = (C::new(0.5, -0.5), C::new(0.5, 0.5));
    [[a, b], [b, a]]
}

/// `|+>^n`, `CZ` on every edge, then the local corrections in order.
pub fn prepare_pattern_state(p: &CompiledPattern, cap: usize) -> Result<DenseState, OracleError> {
    let n = p.num_nodes();
    let mut s = DenseState::zero(n, cap)?;
    for q in 0..n {
        s.h(q);
    }
    for (a, b) in p.graph.edges() {
        s.cz(a, b);
    }
    for c in &p.local_corrections {
        s.apply_local(c.op, c.qubit);
    }
    Ok(s)
}

/// Execute one branch of the pattern and return the output register, with
/// logical wire `w` as qubit `w`.
pub fn run_pattern(
    p: &CompiledPattern,
    outcomes: &OutcomeAssignment,
    cap: usize,
) -> Result<DenseState, OracleError> {
    let mut s = prepare_pattern_state(p, cap)?;
    let mut order: Vec<_> = p.schedule.iter().collect();
    order.sort_by_key(|m| m.round);
    for m in order {
        let basis = resolve_basis(m, outcomes)?;
        let bit = *outcomes
            .get(&m.symbol)
            .ok_or(TrackError::MissingOutcome(m.symbol))?;
        let sign = if basis.relabel { -1 } else { 1 };
        if s.measure_rotated(m.wire, basis.angle, sign, bit) < 1e-12 {
            return Err(OracleError::ZeroProbability(m.symbol));
        }
    }
    for oc in &p.output_corrections {
        let (x, z) = oc.resolve(outcomes)?;
        if x {
            s.x(oc.wire);
        }
        if z {
            s.z(oc.wire);
        }
    }
    s.factor_out(&p.outputs)
}

/// Every assignment of the pattern's outcome symbols, in counting order.
pub fn all_assignments(p: &CompiledPattern) -> Vec<OutcomeAssignment> {
    let syms: Vec<OutcomeSymbol> = p.schedule.iter().map(|m| m.symbol).collect();
    (0..1usize << syms.len())
        .map(|bits| {
            syms.iter()
                .enumerate()
                .map(|(i, &s)| (s, bits >> i & 1 == 1))
                .collect()
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyOptions {
    pub cap: usize,
    pub tol: f64,
    pub seed: u64,
    /// Branches drawn when there are more than `EXHAUSTIVE_LIMIT` measurements.
    pub samples: usize,
    /// Enumerate every branch regardless of measurement count.
    pub force_exhaustive: bool,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            cap: DEFAULT_CAP,
            tol: DEFAULT_TOL,
            seed: 0,
            samples: 256,
            force_exhaustive: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Mismatch {
    pub outcomes: OutcomeAssignment,
    pub overlap: f64,
}

#[derive(Clone, Debug, PartialEq)]
pub struct VerifyReport {
    pub branches: usize,
    pub exhaustive: bool,
    pub mismatch: Option<Mismatch>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.mismatch.is_none()
    }
}

/// Check every branch of `p` (or a seeded sample) against `expected`.
pub fn verify_against(
    p: &CompiledPattern,
    expected: &DenseState,
    opts: &VerifyOptions,
) -> Result<VerifyReport, OracleError> {
    check_cap(p.num_nodes(), opts.cap)?;
    if expected.num_qubits() != p.outputs.len() {
        return Err(OracleError::DimensionMismatch(
            expected.num_qubits(),
            p.outputs.len(),
        ));
    }
    let exhaustive = opts.force_exhaustive || p.schedule.len() <= EXHAUSTIVE_LIMIT;
    let branches = if exhaustive {
        all_assignments(p)
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        (0..opts.samples)
            .map(|_| {
                p.schedule
                    .iter()
                    .map(|m| (m.symbol, rng.random_bool(0.5)))
                    .collect()
            })
            .collect()
    };
    let count = branches.len();
    for outcomes in branches {
        let overlap = match run_pattern(p, &outcomes, opts.cap) {
            Ok(out) => out.inner(expected)?.norm(),
            Err(OracleError::NotProduct) => 0.0,
            Err(e) => return Err(e),
        };
        if overlap < 1.0 - opts.tol {
            return Ok(VerifyReport {
                branches: count,
                exhaustive,
                mismatch: Some(Mismatch { outcomes, overlap }),
            });
        }
    }
    Ok(VerifyReport {
        branches: count,
        exhaustive,
        mismatch: None,
    })
}

/// Check `p` against direct simulation of `c` (terminal measurements are
/// ignored; the pre-measurement states are compared).
pub fn verify(
    c: &Circuit,
    p: &CompiledPattern,
    opts: &VerifyOptions,
) -> Result<VerifyReport, OracleError> {
    check_cap(p.num_nodes(), opts.cap)?;
    let expected = run_unitary_part(c, opts.cap)?;
    verify_against(p, &expected, opts)
}
