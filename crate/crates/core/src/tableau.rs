//! Stabilizer-generator tableau: `n` rows of X-bits, Z-bits and a sign.
//!
//! Only the stabilizer generators are kept (no destabilizer half), so a
//! deterministic Z measurement recovers its outcome by GF(2) elimination.
//! A row with both bits set on a qubit stands for `Y` on that qubit.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use thiserror::Error;

use crate::circuit::{Gate, GateKind, InitState};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TableauError {
    #[error("a tableau needs at least one qubit")]
    Empty,
    #[error("gate `{0}` is not Clifford")]
    NonClifford(&'static str),
    #[error("qubit {qubit} out of range for {n} qubits")]
    QubitOutOfRange { qubit: usize, n: usize },
    #[error("row {row} out of range for {n} rows")]
    RowOutOfRange { row: usize, n: usize },
    #[error("rowsum needs two distinct rows, got {0} twice")]
    SameRow(usize),
    #[error("rows {0} and {1} anticommute")]
    NonCommuting(usize, usize),
    #[error("generators have rank {rank}, expected {n}")]
    RankDeficient { rank: usize, n: usize },
    #[error("expected {expected} rows of length {expected}, found {found}")]
    Shape { expected: usize, found: usize },
    #[error("invalid Pauli string `{0}`")]
    BadPauli(String),
}

/// A Hermitian Pauli operator `±P_1 ⊗ … ⊗ P_n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PauliString {
    pub x: Vec<bool>,
    pub z: Vec<bool>,
    pub negative: bool,
}

impl PauliString {
    pub fn identity(n: usize) -> Self {
        PauliString {
            x: vec![false; n],
            z: vec![false; n],
            negative: false,
        }
    }

    pub fn single(n: usize, qubit: usize, letter: char) -> Self {
        let mut p = PauliString::identity(n);
        p.set_letter(qubit, letter);
        p
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn letter(&self, q: usize) -> char {
        match (self.x[q], self.z[q]) {
            (false, false) => 'I',
            (true, false) => 'X',
            (true, true) => 'Y',
            (false, true) => 'Z',
        }
    }

    pub fn set_letter(&mut self, q: usize, letter: char) {
        let (x, z) = match letter {
            'X' => (true, false),
            'Y' => (true, true),
            'Z' => (false, true),
            _ => (false, false),
        };
        self.x[q] = x;
        self.z[q] = z;
    }

    pub fn is_identity(&self) -> bool {
        self.x.iter().chain(&self.z).all(|b| !b)
    }

    pub fn commutes_with(&self, other: &PauliString) -> bool {
        let mut anti = false;
        for q in 0..self.len() {
            anti ^= (self.x[q] & other.z[q]) ^ (self.z[q] & other.x[q]);
        }
        !anti
    }

    /// Product `self · other` with the phase accumulated qubit by qubit from
    /// single-qubit Pauli products (`XY = iZ` and cyclic). Returns the bits of
    /// the product and the total phase as a power of `i` (mod 4), signs
    /// included.
    pub fn product(&self, other: &PauliString) -> (PauliString, u8) {
        let mut power = 2 * (self.negative as u8) + 2 * (other.negative as u8);
        let mut out = PauliString::identity(self.len());
        for q in 0..self.len() {
            let a = self.letter(q);
            let b = other.letter(q);
            power += single_product_power(a, b);
            out.x[q] = self.x[q] ^ other.x[q];
            out.z[q] = self.z[q] ^ other.z[q];
        }
        (out, power % 4)
    }

    /// Replace `self` by `left · self`. Fails if the product is not
    /// Hermitian, which happens exactly when the two anticommute.
    fn left_multiply(&mut self, left: &PauliString) -> Result<(), ()> {
        let (mut p, power) = left.product(self);
        match power {
            0 => p.negative = false,
            2 => p.negative = true,
            _ => return Err(()),
        }
        *self = p;
        Ok(())
    }

    fn h(&mut self, q: usize) {
        self.negative ^= self.x[q] & self.z[q];
        std::mem::swap(&mut self.x[q], &mut self.z[q]);
    }

    fn s(&mut self, q: usize) {
        self.negative ^= self.x[q] & self.z[q];
        self.z[q] ^= self.x[q];
    }

    fn sdg(&mut self, q: usize) {
        self.negative ^= self.x[q] & !self.z[q];
        self.z[q] ^= self.x[q];
    }

    fn cnot(&mut self, c: usize, t: usize) {
        self.negative ^= self.x[c] & self.z[t] & !(self.x[t] ^ self.z[c]);
        self.x[t] ^= self.x[c];
        self.z[c] ^= self.z[t];
    }

    fn cz(&mut self, a: usize, b: usize) {
        self.negative ^= self.x[a] & self.x[b] & (self.z[a] ^ self.z[b]);
        self.z[a] ^= self.x[b];
        self.z[b] ^= self.x[a];
    }

    /// Conjugate by a Clifford gate: `self ← U self U†`.
    pub fn conjugate(&mut self, kind: GateKind, targets: &[usize]) -> Result<(), TableauError> {
        match kind {
            GateKind::H => self.h(targets[0]),
            GateKind::S => self.s(targets[0]),
            GateKind::Sdg => self.sdg(targets[0]),
            GateKind::X => self.negative ^= self.z[targets[0]],
            GateKind::Z => self.negative ^= self.x[targets[0]],
            GateKind::Y => self.negative ^= self.x[targets[0]] ^ self.z[targets[0]],
            GateKind::Cnot => self.cnot(targets[0], targets[1]),
            GateKind::Cz => self.cz(targets[0], targets[1]),
            GateKind::T | GateKind::Tdg | GateKind::MeasureZ => {
                return Err(TableauError::NonClifford(kind.name()))
            }
        }
        Ok(())
    }
}

/// Power of `i` in the product of two single-qubit Pauli letters.
fn single_product_power(a: char, b: char) -> u8 {
    match (a, b) {
        ('X', 'Y') | ('Y', 'Z') | ('Z', 'X') => 1,
        ('Y', 'X') | ('Z', 'Y') | ('X', 'Z') => 3,
        _ => 0,
    }
}

/// Phase power of `a · b` via the closed-form exponent function of Aaronson
/// and Gottesman's CHP rowsum. Independent of [`PauliString::product`] and
/// used to cross-check it.
pub fn product_power_closed_form(a: &PauliString, b: &PauliString) -> u8 {
    let g = |x1: bool, z1: bool, x2: bool, z2: bool| -> i32 {
        let (x2, z2) = (x2 as i32, z2 as i32);
        match (x1, z1) {
            (false, false) => 0,
            (true, true) => z2 - x2,
            (true, false) => z2 * (2 * x2 - 1),
            (false, true) => x2 * (1 - 2 * z2),
        }
    };
    let mut sum = 2 * a.negative as i32 + 2 * b.negative as i32;
    for q in 0..a.len() {
        sum += g(a.x[q], a.z[q], b.x[q], b.z[q]);
    }
    sum.rem_euclid(4) as u8
}

impl fmt::Display for PauliString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", if self.negative { '-' } else { '+' })?;
        for q in 0..self.len() {
            write!(f, "{}", self.letter(q))?;
        }
        Ok(())
    }
}

impl FromStr for PauliString {
    type Err = TableauError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (negative, body) = match s.chars().next() {
            Some('+') => (false, &s[1..]),
            Some('-') => (true, &s[1..]),
            _ => (false, s),
        };
        let mut p = PauliString::identity(body.len());
        p.negative = negative;
        for (q, c) in body.chars().enumerate() {
            if !"IXYZ".contains(c) {
                return Err(TableauError::BadPauli(s.to_string()));
            }
            p.set_letter(q, c);
        }
        if p.is_empty() {
            return Err(TableauError::BadPauli(s.to_string()));
        }
        Ok(p)
    }
}

/// Outcome of a Z-basis measurement on a tableau.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ZMeasurement {
    pub outcome: bool,
    pub deterministic: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizerTableau {
    n: usize,
    rows: Vec<PauliString>,
}

impl StabilizerTableau {
    /// Product state with `Z_i` (for `Zero`) or `X_i` (for `Plus`) on each wire.
    pub fn from_init(init: &[InitState]) -> Result<Self, TableauError> {
        let n = init.len();
        if n == 0 {
            return Err(TableauError::Empty);
        }
        let rows = init
            .iter()
            .enumerate()
            .map(|(q, s)| match s {
                InitState::Zero => PauliString::single(n, q, 'Z'),
                InitState::Plus => PauliString::single(n, q, 'X'),
            })
            .collect();
        Ok(StabilizerTableau { n, rows })
    }

    /// Build from explicit generators, checking commutation and independence.
    pub fn from_rows(rows: Vec<PauliString>) -> Result<Self, TableauError> {
        let n = rows.len();
        if n == 0 {
            return Err(TableauError::Empty);
        }
        if let Some(bad) = rows.iter().find(|r| r.len() != n) {
            return Err(TableauError::Shape {
                expected: n,
                found: bad.len(),
            });
        }
        let t = StabilizerTableau { n, rows };
        t.validate()?;
        Ok(t)
    }

    pub fn from_strs(rows: &[&str]) -> Result<Self, TableauError> {
        let rows = rows
            .iter()
            .map(|r| r.parse())
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_rows(rows)
    }

    pub(crate) fn from_rows_unchecked(rows: Vec<PauliString>) -> Self {
        StabilizerTableau {
            n: rows.len(),
            rows,
        }
    }

    pub fn num_qubits(&self) -> usize {
        self.n
    }

    pub fn rows(&self) -> &[PauliString] {
        &self.rows
    }

    pub fn row(&self, i: usize) -> &PauliString {
        &self.rows[i]
    }

    pub fn x(&self, row: usize, col: usize) -> bool {
        self.rows[row].x[col]
    }

    pub fn z(&self, row: usize, col: usize) -> bool {
        self.rows[row].z[col]
    }

    pub fn is_negative(&self, row: usize) -> bool {
        self.rows[row].negative
    }

    /// Generators in row order.
    pub fn extract_stabilizers(&self) -> Vec<PauliString> {
        self.rows.clone()
    }

    /// All generators commute and are independent over GF(2).
    pub fn validate(&self) -> Result<(), TableauError> {
        for i in 0..self.n {
            for j in i + 1..self.n {
                if !self.rows[i].commutes_with(&self.rows[j]) {
                    return Err(TableauError::NonCommuting(i, j));
                }
            }
        }
        let rank = self.rank();
        if rank != self.n {
            return Err(TableauError::RankDeficient { rank, n: self.n });
        }
        Ok(())
    }

    /// GF(2) rank of the `[X | Z]` matrix.
    pub fn rank(&self) -> usize {
        let mut bits: Vec<Vec<bool>> = self
            .rows
            .iter()
            .map(|r| r.x.iter().chain(&r.z).copied().collect())
            .collect();
        let mut rank = 0;
        for col in 0..2 * self.n {
            let Some(p) = (rank..bits.len()).find(|&r| bits[r][col]) else {
                continue;
            };
            bits.swap(rank, p);
            for r in 0..bits.len() {
                if r != rank && bits[r][col] {
                    let pivot = bits[rank].clone();
                    bits[r].iter_mut().zip(pivot).for_each(|(a, b)| *a ^= b);
                }
            }
            rank += 1;
        }
        rank
    }

    fn check_qubit(&self, q: usize) -> Result<(), TableauError> {
        if q >= self.n {
            Err(TableauError::QubitOutOfRange {
                qubit: q,
                n: self.n,
            })
        } else {
            Ok(())
        }
    }

    /// Conjugate every generator by a Clifford gate.
    pub fn apply_gate(&mut self, gate: &Gate) -> Result<(), TableauError> {
        self.apply(gate.kind, &gate.targets)
    }

    pub fn apply(&mut self, kind: GateKind, targets: &[usize]) -> Result<(), TableauError> {
        if !kind.is_clifford() {
            return Err(TableauError::NonClifford(kind.name()));
        }
        for &q in targets {
            self.check_qubit(q)?;
        }
        for row in &mut self.rows {
            row.conjugate(kind, targets)?;
        }
        Ok(())
    }

    pub fn h(&mut self, q: usize) {
        self.rows.iter_mut().for_each(|r| r.h(q));
    }

    pub fn s(&mut self, q: usize) {
        self.rows.iter_mut().for_each(|r| r.s(q));
    }

    pub fn sdg(&mut self, q: usize) {
        self.rows.iter_mut().for_each(|r| r.sdg(q));
    }

    pub fn z_gate(&mut self, q: usize) {
        self.rows.iter_mut().for_each(|r| r.negative ^= r.x[q]);
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        self.rows.swap(i, j);
    }

    /// Replace generator `j` with `s_i · s_j`.
    pub fn rowsum(&mut self, i: usize, j: usize) -> Result<(), TableauError> {
        if i == j {
            return Err(TableauError::SameRow(i));
        }
        for r in [i, j] {
            if r >= self.n {
                return Err(TableauError::RowOutOfRange { row: r, n: self.n });
            }
        }
        let src = self.rows[i].clone();
        self.rows[j]
            .left_multiply(&src)
            .map_err(|_| TableauError::NonCommuting(i, j))
    }

    /// Measure `Z_q`. A random outcome comes from `forced` when given,
    /// otherwise from `rng`. A deterministic outcome ignores `forced`.
    pub fn measure_z<R: Rng + ?Sized>(
        &mut self,
        q: usize,
        forced: Option<bool>,
        rng: &mut R,
    ) -> Result<ZMeasurement, TableauError> {
        self.check_qubit(q)?;
        if let Some(p) = (0..self.n).find(|&r| self.rows[r].x[q]) {
            for r in 0..self.n {
                if r != p && self.rows[r].x[q] {
                    self.rowsum(p, r)?;
                }
            }
            let outcome = forced.unwrap_or_else(|| rng.random());
            let mut row = PauliString::single(self.n, q, 'Z');
            row.negative = outcome;
            self.rows[p] = row;
            Ok(ZMeasurement {
                outcome,
                deterministic: false,
            })
        } else {
            let z = PauliString::single(self.n, q, 'Z');
            let negative = self
                .stabilizer_sign(&z)
                .expect("Z_q commutes with every generator, so ±Z_q is in the group");
            Ok(ZMeasurement {
                outcome: negative,
                deterministic: true,
            })
        }
    }

    /// Rows in reduced row-echelon form over the column order
    /// `x_0..x_{n-1}, z_0..z_{n-1}`, each row a signed group element.
    /// Two tableaus generate the same group iff their canonical forms match.
    pub fn canonical_form(&self) -> StabilizerTableau {
        let mut rows = self.rows.clone();
        let n = self.n;
        let bit = |p: &PauliString, col: usize| if col < n { p.x[col] } else { p.z[col - n] };
        let mut rank = 0;
        for col in 0..2 * n {
            let Some(p) = (rank..rows.len()).find(|&r| bit(&rows[r], col)) else {
                continue;
            };
            rows.swap(rank, p);
            let pivot = rows[rank].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != rank && bit(row, col) {
                    // generators commute, so products stay Hermitian
                    row.left_multiply(&pivot)
                        .expect("canonical_form requires commuting generators");
                }
            }
            rank += 1;
        }
        StabilizerTableau { n, rows }
    }

    pub fn same_group(&self, other: &StabilizerTableau) -> bool {
        self.n == other.n && self.canonical_form() == other.canonical_form()
    }

    /// If `±p` belongs to the stabilizer group, return whether the member
    /// is `-p`. Returns `None` when neither sign is in the group.
    pub fn stabilizer_sign(&self, p: &PauliString) -> Option<bool> {
        let canon = self.canonical_form();
        let n = self.n;
        let mut rest = p.clone();
        rest.negative = false;
        let mut power = 0u8;
        for row in canon.rows() {
            let Some(col) = (0..2 * n).find(|&c| if c < n { row.x[c] } else { row.z[c - n] })
            else {
                continue;
            };
            let hit = if col < n {
                rest.x[col]
            } else {
                rest.z[col - n]
            };
            if hit {
                let (prod, pw) = row.product(&rest);
                power = (power + pw) % 4;
                rest = prod;
                rest.negative = false;
            }
        }
        if !rest.is_identity() {
            return None;
        }
        // row_k · … · row_1 · p = i^power, and every row is Hermitian and
        // squares to identity, so p = i^power · row_1 · … · row_k.
        match power {
            0 => Some(false),
            2 => Some(true),
            _ => None,
        }
    }

    /// Debug dump: one generator per line, e.g. `+XZX`.
    pub fn dump(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for StabilizerTableau {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::circuit::Circuit;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn strs(t: &StabilizerTableau) -> Vec<String> {
        t.rows().iter().map(|r| r.to_string()).collect()
    }

    fn ghz() -> StabilizerTableau {
        let mut t = StabilizerTableau::from_init(&[InitState::Zero; 3]).unwrap();
        let c = Circuit::parse("qubits 3\nh 0\ncnot 0 1\ncnot 1 2").unwrap();
        for g in c.gates() {
            t.apply_gate(g).unwrap();
        }
        t
    }

    #[test]
    fn init_states() {
        let t = StabilizerTableau::from_init(&[InitState::Zero; 3]).unwrap();
        assert_eq!(strs(&t), ["+ZII", "+IZI", "+IIZ"]);
        let mut init = vec![InitState::Zero; 5];
        init[0] = InitState::Plus;
        let t = StabilizerTableau::from_init(&init).unwrap();
        assert_eq!(strs(&t)[..2], ["+XIIII", "+IZIII"]);
        let t = StabilizerTableau::from_init(&[InitState::Plus]).unwrap();
        assert_eq!(strs(&t), ["+X"]);
        assert_eq!(StabilizerTableau::from_init(&[]), Err(TableauError::Empty));
        let t = StabilizerTableau::from_init(&[InitState::Zero]).unwrap();
        assert_eq!(strs(&t), ["+Z"]);
    }

    #[test]
    fn ghz_evolution() {
        let mut t = ghz();
        assert_eq!(strs(&t), ["+XXX", "+ZZI", "+IZZ"]);
        t.h(1);
        assert_eq!(strs(&t), ["+XZX", "+ZXI", "+IXZ"]);
        t.rowsum(1, 2).unwrap();
        assert_eq!(strs(&t), ["+XZX", "+ZXI", "+ZIZ"]);
    }

    #[test]
    fn pauli_twice_is_identity() {
        let mut t = ghz();
        let before = t.clone();
        let x = Gate::new(GateKind::X, vec![0], 0);
        t.apply_gate(&x).unwrap();
        assert_ne!(t, before);
        t.apply_gate(&x).unwrap();
        assert_eq!(t, before);
    }

    #[test]
    fn rejects_non_clifford() {
        let mut t = ghz();
        let g = Gate::new(GateKind::T, vec![0], 0);
        assert_eq!(t.apply_gate(&g), Err(TableauError::NonClifford("t")));
        let g = Gate::new(GateKind::H, vec![7], 0);
        assert!(matches!(
            t.apply_gate(&g),
            Err(TableauError::QubitOutOfRange { .. })
        ));
    }

    #[test]
    fn rowsum_z_rows_and_errors() {
        let mut t = StabilizerTableau::from_strs(&["+ZZI", "+IZZ", "+XXX"]).unwrap();
        t.rowsum(0, 1).unwrap();
        assert_eq!(t.row(1).to_string(), "+ZIZ");
        assert_eq!(t.rowsum(1, 1), Err(TableauError::SameRow(1)));
        // anticommuting pair is refused rather than producing an imaginary phase
        let mut bad = StabilizerTableau::from_rows_unchecked(vec![
            "+XI".parse().unwrap(),
            "+ZI".parse().unwrap(),
        ]);
        assert_eq!(bad.rowsum(0, 1), Err(TableauError::NonCommuting(0, 1)));
    }

    #[test]
    fn validation() {
        assert!(matches!(
            StabilizerTableau::from_strs(&["+XI", "+ZI"]),
            Err(TableauError::NonCommuting(0, 1))
        ));
        assert!(matches!(
            StabilizerTableau::from_strs(&["+ZI", "+ZI"]),
            Err(TableauError::RankDeficient { rank: 1, n: 2 })
        ));
        assert!(StabilizerTableau::from_strs(&["+ZI"]).is_err());
    }

    #[test]
    fn measure_plus_and_zero() {
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut t = StabilizerTableau::from_init(&[InitState::Plus]).unwrap();
        let m = t.measure_z(0, Some(false), &mut rng).unwrap();
        assert_eq!(
            m,
            ZMeasurement {
                outcome: false,
                deterministic: false
            }
        );
        assert_eq!(strs(&t), ["+Z"]);
        let m = t.measure_z(0, Some(true), &mut rng).unwrap();
        assert_eq!(
            m,
            ZMeasurement {
                outcome: false,
                deterministic: true
            }
        );

        let mut t = StabilizerTableau::from_strs(&["-Z"]).unwrap();
        let m = t.measure_z(0, None, &mut rng).unwrap();
        assert_eq!(
            m,
            ZMeasurement {
                outcome: true,
                deterministic: true
            }
        );
    }

    #[test]
    fn measure_ghz_collapses() {
        // Projecting |000>+|111> with (I-Z_0)/2 leaves |111>, stabilized by
        // -Z on every qubit.
        let mut rng = ChaCha8Rng::seed_from_u64(0);
        let mut t = ghz();
        let m = t.measure_z(0, Some(true), &mut rng).unwrap();
        assert!(!m.deterministic && m.outcome);
        let expected = StabilizerTableau::from_strs(&["-ZII", "-IZI", "-IIZ"]).unwrap();
        assert!(t.same_group(&expected));
        for q in 1..3 {
            let m = t.measure_z(q, None, &mut rng).unwrap();
            assert_eq!(
                m,
                ZMeasurement {
                    outcome: true,
                    deterministic: true
                }
            );
        }
    }

    #[test]
    fn stabilizer_dump() {
        assert_eq!(ghz().dump(), "+XXX\n+ZZI\n+IZZ\n");
    }

    #[test]
    fn stabilizer_sign_membership() {
        let t = ghz();
        assert_eq!(t.stabilizer_sign(&"ZIZ".parse().unwrap()), Some(false));
        assert_eq!(t.stabilizer_sign(&"-YYX".parse().unwrap()), Some(true));
        assert_eq!(t.stabilizer_sign(&"ZII".parse().unwrap()), None);
    }

    fn random_tableau(seed: u64, n: usize) -> StabilizerTableau {
        use rand::Rng;
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let init: Vec<InitState> = (0..n)
            .map(|_| {
                if rng.random() {
                    InitState::Plus
                } else {
                    InitState::Zero
                }
            })
            .collect();
        let mut t = StabilizerTableau::from_init(&init).unwrap();
        for _ in 0..4 * n {
            let a = rng.random_range(0..n);
            match rng.random_range(0..4) {
                0 => t.h(a),
                1 => t.s(a),
                2 => t.z_gate(a),
                _ if n > 1 => {
                    let b = (a + rng.random_range(1..n)) % n;
                    t.apply(GateKind::Cnot, &[a, b]).unwrap();
                }
                _ => {}
            }
        }
        t
    }

    proptest! {
        #[test]
        fn invariants_hold_after_gates(seed in any::<u64>(), n in 1usize..7) {
            let t = random_tableau(seed, n);
            prop_assert!(t.validate().is_ok());
        }

        #[test]
        fn rowsum_twice_restores(seed in any::<u64>(), n in 2usize..7, i in 0usize..6, j in 0usize..6) {
            let (i, j) = (i % n, j % n);
            prop_assume!(i != j);
            let mut t = random_tableau(seed, n);
            let before = t.clone();
            t.rowsum(i, j).unwrap();
            prop_assert!(t.same_group(&before));
            t.rowsum(i, j).unwrap();
            prop_assert_eq!(t, before);
        }

        #[test]
        fn hadamard_twice_is_identity(seed in any::<u64>(), n in 1usize..7, q in 0usize..6) {
            let mut t = random_tableau(seed, n);
            let before = t.clone();
            t.h(q % n);
            t.h(q % n);
            prop_assert_eq!(t, before);
        }

        #[test]
        fn phase_routes_agree(seed in any::<u64>(), n in 2usize..7, i in 0usize..6, j in 0usize..6) {
            let (i, j) = (i % n, j % n);
            prop_assume!(i != j);
            let t = random_tableau(seed, n);
            let (a, b) = (t.row(i), t.row(j));
            prop_assert_eq!(a.product(b).1, product_power_closed_form(a, b));
            let (_, p) = a.product(b);
            prop_assert!(p % 2 == 0);
        }

        #[test]
        fn phase_routes_agree_on_arbitrary_pairs(
            xa in proptest::collection::vec(any::<bool>(), 5),
            za in proptest::collection::vec(any::<bool>(), 5),
            xb in proptest::collection::vec(any::<bool>(), 5),
            zb in proptest::collection::vec(any::<bool>(), 5),
            na: bool, nb: bool,
        ) {
            let a = PauliString { x: xa, z: za, negative: na };
            let b = PauliString { x: xb, z: zb, negative: nb };
            prop_assert_eq!(a.product(&b).1, product_power_closed_form(&a, &b));
        }
    }
}
