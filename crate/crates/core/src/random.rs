//! Seeded random circuit generators for tests and benchmarks.

use rand::Rng;

use crate::circuit::{Circuit, GateKind};

const CLIFFORD: [GateKind; 8] = [
    GateKind::H,
    GateKind::S,
    GateKind::Sdg,
    GateKind::X,
    GateKind::Y,
    GateKind::Z,
    GateKind::Cnot,
    GateKind::Cz,
];

fn push_random<R: Rng + ?Sized>(rng: &mut R, c: &mut Circuit, pool: &[GateKind]) {
    let n = c.num_wires();
    let mut kind = pool[rng.random_range(0..pool.len())];
    if kind.arity() == 2 && n < 2 {
        kind = GateKind::H;
    }
    if kind.arity() == 2 {
        let a = rng.random_range(0..n);
        let b = (a + rng.random_range(1..n)) % n;
        c.push(kind, &[a, b]).expect("targets in range");
    } else {
        c.push(kind, &[rng.random_range(0..n)])
            .expect("target in range");
    }
}

/// Uniformly chosen Clifford gates on `n` wires.
pub fn random_clifford_circuit<R: Rng + ?Sized>(rng: &mut R, n: usize, gates: usize) -> Circuit {
    let mut c = Circuit::new(n).expect("n > 0");
    for _ in 0..gates {
        push_random(rng, &mut c, &CLIFFORD);
    }
    c
}

/// Clifford gates with exactly `t_count` T/T† gates spread at random
/// positions among `gates` Clifford gates.
pub fn random_clifford_t_circuit<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    gates: usize,
    t_count: usize,
) -> Circuit {
    let mut c = Circuit::new(n).expect("n > 0");
    let total = gates + t_count;
    let mut t_left = t_count;
    for i in 0..total {
        let remaining = total - i;
        if t_left > 0 && rng.random_range(0..remaining) < t_left {
            let kind = if rng.random_bool(0.5) {
                GateKind::T
            } else {
                GateKind::Tdg
            };
            c.push(kind, &[rng.random_range(0..n)])
                .expect("target in range");
            t_left -= 1;
        } else {
            push_random(rng, &mut c, &CLIFFORD);
        }
    }
    c
}
