//! Acceptance suite. Each criterion prints one PASS/FAIL line; the test
//! fails if any criterion does.

use std::time::{Duration, Instant};

use graphc_core::graph::{
    apply_corrections_inverse, to_graph, GraphState, LocalCorrection, LocalOp,
};
use graphc_core::lc::{lc_with_corrections, optimize, Objective};
use graphc_core::oracle::{
    all_assignments, equal_up_to_global_phase, prepare_pattern_state, run_circuit, run_pattern,
    v_dagger_matrix, verify_against, DenseState, VerifyOptions,
};
use graphc_core::random::{random_clifford_circuit, random_clifford_t_circuit};
use graphc_core::tableau::StabilizerTableau;
use graphc_core::{compile, Circuit, CompileOptions, CompiledPattern, InitState};
use num_complex::Complex64 as C;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const GHZ: &str = include_str!("../../../circuits/ghz.qc");
const CV: &str = include_str!("../../../circuits/cv_dagger.qc");
const TOFFOLI: &str = include_str!("../../../circuits/toffoli.qc");
const CAP: usize = 14;
const TOL: f64 = 1e-9;

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        let ok: bool = $cond;
        if !ok {
            return Err(format!($($msg)+));
        }
    };
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn compile_with(src: &str, labels: &str) -> Result<CompiledPattern, String> {
    let opts = CompileOptions {
        input_state: Some(InitState::parse_labels(labels).ok_or("bad labels")?),
        ..Default::default()
    };
    compile(&Circuit::parse(src).map_err(err)?, &opts).map_err(err)
}

fn h_on(qubits: &[usize]) -> Vec<LocalCorrection> {
    qubits
        .iter()
        .map(|&q| LocalCorrection::new(q, LocalOp::H))
        .collect()
}

fn tableau_of(c: &Circuit) -> StabilizerTableau {
    let mut t = StabilizerTableau::from_init(c.initial_states()).unwrap();
    for g in c.gates() {
        t.apply_gate(g).unwrap();
    }
    t
}

fn random_labels(rng: &mut ChaCha8Rng, n: usize) -> Vec<InitState> {
    (0..n)
        .map(|_| {
            if rng.random_bool(0.5) {
                InitState::Plus
            } else {
                InitState::Zero
            }
        })
        .collect()
}

fn criterion_1() -> Outcome {
    let start = Instant::now();
    let p = compile_with(GHZ, "000")?;
    let elapsed = start.elapsed();
    ensure!(
        p.graph.edges() == vec![(0, 1), (0, 2)],
        "edges {:?}",
        p.graph.edges()
    );
    ensure!(
        p.local_corrections == h_on(&[1, 2]),
        "corrections {:?}",
        p.local_corrections
    );
    ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}");
    Ok(())
}

fn criterion_2() -> Outcome {
    let p = compile_with(CV, "00")?;
    ensure!(
        p.graph.edges() == vec![(1, 2), (1, 4)],
        "edges {:?}",
        p.graph.edges()
    );
    ensure!(
        p.graph.degree(0) == 0 && p.graph.degree(3) == 0,
        "nodes 0 and 3 not isolated"
    );
    ensure!(
        p.local_corrections == h_on(&[0, 2, 3]),
        "corrections {:?}",
        p.local_corrections
    );
    let zeros = p.schedule.iter().map(|m| (m.symbol, false)).collect();
    let out = run_pattern(&p, &zeros, CAP).map_err(err)?;
    let overlap = out.inner(&DenseState::basis(2, 0)).map_err(err)?.norm();
    ensure!(overlap >= 1.0 - TOL, "overlap with |00> is {overlap}");
    Ok(())
}

fn criterion_3() -> Outcome {
    let p = compile_with(CV, "+0")?;
    ensure!(
        p.graph.edges() == vec![(0, 2), (0, 3), (1, 2), (1, 4)],
        "edges {:?}",
        p.graph.edges()
    );
    ensure!(
        p.local_corrections == h_on(&[2, 3]),
        "corrections {:?}",
        p.local_corrections
    );

    // (1/√2)|00> + ((1−i)/(2√2))|10> + ((1+i)/(2√2))|11>, first letter = wire 0
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let q = 1.0 / (2.0 * std::f64::consts::SQRT_2);
    let published = DenseState::from_amplitudes(vec![
        C::new(r, 0.0),
        C::new(q, -q),
        C::new(0.0, 0.0),
        C::new(q, q),
    ]);
    let mut direct =
        DenseState::from_labels(&[InitState::Plus, InitState::Zero], CAP).map_err(err)?;
    direct.apply_controlled(&[0], 1, &v_dagger_matrix());
    ensure!(
        equal_up_to_global_phase(&published, &direct, TOL).map_err(err)?,
        "published output differs from the unitary"
    );

    let branches = all_assignments(&p);
    ensure!(branches.len() == 8, "{} branches", branches.len());
    for outcomes in &branches {
        let out = run_pattern(&p, outcomes, CAP).map_err(err)?;
        let ov = out.inner(&published).map_err(err)?.norm();
        ensure!(ov >= 1.0 - TOL, "branch {outcomes:?}: overlap {ov}");
    }
    Ok(())
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    for labels in ["000", "+00", "++0"] {
        let p = compile_with(TOFFOLI, labels)?;
        ensure!(
            p.schedule.len() == 7,
            "{labels}: {} measurements",
            p.schedule.len()
        );
        ensure!(p.num_nodes() == 10, "{labels}: {} nodes", p.num_nodes());
        if labels == "000" {
            ensure!(
                p.local_corrections == h_on(&[0, 1, 3, 4, 5, 6, 7, 8]),
                "corrections {:?}",
                p.local_corrections
            );
        }
        let mut ideal =
            DenseState::from_labels(&InitState::parse_labels(labels).unwrap(), CAP).map_err(err)?;
        ideal.ccx(0, 1, 2);
        let report = verify_against(&p, &ideal, &VerifyOptions::default()).map_err(err)?;
        ensure!(report.passed(), "{labels}: mismatch {:?}", report.mismatch);
    }
    let body: String = TOFFOLI
        .lines()
        .skip_while(|l| !l.starts_with("qubits"))
        .skip(1)
        .collect::<Vec<_>>()
        .join("\n");
    for input in 0..8usize {
        let prep: String = (0..3)
            .filter(|w| input >> w & 1 == 1)
            .map(|w| format!("x {w}\n"))
            .collect();
        let src = format!("qubits 3\n{prep}{body}");
        let p = compile(
            &Circuit::parse(&src).map_err(err)?,
            &CompileOptions::default(),
        )
        .map_err(err)?;
        let mut ideal = DenseState::basis(3, input);
        ideal.ccx(0, 1, 2);
        let opts = VerifyOptions {
            force_exhaustive: true,
            ..Default::default()
        };
        let report = verify_against(&p, &ideal, &opts).map_err(err)?;
        ensure!(report.branches == 128, "{} branches", report.branches);
        ensure!(
            report.passed(),
            "input {input:03b}: mismatch {:?}",
            report.mismatch
        );
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(60), "took {elapsed:?}");
    Ok(())
}

fn criterion_5() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for case in 0..1000 {
        let n = rng.random_range(1..=8);
        let depth = rng.random_range(0..=40);
        let mut c = random_clifford_circuit(&mut rng, n, depth);
        c.set_initial_states(random_labels(&mut rng, n)).unwrap();
        let t = tableau_of(&c);
        let ext = to_graph(&t).map_err(|e| format!("case {case}: {e}"))?;
        let g = ext.graph.to_tableau();
        for i in 0..n {
            ensure!(!g.is_negative(i), "case {case}: negative row {i}");
            for j in 0..n {
                ensure!(g.x(i, j) == (i == j), "case {case}: X block not identity");
                ensure!(g.z(i, j) == g.z(j, i), "case {case}: Z block not symmetric");
            }
            ensure!(!g.z(i, i), "case {case}: Z diagonal set");
        }
        let back = apply_corrections_inverse(&ext.graph, &ext.corrections);
        ensure!(
            back.same_group(&t),
            "case {case}: round trip changed the group\n{c}"
        );
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    for case in 0..200 {
        let n = rng.random_range(1..=4);
        let t_count = rng.random_range(0..=4);
        let gates = rng.random_range(0..=20);
        let mut c = random_clifford_t_circuit(&mut rng, n, gates, t_count);
        c.set_initial_states(random_labels(&mut rng, n)).unwrap();
        let p = compile(&c, &CompileOptions::default()).map_err(err)?;
        let expected = run_circuit(&c, CAP).map_err(err)?;
        for outcomes in all_assignments(&p) {
            let out =
                run_pattern(&p, &outcomes, CAP).map_err(|e| format!("case {case}: {e}\n{c}"))?;
            let ov = out.inner(&expected).map_err(err)?.norm();
            ensure!(
                ov >= 1.0 - TOL,
                "case {case}, branch {outcomes:?}: overlap {ov}\n{c}"
            );
        }
    }
    let elapsed = start.elapsed();
    ensure!(elapsed < Duration::from_secs(120), "took {elapsed:?}");
    Ok(())
}

fn bare_pattern(graph: GraphState, local_corrections: Vec<LocalCorrection>) -> CompiledPattern {
    let n = graph.num_nodes();
    CompiledPattern {
        graph,
        local_corrections,
        schedule: vec![],
        output_corrections: vec![],
        outputs: (0..n).collect(),
        output_reads: vec![],
        input_labels: vec![InitState::Zero; n],
        t_count: 0,
    }
}

fn criterion_7() -> Outcome {
    let k3 = bare_pattern(
        GraphState::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap(),
        vec![],
    );
    let (best, moves) = optimize(&k3, Objective::EdgeCount, 100);
    ensure!(
        moves.len() == 1 && best.graph.num_edges() == 2,
        "K3: {moves:?}"
    );

    let ops = [
        LocalOp::H,
        LocalOp::P,
        LocalOp::Pdag,
        LocalOp::Z,
        LocalOp::SqrtX,
        LocalOp::SqrtXdg,
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut total_moves = 0;
    for case in 0..100 {
        let mut edges = vec![];
        for a in 0..8 {
            for b in a + 1..8 {
                if rng.random_bool(0.5) {
                    edges.push((a, b));
                }
            }
        }
        let corrections = (0..rng.random_range(0..6))
            .map(|_| {
                LocalCorrection::new(rng.random_range(0..8), ops[rng.random_range(0..ops.len())])
            })
            .collect();
        let p = bare_pattern(GraphState::from_edges(8, &edges).unwrap(), corrections);
        let objective = if case % 2 == 0 {
            Objective::EdgeCount
        } else {
            Objective::MaxDegree
        };
        let reference = prepare_pattern_state(&p, CAP).map_err(err)?;
        let (result, moves) = optimize(&p, objective, 100);
        total_moves += moves.len();
        let mut cur = p.clone();
        for m in &moves {
            let next = lc_with_corrections(&cur, m.vertex).map_err(err)?;
            ensure!(
                objective.value(&next.graph) <= objective.value(&cur.graph),
                "case {case}: objective increased"
            );
            let state = prepare_pattern_state(&next, CAP).map_err(err)?;
            let ov = state.inner(&reference).map_err(err)?.norm();
            ensure!(
                ov >= 1.0 - TOL,
                "case {case}: state changed after move {m:?} (overlap {ov})"
            );
            cur = next;
        }
        ensure!(cur == result, "case {case}: move list does not replay");
    }
    ensure!(total_moves > 0, "no moves applied at all");
    Ok(())
}

fn criterion_8() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    for case in 0..500 {
        let n = rng.random_range(1..=6);
        let depth = rng.random_range(0..=40);
        let mut c = random_clifford_circuit(&mut rng, n, depth);
        c.set_initial_states(random_labels(&mut rng, n)).unwrap();
        let t = tableau_of(&c);
        let psi = run_circuit(&c, CAP).map_err(err)?;
        for row in t.rows() {
            ensure!(
                psi.is_stabilized_by(row, 1e-10),
                "case {case}: {row} does not stabilize\n{c}"
            );
        }
    }
    Ok(())
}

#[test]
fn acceptance_criteria() {
    let criteria: [Criterion; 8] = [
        ("GHZ golden conversion", criterion_1),
        ("controlled-V† on |00>", criterion_2),
        ("controlled-V† on |+0>", criterion_3),
        ("Toffoli compilation and equivalence", criterion_4),
        ("graph conversion property suite", criterion_5),
        ("pipeline property suite", criterion_6),
        ("LC optimizer", criterion_7),
        ("tableau vs statevector", criterion_8),
    ];
    let mut failures = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        match run() {
            Ok(()) => println!(
                "criterion {}: PASS  {name} ({:.2?})",
                i + 1,
                start.elapsed()
            ),
            Err(msg) => {
                failures += 1;
                println!("criterion {}: FAIL  {name}: {msg}", i + 1);
            }
        }
    }
    assert_eq!(failures, 0, "{failures} acceptance criteria failed");
}
