//! Acceptance criteria, one line of output per criterion. Runs without the
//! libtest harness so the lines are always shown.

use std::collections::BTreeMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use triplet_core::braidfmat::{balancing_check, hexagon_solutions, intrinsic_dimension, HexagonSystem, RConvention};
use triplet_core::exactnum::{ParamScalar, Phase, Rat};
use triplet_core::fusion::{cg_oracle, fuse_c, fuse_l_family, fusion_ring_product, ln, DecompList};
use triplet_core::kacmod::{kac_mm_nn_diagram, Layer};
use triplet_core::sweep::Execution;
use triplet_core::verify::{run_suite, Suite};
use triplet_core::virasoro::{weight, ObjLabel, Params};
use triplet_core::wpq::{decompose_ideal, decompose_wpq, decompose_wpq_equivariant};

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn suite(s: Suite) -> Outcome {
    let r = run_suite(s, Execution::Parallel);
    ensure(r.passed, || format!("suite {s}: {} failed, e.g. {:?}", r.failed, r.failures.first()))
}

/// Decomposition of `V_m ⊗ V_n` from the multiset of tensor weights, peeling
/// off the largest remaining weight.
fn weight_peel(m: u32, n: u32) -> Vec<u32> {
    let mut counts: BTreeMap<i64, i64> = BTreeMap::new();
    for i in 0..=m {
        for j in 0..=n {
            *counts.entry(i64::from(m) + i64::from(n) - 2 * i64::from(i + j)).or_insert(0) += 1;
        }
    }
    let mut out = Vec::new();
    while let Some((&top, _)) = counts.iter().rev().find(|(_, c)| **c > 0) {
        out.push(top as u32);
        for w in (-top..=top).step_by(2) {
            *counts.get_mut(&w).expect("weight present") -= 1;
        }
    }
    out.sort_unstable();
    out
}

fn c1_fusion_oracle() -> Outcome {
    for m in 0..=12 {
        for n in 0..=12 {
            let a = fuse_c(m, n);
            ensure(a == cg_oracle(m, n), || format!("({m},{n}) vs character oracle"))?;
            ensure(a == weight_peel(m, n), || format!("({m},{n}) vs weight peel"))?;
        }
    }
    suite(Suite::FusionOracle)
}

fn c2_ring() -> Outcome {
    for params in [Params::new(2, 3).unwrap(), Params::new(3, 5).unwrap()] {
        let basis: Vec<DecompList> = (0..=10).map(|n| ln(&params, n)).collect();
        let mul = |a: &DecompList, b: &DecompList| fusion_ring_product(&params, a, b).map_err(|e| e.to_string());
        for (a, x) in basis.iter().enumerate() {
            for (b, y) in basis.iter().enumerate() {
                let xy = mul(x, y)?;
                ensure(xy == mul(y, x)?, || format!("{params}: L_{a} L_{b} not commutative"))?;
                for (c, z) in basis.iter().enumerate() {
                    ensure(mul(&xy, z)? == mul(x, &mul(y, z)?)?, || {
                        format!("{params}: associativity fails on ({a},{b},{c})")
                    })?;
                }
            }
        }
    }
    suite(Suite::FusionRing)
}

fn c3_weights() -> Outcome {
    for params in Params::test_set() {
        let (p, q) = (params.p(), params.q());
        // h_{r,s} = ((qr - ps)² - (p - q)²) / 4pq
        let h = |r: i64, s: i64| Rat::new((q * r - p * s).pow(2) - (p - q).pow(2), 4 * p * q);
        for n in 1..=20 {
            ensure(weight(&params, 2 * n * p - 1, 1) == Rat::from((n * p - 1) * (n * q - 1)), || format!("{params} n={n} (a)"))?;
            ensure(weight(&params, n * p - 1, 1) == Rat::new((n * p - 2) * (n * q - 2), 4), || format!("{params} n={n} (b)"))?;
            ensure(
                weight(&params, 1, 2 * n * q - 2) - weight(&params, 1, 2) == Rat::from((n * p - 1) * (n * q - 2)),
                || format!("{params} n={n} (c)"),
            )?;
        }
        for r in 1..=50 {
            for s in 1..=50 {
                ensure(weight(&params, r, s) == h(r, s), || format!("{params} h_{{{r},{s}}} vs closed form"))?;
                ensure(weight(&params, r, s) == weight(&params, r + p, s + q), || format!("{params} shift ({r},{s})"))?;
            }
        }
    }
    suite(Suite::Weights)
}

fn c4_hexagon() -> Outcome {
    let t = ParamScalar::t();
    for params in Params::test_set() {
        let eps = params.sign_pq();
        let sols = hexagon_solutions(&params);
        ensure(sols.len() == 2, || format!("{params}: {} families", sols.len()))?;
        let diag = sols[0].matrix();
        let one = ParamScalar::constant(Rat::from(eps));
        ensure(diag.f00 == one && diag.f22 == one && diag.f02.is_zero() && diag.f20.is_zero(), || {
            format!("{params}: diagonal family {diag:?}")
        })?;
        let par = sols[1].matrix();
        let half = ParamScalar::constant(Rat::new(-eps, 2));
        let f20 = &ParamScalar::constant(Rat::new(-3, 4)) / &t;
        ensure(par.f00 == half && par.f22 == half && par.f02 == t && par.f20 == f20, || {
            format!("{params}: parametrized family {par:?}")
        })?;
        // (-1)^{pq}·[[F00, -F02], [-F20, F22]] = F², written out entrywise
        let e = ParamScalar::constant(Rat::from(eps));
        for f in [&diag, &par] {
            let sq00 = &(&f.f00 * &f.f00) + &(&f.f02 * &f.f20);
            let sq02 = &(&f.f00 * &f.f02) + &(&f.f02 * &f.f22);
            let sq20 = &(&f.f20 * &f.f00) + &(&f.f22 * &f.f20);
            let sq22 = &(&f.f20 * &f.f02) + &(&f.f22 * &f.f22);
            let rhs00 = &e * &f.f00;
            let rhs02 = -&(&e * &f.f02);
            let rhs20 = -&(&e * &f.f20);
            let rhs22 = &e * &f.f22;
            let zero = (&sq00 - &rhs00).is_zero()
                && (&sq02 - &rhs02).is_zero()
                && (&sq20 - &rhs20).is_zero()
                && (&sq22 - &rhs22).is_zero();
            ensure(zero, || format!("{params}: residual nonzero for {f:?}"))?;
            ensure(!f.f00.is_zero(), || format!("{params}: F00 = 0"))?;
        }
        for conv in [RConvention::Table, RConvention::Formula] {
            let sys = HexagonSystem::for_params(&params, conv).map_err(|e| e.to_string())?;
            ensure(sols.iter().all(|s| sys.is_solution(&s.matrix())), || format!("{params}: {conv:?} system"))?;
        }
        let dims: Vec<Rat> = sols
            .iter()
            .map(|s| intrinsic_dimension(s, &params).map_err(|e| e.to_string()))
            .collect::<Result<_, _>>()?;
        ensure(dims == [Rat::from(eps), Rat::from(-2 * eps)], || format!("{params}: dims {dims:?}"))?;
    }
    suite(Suite::Hexagon)
}

fn c5_balancing() -> Outcome {
    for params in Params::test_set() {
        let eps = Phase::sign(params.sign_pq() < 0);
        let b1 = balancing_check(&params, 1);
        ensure(b1.get(&0) == Some(&eps) && b1.get(&2) == Some(&eps), || format!("{params}: L_1 channels {b1:?}"))?;
    }
    suite(Suite::Balancing)
}

/// Hand transcription of the Loewy diagram at (p,q) = (2,3).
fn golden_edges(m: i64, n: i64) -> Vec<(&'static str, &'static str)> {
    let mut v = match (m, n) {
        (2, 2) => vec![
            ("L_3_1", "L_1_1"),
            ("L_3_1", "L_5_1"),
            ("L_3_1", "L_1_7"),
            ("L_1_1", "L_1_4"),
            ("L_5_1", "L_1_4"),
            ("L_5_1", "L_1_10"),
            ("L_1_7", "L_1_4"),
            ("L_1_7", "L_1_10"),
        ],
        (3, 2) => vec![
            ("L_5_1", "L_1_4"),
            ("L_5_1", "L_7_1"),
            ("L_5_1", "L_1_10"),
            ("L_1_4", "L_1_7"),
            ("L_7_1", "L_1_7"),
            ("L_7_1", "L_1_13"),
            ("L_1_10", "L_1_7"),
            ("L_1_10", "L_1_13"),
        ],
        (3, 3) => vec![
            ("L_3_1", "L_1_1"),
            ("L_3_1", "L_5_1"),
            ("L_3_1", "L_1_7"),
            ("L_7_1", "L_5_1"),
            ("L_7_1", "L_1_7"),
            ("L_7_1", "L_9_1"),
            ("L_7_1", "L_1_13"),
            ("L_1_1", "L_1_4"),
            ("L_5_1", "L_1_4"),
            ("L_5_1", "L_1_10"),
            ("L_1_7", "L_1_4"),
            ("L_1_7", "L_1_10"),
            ("L_9_1", "L_1_10"),
            ("L_9_1", "L_1_16"),
            ("L_1_13", "L_1_10"),
            ("L_1_13", "L_1_16"),
        ],
        _ => unreachable!(),
    };
    v.sort_unstable();
    v
}

fn c6_diagrams() -> Outcome {
    let params = Params::new(2, 3).unwrap();
    for (m, n) in [(2, 2), (3, 2), (3, 3)] {
        let d = kac_mm_nn_diagram(&params, m, n).map_err(|e| e.to_string())?;
        let mut got = d.edge_ids();
        got.sort_unstable();
        ensure(got == golden_edges(m, n), || format!("({m},{n}) adjacency {got:?}"))?;
    }
    suite(Suite::KacDiagrams)
}

fn c7_diagram_fusion() -> Outcome {
    for params in Params::test_set() {
        let p = params.p();
        for m in 2..=6 {
            for n in 2..=m {
                let d = kac_mm_nn_diagram(&params, m, n).map_err(|e| e.to_string())?;
                let mut top: Vec<(i64, i64)> = d.layer(Layer::Top).map(|x| (x.label.r(), x.label.s())).collect();
                if m == n {
                    top.push((1, 1));
                }
                top.sort_unstable();
                let mut fused = Vec::new();
                for e in fuse_l_family(&params, m, n).map_err(|e| e.to_string())?.entries {
                    match e.obj {
                        ObjLabel::KacDualK11 => fused.extend([(1, 1), (2 * p - 1, 1)]),
                        ObjLabel::SimpleL(l) => fused.push((l.r(), l.s())),
                        other => return Err(format!("unexpected {other}")),
                    }
                }
                fused.sort_unstable();
                ensure(top == fused, || format!("{params} ({m},{n}): {top:?} vs {fused:?}"))?;
            }
        }
    }
    suite(Suite::DiagramFusion)
}

fn c8_sl2() -> Outcome {
    suite(Suite::Sl2)
}

fn c9_decomposition() -> Outcome {
    for params in Params::test_set() {
        let plain = decompose_wpq(&params, 20).map_err(|e| e.to_string())?;
        let equi = decompose_wpq_equivariant(&params, 20).map_err(|e| e.to_string())?;
        for (i, (a, b)) in plain.entries.iter().zip(&equi.entries).enumerate().skip(1) {
            let n = i as u32 + 1;
            ensure(a.multiplicity == 2 * n - 1 && b.psl2_label == Some(2 * n - 2), || format!("{params} n={n}"))?;
        }
        ensure(plain.total_multiplicity() == 400, || format!("{params}: total multiplicity"))?;
        let ideal = decompose_ideal(&params, 20).map_err(|e| e.to_string())?;
        ensure(plain.entries[1..] == ideal.entries[1..], || format!("{params}: ideal tail"))?;
    }
    suite(Suite::Decomposition)
}

fn triplet(args: &[&str]) -> Result<(Vec<u8>, Option<i32>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_triplet"))
        .args(args)
        .env_remove("TRIPLET_OUTPUT")
        .output()
        .map_err(|e| e.to_string())?;
    Ok((out.stdout, out.status.code()))
}

fn c10_cli_determinism() -> Outcome {
    let mut invocations: Vec<Vec<String>> = Vec::new();
    for preset in ["percolation", "3-4", "2-5"] {
        let pq = |rest: &[&str]| -> Vec<String> {
            rest.iter().map(|s| s.to_string()).chain(["--pq-preset".into(), preset.into()]).collect()
        };
        invocations.push(pq(&["weights", "--r", "7", "--s", "1"]));
        invocations.push(pq(&["fuse-L", "--m", "4", "--n", "3"]));
        invocations.push(pq(&["kac-diagram", "--m", "4", "--n", "3"]));
        invocations.push(pq(&["kac-diagram", "--m", "3", "--n", "3", "--format", "dot"]));
        invocations.push(pq(&["hexagon", "--t", "3/2"]));
        invocations.push(pq(&["braiding", "--n", "1"]));
        for target in ["wpq", "wpq-equivariant", "ideal", "wprime"] {
            invocations.push(pq(&["decompose", "--target", target, "--nmax", "5"]));
        }
        invocations.push(pq(&["o0-check", "--nmax", "6"]));
    }
    for args in [
        &["fuse-C", "--m", "3", "--n", "5"][..],
        &["sl2", "--n", "4", "--op", "irrep"],
        &["sl2", "--n", "4", "--op", "form"],
        &["sl2", "--n", "2", "--op", "cg", "--m", "2", "--k", "2"],
        &["verify", "--suite", "all"],
    ] {
        invocations.push(args.iter().map(|s| s.to_string()).collect());
    }
    for args in &invocations {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (a, code) = triplet(&args)?;
        ensure(code == Some(0), || format!("{args:?} exited with {code:?}"))?;
        ensure(!a.is_empty(), || format!("{args:?} produced no output"))?;
        let (b, _) = triplet(&args)?;
        ensure(a == b, || format!("{args:?} output differs between runs"))?;
    }
    Ok(())
}

struct Criterion {
    id: u8,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Outcome,
}

fn main() -> ExitCode {
    let secs = |s: u64| Some(Duration::from_secs(s));
    let criteria = [
        Criterion { id: 1, name: "fusion oracle equivalence", budget: secs(1), run: c1_fusion_oracle },
        Criterion { id: 2, name: "fusion ring associativity and commutativity", budget: secs(5), run: c2_ring },
        Criterion { id: 3, name: "weight identities", budget: secs(1), run: c3_weights },
        Criterion { id: 4, name: "hexagon solution families", budget: secs(1), run: c4_hexagon },
        Criterion { id: 5, name: "balancing", budget: secs(1), run: c5_balancing },
        Criterion { id: 6, name: "Kac diagrams", budget: secs(2), run: c6_diagrams },
        Criterion { id: 7, name: "diagram/fusion consistency", budget: secs(1), run: c7_diagram_fusion },
        Criterion { id: 8, name: "sl2 suite", budget: secs(10), run: c8_sl2 },
        Criterion { id: 9, name: "decomposition suite", budget: secs(1), run: c9_decomposition },
        Criterion { id: 10, name: "CLI determinism", budget: None, run: c10_cli_determinism },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let outcome = catch_unwind(AssertUnwindSafe(c.run)).unwrap_or_else(|_| Err("panicked".into()));
        let elapsed = start.elapsed();
        let outcome = outcome.and_then(|()| match c.budget {
            Some(b) if elapsed > b => Err(format!("took {elapsed:.2?}, budget {b:?}")),
            _ => Ok(()),
        });
        match outcome {
            Ok(()) => println!("criterion {:>2} PASS  {} ({elapsed:.2?})", c.id, c.name),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {} ({elapsed:.2?}): {why}", c.id, c.name);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
