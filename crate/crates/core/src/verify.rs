//! Named property suites over the whole library. Suites are independent and
//! may run concurrently; each is deterministic.

use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::braidfmat::{
    balancing_check, hexagon_solutions, intrinsic_dimension, r_scalar_formula, r_scalar_table,
    sign_flip_invariant, FSolution, HexagonSystem, RConvention,
};
use crate::exactnum::{ParamScalar, Phase, Rat};
use crate::fusion::{cg_oracle, fuse_c, fuse_l_family, fusion_ring_product, ln, DecompList};
use crate::kacmod::{distinct_canonical_labels, kac_mm_nn_diagram, Layer};
use crate::linalg::QMatrix;
use crate::sl2rep::{build_irrep, cg_maps, invariant_form, simplicity_witness, unit_channel_factor};
use crate::sweep::{self, Execution};
use crate::virasoro::{canonical_label, lbl, weight, ObjLabel, Params, VirLabel};
use crate::wpq::{decompose_wpq, decompose_wpq_equivariant, exact_sequence_check};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    FusionOracle,
    FusionRing,
    Weights,
    Hexagon,
    Balancing,
    KacDiagrams,
    DiagramFusion,
    Sl2,
    Decomposition,
}

impl Suite {
    pub const ALL: [Suite; 9] = [
        Suite::FusionOracle,
        Suite::FusionRing,
        Suite::Weights,
        Suite::Hexagon,
        Suite::Balancing,
        Suite::KacDiagrams,
        Suite::DiagramFusion,
        Suite::Sl2,
        Suite::Decomposition,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::FusionOracle => "fusion-oracle",
            Suite::FusionRing => "fusion-ring",
            Suite::Weights => "weights",
            Suite::Hexagon => "hexagon",
            Suite::Balancing => "balancing",
            Suite::KacDiagrams => "kac-diagrams",
            Suite::DiagramFusion => "diagram-fusion",
            Suite::Sl2 => "sl2",
            Suite::Decomposition => "decomposition",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| format!("unknown suite {s:?}"))
    }
}

/// At most this many failure messages are kept per suite.
const MAX_FAILURES: usize = 8;

#[derive(Debug, Clone, Default, PartialEq, Eq)]
struct Tally {
    checks: u64,
    failed: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, msg: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failed += 1;
            if self.failures.len() < MAX_FAILURES {
                self.failures.push(msg());
            }
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.checks += other.checks;
        self.failed += other.failed;
        let room = MAX_FAILURES - self.failures.len();
        self.failures.extend(other.failures.into_iter().take(room));
        self
    }

    fn merge_all(parts: impl IntoIterator<Item = Tally>) -> Tally {
        parts.into_iter().fold(Tally::default(), Tally::merge)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub passed: bool,
    pub checks: u64,
    pub failed: u64,
    pub failures: Vec<String>,
}

pub fn run_suite(suite: Suite, exec: Execution) -> SuiteReport {
    let tally = match suite {
        Suite::FusionOracle => fusion_oracle(exec),
        Suite::FusionRing => fusion_ring(exec),
        Suite::Weights => weights(exec),
        Suite::Hexagon => hexagon(exec),
        Suite::Balancing => balancing(exec),
        Suite::KacDiagrams => kac_diagrams(exec),
        Suite::DiagramFusion => diagram_fusion(exec),
        Suite::Sl2 => sl2(exec),
        Suite::Decomposition => decomposition(exec),
    };
    SuiteReport {
        suite,
        passed: tally.failed == 0,
        checks: tally.checks,
        failed: tally.failed,
        failures: tally.failures,
    }
}

/// Runs the given suites, concurrently under [`Execution::Parallel`];
/// reports come back in input order.
pub fn run_suites(suites: &[Suite], exec: Execution) -> Vec<SuiteReport> {
    sweep::map(exec, suites, |&s| run_suite(s, exec))
}

fn fusion_oracle(exec: Execution) -> Tally {
    let ms: Vec<u32> = (0..=12).collect();
    Tally::merge_all(sweep::map(exec, &ms, |&m| {
        let mut t = Tally::default();
        for n in 0..=12 {
            let mut a = fuse_c(m, n);
            a.sort_unstable();
            let b = cg_oracle(m, n);
            t.check(a == b, || format!("fuse_C({m},{n}) = {a:?} but oracle gives {b:?}"));
        }
        t
    }))
}

const RING_MAX: u32 = 10;

fn fusion_ring(exec: Execution) -> Tally {
    let params = Params::new(2, 3).expect("coprime");
    let basis: Vec<DecompList> = (0..=RING_MAX).map(|n| ln(&params, n)).collect();
    let pairs: Vec<(u32, u32)> = (0..=RING_MAX)
        .flat_map(|a| (0..=RING_MAX).map(move |b| (a, b)))
        .collect();
    let mul = |x: &DecompList, y: &DecompList| fusion_ring_product(&params, x, y);
    Tally::merge_all(sweep::map(exec, &pairs, |&(a, b)| {
        let mut t = Tally::default();
        let (x, y) = (&basis[a as usize], &basis[b as usize]);
        let (xy, yx) = match (mul(x, y), mul(y, x)) {
            (Ok(xy), Ok(yx)) => (xy, yx),
            (Err(e), _) | (_, Err(e)) => {
                t.check(false, || format!("L_{a} ⊠ L_{b}: {e}"));
                return t;
            }
        };
        t.check(xy == yx, || format!("L_{a} ⊠ L_{b} is not commutative"));
        for c in 0..=RING_MAX {
            let z = &basis[c as usize];
            let lhs = mul(&xy, z);
            let rhs = mul(y, z).and_then(|yz| mul(x, &yz));
            t.check(lhs.is_ok() && lhs == rhs, || format!("(L_{a} L_{b}) L_{c} ≠ L_{a} (L_{b} L_{c})"));
        }
        t
    }))
}

fn weights(exec: Execution) -> Tally {
    let all = Params::test_set();
    Tally::merge_all(sweep::map(exec, &all, |params| {
        let mut t = Tally::default();
        let (p, q) = (params.p(), params.q());
        for n in 1..=20i64 {
            let a = weight(params, 2 * n * p - 1, 1);
            t.check(a == Rat::from((n * p - 1) * (n * q - 1)), || format!("{params}: h_{{2np-1,1}} at n={n}"));
            let b = weight(params, n * p - 1, 1);
            let expect = Rat::new((n * p - 2) * (n * q - 2), 4);
            t.check(b == expect, || format!("{params}: h_{{np-1,1}} at n={n}"));
            let c = weight(params, 1, 2 * n * q - 2) - weight(params, 1, 2);
            t.check(c == Rat::from((n * p - 1) * (n * q - 2)), || format!("{params}: o0 difference at n={n}"));
        }
        for r in 1..=50 {
            for s in 1..=50 {
                t.check(weight(params, r, s) == weight(params, r + p, s + q), || {
                    format!("{params}: h_{{{r},{s}}} ≠ h_{{r+p,s+q}}")
                });
            }
        }
        t
    }))
}

fn hexagon(exec: Execution) -> Tally {
    let all = Params::test_set();
    Tally::merge_all(sweep::map(exec, &all, |params| {
        let mut t = Tally::default();
        let eps = params.sign_pq();
        let sols = hexagon_solutions(params);
        let half = ParamScalar::constant(Rat::new(-eps, 2));
        let expected = [
            FSolution::Diagonal { epsilon: eps },
            FSolution::Parametrized {
                matrix: crate::braidfmat::FMatrix {
                    f00: half.clone(),
                    f02: ParamScalar::t(),
                    f20: &ParamScalar::constant(Rat::new(-3, 4)) / &ParamScalar::t(),
                    f22: half,
                },
            },
        ];
        t.check(sols[..] == expected[..], || format!("{params}: solution families {sols:?}"));
        for conv in [RConvention::Table, RConvention::Formula] {
            match HexagonSystem::for_params(params, conv) {
                Ok(system) => {
                    for s in &sols {
                        t.check(system.is_solution(&s.matrix()), || format!("{params}: nonzero residual for {s:?}"));
                    }
                }
                Err(e) => t.check(false, || format!("{params}: {e}")),
            }
        }
        for s in &sols {
            let f00 = s.matrix().f00;
            t.check(!f00.is_zero(), || format!("{params}: F00 = 0"));
            t.check(!s.matrix().determinant().is_zero(), || format!("{params}: singular F"));
        }
        let dims: Vec<Option<Rat>> = sols.iter().map(|s| intrinsic_dimension(s, params).ok()).collect();
        t.check(
            dims == vec![Some(Rat::from(eps)), Some(Rat::from(-2 * eps))],
            || format!("{params}: intrinsic dimensions {dims:?}"),
        );
        t.check(sign_flip_invariant(params) == Ok(true), || format!("{params}: sign flip changes the system"));
        t
    }))
}

fn balancing(exec: Execution) -> Tally {
    let all = Params::test_set();
    Tally::merge_all(sweep::map(exec, &all, |params| {
        let mut t = Tally::default();
        for n in 0..=8 {
            for (k, bal) in balancing_check(params, n) {
                let r = r_scalar_formula(params, n, k);
                t.check(r.as_ref().map(|r| r.pow(2)) == Ok(bal.clone()), || {
                    format!("{params}: (R_{n}^{k})² ≠ balancing phase")
                });
            }
        }
        let eps = Phase::sign(params.sign_pq() < 0);
        for (k, bal) in balancing_check(params, 1) {
            let r = r_scalar_table(params, 1, i64::from(k));
            t.check(r.map(|r| r.pow(2)) == Ok(bal.clone()), || format!("{params}: tabulated R_1^{k} squared"));
            t.check(bal == eps, || format!("{params}: channel {k} of L_1 ⊠ L_1 is not (-1)^pq"));
        }
        t
    }))
}

const DIAGRAM_MAX: i64 = 6;

fn diagram_cases() -> Vec<(Params, i64, i64)> {
    Params::test_set()
        .into_iter()
        .flat_map(|params| {
            (2..=DIAGRAM_MAX).flat_map(move |m| (2..=m).map(move |n| (params, m, n)))
        })
        .collect()
}

fn kac_diagrams(exec: Execution) -> Tally {
    Tally::merge_all(sweep::map(exec, &diagram_cases(), |&(params, m, n)| {
        let mut t = Tally::default();
        let tag = format!("{params} K_{{{},{}}}", m * params.p() - 1, n * params.q() - 1);
        let d = match kac_mm_nn_diagram(&params, m, n) {
            Ok(d) => d,
            Err(e) => {
                t.check(false, || format!("{tag}: {e}"));
                return t;
            }
        };
        let nu = n as usize;
        t.check(d.nodes.len() == 4 * nu - 2, || format!("{tag}: {} nodes", d.nodes.len()));
        t.check(d.layer_sizes() == (nu - 1, 2 * nu - 1, nu), || format!("{tag}: layers {:?}", d.layer_sizes()));
        let distinct = distinct_canonical_labels(&d);
        t.check(distinct.is_some(), || format!("{tag}: repeated canonical labels"));
        let h = weight(&params, m * params.p() - 1, n * params.q() - 1);
        for node in &d.nodes {
            t.check((&node.weight - &h).is_integer(), || format!("{tag}: {} not congruent", node.id));
        }
        let has_vacuum = d.nodes.iter().any(|node| node.canonical == lbl(1, 1));
        t.check(has_vacuum == (m == n), || format!("{tag}: L_{{1,1}} presence is {has_vacuum}"));
        for (a, b) in &d.edges {
            let (la, lb) = (d.nodes[*a].layer, d.nodes[*b].layer);
            let ok = matches!((la, lb), (Layer::Top, Layer::Middle) | (Layer::Middle, Layer::Socle));
            t.check(ok, || format!("{tag}: edge skips a layer"));
        }
        t
    }))
}

/// Simple factors of `fuse_L_family(m, n)` with `K'_{1,1}` replaced by its
/// two composition factors.
fn fusion_factors(params: &Params, m: i64, n: i64) -> crate::Result<Vec<VirLabel>> {
    let mut out = Vec::new();
    for e in fuse_l_family(params, m, n)?.entries {
        let labels = match e.obj {
            ObjLabel::SimpleL(l) => vec![l],
            ObjLabel::KacDualK11 => vec![lbl(1, 1), lbl(2 * params.p() - 1, 1)],
            ObjLabel::KacK(l) => return Err(crate::Error::Internal(format!("Kac module K_{l} in fusion"))),
        };
        for l in labels {
            for _ in 0..e.mult {
                out.push(canonical_label(params, l));
            }
        }
    }
    out.sort_unstable();
    Ok(out)
}

fn diagram_fusion(exec: Execution) -> Tally {
    Tally::merge_all(sweep::map(exec, &diagram_cases(), |&(params, m, n)| {
        let mut t = Tally::default();
        let result = kac_mm_nn_diagram(&params, m, n).and_then(|d| {
            let mut top: Vec<VirLabel> = d.layer(Layer::Top).map(|node| node.canonical).collect();
            if m == n {
                top.push(lbl(1, 1));
            }
            top.sort_unstable();
            Ok((top, fusion_factors(&params, m, n)?))
        });
        match result {
            Ok((top, fused)) => t.check(top == fused, || format!("{params} (m,n)=({m},{n}): {top:?} vs {fused:?}")),
            Err(e) => t.check(false, || format!("{params} (m,n)=({m},{n}): {e}")),
        }
        t
    }))
}

const SL2_FORM_MAX: u32 = 10;
const SL2_CG_MAX: u32 = 6;
const WITNESS_SAMPLES: usize = 100;
const WITNESS_SEED: u64 = 0x5eed_2024;

fn sl2(exec: Execution) -> Tally {
    let forms: Vec<u32> = (0..=SL2_FORM_MAX).collect();
    let form_tally = Tally::merge_all(sweep::map(exec, &forms, |&n| {
        let mut t = Tally::default();
        let rep = build_irrep(n);
        t.check(rep.satisfies_brackets(), || format!("V_{n}: bracket relations"));
        match invariant_form(&rep) {
            Ok(b) => {
                t.check(b.solution_dim == 1, || format!("V_{n}: {} invariant forms", b.solution_dim));
                t.check(b.is_invariant_under(&rep), || format!("V_{n}: form not invariant"));
                t.check(b.is_nondegenerate(), || format!("V_{n}: form degenerate"));
            }
            Err(e) => t.check(false, || format!("V_{n}: {e}")),
        }
        t
    }));

    let pairs: Vec<(u32, u32)> = (0..=SL2_CG_MAX)
        .flat_map(|m| (0..=SL2_CG_MAX).map(move |n| (m, n)))
        .collect();
    let cg_tally = Tally::merge_all(sweep::map(exec, &pairs, |&(m, n)| {
        let mut t = Tally::default();
        let dim = ((m + 1) * (n + 1)) as usize;
        let channels = cg_oracle(m, n);
        let maps: Vec<_> = match channels.iter().map(|&k| cg_maps(m, n, k)).collect() {
            Ok(maps) => maps,
            Err(e) => {
                t.check(false, || format!("V_{m} ⊗ V_{n}: {e}"));
                return t;
            }
        };
        t.check(maps.len() == channels.len(), || format!("V_{m} ⊗ V_{n}: channel count"));
        let mut sum = QMatrix::zeros(dim, dim);
        for a in &maps {
            t.check(a.intertwines(), || format!("V_{m} ⊗ V_{n} → V_{}: not an intertwiner", a.k));
            sum = &sum + &(&a.inclusion * &a.projection);
            for b in &maps {
                let prod = &a.projection * &b.inclusion;
                let ok = if a.k == b.k {
                    prod == QMatrix::identity(a.k as usize + 1)
                } else {
                    prod.is_zero()
                };
                t.check(ok, || format!("V_{m} ⊗ V_{n}: π_{} ∘ i_{} wrong", a.k, b.k));
            }
        }
        t.check(sum == QMatrix::identity(dim), || format!("V_{m} ⊗ V_{n}: Σ i∘π ≠ Id"));
        t
    }));

    let mut witness = Tally::default();
    let mut rng = ChaCha8Rng::seed_from_u64(WITNESS_SEED);
    let mut samples = 0;
    let form = invariant_form(&build_irrep(4)).map(|f| f.matrix);
    while samples < WITNESS_SAMPLES {
        let v: Vec<Rat> = (0..5).map(|_| Rat::new(rng.gen_range(-6..=6), rng.gen_range(1..=4))).collect();
        if v.iter().all(Rat::is_zero) {
            continue;
        }
        samples += 1;
        let ok = match (simplicity_witness(2, &v), &form) {
            (Ok(w), Ok(b)) => {
                let bv = b.mul_vec(&v);
                !w.iter().zip(&bv).map(|(a, b)| a * b).sum::<Rat>().is_zero()
            }
            _ => false,
        };
        witness.check(ok, || format!("no witness for {v:?}"));
    }
    for n in 0..=3 {
        witness.check(unit_channel_factor(n).is_ok(), || format!("unit channel of V_{0} ⊗ V_{0}", 2 * n));
    }

    Tally::merge_all([form_tally, cg_tally, witness])
}

fn decomposition(exec: Execution) -> Tally {
    let all = Params::test_set();
    Tally::merge_all(sweep::map(exec, &all, |params| {
        let mut t = Tally::default();
        let plain = decompose_wpq(params, 20);
        let equi = decompose_wpq_equivariant(params, 20);
        match (plain, equi) {
            (Ok(plain), Ok(equi)) => {
                t.check(plain.entries.len() == equi.entries.len(), || format!("{params}: length mismatch"));
                for (a, b) in plain.entries.iter().zip(&equi.entries) {
                    let dim = b.psl2_label.map(|l| l + 1);
                    t.check(Some(a.multiplicity) == dim && a.obj == b.obj, || {
                        format!("{params}: {} multiplicity {} vs dim {dim:?}", a.obj, a.multiplicity)
                    });
                }
                for (i, e) in plain.entries.iter().enumerate().skip(1) {
                    t.check(e.multiplicity as usize == 2 * (i + 1) - 1, || format!("{params}: n={} multiplicity", i + 1));
                }
            }
            (Err(e), _) | (_, Err(e)) => t.check(false, || format!("{params}: {e}")),
        }
        for n in 2..=20 {
            let ok = exact_sequence_check(params, n).map(|c| c.balanced) == Ok(true);
            t.check(ok, || format!("{params}: factor bookkeeping at n_max={n}"));
        }
        t
    }))
}
