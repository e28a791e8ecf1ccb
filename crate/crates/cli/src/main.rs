use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use triplet_core::braidfmat::{braiding_report, hexagon_report};
use triplet_core::exactnum::Rat;
use triplet_core::fusion::{cg_oracle, fuse_c, fuse_l_family, DecompList};
use triplet_core::kacmod::kac_mm_nn_diagram;
use triplet_core::sl2rep::{build_irrep, cg_maps, invariant_form};
use triplet_core::sweep::Execution;
use triplet_core::verify::{run_suites, Suite};
use triplet_core::virasoro::{canonical_label, central_charge, conformal_weight, ObjLabel, Params, VirLabel};
use triplet_core::wpq::{
    decompose_ideal, decompose_wpq, decompose_wpq_equivariant, decompose_wprime, exact_sequence_check,
    o0_weight_identity,
};
use triplet_core::Error;

/// Exact representation theory of the triplet algebra W_{p,q} and the
/// Virasoro algebra at central charge c_{p,q}.
#[derive(Parser, Debug)]
#[command(name = "triplet", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Central charge, conformal weight and canonical Kac label.
    Weights {
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long)]
        r: i64,
        #[arg(long)]
        s: i64,
    },
    /// L_{mp-1,1} ⊠ L_{np-1,1} for m, n >= 2.
    #[command(name = "fuse-L")]
    FuseL {
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long)]
        m: i64,
        #[arg(long)]
        n: i64,
    },
    /// Fusion channels of L_m ⊠ L_n in the sl2-type subcategory.
    #[command(name = "fuse-C")]
    FuseC {
        /// Optional; when given, channels are also listed as modules L_{(k+2)p-1,1}.
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long)]
        m: u32,
        #[arg(long)]
        n: u32,
    },
    /// Loewy diagram of K_{mp-1,nq-1}, selected by (m, n) or by (r, s).
    KacDiagram {
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long, requires = "n", conflicts_with_all = ["r", "s"])]
        m: Option<i64>,
        #[arg(long, requires = "m")]
        n: Option<i64>,
        #[arg(long, requires = "s")]
        r: Option<i64>,
        #[arg(long, requires = "r")]
        s: Option<i64>,
        #[arg(long, env = "TRIPLET_OUTPUT", value_enum, default_value_t = Format::Json)]
        format: Format,
    },
    /// Invertible solutions of the hexagon constraint on L_1 ⊠ L_1 ⊠ L_1.
    Hexagon {
        #[command(flatten)]
        pq: PqArgs,
        /// Specialize the free parameter, as NUM/DEN.
        #[arg(long)]
        t: Option<Rat>,
    },
    /// Braiding scalars and balancing phases on L_n ⊠ L_n.
    Braiding {
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Truncated decompositions of W_{p,q}, W'_{p,q} and the ideal I_{p,q}.
    Decompose {
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long = "nmax")]
        n_max: u32,
        /// For wprime: plain multiplicities instead of PSL_2 labels.
        #[arg(long)]
        forgetful: bool,
    },
    /// Weight identity h_{1,2nq-2} - h_{1,2} = (np-1)(nq-2).
    O0Check {
        #[command(flatten)]
        pq: PqArgs,
        #[arg(long = "nmax")]
        n_max: u32,
    },
    /// sl2 irreducibles, invariant forms and Clebsch-Gordan maps.
    Sl2 {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum)]
        op: Sl2Op,
        /// Second tensor factor for --op cg.
        #[arg(long, required_if_eq("op", "cg"))]
        m: Option<u32>,
        /// Target channel for --op cg.
        #[arg(long, required_if_eq("op", "cg"))]
        k: Option<u32>,
    },
    /// Run property suites; exits 0 iff all pass.
    Verify {
        /// Suite name or "all".
        #[arg(long, default_value = "all")]
        suite: String,
        #[arg(long)]
        sequential: bool,
    },
}

#[derive(Args, Debug)]
struct PqArgs {
    #[arg(long, requires = "q", conflicts_with = "pq_preset")]
    p: Option<i64>,
    #[arg(long, requires = "p")]
    q: Option<i64>,
    #[arg(long, value_enum)]
    pq_preset: Option<Preset>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Preset {
    /// (2,3), the critical-percolation case.
    Percolation,
    #[value(name = "2-3")]
    P2Q3,
    #[value(name = "3-4")]
    P3Q4,
    #[value(name = "2-5")]
    P2Q5,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Target {
    Wpq,
    WpqEquivariant,
    Ideal,
    Wprime,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Sl2Op {
    Irrep,
    Form,
    Cg,
}

impl PqArgs {
    fn params(&self) -> Result<Params, Failure> {
        let (p, q) = match (self.pq_preset, self.p, self.q) {
            (Some(Preset::Percolation | Preset::P2Q3), _, _) => (2, 3),
            (Some(Preset::P3Q4), _, _) => (3, 4),
            (Some(Preset::P2Q5), _, _) => (2, 5),
            (None, Some(p), Some(q)) => (p, q),
            _ => return Err(Failure::usage("either --p and --q or --pq-preset is required")),
        };
        Ok(Params::new(p, q)?)
    }

    fn optional_params(&self) -> Result<Option<Params>, Failure> {
        if self.p.is_none() && self.pq_preset.is_none() {
            return Ok(None);
        }
        self.params().map(Some)
    }
}

/// A failed command with its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(msg: &str) -> Self {
        Failure {
            code: 2,
            message: msg.to_string(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Unsupported(_) => 3,
            Error::Internal(_) => 1,
            Error::InvalidParams { .. } | Error::InvalidLabel { .. } | Error::Precondition(_) => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

enum Output {
    Text(String),
    /// Text plus a non-zero exit code.
    Failed(String, u8),
}

fn json<T: Serialize>(value: &T) -> Output {
    Output::Text(serde_json::to_string_pretty(value).expect("output types serialize"))
}

#[derive(Serialize)]
struct WeightsOut {
    c: Rat,
    h: Rat,
    label: VirLabel,
    canonical: VirLabel,
}

#[derive(Serialize)]
struct ChannelsOut {
    m: u32,
    n: u32,
    channels: Vec<u32>,
    #[serde(flatten, skip_serializing_if = "Option::is_none")]
    modules: Option<DecompList>,
}

fn run(cmd: Command) -> Result<Output, Failure> {
    match cmd {
        Command::Weights { pq, r, s } => {
            let params = pq.params()?;
            let label = VirLabel::new(r, s)?;
            Ok(json(&WeightsOut {
                c: central_charge(&params),
                h: conformal_weight(&params, label),
                label,
                canonical: canonical_label(&params, label),
            }))
        }
        Command::FuseL { pq, m, n } => Ok(json(&fuse_l_family(&pq.params()?, m, n)?)),
        Command::FuseC { pq, m, n } => {
            let channels = fuse_c(m, n);
            if channels != cg_oracle(m, n) {
                return Err(Error::Internal(format!("fuse_C({m},{n}) disagrees with the character oracle")).into());
            }
            let modules = match pq.optional_params()? {
                Some(params) => {
                    let mut d = DecompList::new();
                    for &k in &channels {
                        d.add(&params, 1, ObjLabel::l_n(&params, k));
                    }
                    Some(d)
                }
                None => None,
            };
            Ok(json(&ChannelsOut { m, n, channels, modules }))
        }
        Command::KacDiagram { pq, m, n, r, s, format } => {
            let params = pq.params()?;
            let (m, n) = match (m, n, r, s) {
                (Some(m), Some(n), _, _) => (m, n),
                (_, _, Some(r), Some(s)) => mm_nn_from_label(&params, r, s)?,
                _ => return Err(Failure::usage("either --m and --n or --r and --s is required")),
            };
            let diagram = kac_mm_nn_diagram(&params, m, n)?;
            Ok(match format {
                Format::Json => json(&diagram),
                Format::Dot => Output::Text(diagram.to_dot().trim_end().to_string()),
            })
        }
        Command::Hexagon { pq, t } => Ok(json(&hexagon_report(&pq.params()?, t.as_ref())?)),
        Command::Braiding { pq, n } => Ok(json(&braiding_report(&pq.params()?, n)?)),
        Command::Decompose { pq, target, n_max, forgetful } => {
            let params = pq.params()?;
            let d = match target {
                Target::Wpq => decompose_wpq(&params, n_max)?,
                Target::WpqEquivariant => decompose_wpq_equivariant(&params, n_max)?,
                Target::Ideal => decompose_ideal(&params, n_max)?,
                Target::Wprime => decompose_wprime(&params, n_max, forgetful)?,
            };
            Ok(json(&d))
        }
        Command::O0Check { pq, n_max } => {
            let params = pq.params()?;
            #[derive(Serialize)]
            struct O0Out {
                rows: Vec<triplet_core::wpq::O0Row>,
                exact_sequence: triplet_core::wpq::ExactSeqCheck,
            }
            Ok(json(&O0Out {
                rows: o0_weight_identity(&params, n_max)?,
                exact_sequence: exact_sequence_check(&params, n_max)?,
            }))
        }
        Command::Sl2 { n, op, m, k } => match op {
            Sl2Op::Irrep => Ok(json(&build_irrep(n))),
            Sl2Op::Form => Ok(json(&invariant_form(&build_irrep(n))?)),
            Sl2Op::Cg => {
                let (m, k) = m.zip(k).ok_or_else(|| Failure::usage("--op cg needs --m and --k"))?;
                Ok(json(&cg_maps(n, m, k)?))
            }
        },
        Command::Verify { suite, sequential } => {
            let suites: Vec<Suite> = if suite == "all" {
                Suite::ALL.to_vec()
            } else {
                vec![suite.parse().map_err(|e: String| Failure::usage(&e))?]
            };
            let exec = if sequential { Execution::Sequential } else { Execution::Parallel };
            let reports = run_suites(&suites, exec);
            let Output::Text(text) = json(&reports) else { unreachable!() };
            Ok(if reports.iter().all(|r| r.passed) {
                Output::Text(text)
            } else {
                Output::Failed(text, 1)
            })
        }
    }
}

/// `(m, n)` with `(r, s) = (mp-1, nq-1)`; other labels have no tabulated
/// diagram.
fn mm_nn_from_label(params: &Params, r: i64, s: i64) -> Result<(i64, i64), Failure> {
    VirLabel::new(r, s)?;
    let (p, q) = (params.p(), params.q());
    if (r + 1) % p != 0 || (s + 1) % q != 0 {
        return Err(Error::Unsupported(format!(
            "Loewy diagrams are tabulated only for K_{{mp-1,nq-1}}, not K_{{{r},{s}}}"
        ))
        .into());
    }
    Ok(((r + 1) / p, (s + 1) / q))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut stdout = std::io::stdout().lock();
    match run(cli.command) {
        Ok(Output::Text(text)) => {
            let _ = writeln!(stdout, "{text}");
            ExitCode::SUCCESS
        }
        Ok(Output::Failed(text, code)) => {
            let _ = writeln!(stdout, "{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
