//! Command-line surface: validate fixtures, run complex/stable/certificate
//! operations, contract resolutions, build delta complexes, compute
//! G-dimension, and drive experiments.
//!
//! Exit codes: 0 pass, 1 assertion failure, 2 usage error, 3 unsupported
//! operation.

use clap::{Parser, Subcommand};
use stablecx::checks;
use stablecx::complex::split::{split_decompose, split_report};
use stablecx::contraction::{classify, contract};
use stablecx::counit::{delta, delta_localize_check};
use stablecx::error::Error;
use stablecx::experiment::{replay_on_complex, run_experiment, ExperimentConfig};
use stablecx::io;
use stablecx::stable::{cosyzygy, omega_tower, right_add_approx, star_certificate};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "stablecx", version, about = "stable complexes over effective rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Extra periods unrolled when truncating periodic tails.
    #[arg(long, global = true, default_value_t = 2)]
    truncation_margin: usize,
    /// Output format.
    #[arg(long, global = true, default_value = "text")]
    output: OutputKind,
}

#[derive(Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
enum OutputKind {
    Json,
    Text,
}

#[derive(Subcommand)]
enum Command {
    /// Validate fixture files.
    Ring {
        #[command(subcommand)]
        action: RingAction,
    },
    /// Operations on complex fixtures.
    Complex {
        #[command(subcommand)]
        action: ComplexAction,
    },
    /// Stable-category operations.
    Stable {
        #[command(subcommand)]
        action: StableAction,
    },
    /// Certification of complex properties.
    Cert {
        #[command(subcommand)]
        action: CertAction,
    },
    /// Contract a resolution fixture.
    Contract { file: PathBuf },
    /// Build the delta complex of the counit at (n, i).
    Delta {
        file: PathBuf,
        #[arg(short)]
        n: usize,
        #[arg(short)]
        i: usize,
    },
    /// G-dimension of a module fixture.
    Gdim {
        file: PathBuf,
        #[arg(long)]
        horizon: Option<usize>,
    },
    /// Run experiments from a configuration file.
    Experiment {
        #[command(subcommand)]
        action: ExperimentAction,
    },
    /// Replay a recorded counterwitness fixture.
    Fixture {
        #[command(subcommand)]
        action: FixtureAction,
    },
}

#[derive(Subcommand)]
enum RingAction {
    Validate { file: PathBuf },
}

#[derive(Subcommand)]
enum ComplexAction {
    Cohomology { file: PathBuf },
    Dual { file: PathBuf },
    Split { file: PathBuf },
}

#[derive(Subcommand)]
enum StableAction {
    Omega {
        file: PathBuf,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    Sigma {
        file: PathBuf,
        #[arg(short, default_value_t = 1)]
        n: usize,
    },
    Approx {
        file: PathBuf,
    },
}

#[derive(Subcommand)]
enum CertAction {
    TorsionFree { file: PathBuf },
    Reflexive { file: PathBuf },
}

#[derive(Subcommand)]
enum ExperimentAction {
    Run { file: PathBuf },
}

#[derive(Subcommand)]
enum FixtureAction {
    Replay {
        /// JSON file: {"check": "...", "complex": <complex fixture>}.
        file: PathBuf,
    },
}

fn read_json<T: serde::de::DeserializeOwned>(path: &PathBuf) -> Result<T, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::arg(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::parse(format!("{}: {e}", path.display())))
}

fn emit(output: OutputKind, value: serde_json::Value, text: String) {
    match output {
        OutputKind::Json => println!("{}", serde_json::to_string_pretty(&value).unwrap()),
        OutputKind::Text => println!("{text}"),
    }
}

fn run(cli: Cli) -> Result<bool, Error> {
    let out = cli.output;
    match cli.command {
        Command::Ring { action } => match action {
            RingAction::Validate { file } => {
                let spec: io::RingSpec = read_json(&file)?;
                let ring = io::build_ring(&spec)?;
                emit(
                    out,
                    serde_json::json!({
                        "name": ring.name,
                        "is_field": ring.flags.is_field,
                        "is_euclidean_domain": ring.flags.is_euclidean_domain,
                        "is_artinian_local": ring.flags.is_artinian_local,
                        "is_domain": ring.flags.is_domain,
                        "is_generically_gorenstein": ring.flags.is_generically_gorenstein,
                        "is_gorenstein_dim_zero": ring.flags.is_gorenstein_dim_zero,
                    }),
                    format!(
                        "ring {} valid; generically Gorenstein: {}",
                        ring.name, ring.flags.is_generically_gorenstein
                    ),
                );
                Ok(true)
            }
        },
        Command::Complex { action } => match action {
            ComplexAction::Cohomology { file } => {
                let spec: io::ComplexSpec = read_json(&file)?;
                let (_, x) = io::build_complex(&spec)?;
                let mut rows = vec![];
                for d in x.certification_degrees() {
                    let h = stablecx::complex::cohomology::cohomology(&x, d);
                    rows.push((d, h.invariant().to_string()));
                }
                emit(
                    out,
                    serde_json::json!({
                        "cohomology": rows.iter().map(|(d, s)| serde_json::json!({"degree": d, "module": s})).collect::<Vec<_>>(),
                        "acyclic": x.is_acyclic(),
                    }),
                    rows.iter()
                        .map(|(d, s)| format!("H^{d} = {s}"))
                        .collect::<Vec<_>>()
                        .join("\n"),
                );
                Ok(true)
            }
            ComplexAction::Dual { file } => {
                let spec: io::ComplexSpec = read_json(&file)?;
                let (_, x) = io::build_complex(&spec)?;
                let d = x.dual();
                emit(
                    out,
                    serde_json::to_value(io::describe_complex(&d)).unwrap(),
                    format!(
                        "dual complex: degrees {}..={}, total rank {}",
                        d.lo,
                        d.hi(),
                        d.total_rank()
                    ),
                );
                Ok(true)
            }
            ComplexAction::Split { file } => {
                let spec: io::ComplexSpec = read_json(&file)?;
                let (_, x) = io::build_complex(&spec)?;
                let rep = split_report(&x);
                let mut detail = serde_json::json!({
                    "split": rep.is_split(),
                    "criteria_agree": rep.agree(),
                });
                if rep.is_split() {
                    if let Ok(dec) = split_decompose(&x) {
                        detail["zero_part_ranks"] = serde_json::json!(dec.zero_part.ranks);
                        detail["null_part_total_rank"] =
                            serde_json::json!(dec.null_part.total_rank());
                    }
                }
                emit(
                    out,
                    detail,
                    format!("split: {}; criteria agree: {}", rep.is_split(), rep.agree()),
                );
                Ok(rep.agree())
            }
        },
        Command::Stable { action } => match action {
            StableAction::Omega { file, n } => {
                let spec: io::ComplexSpec = read_json(&file)?;
                let (_, x) = io::build_complex(&spec)?;
                let t = omega_tower(&x, n);
                let obj = t.object(n);
                emit(
                    out,
                    serde_json::to_value(io::describe_complex(obj)).unwrap(),
                    format!(
                        "syzygy level {n}: degrees {}..={}, total rank {}",
                        obj.lo,
                        obj.hi(),
                        obj.total_rank()
                    ),
                );
                Ok(true)
            }
            StableAction::Sigma { file, n } => {
                let spec: io::ComplexSpec = read_json(&file)?;
                let (_, mut x) = io::build_complex(&spec)?;
                for _ in 0..n {
                    x = cosyzygy(&x);
                }
                emit(
                    out,
                    serde_json::to_value(io::describe_complex(&x)).unwrap(),
                    format!(
                        "cosyzygy level {n}: degrees {}..={}, total rank {}",
                        x.lo,
                        x.hi(),
                        x.total_rank()
                    ),
                );
                Ok(true)
            }
            StableAction::Approx { file } => {
                let spec: io::ComplexSpec = read_json(&file)?;
                let (_, x) = io::build_complex(&spec)?;
                let ap = right_add_approx(&x);
                emit(
                    out,
                    serde_json::json!({
                        "add_object_ranks": ap.add_object().ranks,
                        "window_certified": ap.window_certified,
                        "approximation": serde_json::to_value(io::describe_chain_map(ap.p())).unwrap(),
                    }),
                    format!(
                        "right approximation with Add object of total rank {}{}",
                        ap.add_object().total_rank(),
                        if ap.window_certified { " (window certified)" } else { "" }
                    ),
                );
                Ok(true)
            }
        },
        Command::Cert { action } => {
            let (file, want_reflexive) = match action {
                CertAction::TorsionFree { file } => (file, false),
                CertAction::Reflexive { file } => (file, true),
            };
            let spec: io::ComplexSpec = read_json(&file)?;
            let (_, x) = io::build_complex(&spec)?;
            let cert = star_certificate(&x)?;
            let verdict = if want_reflexive {
                cert.reflexive()
            } else {
                cert.torsion_free()
            };
            emit(
                out,
                serde_json::json!({
                    "torsion_free": cert.torsion_free(),
                    "reflexive": cert.reflexive(),
                    "routes_agree": cert.routes_agree(),
                    "ext2_vanishes": cert.ext2_vanishes,
                    "window_certified": cert.window_certified,
                    "certificate": {
                        "degrees": cert.degrees,
                        "ext1_vanishes": cert.ext1_vanishes,
                        "rho_injective": cert.rho_injective,
                        "rho_bijective": cert.rho_bijective,
                    },
                }),
                format!(
                    "{}: {}{}",
                    if want_reflexive { "*reflexive" } else { "*torsion-free" },
                    verdict,
                    if cert.window_certified { " (window certified)" } else { "" }
                ),
            );
            Ok(verdict)
        }
        Command::Contract { file } => {
            let spec: io::ResolutionSpec = read_json(&file)?;
            let res = io::build_resolution_fixture(&spec, 2)?;
            let c = contract(&res)?;
            let cls = classify(&res)?;
            emit(
                out,
                serde_json::json!({
                    "blocks": c.blocks.iter().map(|b| b.ranks.clone()).collect::<Vec<_>>(),
                    "f_tilde": serde_json::to_value(io::describe_complex(&c.f_tilde)).unwrap(),
                    "split": cls.split,
                    "degeneracy": format!("{:?}", cls.degeneracy),
                    "generically_split": cls.generically_split,
                }),
                format!(
                    "contraction with {} blocks; split: {}; degeneracy: {:?}",
                    c.block_count(),
                    cls.split,
                    cls.degeneracy
                ),
            );
            Ok(true)
        }
        Command::Delta { file, n, i } => {
            let spec: io::ComplexSpec = read_json(&file)?;
            let (_, x) = io::build_complex(&spec)?;
            let d = delta(&x, n, i)?;
            d.verify_l_sequence(2)?;
            let loc = delta_localize_check(&x, n, i).ok();
            emit(
                out,
                serde_json::json!({
                    "resolution_length": d.resolution_length(),
                    "counit_cohomologically_surjective": d.counit.cohomologically_surjective,
                    "cohomology_sequence_exact": d.cohomology_sequence_exact(),
                    "delta": serde_json::to_value(io::describe_complex(&d.delta)).unwrap(),
                    "localization": loc.map(|r| serde_json::json!({
                        "l_sequence_split": r.localized_l_sequence_split,
                        "deltas_split": r.localized_deltas_split,
                    })),
                }),
                format!(
                    "delta complex at (n={n}, i={i}): Add resolution of length {}",
                    d.resolution_length()
                ),
            );
            Ok(true)
        }
        Command::Gdim { file, horizon } => {
            let spec: io::ModuleSpec = read_json(&file)?;
            let (ring, m) = io::build_module(&spec)?;
            let h = horizon.unwrap_or_else(|| checks::default_horizon(&ring));
            let g = checks::g_dimension(&m, h)?;
            let tr = checks::is_totally_reflexive(&m, h)?;
            emit(
                out,
                serde_json::json!({
                    "g_dimension": g,
                    "horizon": h,
                    "totally_reflexive": tr.verdict,
                }),
                match &g {
                    checks::GDimension::Value(v) => format!("G-dimension {v} (horizon {h})"),
                    checks::GDimension::ExceedsHorizon { horizon } => {
                        format!("G-dimension exceeds horizon {horizon}")
                    }
                },
            );
            Ok(true)
        }
        Command::Experiment { action } => match action {
            ExperimentAction::Run { file } => {
                let mut config: ExperimentConfig = read_json(&file)?;
                if cli.seed != 0 {
                    config.seed = cli.seed;
                }
                let reports = run_experiment(&config)?;
                let all = reports.iter().all(|r| r.all_pass());
                let text = reports
                    .iter()
                    .map(|r| {
                        format!(
                            "{:<24} {:<12} trials {:>4}  pass {:>4}  fail {:>4}  findings {:>4}  [{}]",
                            r.check,
                            r.ring,
                            r.trials,
                            r.passes,
                            r.failures,
                            r.findings,
                            if r.assertion_mode { "assertion" } else { "observation" }
                        )
                    })
                    .collect::<Vec<_>>()
                    .join("\n");
                emit(out, serde_json::to_value(&reports).unwrap(), text);
                Ok(all)
            }
        },
        Command::Fixture { action } => match action {
            FixtureAction::Replay { file } => {
                #[derive(serde::Deserialize)]
                struct ReplayFile {
                    check: String,
                    complex: io::ComplexSpec,
                }
                let spec: ReplayFile = read_json(&file)?;
                let (_, x) = io::build_complex(&spec.complex)?;
                let verdict = replay_on_complex(&spec.check, &x)?;
                emit(
                    out,
                    serde_json::json!({"check": spec.check, "verdict": verdict}),
                    format!("replay of '{}': {:?}", spec.check, verdict),
                );
                Ok(verdict != stablecx::experiment::TrialVerdict::Fail)
            }
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Error::Unsupported(m)) => {
            eprintln!("unsupported operation: {m}");
            ExitCode::from(3)
        }
        Err(Error::Argument(m)) | Err(Error::Parse(m)) => {
            eprintln!("usage error: {m}");
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
    }
}
