//! `projquad`: build, verify and inspect quadrangulations of projective
//! spaces.
//!
//! Exit codes: 0 success, 2 an audit or check failed, 64 bad usage,
//! 65 unreadable input, 70 the colouring budget ran out, 74 output could
//! not be written.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use projquad_core::bundle::{self, Bundle};
use projquad_core::constructions::{
    complete_graph_pipeline, cylinder_complete, default_precedence, mycielski_lift,
    odd_cycle_sphere, schrijver_pipeline, suspension, AuditOptions, AuditReport, Quadrangulation,
};
use projquad_core::graph::dimacs::{parse_dimacs, to_dimacs};
use projquad_core::graph::{chromatic_number, verify_homomorphism, Budget, SolverOptions};
use projquad_core::homology::betti_numbers;
use projquad_core::io::{
    complex_from_json, graph_from_json, homomorphism_from_json, read_json, to_canonical_string,
};
use projquad_core::{Error, Graph};

const EXIT_VIOLATION: u8 = 2;
const EXIT_USAGE: u8 = 64;
const EXIT_DATA: u8 = 65;
const EXIT_BUDGET: u8 = 70;
const EXIT_IO: u8 = 74;

#[derive(Parser, Debug)]
#[command(
    name = "projquad",
    version,
    about = "Quadrangulations of real projective spaces"
)]
struct Cli {
    /// Output directory (build) or file (export).
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Time budget for the exact chromatic-number search.
    #[arg(long, global = true)]
    budget_ms: Option<u64>,
    /// Worker threads for the chromatic-number search.
    #[arg(long, global = true, default_value_t = 1)]
    threads: usize,
    /// Seed for the sampled closed-walk audit.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a construction and write its bundle to --out.
    Build {
        #[command(subcommand)]
        construction: Construction,
    },
    /// Re-run every audit on a bundle directory.
    Verify { dir: PathBuf },
    /// Exact chromatic number of a graph (JSON or DIMACS).
    Chi { file: PathBuf },
    /// Mod-2 Betti numbers of a complex.
    Homology {
        file: PathBuf,
        #[arg(long)]
        dim: Option<usize>,
    },
    /// Check a homomorphism file edge by edge.
    HomCheck { file: PathBuf },
    /// Convert a graph file.
    Export {
        #[arg(long, value_enum)]
        format: ExportFormat,
        file: PathBuf,
    },
}

#[derive(Subcommand, Debug)]
enum Construction {
    /// The (2k+1)-cycle on a circle with the antipodal map.
    OddCycle {
        #[arg(long)]
        k: usize,
    },
    /// The 3-ball whose identified graph is K_{2r+3}.
    Cylinder {
        #[arg(long)]
        r: usize,
    },
    /// The odd-cycle sphere for k, suspended `times` times.
    Suspend {
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// The odd-cycle sphere for k, lifted `times` times with r levels; the
    /// last lift is written as a ball, earlier ones are doubled.
    MycielskiLift {
        #[arg(long)]
        k: usize,
        #[arg(long)]
        r: usize,
        #[arg(long, default_value_t = 1)]
        times: usize,
    },
    /// K_t quadrangulating the n-dimensional projective space.
    Complete {
        #[arg(long)]
        t: usize,
        #[arg(long)]
        n: usize,
    },
    /// Iterated lifts of C_{2k+1} with a homomorphism into SG(n, k).
    Schrijver {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum ExportFormat {
    Dimacs,
}

/// A failure with its exit code; the message goes to standard error.
struct Failure(u8, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match &e {
            Error::BadParameter(_) | Error::UnsupportedParameters(_) => EXIT_USAGE,
            Error::Parse(_) | Error::Json(_) | Error::UnknownLabel(_) => EXIT_DATA,
            Error::BudgetExceeded { .. } => EXIT_BUDGET,
            Error::Io(_) => EXIT_IO,
            _ => EXIT_VIOLATION,
        };
        Failure(code, e.to_string())
    }
}

type CmdResult = Result<u8, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(Failure(code, msg)) => {
            eprintln!("projquad: {msg}");
            ExitCode::from(code)
        }
    }
}

fn run(cli: &Cli) -> CmdResult {
    let audit = AuditOptions {
        seed: cli.seed,
        ..AuditOptions::default()
    };
    match &cli.command {
        Command::Build { construction } => build(cli, construction, audit),
        Command::Verify { dir } => verify(dir, audit),
        Command::Chi { file } => chi(cli, file),
        Command::Homology { file, dim } => homology(file, *dim),
        Command::HomCheck { file } => hom_check(file),
        Command::Export {
            format: ExportFormat::Dimacs,
            file,
        } => export_dimacs(cli, file),
    }
}

fn print_json(v: &Value) {
    print!("{}", to_canonical_string(v));
}

fn construct(c: &Construction) -> Result<Bundle, Error> {
    let params = |kv: &[(&str, usize)]| {
        kv.iter()
            .map(|&(k, v)| (k.to_string(), v as u64))
            .collect::<BTreeMap<_, _>>()
    };
    let sphere = |name: &str, p, s| Bundle {
        construction: name.into(),
        parameters: p,
        quadrangulation: Quadrangulation::Sphere(s),
        homomorphism: None,
    };
    Ok(match *c {
        Construction::OddCycle { k } => {
            sphere("odd-cycle", params(&[("k", k)]), odd_cycle_sphere(k)?)
        }
        Construction::Cylinder { r } => Bundle {
            construction: "cylinder".into(),
            parameters: params(&[("r", r)]),
            quadrangulation: Quadrangulation::Ball(cylinder_complete(r)?),
            homomorphism: None,
        },
        Construction::Suspend { k, times } => {
            let mut s = odd_cycle_sphere(k)?;
            for _ in 0..times {
                s = suspension(&s)?;
            }
            sphere("suspend", params(&[("k", k), ("times", times)]), s)
        }
        Construction::MycielskiLift { k, r, times } => {
            if times == 0 {
                return Err(Error::BadParameter("--times must be at least 1".into()));
            }
            let mut s = odd_cycle_sphere(k)?;
            for _ in 1..times {
                s = mycielski_lift(&s, r, &default_precedence(&s.graph()?))?.double()?;
            }
            let ball = mycielski_lift(&s, r, &default_precedence(&s.graph()?))?;
            Bundle {
                construction: "mycielski-lift".into(),
                parameters: params(&[("k", k), ("r", r), ("times", times)]),
                quadrangulation: Quadrangulation::Ball(ball),
                homomorphism: None,
            }
        }
        Construction::Complete { t, n } => sphere(
            "complete",
            params(&[("t", t), ("n", n)]),
            complete_graph_pipeline(t, n)?,
        ),
        Construction::Schrijver { n, k } => {
            let (s, h) = schrijver_pipeline(n, k)?;
            let mut b = sphere("schrijver", params(&[("n", n), ("k", k)]), s);
            b.homomorphism = Some(h);
            b
        }
    })
}

fn build(cli: &Cli, c: &Construction, audit: AuditOptions) -> CmdResult {
    let Some(out) = &cli.out else {
        return Err(Failure(EXIT_USAGE, "build needs --out DIR".into()));
    };
    let b = construct(c)?;
    let rep = bundle::write_bundle(out, &b, audit)?;
    print!(
        "{}",
        std::fs::read_to_string(out.join(bundle::REPORT)).map_err(Error::from)?
    );
    finish(&rep)
}

/// Plain-language name of what an audit checks, for diagnostics.
fn describe(audit: &str) -> &'static str {
    match audit.trim_start_matches("doubled ") {
        "complex" => "complex structure",
        "sphere" | "ball" => "ball/boundary audit",
        "boundary-involution" | "involution" => "involution",
        "labels" => "graph labels",
        "colouring" => "properness/antisymmetry",
        "quotient" => "quotient",
        "quadrangulation" => "quadrangulation",
        "parity" | "cycles" => "parity/homology",
        "commutation" | "graph-file" => "identified graph",
        "z2-map" => "Z2-map to the box complex",
        "homomorphism" => "homomorphism",
        _ => "audit",
    }
}

fn finish(rep: &AuditReport) -> CmdResult {
    match rep.first_failure() {
        None => Ok(0),
        Some(e) => {
            eprintln!(
                "projquad: audit `{}` failed ({}): {}",
                e.name,
                describe(&e.name),
                e.violations
            );
            Ok(EXIT_VIOLATION)
        }
    }
}

fn verify(dir: &Path, audit: AuditOptions) -> CmdResult {
    let rep = bundle::verify_bundle(dir, audit)?;
    let width = rep.entries.iter().map(|e| e.name.len()).max().unwrap_or(0);
    for e in &rep.entries {
        let status = if e.passed { "PASS" } else { "FAIL" };
        if e.passed {
            println!("{status}  {}", e.name);
        } else {
            println!(
                "{status}  {:width$}  {} violation(s)",
                e.name,
                e.violations.len()
            );
        }
    }
    finish(&rep)
}

fn read_graph(file: &Path) -> Result<Graph, Error> {
    match read_json(file) {
        Ok(v) => graph_from_json(&v),
        Err(json_err) => {
            let text = std::fs::read_to_string(file)
                .map_err(|e| Error::Parse(format!("{}: {e}", file.display())))?;
            parse_dimacs(&text).map_err(|_| json_err)
        }
    }
}

fn chi(cli: &Cli, file: &Path) -> CmdResult {
    let g = read_graph(file)?;
    let budget = cli.budget_ms.map_or(Budget::unlimited(), Budget::millis);
    let cert = chromatic_number(
        &g,
        &SolverOptions {
            budget,
            threads: cli.threads.max(1),
        },
    )?;
    print_json(&json!({"chi": cert.chi}));
    Ok(0)
}

fn homology(file: &Path, dim: Option<usize>) -> CmdResult {
    let c = complex_from_json(&read_json(file)?)?;
    let report = c.validate();
    if !report.is_empty() {
        return Err(Failure(
            EXIT_VIOLATION,
            format!("not a valid complex: {report}"),
        ));
    }
    let betti = betti_numbers(&c);
    match dim {
        None => print_json(&json!({"betti": betti})),
        Some(d) => {
            let b = betti.get(d).copied().unwrap_or(0);
            print_json(&json!({"dim": d, "betti": b}));
        }
    }
    Ok(0)
}

fn hom_check(file: &Path) -> CmdResult {
    let h = homomorphism_from_json(&read_json(file)?)?;
    let r = verify_homomorphism(&h);
    print_json(&json!({"valid": r.is_empty(), "violations": r}));
    if r.is_empty() {
        Ok(0)
    } else {
        eprintln!("projquad: not a homomorphism: {r}");
        Ok(EXIT_VIOLATION)
    }
}

fn export_dimacs(cli: &Cli, file: &Path) -> CmdResult {
    let text = to_dimacs(&graph_from_json(&read_json(file)?)?);
    match &cli.out {
        Some(p) => std::fs::write(p, text).map_err(Error::from)?,
        None => print!("{text}"),
    }
    Ok(0)
}
