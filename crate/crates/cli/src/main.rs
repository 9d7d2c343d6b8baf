//! Command-line driver for constructing and verifying hypercube cycle and
//! path decompositions.
//!
//! Exit codes: 0 success, 1 verification failure, 2 invalid parameters,
//! 3 resource budget exceeded.

use std::fs::File;
use std::io::{BufReader, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cubedec::construct::{
    base_hamiltonian, binary_decomposition, enumerate_parameters, general_decomposition,
    path_decomposition, render_param_rows, BaseProvider, ConstructionPlan, Outcome, ParamMode,
    DEFAULT_EDGE_BUDGET, DEFAULT_SEARCH_BUDGET,
};
use cubedec::cube::CubeSpec;
use cubedec::fileio::DecompositionFile;
use cubedec::verify::{verify_certificate, verify_decomposition, PieceKind};
use cubedec::Error;

#[derive(Parser)]
#[command(name = "cubedec", about = "Equal-length cycle and path decompositions of even hypercubes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, ValueEnum)]
enum Mode {
    /// Rows for every odd factorization n = x * y * 2^alpha.
    Main,
    /// The binary-expansion refinement (x = 1).
    Cbgen,
}

#[derive(Subcommand)]
enum Command {
    /// Print the parameter table for Q_n: available cycle counts and lengths.
    Params {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "main")]
        mode: Mode,
    },
    /// Construct a cycle decomposition of Q_n and optionally write it out.
    Construct {
        #[arg(long)]
        n: u32,
        /// Odd cofactor (with --y); omit both to use the binary refinement.
        #[arg(long, requires = "y")]
        x: Option<u64>,
        /// Odd divisor of n carried by the cycle lengths.
        #[arg(long, requires = "x")]
        y: Option<u64>,
        #[arg(long, default_value_t = 0)]
        q: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Use an imported base decomposition file for x > 1.
        #[arg(long)]
        base: Option<PathBuf>,
        /// Node budget for the base search.
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
    },
    /// Decompose Q_n into paths of the given length.
    Paths {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        len: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a decomposition file (and its certificate section if present).
    Verify {
        file: PathBuf,
        #[arg(long, default_value_t = 1)]
        threads: usize,
    },
    /// Search for a Hamiltonian decomposition of Q_{2x} to use as a base.
    BaseSearch {
        #[arg(long)]
        x: u64,
        #[arg(long, default_value_t = DEFAULT_SEARCH_BUDGET)]
        budget: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify a file as a Hamiltonian decomposition usable as a base.
    BaseImport { file: PathBuf },
}

fn exit_code_for(err: &Error) -> u8 {
    match err {
        Error::Verification(_) | Error::Structure(_) => 1,
        Error::BudgetExceeded(_) | Error::EdgeBudget { .. } => 3,
        _ => 2,
    }
}

fn edge_budget() -> u64 {
    std::env::var("CUBEDEC_EDGE_BUDGET")
        .ok()
        .and_then(|v| v.parse().ok())
        .unwrap_or(DEFAULT_EDGE_BUDGET)
}

fn write_file(file: &DecompositionFile, out: Option<&PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => {
            let mut w = BufWriter::new(File::create(path)?);
            file.write(&mut w)?;
            w.flush()?;
        }
        None => {
            let stdout = std::io::stdout();
            let mut w = BufWriter::new(stdout.lock());
            file.write(&mut w)?;
            w.flush()?;
        }
    }
    Ok(())
}

fn load_base(path: &PathBuf) -> Result<cubedec::deco::SplitDecomposition, Error> {
    let file = DecompositionFile::read(BufReader::new(File::open(path)?))?;
    file.to_certificate()
}

fn run(cli: Cli) -> Result<(), Error> {
    match cli.command {
        Command::Params { n, mode } => {
            let mode = match mode {
                Mode::Main => ParamMode::Main,
                Mode::Cbgen => ParamMode::Cbgen,
            };
            let rows = enumerate_parameters(n, mode, &BaseProvider::standard())?;
            print!("{}", render_param_rows(&rows, mode));
            Ok(())
        }
        Command::Construct {
            n,
            x,
            y,
            q,
            out,
            base,
            budget,
        } => {
            let mut provider = BaseProvider::standard().with_search_budget(budget);
            if let Some(path) = &base {
                provider = provider.with_imported(load_base(path)?);
            }
            let outcome = match (x, y) {
                (Some(x), Some(y)) => {
                    let plan = ConstructionPlan::new(n, x, y, q)?;
                    general_decomposition(&plan, &provider, edge_budget())?
                }
                _ => binary_decomposition(n, q, edge_budget())?,
            };
            match outcome {
                Outcome::Materialized(cert) => {
                    let report = verify_certificate(&cert, 1)?;
                    eprintln!("{report}");
                    let file = DecompositionFile::from_certificate(&cert)?;
                    write_file(&file, out.as_ref())
                }
                Outcome::ParameterLevel(summary) => {
                    println!("{summary}");
                    let edges = if n <= 57 { (n as u64) << (n - 1) } else { u64::MAX };
                    Err(Error::EdgeBudget {
                        edges,
                        budget: edge_budget(),
                    })
                }
            }
        }
        Command::Paths { n, len, out } => {
            let paths = path_decomposition(n, len, edge_budget())?;
            let report = verify_decomposition(CubeSpec::new(n)?, PieceKind::Paths, &paths, 1)?;
            eprintln!("{report}");
            let file = DecompositionFile::from_pieces(n, PieceKind::Paths, paths);
            write_file(&file, out.as_ref())
        }
        Command::Verify { file, threads } => {
            let parsed = DecompositionFile::read(BufReader::new(File::open(&file)?))?;
            let spec = CubeSpec::new(parsed.n)?;
            let outcome = if parsed.cert.is_some() {
                parsed
                    .to_certificate()
                    .and_then(|cert| verify_certificate(&cert, threads))
            } else {
                verify_decomposition(spec, parsed.kind, &parsed.pieces, threads)
            };
            match outcome {
                Ok(report) => {
                    println!("{report}");
                    Ok(())
                }
                Err(Error::Verification(detail)) => {
                    println!("FAIL verification {detail}");
                    std::process::exit(1);
                }
                Err(Error::Structure(detail)) => {
                    println!("FAIL structure {detail}");
                    std::process::exit(1);
                }
                Err(e) => Err(e),
            }
        }
        Command::BaseSearch { x, budget, out } => {
            let provider = BaseProvider::standard().with_search_budget(budget);
            let cert = base_hamiltonian(x, &provider)?;
            eprintln!(
                "found Hamiltonian decomposition of Q_{} into {} cycles",
                2 * x,
                cert.cycles.len()
            );
            let file = DecompositionFile::from_certificate(&cert)?;
            write_file(&file, out.as_ref())
        }
        Command::BaseImport { file } => {
            let cert = load_base(&file)?;
            let n = match cert.ambient {
                cubedec::deco::Ambient::Cube { n } => n,
                _ => unreachable!("files always carry cube ambients"),
            };
            if n % 2 != 0 {
                return Err(Error::InvalidParameter(format!(
                    "base must live in an even cube, got Q_{n}"
                )));
            }
            let provider = BaseProvider::trivial_only().with_imported(cert);
            let verified = base_hamiltonian((n / 2) as u64, &provider)?;
            println!(
                "OK base Q_{} into {} Hamiltonian cycles",
                n,
                verified.cycles.len()
            );
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
