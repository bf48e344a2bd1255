mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use steenrod::simplicial::DEFAULT_SIZE_BOUND;
use steenrod::{CoefficientRing, Complex, Error};

#[derive(Parser)]
#[command(name = "steenrod", version, about = "Cohomology operations, duality and linking forms on simplicial complexes")]
struct Cli {
    /// Directory holding external fixture files such as the Wu manifold.
    #[arg(long, global = true)]
    fixtures: Option<PathBuf>,
    /// Emit JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Input {
    /// A complex file, or `fixture:<name>` for a built-in complex.
    input: String,
}

#[derive(Subcommand)]
enum Command {
    /// Cohomology groups in each degree.
    Homology {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value = "z")]
        ring: String,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Steenrod squares and Bocksteins of the mod-2 basis classes.
    Steenrod {
        #[command(flatten)]
        input: Input,
        #[arg(long)]
        degree: Option<usize>,
    },
    /// Wu and Stiefel-Whitney classes; the alternation criterion in dimensions 4d+1.
    Wu {
        #[command(flatten)]
        input: Input,
    },
    /// Torsion linking form of an odd-dimensional oriented manifold.
    Linkform {
        #[command(flatten)]
        input: Input,
        /// k for torsion in H^{k+1}; defaults to (dim - 1) / 2.
        #[arg(long)]
        degree: Option<usize>,
        /// Also recompute the form from randomly perturbed lifts.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Runs the full invariant suite; exits 5 if any check fails.
    Verify {
        #[command(flatten)]
        input: Input,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cochain pairs per cup-i homotopy check.
        #[arg(long, default_value_t = 100)]
        trials: usize,
    },
    /// Scans lk(p, q) = lk(q, p) over distinct odd primes below the bound.
    Qr {
        #[arg(long, default_value_t = 1000)]
        bound: u64,
    },
    /// Triangulated product of two complexes, written in the complex file format.
    Product {
        left: String,
        right: String,
        #[arg(long, default_value_t = DEFAULT_SIZE_BOUND)]
        bound: usize,
    },
    /// Generates a triangulated lens space L(p, q).
    Lens { p: u64, q: u64 },
}

enum Failure {
    Error(Error),
    ChecksFailed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Error(e)
    }
}

fn exit_code(e: &Error) -> u8 {
    match e {
        Error::Parse { .. } | Error::Empty | Error::Io(_) | Error::Checksum { .. } => 2,
        Error::NotClosedPseudomanifold(_)
        | Error::NonOrientable
        | Error::Disconnected
        | Error::WrongDimension { .. }
        | Error::Precondition(_)
        | Error::DualityFailure(_)
        | Error::NotCocycle => 3,
        Error::SizeBound { .. } => 4,
        Error::DegreeOutOfRange { .. }
        | Error::InvalidArgument(_)
        | Error::UnsupportedRing(_)
        | Error::RingMismatch(..)
        | Error::ComplexMismatch => 1,
    }
}

fn load(cli: &Cli, input: &str) -> Result<Complex, Error> {
    match input.strip_prefix("fixture:") {
        Some(name) => steenrod::fixtures::named(name, cli.fixtures.as_deref()),
        None => steenrod::fixtures::load(std::path::Path::new(input)),
    }
}

fn run(cli: &Cli) -> Result<String, Failure> {
    let json = cli.json;
    let out = match &cli.command {
        Command::Homology { input, ring, degree } => {
            let ring = CoefficientRing::parse(ring)?;
            report::homology(&load(cli, &input.input)?, ring, *degree, json)?
        }
        Command::Steenrod { input, degree } => report::steenrod(&load(cli, &input.input)?, *degree, json)?,
        Command::Wu { input } => report::wu(&load(cli, &input.input)?, json)?,
        Command::Linkform { input, degree, seed } => report::linkform(&load(cli, &input.input)?, *degree, *seed, json)?,
        Command::Verify { input, seed, trials } => {
            let (text, pass) = report::verify(&load(cli, &input.input)?, *seed, *trials, json)?;
            if !pass {
                return Err(Failure::ChecksFailed(text));
            }
            text
        }
        Command::Qr { bound } => {
            let (text, pass) = report::qr(*bound, json);
            if !pass {
                return Err(Failure::ChecksFailed(text));
            }
            text
        }
        Command::Product { left, right, bound } => {
            let (a, b) = (load(cli, left)?, load(cli, right)?);
            steenrod::simplicial::product_complex_bounded(&a, &b, *bound)?.to_text()
        }
        Command::Lens { p, q } => steenrod::lens::lens_space(*p, *q)?.to_text(),
    };
    Ok(out)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(out) => {
            print!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::ChecksFailed(out)) => {
            print!("{out}");
            ExitCode::from(5)
        }
        Err(Failure::Error(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code(&e))
        }
    }
}
