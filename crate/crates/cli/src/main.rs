mod commands;
mod output;
mod spline;
mod verify;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use minrep::kernel::KernelMethod;
use minrep::numeric::Precision;

use output::Format;

/// Exit status 1: a verification or numerical failure.
/// Exit status 2: bad usage or parameters.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    pub fn usage(msg: impl Into<String>) -> Self {
        CliError::Usage(msg.into())
    }

    pub fn failure(msg: impl Into<String>) -> Self {
        CliError::Failure(msg.into())
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Failure(_) => 1,
        }
    }
}

impl From<minrep::Error> for CliError {
    fn from(e: minrep::Error) -> Self {
        use minrep::Error as E;
        match e {
            E::Convergence { .. } | E::Overflow(_) | E::Consistency(_) => CliError::Failure(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<std::io::Error> for CliError {
    fn from(e: std::io::Error) -> Self {
        CliError::Failure(format!("I/O error: {e}"))
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Usage(format!("CSV error: {e}"))
    }
}

#[derive(Parser)]
#[command(name = "minrep", version, about = "Special functions and kernels of the minimal representation of O(p+1,q+1)")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Exact coefficients of the Mano polynomial M_j^{mu,ell}.
    Mano {
        #[arg(long, allow_negative_numbers = true)]
        mu: i64,
        #[arg(long, allow_negative_numbers = true)]
        ell: i64,
        #[arg(long)]
        j: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Exact coefficients of the Laguerre polynomial L_j^mu (mu rational, e.g. 3 or 1/2).
    Laguerre {
        #[arg(long, allow_hyphen_values = true)]
        mu: String,
        #[arg(long)]
        j: usize,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
    },
    /// Values of Lambda_j^{mu,nu}(x).
    Lambda {
        #[arg(long, allow_negative_numbers = true)]
        mu: f64,
        #[arg(long, allow_negative_numbers = true)]
        nu: f64,
        #[arg(long)]
        j: usize,
        #[command(flatten)]
        grid: Grid,
    },
    /// Inversion kernel Phi^{p,q}.
    Kernel {
        #[command(subcommand)]
        command: KernelCommand,
    },
    /// Apply the inversion operator to a radial function sampled as CSV (r, f(r)).
    Invert {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        /// CSV file with a header row and columns r, f(r).
        #[arg(long)]
        input: PathBuf,
        /// Output file; standard output if absent.
        #[arg(long)]
        output: Option<PathBuf>,
        /// Truncation index J of the expansion.
        #[arg(long = "J", default_value_t = 40)]
        jmax: usize,
        /// Largest accepted relative L2 residual of the expansion.
        #[arg(long, default_value_t = 1e-6)]
        residual_tol: f64,
    },
    /// Tabulate a family of functions on a grid.
    Table(commands::TableArgs),
    /// Run a verification suite.
    Verify(verify::VerifyArgs),
}

#[derive(Subcommand)]
enum KernelCommand {
    /// Tabulate Phi at t != 0 (CSV t, value, method, est_error).
    Eval {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
        #[command(flatten)]
        grid: TGrid,
        #[arg(long, value_enum, default_value = "residue")]
        method: MethodArg,
    },
    /// Case and local integrability (JSON).
    Classify {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
    /// Singular part modulo locally integrable functions (JSON).
    Singular {
        #[arg(long)]
        p: usize,
        #[arg(long)]
        q: usize,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum MethodArg {
    Residue,
    Contour,
    Both,
}

impl MethodArg {
    pub fn methods(self) -> Vec<KernelMethod> {
        match self {
            MethodArg::Residue => vec![KernelMethod::Residue],
            MethodArg::Contour => vec![KernelMethod::Contour],
            MethodArg::Both => vec![KernelMethod::Residue, KernelMethod::Contour],
        }
    }
}

/// Points given either as a list or as a uniform grid.
#[derive(Args, Clone, Debug)]
pub struct Grid {
    #[arg(long, value_delimiter = ',', conflicts_with_all = ["x_min", "x_max", "steps"])]
    pub x: Vec<f64>,
    #[arg(long, requires_all = ["x_max", "steps"])]
    pub x_min: Option<f64>,
    #[arg(long)]
    pub x_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
}

impl Grid {
    pub fn points(&self) -> Result<Vec<f64>, CliError> {
        points(&self.x, self.x_min, self.x_max, self.steps, "x")
    }
}

#[derive(Args, Clone, Debug)]
pub struct TGrid {
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, conflicts_with_all = ["t_min", "t_max", "steps"])]
    pub t: Vec<f64>,
    #[arg(long, allow_negative_numbers = true, requires_all = ["t_max", "steps"])]
    pub t_min: Option<f64>,
    #[arg(long, allow_negative_numbers = true)]
    pub t_max: Option<f64>,
    #[arg(long)]
    pub steps: Option<usize>,
}

fn points(
    list: &[f64],
    min: Option<f64>,
    max: Option<f64>,
    steps: Option<usize>,
    name: &str,
) -> Result<Vec<f64>, CliError> {
    if !list.is_empty() {
        return Ok(list.to_vec());
    }
    match (min, max, steps) {
        (Some(a), Some(b), Some(n)) if n >= 2 && b > a => {
            Ok((0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect())
        }
        (Some(a), Some(b), Some(1)) if a == b => Ok(vec![a]),
        (None, None, None) => Err(CliError::usage(format!("give --{name} or --{name}-min/--{name}-max/--steps"))),
        _ => Err(CliError::usage(format!("need {name}-min < {name}-max and at least two steps"))),
    }
}

fn run(cli: Cli, precision: Precision) -> Result<(), CliError> {
    match cli.command {
        Command::Mano { mu, ell, j, format } => commands::mano(mu, ell, j, format),
        Command::Laguerre { mu, j, format } => commands::laguerre(&mu, j, format),
        Command::Lambda { mu, nu, j, grid } => commands::lambda(mu, nu, j, &grid.points()?, precision),
        Command::Kernel { command } => match command {
            KernelCommand::Eval { p, q, grid, method } => {
                let ts = points(&grid.t, grid.t_min, grid.t_max, grid.steps, "t")?;
                commands::kernel_eval(p, q, &ts, method)
            }
            KernelCommand::Classify { p, q } => commands::kernel_classify(p, q),
            KernelCommand::Singular { p, q } => commands::kernel_singular(p, q),
        },
        Command::Invert {
            p,
            q,
            input,
            output,
            jmax,
            residual_tol,
        } => commands::invert(p, q, &input, output.as_deref(), jmax, residual_tol),
        Command::Table(args) => commands::table(&args, precision),
        Command::Verify(args) => verify::run(&args, precision),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let precision = match Precision::from_env() {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    match run(cli, precision) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            match &e {
                CliError::Usage(msg) => eprintln!("error: {msg}"),
                CliError::Failure(msg) => eprintln!("failure: {msg}"),
            }
            ExitCode::from(e.code())
        }
    }
}
