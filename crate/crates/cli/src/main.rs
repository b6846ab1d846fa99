//! `spectra`: command-line front end for the spectral-curve checks.
//!
//! Exit status is 0 when every check passes, 1 when a check fails and 2 on
//! usage or domain errors.

mod commands;
mod values;

use std::io::Write;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "spectra", version, about = "Spectral curves, periods and vacua of elliptic integrable systems")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Seed for every random choice.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// The function x_k on y² = x³ + bx − c, optionally at numeric b, c.
    Xk {
        #[arg(long)]
        k: i32,
        #[arg(long, allow_hyphen_values = true)]
        b: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        c: Option<String>,
    },
    /// The distinguished polynomial p_n; `--verify` compares with the linear solve.
    Pn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        verify: bool,
    },
    /// Spectral curves.
    Curve {
        #[command(subcommand)]
        kind: CurveKind,
    },
    /// Residues of t·dz over ∞ at numeric u on the curve of nome q.
    Residues {
        #[arg(long)]
        n: usize,
        /// u_0, …, u_{n−2} as complex numbers (`0.3-0.1i`), comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        u: Vec<String>,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// The pure SU(2) curve: periods and monodromy.
    Sw1 {
        #[command(subcommand)]
        op: Sw1Op,
    },
    /// Periodic Toda lattices.
    Toda {
        #[command(subcommand)]
        op: TodaOp,
    },
    /// Genus of a spectral family (`A`, `D`, `B-dual`, …), the genus table (`table`) or the pure curve (`pure`).
    Genus {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 3)]
        rank: usize,
    },
    /// Massive vacua from unramified covers at nome q.
    Vacua {
        #[arg(long)]
        n: usize,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Index-n subgroups of Z_n × Z_n in Hermite normal form.
    Subgroups {
        #[arg(long)]
        n: usize,
    },
    /// Exact AKS brackets at random tridiagonal points, sizes 2..=n.
    Aks {
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
    },
    /// Linearity of KKS sphere integrals in the level.
    Dh {
        #[arg(long, value_enum)]
        algebra: Algebra,
        /// Multiples for su2 (`1,2,3,5`) or diagonals `a1:a2:a3` for su3; random when omitted.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        levels: Vec<String>,
    },
    /// Degeneration of the adjoint SU(2) family as the nome goes to 0.
    Degenerate {
        #[command(subcommand)]
        kind: DegenerateKind,
    },
    /// The acceptance battery: `all` or a criterion number.
    Suite { which: String },
}

#[derive(Subcommand, Debug)]
enum CurveKind {
    /// The SU(n) adjoint family at rational u.
    Su(SuArgs),
}

#[derive(Args, Debug)]
struct SuArgs {
    #[arg(long)]
    n: usize,
    /// u_0, …, u_{n−2} as rationals, comma separated; symbolic when omitted.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
    u: Vec<String>,
}

#[derive(Subcommand, Debug)]
enum Sw1Op {
    Periods {
        #[arg(long, allow_hyphen_values = true)]
        u: String,
    },
    Monodromy {
        #[arg(long = "loop", allow_hyphen_values = true)]
        lp: String,
    },
}

#[derive(Subcommand, Debug)]
enum TodaOp {
    Charpoly {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        rank: usize,
    },
    Family {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        dual: bool,
        #[arg(long, default_value_t = 2)]
        rank: usize,
    },
    VerifySubstitutions {
        #[arg(long = "type")]
        ty: String,
        #[arg(long)]
        dual: bool,
        #[arg(long)]
        rank: usize,
    },
}

#[derive(Subcommand, Debug)]
enum DegenerateKind {
    Su2 {
        #[arg(long, value_delimiter = ',', default_values_t = vec![1e-3, 1e-4, 1e-5])]
        qs: Vec<f64>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Algebra {
    Su2,
    Su3,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let echo = std::env::args().skip(1).collect::<Vec<_>>().join(" ");
    match commands::run(&cli.command, &echo, cli.seed) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => format!("{}\n", report.to_json()),
                Format::Text => report.to_text(),
            };
            // a closed pipe (`| head`) is not an error
            let _ = std::io::stdout().write_all(text.as_bytes());
            if report.passed() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
