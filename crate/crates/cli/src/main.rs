use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser, Debug)]
#[command(name = "ajcable", version, about = "Annihilators of colored Jones functions of cabled torus knots")]
struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct TorusArgs {
    #[arg(short, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(short)]
    pub q: i64,
}

#[derive(Args, Debug, Clone, Copy)]
pub struct CableArgs {
    #[arg(short, allow_negative_numbers = true)]
    pub p: i64,
    #[arg(short)]
    pub q: i64,
    #[arg(short, allow_negative_numbers = true)]
    pub r: i64,
    #[arg(short)]
    pub s: i64,
}

#[derive(Subcommand, Debug)]
enum JonesKind {
    /// Colored Jones of the (p, q)-torus knot.
    Torus {
        #[command(flatten)]
        knot: TorusArgs,
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
    },
    /// Colored Jones of the (r, s)-cable.
    Cable {
        #[command(flatten)]
        knot: CableArgs,
        #[arg(short, allow_negative_numbers = true)]
        n: i64,
    },
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a colored Jones polynomial.
    Jones {
        #[command(subcommand)]
        kind: JonesKind,
    },
    /// A-polynomial of the cable.
    Apoly {
        #[command(flatten)]
        knot: CableArgs,
    },
    /// Build the annihilator P(t, M, L).
    Annihilator {
        #[command(flatten)]
        knot: CableArgs,
        /// Print P(-1, M, L) instead.
        #[arg(long)]
        eval_t_neg1: bool,
    },
    /// Identities, annihilation, AJ comparison, closed forms and degrees.
    Verify {
        #[command(flatten)]
        knot: CableArgs,
        #[arg(long, default_value_t = 12)]
        nmax: i64,
    },
    /// Audit the degree formulas.
    Degrees {
        #[command(flatten)]
        knot: CableArgs,
        #[arg(long, default_value_t = 12)]
        nmax: i64,
    },
    /// Search for an annihilator of lower L-degree.
    Minimality {
        #[command(flatten)]
        knot: CableArgs,
        /// L-degree to search; defaults to one below the constructed annihilator.
        #[arg(long)]
        ldeg: Option<i64>,
        /// t half-width; switches to the exact integer search.
        #[arg(long)]
        tspan: Option<i64>,
        /// M half-width.
        #[arg(long)]
        mspan: Option<i64>,
        /// Last color used; defaults to the smallest overdetermined range.
        #[arg(long)]
        nmax: Option<i64>,
    },
    /// Verify every tuple of a grid file.
    Grid {
        /// One "p q r s" per line; the built-in grid when omitted.
        #[arg(long)]
        grid: Option<PathBuf>,
        #[arg(long, default_value_t = 12)]
        nmax: i64,
    },
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("AJCABLE_THREADS") else {
        return Ok(());
    };
    let n: usize = raw.trim().parse().map_err(|_| format!("AJCABLE_THREADS={raw:?} is not a positive integer"))?;
    if n == 0 {
        return Err("AJCABLE_THREADS must be positive".into());
    }
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let usage = e.use_stderr();
            let _ = e.print();
            return if usage { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("error: {e}");
        return ExitCode::from(1);
    }
    let out = match cli.command {
        Command::Jones { kind: JonesKind::Torus { knot, n } } => commands::jones_torus(knot, n, cli.format),
        Command::Jones { kind: JonesKind::Cable { knot, n } } => commands::jones_cable(knot, n, cli.format),
        Command::Apoly { knot } => commands::apoly(knot, cli.format),
        Command::Annihilator { knot, eval_t_neg1 } => commands::annihilator(knot, eval_t_neg1, cli.format),
        Command::Verify { knot, nmax } => commands::verify(knot, nmax, cli.format),
        Command::Degrees { knot, nmax } => commands::degrees(knot, nmax, cli.format),
        Command::Minimality { knot, ldeg, tspan, mspan, nmax } => {
            commands::minimality(knot, commands::SearchOverrides { ldeg, tspan, mspan, nmax }, cli.format)
        }
        Command::Grid { grid, nmax } => commands::grid(grid.as_deref(), nmax, cli.format),
    };
    match out {
        Ok(commands::Outcome::Pass) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Fail) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
