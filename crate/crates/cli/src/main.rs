//! `lamcohom`: build fibered complexes from recipe files and compute their
//! cohomology, L² invariants and dynamics checks.
//!
//! Exit status: 0 on success, 1 when a check fails, 2 on bad input.

mod commands;
mod recipe;
mod report;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use lamcohom::CoeffKind;

use commands::{Options, Source};
use recipe::Input;
use report::Report;

#[derive(Parser)]
#[command(name = "lamcohom", version, about = "Cohomology of measurable laminations on finite fibered models")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Coefficients: z2, q or r.
    #[arg(long, global = true)]
    coeff: Option<CoeffKind>,

    /// Restrict to one degree.
    #[arg(long, global = true)]
    degree: Option<usize>,

    /// Print the full report as JSON instead of TSV tables.
    #[arg(long, global = true)]
    json: bool,

    /// Use a seeded random corpus instance instead of a recipe.
    #[arg(long, global = true)]
    seed: Option<u64>,

    /// Zero threshold on the float path.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,

    /// Write the output here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Check simplicial identities, regularity and leaf-constant weights.
    Validate { recipe: Option<PathBuf> },
    /// Cohomology dimensions and generators over z2 or q.
    Cohomology { recipe: Option<PathBuf> },
    /// Ordinary and Λ-Betti numbers.
    Betti { recipe: Option<PathBuf> },
    /// Harmonic spaces and the Hodge decomposition of a recipe cochain.
    Hodge { recipe: Option<PathBuf> },
    /// Mayer-Vietoris exactness for subcomplexes "u" and "v".
    CheckMv { recipe: Option<PathBuf> },
    /// Excision for subcomplexes "u" and "z".
    CheckExcision { recipe: Option<PathBuf> },
    /// Long exact sequence of the pair with subcomplex "a".
    CheckPair { recipe: Option<PathBuf> },
    /// Chain homotopy operator of a prism homotopy.
    Homotopy { recipe: Option<PathBuf> },
    /// Barycentric subdivision and its invariants.
    Subdivide { recipe: Option<PathBuf> },
    /// Attach-decompose and triangulate regions, or build an adapted subdivision.
    Geometry { recipe: Option<PathBuf> },
    /// Rotations, indicator coboundaries and zero sets of arc sets.
    Arcs { recipe: Option<PathBuf> },
    /// Whether 1 is a coboundary in the cyclic Kronecker model.
    Kronecker { recipe: Option<PathBuf> },
}

fn run(cli: &Cli) -> Input<Report> {
    let opts = Options { coeff: cli.coeff, degree: cli.degree, tol: cli.tol };
    let recipe = match &cli.command {
        Command::Validate { recipe }
        | Command::Cohomology { recipe }
        | Command::Betti { recipe }
        | Command::Hodge { recipe }
        | Command::CheckMv { recipe }
        | Command::CheckExcision { recipe }
        | Command::CheckPair { recipe }
        | Command::Homotopy { recipe }
        | Command::Subdivide { recipe }
        | Command::Geometry { recipe }
        | Command::Arcs { recipe }
        | Command::Kronecker { recipe } => recipe.as_deref(),
    };
    let src: Source = commands::source(recipe, cli.seed)?;
    match &cli.command {
        Command::Validate { .. } => commands::validate(&src),
        Command::Cohomology { .. } => commands::cohomology_cmd(&src, &opts),
        Command::Betti { .. } => commands::betti(&src, &opts),
        Command::Hodge { .. } => commands::hodge(&src, &opts),
        Command::CheckMv { .. } => commands::check_mv(&src),
        Command::CheckExcision { .. } => commands::check_excision(&src),
        Command::CheckPair { .. } => commands::check_pair(&src),
        Command::Homotopy { .. } => commands::homotopy(&src),
        Command::Subdivide { .. } => commands::subdivide(&src, &opts),
        Command::Geometry { .. } => commands::geometry(&src),
        Command::Arcs { .. } => commands::arcs(&src),
        Command::Kronecker { .. } => commands::kronecker_cmd(&src),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    };
    let text = if cli.json { report.to_json() } else { report.tsv() };
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &text).map_err(|e| format!("{}: {e}", path.display())),
        None => std::io::stdout().write_all(text.as_bytes()).map_err(|e| e.to_string()),
    };
    if let Err(e) = written {
        eprintln!("error: {e}");
        return ExitCode::from(2);
    }
    match &report.failure {
        Some(w) => {
            eprintln!("check failed: {w}");
            ExitCode::from(1)
        }
        None => ExitCode::SUCCESS,
    }
}
