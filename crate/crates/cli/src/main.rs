use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use nlie_core::complexes::ComplexKind;
use nlie_core::io::to_canonical_json;
use nlie_core::Error;

mod commands;

use commands::Outcome;

/// Exact cohomology of n-Lie algebras and their representations.
///
/// Exit status: 0 when every check passes, 1 on malformed input, 2 when a
/// mathematical identity or hypothesis fails (a JSON witness is printed).
#[derive(Parser, Debug)]
#[command(name = "nlie", version)]
struct Cli {
    /// Write the JSON report here and print only a summary line.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check the fundamental identity, and the representation axioms with --rep.
    Validate {
        algebra: PathBuf,
        #[arg(long)]
        rep: Option<String>,
    },
    /// Cohomology dimensions and representatives in one degree.
    Cohomology {
        algebra: PathBuf,
        /// `adjoint`, `trivial:<dim>` or a representation file.
        #[arg(long)]
        rep: String,
        #[arg(long, value_parser = parse_kind)]
        complex: ComplexKind,
        #[arg(long)]
        degree: usize,
    },
    /// Check that a matrix is a derivation.
    CheckDerivation { algebra: PathBuf, derivation: PathBuf },
    /// The derivation algebra and its inner part.
    Derivations { algebra: PathBuf },
    /// Check the three generalized derivation axioms and the cocycle condition.
    CheckGenDerivation { algebra: PathBuf, derivation: PathBuf },
    /// A basis of the maps satisfying the linear generalized derivation axioms.
    GenDerivations {
        algebra: PathBuf,
        #[arg(long, value_delimiter = ',', default_values = ["i", "ii"])]
        axioms: Vec<String>,
    },
    /// Build an extension and write it as an algebra file.
    Extend {
        #[command(subcommand)]
        kind: ExtendKind,
    },
    /// Decide whether two abelian extensions are equivalent.
    Equivalent {
        algebra: PathBuf,
        #[arg(long)]
        rep: String,
        f: PathBuf,
        g: PathBuf,
    },
    /// Check an infinitesimal deformation, optionally against another.
    DeformCheck {
        algebra: PathBuf,
        eta: PathBuf,
        #[arg(long)]
        against: Option<PathBuf>,
    },
    /// Filtration, E₀, E₁ (two ways) and, for an ideal, E₂.
    Spectral {
        algebra: PathBuf,
        #[arg(long, default_value = "trivial:1")]
        rep: String,
        /// A subalgebra file, a comma list of 1-based indices, or `last-index`.
        #[arg(long, conflicts_with = "ideal", required_unless_present = "ideal")]
        subalgebra: Option<String>,
        #[arg(long)]
        ideal: Option<String>,
        #[arg(long, default_value_t = 2)]
        degree_bound: usize,
    },
    /// Compare the standard and alternate differentials in one degree.
    CompareComplexes {
        algebra: PathBuf,
        #[arg(long)]
        rep: String,
        #[arg(long)]
        degree: usize,
    },
    /// Cohomology of a generalized derivation extension against the algebra.
    CompareExtensionCohomology {
        algebra: PathBuf,
        derivation: PathBuf,
        /// A representation of the extension.
        #[arg(long, default_value = "trivial:1")]
        rep: String,
        #[arg(long, default_value_t = 2)]
        max_degree: usize,
    },
    /// Check identities on seeded random cochains.
    RandomCheck {
        algebra: PathBuf,
        #[arg(long)]
        rep: String,
        #[arg(long, default_value_t = 50)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Subcommand, Debug)]
enum ExtendKind {
    /// `V_f ⋊ L` for a degree-2 standard cochain `f`.
    Abelian {
        algebra: PathBuf,
        #[arg(long)]
        rep: String,
        cochain: PathBuf,
    },
    /// `L ⊕_D k` for a generalized derivation `D`.
    GenDer { algebra: PathBuf, derivation: PathBuf },
}

fn parse_kind(s: &str) -> Result<ComplexKind, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    let result = match cli.command {
        Command::Validate { algebra, rep } => commands::validate(&algebra, rep.as_deref()),
        Command::Cohomology { algebra, rep, complex, degree } => commands::cohomology(&algebra, &rep, complex, degree),
        Command::CheckDerivation { algebra, derivation } => commands::check_derivation(&algebra, &derivation),
        Command::Derivations { algebra } => commands::derivations(&algebra),
        Command::CheckGenDerivation { algebra, derivation } => commands::check_gen_derivation(&algebra, &derivation),
        Command::GenDerivations { algebra, axioms } => commands::gen_derivations(&algebra, &axioms),
        Command::Extend { kind: ExtendKind::Abelian { algebra, rep, cochain } } => {
            commands::extend_abelian(&algebra, &rep, &cochain)
        }
        Command::Extend { kind: ExtendKind::GenDer { algebra, derivation } } => {
            commands::extend_gen_der(&algebra, &derivation)
        }
        Command::Equivalent { algebra, rep, f, g } => commands::equivalent(&algebra, &rep, &f, &g),
        Command::DeformCheck { algebra, eta, against } => commands::deform_check(&algebra, &eta, against.as_deref()),
        Command::Spectral { algebra, rep, subalgebra, ideal, degree_bound } => {
            commands::spectral(&algebra, &rep, subalgebra.as_deref(), ideal.as_deref(), degree_bound)
        }
        Command::CompareComplexes { algebra, rep, degree } => commands::compare_complexes(&algebra, &rep, degree),
        Command::CompareExtensionCohomology { algebra, derivation, rep, max_degree } => {
            commands::compare_extension_cohomology(&algebra, &derivation, &rep, max_degree)
        }
        Command::RandomCheck { algebra, rep, samples, seed } => commands::random_check(&algebra, &rep, samples, seed),
    };
    match result {
        Ok(outcome) => emit(cli.out, outcome),
        Err(Error::Hypothesis(msg)) => emit(
            cli.out,
            Outcome::violation(
                serde_json::json!({ "ok": false, "hypothesis": msg }),
                format!("hypothesis violated: {msg}"),
            ),
        ),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}

fn emit(out: Option<PathBuf>, outcome: Outcome) -> ExitCode {
    let text = match to_canonical_json(&outcome.report) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    match out {
        Some(path) => {
            if let Err(e) = std::fs::write(&path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
            println!("{}", outcome.summary);
        }
        None => {
            print!("{text}");
            eprintln!("{}", outcome.summary);
        }
    }
    if outcome.ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
