//! `carnot`: command-line front end for carnot-core.
//!
//! Exit codes: 0 when the command succeeds and its verdict matches the
//! expectation, 1 on property failures (Jacobi violations, not nilpotent,
//! no stratification, unexpected verdict), 2 on usage and parse errors.

use std::fs;
use std::ops::RangeInclusive;
use std::path::Path;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use carnot_core::catalog;
use carnot_core::format::{self, parse_range};
use carnot_core::grading::is_stratifiable;
use carnot_core::report::{self, Report, ReportOptions};
use carnot_core::tanaka::DEFAULT_MAX_DEGREE;
use carnot_core::{Error, LieAlgebra};

#[derive(Parser)]
#[command(name = "carnot", version, about = "Exact computations on stratified nilpotent Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check the Jacobi identity and list violating basis triples.
    Check { input: String },
    /// Lower central series, step and center.
    Series { input: String },
    /// Strata-preserving derivations.
    G0 { input: String },
    /// Tanaka prolongation up to a degree cap.
    Prolong {
        input: String,
        #[arg(long = "max", default_value_t = DEFAULT_MAX_DEGREE)]
        max: usize,
    },
    /// Ultrarigidity verdict (dim g0 = 1, plus g1 = 0 for nonabelian input).
    Rigid {
        input: String,
        #[arg(long, value_enum, default_value_t = RigidExpect::Ultrarigid)]
        expect: RigidExpect,
    },
    /// Decide whether the algebra admits a stratification.
    Stratifiable {
        input: String,
        #[arg(long, value_enum, default_value_t = StratExpect::Stratifiable)]
        expect: StratExpect,
    },
    /// Associated graded algebra for a horizontal coordinate range, e.g. 1..10.
    Gr {
        input: String,
        #[arg(long)]
        horizontal: String,
    },
    /// List catalog entries, or show / emit one entry.
    Catalog {
        name: Option<String>,
        #[arg(long)]
        emit: bool,
    },
    /// Full canonical report.
    Report {
        input: String,
        #[arg(long = "max", default_value_t = DEFAULT_MAX_DEGREE)]
        max: usize,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RigidExpect {
    Ultrarigid,
    NotUltrarigid,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum StratExpect {
    Stratifiable,
    NotStratifiable,
}

/// Failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::Parse { .. } | Error::UnknownCatalogEntry(_) | Error::IndexOutOfRange { .. } => 2,
            Error::UnorderedPair { .. } | Error::DuplicatePair { .. } => 2,
            _ => 1,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

struct Input {
    name: String,
    algebra: LieAlgebra,
    layers: Option<Vec<RangeInclusive<usize>>>,
}

/// A path to an algebra file, or else a catalog name.
fn load(input: &str) -> Result<Input, Failure> {
    let path = Path::new(input);
    if path.is_file() {
        let text = fs::read_to_string(path).map_err(|e| usage(format!("{input}: {e}")))?;
        let f = format::parse(&text).map_err(|e| usage(format!("{input}: {e}")))?;
        let name = path.file_stem().map_or(input.to_string(), |s| s.to_string_lossy().into_owned());
        return Ok(Input {
            name,
            algebra: f.algebra,
            layers: f.layers,
        });
    }
    match catalog::get(input) {
        Ok(e) => Ok(Input {
            name: e.name,
            algebra: e.algebra,
            layers: e.declared_layers,
        }),
        Err(_) => Err(usage(format!("`{input}` is neither a readable file nor a catalog entry"))),
    }
}

/// Jacobi check shared by every command that needs a Lie algebra.
fn require_lie(input: &Input) -> Result<(), Failure> {
    let (r, ok) = report::jacobi_section(&input.algebra);
    if ok {
        return Ok(());
    }
    Err(Failure {
        code: 1,
        message: format!("not a Lie algebra\n{r}"),
    })
}

fn stratification(input: &Input) -> Result<carnot_core::Stratification, Failure> {
    require_lie(input)?;
    match report::resolve_stratification(&input.algebra, input.layers.as_deref())? {
        Some((s, _)) => Ok(s),
        None => Err(Failure {
            code: 1,
            message: "no stratification declared and none exists".into(),
        }),
    }
}

fn run(cli: Cli) -> Result<(String, u8), Failure> {
    let mut out = Report::default();
    let mut code = 0;
    match cli.command {
        Command::Check { input } => {
            let input = load(&input)?;
            out.push("name", &input.name);
            let (r, ok) = report::jacobi_section(&input.algebra);
            out.extend(r);
            if let Some(ranges) = &input.layers {
                if ok {
                    let layers = format::ranges_to_layers(input.algebra.dim(), ranges);
                    match carnot_core::grading::verify_stratification(&input.algebra, &layers) {
                        Ok(_) => out.push("declared_layers", "valid"),
                        Err(e) => {
                            out.push("declared_layers", format!("invalid ({e})"));
                            code = 1;
                        }
                    }
                }
            }
            if !ok {
                code = 1;
            }
        }
        Command::Series { input } => {
            let input = load(&input)?;
            require_lie(&input)?;
            out.push("name", &input.name);
            out.extend(report::series_section(&input.algebra)?.0);
        }
        Command::G0 { input } => {
            let input = load(&input)?;
            let s = stratification(&input)?;
            out.push("name", &input.name);
            out.extend(report::g0_section(&input.algebra, &s)?);
        }
        Command::Prolong { input, max } => {
            let input = load(&input)?;
            let s = stratification(&input)?;
            out.push("name", &input.name);
            out.extend(report::prolong_section(&input.algebra, &s, max)?);
        }
        Command::Rigid { input, expect } => {
            let input = load(&input)?;
            let s = stratification(&input)?;
            out.push("name", &input.name);
            let (r, rigid) = report::rigid_section(&input.algebra, &s)?;
            out.extend(r);
            if rigid != (expect == RigidExpect::Ultrarigid) {
                code = 1;
            }
        }
        Command::Stratifiable { input, expect } => {
            let input = load(&input)?;
            require_lie(&input)?;
            out.push("name", &input.name);
            let v = is_stratifiable(&input.algebra)?;
            out.extend(report::stratifiable_section(&v));
            if v.stratifiable != (expect == StratExpect::Stratifiable) {
                code = 1;
            }
        }
        Command::Gr { input, horizontal } => {
            let input = load(&input)?;
            require_lie(&input)?;
            let range = parse_range(&horizontal)
                .filter(|r| *r.end() <= input.algebra.dim())
                .ok_or_else(|| usage(format!("bad horizontal range `{horizontal}`")))?;
            return Ok((report::gr_text(&input.algebra, &range)?, 0));
        }
        Command::Catalog { name: None, .. } => {
            let text = catalog::list()
                .into_iter()
                .map(|(n, d)| format!("{n}\t{d}\n"))
                .collect();
            return Ok((text, 0));
        }
        Command::Catalog { name: Some(name), emit } => {
            let e = catalog::get(&name)?;
            if emit {
                return Ok((e.emit(), 0));
            }
            out.push("name", &e.name);
            out.push("description", &e.description);
            out.push("provenance", &e.provenance);
            out.push("dim", e.algebra.dim());
            if let Some(ls) = &e.declared_layers {
                out.push("layers", format::format_ranges(ls));
            }
        }
        Command::Report { input, max } => {
            let input = load(&input)?;
            let r = report::full_report(
                &input.name,
                &input.algebra,
                input.layers.as_deref(),
                ReportOptions { max_degree: max },
            )?;
            if r.get("jacobi") != Some("ok") {
                code = 1;
            }
            out.extend(r);
        }
    }
    Ok((out.to_string(), code))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(f) => {
            eprintln!("carnot: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
