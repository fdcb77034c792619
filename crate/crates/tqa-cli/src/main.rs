//! Command-line front end for the truncated quiver algebra toolkit.

mod classexpr;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use tqa_core::cohomology::{cohomology, space_to_json};
use tqa_core::comparison::verify_comparison;
use tqa_core::cup::{cup, ring_checks, Tower};
use tqa_core::error::{Error, Limits};
use tqa_core::oracle::bar_cohomology_oracle;
use tqa_core::quiver::builtins;
use tqa_core::report::Report;
use tqa_core::resolutions::verify_resolutions;
use tqa_core::{parse_quiver, Quiver, TruncatedAlgebra};

#[derive(Parser)]
#[command(
    name = "tqa",
    version,
    about = "Hochschild cohomology of truncated quiver algebras over the rationals"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct QuiverArgs {
    /// Built-in quiver: example83, loop, `cycle<c>`, `tensor<r>`, `a<n>`,
    /// example7-1, example7-2, branching.
    #[arg(long, conflicts_with = "quiver")]
    builtin: Option<String>,
    /// Quiver description file (line DSL or JSON).
    #[arg(long)]
    quiver: Option<PathBuf>,
    /// Truncation length; overrides the file value, required with --builtin.
    #[arg(long = "N")]
    n_trunc: Option<usize>,
    /// Cap on paths / parallel pairs per enumeration.
    #[arg(long, default_value_t = 1_000_000)]
    max_paths: usize,
    /// Cap on resolution basis words per enumeration.
    #[arg(long, default_value_t = 1_000_000)]
    max_words: usize,
}

#[derive(Args)]
struct FormatArg {
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Enumerate the paths of one length.
    Paths {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Path length.
        #[arg(short = 'n', long)]
        length: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Cohomology dimensions and representatives per degree.
    Cohomology {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Movement classes of parallel pairs and their medal flags.
    Medals {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// First path length.
        #[arg(short = 'i', long)]
        first: usize,
        /// Second path length.
        #[arg(short = 'm', long)]
        second: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Cup product of two cocycles, reduced to the canonical basis.
    Cup {
        #[command(flatten)]
        quiver: QuiverArgs,
        /// Left operand, e.g. "1:(x,x) + 1:(a,ax^3)".
        #[arg(long)]
        left: String,
        /// Right operand.
        #[arg(long)]
        right: String,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Run the resolution, comparison and ring verification suites.
    Verify {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Dimension table and differential blocks in the reference layout.
    Table {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, default_value_t = 5)]
        max_degree: usize,
        #[command(flatten)]
        format: FormatArg,
    },
    /// Compare minimal-complex dimensions against the bar-complex oracle.
    Oracle {
        #[command(flatten)]
        quiver: QuiverArgs,
        #[arg(long, default_value_t = 4)]
        max_degree: usize,
        #[command(flatten)]
        format: FormatArg,
    },
}

fn load_algebra(args: &QuiverArgs) -> Result<(TruncatedAlgebra, Limits), Error> {
    let limits = Limits {
        max_paths: args.max_paths,
        max_words: args.max_words,
    };
    let (quiver, file_n): (Quiver, Option<usize>) = match (&args.builtin, &args.quiver) {
        (Some(name), None) => {
            let q = builtins::by_name(name).ok_or_else(|| {
                Error::Validation(format!("unknown builtin quiver `{name}`"))
            })?;
            (q, None)
        }
        (None, Some(path)) => {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::Validation(format!("cannot read {}: {e}", path.display())))?;
            let (q, n) = parse_quiver(&text)?;
            (q, Some(n))
        }
        _ => {
            return Err(Error::Validation(
                "exactly one of --builtin or --quiver is required".into(),
            ))
        }
    };
    let n = args.n_trunc.or(file_n).ok_or_else(|| {
        Error::Validation("--N is required with --builtin".into())
    })?;
    let algebra = TruncatedAlgebra::new(quiver, n)?;
    let flags = algebra.quiver().structure_flags();
    if !flags.is_connected {
        eprintln!(
            "warning: quiver is disconnected; cohomology splits as a direct sum over components"
        );
    }
    Ok((algebra, limits))
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::ResourceLimit { .. } => 3,
        _ => 1,
    }
}

fn print_report(report: &Report, format: Format) {
    match format {
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(report).expect("report serializes")
        ),
        _ => println!("{}", report.render_text()),
    }
}

fn run(cli: Cli) -> Result<u8, Error> {
    match cli.command {
        Command::Paths {
            quiver,
            length,
            format,
        } => {
            let (a, limits) = load_algebra(&quiver)?;
            let paths = a.quiver().paths(length, &limits)?;
            output::paths(&a, length, &paths, format.format);
            Ok(0)
        }
        Command::Cohomology {
            quiver,
            max_degree,
            format,
        } => {
            let (a, limits) = load_algebra(&quiver)?;
            let spaces: Vec<_> = (0..=max_degree)
                .map(|n| cohomology(&a, n, &limits))
                .collect::<Result<_, _>>()?;
            match format.format {
                Format::Json => {
                    let views: Vec<_> = spaces.iter().map(|s| space_to_json(&a, s)).collect();
                    println!(
                        "{}",
                        serde_json::to_string_pretty(&views).expect("serializable")
                    );
                }
                Format::Csv => output::dims_csv(&a, &spaces),
                Format::Text => output::spaces_text(&a, &spaces),
            }
            Ok(0)
        }
        Command::Medals {
            quiver,
            first,
            second,
            format,
        } => {
            let (a, limits) = load_algebra(&quiver)?;
            let classes = tqa_core::medals::medal_classes(a.quiver(), first, second, &limits)?;
            output::medals(&a, &classes, format.format);
            Ok(0)
        }
        Command::Cup {
            quiver,
            left,
            right,
            format,
        } => {
            let (a, limits) = load_algebra(&quiver)?;
            let f = classexpr::parse_class(&a, &left)?;
            let g = classexpr::parse_class(&a, &right)?;
            let mut tower = Tower::new(&a, limits);
            let (coords, cochain) = cup(&mut tower, &f, &g)?;
            output::cup_result(&a, f.degree + g.degree, &coords, &cochain, format.format);
            Ok(0)
        }
        Command::Verify {
            quiver,
            max_degree,
            format,
        } => {
            let (a, limits) = load_algebra(&quiver)?;
            let mut report = verify_resolutions(&a, max_degree, &limits)?;
            report.merge(verify_comparison(&a, max_degree, &limits)?);
            report.merge(output::matrix_cross_checks(&a, max_degree, &limits)?);
            if max_degree >= 2 {
                report.merge(ring_checks(&a, max_degree, &limits)?);
            }
            print_report(&report, format.format);
            Ok(if report.all_pass() { 0 } else { 2 })
        }
        Command::Table {
            quiver,
            max_degree,
            format,
        } => {
            let (a, limits) = load_algebra(&quiver)?;
            output::table(&a, max_degree, &limits, format.format)?;
            Ok(0)
        }
        Command::Oracle {
            quiver,
            max_degree,
            format,
        } => {
            let (a, limits) = load_algebra(&quiver)?;
            let mut rows = Vec::new();
            let mut all_match = true;
            for n in 0..=max_degree {
                let minimal = cohomology(&a, n, &limits)?.total_dim();
                let oracle = bar_cohomology_oracle(&a, n, &limits)?;
                all_match &= minimal == oracle;
                rows.push((n, minimal, oracle));
            }
            output::oracle(&rows, format.format);
            Ok(if all_match { 0 } else { 2 })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are successes; everything else is a
            // validation failure.
            let benign = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            let _ = e.print();
            return if benign {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            };
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(exit_code_for(&e))
        }
    }
}
