//! `tempiric`: command-line front end for the tempiric library.

mod output;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use tempiric::catalog::{builtin, load_path, BUILTIN_NAMES};
use tempiric::cktheory::{verify_suite, DEFAULT_SEED};
use tempiric::{parse_rational, Error, GroupDatum, Rational};

#[derive(Parser)]
#[command(name = "tempiric", version, about = "Exact K-type and tempiric-dual computations for rank-one groups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// List the builtin groups, or print one group definition.
    Catalog {
        #[command(flatten)]
        group: OptionalGroup,
        #[command(flatten)]
        out: Output,
    },
    /// K-types in a Vogan-norm window.
    Ktypes {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        bound: BoundArg,
        #[command(flatten)]
        out: Output,
    },
    /// Restriction of K-types to M.
    Branch {
        #[command(flatten)]
        group: GroupArg,
        /// A single K-type, e.g. `3` or `(1,2)`.
        #[arg(long, conflicts_with = "bound", required_unless_present = "bound")]
        label: Option<String>,
        /// Restrict every K-type of norm at most this bound.
        #[arg(long, value_parser = parse_bound)]
        bound: Option<Rational>,
        #[command(flatten)]
        out: Output,
    },
    /// Tempiric representations whose minimal K-type lies in the window.
    TempiricTable {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        bound: BoundArg,
        #[command(flatten)]
        out: Output,
    },
    /// Multiplicity matrix of R(K) -> R(G)_tempiric on the window, with its
    /// inverse when every column is exact.
    CkMatrix {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        bound: BoundArg,
        #[command(flatten)]
        out: Output,
    },
    /// Run the verification suite; exit 1 on the first failing check.
    Verify {
        #[command(flatten)]
        group: GroupArg,
        #[command(flatten)]
        bound: BoundArg,
        /// Seed of the randomized checks.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[command(flatten)]
        out: Output,
    },
    /// Minimal-K-type diagram on a grid of K-type labels.
    Figure {
        #[command(flatten)]
        group: GroupArg,
        /// Largest label coordinate shown.
        #[arg(long, default_value_t = 6)]
        grid_bound: i64,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct GroupArg {
    /// Builtin group: SL2R, SO31 or Sp11.
    #[arg(long)]
    group: Option<String>,
    /// JSON group definition file.
    #[arg(long)]
    group_file: Option<PathBuf>,
}

#[derive(Args)]
#[group(required = false, multiple = false)]
struct OptionalGroup {
    #[arg(long)]
    group: Option<String>,
    #[arg(long)]
    group_file: Option<PathBuf>,
}

#[derive(Args)]
struct BoundArg {
    /// Vogan-norm bound, an integer or `p/q`.
    #[arg(long, value_parser = parse_bound)]
    bound: Rational,
}

#[derive(Args)]
struct Output {
    #[arg(long, value_enum)]
    format: Option<Format>,
    /// Write to this file instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Dot,
    Svg,
    Txt,
}

impl Format {
    fn name(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
            Format::Dot => "dot",
            Format::Svg => "svg",
            Format::Txt => "txt",
        }
    }
}

fn parse_bound(s: &str) -> Result<Rational, String> {
    let r = parse_rational(s).map_err(|e| e.to_string())?;
    if r < Rational::from_integer(0.into()) {
        return Err(format!("bound must be nonnegative, got {s}"));
    }
    Ok(r)
}

/// Failure of a command, carrying its exit status.
enum Failure {
    Usage(String),
    Math(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Internal(_) | Error::TooManyMinimalKTypes { .. } => Failure::Math(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Usage(format!("csv error: {e}"))
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Usage(format!("json error: {e}"))
    }
}

fn load(name: Option<&str>, file: Option<&PathBuf>) -> Result<Option<GroupDatum>, Failure> {
    match (name, file) {
        (Some(n), _) => Ok(Some(builtin(n).map_err(|e| {
            Failure::Usage(format!("{e}; expected one of {}", BUILTIN_NAMES.join(", ")))
        })?)),
        (None, Some(p)) => Ok(Some(load_path(p)?)),
        (None, None) => Ok(None),
    }
}

impl GroupArg {
    fn datum(&self) -> Result<GroupDatum, Failure> {
        load(self.group.as_deref(), self.group_file.as_ref())?
            .ok_or_else(|| Failure::Usage("one of --group or --group-file is required".into()))
    }
}

impl Output {
    fn format(&self, allowed: &[Format]) -> Result<Format, Failure> {
        match self.format {
            None => Ok(allowed[0]),
            Some(f) if allowed.contains(&f) => Ok(f),
            Some(f) => {
                let names: Vec<&str> = allowed.iter().map(|a| a.name()).collect();
                Err(Failure::Usage(format!("format {} is not supported here (use {})", f.name(), names.join(", "))))
            }
        }
    }

    fn emit(&self, text: &str) -> Result<(), Failure> {
        match &self.out {
            Some(path) => {
                let mut w = BufWriter::new(File::create(path)?);
                w.write_all(text.as_bytes())?;
                w.flush()?;
            }
            None => {
                let stdout = io::stdout();
                let mut lock = stdout.lock();
                lock.write_all(text.as_bytes())?;
                lock.flush()?;
            }
        }
        Ok(())
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    use Format::*;
    match cli.command {
        Command::Catalog { group, out } => {
            let datum = load(group.group.as_deref(), group.group_file.as_ref())?;
            let f = out.format(if datum.is_some() { &[Json, Txt] } else { &[Txt, Json] })?;
            out.emit(&output::catalog(datum.as_ref(), f == Json)?)
        }
        Command::Ktypes { group, bound, out } => {
            let f = out.format(&[Csv, Json])?;
            out.emit(&output::ktypes(&group.datum()?, &bound.bound, f == Json)?)
        }
        Command::Branch { group, label, bound, out } => {
            let f = out.format(&[Csv, Json])?;
            out.emit(&output::branch(&group.datum()?, label.as_deref(), bound.as_ref(), f == Json)?)
        }
        Command::TempiricTable { group, bound, out } => {
            let f = out.format(&[Csv, Json])?;
            out.emit(&output::tempiric_table(&group.datum()?, &bound.bound, f == Json)?)
        }
        Command::CkMatrix { group, bound, out } => {
            let f = out.format(&[Json, Csv])?;
            out.emit(&output::ck_matrix(&group.datum()?, &bound.bound, f == Json)?)
        }
        Command::Verify { group, bound, seed, out } => {
            out.format(&[Txt])?;
            let datum = group.datum()?;
            let report = verify_suite(&datum, &bound.bound, seed)?;
            let mut text = format!("# verify group={} bound={} seed={seed}\n", datum.name, bound.bound);
            text.push_str(&report.to_string());
            match report.first_failure() {
                None => {
                    text.push_str("result: pass\n");
                    out.emit(&text)
                }
                Some(c) => {
                    let ce = c.counterexample.as_deref().unwrap_or("");
                    text.push_str(&format!("result: fail\nfirst failure: {}: {ce}\n", c.name));
                    out.emit(&text)?;
                    Err(Failure::Math(format!("check {} failed: {ce}", c.name)))
                }
            }
        }
        Command::Figure { group, grid_bound, out } => {
            let f = out.format(&[Txt, Dot, Svg])?;
            out.emit(&output::figure(&group.datum()?, grid_bound, f.name())?)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Math(msg)) => {
            eprintln!("tempiric: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("tempiric: {msg}");
            eprintln!("run `tempiric --help` for usage");
            ExitCode::from(2)
        }
    }
}
