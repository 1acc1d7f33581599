//! Command-line front end: measure reports for literal or ingested tables,
//! exhaustive verification sweeps, coupling-family grids, and Monte Carlo
//! cross-checks.
//!
//! Exit codes: 0 on success (consistent report / clean sweep / passing
//! simulation), 1 on usage or input errors, 2 when a verified inconsistency
//! is found, which indicates a library bug, never a valid-world outcome.

mod ingest;
mod output;
mod parse;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use num_rational::BigRational;

use assoc2x2::family::CouplingFamily;
use assoc2x2::measures;
use assoc2x2::montecarlo;
use assoc2x2::oracle;
use assoc2x2::report::{full_report, MeasureReport, ReportValue};
use assoc2x2::scalar::Scalar;
use assoc2x2::sign::SignPolicy;
use assoc2x2::table::{CountTable, MarginalPair, ProbTable};

use crate::ingest::{ColumnSelector, IngestSpec};

#[derive(Parser)]
#[command(
    name = "assoc2x2",
    version,
    about = "Association measures and sign-consistency checks for 2x2 joint tables"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the full measure report for one table
    Analyze(AnalyzeArgs),
    /// Exhaustively verify sign agreement over all small count tables
    Verify(VerifyArgs),
    /// Sweep the fixed-marginal coupling family over a parameter grid
    Family(FamilyArgs),
    /// Cross-check closed forms against seeded Monte Carlo estimates
    Simulate(SimulateArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Mode {
    Exact,
    Float,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["counts", "probs", "csv"])))]
struct AnalyzeArgs {
    /// Cell counts n_p,n_q,n_r,n_s
    #[arg(long, value_name = "NP,NQ,NR,NS")]
    counts: Option<String>,
    /// Cell probabilities p,q,r,s
    #[arg(long, value_name = "P,Q,R,S")]
    probs: Option<String>,
    /// Delimited file of paired binary observations
    #[arg(long, value_name = "PATH")]
    csv: Option<PathBuf>,
    /// Column of the A indicator: 0-based index or header name
    #[arg(long = "col-a", value_name = "SEL", requires = "csv")]
    col_a: Option<String>,
    /// Column of the B indicator: 0-based index or header name
    #[arg(long = "col-b", value_name = "SEL", requires = "csv")]
    col_b: Option<String>,
    /// Treat the first row as a header
    #[arg(long, requires = "csv")]
    header: bool,
    /// Field delimiter (single byte)
    #[arg(long, value_name = "C", default_value_t = ',', requires = "csv")]
    delim: char,
    /// Arithmetic mode; defaults to exact for counts and csv, float for probs
    #[arg(long, value_enum)]
    mode: Option<Mode>,
    /// Width of the float-mode zero band
    #[arg(long = "zero-band", value_name = "EPS", default_value_t = assoc2x2::DEFAULT_ZERO_BAND)]
    zero_band: f64,
    /// Report format
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct VerifyArgs {
    /// Largest table total to sweep (at least 4)
    #[arg(long, value_name = "N")]
    nmax: u64,
    /// Emit the full summary instead of the one-line result
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args)]
struct FamilyArgs {
    /// Marginal P(A)
    #[arg(long, value_name = "A")]
    alpha: String,
    /// Marginal P(B)
    #[arg(long, value_name = "B")]
    beta: String,
    /// Grid size including both endpoints
    #[arg(long, value_name = "K", default_value_t = 101)]
    grid: usize,
    /// Arithmetic mode for the sweep
    #[arg(long, value_enum, default_value_t = Mode::Float)]
    mode: Mode,
}

#[derive(Args)]
#[command(group(ArgGroup::new("input").required(true).args(["counts", "probs"])))]
struct SimulateArgs {
    /// Cell counts n_p,n_q,n_r,n_s
    #[arg(long, value_name = "NP,NQ,NR,NS")]
    counts: Option<String>,
    /// Cell probabilities p,q,r,s
    #[arg(long, value_name = "P,Q,R,S")]
    probs: Option<String>,
    /// Number of draws
    #[arg(long, value_name = "N", default_value_t = 1_000_000)]
    samples: u64,
    /// RNG seed
    #[arg(long, value_name = "S", default_value_t = 42)]
    seed: u64,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            use clap::error::ErrorKind;
            if matches!(
                err.kind(),
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion
            ) {
                print!("{err}");
                return ExitCode::SUCCESS;
            }
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(message) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, String> {
    match command {
        Command::Analyze(args) => analyze(args),
        Command::Verify(args) => verify(args),
        Command::Family(args) => family(args),
        Command::Simulate(args) => simulate(args),
    }
}

/// A resolved table input: counted observations or four probability tokens.
enum Input {
    Counts(CountTable),
    Probs([String; 4]),
}

fn split_four(raw: &str, what: &str) -> Result<[String; 4], String> {
    let parts: Vec<String> = raw.split(',').map(|s| s.trim().to_string()).collect();
    parts
        .try_into()
        .map_err(|_| format!("expected four cell {what}"))
}

fn parse_counts(raw: &str) -> Result<CountTable, String> {
    let tokens = split_four(raw, "counts")?;
    let mut cells = [0u64; 4];
    for (cell, token) in cells.iter_mut().zip(&tokens) {
        *cell = token
            .parse()
            .map_err(|_| format!("'{token}' is not a nonnegative integer count"))?;
    }
    Ok(CountTable::new(cells[0], cells[1], cells[2], cells[3]))
}

fn resolve_analyze_input(args: &AnalyzeArgs) -> Result<Input, String> {
    if let Some(raw) = &args.counts {
        return Ok(Input::Counts(parse_counts(raw)?));
    }
    if let Some(raw) = &args.probs {
        return Ok(Input::Probs(split_four(raw, "probabilities")?));
    }
    let path = args.csv.clone().expect("clap enforces one input source");
    let col_a = args
        .col_a
        .as_deref()
        .ok_or("--csv needs --col-a and --col-b")?;
    let col_b = args
        .col_b
        .as_deref()
        .ok_or("--csv needs --col-a and --col-b")?;
    if !args.delim.is_ascii() {
        return Err("--delim must be a single byte".to_string());
    }
    let spec = IngestSpec {
        path,
        column_a: ColumnSelector::parse(col_a),
        column_b: ColumnSelector::parse(col_b),
        has_header: args.header,
        delimiter: args.delim as u8,
    };
    Ok(Input::Counts(
        ingest::ingest(&spec).map_err(|e| e.to_string())?,
    ))
}

fn exact_table(input: &Input) -> Result<ProbTable<BigRational>, String> {
    match input {
        Input::Counts(counts) => ProbTable::from_counts(counts).map_err(|e| e.to_string()),
        Input::Probs(tokens) => {
            let mut cells = Vec::with_capacity(4);
            for token in tokens {
                cells.push(parse::parse_rational(token)?);
            }
            ProbTable::from_probs(
                cells[0].clone(),
                cells[1].clone(),
                cells[2].clone(),
                cells[3].clone(),
            )
            .map_err(|e| e.to_string())
        }
    }
}

fn float_table(input: &Input) -> Result<ProbTable<f64>, String> {
    match input {
        Input::Counts(counts) => {
            let total = counts.total();
            if total == 0 {
                return Err("count table is empty".to_string());
            }
            ProbTable::from_probs(
                counts.n_p as f64 / total as f64,
                counts.n_q as f64 / total as f64,
                counts.n_r as f64 / total as f64,
                counts.n_s as f64 / total as f64,
            )
            .map_err(|e| e.to_string())
        }
        Input::Probs(tokens) => {
            let mut cells = [0.0; 4];
            for (cell, token) in cells.iter_mut().zip(tokens) {
                *cell = parse::parse_f64(token)?;
            }
            ProbTable::from_probs(cells[0], cells[1], cells[2], cells[3]).map_err(|e| e.to_string())
        }
    }
}

fn analyze(args: AnalyzeArgs) -> Result<ExitCode, String> {
    let input = resolve_analyze_input(&args)?;
    let mode = args.mode.unwrap_or(match &input {
        Input::Probs(_) => Mode::Float,
        Input::Counts(_) => Mode::Exact,
    });
    let (report, table_cells): (MeasureReport, [ReportValue; 4]) = match mode {
        Mode::Exact => {
            let table = exact_table(&input)?;
            let cells = table.cells().map(|c| ReportValue::Rational(c.clone()));
            let report = full_report(&table, &SignPolicy::Exact).map_err(|e| e.to_string())?;
            (report, cells)
        }
        Mode::Float => {
            if !(args.zero_band >= 0.0 && args.zero_band.is_finite()) {
                return Err("--zero-band must be a nonnegative finite width".to_string());
            }
            let table = float_table(&input)?;
            let cells = table.cells().map(|c| ReportValue::Float(*c));
            let report = full_report(&table, &SignPolicy::float(args.zero_band))
                .map_err(|e| e.to_string())?;
            (report, cells)
        }
    };
    match args.format {
        Format::Json => {
            let doc = output::report_to_json(&report, &table_cells);
            println!(
                "{}",
                serde_json::to_string_pretty(&doc).expect("report serializes")
            );
        }
        Format::Csv => print!("{}", output::report_to_csv(&report)),
    }
    Ok(if report.verdict.is_consistent() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn verify(args: VerifyArgs) -> Result<ExitCode, String> {
    if args.nmax < 4 {
        return Err("--nmax must be at least 4 (the smallest strictly positive table)".into());
    }
    let summary = oracle::exhaustive_sign_check(args.nmax);
    match args.format {
        None => println!(
            "tables: {}, failures: {}",
            summary.tables_checked,
            summary.failures.len()
        ),
        Some(Format::Json) => println!(
            "{}",
            serde_json::to_string_pretty(&output::summary_to_json(&summary))
                .expect("summary serializes")
        ),
        Some(Format::Csv) => print!("{}", output::summary_to_csv(&summary)),
    }
    Ok(if summary.failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn family(args: FamilyArgs) -> Result<ExitCode, String> {
    if args.grid < 2 {
        return Err("--grid must be at least 2 to include both endpoints".into());
    }
    let rows = match args.mode {
        Mode::Exact => {
            let alpha = parse::parse_rational(&args.alpha)?;
            let beta = parse::parse_rational(&args.beta)?;
            let marginals = MarginalPair::new(alpha, beta).map_err(|e| e.to_string())?;
            family_rows(&CouplingFamily::new(marginals), args.grid)?
        }
        Mode::Float => {
            let alpha = parse::parse_f64(&args.alpha)?;
            let beta = parse::parse_f64(&args.beta)?;
            let marginals = MarginalPair::new(alpha, beta).map_err(|e| e.to_string())?;
            family_rows(&CouplingFamily::new(marginals), args.grid)?
        }
    };
    print!("{rows}");
    Ok(ExitCode::SUCCESS)
}

fn family_rows<S: Scalar>(family: &CouplingFamily<S>, points: usize) -> Result<String, String> {
    let render = |v: &S| ReportValue::from_scalar(v).render();
    let mut out = String::from("t,p,q,r,s,f,g,phi,theta,odds_ratio\n");
    for t in family.grid(points) {
        let member = family.table_from_t(&t).map_err(|e| e.to_string())?;
        let f = family.f_of_t(&t).map_err(|e| e.to_string())?;
        let g = family.g_of_t(&t).map_err(|e| e.to_string())?;
        let phi = match measures::phi(&member) {
            measures::PhiValue::Scalar(v) => render(&v),
            measures::PhiValue::Approx(v) => ReportValue::Float(v).render(),
        };
        let theta = measures::theta(&member);
        let odds_ratio = measures::odds_ratio(&member)
            .map(|or| ReportValue::from_ext(&or).render())
            .unwrap_or_else(|_| "indeterminate".to_string());
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{}\n",
            render(&t),
            render(member.p()),
            render(member.q()),
            render(member.r()),
            render(member.s()),
            render(&f),
            render(&g),
            phi,
            render(&theta),
            odds_ratio,
        ));
    }
    Ok(out)
}

fn simulate(args: SimulateArgs) -> Result<ExitCode, String> {
    if args.samples < 2 {
        return Err("--samples must be at least 2".into());
    }
    let input = if let Some(raw) = &args.counts {
        Input::Counts(parse_counts(raw)?)
    } else {
        Input::Probs(split_four(
            args.probs.as_ref().expect("clap enforces input"),
            "probabilities",
        )?)
    };
    let table = float_table(&input)?;
    let (n, seed) = (args.samples, args.seed);

    let covariance = montecarlo::estimate_covariance(&table, n, seed).map_err(|e| e.to_string())?;
    let (concordant, discordant) =
        montecarlo::estimate_concordance(&table, n, seed).map_err(|e| e.to_string())?;
    let mismatch = montecarlo::estimate_mismatch(&table, n, seed).map_err(|e| e.to_string())?;

    let (conc_closed, disc_closed) = measures::concordance(&table);
    let rows = [
        ("covariance", covariance, measures::delta(&table)),
        ("concordance", concordant, conc_closed),
        ("discordance", discordant, disc_closed),
        ("mismatch", mismatch, table.q() + table.r()),
    ];
    println!("n = {n}, seed = {seed}, acceptance band = 4 standard errors");
    let mut all_pass = true;
    for (name, estimate, closed) in rows {
        let band = 4.0 * estimate.std_error;
        let pass = (estimate.estimate - closed).abs() <= band;
        all_pass &= pass;
        println!(
            "{name:<12} estimate {est:.6} closed {closed:.6} band {band:.6} {status}",
            est = estimate.estimate,
            status = if pass { "PASS" } else { "FAIL" }
        );
    }
    Ok(if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}
