//! Command-line front end.
//!
//! Exit codes: 0 on success, 1 when a check ran and came out false (a pair
//! that is not a basis, a disagreeing experiment), 2 for unreadable input or
//! bad arguments, 3 for internal failures.

use std::fs;
use std::io::{self, Write};
use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand};
use multiarr_core::analysis::{frobenius_basis, trace_chain};
use multiarr_core::basis::{alg3, saito_product_constant};
use multiarr_core::derivation::saito_determinant;
use multiarr_core::oracle::dimension_table;
use multiarr_core::{BasisPair, ErrorKind, FieldSpec, Multiarrangement};
use thiserror::Error;

use crate::experiment::{self, Options};
use crate::format::{parse_arrangement, parse_derivation, parse_shifts, ParseError};

/// Largest `|μ|` the `oracle` command accepts.
pub const ORACLE_LIMIT: u32 = 16;

#[derive(Debug, Parser)]
#[command(name = "multiarr", version, about = "Bases of logarithmic derivation modules of planar multiarrangements")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a basis θ₁, θ₂ of D(A, μ) and its degrees.
    Basis { file: PathBuf },
    /// Print the exponents {d₁, d₂}.
    Exponents { file: PathBuf },
    /// Check a pair of derivations with Saito's criterion.
    Verify {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        theta1: String,
        #[arg(long, allow_hyphen_values = true)]
        theta2: String,
    },
    /// Graded dimensions by linear algebra, independent of the basis construction.
    Oracle { file: PathBuf },
    /// Branch and exponent difference at every step of the chain.
    Trace { file: PathBuf },
    /// Frobenius basis for all lines of F_p² with μ(H) = p^i + j_H.
    Frobenius {
        p: u64,
        i: u32,
        /// `ax ay j` triples separated by `;`, e.g. "1 0 1; 0 1 0".
        #[arg(long, default_value = "")]
        shifts: String,
    },
    /// Exponent difference 2 on x+y, x−y, x, y for every μ in [low, high]⁴.
    PropExperiment {
        /// Write the per-tuple CSV report here.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long, default_value_t = 20)]
        low: u32,
        #[arg(long, default_value_t = 30)]
        high: u32,
        /// Run alg3 from scratch on every tuple.
        #[arg(long)]
        direct: bool,
    },
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Parse { path: String, source: ParseError },
    #[error("{0}")]
    Expr(#[from] ParseError),
    #[error(transparent)]
    Core(#[from] multiarr_core::Error),
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Expr(_) | CliError::Usage(_) => 2,
            CliError::Core(e) if e.kind() == ErrorKind::Usage => 2,
            CliError::Core(_) => 3,
            CliError::Io(_) => 2,
            CliError::Csv(_) => 3,
        }
    }
}

fn load(path: &PathBuf) -> Result<Multiarrangement, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::Usage(format!("{}: {e}", path.display())))?;
    parse_arrangement(&text).map_err(|source| CliError::Parse { path: path.display().to_string(), source })
}

fn print_pair(out: &mut dyn Write, pair: &BasisPair) -> io::Result<()> {
    writeln!(out, "theta1: {}", pair.theta1())?;
    writeln!(out, "theta2: {}", pair.theta2())?;
    writeln!(out, "degrees: {} {}", pair.theta1().degree(), pair.theta2().degree())
}

/// Runs one command, writing to `out`, and returns the exit code.
pub fn run(cli: Cli, out: &mut dyn Write) -> Result<u8, CliError> {
    match cli.command {
        Command::Basis { file } => {
            let m = load(&file)?;
            let pair = alg3(&m)?;
            writeln!(out, "field: {}", m.spec())?;
            writeln!(out, "arrangement: {m}")?;
            print_pair(out, &pair)?;
            writeln!(out, "exponents: {}", pair.exponents())?;
            Ok(0)
        }
        Command::Exponents { file } => {
            let m = load(&file)?;
            writeln!(out, "exponents: {}", alg3(&m)?.exponents())?;
            Ok(0)
        }
        Command::Verify { file, theta1, theta2 } => {
            let m = load(&file)?;
            let t1 = parse_derivation(m.spec(), &theta1)?;
            let t2 = parse_derivation(m.spec(), &theta2)?;
            let member1 = t1.is_member(&m)?;
            let member2 = t2.is_member(&m)?;
            let sum = t1.degree() + t2.degree();
            let independent = !saito_determinant(&t1, &t2)?.is_zero();
            writeln!(out, "theta1 in D(A, mu): {member1}")?;
            writeln!(out, "theta2 in D(A, mu): {member2}")?;
            writeln!(out, "degree sum: {sum} (|mu| = {})", m.total())?;
            writeln!(out, "independent: {independent}")?;
            let ok = member1 && member2 && independent && sum == m.total() as usize;
            if ok {
                let pair = BasisPair::new(t1, t2)?;
                if let Some(c) = saito_product_constant(&pair, &m)? {
                    writeln!(out, "determinant: {c} * defining polynomial")?;
                }
            }
            writeln!(out, "basis: {ok}")?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::Oracle { file } => {
            let m = load(&file)?;
            if m.total() > ORACLE_LIMIT {
                return Err(CliError::Usage(format!(
                    "oracle is limited to |mu| <= {ORACLE_LIMIT}, got {}",
                    m.total()
                )));
            }
            let table = dimension_table(&m);
            writeln!(out, "degree dim")?;
            for (d, n) in table.dims().iter().enumerate() {
                writeln!(out, "{d} {n}")?;
            }
            let e = table.exponents(m.total() as usize)?;
            writeln!(out, "oracle exponents: {e}")?;
            writeln!(out, "free shape: {}", table.matches_free_shape(e))?;
            let chain = alg3(&m)?.exponents();
            writeln!(out, "alg3 exponents: {chain}")?;
            Ok(if chain == e && table.matches_free_shape(e) { 0 } else { 1 })
        }
        Command::Trace { file } => {
            let m = load(&file)?;
            let (pair, steps) = trace_chain(&m)?;
            writeln!(out, "step line mu branch diff")?;
            for (n, s) in steps.iter().enumerate() {
                writeln!(
                    out,
                    "{} {} {}->{} {} {}->{}",
                    n + 1,
                    s.form,
                    s.before,
                    s.before + 1,
                    s.branch,
                    s.diff_before,
                    s.diff_after
                )?;
            }
            print_pair(out, &pair)?;
            writeln!(out, "exponents: {}", pair.exponents())?;
            Ok(0)
        }
        Command::Frobenius { p, i, shifts } => {
            let spec = FieldSpec::prime(p)?;
            let shifts = parse_shifts(spec, &shifts)?;
            let (pair, m) = frobenius_basis(p, i, &shifts)?;
            writeln!(out, "field: {spec}")?;
            writeln!(out, "arrangement: {m}")?;
            print_pair(out, &pair)?;
            let ok = pair.verify(&m)?;
            writeln!(out, "verified: {ok}")?;
            Ok(if ok { 0 } else { 1 })
        }
        Command::PropExperiment { out: path, jobs, low, high, direct } => {
            if low > high {
                return Err(CliError::Usage(format!("empty range [{low}, {high}]")));
            }
            let start = Instant::now();
            let report = experiment::run(Options { low, high, jobs, direct })?;
            let bad: Vec<_> = report.disagreements().collect();
            if let Some(path) = path {
                experiment::write_csv(&report, fs::File::create(&path)?)?;
                writeln!(out, "report: {}", path.display())?;
            }
            for row in &bad {
                writeln!(
                    out,
                    "disagreement: mu = {:?}, exponents {}, predicted d = 2: {}",
                    row.mu, row.exponents, row.predicted_d2
                )?;
            }
            writeln!(out, "checked {} tuples satisfying 2*mu_i < |mu|", report.checked())?;
            writeln!(out, "elapsed: {:.1}s", start.elapsed().as_secs_f64())?;
            writeln!(out, "{} tuples, {} disagreements", report.enumerated(), bad.len())?;
            Ok(if bad.is_empty() { 0 } else { 1 })
        }
    }
}
