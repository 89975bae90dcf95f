//! Command-line front end.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;

use crate::classify::Verdict;
use crate::error::{Error, Result};
use crate::fields::{FieldCtx, FieldOptions, FieldSpec};
use crate::hermitian::{EnumOptions, HermMatrix, DEFAULT_CAPACITY};
use crate::io::{fibers_csv, load_matrix, range_csv};
use crate::ranges::{compute_range, fiber_table, FiberCount, RangeKind, RangeSet};
use crate::verify::{full_field_checks, run_verify, subfield_checks, CheckRecord, Scope, Tally, VerifyConfig};

pub const EXIT_OK: i32 = 0;
pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_CAPACITY: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "nullrange", version, about = "Hermitian numerical ranges over finite fields")]
pub struct Cli {
    #[command(flatten)]
    pub common: Common,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Common {
    /// Characteristic of the base field.
    #[arg(long, global = true)]
    pub p: Option<u32>,
    /// Degree of F_q over F_p.
    #[arg(long, global = true)]
    pub m: Option<u32>,
    /// Largest number of vectors enumerated exhaustively.
    #[arg(long, global = true, default_value_t = DEFAULT_CAPACITY)]
    pub capacity: u128,
    /// Random draws used when a space exceeds the capacity.
    #[arg(long, global = true)]
    pub sample_budget: Option<u64>,
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Compute one range set of a matrix.
    Range {
        /// JSON file or inline "a,b;c,d" entry encodings.
        #[arg(long)]
        matrix: String,
        #[arg(long, default_value = "num0_prime")]
        kind: String,
        /// Encoding of k; ignored by the null-range kinds.
        #[arg(long)]
        k: Option<u64>,
    },
    /// Run a named verification sweep.
    Verify {
        #[arg(long)]
        scope: String,
        #[arg(long)]
        n: Option<usize>,
        /// Number of random instances.
        #[arg(long)]
        count: Option<usize>,
    },
    /// Fibre table of u ↦ ⟨u, Mu⟩ on the isotropic vectors of F_q^n.
    Fibers {
        #[arg(long)]
        matrix: String,
    },
    /// Check every applicable closed-form prediction for one matrix.
    Classify {
        #[arg(long)]
        matrix: String,
    },
}

/// Rendered output plus the process exit code.
#[derive(Debug)]
pub struct Outcome {
    pub body: String,
    pub code: i32,
}

pub fn exit_code(err: &Error) -> i32 {
    match err {
        Error::CapacityExceeded { .. } => EXIT_CAPACITY,
        _ => EXIT_INPUT,
    }
}

#[derive(Serialize)]
struct FieldHeader {
    p: u32,
    m: u32,
    q: u32,
}

impl FieldHeader {
    fn of(ctx: &FieldCtx) -> Self {
        FieldHeader { p: ctx.p(), m: ctx.m(), q: ctx.q() }
    }
}

#[derive(Serialize)]
struct RangeOutput<'a> {
    field: FieldHeader,
    n: usize,
    #[serde(flatten)]
    range: &'a RangeSet,
}

#[derive(Serialize)]
struct FibersOutput<'a> {
    field: FieldHeader,
    n: usize,
    total: u64,
    fibers: &'a [FiberCount],
}

#[derive(Serialize)]
struct ClassifyOutput<'a> {
    field: FieldHeader,
    matrix: Vec<Vec<u32>>,
    checks: &'a [CheckRecord],
    summary: BTreeMap<String, Tally>,
    failures: u64,
}

impl Common {
    fn enum_options(&self) -> EnumOptions {
        EnumOptions { capacity: self.capacity, sample_budget: self.sample_budget, seed: self.seed }
    }

    fn flag_field(&self) -> Option<Result<FieldSpec>> {
        self.p.map(|p| FieldSpec::canonical(p, self.m.unwrap_or(1)))
    }

    fn field(&self) -> Result<FieldCtx> {
        let spec = self.flag_field().ok_or_else(|| Error::Input("--p is required".into()))??;
        FieldCtx::from_spec(&spec, FieldOptions::default())
    }

    /// Loads a matrix; the field comes from the flags when given, else from
    /// the matrix file.
    fn matrix(&self, arg: &str) -> Result<(FieldCtx, HermMatrix)> {
        let file = load_matrix(arg)?;
        let spec = match (self.flag_field(), &file.field) {
            (Some(spec), _) => spec?,
            (None, Some(f)) => f.spec()?,
            (None, None) => return Err(Error::Input("--p is required when the matrix carries no field".into())),
        };
        let ctx = FieldCtx::from_spec(&spec, FieldOptions::default())?;
        let m = file.to_matrix(&ctx)?;
        Ok((ctx, m))
    }
}

fn json<T: Serialize>(value: &T) -> Result<String> {
    let mut s = serde_json::to_string_pretty(value)?;
    s.push('\n');
    Ok(s)
}

fn tally(checks: &[CheckRecord]) -> (BTreeMap<String, Tally>, u64) {
    let mut summary: BTreeMap<String, Tally> = BTreeMap::new();
    let mut failures = 0;
    for c in checks {
        let t = summary.entry(c.citation.clone()).or_default();
        match c.verdict {
            Verdict::Pass => t.pass += 1,
            Verdict::Fail => {
                t.fail += 1;
                failures += 1;
            }
            Verdict::Inapplicable => t.inapplicable += 1,
        }
    }
    (summary, failures)
}

fn summary_csv(summary: &BTreeMap<String, Tally>) -> String {
    let mut out = String::from("citation,pass,fail,inapplicable\n");
    for (c, t) in summary {
        let _ = writeln!(out, "{},{},{},{}", c, t.pass, t.fail, t.inapplicable);
    }
    out
}

pub fn execute(cli: &Cli) -> Result<Outcome> {
    let common = &cli.common;
    let opts = common.enum_options();
    let (body, code) = match &cli.command {
        Command::Range { matrix, kind, k } => {
            let (ctx, m) = common.matrix(matrix)?;
            let kind = RangeKind::parse(kind).ok_or_else(|| Error::Input(format!("unknown range kind {kind:?}")))?;
            let k = match (kind.is_punctured(), k) {
                (true, _) => ctx.elem(0)?,
                (false, Some(k)) => ctx.elem(*k)?,
                (false, None) => return Err(Error::Input("--k is required for this kind".into())),
            };
            let r = compute_range(&ctx, &m, kind, k, &opts)?;
            let body = match common.format {
                Format::Json => json(&RangeOutput { field: FieldHeader::of(&ctx), n: m.n(), range: &r })?,
                Format::Csv => range_csv(&ctx, &r),
            };
            (body, EXIT_OK)
        }
        Command::Verify { scope, n, count } => {
            let ctx = common.field()?;
            let scope = Scope::parse(scope).ok_or_else(|| Error::Input(format!("unknown scope {scope:?}")))?;
            let cfg = VerifyConfig { scope, n: *n, count: *count, seed: common.seed, opts };
            let report = run_verify(&ctx, &cfg)?;
            let body = match common.format {
                Format::Json => json(&report)?,
                Format::Csv => summary_csv(&report.summary),
            };
            (body, if report.failures == 0 { EXIT_OK } else { EXIT_MISMATCH })
        }
        Command::Fibers { matrix } => {
            let (ctx, m) = common.matrix(matrix)?;
            let rows = fiber_table(&ctx, &m, &opts)?;
            let body = match common.format {
                Format::Json => {
                    let total = rows.iter().map(|f| f.count).sum();
                    json(&FibersOutput { field: FieldHeader::of(&ctx), n: m.n(), total, fibers: &rows })?
                }
                Format::Csv => fibers_csv(&rows),
            };
            (body, EXIT_OK)
        }
        Command::Classify { matrix } => {
            let (ctx, m) = common.matrix(matrix)?;
            let mut checks = full_field_checks(&ctx, &m, &opts)?;
            if m.has_subfield_coeffs(&ctx) {
                checks.extend(subfield_checks(&ctx, &m, &opts)?);
            }
            let (summary, failures) = tally(&checks);
            let body = match common.format {
                Format::Json => json(&ClassifyOutput {
                    field: FieldHeader::of(&ctx),
                    matrix: m.encoded_rows(),
                    checks: &checks,
                    summary: summary.clone(),
                    failures,
                })?,
                Format::Csv => summary_csv(&summary),
            };
            (body, if failures == 0 { EXIT_OK } else { EXIT_MISMATCH })
        }
    };
    if let Some(path) = &common.out {
        std::fs::write(path, &body)?;
        Ok(Outcome { body: String::new(), code })
    } else {
        Ok(Outcome { body, code })
    }
}

/// Parses arguments, runs, prints, and returns the exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    match execute(&cli) {
        Ok(out) => {
            print!("{}", out.body);
            out.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code(&e)
        }
    }
}
