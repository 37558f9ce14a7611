//! Command-line front end: reproduces both published tables and exposes
//! every analysis as deterministic CSV, JSON or plain-table output.

use std::io::Write;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex64;
use serde_json::{json, Value};

use crate::analysis::{
    average_fidelity, broadcast_interval, compare_with_universal, dominance_range, fidelity,
    scan_interval, universal_interval_length, Interval, IntervalReport,
};
use crate::broadcast::{broadcast_report, BroadcastRoute, PureTwoQubit};
use crate::cloner::{gram_block_closed_form, gram_feasibility, make_machine, table1, GRAM_CLIP};
use crate::error::Error;
use crate::linalg::DensityMatrix;
use crate::separability::{SeparabilityVerdict, PT_DECISION_TOL};

/// JSON schema version stamped on every JSON payload.
pub const SCHEMA_VERSION: u32 = 1;

/// Environment variable that overrides the default decision tolerance
/// when no --tolerance flag is given.
pub const TOLERANCE_ENV: &str = "QBROADCAST_TOLERANCE";

/// Exit codes: 0 success, 1 usage error, 2 domain error.
pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DOMAIN: i32 = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

#[derive(Debug, Parser)]
#[command(
    name = "qbroadcast",
    about = "Cloning-machine distortion tables, entanglement-broadcasting intervals and separability analysis",
    disable_help_subcommand = true
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value = "table")]
    pub format: Format,

    /// Grid size for numeric scans.
    #[arg(long, global = true, default_value_t = 10001)]
    pub grid: usize,

    /// Decision tolerance on the minimum partial-transpose eigenvalue,
    /// used by the broadcast verdicts (default 1e-10; the
    /// QBROADCAST_TOLERANCE environment variable overrides the default
    /// when this flag is absent, and any override is echoed in the
    /// output metadata).
    #[arg(long, global = true)]
    pub tolerance: Option<f64>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Copy-quality table: distortion-minimizing machine parameter and
    /// single-copy distortion for nine inputs, next to the universal
    /// machine's constants.
    Table1,
    /// Broadcastability intervals for the nine tabulated machine
    /// parameters.
    Table2,
    /// Clone both qubits of a shared state and report separability of
    /// every output pair.
    Broadcast(BroadcastArgs),
    /// Closed-form inseparability/separability intervals at one machine
    /// parameter.
    Intervals(LambdaArg),
    /// Broadcasting fidelity (pointwise with --alpha2, plus the average).
    Fidelity(FidelityArgs),
    /// Numeric interval scan at one machine parameter.
    Scan(LambdaArg),
    /// Machine realizability: minimum Gram eigenvalue at one machine
    /// parameter.
    Feasibility(LambdaArg),
}

#[derive(Debug, Args)]
pub struct LambdaArg {
    /// Machine parameter, in (0, 0.5).
    #[arg(long)]
    pub lambda: f64,
}

#[derive(Debug, Args)]
pub struct BroadcastArgs {
    /// Four comma-separated real amplitudes a00,a11,a10,a01.
    #[arg(long, value_delimiter = ',')]
    pub state: Vec<f64>,

    /// Machine parameter, in (0, 0.5).
    #[arg(long)]
    pub lambda: f64,

    /// Compute the outputs by full-Hilbert-space simulation instead of the
    /// published closed forms (requires a realizable machine).
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct FidelityArgs {
    /// Machine parameter, in (0, 0.5).
    #[arg(long)]
    pub lambda: f64,

    /// Squared amplitude of |00>; when given, the pointwise fidelity is
    /// reported alongside the average.
    #[arg(long)]
    pub alpha2: Option<f64>,
}

/// Where the decision tolerance came from, echoed in output metadata.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ToleranceSource {
    Default,
    Flag,
    Env,
}

impl ToleranceSource {
    fn as_str(self) -> &'static str {
        match self {
            ToleranceSource::Default => "default",
            ToleranceSource::Flag => "flag",
            ToleranceSource::Env => "env",
        }
    }
}

struct Context {
    format: Format,
    grid: usize,
    tolerance: f64,
    tolerance_source: ToleranceSource,
}

impl Context {
    fn from_cli(cli: &Cli) -> Result<Self, String> {
        let (tolerance, tolerance_source) = match cli.tolerance {
            Some(t) => (t, ToleranceSource::Flag),
            None => match std::env::var(TOLERANCE_ENV) {
                Ok(raw) => {
                    let parsed = raw
                        .parse::<f64>()
                        .map_err(|_| format!("{TOLERANCE_ENV} must hold a number, got {raw:?}"))?;
                    (parsed, ToleranceSource::Env)
                }
                Err(_) => (PT_DECISION_TOL, ToleranceSource::Default),
            },
        };
        if !(tolerance.is_finite() && tolerance >= 0.0) {
            return Err(format!(
                "tolerance must be a finite non-negative number, got {tolerance}"
            ));
        }
        Ok(Self {
            format: cli.format,
            grid: cli.grid,
            tolerance,
            tolerance_source,
        })
    }

    /// Metadata comment emitted before CSV/table output whenever the
    /// tolerance was overridden.
    fn overridden_note(&self) -> Option<String> {
        if self.tolerance_source == ToleranceSource::Default {
            None
        } else {
            Some(format!(
                "# tolerance={} tolerance_source={}",
                fmt_g(self.tolerance),
                self.tolerance_source.as_str()
            ))
        }
    }

    fn json_meta(&self, command: &str) -> Value {
        json!({
            "schema_version": SCHEMA_VERSION,
            "command": command,
            "tolerance": self.tolerance,
            "tolerance_source": self.tolerance_source.as_str(),
        })
    }
}

/// Parses `args` (with the binary name first), runs the command, writes
/// output to `out`, and returns the process exit code.
pub fn run<W: Write>(args: &[String], out: &mut W) -> i32 {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            // clap renders its own usage text; map every parse failure to
            // the usage exit code (this includes --help/--version).
            let _ = write!(out, "{e}");
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let ctx = match Context::from_cli(&cli) {
        Ok(ctx) => ctx,
        Err(msg) => {
            let _ = writeln!(out, "error: {msg}");
            return EXIT_USAGE;
        }
    };
    match dispatch(&cli.command, &ctx, out) {
        Ok(()) => EXIT_OK,
        Err(CommandError::Domain(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            EXIT_DOMAIN
        }
        Err(CommandError::Usage(msg)) => {
            let _ = writeln!(out, "error: {msg}");
            EXIT_USAGE
        }
    }
}

enum CommandError {
    Usage(String),
    Domain(String),
}

fn domain(e: Error) -> CommandError {
    CommandError::Domain(e.to_string())
}

fn check_lambda(lambda: f64) -> Result<(), CommandError> {
    make_machine(lambda).map(|_| ()).map_err(domain)
}

fn dispatch<W: Write>(command: &Command, ctx: &Context, out: &mut W) -> Result<(), CommandError> {
    match command {
        Command::Table1 => cmd_table1(ctx, out),
        Command::Table2 => cmd_table2(ctx, out),
        Command::Broadcast(args) => cmd_broadcast(args, ctx, out),
        Command::Intervals(args) => cmd_intervals(args.lambda, ctx, out),
        Command::Fidelity(args) => cmd_fidelity(args, ctx, out),
        Command::Scan(args) => cmd_scan(args.lambda, ctx, out),
        Command::Feasibility(args) => cmd_feasibility(args.lambda, ctx, out),
    }
}

// ---------------------------------------------------------------------
// number formatting

/// Formats with 6 significant digits, '%g'-style: plain decimal notation
/// in a moderate exponent range, scientific outside it, trailing zeros
/// trimmed. '.' is always the decimal separator.
pub fn fmt_g(x: f64) -> String {
    fmt_sig(x, 6)
}

pub fn fmt_sig(x: f64, sig: usize) -> String {
    if x == 0.0 {
        return "0".to_string();
    }
    let formatted = format!("{:.*e}", sig - 1, x);
    let (mantissa, exponent) = formatted
        .split_once('e')
        .expect("scientific format always contains an exponent");
    let exp: i32 = exponent.parse().expect("exponent is an integer");
    if exp >= -4 && exp < sig as i32 {
        let decimals = (sig as i32 - 1 - exp).max(0) as usize;
        let plain = format!("{:.*}", decimals, x);
        trim_zeros(&plain)
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if !s.contains('.') {
        return s.to_string();
    }
    let trimmed = s.trim_end_matches('0').trim_end_matches('.');
    trimmed.to_string()
}

/// Rounds half-up to five decimals; matches the published tables' print
/// precision.
pub fn round5(x: f64) -> f64 {
    (x * 1e5).round() / 1e5
}

fn fmt_round5(x: f64) -> String {
    format!("{:.5}", round5(x))
}

fn interval_text(i: &Interval) -> String {
    match i.bounds() {
        Some((lo, hi)) => format!("({}, {})", fmt_round5(lo), fmt_round5(hi)),
        None => "(empty)".to_string(),
    }
}

fn interval_json(i: &Interval) -> Value {
    match i.bounds() {
        Some((lo, hi)) => json!({ "empty": false, "lo": lo, "hi": hi }),
        None => json!({ "empty": true, "lo": null, "hi": null }),
    }
}

fn interval_csv(i: &Interval) -> (String, String, String) {
    match i.bounds() {
        Some((lo, hi)) => (fmt_g(lo), fmt_g(hi), "false".to_string()),
        None => (String::new(), String::new(), "true".to_string()),
    }
}

fn matrix_json(rho: &DensityMatrix) -> Value {
    let entries: Vec<Value> = rho
        .matrix()
        .entries()
        .iter()
        .map(|e| json!([e.re, e.im]))
        .collect();
    json!({
        "dim": rho.dim(),
        "entries_row_major": entries,
        "trace_deviation": rho.trace_deviation(),
        "min_eigenvalue": rho.min_eigenvalue(),
    })
}

fn verdict_json(v: &SeparabilityVerdict) -> Value {
    json!({
        "verdict": v.verdict.as_str(),
        "min_pt_eigenvalue": v.min_pt_eigenvalue,
        "w2": v.w2,
        "w3": v.w3,
        "w4": v.w4,
        "w3_direct": v.w3_direct,
        "min_input_eigenvalue": v.min_input_eigenvalue,
        "input_valid": v.input_valid,
        "boundary": v.boundary,
    })
}

fn emit_preamble<W: Write>(ctx: &Context, out: &mut W) {
    if let Some(note) = ctx.overridden_note() {
        let _ = writeln!(out, "{note}");
    }
}

// ---------------------------------------------------------------------
// commands

fn cmd_table1<W: Write>(ctx: &Context, out: &mut W) -> Result<(), CommandError> {
    let rows = table1();
    match ctx.format {
        Format::Json => {
            let data: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "x": r.x,
                        "lambda_alpha_reading": r.lambda_alpha_reading,
                        "lambda_alpha2_reading": r.lambda_alpha2_reading,
                        "lambda_rounded": r.lambda_rounded,
                        "d_a": r.d_a_of_rounded,
                        "d_a_exact": r.d_a_exact,
                        "readings_divergence": r.readings_divergence,
                        "universal_lambda": r.universal_lambda,
                        "universal_d_a": r.universal_d_a,
                    })
                })
                .collect();
            let mut payload = ctx.json_meta("table1");
            payload["rows"] = Value::Array(data);
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Format::Csv => {
            emit_preamble(ctx, out);
            let _ = writeln!(
                out,
                "x,lambda_alpha_reading,lambda_alpha2_reading,lambda_rounded,d_a,d_a_exact,universal_lambda,universal_d_a"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{},{},{},{},{},{},{},{}",
                    fmt_g(r.x),
                    fmt_g(r.lambda_alpha_reading),
                    fmt_g(r.lambda_alpha2_reading),
                    fmt_g(r.lambda_rounded),
                    fmt_g(r.d_a_of_rounded),
                    fmt_g(r.d_a_exact),
                    fmt_g(r.universal_lambda),
                    fmt_g(r.universal_d_a),
                );
            }
        }
        Format::Table => {
            emit_preamble(ctx, out);
            let _ = writeln!(
                out,
                "{:>5} {:>12} {:>12} {:>10} {:>10} {:>12} {:>10}",
                "x", "lambda(x=a)", "lambda(x=a2)", "lambda", "D_a", "universal", "univ D_a"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>5.1} {:>12.6} {:>12.6} {:>10.3} {:>10.6} {:>12.3} {:>10.6}",
                    r.x,
                    r.lambda_alpha_reading,
                    r.lambda_alpha2_reading,
                    r.lambda_rounded,
                    r.d_a_of_rounded,
                    r.universal_lambda,
                    r.universal_d_a,
                );
            }
            let _ = writeln!(
                out,
                "note: only the x-as-amplitude reading reproduces the published lambda column; D_a is 2*lambda^2 of the rounded lambda"
            );
        }
    }
    Ok(())
}

fn interval_report_json(r: &IntervalReport) -> Value {
    json!({
        "lambda": r.lambda,
        "nonlocal_inseparable": interval_json(&r.nonlocal_inseparable),
        "local_separable": interval_json(&r.local_separable),
        "broadcastable": interval_json(&r.broadcastable),
        "feasible": r.feasible,
    })
}

fn write_interval_csv_row<W: Write>(out: &mut W, r: &IntervalReport) {
    write_interval_csv_row_with_tail(out, r, "");
}

fn write_interval_csv_row_with_tail<W: Write>(out: &mut W, r: &IntervalReport, tail: &str) {
    let (i1lo, i1hi, i1e) = interval_csv(&r.nonlocal_inseparable);
    let (i2lo, i2hi, i2e) = interval_csv(&r.local_separable);
    let (clo, chi, ce) = interval_csv(&r.broadcastable);
    let mut row = format!(
        "{},{},{},{},{},{},{},{},{},{},{}",
        fmt_g(r.lambda),
        i1lo,
        i1hi,
        i1e,
        i2lo,
        i2hi,
        i2e,
        clo,
        chi,
        ce,
        r.feasible
    );
    if !tail.is_empty() {
        row.push(',');
        row.push_str(tail);
    }
    let _ = writeln!(out, "{row}");
}

const INTERVAL_CSV_HEADER: &str =
    "lambda,i1_lo,i1_hi,i1_empty,i2_lo,i2_hi,i2_empty,common_lo,common_hi,common_empty,feasible";

fn cmd_table2<W: Write>(ctx: &Context, out: &mut W) -> Result<(), CommandError> {
    let rows = crate::analysis::table2();
    match ctx.format {
        Format::Json => {
            let data: Vec<Value> = rows.iter().map(interval_report_json).collect();
            let mut payload = ctx.json_meta("table2");
            payload["rows"] = Value::Array(data);
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Format::Csv => {
            emit_preamble(ctx, out);
            let _ = writeln!(out, "{INTERVAL_CSV_HEADER}");
            for r in &rows {
                write_interval_csv_row(out, r);
            }
        }
        Format::Table => {
            emit_preamble(ctx, out);
            let _ = writeln!(
                out,
                "{:>7} {:>22} {:>22} {:>22} {:>9}",
                "lambda", "I1 (nonlocal insep.)", "I2 (local sep.)", "common", "feasible"
            );
            for r in &rows {
                let _ = writeln!(
                    out,
                    "{:>7.3} {:>22} {:>22} {:>22} {:>9}",
                    r.lambda,
                    interval_text(&r.nonlocal_inseparable),
                    interval_text(&r.local_separable),
                    interval_text(&r.broadcastable),
                    r.feasible,
                );
            }
        }
    }
    Ok(())
}

/// Accepts a user-supplied state that is normalized to within 1e-6 and
/// renormalizes it exactly before use.
fn parse_state(raw: &[f64]) -> Result<PureTwoQubit, CommandError> {
    if raw.len() != 4 {
        return Err(CommandError::Usage(format!(
            "--state needs exactly 4 amplitudes, got {}",
            raw.len()
        )));
    }
    let norm_sq: f64 = raw.iter().map(|a| a * a).sum();
    if (norm_sq - 1.0).abs() > 1e-6 {
        return Err(CommandError::Domain(
            Error::NotNormalized {
                deviation: (norm_sq - 1.0).abs(),
            }
            .to_string(),
        ));
    }
    let n = norm_sq.sqrt();
    PureTwoQubit::from_reals(raw[0] / n, raw[1] / n, raw[2] / n, raw[3] / n).map_err(domain)
}

fn cmd_broadcast<W: Write>(
    args: &BroadcastArgs,
    ctx: &Context,
    out: &mut W,
) -> Result<(), CommandError> {
    let chi = parse_state(&args.state)?;
    let p = make_machine(args.lambda).map_err(domain)?;
    let route = if args.oracle {
        BroadcastRoute::Oracle
    } else {
        BroadcastRoute::ClosedForm
    };
    let report = broadcast_report(&chi, p, route, ctx.tolerance).map_err(domain)?;

    let named = [
        ("nonlocal", &report.rho_nonlocal, &report.nonlocal_verdict),
        ("local_a", &report.rho_local_a, &report.local_a_verdict),
        ("local_b", &report.rho_local_b, &report.local_b_verdict),
    ];
    match ctx.format {
        Format::Json => {
            let mut payload = ctx.json_meta("broadcast");
            payload["lambda"] = json!(args.lambda);
            payload["oracle"] = json!(args.oracle);
            payload["state"] = json!([chi.alpha1(), chi.beta1().re, chi.gamma1(), chi.delta1()]);
            payload["broadcast_success"] = json!(report.broadcast_success);
            for (name, rho, verdict) in &named {
                payload[*name] = json!({
                    "matrix": matrix_json(rho),
                    "separability": verdict_json(verdict),
                });
            }
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Format::Csv => {
            emit_preamble(ctx, out);
            let mut header = String::from(
                "matrix,verdict,min_pt_eigenvalue,w2,w3,w4,input_valid,trace_deviation,broadcast_success",
            );
            for i in 0..4 {
                for j in 0..4 {
                    header.push_str(&format!(",e{i}{j}_re,e{i}{j}_im"));
                }
            }
            let _ = writeln!(out, "{header}");
            for (name, rho, verdict) in &named {
                let mut row = format!(
                    "{},{},{},{},{},{},{},{},{}",
                    name,
                    verdict.verdict.as_str(),
                    fmt_g(verdict.min_pt_eigenvalue),
                    fmt_g(verdict.w2),
                    fmt_g(verdict.w3),
                    fmt_g(verdict.w4),
                    verdict.input_valid,
                    fmt_g(rho.trace_deviation()),
                    report.broadcast_success,
                );
                for e in rho.matrix().entries() {
                    row.push_str(&format!(",{},{}", fmt_g(e.re), fmt_g(e.im)));
                }
                let _ = writeln!(out, "{row}");
            }
        }
        Format::Table => {
            emit_preamble(ctx, out);
            let _ = writeln!(out, "broadcast_success: {}", report.broadcast_success);
            for (name, rho, verdict) in &named {
                let _ = writeln!(
                    out,
                    "\n{name}: {} (min PT eigenvalue {}, input_valid {})",
                    verdict.verdict.as_str(),
                    fmt_g(verdict.min_pt_eigenvalue),
                    verdict.input_valid,
                );
                for i in 0..rho.dim() {
                    let row: Vec<String> = (0..rho.dim())
                        .map(|j| format_complex(rho.entry(i, j)))
                        .collect();
                    let _ = writeln!(out, "  [{}]", row.join(", "));
                }
            }
        }
    }
    Ok(())
}

fn format_complex(z: Complex64) -> String {
    if z.im == 0.0 {
        format!("{:>9.6}", z.re)
    } else {
        format!("{:.6}{:+.6}i", z.re, z.im)
    }
}

fn cmd_intervals<W: Write>(lambda: f64, ctx: &Context, out: &mut W) -> Result<(), CommandError> {
    check_lambda(lambda)?;
    let report = broadcast_interval(lambda);
    let comparison = compare_with_universal(lambda);
    match ctx.format {
        Format::Json => {
            let mut payload = ctx.json_meta("intervals");
            payload["report"] = interval_report_json(&report);
            payload["vs_universal"] = json!(comparison.as_str());
            payload["universal_length"] = json!(universal_interval_length());
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Format::Csv => {
            emit_preamble(ctx, out);
            let _ = writeln!(out, "{INTERVAL_CSV_HEADER},vs_universal");
            write_interval_csv_row_with_tail(out, &report, comparison.as_str());
        }
        Format::Table => {
            emit_preamble(ctx, out);
            let _ = writeln!(out, "lambda: {}", fmt_g(lambda));
            let _ = writeln!(
                out,
                "I1 nonlocal inseparable: {}",
                interval_text(&report.nonlocal_inseparable)
            );
            let _ = writeln!(
                out,
                "I2 local separable:      {}",
                interval_text(&report.local_separable)
            );
            let _ = writeln!(
                out,
                "common (broadcastable):  {}",
                interval_text(&report.broadcastable)
            );
            let _ = writeln!(out, "feasible: {}", report.feasible);
            let _ = writeln!(
                out,
                "I1 length vs universal baseline ({}): {}",
                fmt_g(universal_interval_length()),
                comparison.as_str()
            );
        }
    }
    Ok(())
}

fn cmd_fidelity<W: Write>(
    args: &FidelityArgs,
    ctx: &Context,
    out: &mut W,
) -> Result<(), CommandError> {
    check_lambda(args.lambda)?;
    if let Some(a2) = args.alpha2 {
        if !(0.0..=1.0).contains(&a2) {
            return Err(CommandError::Domain(format!(
                "alpha2 must lie in [0, 1], got {a2}"
            )));
        }
    }
    let average = average_fidelity(args.lambda);
    let pointwise = args.alpha2.map(|a2| fidelity(a2, args.lambda));
    let dom = dominance_range();
    let beats_universal = average > dom.universal_average;
    match ctx.format {
        Format::Json => {
            let mut payload = ctx.json_meta("fidelity");
            payload["lambda"] = json!(args.lambda);
            payload["average_fidelity"] = json!(average);
            if let (Some(a2), Some(f)) = (args.alpha2, pointwise) {
                payload["alpha2"] = json!(a2);
                payload["fidelity"] = json!(f);
            }
            payload["universal_average"] = json!(dom.universal_average);
            payload["beats_universal_average"] = json!(beats_universal);
            payload["dominance_lambda_range"] = interval_json(&dom.accepted);
            payload["dominance_rejected_root"] = json!(dom.rejected_root);
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Format::Csv => {
            emit_preamble(ctx, out);
            match (args.alpha2, pointwise) {
                (Some(a2), Some(f)) => {
                    let _ = writeln!(
                        out,
                        "lambda,alpha2,fidelity,average_fidelity,universal_average,beats_universal_average"
                    );
                    let _ = writeln!(
                        out,
                        "{},{},{},{},{},{}",
                        fmt_g(args.lambda),
                        fmt_g(a2),
                        fmt_g(f),
                        fmt_g(average),
                        fmt_g(dom.universal_average),
                        beats_universal
                    );
                }
                _ => {
                    let _ = writeln!(
                        out,
                        "lambda,average_fidelity,universal_average,beats_universal_average"
                    );
                    let _ = writeln!(
                        out,
                        "{},{},{},{}",
                        fmt_g(args.lambda),
                        fmt_g(average),
                        fmt_g(dom.universal_average),
                        beats_universal
                    );
                }
            }
        }
        Format::Table => {
            emit_preamble(ctx, out);
            let _ = writeln!(out, "lambda: {}", fmt_g(args.lambda));
            if let (Some(a2), Some(f)) = (args.alpha2, pointwise) {
                let _ = writeln!(out, "fidelity at alpha2 = {}: {:.6}", fmt_g(a2), f);
            }
            let _ = writeln!(out, "average fidelity: {:.6}", average);
            let _ = writeln!(
                out,
                "universal average: {:.6} (beaten for lambda in {}; root {} rejected as out of range)",
                dom.universal_average,
                interval_text(&dom.accepted),
                fmt_g(dom.rejected_root),
            );
        }
    }
    Ok(())
}

fn cmd_scan<W: Write>(lambda: f64, ctx: &Context, out: &mut W) -> Result<(), CommandError> {
    check_lambda(lambda)?;
    if ctx.grid < 101 {
        return Err(CommandError::Usage(format!(
            "--grid must be at least 101, got {}",
            ctx.grid
        )));
    }
    let scanned = scan_interval(lambda, ctx.grid);
    match ctx.format {
        Format::Json => {
            let mut payload = ctx.json_meta("scan");
            payload["lambda"] = json!(lambda);
            payload["grid"] = json!(ctx.grid);
            payload["broadcastable"] = interval_json(&scanned);
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Format::Csv => {
            emit_preamble(ctx, out);
            let (lo, hi, empty) = interval_csv(&scanned);
            let _ = writeln!(out, "lambda,grid,lo,hi,empty");
            let _ = writeln!(
                out,
                "{},{},{},{},{}",
                fmt_g(lambda),
                ctx.grid,
                lo,
                hi,
                empty
            );
        }
        Format::Table => {
            emit_preamble(ctx, out);
            let _ = writeln!(
                out,
                "scanned broadcastable interval at lambda = {} (grid {}): {}",
                fmt_g(lambda),
                ctx.grid,
                interval_text(&scanned)
            );
        }
    }
    Ok(())
}

fn cmd_feasibility<W: Write>(lambda: f64, ctx: &Context, out: &mut W) -> Result<(), CommandError> {
    let p = make_machine(lambda).map_err(domain)?;
    let min_eig = gram_feasibility(p);
    let feasible = min_eig >= GRAM_CLIP;
    let closed_form_block = gram_block_closed_form(lambda);
    match ctx.format {
        Format::Json => {
            let mut payload = ctx.json_meta("feasibility");
            payload["lambda"] = json!(lambda);
            payload["min_gram_eigenvalue"] = json!(min_eig);
            payload["block_determinant"] = json!(closed_form_block);
            payload["feasible"] = json!(feasible);
            let _ = writeln!(out, "{}", serde_json::to_string_pretty(&payload).unwrap());
        }
        Format::Csv => {
            emit_preamble(ctx, out);
            let _ = writeln!(out, "lambda,min_gram_eigenvalue,block_determinant,feasible");
            let _ = writeln!(
                out,
                "{},{},{},{}",
                fmt_g(lambda),
                fmt_g(min_eig),
                fmt_g(closed_form_block),
                feasible
            );
        }
        Format::Table => {
            emit_preamble(ctx, out);
            let _ = writeln!(out, "lambda: {}", fmt_g(lambda));
            let _ = writeln!(out, "minimum Gram eigenvalue: {}", fmt_g(min_eig));
            let _ = writeln!(out, "2x2 block determinant:   {}", fmt_g(closed_form_block));
            let _ = writeln!(out, "feasible: {feasible}");
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn significant_digit_formatting() {
        assert_eq!(fmt_g(0.0288), "0.0288");
        assert_eq!(fmt_g(13.0 / 36.0), "0.361111");
        assert_eq!(fmt_g(1.0 / 6.0), "0.166667");
        assert_eq!(fmt_g(0.0), "0");
        assert_eq!(fmt_g(-0.25), "-0.25");
        assert_eq!(fmt_g(2.0 / 36.0), "0.0555556");
        assert_eq!(fmt_g(1e-7), "1e-7");
        assert_eq!(fmt_g(123456.0), "123456");
        assert_eq!(fmt_g(1234567.0), "1.23457e6");
    }

    #[test]
    fn round5_is_half_up() {
        assert_eq!(round5(0.016284), 0.01628);
        assert_eq!(round5(0.1096876), 0.10969);
        assert_eq!(round5(0.9999486), 0.99995);
    }
}
