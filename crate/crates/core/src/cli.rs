//! Command-line front end.
//!
//! ```text
//! locc-cert en --params A B C D [--eta --triple i,j,k] [--renorm]
//! locc-cert certify four --params A B C D [--renorm]
//! locc-cert certify three --triple i,j,k --params A B C D [--renorm]
//! locc-cert scan --grid N --triple i,j,k [--out FILE] [--format csv|json]
//! locc-cert validate --grid N [--triple i,j,k]
//! ```
//!
//! Amplitudes are given as `re` or `re:im`. Results go to stdout as JSON (or
//! CSV for `scan`), diagnostics to stderr. Exit status is 0 on success, 1 when
//! `validate` finds a violation and 2 on any error.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, Write};
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::certifier::{certify_four, certify_three};
use crate::measures::log_negativity;
use crate::qstate::{build_eta, build_rho, Cut, FamilyParams, Triple};
use crate::scanner::{cross_validate, sweep_grid, ScanRecord};
use crate::C64;

/// Normalization slack accepted without `--renorm`.
pub const STRICT_NORM_TOL: f64 = 1e-9;

/// Normalization slack accepted with `--renorm`.
pub const RENORM_TOL: f64 = 1e-6;

pub const CSV_HEADER: [&str; 17] = [
    "theta1",
    "theta2",
    "a",
    "b",
    "c",
    "d",
    "x",
    "y",
    "en_rho_numeric",
    "en_rho_closed",
    "en_eta_numeric",
    "en_eta_closed",
    "cond3",
    "cond4",
    "verdict_three",
    "verdict_four",
    "case_label",
];

#[derive(Debug, Parser)]
#[command(name = "locc-cert", version, about = "Logarithmic-negativity certificates of LOCC indistinguishability")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Logarithmic negativity across AC:BD of the four-state (or, with --eta, three-state) mixture.
    En {
        #[command(flatten)]
        params: ParamArgs,
        /// Use the three-state mixture selected by --triple.
        #[arg(long, requires = "triple")]
        eta: bool,
        #[arg(long, value_parser = parse_triple)]
        triple: Option<Triple>,
    },
    /// Certify four or three states.
    Certify {
        #[command(subcommand)]
        which: CertifyTarget,
    },
    /// Sweep the canonical (theta1, theta2) grid and write one record per point.
    Scan {
        #[arg(long)]
        grid: usize,
        #[arg(long, value_parser = parse_triple, default_value = "1,2,3")]
        triple: Triple,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Format::Csv)]
        format: Format,
    },
    /// Sweep the grid and check closed forms, soundness and region agreement.
    Validate {
        #[arg(long)]
        grid: usize,
        #[arg(long, value_parser = parse_triple, default_value = "1,2,3")]
        triple: Triple,
    },
}

#[derive(Debug, Subcommand)]
enum CertifyTarget {
    Four {
        #[command(flatten)]
        params: ParamArgs,
    },
    Three {
        #[arg(long, value_parser = parse_triple)]
        triple: Triple,
        #[command(flatten)]
        params: ParamArgs,
    },
}

#[derive(Debug, Args)]
struct ParamArgs {
    /// Amplitudes a b c d, each `re` or `re:im`.
    #[arg(long, num_args = 4, required = true, allow_hyphen_values = true,
          value_names = ["A", "B", "C", "D"], value_parser = parse_complex)]
    params: Vec<C64>,
    /// Rescale inputs whose normalization is off by at most 1e-6.
    #[arg(long)]
    renorm: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
}

/// Parses `re` or `re:im`.
pub fn parse_complex(s: &str) -> Result<C64, String> {
    let num = |t: &str| {
        t.trim()
            .parse::<f64>()
            .ok()
            .filter(|v| v.is_finite())
            .ok_or_else(|| format!("invalid amplitude `{s}`"))
    };
    match s.split_once(':') {
        Some((re, im)) => Ok(C64::new(num(re)?, num(im)?)),
        None => Ok(C64::new(num(s)?, 0.0)),
    }
}

fn parse_triple(s: &str) -> Result<Triple, String> {
    s.parse::<Triple>().map_err(|e| e.to_string())
}

/// Parameters as the commands use them, with the notice to print if the
/// input was rescaled or canonicalized.
struct Prepared {
    params: FamilyParams,
    swapped_ab: bool,
    swapped_cd: bool,
    notices: Vec<String>,
}

fn prepare_params(args: &ParamArgs) -> Result<Prepared, String> {
    let [a, b, c, d] = [args.params[0], args.params[1], args.params[2], args.params[3]];
    let dev_ab = (a.norm_sqr() + b.norm_sqr() - 1.0).abs();
    let dev_cd = (c.norm_sqr() + d.norm_sqr() - 1.0).abs();
    let dev = dev_ab.max(dev_cd);
    let limit = if args.renorm { RENORM_TOL } else { STRICT_NORM_TOL };
    if dev > limit {
        let hint = if args.renorm || dev > RENORM_TOL {
            String::new()
        } else {
            " (pass --renorm to rescale)".to_string()
        };
        return Err(format!(
            "parameters are not normalized: | |a|^2+|b|^2-1 | = {dev_ab:e}, | |c|^2+|d|^2-1 | = {dev_cd:e}, limit {limit:e}{hint}"
        ));
    }
    let mut notices = Vec::new();
    if args.renorm && dev > STRICT_NORM_TOL {
        notices.push(format!("note: renormalized parameters (deviation {dev:e})"));
    }
    let raw = FamilyParams::normalized(a, b, c, d).map_err(|e| e.to_string())?;
    let canon = raw.canonicalize();
    if canon.swapped_ab {
        notices.push("note: |a| < |b|; using (a, b) <- (conj(b), -conj(a)), which swaps A1 and A2".into());
    }
    if canon.swapped_cd {
        notices.push("note: |c| < |d|; using (c, d) <- (conj(d), -conj(c)), which swaps A3 and A4".into());
    }
    Ok(Prepared {
        params: canon.params,
        swapped_ab: canon.swapped_ab,
        swapped_cd: canon.swapped_cd,
        notices,
    })
}

/// Renames triple indices after canonicalization so they keep pointing at
/// the same states.
fn remap_triple(t: &Triple, prepared: &Prepared) -> Triple {
    let idx: Vec<usize> = t
        .indices()
        .iter()
        .map(|&i| match i {
            1 | 2 if prepared.swapped_ab => 3 - i,
            3 | 4 if prepared.swapped_cd => 7 - i,
            _ => i,
        })
        .collect();
    Triple::new(&idx).expect("permutation of a valid triple")
}

/// Formats a float with 17 significant digits.
pub fn fmt_f64(x: f64) -> String {
    format!("{x:.16e}")
}

/// Writes records as CSV with the fixed [`CSV_HEADER`].
pub fn write_csv<W: Write>(records: &[ScanRecord], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        let floats = [
            r.theta1,
            r.theta2,
            r.a,
            r.b,
            r.c,
            r.d,
            r.x,
            r.y,
            r.en_rho_numeric,
            r.en_rho_closed,
            r.en_eta_numeric,
            r.en_eta_closed,
        ];
        let mut row: Vec<String> = floats.iter().map(|&v| fmt_f64(v)).collect();
        row.push(r.cond3.to_string());
        row.push(r.cond4.to_string());
        row.push(r.verdict_three.as_str().to_string());
        row.push(r.verdict_four.as_str().to_string());
        row.push(r.case_label.as_str().to_string());
        w.write_record(&row)?;
    }
    w.flush()?;
    Ok(())
}

enum Failure {
    Error(String),
    Validation,
}

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure::Error(e.to_string())
    }
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit status.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                2
            } else {
                let _ = write!(out, "{rendered}");
                0
            };
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(()) => 0,
        Err(Failure::Validation) => 1,
        Err(Failure::Error(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
    }
}

fn emit_notices(err: &mut dyn Write, prepared: &Prepared) -> io::Result<()> {
    for n in &prepared.notices {
        writeln!(err, "{n}")?;
    }
    Ok(())
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), Failure> {
    match command {
        Command::En { params, eta, triple } => {
            let prepared = prepare_params(&params).map_err(Failure::Error)?;
            emit_notices(err, &prepared)?;
            let cut = Cut::ac_bd();
            let state = match (eta, triple) {
                (true, Some(t)) => build_eta(&prepared.params, &remap_triple(&t, &prepared))?,
                (false, Some(_)) => {
                    return Err(Failure::Error("--triple needs --eta for `en`".into()))
                }
                _ => build_rho(&prepared.params)?,
            };
            let result = log_negativity(&state, cut.left())?;
            writeln!(out, "{}", serde_json::to_string_pretty(&result)?)?;
        }
        Command::Certify { which } => {
            let verdict = match which {
                CertifyTarget::Four { params } => {
                    let prepared = prepare_params(&params).map_err(Failure::Error)?;
                    emit_notices(err, &prepared)?;
                    certify_four(&prepared.params)?
                }
                CertifyTarget::Three { triple, params } => {
                    let prepared = prepare_params(&params).map_err(Failure::Error)?;
                    emit_notices(err, &prepared)?;
                    certify_three(&prepared.params, &remap_triple(&triple, &prepared))?
                }
            };
            writeln!(out, "{}", serde_json::to_string_pretty(&verdict)?)?;
        }
        Command::Scan {
            grid,
            triple,
            out: path,
            format,
        } => {
            let records = sweep_grid(grid, &triple)?;
            let mut sink: Box<dyn Write + '_> = match &path {
                Some(p) => Box::new(io::BufWriter::new(File::create(p)?)),
                None => Box::new(&mut *out),
            };
            match format {
                Format::Csv => write_csv(&records, &mut sink)?,
                Format::Json => {
                    serde_json::to_writer_pretty(&mut sink, &records)?;
                    writeln!(sink)?;
                }
            }
            sink.flush()?;
            drop(sink);
            if let Some(p) = path {
                writeln!(err, "wrote {} records to {}", records.len(), p.display())?;
            }
        }
        Command::Validate { grid, triple } => {
            let records = sweep_grid(grid, &triple)?;
            let report = cross_validate(&records);
            writeln!(out, "{}", serde_json::to_string_pretty(&report)?)?;
            if !report.passed() {
                writeln!(err, "validation failed: {} violation(s)", report.failures.len())?;
                return Err(Failure::Validation);
            }
        }
    }
    Ok(())
}
