//! `rankjump`: certified rank jumps on elliptic fibrations.
//!
//! Exit codes: 0 success, 2 configuration or input error, 3 search exhausted.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use rankjump_core::arith::poly::Poly;
use rankjump_core::arith::rat::parse_rat;
use rankjump_core::density::density_report;
use rankjump_core::elliptic::{canonical_height, parse_curve, parse_point};
use rankjump_core::engine::{billing_build, neron_check, reverify_billing, scan, CSV_HEADER};
use rankjump_core::families::{is_valid, validate_family, FamilySpec, Mode};
use rankjump_core::{Error, PolyQ};

#[derive(Parser)]
#[command(
    name = "rankjump",
    version,
    about = "Certified Mordell-Weil rank jumps on elliptic fibrations"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CliMode {
    TotalFirst,
    FiberFirst,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Csv,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Check a family file and list findings.
    Validate {
        /// Family JSON file.
        family: PathBuf,
    },
    /// Enumerate witnesses, certify them and write certificates plus a
    /// density sidecar.
    Scan {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        bound: u64,
        #[arg(long, value_enum, default_value = "total-first")]
        mode: CliMode,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// Independent quadratic twists with certified points of infinite order.
    Billing {
        /// Coefficients of a monic cubic, ascending: "0,-1,0,1" or a JSON array.
        #[arg(long, allow_hyphen_values = true)]
        p: String,
        #[arg(long)]
        rank: usize,
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Specialization check for the declared sections of a Weierstrass pencil.
    Neron {
        #[arg(long)]
        family: PathBuf,
        #[arg(long)]
        bound: u64,
        #[arg(long, default_value_t = 1e-4)]
        tol: f64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Canonical height of one point.
    Height {
        /// "A,B" for y^2 = x^3 + A x + B.
        #[arg(long, allow_hyphen_values = true)]
        curve: String,
        /// "x,y" or "inf".
        #[arg(long, allow_hyphen_values = true)]
        point: String,
        #[arg(long, default_value_t = 1e-6)]
        tol: f64,
    },
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::SearchExhausted { .. } => 3,
            _ => 2,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn input_error(message: impl Into<String>) -> Failure {
    Failure {
        code: 2,
        message: message.into(),
    }
}

fn read_family(path: &Path) -> Result<FamilySpec, Failure> {
    let text =
        fs::read_to_string(path).map_err(|e| input_error(format!("{}: {e}", path.display())))?;
    Ok(FamilySpec::from_json(&text)?)
}

fn load_valid_family(path: &Path) -> Result<FamilySpec, Failure> {
    let f = read_family(path)?;
    let findings = validate_family(&f);
    if !is_valid(&findings) {
        let lines: Vec<String> = findings
            .iter()
            .map(|x| format!("{:?}: {}", x.severity, x.message).to_lowercase())
            .collect();
        return Err(input_error(lines.join("\n")));
    }
    Ok(f)
}

fn write_file(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| input_error(format!("{}: {e}", path.display())))
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write_file(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("report serializes");
    s.push('\n');
    s
}

fn csv_text<const N: usize>(
    header: &[&str],
    rows: impl IntoIterator<Item = [String; N]>,
) -> Result<String, Failure> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let io = |e: csv::Error| input_error(e.to_string());
    w.write_record(header).map_err(io)?;
    for r in rows {
        w.write_record(&r).map_err(io)?;
    }
    let bytes = w.into_inner().map_err(|e| input_error(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

/// `run.csv` -> `run.<suffix>`.
fn sidecar(out: &Path, suffix: &str) -> PathBuf {
    let stem = out
        .file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_default();
    out.with_file_name(format!("{stem}.{suffix}"))
}

fn parse_poly(text: &str) -> Result<PolyQ, Failure> {
    let t = text.trim();
    let items: Vec<String> = if t.starts_with('[') {
        let v: Vec<serde_json::Value> =
            serde_json::from_str(t).map_err(|e| input_error(format!("--p: {e}")))?;
        v.into_iter()
            .map(|x| match x {
                serde_json::Value::String(s) => s,
                other => other.to_string(),
            })
            .collect()
    } else {
        t.split(',').map(str::to_string).collect()
    };
    let coeffs = items
        .iter()
        .map(|s| parse_rat(s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Poly::new(coeffs))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let started = Instant::now();
    match cli.command {
        Command::Validate { family } => {
            let f = read_family(&family)?;
            let findings = validate_family(&f);
            for x in &findings {
                println!(
                    "{}: {}",
                    format!("{:?}", x.severity).to_lowercase(),
                    x.message
                );
            }
            if !is_valid(&findings) {
                return Err(input_error(format!(
                    "{} is not a valid family",
                    family.display()
                )));
            }
            println!("ok: {}", f.kind_name());
        }
        Command::Scan {
            family,
            bound,
            mode,
            tol,
            out,
            format,
            jobs,
        } => {
            let f = load_valid_family(&family)?;
            let mode = match mode {
                CliMode::TotalFirst => Mode::TotalFirst,
                CliMode::FiberFirst => Mode::FiberFirst,
            };
            let report = scan(&f, bound, mode, tol, jobs.max(1))?;
            let data = match format {
                Format::Csv => {
                    csv_text(&CSV_HEADER, report.certificates.iter().map(|c| c.csv_row()))?
                }
                Format::Json => to_json(&report),
            };
            write_file(&out, &data)?;
            let density = density_report(&f, &report.certified_params());
            write_file(&sidecar(&out, "density.json"), &to_json(&density))?;
            let hist = csv_text(
                &["bin_lo", "bin_hi", "count"],
                density.real_histogram.csv_rows(),
            )?;
            write_file(&sidecar(&out, "histogram.csv"), &hist)?;
            println!("{}", report.summary());
        }
        Command::Billing {
            p,
            rank,
            bound,
            tol,
            out,
        } => {
            let p = parse_poly(&p)?;
            let cert = billing_build(&p, rank, bound, tol)?;
            reverify_billing(&p, &cert)?;
            emit(out.as_deref(), &to_json(&cert))?;
        }
        Command::Neron {
            family,
            bound,
            tol,
            jobs,
            out,
        } => {
            let f = load_valid_family(&family)?;
            let report = neron_check(&f, bound, tol, jobs.max(1))?;
            emit(out.as_deref(), &to_json(&report))?;
        }
        Command::Height { curve, point, tol } => {
            let c = parse_curve(&curve)?;
            let p = parse_point(&point)?;
            let h = canonical_height(&c, &p, tol)?;
            emit(None, &to_json(&h))?;
        }
    }
    eprintln!("rankjump: done in {:.2}s", started.elapsed().as_secs_f64());
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("rankjump: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
