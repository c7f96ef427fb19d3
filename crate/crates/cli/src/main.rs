use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fedosov::fedosov::{apply_gauge, fedosov_class, solve_r, FedosovData, StarEval, StarProduct};
use fedosov::io;
use fedosov::ops;
use fedosov::verify::{self, Suite, VerifyConfig};
use fedosov::weyl::FormWeyl;
use fedosov::Error;
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "fedosov", version, about = "Exact Fedosov star products and Hochschild checks")]
struct Cli {
    /// Emit JSON instead of text.
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    /// Emit text (the default).
    #[arg(long, global = true)]
    text: bool,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct DataArgs {
    /// Fedosov data JSON file.
    #[arg(long)]
    data: PathBuf,
    /// Truncation order; defaults to the order in the data file.
    #[arg(long)]
    order: Option<i32>,
}

#[derive(Subcommand)]
enum Cmd {
    /// a * b for polynomials in x1.. and hbar.
    Star {
        #[command(flatten)]
        data: DataArgs,
        a: String,
        b: String,
    },
    /// The horizontal lift of a function.
    Tau {
        #[command(flatten)]
        data: DataArgs,
        a: String,
    },
    /// Solve for the connection form r and report the curvature residual.
    SolveR {
        #[command(flatten)]
        data: DataArgs,
    },
    /// The class (1/hbar)(-omega + Omega).
    FedosovClass {
        #[command(flatten)]
        data: DataArgs,
    },
    /// a *' b for the star product conjugated by a gauge operator.
    Gauge {
        #[command(flatten)]
        data: DataArgs,
        /// Gauge operator JSON file.
        #[arg(long)]
        gauge: PathBuf,
        a: String,
        b: String,
    },
    /// Run a seeded invariant suite.
    Verify {
        /// hodge, dsquare, assoc, cochain, beta, barkoszul, chi, equivariance or all.
        suite: String,
        #[arg(long)]
        data: Option<PathBuf>,
        #[arg(long, default_value_t = 2)]
        dim: usize,
        #[arg(long, default_value_t = 6)]
        order: i32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Slot-order cap, written y:M.
        #[arg(long)]
        caps: Option<String>,
    },
}

enum Failure {
    Input(Error),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e)
    }
}

fn read(path: &Path) -> Result<String, Error> {
    std::fs::read_to_string(path).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
}

fn load(args: &DataArgs) -> Result<(FedosovData, i32), Error> {
    let data = io::fedosov_data_from_str(&read(&args.data)?)?;
    let order = args.order.unwrap_or(data.order);
    if order < 0 {
        return Err(Error::Precondition("order must be non-negative".into()));
    }
    // work two orders higher and truncate the results
    Ok((FedosovData { order: order + 2, ..data }, order))
}

fn emit(json_out: bool, text: String, value: Value) {
    if json_out {
        println!("{}", io::canonical_string(&value));
    } else {
        println!("{text}");
    }
}

fn weyl_out(json_out: bool, a: &FormWeyl) {
    let text = io::fmt_weyl(a);
    emit(json_out, text.clone(), json!({ "text": text, "value": io::weyl_to_json(a) }));
}

fn parse_caps(s: &str) -> Result<u32, Error> {
    s.strip_prefix("y:")
        .and_then(|m| m.parse().ok())
        .ok_or_else(|| Error::Parse(format!("caps must look like y:M, got {s:?}")))
}

fn run(cli: Cli) -> Result<(), Failure> {
    let js = cli.json;
    match cli.cmd {
        Cmd::Star { data, a, b } => {
            let (d, n) = load(&data)?;
            let sp = StarProduct::new(d)?;
            let (a, b) = (io::parse_weyl(&a, sp.dim(), n + 2)?, io::parse_weyl(&b, sp.dim(), n + 2)?);
            weyl_out(js, &sp.star(&a, &b)?.with_order(n));
        }
        Cmd::Tau { data, a } => {
            let (d, n) = load(&data)?;
            let sp = StarProduct::new(d)?;
            let a = io::parse_weyl(&a, sp.dim(), n + 2)?;
            weyl_out(js, &sp.tau(&a)?.with_order(n));
        }
        Cmd::SolveR { data } => {
            let (d, n) = load(&data)?;
            let r = solve_r(&d)?;
            let residual = ops::weyl_curvature_class(&d.chart, &r)?.sub(&d.omega_form()).with_order(n);
            let r = r.with_order(n);
            let text = format!("r = {}\nresidual = {}", io::fmt_weyl(&r), io::fmt_weyl(&residual));
            let value = json!({
                "r": io::weyl_to_json(&r),
                "r_text": io::fmt_weyl(&r),
                "residual": io::weyl_to_json(&residual),
                "residual_text": io::fmt_weyl(&residual),
            });
            emit(js, text, value);
        }
        Cmd::FedosovClass { data } => {
            let (d, n) = load(&data)?;
            weyl_out(js, &fedosov_class(&d).with_order(n));
        }
        Cmd::Gauge { data, gauge, a, b } => {
            let (d, n) = load(&data)?;
            let sp = StarProduct::new(d)?;
            let q = io::gauge_from_str(&read(&gauge)?, sp.dim())?;
            let gs = apply_gauge(&sp, q);
            let (a, b) = (io::parse_weyl(&a, sp.dim(), n + 2)?, io::parse_weyl(&b, sp.dim(), n + 2)?);
            weyl_out(js, &gs.star(&a, &b)?.with_order(n));
        }
        Cmd::Verify { suite, data, dim, order, seed, caps } => {
            let suite: Suite = suite.parse()?;
            let data = data.map(|p| read(&p).and_then(|s| io::fedosov_data_from_str(&s))).transpose()?;
            let mut cfg = VerifyConfig::new(dim, order, seed);
            cfg.cap = caps.as_deref().map(parse_caps).transpose()?;
            let report = verify::run(suite, data.as_ref(), &cfg)?;
            let text = report.to_text();
            emit(js, text.trim_end().to_string(), report.to_json());
            if !report.passed() {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Checks) => ExitCode::from(1),
        Err(Failure::Input(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
