//! `casimir`: elliptic Casimir energies, Barnes/Hurwitz values and self-checks.
//!
//! Exit codes: 0 ok, 1 usage, 2 domain or unsupported input, 3 failed check.

mod checks;
mod record;

use std::io::Write;
use std::process::ExitCode;

use casimir_core::barnes::{barnes_zeta2_with_ds, BarnesArgs};
use casimir_core::casimir::{
    elliptic_zeta, identity_zeta, large_p_ratio, surface_report, EllipticOrder, PropagationChoice, TriangleSignature,
};
use casimir_core::hurwitz::{hurwitz_zeta_with_ds, HurwitzArgs};
use casimir_core::numkernel::MAX_WORKING_DIGITS;
use casimir_core::oracle::brute_barnes_sum;
use casimir_core::{real, with_working_digits, Error, Real};
use clap::{Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use checks::{Fault, Suite};
use record::{Check, Format, OutputRecord};

/// Guard digits carried beyond the displayed ones.
const GUARD_DIGITS: u32 = 10;
const MIN_DIGITS: u32 = 6;

#[derive(Parser, Debug)]
#[command(name = "casimir", version, about = "Conformal Casimir energies of elliptic fixed points on hyperbolic orbifolds")]
struct Cli {
    /// Significant digits to display; the computation carries 10 more.
    #[arg(long, global = true, default_value_t = 30)]
    digits: u32,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Propagation {
    Conformal,
    Minimal,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Elliptic zeta function ζ_p(s) of an order-p fixed point (default s = -1/2).
    Elliptic {
        #[arg(long)]
        p: u32,
        #[arg(long, allow_negative_numbers = true)]
        s: Option<String>,
        #[arg(long, value_enum, default_value_t = Propagation::Conformal)]
        propagation: Propagation,
    },
    /// ζ_p(-1/2) and ζ_p(-1/2)/p² over a range of orders, e.g. --p 2..9.
    Table {
        #[arg(long)]
        p: String,
    },
    /// Partial Casimir report for the triangle orbifold (p, q, r).
    Surface {
        p: u32,
        q: u32,
        r: u32,
        /// Charged scalar: twice the real-field energy.
        #[arg(long)]
        charged: bool,
    },
    /// Identity-component zeta function at s = -1/2, per unit area and optionally times an area.
    Identity {
        #[arg(long, allow_negative_numbers = true)]
        area: Option<String>,
    },
    /// Two-dimensional Barnes zeta ζ_B2(s, γ | α, β) with integer periods.
    Barnes {
        #[arg(long, allow_negative_numbers = true)]
        s: String,
        #[arg(long, allow_negative_numbers = true)]
        gamma: String,
        #[arg(long, num_args = 2, value_names = ["ALPHA", "BETA"])]
        omega: Vec<u32>,
        /// Also report ∂/∂s.
        #[arg(long)]
        deriv: bool,
    },
    /// Hurwitz zeta ζ_H(s, w).
    Hurwitz {
        #[arg(long, allow_negative_numbers = true)]
        s: String,
        #[arg(long, allow_negative_numbers = true)]
        w: String,
        /// Also report ∂/∂s.
        #[arg(long)]
        deriv: bool,
    },
    /// Run verification suites against the independent oracles.
    Check {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        /// Perturb every continued value by this relative amount before comparing.
        #[arg(long, hide = true, allow_negative_numbers = true)]
        inject_fault: Option<f64>,
    },
}

enum Failure {
    Usage(String),
    Numeric(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Numeric(e)
    }
}

type Outcome<T> = std::result::Result<T, Failure>;

fn parse_real(name: &str, text: &str) -> Outcome<Real> {
    Real::parse(text)
        .map(real)
        .map_err(|_| Failure::Usage(format!("--{name}: cannot parse '{text}' as a real number")))
}

fn parse_range(text: &str) -> Outcome<(u32, u32)> {
    let malformed = || Failure::Usage(format!("--p: expected a range A..B with 2 ≤ A ≤ B, got '{text}'"));
    let (a, b) = text.split_once("..").ok_or_else(malformed)?;
    let a: u32 = a.trim().parse().map_err(|_| malformed())?;
    let b: u32 = b.trim().parse().map_err(|_| malformed())?;
    if a < 2 || a > b {
        return Err(malformed());
    }
    Ok((a, b))
}

fn elliptic(rec: &mut OutputRecord, p: u32, s: Option<String>, propagation: Propagation) -> Outcome<()> {
    rec.input("p", p);
    rec.input("s", s.as_deref().unwrap_or("-0.5"));
    rec.input("propagation", format!("{propagation:?}").to_lowercase());
    match propagation {
        Propagation::Conformal => PropagationChoice::Conformal,
        Propagation::Minimal => PropagationChoice::Minimal,
    }
    .ensure_supported()?;
    let order = EllipticOrder::new(p)?;
    let s = match s {
        Some(text) => parse_real("s", &text)?,
        None => real(-0.5f64),
    };
    rec.result("zeta", &elliptic_zeta(&s, order)?);
    Ok(())
}

fn table(rec: &mut OutputRecord, range: &str, work: u32) -> Outcome<()> {
    let (lo, hi) = parse_range(range)?;
    let orders: Vec<u32> = (lo..=hi).collect();
    rec.input("p", orders.iter().map(u32::to_string).collect::<Vec<_>>().join(","));
    let rows: Vec<(Real, Real)> = orders
        .par_iter()
        .map(|&p| {
            with_working_digits(work, || -> casimir_core::Result<(Real, Real)> {
                let order = EllipticOrder::new(p)?;
                let ratio = large_p_ratio(order)?;
                let value = real(&ratio * p) * p;
                Ok((value, ratio))
            })?
        })
        .collect::<casimir_core::Result<_>>()?;
    for (p, (value, ratio)) in orders.iter().zip(rows) {
        rec.result(format!("zeta_half[p={p}]"), &value);
        rec.result(format!("ratio_p2[p={p}]"), &ratio);
    }
    Ok(())
}

fn surface(rec: &mut OutputRecord, p: u32, q: u32, r: u32, charged: bool) -> Outcome<()> {
    rec.input("signature", format!("({p},{q},{r})"));
    rec.input("charged", charged);
    let report = surface_report(&TriangleSignature::new(p, q, r)?, charged)?;
    rec.result("area", &report.area);
    for (order, value) in &report.elliptic_terms {
        rec.result(format!("elliptic[p={order}]"), value);
    }
    rec.result("elliptic_sum", &report.elliptic_sum);
    rec.result("identity_density", &report.identity_density);
    rec.result("identity_total", &report.identity_total);
    rec.result("zeta_half_partial", &report.zeta_half_partial);
    rec.result("energy_partial", &report.energy_partial);
    rec.warnings.push(report.excluded.to_string());
    Ok(())
}

fn identity(rec: &mut OutputRecord, area: Option<String>) -> Outcome<()> {
    let density = identity_zeta(&real(-0.5f64))?;
    rec.result("identity_density", &density);
    if let Some(text) = area {
        rec.input("area", &text);
        let area = parse_real("area", &text)?;
        if area <= 0 {
            return Err(Error::Domain(format!("area must be positive, got {text}")).into());
        }
        rec.result("identity_total", &(density * area));
    }
    Ok(())
}

/// Raw Barnes/Hurwitz values are accurate to about `10^-(work-4)` absolutely;
/// anything smaller is cancellation noise around an exact zero.
fn snap_to_floor(rec: &mut OutputRecord, key: &str, value: &Real, work: u32) {
    let floor = casimir_core::numkernel::pow10(-(work as i32 - 4));
    if real(value.abs_ref()) < floor {
        rec.result(key, &real(0));
        rec.warnings.push(format!("{key} is below the absolute precision floor {} and shown as 0", record::short(&floor)));
    } else {
        rec.result(key, value);
    }
}

fn barnes(rec: &mut OutputRecord, s: &str, gamma: &str, omega: &[u32], deriv: bool, work: u32) -> Outcome<()> {
    rec.input("s", s);
    rec.input("gamma", gamma);
    rec.input("omega", format!("{} {}", omega[0], omega[1]));
    let args = BarnesArgs::new(parse_real("s", s)?, parse_real("gamma", gamma)?, omega[0], omega[1])?;
    let (value, ds) = barnes_zeta2_with_ds(&args)?;
    snap_to_floor(rec, "zeta_b2", &value, work);
    if deriv {
        snap_to_floor(rec, "zeta_b2_ds", &ds, work);
    }
    // in the convergent region the lattice sum itself is an independent check
    if args.s > 2.5 {
        let sum = brute_barnes_sum(&args, 1000)?;
        let outside = real(sum.lower() - &value).max(&real(&value - sum.upper())).max(&real(0));
        rec.checks.push(Check {
            name: "brute-force bracket".into(),
            passed: outside == 0,
            deviation: record::short(&outside),
            tolerance: record::short(&sum.width()),
        });
    }
    Ok(())
}

fn hurwitz(rec: &mut OutputRecord, s: &str, w: &str, deriv: bool, work: u32) -> Outcome<()> {
    rec.input("s", s);
    rec.input("w", w);
    let (value, ds) = hurwitz_zeta_with_ds(&HurwitzArgs::new(parse_real("s", s)?, parse_real("w", w)?)?)?;
    snap_to_floor(rec, "zeta_h", &value, work);
    if deriv {
        snap_to_floor(rec, "zeta_h_ds", &ds, work);
    }
    Ok(())
}

fn execute(command: Command, rec: &mut OutputRecord, work: u32) -> Outcome<()> {
    match command {
        Command::Elliptic { p, s, propagation } => elliptic(rec, p, s, propagation),
        Command::Table { p } => table(rec, &p, work),
        Command::Surface { p, q, r, charged } => surface(rec, p, q, r, charged),
        Command::Identity { area } => identity(rec, area),
        Command::Barnes { s, gamma, omega, deriv } => barnes(rec, &s, &gamma, &omega, deriv, work),
        Command::Hurwitz { s, w, deriv } => hurwitz(rec, &s, &w, deriv, work),
        Command::Check { suite, inject_fault } => {
            rec.input("suite", format!("{suite:?}").to_lowercase());
            rec.checks = checks::run(suite, work, Fault(inject_fault.unwrap_or(0.0)))?;
            Ok(())
        }
    }
}

fn command_name(command: &Command) -> &'static str {
    match command {
        Command::Elliptic { .. } => "elliptic",
        Command::Table { .. } => "table",
        Command::Surface { .. } => "surface",
        Command::Identity { .. } => "identity",
        Command::Barnes { .. } => "barnes",
        Command::Hurwitz { .. } => "hurwitz",
        Command::Check { .. } => "check",
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    let max_digits = MAX_WORKING_DIGITS - GUARD_DIGITS;
    if !(MIN_DIGITS..=max_digits).contains(&cli.digits) {
        eprintln!("error: --digits must lie in {MIN_DIGITS}..={max_digits}, got {}", cli.digits);
        return ExitCode::from(1);
    }
    let work = (cli.digits + GUARD_DIGITS).max(casimir_core::numkernel::MIN_WORKING_DIGITS);
    let mut rec = OutputRecord::new(command_name(&cli.command), cli.digits);
    let outcome = with_working_digits(work, || execute(cli.command, &mut rec, work)).expect("digits validated above");
    match outcome {
        Ok(()) => {
            let mut stdout = std::io::stdout().lock();
            let _ = stdout.write_all(rec.render(cli.format).as_bytes());
            if rec.all_checks_pass() {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(3)
            }
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Numeric(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
