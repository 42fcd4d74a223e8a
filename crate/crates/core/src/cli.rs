//! The `duflo` command line.
//!
//! Exit status is 0 when everything verified, 1 when a check failed or was
//! flagged, and 2 for usage and input errors.

use std::ffi::OsString;
use std::fs;
use std::io::{self, Read, Write};
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::duflo::{duflo_coefficients, StarFlavor, Workbench};
use crate::envalg::EnvElement;
use crate::error::{Error, Result};
use crate::exactlin::format_rational;
use crate::liealg;
use crate::sympoly::{component_dim, SymPolynomial};
use crate::verify::{self, CheckId, CheckSpec, Status};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "duflo", version, about = "Exact checks for the Duflo map and transported star products")]
pub struct Cli {
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Print results as readable text instead of JSON.
    #[arg(long, global = true)]
    human: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Run one check and emit its report.
    Check {
        #[arg(long = "check-id")]
        check_id: String,
        /// Catalog name or algebra JSON file.
        #[arg(long)]
        algebra: String,
        #[arg(long, default_value_t = 6)]
        max_degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Apply one of the linear maps to a polynomial or enveloping element.
    Apply {
        #[arg(long, value_enum)]
        map: MapKind,
        #[arg(long)]
        algebra: String,
        /// JSON file, inline JSON, or `-` for stdin (the default).
        #[arg(long)]
        input: Option<String>,
    },
    /// Star product of two polynomials.
    Star {
        #[arg(long, value_enum)]
        flavor: FlavorArg,
        #[arg(long)]
        algebra: String,
        /// JSON file or inline JSON.
        #[arg(long)]
        lhs: String,
        #[arg(long)]
        rhs: String,
    },
    /// Basis of the invariants of one degree.
    Invariants {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        degree: u32,
    },
    /// Coinvariants of one degree, or the class of `--input` in them.
    Coinvariants {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        degree: u32,
        #[arg(long)]
        input: Option<String>,
    },
    /// The trace element `Tr_k`.
    Trace {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        k: u32,
    },
    /// Coefficients of the strange-map exponent up to `--max-k`.
    Coeffs {
        #[arg(long = "max-k")]
        max_k: u32,
    },
    /// List the built-in algebras or print one as JSON.
    Catalog {
        #[arg(long)]
        list: bool,
        #[arg(long)]
        show: Option<String>,
    },
    /// Run the whole acceptance battery over the catalog.
    Suite {
        #[arg(long, default_value_t = 4)]
        max_degree: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum MapKind {
    Pbw,
    PbwInv,
    Strange,
    StrangeInv,
    Duflo,
    DufloInv,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FlavorArg {
    Gutt,
    Duflo,
}

impl From<FlavorArg> for StarFlavor {
    fn from(f: FlavorArg) -> Self {
        match f {
            FlavorArg::Gutt => StarFlavor::Gutt,
            FlavorArg::Duflo => StarFlavor::Duflo,
        }
    }
}

/// What a subcommand produced: a JSON document, its text rendering, and the
/// exit status it implies.
struct Output {
    json: String,
    text: String,
    status: i32,
}

impl Output {
    fn ok(value: &impl Serialize, text: String) -> Self {
        Output { json: to_pretty(value), text, status: EXIT_PASS }
    }
}

fn to_pretty(value: &impl Serialize) -> String {
    serde_json::to_string_pretty(value).expect("serializable output")
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
        }
    };
    match execute(&cli) {
        Ok(out) => match emit(&cli, &out) {
            Ok(()) => out.status,
            Err(e) => {
                eprintln!("error: {e}");
                EXIT_USAGE
            }
        },
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_USAGE
        }
    }
}

fn emit(cli: &Cli, out: &Output) -> Result<()> {
    let body = if cli.human { &out.text } else { &out.json };
    match &cli.out {
        Some(path) => fs::write(path, format!("{body}\n"))?,
        None => {
            let mut stdout = io::stdout().lock();
            writeln!(stdout, "{body}")?;
        }
    }
    Ok(())
}

fn read_input(arg: Option<&str>) -> Result<String> {
    match arg {
        None | Some("-") => {
            let mut s = String::new();
            io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
        Some(s) if s.trim_start().starts_with('{') => Ok(s.to_string()),
        Some(path) => Ok(fs::read_to_string(path)?),
    }
}

fn valid_algebra(name: &str) -> Result<Workbench> {
    let sc = liealg::resolve(name)?;
    let v = sc.validate();
    if !v.passed() {
        return Err(Error::InvalidAlgebra(v.describe(&sc)));
    }
    Ok(Workbench::new(sc))
}

fn status_code(status: Status) -> i32 {
    match status {
        Status::Pass => EXIT_PASS,
        Status::Flag | Status::Fail => EXIT_FAIL,
    }
}

fn execute(cli: &Cli) -> Result<Output> {
    match &cli.command {
        Command::Check { check_id, algebra, max_degree, seed } => {
            let spec = CheckSpec::new(check_id.parse::<CheckId>()?, algebra.clone(), *max_degree).with_seed(*seed);
            let report = verify::run_check(&spec)?;
            eprintln!("{}  [{:.2?}]", report.summary(), report.wall_time);
            for case in report.failures().take(10) {
                eprintln!("  {}: {}{}", case.outcome, case.label, case.detail.as_ref().map(|d| format!(" ({d})")).unwrap_or_default());
            }
            let mut text = report.summary();
            for case in report.failures() {
                text.push_str(&format!("\n  {}: {}", case.outcome, case.label));
                if let Some(d) = &case.detail {
                    text.push_str(&format!(" ({d})"));
                }
            }
            Ok(Output { json: report.to_json_string(), text, status: status_code(report.status) })
        }
        Command::Apply { map, algebra, input } => {
            let wb = valid_algebra(algebra)?;
            let src = read_input(input.as_deref())?;
            let n = wb.dim();
            let names = wb.names();
            match map {
                MapKind::Pbw | MapKind::Duflo => {
                    let f = SymPolynomial::from_json_str(n, &src)?;
                    let u = if matches!(map, MapKind::Pbw) { wb.pbw_map(&f)? } else { wb.duflo_map(&f)? };
                    Ok(Output::ok(&u.to_json(), u.display(names)))
                }
                MapKind::PbwInv | MapKind::DufloInv => {
                    let u = EnvElement::from_json_str(n, &src)?;
                    let f = if matches!(map, MapKind::PbwInv) { wb.pbw_inverse(&u)? } else { wb.duflo_inverse(&u)? };
                    Ok(Output::ok(&f.to_json(), f.display(names)))
                }
                MapKind::Strange | MapKind::StrangeInv => {
                    let f = SymPolynomial::from_json_str(n, &src)?;
                    let g = if matches!(map, MapKind::Strange) { wb.strange_map(&f)? } else { wb.strange_inverse(&f)? };
                    Ok(Output::ok(&g.to_json(), g.display(names)))
                }
            }
        }
        Command::Star { flavor, algebra, lhs, rhs } => {
            let wb = valid_algebra(algebra)?;
            let n = wb.dim();
            let a = SymPolynomial::from_json_str(n, &read_input(Some(lhs))?)?;
            let b = SymPolynomial::from_json_str(n, &read_input(Some(rhs))?)?;
            let p = wb.star_product(&a, &b, (*flavor).into())?;
            Ok(Output::ok(&p.to_json(), p.display(wb.names())))
        }
        Command::Invariants { algebra, degree } => {
            let wb = valid_algebra(algebra)?;
            let inv = wb.subspaces().invariants(*degree)?;
            let basis = inv.basis_polynomials();
            let shown: Vec<String> = basis.iter().map(|f| f.display(wb.names())).collect();
            let value = json!({
                "algebra": wb.structure().name(),
                "degree": degree,
                "dim": inv.dim(),
                "basis": basis.iter().map(|f| f.to_json()).collect::<Vec<_>>(),
            });
            let mut text = format!("dim = {}", inv.dim());
            for line in shown {
                text.push('\n');
                text.push_str(&line);
            }
            Ok(Output::ok(&value, text))
        }
        Command::Coinvariants { algebra, degree, input } => {
            let wb = valid_algebra(algebra)?;
            let k = *degree;
            let span = wb.subspaces().g_span(k)?;
            let total = component_dim(wb.dim(), k);
            let mut value = json!({
                "algebra": wb.structure().name(),
                "degree": k,
                "dim_symmetric": total,
                "dim_bracket_span": span.dim(),
                "dim_coinvariants": total - span.dim(),
            });
            let mut text = format!("dim S^{k} = {total}, dim {{g,S}} = {}, dim coinvariants = {}", span.dim(), total - span.dim());
            if let Some(input) = input {
                let f = SymPolynomial::from_json_str(wb.dim(), &read_input(Some(input))?)?;
                let class = wb.subspaces().coinvariant_class(&f, k)?;
                let rep = class.representative(wb.dim());
                value["class"] = serde_json::to_value(rep.to_json())?;
                value["class_is_zero"] = Value::Bool(class.is_zero());
                text.push_str(&format!("\nclass: {}", rep.display(wb.names())));
            }
            Ok(Output::ok(&value, text))
        }
        Command::Trace { algebra, k } => {
            let wb = valid_algebra(algebra)?;
            let tr = wb.trace(*k)?;
            Ok(Output::ok(&tr.to_json(), tr.display(wb.names())))
        }
        Command::Coeffs { max_k } => {
            let coeffs = duflo_coefficients(*max_k)?;
            let map: serde_json::Map<String, Value> = coeffs
                .alpha
                .iter()
                .map(|(k, a)| (k.to_string(), Value::String(format_rational(a))))
                .collect();
            let text = coeffs
                .alpha
                .iter()
                .map(|(k, a)| format!("alpha_{k} = {}", format_rational(a)))
                .collect::<Vec<_>>()
                .join("\n");
            Ok(Output::ok(&Value::Object(map), text))
        }
        Command::Catalog { list, show } => match show {
            Some(name) => {
                let sc = liealg::catalog(name)?;
                Ok(Output { json: sc.to_json_string(), text: format!("{sc:?}"), status: EXIT_PASS })
            }
            None if *list => Ok(Output::ok(&liealg::CATALOG, liealg::CATALOG.join("\n"))),
            None => Err(Error::InvalidParameter("catalog needs --list or --show <name>".into())),
        },
        Command::Suite { max_degree, seed } => {
            let suite = verify::run_suite(*max_degree, *seed)?;
            let mut text = String::new();
            for r in &suite.reports {
                eprintln!("{}  [{:.2?}]", r.summary(), r.wall_time);
                text.push_str(&r.summary());
                text.push('\n');
            }
            eprintln!("suite: {} in {:.1?}", suite.status, suite.wall_time);
            text.push_str(&format!("suite: {}", suite.status));
            Ok(Output { json: suite.to_json_string(), text, status: status_code(suite.status) })
        }
    }
}
