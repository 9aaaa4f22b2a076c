//! `zetamoment` — compute the moment integrals of log(1+e^t)/(1+e^t),
//! evaluate zeta values through their integral representations, and run
//! the verification suites.
//!
//! Exit codes: 0 success, 1 usage error, 2 precision failure,
//! 3 verification failure.

mod report;

use clap::{Parser, Subcommand, ValueEnum};
use zetamoment::identities::{
    moment_zeta_expr, render_zeta_basis, table_reproduce, zeta_via_thm1, zeta_via_thm2,
    zeta_via_thm3, zeta_via_thm4,
};
use zetamoment::precision::DEFAULT_DIGITS;
use zetamoment::quadrature::moment_integral;
use zetamoment::special::{zeta_em_auto, zeta_reference};
use zetamoment::Error;

const EXIT_OK: i32 = 0;
const EXIT_USAGE: i32 = 1;
const EXIT_PRECISION: i32 = 2;
const EXIT_VERIFY: i32 = 3;

#[derive(Parser)]
#[command(
    name = "zetamoment",
    about = "Moment integrals of log(1+e^t)/(1+e^t) and their zeta-value identities",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Method {
    Thm1,
    Thm2,
    Thm3,
    Thm4,
    Reference,
    Em,
}

impl Method {
    fn name(self) -> &'static str {
        match self {
            Method::Thm1 => "thm1",
            Method::Thm2 => "thm2",
            Method::Thm3 => "thm3",
            Method::Thm4 => "thm4",
            Method::Reference => "reference",
            Method::Em => "em",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum, Debug)]
enum Suite {
    All,
    Exact,
    Numeric,
    Generalized,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the moment integral I(n) by quadrature and print it next
    /// to its exact closed form.
    Moment {
        n: u32,
        #[arg(long)]
        digits: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Evaluate ζ(s) through one of the integral representations or a
    /// reference route.
    Zeta {
        s: u32,
        #[arg(long, value_enum)]
        method: Method,
        #[arg(long)]
        digits: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Run a verification suite and stream one record per identity.
    Verify {
        #[arg(long, value_enum, default_value = "all")]
        suite: Suite,
        #[arg(long, default_value_t = 20)]
        max_n: u32,
        #[arg(long)]
        digits: Option<u32>,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Digits-agreed threshold for the numeric suite (default: digits − 10).
        #[arg(long)]
        numeric_threshold: Option<u32>,
        /// Digits-agreed threshold for the generalized suite (default: 20).
        #[arg(long)]
        generalized_threshold: Option<u32>,
    },
    /// Render the closed-form table of moment integrals.
    Table {
        #[arg(long, default_value_t = 5)]
        max_n: u32,
    },
}

/// Precision resolution order: --digits flag, then ZETAMOMENT_PRECISION,
/// then the library default. Values below 15 are rejected.
fn resolve_digits(flag: Option<u32>) -> Result<u32, String> {
    let digits = match flag {
        Some(d) => d,
        None => match std::env::var("ZETAMOMENT_PRECISION") {
            Ok(v) => v
                .parse::<u32>()
                .map_err(|_| format!("ZETAMOMENT_PRECISION is not a valid digit count: {v:?}"))?,
            Err(_) => DEFAULT_DIGITS,
        },
    };
    if digits < 15 {
        return Err(format!("precision must be at least 15 digits, got {digits}"));
    }
    if digits > 1000 {
        return Err(format!("precision above 1000 digits is not supported, got {digits}"));
    }
    Ok(digits)
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::PrecisionNotReached { .. } => EXIT_PRECISION,
        _ => EXIT_USAGE,
    }
}

fn cmd_moment(n: u32, digits: u32, format: Format) -> i32 {
    let quad = match moment_integral(n, digits) {
        Ok(q) => q,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let expr = moment_zeta_expr(n);
    let rendered = render_zeta_basis(&expr);
    let symbolic_value = match expr.eval(digits) {
        Ok(v) => v,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_code_for(&e);
        }
    };
    let agreed = quad.value.digits_agreed(&symbolic_value);
    match format {
        Format::Text => {
            println!("I({n}) at {digits} digits");
            println!("quadrature   = {}", quad.value);
            println!(
                "               error ≤ {}, nodes = {}, |t| ≤ {}",
                quad.error_estimate, quad.nodes_used, quad.truncation_point
            );
            println!("closed form  = {rendered}");
            println!("             = {symbolic_value}");
            println!("digits agreed: {agreed}");
        }
        Format::Json => {
            let obj = serde_json::json!({
                "n": n,
                "digits": digits,
                "quadrature": quad.value.to_string(),
                "error_estimate": quad.error_estimate.to_string(),
                "nodes_used": quad.nodes_used,
                "truncation_point": quad.truncation_point.to_string(),
                "closed_form": rendered,
                "closed_form_value": symbolic_value.to_string(),
                "digits_agreed": agreed,
            });
            println!("{obj}");
        }
    }
    EXIT_OK
}

fn cmd_zeta(s: u32, method: Method, digits: u32, format: Format) -> i32 {
    let parity_err = |need: &str| {
        eprintln!("error: method requires an {need} argument, got s = {s}");
        EXIT_USAGE
    };
    if s < 2 {
        eprintln!("error: zeta arguments below 2 are not supported");
        return EXIT_USAGE;
    }
    let result = match method {
        Method::Thm1 => {
            if s % 2 != 0 {
                return parity_err("even");
            }
            zeta_via_thm1(s / 2, digits)
        }
        Method::Thm2 => {
            if s % 2 != 1 {
                return parity_err("odd");
            }
            zeta_via_thm2((s - 1) / 2, digits)
        }
        Method::Thm4 => {
            if s % 2 != 1 {
                return parity_err("odd");
            }
            zeta_via_thm4((s - 1) / 2, digits)
        }
        Method::Thm3 => zeta_via_thm3(s, digits),
        Method::Reference => zeta_reference(s, digits),
        Method::Em => zeta_em_auto(s, digits).map(|em| em.value),
    };
    match result {
        Ok(v) => {
            match format {
                Format::Text => println!("zeta({s}) = {v}"),
                Format::Json => {
                    let obj = serde_json::json!({
                        "s": s,
                        "method": method.name(),
                        "digits": digits,
                        "value": v.to_string(),
                    });
                    println!("{obj}");
                }
            }
            EXIT_OK
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

fn cmd_table(max_n: u32) -> i32 {
    for (n, row) in table_reproduce(max_n) {
        println!("{n}\t{row}");
    }
    EXIT_OK
}

fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not usage errors.
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => EXIT_OK,
                _ => EXIT_USAGE,
            };
        }
    };
    match cli.command {
        Command::Moment { n, digits, format } => match resolve_digits(digits) {
            Ok(d) => cmd_moment(n, d, format),
            Err(msg) => {
                eprintln!("error: {msg}");
                EXIT_USAGE
            }
        },
        Command::Zeta { s, method, digits, format } => match resolve_digits(digits) {
            Ok(d) => cmd_zeta(s, method, d, format),
            Err(msg) => {
                eprintln!("error: {msg}");
                EXIT_USAGE
            }
        },
        Command::Verify {
            suite,
            max_n,
            digits,
            format,
            numeric_threshold,
            generalized_threshold,
        } => match resolve_digits(digits) {
            Ok(d) => {
                let cfg = report::VerifyConfig {
                    suite,
                    max_n,
                    digits: d,
                    json: format == Format::Json,
                    numeric_threshold: numeric_threshold
                        .unwrap_or_else(|| d.saturating_sub(10).max(5)),
                    generalized_threshold: generalized_threshold.unwrap_or(20),
                };
                match report::run_verify(&cfg) {
                    Ok(all_passed) => {
                        if all_passed {
                            EXIT_OK
                        } else {
                            EXIT_VERIFY
                        }
                    }
                    Err(e) => {
                        eprintln!("error: {e}");
                        exit_code_for(&e)
                    }
                }
            }
            Err(msg) => {
                eprintln!("error: {msg}");
                EXIT_USAGE
            }
        },
        Command::Table { max_n } => cmd_table(max_n),
    }
}

fn main() {
    std::process::exit(run());
}

impl Suite {
    pub fn includes_exact(self) -> bool {
        matches!(self, Suite::All | Suite::Exact)
    }
    pub fn includes_numeric(self) -> bool {
        matches!(self, Suite::All | Suite::Numeric)
    }
    pub fn includes_generalized(self) -> bool {
        matches!(self, Suite::All | Suite::Generalized)
    }
}
