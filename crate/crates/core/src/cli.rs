//! Command-line front end.

use std::ffi::OsString;
use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::cert::{CertParams, Certificate};
use crate::error::{LtvError, Result};
use crate::params::FieldParams;
use crate::suite::{run_command, validate, Command, SuiteParams, Tier};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 2;
pub const EXIT_CONFIG: i32 = 3;

/// Environment variable capping the worker thread count.
pub const THREADS_ENV: &str = "LTV_THREADS";

#[derive(Debug, Parser)]
#[command(name = "ltv", version, about = "Exact verification of the torus action on the Lubin-Tate disc")]
struct Cli {
    #[command(subcommand)]
    command: Sub,
}

#[derive(Debug, Subcommand)]
enum Sub {
    /// Valuations of the period-map coefficients c_n, d_n.
    Coeffs(Opts),
    /// The polynomials Q_n of the torus action, with their checks.
    Action(Opts),
    /// The decomposition Q_{n,s} and vanishing orders at x = 1.
    Decomp(Opts),
    /// The function R and its lemma suite.
    Rfunc(Opts),
    /// Sup norms on critical discs and operator estimates.
    Norms(Opts),
    /// The lattices h_s, h_0', g_s and the quaternion identities.
    Lattices(Opts),
    /// Every suite at the chosen tier.
    Verify(Opts),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Debug, Args)]
struct Opts {
    /// Residue characteristic.
    #[arg(long)]
    p: Option<u64>,
    /// Residue degree.
    #[arg(long, default_value_t = 1)]
    f: u32,
    /// Ramification index.
    #[arg(long, default_value_t = 1)]
    e: u32,
    /// Residue field size; must equal p^f when both are given.
    #[arg(long)]
    q: Option<u64>,
    /// Range of the computation (meaning depends on the subcommand).
    #[arg(long)]
    max_n: Option<u64>,
    /// Critical disc level for the disc-stability check.
    #[arg(long, default_value_t = 0)]
    disc_s: u32,
    /// 1 = desk scale, 2 = slow extensions.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
    tier: u8,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
    /// Output file; standard output when absent.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Sub {
    fn split(self) -> (Command, Opts) {
        match self {
            Sub::Coeffs(o) => (Command::Coeffs, o),
            Sub::Action(o) => (Command::Action, o),
            Sub::Decomp(o) => (Command::Decomp, o),
            Sub::Rfunc(o) => (Command::Rfunc, o),
            Sub::Norms(o) => (Command::Norms, o),
            Sub::Lattices(o) => (Command::Lattices, o),
            Sub::Verify(o) => (Command::Verify, o),
        }
    }
}

fn field_params(o: &Opts) -> Result<FieldParams> {
    match (o.p, o.q) {
        (Some(p), q) => {
            let fp = FieldParams::new(p, o.f, o.e)?;
            match q {
                Some(q) if q != fp.q() => Err(LtvError::Config(format!(
                    "--q {q} does not match p^f = {}^{} = {}",
                    p,
                    o.f,
                    fp.q()
                ))),
                _ => Ok(fp),
            }
        }
        (None, Some(q)) => {
            let fp = FieldParams::with_q(q)?;
            if o.f != 1 && o.f != fp.f() {
                return Err(LtvError::Config(format!("--f {} does not match q = {q}", o.f)));
            }
            FieldParams::new(fp.p(), fp.f(), o.e)
        }
        (None, None) => Err(LtvError::Config("one of --p or --q is required".into())),
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var(THREADS_ENV) else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| LtvError::Config(format!("{THREADS_ENV}={raw} is not a positive integer")))?;
    // A pool may already exist when called more than once in a process.
    let _ = rayon::ThreadPoolBuilder::new().num_threads(n).build_global();
    Ok(())
}

fn build(cmd: Command, o: &Opts) -> Result<Certificate> {
    let fp = field_params(o)?;
    let tier = if o.tier == 2 { Tier::Slow } else { Tier::Fast };
    let params = SuiteParams {
        fp,
        max_n: o.max_n,
        disc_s: o.disc_s,
        tier,
    };
    validate(cmd, &params)?;
    let start = Instant::now();
    let section = run_command(cmd, &params)?;
    Ok(Certificate {
        params: CertParams {
            command: cmd.name().into(),
            p: fp.p(),
            f: fp.f(),
            e: fp.e(),
            q: fp.q(),
            max_n: o.max_n.unwrap_or(cmd.default_max_n(fp.q())),
            disc_s: o.disc_s,
            tier: tier.number(),
        },
        checks: section.checks,
        table: section.table,
        total_runtime: start.elapsed(),
    })
}

fn emit(cert: &Certificate, o: &Opts) -> Result<()> {
    let text = match o.format {
        Format::Json => cert.to_json(),
        Format::Csv => cert.to_csv()?,
    };
    let io = |e: std::io::Error| LtvError::Config(format!("cannot write output: {e}"));
    match &o.out {
        Some(path) => std::fs::write(path, text).map_err(io),
        None => std::io::stdout().lock().write_all(text.as_bytes()).map_err(io),
    }
}

/// Parses `argv` (including the program name), runs the subcommand and
/// returns the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => EXIT_PASS,
                _ => EXIT_CONFIG,
            };
        }
    };
    if let Err(e) = configure_threads() {
        eprintln!("ltv: {e}");
        return EXIT_CONFIG;
    }
    let (cmd, opts) = cli.command.split();
    let result = build(cmd, &opts).and_then(|cert| emit(&cert, &opts).map(|_| cert.exit_code()));
    match result {
        Ok(code) => code,
        Err(e) => {
            eprintln!("ltv: {e}");
            EXIT_CONFIG
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn opts(args: &[&str]) -> Opts {
        let mut argv = vec!["ltv", "coeffs"];
        argv.extend(args);
        match Cli::try_parse_from(argv).unwrap().command {
            Sub::Coeffs(o) => o,
            _ => unreachable!(),
        }
    }

    #[test]
    fn field_params_from_flags() {
        assert_eq!(field_params(&opts(&["--q", "9"])).unwrap().p(), 3);
        assert_eq!(field_params(&opts(&["--p", "3", "--f", "2"])).unwrap().q(), 9);
        assert!(field_params(&opts(&["--p", "3", "--q", "4"])).is_err());
        assert!(field_params(&opts(&["--p", "4"])).is_err());
        assert!(field_params(&opts(&[])).is_err());
        assert!(field_params(&opts(&["--q", "6"])).is_err());
    }

    #[test]
    fn exit_codes_for_bad_input() {
        assert_eq!(run(["ltv", "coeffs", "--bogus"]), EXIT_CONFIG);
        assert_eq!(run(["ltv", "coeffs", "--p", "6"]), EXIT_CONFIG);
        assert_eq!(run(["ltv", "action", "--q", "2", "--max-n", "1000"]), EXIT_CONFIG);
        assert_eq!(run(["ltv", "verify", "--q", "2", "--tier", "3"]), EXIT_CONFIG);
    }
}
