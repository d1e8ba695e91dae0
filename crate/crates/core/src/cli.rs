//! Command-line front end. `run` parses arguments, writes to the chosen
//! sink and returns the process exit code: 0 success, 1 verification or
//! internal failure, 2 usage error.

use crate::asymptotics::{
    log_gbar_expansion, log_hyperfac_expansion, log_superfac_expansion, ExpansionResult, LnTable,
};
use crate::delange::delange_grid;
use crate::error::Error;
use crate::exact::{binomial_product_capped, ExactCap};
use crate::hp::Precision;
use crate::orders::{comparison_row, nu_bilinear, nu_digitsum, ord_gbar, OrderDecomposition};
use crate::primestats::{chebyshev_lower_bound, factorization_identity, is_prime, ord_profile, pnt_residual, sieve};
use crate::radix::Base;
use crate::verify::{run_suite, scaled_order, SUITES};
use clap::{Parser, Subcommand, ValueEnum};
use std::fmt;
use std::io::{self, Write};
use std::path::PathBuf;

#[derive(Parser, Debug)]
#[command(name = "gbar", version, about = "Products of binomial coefficients: prime orders, digit sums, asymptotics")]
struct Cli {
    /// Write output here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Kind {
    Gbar,
    Superfac,
    Hyperfac,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Ḡ_n in decimal, optionally with its prime factorization.
    Gbar {
        #[arg(value_name = "N")]
        n_pos: Option<u64>,
        #[arg(long = "n", conflicts_with = "n_pos")]
        n_flag: Option<u64>,
        #[arg(long)]
        factor: bool,
    },
    /// ord_p(Ḡ_n) by all three formulas.
    Ord {
        #[arg(long)]
        p: u64,
        #[arg(long)]
        n: u64,
    },
    /// ν_b and ν_b* for any base b >= 2, at one n or for 1..=max.
    Nu {
        #[arg(long)]
        b: u64,
        #[arg(long, required_unless_present = "max", conflicts_with = "max")]
        n: Option<u64>,
        #[arg(long)]
        max: Option<u64>,
    },
    /// Term-by-term comparison of the three order formulas.
    Table {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 16)]
        max: u64,
    },
    /// ord_p(Ḡ_n) for n = 1..=max, or scaled by (1/2) n log_p n from n = 2.
    Series {
        #[arg(long, default_value_t = 2)]
        p: u64,
        #[arg(long, default_value_t = 1023)]
        max: u64,
        #[arg(long)]
        scaled: bool,
    },
    /// Grid of (x, f_b(x)) for the periodic digit-sum function.
    Delange {
        #[arg(long, default_value_t = 2)]
        b: u64,
        #[arg(long, default_value_t = 4096)]
        grid: usize,
    },
    /// Asymptotic expansion terms, the exact value and the residual.
    Asym {
        #[arg(long)]
        n: u64,
        #[arg(long, default_value_t = 4)]
        order: usize,
        #[arg(long, value_enum, default_value_t = Kind::Gbar)]
        kind: Kind,
    },
    /// Prime counting against Ḡ_n: one report, a range, or per-prime orders.
    Primes {
        #[arg(long, required_unless_present = "max", conflicts_with = "max")]
        n: Option<u64>,
        #[arg(long)]
        max: Option<u64>,
        #[arg(long, requires = "n")]
        profile: bool,
    },
    /// Run a named invariant suite (`list` prints the names, `all` runs every one).
    Verify {
        #[arg(long)]
        suite: String,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failed(String),
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(m) | CliError::Failed(m) => f.write_str(m),
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Inconsistent(_) | Error::Overflow(_) => CliError::Failed(e.to_string()),
            _ => CliError::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

type CliResult<T> = std::result::Result<T, CliError>;

/// Real numbers in CSV: 12 significant digits, shortest round-trip text,
/// `0.0` for zero.
pub fn fmt_real(v: f64) -> String {
    if v == 0.0 {
        return "0.0".to_string();
    }
    let rounded: f64 = format!("{v:.11e}").parse().expect("formatted float parses");
    format!("{rounded:?}")
}

fn prime(p: u64) -> CliResult<Base> {
    if !is_prime(p) {
        return Err(CliError::Usage(format!("--p {p} is not prime")));
    }
    Ok(Base::new(p)?)
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = e.exit_code();
            let _ = write!(stderr, "{}", e.render());
            return code;
        }
    };
    let mut buf = Vec::new();
    let outcome = dispatch(&cli, &mut buf);
    let written = match &cli.out {
        Some(path) => std::fs::write(path, &buf),
        None => stdout.write_all(&buf).and_then(|_| stdout.flush()),
    };
    if let Err(e) = written {
        let _ = writeln!(stderr, "error: {e}");
        return 1;
    }
    match outcome {
        Ok(()) => 0,
        Err(CliError::Usage(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            2
        }
        Err(CliError::Failed(m)) => {
            let _ = writeln!(stderr, "error: {m}");
            1
        }
    }
}

fn dispatch(cli: &Cli, out: &mut Vec<u8>) -> CliResult<()> {
    let cap = ExactCap::from_env()?;
    let fmt = cli.format;
    match &cli.command {
        Command::Gbar { n_pos, n_flag, factor } => {
            let n = n_pos
                .or(*n_flag)
                .ok_or_else(|| CliError::Usage("gbar needs N".into()))?;
            cmd_gbar(n, *factor, cap, out)
        }
        Command::Ord { p, n } => cmd_ord(*n, prime(*p)?, fmt.unwrap_or(Format::Text), out),
        Command::Nu { b, n, max } => cmd_nu(Base::new(*b)?, *n, *max, fmt, out),
        Command::Table { p, max } => cmd_table(prime(*p)?, *max, fmt.unwrap_or(Format::Csv), out),
        Command::Series { p, max, scaled } => cmd_series(prime(*p)?, *max, *scaled, fmt.unwrap_or(Format::Csv), out),
        Command::Delange { b, grid } => cmd_delange(Base::new(*b)?, *grid, fmt.unwrap_or(Format::Csv), out),
        Command::Asym { n, order, kind } => cmd_asym(*n, *order, *kind, cap, fmt.unwrap_or(Format::Text), out),
        Command::Primes { n, max, profile } => cmd_primes(*n, *max, *profile, cap, fmt, out),
        Command::Verify { suite } => cmd_verify(suite, out),
    }
}

fn cmd_gbar(n: u64, factor: bool, cap: ExactCap, out: &mut Vec<u8>) -> CliResult<()> {
    if factor {
        writeln!(out, "{}", factorization_identity(n, cap)?.display())?;
    } else {
        writeln!(out, "{}", binomial_product_capped(n, cap)?)?;
    }
    Ok(())
}

fn cmd_ord(n: u64, p: Base, fmt: Format, out: &mut Vec<u8>) -> CliResult<()> {
    let row = comparison_row(n, p)?;
    let decs = [row.parts, row.digit_sum, row.bilinear];
    match fmt {
        Format::Csv => {
            writeln!(out, "formula,s_plus,s_minus,value")?;
            for d in decs {
                writeln!(out, "{},{},{},{}", d.formula, d.s_plus_display(), d.s_minus_display(), d.value)?;
            }
        }
        Format::Text => {
            writeln!(out, "ord_{p}(Ḡ_{n}) = {}", row.value())?;
            for d in decs {
                writeln!(out, "  {:<10} {} - {}", d.formula, d.s_plus_display(), d.s_minus_display())?;
            }
        }
    }
    Ok(())
}

fn cmd_nu(b: Base, n: Option<u64>, max: Option<u64>, fmt: Option<Format>, out: &mut Vec<u8>) -> CliResult<()> {
    let pair = |n: u64| -> CliResult<(u128, u128)> {
        Ok((nu_digitsum(n, b)?.value, nu_bilinear(n, b)?.value))
    };
    if let Some(n) = n {
        let (nu, star) = if n == 0 { (0, 0) } else { pair(n)? };
        match fmt.unwrap_or(Format::Text) {
            Format::Csv => writeln!(out, "n,nu,nu_star\n{n},{nu},{star}")?,
            Format::Text => writeln!(out, "nu_{b}(Ḡ_{n}) = {nu}\nnu*_{b}(Ḡ_{n}) = {star}")?,
        }
    } else {
        let max = max.unwrap_or(0);
        let csv = fmt.unwrap_or(Format::Csv) == Format::Csv;
        writeln!(out, "{}", if csv { "n,nu,nu_star" } else { "n nu nu_star" })?;
        for n in 1..=max {
            let (nu, star) = pair(n)?;
            let sep = if csv { "," } else { " " };
            writeln!(out, "{n}{sep}{nu}{sep}{star}")?;
        }
    }
    Ok(())
}

fn table_cells(n: u64, p: Base) -> CliResult<[String; 8]> {
    let row = comparison_row(n, p)?;
    let d = |x: &OrderDecomposition| (x.s_plus_display(), x.s_minus_display());
    let (a, b) = d(&row.parts);
    let (c, e) = d(&row.digit_sum);
    let (f, g) = d(&row.bilinear);
    Ok([n.to_string(), a, b, c, e, f, g, row.value().to_string()])
}

fn cmd_table(p: Base, max: u64, fmt: Format, out: &mut Vec<u8>) -> CliResult<()> {
    let header = ["n", "ord_D", "ord_N", "s2_plus", "s2_minus", "s3_plus", "s3_minus", "ord"];
    let rows = (1..=max).map(|n| table_cells(n, p)).collect::<CliResult<Vec<_>>>()?;
    match fmt {
        Format::Csv => {
            writeln!(out, "{}", header.join(","))?;
            for r in &rows {
                writeln!(out, "{}", r.join(","))?;
            }
        }
        Format::Text => {
            let mut widths = header.map(str::len);
            for r in &rows {
                for (w, c) in widths.iter_mut().zip(r) {
                    *w = (*w).max(c.len());
                }
            }
            let line = |cells: Vec<&str>| {
                cells
                    .iter()
                    .zip(widths)
                    .map(|(c, w)| format!("{c:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(header.to_vec()))?;
            for r in &rows {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect()))?;
            }
        }
    }
    Ok(())
}

fn cmd_series(p: Base, max: u64, scaled: bool, fmt: Format, out: &mut Vec<u8>) -> CliResult<()> {
    let sep = if fmt == Format::Csv { "," } else { " " };
    writeln!(out, "n{sep}value")?;
    if !scaled {
        for n in 1..=max {
            writeln!(out, "{n}{sep}{}", ord_gbar(n, p)?)?;
        }
        return Ok(());
    }
    let mut outside = Vec::new();
    for n in 2..=max {
        let v = scaled_order(n, p)?;
        if !(0.0..2.0).contains(&v) {
            outside.push(n);
        }
        writeln!(out, "{n}{sep}{}", fmt_real(v))?;
    }
    if !outside.is_empty() {
        return Err(CliError::Failed(format!("scaled values outside [0, 2) at n = {outside:?}")));
    }
    Ok(())
}

fn cmd_delange(b: Base, grid: usize, fmt: Format, out: &mut Vec<u8>) -> CliResult<()> {
    let sep = if fmt == Format::Csv { "," } else { " " };
    writeln!(out, "x{sep}f")?;
    for (x, f) in delange_grid(b, grid)? {
        writeln!(out, "{}{sep}{}", fmt_real(x), fmt_real(f))?;
    }
    Ok(())
}

fn cmd_asym(n: u64, order: usize, kind: Kind, cap: ExactCap, fmt: Format, out: &mut Vec<u8>) -> CliResult<()> {
    let prec = Precision::default();
    let (name, exp): (&str, ExpansionResult) = match kind {
        Kind::Gbar => ("log Ḡ_n", log_gbar_expansion(n, order, prec)?),
        Kind::Superfac => ("log N*_n", log_superfac_expansion(n, order, prec)?),
        Kind::Hyperfac => ("log D*_n", log_hyperfac_expansion(n, order, prec)?),
    };
    let exact = (n <= cap.0).then(|| {
        let t = LnTable::new(n, prec);
        match kind {
            Kind::Gbar => t.log_gbar(n),
            Kind::Superfac => t.log_superfactorial(n),
            Kind::Hyperfac => t.log_hyperfactorial(n),
        }
    });
    let digits = 30;
    match fmt {
        Format::Csv => {
            writeln!(out, "term,value")?;
            for t in &exp.terms {
                writeln!(out, "\"{}\",{}", t.label, t.value.to_fixed_string(digits))?;
            }
            writeln!(out, "expansion,{}", exp.value.to_fixed_string(digits))?;
            if let Some(e) = &exact {
                writeln!(out, "exact,{}", e.to_fixed_string(digits))?;
                writeln!(out, "residual,{}", fmt_real((e - &exp.value).to_f64()))?;
            }
        }
        Format::Text => {
            writeln!(out, "{name} at n = {n}, order {order}")?;
            let width = exp.terms.iter().map(|t| t.label.chars().count()).max().unwrap_or(0);
            for t in &exp.terms {
                let pad = width - t.label.chars().count();
                writeln!(out, "  {}{}  {}", t.label, " ".repeat(pad), t.value.to_fixed_string(digits))?;
            }
            writeln!(out, "expansion  {}", exp.value.to_fixed_string(digits))?;
            match &exact {
                Some(e) => {
                    writeln!(out, "exact      {}", e.to_fixed_string(digits))?;
                    writeln!(out, "residual   {:.6e}", (e - &exp.value).to_f64())?;
                }
                None => writeln!(out, "exact      (n above the exact cap {})", cap.0)?,
            }
        }
    }
    Ok(())
}

fn cmd_primes(
    n: Option<u64>,
    max: Option<u64>,
    profile: bool,
    cap: ExactCap,
    fmt: Option<Format>,
    out: &mut Vec<u8>,
) -> CliResult<()> {
    if let Some(n) = n {
        if profile {
            writeln!(out, "p,ord,scaled")?;
            for r in ord_profile(n)? {
                writeln!(out, "{},{},{}", r.p, r.ord, fmt_real(r.scaled))?;
            }
            return Ok(());
        }
        let table = sieve(n.max(2))?;
        let r = chebyshev_lower_bound(n, &table)?;
        let resid = pnt_residual(n, &table, cap)?;
        match fmt.unwrap_or(Format::Text) {
            Format::Csv => {
                writeln!(out, "n,pi,bound,ok,log_gbar,lower_chain,upper_chain,pnt_residual")?;
                writeln!(
                    out,
                    "{n},{},{},{},{},{},{},{}",
                    r.pi,
                    fmt_real(r.bound),
                    r.ok,
                    fmt_real(r.log_gbar),
                    r.lower_chain,
                    r.upper_chain,
                    fmt_real(resid)
                )?;
            }
            Format::Text => {
                writeln!(out, "pi({n}) = {}", r.pi)?;
                writeln!(out, "n/(2 log n) - 1/2 = {} ({})", fmt_real(r.bound), holds(r.ok))?;
                writeln!(out, "log Ḡ_n = {}", fmt_real(r.log_gbar))?;
                writeln!(out, "log Ḡ_n >= n^2/2 - (n/2) log n: {}", holds(r.lower_chain))?;
                writeln!(out, "log Ḡ_n <= pi(n) n log n: {}", holds(r.upper_chain))?;
                writeln!(out, "(log Ḡ_n - pi(n) n log n / 2) / n^2 = {}", fmt_real(resid))?;
            }
        }
        return Ok(());
    }
    let max = max.unwrap_or(2);
    let table = sieve(max.max(2))?;
    let prec = Precision::default();
    let exact_logs = LnTable::new(max.min(cap.0), prec).log_gbar_sweep();
    writeln!(out, "n,pi,bound,pnt_residual")?;
    for n in 2..=max {
        let log_gbar = match exact_logs.get(n as usize) {
            Some(v) => v.to_f64(),
            None => log_gbar_expansion(n, 4, prec)?.value.to_f64(),
        };
        let nf = n as f64;
        let pi = table.pi(n);
        let resid = (log_gbar - 0.5 * pi as f64 * nf * nf.ln()) / (nf * nf);
        writeln!(out, "{n},{pi},{},{}", fmt_real(nf / (2.0 * nf.ln()) - 0.5), fmt_real(resid))?;
    }
    Ok(())
}

fn holds(ok: bool) -> &'static str {
    if ok {
        "holds"
    } else {
        "fails"
    }
}

fn cmd_verify(suite: &str, out: &mut Vec<u8>) -> CliResult<()> {
    if suite == "list" {
        for s in SUITES {
            writeln!(out, "{s}")?;
        }
        return Ok(());
    }
    let names: Vec<&str> = if suite == "all" {
        SUITES.to_vec()
    } else if SUITES.contains(&suite) {
        vec![suite]
    } else {
        return Err(CliError::Usage(format!(
            "unknown suite '{suite}'; expected one of: all, {}",
            SUITES.join(", ")
        )));
    };
    let mut failed = 0;
    for name in names {
        let report = run_suite(name)?;
        for c in &report.checks {
            let tag = if c.passed { "PASS" } else { "FAIL" };
            writeln!(out, "{tag} {}: {} ({})", report.suite, c.name, c.detail)?;
            failed += usize::from(!c.passed);
        }
    }
    if failed > 0 {
        return Err(CliError::Failed(format!("{failed} check(s) failed")));
    }
    Ok(())
}
