//! Batch front end: each subcommand runs one or more checks and prints
//! one report per check, as JSON lines (default) or text.

pub mod checks;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use modtrace::rational::parse_rat;
use modtrace::virasoro::{central_charge, QuotientKind};
use modtrace::BigRational;
use num_complex::Complex64;

use checks::Options;
use report::Report;

#[derive(Parser, Debug)]
#[command(name = "modtrace", version, about = "Exact trace-function computations for Virasoro minimal models")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Number of series coefficients.
    #[arg(long, global = true)]
    terms: Option<usize>,
    /// Weight bound W for the relation search (default h + 8).
    #[arg(long, global = true, value_parser = parse_q)]
    weight_bound: Option<BigRational>,
    /// Largest ODE order tried.
    #[arg(long, global = true)]
    max_order: Option<usize>,
    /// Sample point a+bi in the upper half-plane, as `a,b`. Repeatable.
    #[arg(long = "tau", global = true, value_parser = parse_tau, allow_hyphen_values = true)]
    taus: Vec<Complex64>,
    #[arg(long, global = true, conflicts_with = "text")]
    json: bool,
    #[arg(long, global = true)]
    text: bool,
    /// Directory for series cache files.
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
#[command(group(ArgGroup::new("charge").required(true).args(["c", "m"])))]
struct ModuleArgs {
    /// Central charge.
    #[arg(long, value_parser = parse_q)]
    c: Option<BigRational>,
    /// Minimal-model index; sets c = 1 - 6/((m+2)(m+3)).
    #[arg(long)]
    m: Option<u32>,
    /// Lowest weight.
    #[arg(long, value_parser = parse_q)]
    h: BigRational,
}

impl ModuleArgs {
    fn c(&self) -> BigRational {
        match (&self.c, self.m) {
            (Some(c), _) => c.clone(),
            (None, Some(m)) => central_charge(m),
            (None, None) => unreachable!("clap requires --c or --m"),
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Kind {
    C2,
    C2Square,
    C20,
}

impl From<Kind> for QuotientKind {
    fn from(k: Kind) -> Self {
        match k {
            Kind::C2 => QuotientKind::C2,
            Kind::C2Square => QuotientKind::C2Square,
            Kind::C20 => QuotientKind::C20,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// E_k in the (2πi)^{-k} normalization.
    Eisenstein {
        #[arg(long)]
        k: usize,
    },
    /// η^r as a q-series.
    Eta {
        #[arg(long, value_parser = parse_q, default_value = "1")]
        power: BigRational,
    },
    /// Elliptic-function, residue and mode-expansion identities.
    EllipticIdentities,
    /// Gram matrix of a Verma module level.
    Gram {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
    /// Singular vectors at one level.
    Singular {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 2)]
        level: usize,
    },
    /// Graded dimensions of the irreducible quotient.
    Dims {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 8)]
        level: usize,
    },
    /// Cofiniteness quotient dimensions.
    Cofinite {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, default_value_t = 8)]
        level: usize,
        #[arg(long, value_enum, default_value = "c20")]
        kind: Kind,
    },
    /// Zhu algebra polynomial of the vacuum minimal model.
    Zhu {
        #[arg(long)]
        m: u32,
        /// Descendant level bound (default: singular level + 4).
        #[arg(long)]
        trunc: Option<usize>,
    },
    /// Modular differential equations.
    Mde {
        #[command(subcommand)]
        action: MdeAction,
    },
    /// Numeric S/T behaviour of the trace function.
    ModularCheck {
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Verification suites.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
}

#[derive(Subcommand, Debug)]
enum MdeAction {
    /// Find the relation and the ODE.
    Derive {
        #[command(flatten)]
        module: ModuleArgs,
    },
    /// Solve the ODE at an indicial root.
    Solve {
        #[command(flatten)]
        module: ModuleArgs,
        #[arg(long, value_parser = parse_q, allow_hyphen_values = true)]
        lambda: Option<BigRational>,
    },
}

#[derive(ValueEnum, Clone, Copy, Debug)]
enum Suite {
    /// The four η-power trace functions.
    #[value(name = "section6")]
    EtaTraces,
    All,
}

fn parse_q(s: &str) -> Result<BigRational, String> {
    parse_rat(s).map_err(|e| e.to_string())
}

fn parse_tau(s: &str) -> Result<Complex64, String> {
    let (a, b) = s.split_once(',').ok_or_else(|| format!("expected a,b but got {s:?}"))?;
    let parse = |x: &str| x.trim().parse::<f64>().map_err(|e| format!("{x:?}: {e}"));
    Ok(Complex64::new(parse(a)?, parse(b)?))
}

/// Parses `args` (including the program name), runs the checks and returns
/// the exit code with the rendered output. Exit code 0 iff every check
/// passes, 1 otherwise, 2 on usage errors.
pub fn run<I, T>(args: I) -> (i32, String)
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            return (code, e.render().to_string());
        }
    };
    let opts = Options {
        terms: cli.terms,
        weight_bound: cli.weight_bound.clone(),
        max_order: cli.max_order,
        taus: cli.taus.clone(),
        cache_dir: cli.cache_dir.clone(),
    };
    let reports = dispatch(&cli.command, &opts);
    let code = if !reports.is_empty() && reports.iter().all(Report::passed) { 0 } else { 1 };
    (code, render(&reports, cli.text))
}

fn dispatch(command: &Command, opts: &Options) -> Vec<Report> {
    use checks::*;
    use report::timed;
    match command {
        Command::Eisenstein { k } => timed(|| eisenstein_check(*k, opts)),
        Command::Eta { power } => timed(|| eta_check(power, opts)),
        Command::EllipticIdentities => elliptic_checks(opts),
        Command::Gram { module, level } => timed(|| gram_check(&module.c(), &module.h, *level)),
        Command::Singular { module, level } => timed(|| singular_check(&module.c(), &module.h, *level)),
        Command::Dims { module, level } => timed(|| dims_check(&module.c(), &module.h, *level)),
        Command::Cofinite { module, level, kind } => {
            timed(|| cofinite_check(&module.c(), &module.h, (*kind).into(), *level))
        }
        Command::Zhu { m, trunc } => timed(|| zhu_check(*m, *trunc)),
        Command::Mde { action: MdeAction::Derive { module } } => timed(|| mde_derive_check(&module.c(), &module.h, opts)),
        Command::Mde { action: MdeAction::Solve { module, lambda } } => {
            timed(|| mde_solve_check(&module.c(), &module.h, lambda.as_ref(), opts))
        }
        Command::ModularCheck { module } => timed(|| modular_check(&module.c(), &module.h, opts)),
        Command::Verify { suite: Suite::EtaTraces } => eta_trace_checks(opts),
        Command::Verify { suite: Suite::All } => all_checks(opts),
    }
}

fn render(reports: &[Report], text: bool) -> String {
    let mut out = String::new();
    if text {
        for r in reports {
            out.push_str(&r.to_text());
            out.push('\n');
        }
        let passed = reports.iter().filter(|r| r.passed()).count();
        out.push_str(&format!("{passed}/{} checks passed\n", reports.len()));
    } else {
        for r in reports {
            out.push_str(&serde_json::to_string(r).expect("reports serialize"));
            out.push('\n');
        }
    }
    out
}
