//! Command-line interface binding the exact q-series machinery: table
//! generation, identity verification, p-adic convergence experiments, and
//! complex zeta / l-series evaluation.

mod cmd_analytic;
mod cmd_padic;
mod cmd_table;
mod cmd_verify;
mod util;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use qeuler::sequences::FamilyTag;

use crate::util::{emit, Format};

#[derive(Parser)]
#[command(
    name = "qeuler",
    about = "Exact q-Euler/q-Bernoulli number families, identity verification, p-adic q-integral experiments, and interpolating zeta/l-series",
    version
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value = "pretty")]
    format: Format,
    /// Write output to a file instead of stdout
    #[arg(long, global = true)]
    output: Option<PathBuf>,
    /// Worker threads for verification sweeps (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,
    /// Seed recorded in structured output (sweeps are deterministic)
    #[arg(long, global = true, default_value = "0")]
    seed: u64,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum FamilyArg {
    ModifiedEuler,
    KimEuler,
    CarlitzBernoulli,
    ModifiedBernoulli,
    CarlitzXi,
    ClassicalEuler,
}

impl From<FamilyArg> for FamilyTag {
    fn from(f: FamilyArg) -> FamilyTag {
        match f {
            FamilyArg::ModifiedEuler => FamilyTag::ModifiedEuler,
            FamilyArg::KimEuler => FamilyTag::KimEuler,
            FamilyArg::CarlitzBernoulli => FamilyTag::CarlitzBernoulli,
            FamilyArg::ModifiedBernoulli => FamilyTag::ModifiedBernoulli,
            FamilyArg::CarlitzXi => FamilyTag::CarlitzXi,
            FamilyArg::ClassicalEuler => FamilyTag::ClassicalEuler,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Emit a table of exact family values, optionally with a numeric column
    Table {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long, default_value = "10")]
        n_max: usize,
        /// Evaluate numerically at this q (rational "a/b" or complex "re+imi")
        #[arg(long, allow_hyphen_values = true)]
        eval_q: Option<String>,
    },
    /// Run one identity sweep and report pass/fail with counterexamples
    Verify {
        #[arg(long, value_enum)]
        identity: cmd_verify::Identity,
        #[arg(long)]
        n_max: Option<usize>,
        #[arg(long)]
        k_max: Option<usize>,
        #[arg(long)]
        m_max: Option<usize>,
        /// Comma-separated d values (theorem11) or character moduli (char-decomp)
        #[arg(long)]
        d: Option<String>,
        /// Sample q for the numeric char-decomp check
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        #[arg(long, default_value = "1e-9")]
        tolerance: f64,
    },
    /// Finite-level Riemann sums of the p-adic q-integrals with convergence
    /// measurements
    Padic {
        #[arg(long)]
        p: u64,
        /// Rational q congruent to 1 mod p (default 1+p)
        #[arg(long, allow_hyphen_values = true)]
        q: Option<String>,
        /// Family integrand q^{wx} [x]_q^n
        #[arg(long, value_enum)]
        family: Option<FamilyArg>,
        #[arg(long, default_value = "0")]
        n: usize,
        /// Monomial integrand kind (with --j)
        #[arg(long, value_enum)]
        kind: Option<cmd_padic::Kind>,
        /// Monomial exponent j for f(x) = q^{jx}
        #[arg(long, allow_hyphen_values = true)]
        j: Option<i64>,
        /// Inclusive level range "lo..hi"
        #[arg(long, default_value = "1..4")]
        levels: String,
        /// Digits of working precision
        #[arg(long, default_value = "30")]
        precision: u32,
    },
    /// Evaluate the interpolating q-zeta function on the complex plane
    Zeta {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, default_value = "0", allow_hyphen_values = true)]
        x: f64,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "1e-12")]
        tolerance: f64,
        #[arg(long, default_value = "20000")]
        max_terms: usize,
    },
    /// Evaluate the l-series attached to a Dirichlet character
    Lseries {
        #[arg(long)]
        modulus: u64,
        #[arg(long, default_value = "0")]
        char_index: u64,
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        s: String,
        #[arg(long, default_value = "1e-12")]
        tolerance: f64,
        #[arg(long, default_value = "20000")]
        max_terms: usize,
    },
}

fn run(cli: &Cli) -> anyhow::Result<(String, i32)> {
    match &cli.command {
        Command::Table {
            family,
            n_max,
            eval_q,
        } => cmd_table::run(&cmd_table::TableArgs {
            family: (*family).into(),
            n_max: *n_max,
            eval_q: eval_q.clone(),
            format: cli.format,
            seed: cli.seed,
        }),
        Command::Verify {
            identity,
            n_max,
            k_max,
            m_max,
            d,
            q,
            tolerance,
        } => {
            let d = match d {
                Some(s) => Some(util::parse_u32_list(s)?),
                None => None,
            };
            cmd_verify::run(&cmd_verify::VerifyArgs {
                identity: *identity,
                n_max: *n_max,
                k_max: *k_max,
                m_max: *m_max,
                d,
                q: q.clone(),
                tolerance: *tolerance,
                format: cli.format,
                seed: cli.seed,
            })
        }
        Command::Padic {
            p,
            q,
            family,
            n,
            kind,
            j,
            levels,
            precision,
        } => cmd_padic::run(&cmd_padic::PadicArgs {
            p: *p,
            q: q.clone(),
            family: family.map(Into::into),
            n: *n,
            kind: *kind,
            exponent: *j,
            levels: levels.clone(),
            precision: *precision,
            format: cli.format,
            seed: cli.seed,
        }),
        Command::Zeta {
            q,
            x,
            s,
            tolerance,
            max_terms,
        } => cmd_analytic::run_zeta(&cmd_analytic::ZetaArgs {
            q: q.clone(),
            x: *x,
            s: s.clone(),
            tolerance: *tolerance,
            max_terms: *max_terms,
            format: cli.format,
            seed: cli.seed,
        }),
        Command::Lseries {
            modulus,
            char_index,
            q,
            s,
            tolerance,
            max_terms,
        } => cmd_analytic::run_lseries(&cmd_analytic::LSeriesArgs {
            modulus: *modulus,
            char_index: *char_index,
            q: q.clone(),
            s: s.clone(),
            tolerance: *tolerance,
            max_terms: *max_terms,
            format: cli.format,
            seed: cli.seed,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        // Ignore the error if a pool already exists (e.g. repeated init in
        // tests); sweeps stay deterministic regardless of thread count.
        let _ = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global();
    }
    match run(&cli) {
        Ok((content, code)) => {
            if let Err(e) = emit(cli.output.as_deref(), &content) {
                eprintln!("error: {e:#}");
                return ExitCode::from(2);
            }
            ExitCode::from(code as u8)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
