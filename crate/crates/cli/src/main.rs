//! ramdyn: exact computations for parabolic power series dynamics in
//! characteristic p — ramification numbers, iterate closed forms, sum
//! identities and Newton-polygon norms.
//!
//! Reports are flat `key=value` lines ending in `verdict=pass|fail|inconclusive`.
//! Exit codes: 0 for pass/inconclusive, 2 when a verified identity fails
//! (which indicates a bug, not bad input), 1 for usage/parse/precision
//! errors.

mod commands;
mod parse;
mod report;

use clap::{Args, Parser, Subcommand, ValueEnum};
use commands::{CliError, SeriesJob};
use ramdyn_core::ramification::Budget;
use std::process::ExitCode;

/// Per-sample seeds are derived from the master seed with splitmix64 so
/// fuzz runs are reproducible sample by sample:
/// seed(i) = splitmix64(master + i·0x9E3779B97F4A7C15).
pub fn sample_seed(master: u64, index: u64) -> u64 {
    let mut z = master
        .wrapping_add(index.wrapping_mul(0x9E37_79B9_7F4A_7C15))
        .wrapping_add(0x9E37_79B9_7F4A_7C15);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

#[derive(Parser)]
#[command(name = "ramdyn", version, about = "Exact arithmetic for parabolic power series dynamics over F_p and F_p((t))")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum RingArg {
    Fp,
    Laurent,
}

#[derive(Args)]
struct SeriesArgs {
    /// Odd prime p (3 <= p < 2^16)
    #[arg(long)]
    p: u32,
    /// Coefficient ring of the series
    #[arg(long, value_enum, default_value_t = RingArg::Fp)]
    ring: RingArg,
    /// Series literal, e.g. "z + (1+t)*z^3 + z^4"
    #[arg(long)]
    f: String,
    /// ζ-precision the literal is read at (degrees above it must not appear)
    #[arg(long, default_value_t = 32)]
    zprec: usize,
    /// t-precision for truncated Laurent tails
    #[arg(long, default_value_t = 32)]
    tprec: u32,
    /// Composition budget; default 1000000, or the RAMDYN_BUDGET env var
    #[arg(long)]
    budget: Option<u64>,
}

impl SeriesArgs {
    fn job(&self) -> SeriesJob {
        SeriesJob {
            p: self.p,
            ring: match self.ring {
                RingArg::Fp => parse::Ring::Fp,
                RingArg::Laurent => parse::Ring::Laurent,
            },
            f: self.f.clone(),
            zprec: self.zprec,
            tprec: self.tprec,
            budget: resolve_budget(self.budget),
        }
    }
}

fn resolve_budget(flag: Option<u64>) -> Budget {
    let mut b = Budget::default();
    if let Ok(v) = std::env::var("RAMDYN_BUDGET") {
        if let Ok(n) = v.parse::<u64>() {
            b.compositions = n;
        }
    }
    if let Some(n) = flag {
        b.compositions = n;
    }
    b
}

#[derive(Subcommand)]
enum Command {
    /// Lower ramification numbers i_n and leading coefficients mu_n
    Ramify {
        #[command(flatten)]
        series: SeriesArgs,
        /// Compute entries n = 0..=depth
        #[arg(long, default_value_t = 2)]
        depth: u32,
    },
    /// Classify the i_n sequence (minimally ramified / b-ramified / other)
    Classify {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value_t = 2)]
        depth: u32,
    },
    /// Closed-form iterate coefficients d, phi, alpha, beta, gamma, lambda,
    /// checked against brute-force iteration
    Thmb {
        #[command(flatten)]
        series: SeriesArgs,
        /// Iterate level (the p^n-th iterate)
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Verify the first-iterate identity: symbolically (p <= 13) or by
    /// random specialization
    Mainlemma {
        #[arg(long)]
        p: u32,
        /// Full sparse-polynomial verification at m = p (default)
        #[arg(long, conflicts_with = "fuzz")]
        symbolic: bool,
        /// Check this many random specializations against brute force
        #[arg(long)]
        fuzz: Option<u32>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Evaluate every sum family at n = p and compare with the closed-form
    /// tables
    Lemmas {
        #[arg(long)]
        p: u32,
        /// Restrict to families whose name starts with this tag
        #[arg(long)]
        family: Option<String>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Newton polygon of (f^(p^n)-z)/(f^(p^(n-1))-z): vertices, slopes,
    /// valuation buckets and the norm-bound verdict
    Newton {
        #[command(flatten)]
        series: SeriesArgs,
        #[arg(long, default_value_t = 1)]
        n: u32,
    },
    /// Reproduce a named worked example (q1, q2, remark2)
    Example {
        name: String,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Random parabolic series: closed forms vs brute force plus the
    /// 2-ramification criterion
    Fuzz {
        #[arg(long)]
        p: u32,
        /// Number of samples
        #[arg(long = "fuzz", default_value_t = 50)]
        count: u32,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        budget: Option<u64>,
    },
}

fn run(cli: Cli) -> Result<(String, u8), CliError> {
    match cli.command {
        Command::Ramify { series, depth } => commands::ramify(&series.job(), depth),
        Command::Classify { series, depth } => commands::classify(&series.job(), depth),
        Command::Thmb { series, n } => commands::thmb(&series.job(), n),
        Command::Mainlemma {
            p,
            symbolic,
            fuzz,
            seed,
            budget,
        } => commands::mainlemma(p, symbolic, fuzz, seed, &resolve_budget(budget)),
        Command::Lemmas { p, family, seed } => commands::lemmas(p, family.as_deref(), seed),
        Command::Newton { series, n } => commands::newton_cmd(&series.job(), n),
        Command::Example { name, budget } => commands::example(&name, &resolve_budget(budget)),
        Command::Fuzz {
            p,
            count,
            seed,
            budget,
        } => commands::fuzz(p, count, seed, &resolve_budget(budget)),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok((text, code)) => {
            print!("{text}");
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
