//! Command-line front end for `sqdigits`: argument parsing, dispatch and
//! output. Every command yields a [`report::Report`] that is rendered in the
//! format chosen by `--format`.

pub mod commands;
pub mod error;
pub mod render;
pub mod report;
pub mod suites;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use sqdigits::TableId;

use commands::{Family, IdentityArg, KindArg, SignArg, VariantArg};
use error::CliResult;
use render::Format;
use report::Report;
use suites::{Suite, SuiteConfig};

#[derive(Debug, Parser)]
#[command(name = "sqdigits", version, about = "Exact dynamics of the base-b sum of squared digits")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct Global {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Largest base accepted for exhaustive work
    #[arg(long, global = true, default_value_t = 5000)]
    pub max_base: u64,
    /// Worker threads for verify (0 = one per core)
    #[arg(long, global = true, default_value_t = 0)]
    pub jobs: usize,
    /// Seed for sampled parameters in verify
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the report here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Iterate S_b from n until the orbit closes
    Orbit {
        #[arg(long)]
        n: BigInt,
        #[arg(long)]
        base: BigInt,
    },
    /// All fixed points and cycles of one base
    Classify {
        #[arg(long)]
        base: u64,
    },
    /// Run a theorem suite
    Verify {
        #[arg(long, value_enum, default_value_t = Suite::All)]
        suite: Suite,
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        max_k: Option<u64>,
    },
    /// Regenerate a table and diff it against its fixture
    Tables {
        /// table1..table5 or base12; all tables when omitted
        #[arg(long)]
        which: Option<TableId>,
    },
    /// Companion-base constructions
    Companion {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        m: Option<i64>,
        #[arg(long, default_value_t = 0)]
        k: i64,
    },
    /// Orbits of the index-pair maps ψ±, optionally with the S_b conjugacy
    Psi {
        #[arg(long, value_enum)]
        sign: SignArg,
        /// Odd N
        #[arg(long)]
        total: usize,
        /// Check conjugacy with S_b at this k
        #[arg(long)]
        k: Option<u64>,
    },
    /// Pell polynomial constructions
    #[command(subcommand)]
    Pell(PellCommand),
}

#[derive(Debug, Subcommand)]
pub enum PellCommand {
    /// p_0 .. p_n, optionally evaluated at x
    Poly {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: Option<BigInt>,
    },
    /// Symbolic Pell cycle, arithmetic when k ≠ 0
    Cycle {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = BigInt::from(0))]
        k: BigInt,
        #[arg(long)]
        x: Option<BigInt>,
    },
    /// Pell fixed-point families
    Fixed {
        #[arg(long, value_enum)]
        variant: VariantArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        x: Option<BigInt>,
    },
    /// Pell polynomial identities as exact residuals
    Identity {
        #[arg(long, value_enum)]
        name: IdentityArg,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 0)]
        r: usize,
        #[arg(long, default_value_t = 0)]
        s: usize,
    },
}

pub fn execute(cli: &Cli) -> CliResult<Report> {
    let g = &cli.global;
    match &cli.command {
        Command::Orbit { n, base } => commands::orbit_cmd(n, base, g.max_base),
        Command::Classify { base } => commands::classify_cmd(*base, g.max_base),
        Command::Verify { suite, max_n, max_k } => suites::run(
            *suite,
            SuiteConfig {
                max_n: *max_n,
                max_k: *max_k,
                seed: g.seed,
                jobs: g.jobs,
            },
        ),
        Command::Tables { which } => commands::tables_cmd(*which),
        Command::Companion { family, n, m, k } => commands::companion_cmd(*family, *n, *m, *k),
        Command::Psi { sign, total, k } => commands::psi_cmd(*sign, *total, *k),
        Command::Pell(p) => match p {
            PellCommand::Poly { n, x } => commands::pell_poly_cmd(*n, x.as_ref()),
            PellCommand::Cycle { kind, n, k, x } => commands::pell_cycle_cmd(*kind, *n, k, x.as_ref()),
            PellCommand::Fixed { variant, n, x } => commands::pell_fixed_cmd(*variant, *n, x.as_ref()),
            PellCommand::Identity { name, n, r, s } => commands::pell_identity_cmd(*name, *n, *r, *s),
        },
    }
}
