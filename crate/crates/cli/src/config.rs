//! Command-line arguments and the resolved run configuration.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

use b0lab::multiplier::PairMode;

#[derive(Parser, Debug)]
#[command(name = "b0lab", version, about = "Bogomolov multipliers of finite p-groups")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct GlobalArgs {
    /// Prime for catalog lookups and verification.
    #[arg(long, global = true, env = "B0LAB_P")]
    pub p: Option<u32>,
    #[arg(long, global = true, env = "B0LAB_METHOD", value_enum, default_value_t = MethodArg::Tensor)]
    pub method: MethodArg,
    /// Largest group order the cochain oracle accepts.
    #[arg(long = "oracle-cap", global = true, env = "B0LAB_ORACLE_CAP", value_parser = clap::value_parser!(u64).range(1..))]
    pub oracle_cap: Option<u64>,
    /// Maximum nilpotency class explored when building the exterior square.
    #[arg(long = "class-cap", global = true, env = "B0LAB_CLASS_CAP", value_parser = clap::value_parser!(u32).range(1..))]
    pub class_cap: Option<u32>,
    #[arg(long, global = true, env = "B0LAB_PAIRS", value_enum, default_value_t = PairsArg::Full)]
    pub pairs: PairsArg,
    /// Node budget for the isoclinism search.
    #[arg(long = "search-budget", global = true, env = "B0LAB_SEARCH_BUDGET", value_parser = clap::value_parser!(u64).range(1..))]
    pub search_budget: Option<u64>,
    /// Worker threads (defaults to the number of cores).
    #[arg(long, global = true, env = "B0LAB_JOBS", value_parser = clap::value_parser!(u32).range(1..))]
    pub jobs: Option<u32>,
    /// JSON-lines result cache.
    #[arg(long, global = true, env = "B0LAB_CACHE")]
    pub cache: Option<PathBuf>,
    #[arg(long, global = true, env = "B0LAB_FORMAT", value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural data of one group.
    Group {
        #[command(subcommand)]
        cmd: GroupCmd,
    },
    /// Compute B0 of one group.
    B0 {
        /// Catalog id (`Phi10(1^5)`, `gap:28`, `abelian:2,2,1`) or pcp file.
        spec: String,
    },
    /// Check that B0 is nonzero exactly on family Phi10.
    Verify {
        /// Directory of pcp files; defaults to the built-in catalog.
        #[arg(long)]
        corpus: Option<PathBuf>,
        /// Restrict the built-in corpus to family Phi10.
        #[arg(long = "phi10-only")]
        phi10_only: bool,
    },
    /// Decide whether two groups are isoclinic.
    Isoclinism { a: String, b: String },
    /// Built-in groups.
    Catalog {
        #[command(subcommand)]
        cmd: CatalogCmd,
    },
    /// Validate pcp files and optionally write canonical copies.
    Ingest {
        /// Files or directories of `*.pcp` files.
        #[arg(required = true)]
        paths: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Emit the cache contents.
    Report,
}

#[derive(Subcommand, Debug)]
pub enum GroupCmd {
    Info { spec: String },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    List,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum MethodArg {
    Tensor,
    Oracle,
    Criteria,
    All,
}

impl MethodArg {
    pub fn as_str(self) -> &'static str {
        match self {
            MethodArg::Tensor => "tensor",
            MethodArg::Oracle => "oracle",
            MethodArg::Criteria => "criteria",
            MethodArg::All => "all",
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum PairsArg {
    Full,
    Bicyclic,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
    Csv,
}

/// Validated settings shared by all commands.
#[derive(Clone, Debug)]
pub struct RunConfig {
    pub p: Option<u32>,
    pub method: MethodArg,
    pub oracle_cap: Option<u64>,
    pub class_cap: Option<usize>,
    pub pairs: PairMode,
    pub search_budget: Option<u64>,
    pub jobs: Option<usize>,
    pub cache: Option<PathBuf>,
    pub format: Format,
}

impl From<&GlobalArgs> for RunConfig {
    fn from(a: &GlobalArgs) -> Self {
        Self {
            p: a.p,
            method: a.method,
            oracle_cap: a.oracle_cap,
            class_cap: a.class_cap.map(|c| c as usize),
            pairs: match a.pairs {
                PairsArg::Full => PairMode::Full,
                PairsArg::Bicyclic => PairMode::Bicyclic,
            },
            search_budget: a.search_budget,
            jobs: a.jobs.map(|j| j as usize),
            cache: a.cache.clone(),
            format: a.format,
        }
    }
}
