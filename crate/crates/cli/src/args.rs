use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "qgreen", version, about = "Chevalley and deformed Green presentations of U_q[osp(2n+1|2m)]")]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Args, Debug, Default, Clone)]
pub struct Global {
    /// Number of odd modes.
    #[arg(long, global = true)]
    pub m: Option<usize>,
    /// Number of even modes.
    #[arg(long, global = true)]
    pub n: Option<usize>,
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true)]
    pub degree_bound: Option<usize>,
    /// Recorded in report metadata.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// JSON file with default settings; flags override it.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Text,
    Json,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FlavorArg {
    Chevalley,
    Green,
    Classical,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    Plus,
    Minus,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum ConventionArg {
    Literal,
    Qklein,
}

#[derive(Args, Debug, Clone)]
pub struct FockArgs {
    /// Ladder length of each odd mode.
    #[arg(long)]
    pub cutoff: Option<usize>,
    /// Numeric value of v (q = v²).
    #[arg(long)]
    pub v: Option<f64>,
    #[arg(long)]
    pub tolerance: Option<f64>,
    #[arg(long, value_enum, default_value = "qklein")]
    pub convention: ConventionArg,
}

#[derive(Subcommand, Debug)]
pub enum Cmd {
    /// Print the Cartan matrix.
    Cartan,
    /// Print a deformed Green generator in Chevalley generators.
    Green {
        #[arg(long)]
        index: Option<usize>,
        #[arg(long, value_enum)]
        side: Option<SideArg>,
        /// `direct`, `rec14:J` or `split15:J`.
        #[arg(long, default_value = "direct")]
        route: String,
    },
    /// List the relations of a presentation.
    Presentation {
        #[arg(long, value_enum, default_value = "chevalley")]
        flavor: FlavorArg,
    },
    /// Reduce an expression modulo a completed presentation.
    Reduce {
        #[arg(long, value_enum, default_value = "chevalley")]
        presentation: FlavorArg,
        #[arg(long)]
        expr: String,
        /// Emit one JSON line per rewrite step before the result.
        #[arg(long)]
        trace: bool,
    },
    /// Run a verification suite.
    Verify {
        #[command(subcommand)]
        suite: Suite,
    },
    /// Build the order-1 Fock module and print its matrices.
    Rep {
        #[command(flatten)]
        fock: FockArgs,
    },
}

#[derive(Subcommand, Debug)]
pub enum Suite {
    Identities,
    GreenFromChevalley,
    ChevalleyFromGreen,
    RoundTrip,
    ClassicalLimit,
    Rep {
        /// Use the order-1 Fock module (the trivial module otherwise).
        #[arg(long)]
        fock: bool,
        #[arg(long, value_enum, default_value = "green")]
        presentation: FlavorArg,
        #[command(flatten)]
        args: FockArgs,
    },
}
