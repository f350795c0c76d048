use clap::{Args, Parser, Subcommand, ValueEnum};

use ucycles::combmaps::{
    multiset_diff_params, multiset_freq_params, subset_params, MultisetBounds, Scheme,
};
use ucycles::oracle::Universe;
use ucycles::{ParamSet, Symbol};

#[derive(Debug, Parser)]
#[command(
    name = "ucycles",
    version,
    about = "Bounded-weight de Bruijn sequences and universal cycles for subsets and multisets"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Stream a universal cycle.
    Generate(GenerateArgs),
    /// Check a generated cycle against a brute-force oracle.
    Verify(VerifyArgs),
    /// Decode the window at a position of a generated cycle.
    Decode(DecodeArgs),
    /// Dump a first-non-zero cycle-joining tree.
    Tree(TreeArgs),
    /// Compare the MSR cycle with the reverse-colex necklace concatenation.
    Conjecture(ConjectureArgs),
    /// Cross-check the engines and the oracle over a parameter grid.
    Sweep(SweepArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum EngineArg {
    Grandmama,
    Msr,
    ReverseColex,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Compact,
    Delimited,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum AgainstArg {
    Words,
    FixedWeight,
    Subsets,
    MultisetsFreq,
    MultisetsDiff,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    Pcr,
    Msr,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TreeFormatArg {
    Dot,
    Json,
}

/// What to generate: raw bounded-weight words or one of the object families.
#[derive(Debug, Args)]
pub struct TargetArgs {
    /// Alphabet size.
    #[arg(long, requires_all = ["n", "w"], conflicts_with_all = ["subsets", "multisets_freq", "multisets_diff"])]
    pub t: Option<u32>,
    /// Window length.
    #[arg(long, requires = "t")]
    pub n: Option<usize>,
    /// Weight bound.
    #[arg(long, requires = "t")]
    pub w: Option<u32>,
    /// k-subsets of [N] in difference representation.
    #[arg(long, num_args = 2, value_names = ["N", "K"], conflicts_with_all = ["multisets_freq", "multisets_diff"])]
    pub subsets: Option<Vec<u32>>,
    /// k-multisets of [N] in shorthand frequency representation.
    #[arg(long, num_args = 2, value_names = ["N", "K"], conflicts_with = "multisets_diff")]
    pub multisets_freq: Option<Vec<u32>>,
    /// k-multisets of [N] in difference representation.
    #[arg(long, num_args = 2, value_names = ["N", "K"])]
    pub multisets_diff: Option<Vec<u32>>,
    /// Accept multisets with k = 1 (and n = 1 for difference strings).
    #[arg(long)]
    pub allow_small: bool,
}

#[derive(Debug, Args)]
pub struct SourceArgs {
    #[command(flatten)]
    pub target: TargetArgs,
    #[arg(long, value_enum, default_value = "grandmama")]
    pub engine: EngineArg,
    /// Start a successor-rule engine from this window (defaults to 0^n).
    /// Object families take the window in their displayed symbols.
    #[arg(long)]
    pub seed_window: Option<String>,
}

#[derive(Debug, Args)]
pub struct GenerateArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[arg(long, value_enum, default_value = "delimited")]
    pub format: FormatArg,
    /// Emit at most this many symbols.
    #[arg(long)]
    pub limit: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Universe to check against; defaults to the family being generated.
    #[arg(long, value_enum)]
    pub against: Option<AgainstArg>,
    /// Largest universe the oracle may materialize.
    #[arg(long, default_value_t = 1_000_000)]
    pub cap: u128,
    /// List every missing or duplicated member.
    #[arg(long)]
    pub full_lists: bool,
    /// Verify the sequence in this file ("-" for stdin) instead of
    /// generating one; the parameter flags still select the universe.
    #[arg(long, conflicts_with = "seed_window")]
    pub input: Option<String>,
}

#[derive(Debug, Args)]
pub struct DecodeArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    /// Zero-based starting position of the window.
    #[arg(long)]
    pub position: usize,
}

#[derive(Debug, Args)]
pub struct TreeArgs {
    #[arg(long, value_enum)]
    pub kind: KindArg,
    #[arg(long)]
    pub t: u32,
    #[arg(long)]
    pub n: usize,
    #[arg(long)]
    pub w: u32,
    #[arg(long, value_enum, default_value = "dot")]
    pub format: TreeFormatArg,
    /// Largest node count that may be materialized.
    #[arg(long, default_value_t = 1_000_000)]
    pub cap: u128,
}

#[derive(Debug, Args)]
pub struct GridArgs {
    #[arg(long, default_value_t = 6)]
    pub max_t: u32,
    #[arg(long, default_value_t = 6)]
    pub max_n: usize,
    /// Skip cells with t^n above this bound.
    #[arg(long, default_value_t = 1_000_000)]
    pub max_tn: u128,
}

#[derive(Debug, Args)]
pub struct ConjectureArgs {
    /// Check a single cell instead of sweeping.
    #[arg(long, requires_all = ["n", "w"])]
    pub t: Option<u32>,
    #[arg(long, requires = "t")]
    pub n: Option<usize>,
    #[arg(long, requires = "t")]
    pub w: Option<u32>,
    #[command(flatten)]
    pub grid: GridArgs,
    /// Print one JSON report per cell.
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub grid: GridArgs,
    /// Also compare against the generic successor over a materialized tree.
    #[arg(long)]
    pub generic: bool,
}

/// A resolved generation target.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Words(ParamSet),
    Subsets { n: u32, k: u32, params: ParamSet },
    MultisetsFreq { n: u32, k: u32, params: ParamSet },
    MultisetsDiff { n: u32, k: u32, params: ParamSet },
}

impl Target {
    pub fn params(&self) -> ParamSet {
        match *self {
            Target::Words(p) => p,
            Target::Subsets { params, .. }
            | Target::MultisetsFreq { params, .. }
            | Target::MultisetsDiff { params, .. } => params,
        }
    }

    /// Added to every symbol on output.
    pub fn shift(&self) -> Symbol {
        match self {
            Target::Subsets { .. } => 1,
            _ => 0,
        }
    }

    pub fn scheme(&self) -> Option<(Scheme, u32, u32)> {
        match *self {
            Target::Words(_) => None,
            Target::Subsets { n, k, .. } => Some((Scheme::SubsetDifference, n, k)),
            Target::MultisetsFreq { n, k, .. } => Some((Scheme::MultisetShorthandFrequency, n, k)),
            Target::MultisetsDiff { n, k, .. } => Some((Scheme::MultisetDifference, n, k)),
        }
    }

    /// The family this target naturally enumerates.
    pub fn default_universe(&self) -> Universe {
        match *self {
            Target::Words(p) => Universe::BoundedWords {
                t: p.t,
                n: p.n,
                w: p.w,
            },
            Target::Subsets { n, k, .. } => Universe::Subsets { n, k },
            Target::MultisetsFreq { n, k, .. } => Universe::MultisetsFreq { n, k },
            Target::MultisetsDiff { n, k, .. } => Universe::MultisetsDiff { n, k },
        }
    }
}

impl TargetArgs {
    pub fn resolve(&self) -> Result<Target, String> {
        let bounds = if self.allow_small {
            MultisetBounds::Relaxed
        } else {
            MultisetBounds::Strict
        };
        let pair = |v: &Vec<u32>| (v[0], v[1]);
        let lib = |e: ucycles::Error| e.to_string();
        if let (Some(t), Some(n), Some(w)) = (self.t, self.n, self.w) {
            return ParamSet::new(t, n, w).map(Target::Words).map_err(lib);
        }
        if let Some((n, k)) = self.subsets.as_ref().map(pair) {
            let params = subset_params(n, k).map_err(lib)?;
            return Ok(Target::Subsets { n, k, params });
        }
        if let Some((n, k)) = self.multisets_freq.as_ref().map(pair) {
            let params = multiset_freq_params(n, k, bounds).map_err(lib)?;
            return Ok(Target::MultisetsFreq { n, k, params });
        }
        if let Some((n, k)) = self.multisets_diff.as_ref().map(pair) {
            let params = multiset_diff_params(n, k, bounds).map_err(lib)?;
            return Ok(Target::MultisetsDiff { n, k, params });
        }
        Err(
            "one of --t/--n/--w, --subsets, --multisets-freq or --multisets-diff is required"
                .into(),
        )
    }
}
