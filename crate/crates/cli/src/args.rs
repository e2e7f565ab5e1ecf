use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use clairvoyant::embed1d::{DEFAULT_EXACT_BUDGET, DEFAULT_PAIR_BUDGET};
use serde::{Deserialize, Serialize};

/// Finite-horizon experiments on clairvoyant demon problems.
#[derive(Debug, Clone, Parser, Serialize, Deserialize)]
#[command(name = "clairvoyant", version)]
pub struct Cli {
    #[command(flatten)]
    pub global: Global,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args, Serialize, Deserialize)]
pub struct Global {
    /// Master seed; replica k draws from stream k.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Monte Carlo replicas (each command has its own default).
    #[arg(long, global = true)]
    pub replicas: Option<u64>,
    /// Worker threads; 0 uses every core. Outputs do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    pub workers: usize,
    /// Data file; the run manifest goes to `<out>.manifest.json`.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
pub enum Command {
    /// One-dimensional M-embedding.
    Embed {
        #[command(subcommand)]
        cmd: EmbedCmd,
    },
    /// Scheduling two walks on {1..M}.
    Schedule {
        #[command(subcommand)]
        cmd: ScheduleCmd,
    },
    /// Compatibility of binary words.
    Compat {
        #[command(subcommand)]
        cmd: CompatCmd,
    },
    /// Two-dimensional arrays and planar lattices.
    Lattice {
        #[command(subcommand)]
        cmd: LatticeCmd,
    },
    /// Column environments and k-wise independence.
    Env {
        #[command(subcommand)]
        cmd: EnvCmd,
    },
    /// Rerun the config stored in a manifest and compare checksums.
    Replay {
        manifest: PathBuf,
    },
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
pub enum EmbedCmd {
    /// Whether v embeds in y, with a witness.
    Decide {
        #[arg(long)]
        v: String,
        #[arg(long)]
        y: String,
        #[arg(long = "M")]
        m: usize,
    },
    /// Number of embeddings of v in y.
    Count {
        #[arg(long)]
        v: String,
        #[arg(long)]
        y: String,
        #[arg(long = "M")]
        m: usize,
    },
    /// Exact P(w embeds in a fair Y of length M|w|).
    Exact {
        #[arg(long)]
        w: String,
        #[arg(long = "M")]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
        budget: u32,
    },
    /// v_0..v_n for the alternating word.
    Recursion {
        #[arg(long = "M")]
        m: u32,
        #[arg(long)]
        n: usize,
    },
    /// Characteristic roots, one row per M.
    Roots {
        #[arg(long = "M", value_delimiter = ',', required = true)]
        m: Vec<u32>,
    },
    /// Exact probability of every word of length n.
    Scan {
        #[arg(long)]
        n: usize,
        #[arg(long = "M")]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_EXACT_BUDGET)]
        budget: u32,
    },
    /// Mean and second-moment ratio of the embedding count, n = 0..n.
    Moments {
        #[arg(long)]
        n: usize,
        #[arg(long = "M")]
        m: usize,
        #[arg(long, default_value_t = DEFAULT_PAIR_BUDGET)]
        budget: u64,
    },
    /// Monte Carlo embedding probability.
    Mc {
        #[arg(long = "M")]
        m: usize,
        #[arg(long)]
        n: usize,
        /// alternating, constant, random, or an explicit 0/1 word.
        #[arg(long, default_value = "alternating")]
        word: String,
        /// Letter density of random words.
        #[arg(long = "p-x", default_value_t = 0.5)]
        p_x: f64,
        #[arg(long = "p-y", default_value_t = 0.5)]
        p_y: f64,
    },
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
pub enum ScheduleCmd {
    /// Monotone open path in one grid, given or sampled.
    Survive {
        #[arg(long = "M")]
        m: u32,
        /// Comma-separated X_0..X_n; sampled when absent.
        #[arg(long, requires = "y")]
        x: Option<String>,
        #[arg(long, requires = "x")]
        y: Option<String>,
        /// Length of sampled walks.
        #[arg(long, default_value_t = 100)]
        n: usize,
        #[arg(long)]
        depth: Option<usize>,
    },
    /// Survival probability at several depths.
    Curve {
        #[arg(long = "M")]
        m: u32,
        #[arg(long, value_delimiter = ',', required = true)]
        depths: Vec<usize>,
    },
    /// Reduction mod M of walks on {1..kM}.
    Coupling {
        #[arg(long = "M")]
        m: u32,
        #[arg(long, default_value_t = 2)]
        k: u32,
        #[arg(long, default_value_t = 50)]
        depth: usize,
    },
    /// Escape from the box with unrestricted paths.
    Undirected {
        #[arg(long = "M")]
        m: u32,
        #[arg(long)]
        n: usize,
    },
    /// Exact k-wise independence of vertex openness.
    Kwise {
        #[arg(long = "M", value_delimiter = ',', required = true)]
        m: Vec<u32>,
        /// `i,j;i,j;...`, 1-based.
        #[arg(long, conflicts_with = "window")]
        vertices: Option<String>,
        /// Every vertex of {1..w}^2.
        #[arg(long)]
        window: Option<usize>,
        #[arg(long)]
        k: usize,
    },
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
pub enum CompatCmd {
    /// Deletion witness for two words.
    Decide {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Dynamic program against exhaustive search.
    Oracle {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// Majority certificate of incompatibility.
    Cert {
        #[arg(long)]
        x: String,
        #[arg(long)]
        y: String,
    },
    /// ψ_n(p) for several horizons.
    Mc {
        #[arg(long)]
        p: f64,
        #[arg(long, value_delimiter = ',', required = true)]
        n: Vec<usize>,
        /// plain: indicator of compatibility; tilted: importance sampling
        /// at a lower density, which resolves very small ψ_n.
        #[arg(long, value_enum, default_value_t = PsiEstimator::Plain)]
        estimator: PsiEstimator,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PsiEstimator {
    Plain,
    Tilted,
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
pub enum LatticeCmd {
    /// Good-block frequency and directed block paths.
    Blocks {
        #[arg(long)]
        p: f64,
        #[arg(long = "R")]
        r: usize,
        #[arg(long, default_value_t = 100)]
        depth: usize,
    },
    /// Embed a word along a path of good blocks.
    Embed2d {
        #[arg(long)]
        p: f64,
        #[arg(long = "R")]
        r: usize,
        /// Random word length; ignored when --word is given.
        #[arg(long, default_value_t = 100)]
        len: usize,
        #[arg(long)]
        word: Option<String>,
        /// Text grid of 0/1 rows instead of a sampled field.
        #[arg(long)]
        field: Option<PathBuf>,
    },
    /// Visibility of a word along self-avoiding paths.
    Visible {
        #[arg(long, default_value = "square")]
        lattice: String,
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 21)]
        side: usize,
        /// Fixed 0/1 word; otherwise random words of --len letters.
        #[arg(long)]
        word: Option<String>,
        #[arg(long, default_value_t = 20)]
        len: usize,
        #[arg(long = "word-p", default_value_t = 0.5)]
        word_p: f64,
        /// center or any.
        #[arg(long, default_value = "center")]
        origin: String,
        #[arg(long)]
        budget: Option<u64>,
        /// Decide once on a text grid, from --at.
        #[arg(long, requires = "at")]
        field: Option<PathBuf>,
        /// `r,c`, 0-based.
        #[arg(long)]
        at: Option<String>,
    },
    /// Alternating against constant word on the triangular lattice.
    Abscan {
        #[arg(long, default_value_t = 0.5)]
        p: f64,
        #[arg(long = "box", default_value_t = 60)]
        box_size: usize,
    },
}

#[derive(Debug, Clone, Subcommand, Serialize, Deserialize)]
pub enum EnvCmd {
    /// Horizontal crossing with one random density per column.
    Column {
        /// `value:weight,...`
        #[arg(long)]
        mu: String,
        #[arg(long)]
        n: usize,
    },
    /// k-wise independence of a pmf given as CSV.
    Kwise {
        #[arg(long)]
        pmf: PathBuf,
        #[arg(long)]
        k: usize,
    },
}
