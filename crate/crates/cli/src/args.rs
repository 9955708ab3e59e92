use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Debug, Parser)]
#[command(
    name = "ginicor",
    version,
    about = "Gini and distance correlation between numerical features and a categorical label"
)]
pub struct Cli {
    /// Worker threads for parallel kernels (0 = one per core).
    #[arg(long, global = true, default_value_t = 0)]
    pub threads: usize,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,

    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Gini correlation and covariance.
    Gcor(GcorArgs),
    /// Distance covariance and correlation under the 0/1 label metric.
    Dcor(DcorArgs),
    /// Pearson R² between features and label (between-class share of variance).
    R2(DataArgs),
    /// Jackknife confidence interval for the Gini correlation.
    Ci(CiArgs),
    /// Permutation test of independence.
    Test(TestArgs),
    /// Rank features by univariate Gini correlation with the label.
    Screen(ScreenArgs),
    /// Closed-form population values for two-component mixtures.
    #[command(subcommand)]
    Oracle(OracleCommand),
    /// Seeded simulation studies driven by a TOML config.
    #[command(subcommand)]
    Sim(SimCommand),
}

#[derive(Debug, Clone, Args)]
pub struct DataArgs {
    /// CSV file with a header row.
    #[arg(long, required_unless_present = "dataset", conflicts_with = "dataset")]
    pub data: Option<PathBuf>,

    /// Use a bundled dataset instead of a file.
    #[arg(long, value_enum)]
    pub dataset: Option<Bundled>,

    /// Label column, by header name or 0-based index.
    #[arg(long)]
    pub label: Option<String>,

    /// Feature columns (comma separated); defaults to every non-label column.
    #[arg(long, value_delimiter = ',')]
    pub features: Vec<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Bundled {
    Iris,
}

#[derive(Debug, Clone, Args)]
pub struct AlphaArg {
    /// Exponent of the Euclidean distance, in (0, 2].
    #[arg(long, default_value_t = 1.0)]
    pub alpha: f64,
}

#[derive(Debug, Clone, Args)]
pub struct KindArg {
    /// Estimator kind: U (distinct pairs) or V (all ordered pairs).
    #[arg(long, default_value = "V")]
    pub kind: String,
}

#[derive(Debug, Args)]
pub struct GcorArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub alpha: AlphaArg,
    #[command(flatten)]
    pub kind: KindArg,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Flavor {
    Unbiased,
    Plugin,
}

#[derive(Debug, Args)]
pub struct DcorArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub alpha: AlphaArg,
    #[arg(long, value_enum, default_value_t = Flavor::Unbiased)]
    pub flavor: Flavor,
}

#[derive(Debug, Args)]
pub struct CiArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub alpha: AlphaArg,
    #[command(flatten)]
    pub kind: KindArg,
    #[arg(long, default_value_t = 0.95)]
    pub level: f64,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub alpha: AlphaArg,
    /// gcor, gcor-U, gcor-V or dcor-unbiased.
    #[arg(long, default_value = "gcor-V")]
    pub statistic: String,
    /// Number of permutations.
    #[arg(long, default_value_t = 200)]
    pub m: usize,
    /// Significance level.
    #[arg(long, default_value_t = 0.05)]
    pub gamma: f64,
    /// Generated and reported when omitted.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Also report approximate power against this population correlation,
    /// using the jackknife standard error of the Gini correlation.
    #[arg(long)]
    pub power_at: Option<f64>,
}

#[derive(Debug, Args)]
pub struct ScreenArgs {
    #[command(flatten)]
    pub data: DataArgs,
    #[command(flatten)]
    pub alpha: AlphaArg,
    /// Number of features to report (default: all).
    #[arg(long)]
    pub top: Option<usize>,
}

#[derive(Debug, Subcommand)]
pub enum OracleCommand {
    /// Mixture of exponentials with scales theta and beta.
    Exp {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        theta: f64,
        #[arg(long)]
        beta: f64,
    },
    /// Normal location mixture with means 0 and a.
    NormalLocation {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        a: f64,
    },
    /// Normal scale mixture with standard deviations 1 and r.
    NormalScale {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        r: f64,
    },
}

#[derive(Debug, Subcommand)]
pub enum SimCommand {
    /// Jackknife interval coverage against the population value.
    Coverage(SimArgs),
    /// Permutation-test size and power.
    Power(SimArgs),
    /// Wall-clock timing of Gini versus distance covariance.
    Timing(SimArgs),
}

#[derive(Debug, Args)]
pub struct SimArgs {
    /// TOML experiment description.
    #[arg(long)]
    pub config: PathBuf,
    /// Overrides the config seed.
    #[arg(long)]
    pub seed: Option<u64>,
}
