//! Seeded mixture samplers and Monte Carlo drivers for coverage, size/power
//! and timing experiments.

use std::time::Instant;

use rand::distr::weighted::WeightedIndex;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Cauchy, Distribution, Exp, Normal, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{Alpha, EstimatorKind, LabeledDataset};
use crate::dist_cor::dcov_unbiased;
use crate::error::{Error, Result};
use crate::gini_cor::gcor;
use crate::inference::{jackknife_ci, permutation_test, replicate_rng, TestStatistic};
use crate::oracles::{exp_mixture_corrs, Component, MixtureSpec, OracleDesign};

fn draw(component: &Component, rng: &mut ChaCha8Rng, out: &mut Vec<f64>) {
    match *component {
        Component::Exponential { scale } => out.push(scale * rng.sample::<f64, _>(Exp::new(1.0).unwrap())),
        Component::Normal { mean, sd } => out.push(Normal::new(mean, sd).unwrap().sample(rng)),
        Component::Cauchy { location, scale } => out.push(Cauchy::new(location, scale).unwrap().sample(rng)),
        Component::StandardMultivariateNormal { dim } => {
            out.extend((0..dim).map(|_| rng.sample::<f64, _>(StandardNormal)));
        }
    }
}

fn check_n(n: usize) -> Result<()> {
    if n < 2 {
        return Err(Error::InvalidParameter(format!(
            "sample size must be at least 2, got {n}"
        )));
    }
    Ok(())
}

fn from_draws(features: Vec<f64>, d: usize, codes: &[usize]) -> Result<LabeledDataset> {
    LabeledDataset::from_codes(features, d, codes)
}

/// Draws `n` observations: a component index from the weights, then a value
/// from that component. The component index is the label.
pub fn sample_mixture_with(spec: &MixtureSpec, n: usize, rng: &mut ChaCha8Rng) -> Result<LabeledDataset> {
    spec.validate()?;
    check_n(n)?;
    let pick =
        WeightedIndex::new(&spec.weights).map_err(|e| Error::InvalidParameter(format!("mixture weights: {e}")))?;
    let d = spec.dim();
    let mut features = Vec::with_capacity(n * d);
    let mut codes = Vec::with_capacity(n);
    for _ in 0..n {
        let k = pick.sample(rng);
        draw(&spec.components[k], rng, &mut features);
        codes.push(k);
    }
    from_draws(features, d, &codes)
}

/// [`sample_mixture_with`] from a fresh generator seeded with `seed`.
pub fn sample_mixture(spec: &MixtureSpec, n: usize, seed: u64) -> Result<LabeledDataset> {
    sample_mixture_with(spec, n, &mut ChaCha8Rng::seed_from_u64(seed))
}

/// Exact class sizes `round(n·w_k)` (the remainder goes to the last class),
/// with class membership assigned by a random permutation.
pub fn sample_stratified_with(spec: &MixtureSpec, n: usize, rng: &mut ChaCha8Rng) -> Result<LabeledDataset> {
    spec.validate()?;
    check_n(n)?;
    let k = spec.num_components();
    let mut codes = Vec::with_capacity(n);
    for (c, w) in spec.weights.iter().enumerate() {
        let size = if c + 1 == k {
            n - codes.len()
        } else {
            ((n as f64 * w).round() as usize).min(n - codes.len())
        };
        codes.extend(std::iter::repeat_n(c, size));
    }
    codes.shuffle(rng);
    let d = spec.dim();
    let mut features = Vec::with_capacity(n * d);
    for &c in &codes {
        draw(&spec.components[c], rng, &mut features);
    }
    from_draws(features, d, &codes)
}

/// Tabular experiment output.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ExperimentResult {
    pub design: String,
    pub reps: usize,
    pub seed: u64,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Cell {
    Text(String),
    Int(u64),
    Real(f64),
}

impl Cell {
    pub fn as_real(&self) -> Option<f64> {
        match *self {
            Cell::Real(v) => Some(v),
            Cell::Int(v) => Some(v as f64),
            Cell::Text(_) => None,
        }
    }

    fn render(&self, digits: usize) -> String {
        match self {
            Cell::Text(s) => s.clone(),
            Cell::Int(v) => v.to_string(),
            Cell::Real(v) => format_significant(*v, digits),
        }
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}
impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}
impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as u64)
    }
}
impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
    }
}

/// Rounds to `digits` significant digits and prints the shortest decimal
/// that round-trips the rounded value.
pub fn format_significant(v: f64, digits: usize) -> String {
    round_significant(v, digits).to_string()
}

pub fn round_significant(v: f64, digits: usize) -> f64 {
    if v == 0.0 || !v.is_finite() {
        return v;
    }
    let s = format!("{:.*e}", digits.saturating_sub(1), v);
    s.parse().unwrap_or(v)
}

impl ExperimentResult {
    fn new(design: impl Into<String>, reps: usize, seed: u64, columns: &[&str]) -> Self {
        ExperimentResult {
            design: design.into(),
            reps,
            seed,
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    /// Value of column `name` in row `row`, when numeric.
    pub fn real(&self, row: usize, name: &str) -> Option<f64> {
        self.rows.get(row)?.get(self.column(name)?)?.as_real()
    }

    /// CSV with numbers at `digits` significant digits.
    pub fn to_csv(&self, digits: usize) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.render(digits)))?;
        }
        let bytes = w.into_inner().map_err(|e| Error::Csv(e.to_string()))?;
        Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
    }
}

/// Binomial standard error of a proportion.
pub fn binomial_se(rate: f64, reps: usize) -> f64 {
    if reps == 0 {
        return f64::NAN;
    }
    (rate * (1.0 - rate) / reps as f64).sqrt()
}

fn describe(spec: &MixtureSpec) -> String {
    let parts: Vec<String> = spec
        .components
        .iter()
        .zip(&spec.weights)
        .map(|(c, w)| {
            let body = match *c {
                Component::Exponential { scale } => format!("Exp({scale})"),
                Component::Normal { mean, sd } => format!("N({mean},{sd}^2)"),
                Component::Cauchy { location, scale } => format!("Cauchy({location},{scale})"),
                Component::StandardMultivariateNormal { dim } => format!("N_{dim}(0,I)"),
            };
            format!("{}*{body}", round_significant(*w, 6))
        })
        .collect();
    parts.join(" + ")
}

/// Options for [`coverage_experiment`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoverageOptions {
    pub n: usize,
    pub level: f64,
    pub reps: usize,
    pub alpha: Alpha,
    pub kind: EstimatorKind,
    pub seed: u64,
    /// Also report coverage of the distance correlation (exponential
    /// mixtures only), using a jackknife on the unbiased estimator.
    pub include_dcor: bool,
}

fn dcor_jackknife(ds: &LabeledDataset, alpha: Alpha, level: f64) -> Result<(f64, f64, f64)> {
    let est = dcov_unbiased(ds, alpha)?.dcor;
    let n = ds.n();
    let loo = (0..n)
        .map(|i| {
            let rows: Vec<usize> = (0..n).filter(|&j| j != i).collect();
            dcov_unbiased(&ds.subset(&rows)?, alpha).map(|r| r.dcor)
        })
        .collect::<Result<Vec<f64>>>()?;
    let nf = n as f64;
    let mean = loo.iter().sum::<f64>() / nf;
    let se = ((nf - 1.0) / nf * loo.iter().map(|v| (v - mean).powi(2)).sum::<f64>()).sqrt();
    let z = crate::oracles::numeric::std_normal_quantile(1.0 - (1.0 - level) / 2.0);
    Ok((est, (est - z * se).clamp(0.0, 1.0), (est + z * se).clamp(0.0, 1.0)))
}

/// Proportion of jackknife intervals containing the population Gini
/// correlation. Needs a closed-form design at `α = 1`.
pub fn coverage_experiment(spec: &MixtureSpec, opts: &CoverageOptions) -> Result<ExperimentResult> {
    let design = OracleDesign::detect(spec)?;
    if !opts.alpha.is_one() {
        return Err(Error::NoOracle(format!(
            "population values exist only for alpha = 1, got {}",
            opts.alpha
        )));
    }
    let truth = design.rho_g()?;
    let dcor_truth = match design {
        OracleDesign::ExpMixture { p, theta, beta } if opts.include_dcor => {
            Some(exp_mixture_corrs(p, theta, beta)?.rho_d)
        }
        _ => None,
    };
    let mut result = ExperimentResult::new(
        describe(spec),
        opts.reps,
        opts.seed,
        &[
            "statistic",
            "truth",
            "n",
            "level",
            "reps",
            "covered",
            "coverage",
            "se",
            "mean_estimate",
            "mean_width",
        ],
    );
    if opts.reps == 0 {
        return Ok(result);
    }
    let outcomes = (0..opts.reps)
        .into_par_iter()
        .map(|r| {
            let mut rng = replicate_rng(opts.seed, r as u64);
            // multinomial draws can leave a class too small for deletion
            let ds = loop {
                let ds = sample_mixture_with(spec, opts.n, &mut rng)?;
                if ds.num_classes() == spec.num_components() && ds.groups().counts().iter().all(|&c| c >= 3) {
                    break ds;
                }
            };
            let ci = jackknife_ci(&ds, opts.alpha, opts.kind, opts.level)?;
            let dc = match dcor_truth {
                Some(_) => Some(dcor_jackknife(&ds, opts.alpha, opts.level)?),
                None => None,
            };
            Ok((ci, dc))
        })
        .collect::<Result<Vec<_>>>()?;
    let reps = opts.reps as f64;
    let covered = outcomes.iter().filter(|(ci, _)| ci.contains(truth)).count();
    let rate = covered as f64 / reps;
    result.rows.push(vec![
        "rho_g".into(),
        truth.into(),
        opts.n.into(),
        opts.level.into(),
        opts.reps.into(),
        covered.into(),
        rate.into(),
        binomial_se(rate, opts.reps).into(),
        (outcomes.iter().map(|(ci, _)| ci.estimate).sum::<f64>() / reps).into(),
        (outcomes.iter().map(|(ci, _)| ci.upper - ci.lower).sum::<f64>() / reps).into(),
    ]);
    if let Some(t) = dcor_truth {
        let dcs: Vec<(f64, f64, f64)> = outcomes.iter().filter_map(|(_, d)| *d).collect();
        let covered = dcs.iter().filter(|(_, lo, hi)| *lo <= t && t <= *hi).count();
        let rate = covered as f64 / reps;
        result.rows.push(vec![
            "rho_d".into(),
            t.into(),
            opts.n.into(),
            opts.level.into(),
            opts.reps.into(),
            covered.into(),
            rate.into(),
            binomial_se(rate, opts.reps).into(),
            (dcs.iter().map(|d| d.0).sum::<f64>() / reps).into(),
            (dcs.iter().map(|d| d.2 - d.1).sum::<f64>() / reps).into(),
        ]);
    }
    Ok(result)
}

/// One statistic evaluated in a power experiment.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct StatisticSpec {
    pub statistic: TestStatistic,
    pub alpha: Alpha,
}

impl std::fmt::Display for StatisticSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}(alpha={})", self.statistic, self.alpha)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PowerOptions {
    pub n: usize,
    pub permutations: usize,
    pub gamma: f64,
    pub reps: usize,
    pub seed: u64,
}

/// Rejection rates of permutation tests, one row per (design, statistic).
///
/// Replicate `r` of design `i` samples from stream `(i << 32) | r`; the
/// permutation seed is drawn from the same stream, so all statistics see the
/// same data and the same permutations.
pub fn power_experiment(
    designs: &[(String, MixtureSpec)],
    statistics: &[StatisticSpec],
    opts: &PowerOptions,
) -> Result<ExperimentResult> {
    if designs.is_empty() || statistics.is_empty() {
        return Err(Error::InvalidParameter(
            "power experiment needs at least one design and one statistic".into(),
        ));
    }
    for (_, d) in designs {
        d.validate()?;
    }
    let mut result = ExperimentResult::new(
        "power",
        opts.reps,
        opts.seed,
        &[
            "design",
            "mixture",
            "statistic",
            "n",
            "permutations",
            "gamma",
            "reps",
            "rejections",
            "rate",
            "se",
        ],
    );
    for (i, (name, spec)) in designs.iter().enumerate() {
        let decisions = (0..opts.reps)
            .into_par_iter()
            .map(|r| {
                let mut rng = replicate_rng(opts.seed, ((i as u64) << 32) | r as u64);
                let ds = loop {
                    let ds = sample_mixture_with(spec, opts.n, &mut rng)?;
                    if ds.num_classes() >= 2 && ds.groups().counts().iter().all(|&c| c >= 2) {
                        break ds;
                    }
                };
                let perm_seed: u64 = rng.random();
                statistics
                    .iter()
                    .map(|s| {
                        permutation_test(&ds, s.alpha, s.statistic, opts.permutations, opts.gamma, perm_seed)
                            .map(|t| t.rejects())
                    })
                    .collect::<Result<Vec<bool>>>()
            })
            .collect::<Result<Vec<_>>>()?;
        for (j, s) in statistics.iter().enumerate() {
            let rejections = decisions.iter().filter(|d| d[j]).count();
            let rate = if opts.reps == 0 {
                f64::NAN
            } else {
                rejections as f64 / opts.reps as f64
            };
            result.rows.push(vec![
                name.clone().into(),
                describe(spec).into(),
                s.to_string().into(),
                opts.n.into(),
                opts.permutations.into(),
                opts.gamma.into(),
                opts.reps.into(),
                rejections.into(),
                rate.into(),
                binomial_se(rate, opts.reps).into(),
            ]);
        }
    }
    Ok(result)
}

/// Three-class designs: `Exp(1), Exp(θ₁), Exp(θ₂)`.
pub fn exp_three_class(weights: [f64; 3], theta1: f64, theta2: f64) -> Result<MixtureSpec> {
    MixtureSpec::new(
        vec![
            Component::Exponential { scale: 1.0 },
            Component::Exponential { scale: theta1 },
            Component::Exponential { scale: theta2 },
        ],
        weights.to_vec(),
    )
}

/// Three-class designs: `N(0,1), N(μ₁,1), N(μ₂,1)`.
pub fn normal_location_three_class(weights: [f64; 3], mu1: f64, mu2: f64) -> Result<MixtureSpec> {
    MixtureSpec::new(
        vec![
            Component::Normal { mean: 0.0, sd: 1.0 },
            Component::Normal { mean: mu1, sd: 1.0 },
            Component::Normal { mean: mu2, sd: 1.0 },
        ],
        weights.to_vec(),
    )
}

/// Three-class designs: `N(0,1), N(0,σ₁²), N(0,σ₂²)`.
pub fn normal_scale_three_class(weights: [f64; 3], sigma1: f64, sigma2: f64) -> Result<MixtureSpec> {
    MixtureSpec::new(
        vec![
            Component::Normal { mean: 0.0, sd: 1.0 },
            Component::Normal { mean: 0.0, sd: sigma1 },
            Component::Normal { mean: 0.0, sd: sigma2 },
        ],
        weights.to_vec(),
    )
}

/// Balanced two-class Cauchy mixture centered at 0 and `δ`.
pub fn cauchy_shift(delta: f64) -> Result<MixtureSpec> {
    MixtureSpec::balanced(vec![
        Component::Cauchy {
            location: 0.0,
            scale: 1.0,
        },
        Component::Cauchy {
            location: delta,
            scale: 1.0,
        },
    ])
}

pub const BALANCED3: [f64; 3] = [1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0];
pub const UNBALANCED3: [f64; 3] = [0.25, 1.0 / 3.0, 5.0 / 12.0];

/// The three-class size/power grid: each family at six parameter pairs,
/// for the given weights.
pub fn three_class_grid(weights: [f64; 3]) -> Result<Vec<(String, MixtureSpec)>> {
    let exp_pairs = [(1.0, 1.0), (1.2, 1.4), (1.4, 1.8), (1.6, 2.2), (1.8, 2.6), (2.0, 3.0)];
    let loc_pairs = [(0.0, 0.0), (0.2, 0.4), (0.4, 0.8), (0.6, 1.2), (0.8, 1.6), (1.0, 2.0)];
    let mut out = Vec::new();
    for &(a, b) in &exp_pairs {
        out.push((format!("exp({a},{b})"), exp_three_class(weights, a, b)?));
    }
    for &(a, b) in &loc_pairs {
        out.push((
            format!("norm-loc({a},{b})"),
            normal_location_three_class(weights, a, b)?,
        ));
    }
    for &(a, b) in &exp_pairs {
        out.push((format!("norm-scale({a},{b})"), normal_scale_three_class(weights, a, b)?));
    }
    Ok(out)
}

/// The Cauchy robustness grid over `δ ∈ {0, 0.25, 0.5, 0.75, 1}`.
pub fn cauchy_grid() -> Result<Vec<(String, MixtureSpec)>> {
    [0.0, 0.25, 0.5, 0.75, 1.0]
        .iter()
        .map(|&d| Ok((format!("cauchy(delta={d})"), cauchy_shift(d)?)))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimingOptions {
    pub d_values: Vec<usize>,
    pub n_values: Vec<usize>,
    pub reps: usize,
    pub seed: u64,
    /// Time the unbiased distance covariance as well; it is quadratic in `n`.
    pub include_dcov: bool,
}

fn mean_sd(v: &[f64]) -> (f64, f64) {
    let n = v.len() as f64;
    let mean = v.iter().sum::<f64>() / n;
    let sd = if v.len() > 1 {
        (v.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    (mean, sd)
}

fn time_it<T>(f: impl FnOnce() -> Result<T>) -> Result<f64> {
    let t = Instant::now();
    std::hint::black_box(f()?);
    Ok(t.elapsed().as_secs_f64())
}

/// Wall-clock time of `gcor` (V, `α = 1`) and optionally `dcov_unbiased` on
/// standard normal samples in `R^d` split evenly into two classes.
///
/// Cells run one after another on a single-thread pool; each cell starts
/// with one discarded warm-up evaluation.
pub fn timing_benchmark(opts: &TimingOptions) -> Result<ExperimentResult> {
    let mut result = ExperimentResult::new(
        "two-class standard normal, half per class",
        opts.reps,
        opts.seed,
        &[
            "d",
            "n",
            "reps",
            "gcor_mean_s",
            "gcor_sd_s",
            "dcov_mean_s",
            "dcov_sd_s",
            "fast_path",
        ],
    );
    if opts.reps == 0 {
        return Ok(result);
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
    pool.install(|| -> Result<()> {
        for (ci, &d) in opts.d_values.iter().enumerate() {
            for (cj, &n) in opts.n_values.iter().enumerate() {
                if d == 0 {
                    return Err(Error::InvalidParameter("dimension must be at least 1".into()));
                }
                let spec = MixtureSpec::balanced(vec![
                    Component::StandardMultivariateNormal { dim: d },
                    Component::StandardMultivariateNormal { dim: d },
                ])?;
                let stream = ((ci as u64) << 40) | ((cj as u64) << 20);
                let sample =
                    |r: usize| sample_stratified_with(&spec, n, &mut replicate_rng(opts.seed, stream | r as u64));
                let warm = sample(0)?;
                gcor(&warm, Alpha::ONE, EstimatorKind::V)?;
                let fast = gcor(&warm, Alpha::ONE, EstimatorKind::V)?.fast_path;
                if opts.include_dcov {
                    dcov_unbiased(&warm, Alpha::ONE)?;
                }
                let mut g = Vec::with_capacity(opts.reps);
                let mut dc = Vec::with_capacity(opts.reps);
                for r in 0..opts.reps {
                    let ds = sample(r + 1)?;
                    g.push(time_it(|| gcor(&ds, Alpha::ONE, EstimatorKind::V))?);
                    if opts.include_dcov {
                        dc.push(time_it(|| dcov_unbiased(&ds, Alpha::ONE))?);
                    }
                }
                let (gm, gs) = mean_sd(&g);
                let (dm, ds) = if dc.is_empty() {
                    (f64::NAN, f64::NAN)
                } else {
                    mean_sd(&dc)
                };
                result.rows.push(vec![
                    d.into(),
                    n.into(),
                    opts.reps.into(),
                    gm.into(),
                    gs.into(),
                    dm.into(),
                    ds.into(),
                    if fast { "yes" } else { "no" }.into(),
                ]);
            }
        }
        Ok(())
    })?;
    Ok(result)
}

/// Least-squares slope of `log y` on `log x`.
pub fn log_log_slope(x: &[f64], y: &[f64]) -> f64 {
    let lx: Vec<f64> = x.iter().map(|v| v.ln()).collect();
    let ly: Vec<f64> = y.iter().map(|v| v.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(a, b)| (a - mx) * (b - my)).sum();
    let sxx: f64 = lx.iter().map(|a| (a - mx).powi(2)).sum();
    sxy / sxx
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_component_gives_one_class() {
        let spec = MixtureSpec::new(vec![Component::Normal { mean: 0.0, sd: 1.0 }], vec![1.0]).unwrap();
        let ds = sample_mixture(&spec, 20, 1).unwrap();
        assert_eq!(ds.num_classes(), 1);
    }

    #[test]
    fn sampling_is_deterministic() {
        let spec = MixtureSpec::exp_mixture(0.5, 1.0, 4.0).unwrap();
        let a = sample_mixture(&spec, 50, 9).unwrap();
        let b = sample_mixture(&spec, 50, 9).unwrap();
        assert_eq!(a.features(), b.features());
        assert_eq!(a.labels(), b.labels());
    }

    #[test]
    fn stratified_sizes_are_exact() {
        let spec = MixtureSpec::balanced(vec![
            Component::StandardMultivariateNormal { dim: 3 },
            Component::StandardMultivariateNormal { dim: 3 },
        ])
        .unwrap();
        let ds = sample_stratified_with(&spec, 11, &mut ChaCha8Rng::seed_from_u64(0)).unwrap();
        let mut counts = ds.groups().counts();
        counts.sort();
        assert_eq!(counts, vec![5, 6]);
        assert_eq!(ds.dim(), 3);
    }

    #[test]
    fn empty_timing_table() {
        let opts = TimingOptions {
            d_values: vec![1],
            n_values: vec![100],
            reps: 0,
            seed: 1,
            include_dcov: true,
        };
        assert!(timing_benchmark(&opts).unwrap().rows.is_empty());
    }

    #[test]
    fn significant_digit_rounding() {
        assert_eq!(format_significant(0.152_542_372_881_355_9, 12), "0.152542372881");
        assert_eq!(format_significant(1234.5, 3), "1230");
        assert_eq!(format_significant(0.0, 12), "0");
    }

    #[test]
    fn slope_of_power_law() {
        let x = [1.0, 2.0, 4.0, 8.0];
        let y: Vec<f64> = x.iter().map(|v: &f64| 3.0 * v.powf(1.5)).collect();
        assert!((log_log_slope(&x, &y) - 1.5).abs() < 1e-12);
    }
}
