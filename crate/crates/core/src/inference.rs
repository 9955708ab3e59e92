//! Jackknife confidence intervals, label-permutation independence tests and
//! normal-approximation power.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::data::{Alpha, EstimatorKind, LabeledDataset};
use crate::dist_cor::{dcov_unbiased, UnbiasedDcorPermuter};
use crate::error::{Error, Result};
use crate::gini_cor::{min_class_size, report_from_sums, PairSource};
use crate::gmd::PairSums;
use crate::oracles::numeric::{std_normal_cdf, std_normal_quantile};

/// Default number of label permutations.
pub const DEFAULT_PERMUTATIONS: usize = 200;

/// Above this many rows the unbiased distance statistic is recomputed from
/// scratch per permutation instead of caching the centered matrix.
const PERMUTER_MAX_ROWS: usize = 4096;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JackknifeInterval {
    pub estimate: f64,
    pub se: f64,
    pub level: f64,
    /// `estimate − z·se`, truncated to `[0, 1]`.
    pub lower: f64,
    /// `estimate + z·se`, truncated to `[0, 1]`.
    pub upper: f64,
}

impl JackknifeInterval {
    pub fn contains(&self, value: f64) -> bool {
        self.lower <= value && value <= self.upper
    }
}

fn check_level(level: f64) -> Result<()> {
    if level.is_finite() && level > 0.0 && level < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "level must lie in (0, 1), got {level}"
        )))
    }
}

fn check_gamma(gamma: f64) -> Result<()> {
    if gamma.is_finite() && gamma > 0.0 && gamma < 1.0 {
        Ok(())
    } else {
        Err(Error::InvalidParameter(format!(
            "gamma must lie in (0, 1), got {gamma}"
        )))
    }
}

/// Gini correlation with each observation deleted in turn, in row order.
///
/// Deleting row `i` removes its row sum from the pooled pair sum and its
/// same-class row sum from its class's pair sum, so no pairs are revisited.
pub fn jackknife_leave_one_out(dataset: &LabeledDataset, alpha: Alpha, kind: EstimatorKind) -> Result<Vec<f64>> {
    let required = min_class_size(kind) + 1;
    dataset.require_classes(required)?;
    let source = PairSource::new(dataset.features(), dataset.dim(), alpha);
    let labels = dataset.labels();
    let counts = dataset.groups().counts();
    let sums = source.pair_sums(labels, &counts);
    let (all, same) = source.row_sums(labels, &counts);
    (0..dataset.n())
        .into_par_iter()
        .map(|i| {
            let c = labels[i];
            let mut reduced = PairSums {
                total: sums.total - all[i],
                within: sums.within.clone(),
            };
            reduced.within[c] -= same[i];
            let mut counts_i = counts.clone();
            counts_i[c] -= 1;
            report_from_sums(&reduced, &counts_i, alpha, kind, false).map(|r| r.estimate)
        })
        .collect()
}

/// Jackknife standard error and symmetric normal interval for the Gini
/// correlation.
pub fn jackknife_ci(
    dataset: &LabeledDataset,
    alpha: Alpha,
    kind: EstimatorKind,
    level: f64,
) -> Result<JackknifeInterval> {
    check_level(level)?;
    let estimate = crate::gini_cor::gcor(dataset, alpha, kind)?.estimate;
    let loo = jackknife_leave_one_out(dataset, alpha, kind)?;
    let n = loo.len() as f64;
    let mean = loo.iter().sum::<f64>() / n;
    let ss: f64 = loo.iter().map(|v| (v - mean) * (v - mean)).sum();
    let se = ((n - 1.0) / n * ss).sqrt();
    let z = std_normal_quantile(1.0 - (1.0 - level) / 2.0);
    Ok(JackknifeInterval {
        estimate,
        se,
        level,
        lower: (estimate - z * se).clamp(0.0, 1.0),
        upper: (estimate + z * se).clamp(0.0, 1.0),
    })
}

/// Statistic recomputed under label permutations.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TestStatistic {
    Gcor(EstimatorKind),
    DcorUnbiased,
}

impl Default for TestStatistic {
    fn default() -> Self {
        TestStatistic::Gcor(EstimatorKind::V)
    }
}

impl std::fmt::Display for TestStatistic {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TestStatistic::Gcor(k) => write!(f, "gcor-{k}"),
            TestStatistic::DcorUnbiased => f.write_str("dcor-unbiased"),
        }
    }
}

/// Accepts `gcor` (V), `gcor-U`, `gcor-V`, `dcor` and `dcor-unbiased`.
impl std::str::FromStr for TestStatistic {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "gcor" => Ok(TestStatistic::Gcor(EstimatorKind::V)),
            "dcor" | "dcor-unbiased" => Ok(TestStatistic::DcorUnbiased),
            other => match other.strip_prefix("gcor-") {
                Some(kind) => Ok(TestStatistic::Gcor(kind.parse()?)),
                None => Err(Error::InvalidParameter(format!(
                    "unknown test statistic `{s}`; expected gcor, gcor-U, gcor-V or dcor-unbiased"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PermutationTestResult {
    pub observed: f64,
    pub replicates: Vec<f64>,
    /// `(1 + #{replicates ≥ observed}) / (M + 1)`.
    pub p_value: f64,
    /// Order statistic `⌈(1 − γ)M⌉` of the replicates.
    pub critical_value: f64,
    pub gamma: f64,
    pub seed: u64,
}

impl PermutationTestResult {
    pub fn rejects(&self) -> bool {
        self.p_value <= self.gamma
    }
}

/// Generator for permutation replicate `r`: stream `r` of the seeded ChaCha8
/// generator.
pub fn replicate_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

/// Ceiling-rank empirical quantile, `⌈qM⌉`-th smallest value.
pub fn upper_quantile(values: &[f64], q: f64) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    let m = sorted.len();
    let rank = ((q * m as f64).ceil() as usize).clamp(1, m);
    sorted[rank - 1]
}

enum Engine<'a> {
    Gini {
        source: PairSource<'a>,
        counts: Vec<usize>,
        alpha: Alpha,
        kind: EstimatorKind,
    },
    Permuter(UnbiasedDcorPermuter),
    Direct {
        dataset: &'a LabeledDataset,
        alpha: Alpha,
    },
}

impl Engine<'_> {
    fn eval(&self, labels: &[usize]) -> Result<f64> {
        match self {
            Engine::Gini {
                source,
                counts,
                alpha,
                kind,
            } => {
                let sums = source.pair_sums(labels, counts);
                Ok(report_from_sums(&sums, counts, *alpha, *kind, false)?.estimate)
            }
            Engine::Permuter(p) => Ok(p.dcor(labels)),
            Engine::Direct { dataset, alpha } => {
                Ok(dcov_unbiased(&dataset.with_labels(labels.to_vec())?, *alpha)?.dcor)
            }
        }
    }
}

/// Label-permutation test of independence between features and label.
///
/// The result depends only on `(dataset, statistic, m, seed)`, never on the
/// number of worker threads.
pub fn permutation_test(
    dataset: &LabeledDataset,
    alpha: Alpha,
    statistic: TestStatistic,
    m: usize,
    gamma: f64,
    seed: u64,
) -> Result<PermutationTestResult> {
    if m == 0 {
        return Err(Error::InvalidParameter(
            "number of permutations must be at least 1".into(),
        ));
    }
    check_gamma(gamma)?;
    let engine = match statistic {
        TestStatistic::Gcor(kind) => {
            dataset.require_classes(min_class_size(kind))?;
            Engine::Gini {
                source: PairSource::for_repeated_use(dataset.features(), dataset.dim(), alpha),
                counts: dataset.groups().counts(),
                alpha,
                kind,
            }
        }
        TestStatistic::DcorUnbiased if dataset.n() <= PERMUTER_MAX_ROWS => {
            Engine::Permuter(UnbiasedDcorPermuter::new(dataset, alpha)?)
        }
        TestStatistic::DcorUnbiased => Engine::Direct { dataset, alpha },
    };
    let observed = engine.eval(dataset.labels())?;
    let replicates = (0..m)
        .into_par_iter()
        .map(|r| {
            let mut labels = dataset.labels().to_vec();
            labels.shuffle(&mut replicate_rng(seed, r as u64));
            engine.eval(&labels)
        })
        .collect::<Result<Vec<f64>>>()?;
    let exceed = replicates.iter().filter(|&&v| v >= observed).count();
    Ok(PermutationTestResult {
        observed,
        p_value: (1 + exceed) as f64 / (m + 1) as f64,
        critical_value: upper_quantile(&replicates, 1.0 - gamma),
        replicates,
        gamma,
        seed,
    })
}

/// Normal-approximation power `1 − Φ((critical_value − rho0)/se)`.
pub fn power_at(rho0: f64, critical_value: f64, se: f64) -> Result<f64> {
    if !(se.is_finite() && se > 0.0) {
        return Err(Error::InvalidParameter(format!(
            "standard error must be positive, got {se}"
        )));
    }
    if !(rho0.is_finite() && rho0 > 0.0) {
        return Err(Error::InvalidParameter(format!("rho0 must be positive, got {rho0}")));
    }
    Ok(1.0 - std_normal_cdf((critical_value - rho0) / se))
}
