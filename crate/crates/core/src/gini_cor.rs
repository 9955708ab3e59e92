//! Gini distance covariance and correlation between numerical features and a
//! categorical label, the energy-distance forms of the covariance, the ANOVA
//! R² baseline and correlation-ranked feature screening.

use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;

use crate::data::{Alpha, EstimatorKind, LabeledDataset};
use crate::error::{Error, Result};
use crate::gmd::{
    distance_pow, gmd_cross, gmd_pairwise, grouped_pair_sums, grouped_row_sums, normalize_pair_sum, per_row, PairSums,
    SortedSample,
};

/// Relative tolerance below zero at which a V-statistic covariance is treated
/// as rounding noise and clamped to 0.
pub(crate) const CLAMP_RTOL: f64 = 1e-10;

/// Full-matrix caching is used for repeated evaluation up to this many rows.
const MATRIX_MAX_ROWS: usize = 2048;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorrelationReport {
    /// Gini correlation `gCov / Δ̂`.
    pub estimate: f64,
    /// Gini covariance `Δ̂ − Σ p̂_k Δ̂_k`.
    pub covariance: f64,
    pub total_gmd: f64,
    pub per_group_gmd: Vec<f64>,
    pub proportions: Vec<f64>,
    pub alpha: Alpha,
    pub kind: EstimatorKind,
    pub n: usize,
    /// True when the sorted `O(n log n)` path was used.
    pub fast_path: bool,
}

/// Source of pooled and within-class pair sums for a fixed feature matrix,
/// reusable across relabelings.
pub(crate) enum PairSource<'a> {
    Sorted(SortedSample),
    Direct {
        features: &'a [f64],
        d: usize,
        alpha: Alpha,
    },
    Matrix {
        n: usize,
        dist: Vec<f64>,
    },
}

impl<'a> PairSource<'a> {
    /// Picks the sorted path for univariate `α = 1`, the direct double loop
    /// otherwise.
    pub fn new(features: &'a [f64], d: usize, alpha: Alpha) -> Self {
        if d == 1 && alpha.is_one() {
            PairSource::Sorted(SortedSample::new(features))
        } else {
            PairSource::Direct { features, d, alpha }
        }
    }

    /// Like [`PairSource::new`] but caches the distance matrix when the
    /// source will be evaluated many times.
    pub fn for_repeated_use(features: &'a [f64], d: usize, alpha: Alpha) -> Self {
        let n = features.len() / d;
        match Self::new(features, d, alpha) {
            PairSource::Direct { .. } if n <= MATRIX_MAX_ROWS => {
                let rows = per_row(n, |i| {
                    let xi = &features[i * d..(i + 1) * d];
                    (0..n)
                        .map(|j| distance_pow(xi, &features[j * d..(j + 1) * d], alpha))
                        .collect::<Vec<f64>>()
                });
                PairSource::Matrix { n, dist: rows.concat() }
            }
            other => other,
        }
    }

    pub fn is_fast(&self) -> bool {
        matches!(self, PairSource::Sorted(_))
    }

    pub fn pair_sums(&self, labels: &[usize], counts: &[usize]) -> PairSums {
        match self {
            PairSource::Sorted(s) => s.pair_sums(labels, counts),
            PairSource::Direct { features, d, alpha } => grouped_pair_sums(features, *d, labels, counts.len(), *alpha),
            PairSource::Matrix { n, dist } => {
                let n = *n;
                let rows: Vec<(f64, f64)> = per_row(n, |i| {
                    let row = &dist[i * n..(i + 1) * n];
                    let (mut all, mut same) = (0.0, 0.0);
                    for j in (i + 1)..n {
                        all += row[j];
                        if labels[j] == labels[i] {
                            same += row[j];
                        }
                    }
                    (all, same)
                });
                let mut total = 0.0;
                let mut within = vec![0.0; counts.len()];
                for (i, (all, same)) in rows.into_iter().enumerate() {
                    total += all;
                    within[labels[i]] += same;
                }
                PairSums { total, within }
            }
        }
    }

    /// Row sums over all other observations and over same-class observations.
    pub fn row_sums(&self, labels: &[usize], counts: &[usize]) -> (Vec<f64>, Vec<f64>) {
        match self {
            PairSource::Sorted(s) => s.row_sums(labels, counts),
            PairSource::Direct { features, d, alpha } => grouped_row_sums(features, *d, labels, *alpha),
            PairSource::Matrix { n, dist } => {
                let n = *n;
                per_row(n, |i| {
                    let row = &dist[i * n..(i + 1) * n];
                    let (mut all, mut same) = (0.0, 0.0);
                    for (j, &v) in row.iter().enumerate() {
                        if j != i {
                            all += v;
                            if labels[j] == labels[i] {
                                same += v;
                            }
                        }
                    }
                    (all, same)
                })
                .into_iter()
                .unzip()
            }
        }
    }
}

/// Assembles a report from pair sums. `counts` are class sizes; classes of
/// size zero are skipped.
pub(crate) fn report_from_sums(
    sums: &PairSums,
    counts: &[usize],
    alpha: Alpha,
    kind: EstimatorKind,
    fast_path: bool,
) -> Result<CorrelationReport> {
    let n: usize = counts.iter().sum();
    let total_gmd = normalize_pair_sum(sums.total, n, kind);
    if total_gmd.is_nan() || total_gmd <= 0.0 {
        return Err(Error::Degenerate(
            "all feature rows are identical (zero total Gini mean difference)".into(),
        ));
    }
    let proportions: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
    let per_group_gmd: Vec<f64> = counts
        .iter()
        .zip(&sums.within)
        .map(|(&c, &s)| match (kind, c) {
            (_, 0) | (EstimatorKind::V, 1) => 0.0,
            _ => normalize_pair_sum(s, c, kind),
        })
        .collect();
    let within: f64 = proportions.iter().zip(&per_group_gmd).map(|(p, g)| p * g).sum();
    let mut covariance = total_gmd - within;
    if kind == EstimatorKind::V && covariance < 0.0 {
        if -covariance <= CLAMP_RTOL * total_gmd {
            covariance = 0.0;
        } else {
            return Err(Error::Consistency(format!(
                "V-statistic Gini covariance is negative ({covariance:e})"
            )));
        }
    }
    Ok(CorrelationReport {
        estimate: covariance / total_gmd,
        covariance,
        total_gmd,
        per_group_gmd,
        proportions,
        alpha,
        kind,
        n,
        fast_path,
    })
}

pub(crate) fn min_class_size(kind: EstimatorKind) -> usize {
    match kind {
        EstimatorKind::U => 2,
        EstimatorKind::V => 1,
    }
}

/// Gini correlation with its full decomposition. Univariate data at `α = 1`
/// is handled by the sorted fast path.
pub fn gcor(dataset: &LabeledDataset, alpha: Alpha, kind: EstimatorKind) -> Result<CorrelationReport> {
    dataset.require_classes(min_class_size(kind))?;
    let source = PairSource::new(dataset.features(), dataset.dim(), alpha);
    let counts = dataset.groups().counts();
    let sums = source.pair_sums(dataset.labels(), &counts);
    report_from_sums(&sums, &counts, alpha, kind, source.is_fast())
}

/// Gini covariance `Δ̂ − Σ_k p̂_k Δ̂_k`.
pub fn gcov(dataset: &LabeledDataset, alpha: Alpha, kind: EstimatorKind) -> Result<f64> {
    dataset.require_classes(min_class_size(kind))?;
    let source = PairSource::new(dataset.features(), dataset.dim(), alpha);
    let counts = dataset.groups().counts();
    let sums = source.pair_sums(dataset.labels(), &counts);
    match report_from_sums(&sums, &counts, alpha, kind, source.is_fast()) {
        Ok(r) => Ok(r.covariance),
        // constant features: every term vanishes
        Err(Error::Degenerate(_)) => Ok(0.0),
        Err(e) => Err(e),
    }
}

/// Energy distance `2 E‖A − B‖^α − E‖A − A′‖^α − E‖B − B′‖^α` between two
/// row-major samples of dimension `d`.
pub fn energy_distance(sample_a: &[f64], sample_b: &[f64], d: usize, alpha: Alpha, kind: EstimatorKind) -> Result<f64> {
    let cross = gmd_cross(sample_a, sample_b, d, alpha)?.value;
    let ga = gmd_pairwise(sample_a, d, alpha, kind)?.value;
    let gb = gmd_pairwise(sample_b, d, alpha, kind)?.value;
    Ok(2.0 * cross - ga - gb)
}

fn group_samples(dataset: &LabeledDataset) -> Vec<Vec<f64>> {
    dataset
        .groups()
        .indices()
        .iter()
        .map(|idx| idx.iter().flat_map(|&i| dataset.row(i).iter().copied()).collect())
        .collect()
}

/// Gini covariance as `Σ_{k<l} p̂_k p̂_l T̂(X_k, X_l)` with V-statistic energy
/// distances between class samples.
pub fn gcov_via_energy(dataset: &LabeledDataset, alpha: Alpha) -> Result<f64> {
    dataset.require_classes(1)?;
    let d = dataset.dim();
    let groups = group_samples(dataset);
    let p = dataset.groups().proportions();
    let mut total = 0.0;
    for k in 0..groups.len() {
        for l in (k + 1)..groups.len() {
            total += p[k] * p[l] * energy_distance(&groups[k], &groups[l], d, alpha, EstimatorKind::V)?;
        }
    }
    Ok(total)
}

/// Gini covariance as `Σ_k p̂_k T̂(X_k, X)`: each class against the pooled
/// sample.
pub fn gcov_via_pooled_energy(dataset: &LabeledDataset, alpha: Alpha) -> Result<f64> {
    dataset.require_classes(1)?;
    let d = dataset.dim();
    let groups = group_samples(dataset);
    let p = dataset.groups().proportions();
    let mut total = 0.0;
    for (k, g) in groups.iter().enumerate() {
        total += p[k] * energy_distance(g, dataset.features(), d, alpha, EstimatorKind::V)?;
    }
    Ok(total)
}

/// Between-class share of variance (ANOVA R²) with divide-by-n moments.
pub fn pearson_r2(dataset: &LabeledDataset) -> Result<f64> {
    if dataset.dim() != 1 {
        return Err(Error::InvalidParameter(format!(
            "Pearson R² needs univariate features, got dimension {}",
            dataset.dim()
        )));
    }
    dataset.require_classes(1)?;
    let x = dataset.features();
    let n = x.len() as f64;
    let mean = x.iter().sum::<f64>() / n;
    let var = x.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    if var.is_nan() || var <= 0.0 {
        return Err(Error::Degenerate("zero total variance".into()));
    }
    let between: f64 = dataset
        .groups()
        .indices()
        .iter()
        .map(|idx| {
            let m = idx.iter().map(|&i| x[i]).sum::<f64>() / idx.len() as f64;
            idx.len() as f64 / n * (m - mean) * (m - mean)
        })
        .sum();
    Ok((between / var).clamp(0.0, 1.0))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScreenedFeature {
    /// Zero-based column index.
    pub feature: usize,
    /// Gini correlation with the label; 0 for degenerate columns.
    pub estimate: f64,
    /// Column is constant, so its correlation is undefined.
    pub degenerate: bool,
    /// Wall-clock seconds spent on this column (only from
    /// [`screen_features_timed`]).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seconds: Option<f64>,
}

fn screen_impl(dataset: &LabeledDataset, top: usize, alpha: Alpha, timed: bool) -> Result<Vec<ScreenedFeature>> {
    if top == 0 || top > dataset.dim() {
        return Err(Error::InvalidParameter(format!(
            "top must lie in 1..={}, got {top}",
            dataset.dim()
        )));
    }
    dataset.require_classes(1)?;
    let counts = dataset.groups().counts();
    let labels = dataset.labels();
    let mut ranked: Vec<ScreenedFeature> = (0..dataset.dim())
        .into_par_iter()
        .map(|j| {
            let start = Instant::now();
            let column: Vec<f64> = dataset.column(j).collect();
            let source = PairSource::new(&column, 1, alpha);
            let sums = source.pair_sums(labels, &counts);
            let report = report_from_sums(&sums, &counts, alpha, EstimatorKind::V, source.is_fast());
            let seconds = timed.then(|| start.elapsed().as_secs_f64());
            match report {
                Ok(r) => Ok(ScreenedFeature {
                    feature: j,
                    estimate: r.estimate,
                    degenerate: false,
                    seconds,
                }),
                Err(Error::Degenerate(_)) => Ok(ScreenedFeature {
                    feature: j,
                    estimate: 0.0,
                    degenerate: true,
                    seconds,
                }),
                Err(e) => Err(e),
            }
        })
        .collect::<Result<_>>()?;
    ranked.sort_by(|a, b| {
        a.degenerate
            .cmp(&b.degenerate)
            .then(b.estimate.total_cmp(&a.estimate))
            .then(a.feature.cmp(&b.feature))
    });
    ranked.truncate(top);
    Ok(ranked)
}

/// Ranks feature columns by V-statistic Gini correlation with the label,
/// descending; ties go to the lower index and constant columns rank last.
pub fn screen_features(dataset: &LabeledDataset, top: usize, alpha: Alpha) -> Result<Vec<ScreenedFeature>> {
    screen_impl(dataset, top, alpha, false)
}

/// [`screen_features`] with per-column timings.
pub fn screen_features_timed(dataset: &LabeledDataset, top: usize, alpha: Alpha) -> Result<Vec<ScreenedFeature>> {
    screen_impl(dataset, top, alpha, true)
}
