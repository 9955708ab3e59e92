//! Distance covariance and correlation between numerical features and a
//! categorical label, using the 0/1 set-difference metric on labels.
//!
//! Two flavors are kept apart and tagged in every report. The U-centered
//! estimator is unbiased; the plug-in (V) estimator is the one for which the
//! algebraic identities linking distance and Gini covariance hold exactly.
//! Because `0^α = 0` and `1^α = 1`, the label metric never depends on `α`.

use serde::Serialize;

use crate::data::{Alpha, LabeledDataset};
use crate::error::{Error, Result};
use crate::gini_cor::PairSource;
use crate::gmd::{distance_pow, ordered_row_sum, per_row};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum DistanceFlavor {
    UnbiasedUCentered,
    PluginV,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DistanceReport {
    pub dcov_xy: f64,
    pub dcov_xx: f64,
    pub dcov_yy: f64,
    /// `dcov_xy / sqrt(dcov_xx · dcov_yy)`, or 0 when `undefined`.
    pub dcor: f64,
    /// A variance term was not positive, so the correlation is undefined.
    pub undefined: bool,
    pub alpha: Alpha,
    pub flavor: DistanceFlavor,
}

fn correlation(xy: f64, xx: f64, yy: f64) -> (f64, bool) {
    if xx > 0.0 && yy > 0.0 {
        (xy / (xx * yy).sqrt(), false)
    } else {
        (0.0, true)
    }
}

/// `I(y_i ≠ y_j)` for every pair, as an `n × n` matrix.
pub fn label_metric(labels: &[usize]) -> Vec<Vec<f64>> {
    labels
        .iter()
        .map(|&a| labels.iter().map(|&b| if a == b { 0.0 } else { 1.0 }).collect())
        .collect()
}

/// Unbiased distance covariance from U-centered distance matrices,
/// `(n(n−3))^{-1} Σ_{i≠j} A_ij B_ij`.
///
/// Runs in `O(n)` memory: the distance matrix is streamed twice, once for row
/// sums and once for the centered products.
pub fn dcov_unbiased(dataset: &LabeledDataset, alpha: Alpha) -> Result<DistanceReport> {
    let n = dataset.n();
    if n < 4 {
        return Err(Error::InvalidParameter(format!(
            "unbiased distance covariance needs n >= 4, got {n}"
        )));
    }
    let d = dataset.dim();
    let x = dataset.features();
    let y = dataset.labels();
    let counts = dataset.groups().counts();
    let nf = n as f64;

    let a_row: Vec<f64> = per_row(n, |i| {
        let xi = &x[i * d..(i + 1) * d];
        (0..n).map(|j| distance_pow(xi, &x[j * d..(j + 1) * d], alpha)).sum()
    });
    let a_tot: f64 = a_row.iter().sum();
    let b_row: Vec<f64> = y.iter().map(|&c| (n - counts[c]) as f64).collect();
    let b_tot: f64 = b_row.iter().sum();

    let inv = 1.0 / (nf - 2.0);
    let a_grand = a_tot / ((nf - 1.0) * (nf - 2.0));
    let b_grand = b_tot / ((nf - 1.0) * (nf - 2.0));

    let rows: Vec<(f64, f64, f64)> = per_row(n, |i| {
        let xi = &x[i * d..(i + 1) * d];
        let (mut ab, mut aa, mut bb) = (0.0, 0.0, 0.0);
        for j in 0..n {
            if j == i {
                continue;
            }
            let a = distance_pow(xi, &x[j * d..(j + 1) * d], alpha);
            let b = if y[i] == y[j] { 0.0 } else { 1.0 };
            let ac = a - (a_row[i] + a_row[j]) * inv + a_grand;
            let bc = b - (b_row[i] + b_row[j]) * inv + b_grand;
            ab += ac * bc;
            aa += ac * ac;
            bb += bc * bc;
        }
        (ab, aa, bb)
    });
    let scale = 1.0 / (nf * (nf - 3.0));
    let (mut xy, mut xx, mut yy) = (0.0, 0.0, 0.0);
    for (ab, aa, bb) in rows {
        xy += ab;
        xx += aa;
        yy += bb;
    }
    let (xy, xx, yy) = (xy * scale, xx * scale, yy * scale);
    let (dcor, undefined) = correlation(xy, xx, yy);
    Ok(DistanceReport {
        dcov_xy: xy,
        dcov_xx: xx,
        dcov_yy: yy,
        dcor,
        undefined,
        alpha,
        flavor: DistanceFlavor::UnbiasedUCentered,
    })
}

/// Plug-in distance covariance.
///
/// * `dcov_xy = Σ_k p̂_k² T̂(X_k, X)` with V-statistic energy distances,
/// * `dcov_yy = Σ p̂_k² − 2 Σ p̂_k³ + (Σ p̂_k²)²`,
/// * `dcov_xx` is the doubly-centered V-statistic
///   `n⁻² Σ a_ij² − 2 n⁻³ Σ_i a_i·² + (n⁻² Σ a_ij)²`.
pub fn dcov_plugin(dataset: &LabeledDataset, alpha: Alpha) -> Result<DistanceReport> {
    dataset.require_classes(1)?;
    let n = dataset.n();
    let d = dataset.dim();
    let x = dataset.features();
    let nf = n as f64;
    let counts = dataset.groups().counts();
    let p = dataset.groups().proportions();

    let source = PairSource::new(x, d, alpha);
    let (all, same) = source.row_sums(dataset.labels(), &counts);

    let total_gmd = all.iter().sum::<f64>() / (nf * nf);
    let mut cross = vec![0.0; counts.len()];
    let mut within = vec![0.0; counts.len()];
    for (i, &c) in dataset.labels().iter().enumerate() {
        cross[c] += all[i];
        within[c] += same[i];
    }
    let dcov_xy: f64 = (0..counts.len())
        .map(|k| {
            let nk = counts[k] as f64;
            let t = 2.0 * cross[k] / (nk * nf) - within[k] / (nk * nk) - total_gmd;
            p[k] * p[k] * t
        })
        .sum();

    let sum_sq = 2.0
        * ordered_row_sum(n, |i| {
            let xi = &x[i * d..(i + 1) * d];
            ((i + 1)..n)
                .map(|j| {
                    let a = distance_pow(xi, &x[j * d..(j + 1) * d], alpha);
                    a * a
                })
                .sum::<f64>()
        });
    let row_sq: f64 = all.iter().map(|r| r * r).sum();
    let dcov_xx = sum_sq / (nf * nf) - 2.0 * row_sq / (nf * nf * nf) + total_gmd * total_gmd;

    let p2: f64 = p.iter().map(|v| v * v).sum();
    let p3: f64 = p.iter().map(|v| v * v * v).sum();
    let dcov_yy = p2 - 2.0 * p3 + p2 * p2;

    let (dcor, undefined) = correlation(dcov_xy, dcov_xx, dcov_yy);
    Ok(DistanceReport {
        dcov_xy,
        dcov_xx,
        dcov_yy,
        dcor,
        undefined,
        alpha,
        flavor: DistanceFlavor::PluginV,
    })
}

/// Evaluates the unbiased distance correlation under relabelings of a fixed
/// feature sample.
///
/// U-centered matrices have zero off-diagonal row sums, so
/// `Σ_{i≠j} A_ij B_ij = −Σ_{i≠j, y_i = y_j} A_ij`; the label variance depends
/// only on class sizes and is fixed under permutation.
pub(crate) struct UnbiasedDcorPermuter {
    n: usize,
    centered: Vec<f64>,
    dcov_xx: f64,
    dcov_yy: f64,
}

impl UnbiasedDcorPermuter {
    /// Caches the `n × n` centered matrix; callers bound `n`.
    pub fn new(dataset: &LabeledDataset, alpha: Alpha) -> Result<Self> {
        let base = dcov_unbiased(dataset, alpha)?;
        let n = dataset.n();
        let d = dataset.dim();
        let x = dataset.features();
        let nf = n as f64;
        let dist: Vec<Vec<f64>> = per_row(n, |i| {
            let xi = &x[i * d..(i + 1) * d];
            (0..n)
                .map(|j| distance_pow(xi, &x[j * d..(j + 1) * d], alpha))
                .collect()
        });
        let row: Vec<f64> = dist.iter().map(|r| r.iter().sum()).collect();
        let tot: f64 = row.iter().sum();
        let mut centered = vec![0.0; n * n];
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    centered[i * n + j] = dist[i][j] - (row[i] + row[j]) / (nf - 2.0) + tot / ((nf - 1.0) * (nf - 2.0));
                }
            }
        }
        Ok(UnbiasedDcorPermuter {
            n,
            centered,
            dcov_xx: base.dcov_xx,
            dcov_yy: base.dcov_yy,
        })
    }

    pub fn dcov_xy(&self, labels: &[usize]) -> f64 {
        let n = self.n;
        let same: f64 = ordered_row_sum(n, |i| {
            let row = &self.centered[i * n..(i + 1) * n];
            row.iter()
                .enumerate()
                .filter(|&(j, _)| j != i && labels[j] == labels[i])
                .map(|(_, v)| v)
                .sum::<f64>()
        });
        -same / (n as f64 * (n as f64 - 3.0))
    }

    pub fn dcor(&self, labels: &[usize]) -> f64 {
        correlation(self.dcov_xy(labels), self.dcov_xx, self.dcov_yy).0
    }
}
