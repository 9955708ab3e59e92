//! Gini mean difference estimators.
//!
//! Every estimator here is built from plain pair sums `Σ_{i<j} ‖x_i − x_j‖^α`;
//! the U and V forms only differ in the normalizer, so `V = U·(m−1)/m` holds
//! to rounding.

use rayon::prelude::*;
use serde::Serialize;

use crate::data::{Alpha, EstimatorKind};
use crate::error::{Error, Result};

/// Rows at or above this count are summed in parallel.
const PAR_ROWS: usize = 512;

/// A Gini mean difference estimate `E‖X − X′‖^α`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GmdEstimate {
    pub value: f64,
    pub kind: EstimatorKind,
    pub alpha: Alpha,
    pub n: usize,
}

/// `‖a − b‖^α` with the square root special-cased for `α = 1`.
#[inline]
pub fn distance_pow(a: &[f64], b: &[f64], alpha: Alpha) -> f64 {
    let sq: f64 = a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum();
    let alpha = alpha.value();
    if alpha == 1.0 {
        sq.sqrt()
    } else if alpha == 2.0 {
        sq
    } else {
        sq.powf(alpha / 2.0)
    }
}

/// Converts a sum over unordered distinct pairs into a U or V mean.
pub(crate) fn normalize_pair_sum(sum: f64, m: usize, kind: EstimatorKind) -> f64 {
    let m = m as f64;
    match kind {
        EstimatorKind::U => 2.0 * sum / (m * (m - 1.0)),
        EstimatorKind::V => 2.0 * sum / (m * m),
    }
}

pub(crate) fn check_size(m: usize, kind: EstimatorKind) -> Result<()> {
    let min = match kind {
        EstimatorKind::U => 2,
        EstimatorKind::V => 1,
    };
    if m < min {
        return Err(Error::InvalidParameter(format!(
            "{kind}-statistic needs at least {min} observation(s), got {m}"
        )));
    }
    Ok(())
}

fn rows_of(sample: &[f64], d: usize) -> Result<usize> {
    if d == 0 || !sample.len().is_multiple_of(d) {
        return Err(Error::DimensionMismatch(format!(
            "{} values do not form rows of dimension {d}",
            sample.len()
        )));
    }
    Ok(sample.len() / d)
}

/// Sums `f(i)` for `i in 0..m`, in parallel for large `m`. Partial results are
/// combined in index order so the total does not depend on scheduling.
pub(crate) fn ordered_row_sum<F>(m: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    if m >= PAR_ROWS {
        let rows: Vec<f64> = (0..m).into_par_iter().map(&f).collect();
        rows.iter().sum()
    } else {
        (0..m).map(f).sum()
    }
}

/// Evaluates `f(i)` for every row, in parallel for large `m`.
pub(crate) fn per_row<T, F>(m: usize, f: F) -> Vec<T>
where
    T: Send,
    F: Fn(usize) -> T + Sync + Send,
{
    if m >= PAR_ROWS {
        (0..m).into_par_iter().map(f).collect()
    } else {
        (0..m).map(f).collect()
    }
}

/// `Σ_{i<j} ‖x_i − x_j‖^α` over the rows of a row-major sample.
pub(crate) fn pair_sum(sample: &[f64], d: usize, alpha: Alpha) -> f64 {
    let m = sample.len() / d;
    ordered_row_sum(m, |i| {
        let xi = &sample[i * d..(i + 1) * d];
        let mut acc = 0.0;
        for j in (i + 1)..m {
            acc += distance_pow(xi, &sample[j * d..(j + 1) * d], alpha);
        }
        acc
    })
}

/// `Σ_{i<j} |x_i − x_j|` via order statistics: `Σ_i (2i − m − 1)·x_(i)`.
pub(crate) fn sorted_pair_sum(sorted: &[f64]) -> f64 {
    let m = sorted.len() as f64;
    sorted
        .iter()
        .enumerate()
        .map(|(i, &x)| (2.0 * (i as f64 + 1.0) - m - 1.0) * x)
        .sum()
}

/// Pairwise Gini mean difference of an `m × d` row-major sample.
pub fn gmd_pairwise(sample: &[f64], d: usize, alpha: Alpha, kind: EstimatorKind) -> Result<GmdEstimate> {
    let m = rows_of(sample, d)?;
    check_size(m, kind)?;
    let value = normalize_pair_sum(pair_sum(sample, d, alpha), m, kind);
    Ok(GmdEstimate {
        value,
        kind,
        alpha,
        n: m,
    })
}

/// Univariate `α = 1` Gini mean difference in `O(m log m)` from the sorted
/// sample. Ties need no special treatment.
pub fn gmd_sorted_fast(sample: &[f64], kind: EstimatorKind) -> Result<GmdEstimate> {
    let m = sample.len();
    check_size(m, kind)?;
    let mut sorted = sample.to_vec();
    sorted.sort_by(f64::total_cmp);
    let value = normalize_pair_sum(sorted_pair_sum(&sorted), m, kind);
    Ok(GmdEstimate {
        value,
        kind,
        alpha: Alpha::ONE,
        n: m,
    })
}

/// Mean of all `m_a · m_b` cross distances `‖a_i − b_j‖^α`.
pub fn gmd_cross(sample_a: &[f64], sample_b: &[f64], d: usize, alpha: Alpha) -> Result<GmdEstimate> {
    let ma = rows_of(sample_a, d)?;
    let mb = rows_of(sample_b, d)?;
    if ma == 0 || mb == 0 {
        return Err(Error::EmptyInput);
    }
    let total = ordered_row_sum(ma, |i| {
        let ai = &sample_a[i * d..(i + 1) * d];
        (0..mb)
            .map(|j| distance_pow(ai, &sample_b[j * d..(j + 1) * d], alpha))
            .sum::<f64>()
    });
    Ok(GmdEstimate {
        value: total / (ma as f64 * mb as f64),
        kind: EstimatorKind::V,
        alpha,
        n: ma + mb,
    })
}

/// Pooled and within-class pair sums of a labeled sample: everything the
/// Gini covariance needs.
#[derive(Debug, Clone, PartialEq)]
pub(crate) struct PairSums {
    /// `Σ_{i<j}` over all observations.
    pub total: f64,
    /// `Σ_{i<j}` over pairs inside each class.
    pub within: Vec<f64>,
}

/// Pair sums by direct enumeration, any `d` and `α`.
pub(crate) fn grouped_pair_sums(features: &[f64], d: usize, labels: &[usize], k: usize, alpha: Alpha) -> PairSums {
    let n = labels.len();
    let rows: Vec<(f64, f64)> = per_row(n, |i| {
        let xi = &features[i * d..(i + 1) * d];
        let (mut all, mut same) = (0.0, 0.0);
        for j in (i + 1)..n {
            let v = distance_pow(xi, &features[j * d..(j + 1) * d], alpha);
            all += v;
            if labels[j] == labels[i] {
                same += v;
            }
        }
        (all, same)
    });
    let mut total = 0.0;
    let mut within = vec![0.0; k];
    for (i, (all, same)) in rows.into_iter().enumerate() {
        total += all;
        within[labels[i]] += same;
    }
    PairSums { total, within }
}

/// Univariate `α = 1` values prepared for repeated grouped evaluation: the
/// sort happens once, after which any labeling is summed in `O(n)`.
#[derive(Debug, Clone)]
pub(crate) struct SortedSample {
    /// Observation indices in ascending order of value (stable).
    pub order: Vec<usize>,
    /// Values in ascending order.
    pub values: Vec<f64>,
    pub total: f64,
}

impl SortedSample {
    pub fn new(x: &[f64]) -> Self {
        let mut order: Vec<usize> = (0..x.len()).collect();
        order.sort_by(|&a, &b| x[a].total_cmp(&x[b]));
        let values: Vec<f64> = order.iter().map(|&i| x[i]).collect();
        let total = sorted_pair_sum(&values);
        SortedSample { order, values, total }
    }

    /// Within-class sums for the given dense labels; `counts[c]` must be the
    /// size of class `c`.
    pub fn within(&self, labels: &[usize], counts: &[usize]) -> Vec<f64> {
        let mut seen = vec![0usize; counts.len()];
        let mut within = vec![0.0; counts.len()];
        for (&i, &x) in self.order.iter().zip(&self.values) {
            let c = labels[i];
            seen[c] += 1;
            within[c] += (2.0 * seen[c] as f64 - counts[c] as f64 - 1.0) * x;
        }
        within
    }

    pub fn pair_sums(&self, labels: &[usize], counts: &[usize]) -> PairSums {
        PairSums {
            total: self.total,
            within: self.within(labels, counts),
        }
    }

    /// Per-observation row sums `Σ_j |x_i − x_j|` over all observations and
    /// over the observation's own class, from prefix sums along the order.
    pub fn row_sums(&self, labels: &[usize], counts: &[usize]) -> (Vec<f64>, Vec<f64>) {
        let n = self.values.len();
        let mut all = vec![0.0; n];
        let sum_all: f64 = self.values.iter().sum();
        let mut prefix = 0.0;
        for (rank, (&i, &x)) in self.order.iter().zip(&self.values).enumerate() {
            let below = rank as f64;
            let above = (n - rank - 1) as f64;
            let suffix = sum_all - prefix - x;
            all[i] = x * below - prefix + suffix - x * above;
            prefix += x;
        }

        let k = counts.len();
        let mut class_total = vec![0.0; k];
        for (&i, &x) in self.order.iter().zip(&self.values) {
            class_total[labels[i]] += x;
        }
        let mut class_prefix = vec![0.0; k];
        let mut seen = vec![0usize; k];
        let mut same = vec![0.0; n];
        for (&i, &x) in self.order.iter().zip(&self.values) {
            let c = labels[i];
            let below = seen[c] as f64;
            let above = (counts[c] - seen[c] - 1) as f64;
            let suffix = class_total[c] - class_prefix[c] - x;
            same[i] = x * below - class_prefix[c] + suffix - x * above;
            class_prefix[c] += x;
            seen[c] += 1;
        }
        (all, same)
    }
}

/// Row sums `Σ_j ‖x_i − x_j‖^α` over all observations and over the
/// observation's own class, by direct enumeration.
pub(crate) fn grouped_row_sums(features: &[f64], d: usize, labels: &[usize], alpha: Alpha) -> (Vec<f64>, Vec<f64>) {
    let n = labels.len();
    per_row(n, |i| {
        let xi = &features[i * d..(i + 1) * d];
        let (mut all, mut same) = (0.0, 0.0);
        for j in 0..n {
            if j == i {
                continue;
            }
            let v = distance_pow(xi, &features[j * d..(j + 1) * d], alpha);
            all += v;
            if labels[j] == labels[i] {
                same += v;
            }
        }
        (all, same)
    })
    .into_iter()
    .unzip()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn a(v: f64) -> Alpha {
        Alpha::new(v).unwrap()
    }

    /// Ordered double sum over every (i, j), independent of the pair-sum path.
    fn brute_v(sample: &[f64], d: usize, alpha: f64) -> f64 {
        let m = sample.len() / d;
        let mut s = 0.0;
        for i in 0..m {
            for j in 0..m {
                let sq: f64 = (0..d).map(|c| (sample[i * d + c] - sample[j * d + c]).powi(2)).sum();
                s += sq.sqrt().powf(alpha);
            }
        }
        s / (m * m) as f64
    }

    #[test]
    fn single_pair() {
        let s = [0.0, 2.0];
        assert_eq!(gmd_pairwise(&s, 1, Alpha::ONE, EstimatorKind::U).unwrap().value, 2.0);
        assert_eq!(gmd_pairwise(&s, 1, Alpha::ONE, EstimatorKind::V).unwrap().value, 1.0);
    }

    #[test]
    fn three_points() {
        let s = [1.0, 2.0, 4.0];
        assert_eq!(gmd_pairwise(&s, 1, Alpha::ONE, EstimatorKind::U).unwrap().value, 2.0);
        assert_eq!(sorted_pair_sum(&s), 6.0);
        assert_eq!(gmd_sorted_fast(&[4.0, 1.0, 2.0], EstimatorKind::U).unwrap().value, 2.0);
    }

    #[test]
    fn constant_sample_is_zero() {
        for kind in [EstimatorKind::U, EstimatorKind::V] {
            assert_eq!(gmd_pairwise(&[3.5; 3], 1, a(0.7), kind).unwrap().value, 0.0);
            assert_eq!(gmd_sorted_fast(&[5.0; 4], kind).unwrap().value, 0.0);
        }
    }

    #[test]
    fn u_needs_two_points() {
        assert!(gmd_pairwise(&[1.0], 1, Alpha::ONE, EstimatorKind::U).is_err());
        assert!(gmd_sorted_fast(&[1.0], EstimatorKind::U).is_err());
        assert_eq!(
            gmd_pairwise(&[1.0], 1, Alpha::ONE, EstimatorKind::V).unwrap().value,
            0.0
        );
    }

    #[test]
    fn cross_means() {
        assert_eq!(gmd_cross(&[0.0], &[3.0], 1, Alpha::ONE).unwrap().value, 3.0);
        assert_eq!(gmd_cross(&[0.0, 1.0], &[0.0, 1.0], 1, Alpha::ONE).unwrap().value, 0.5);
        assert_eq!(gmd_cross(&[2.0, 2.0], &[2.0, 2.0], 2, a(0.5)).unwrap().value, 0.0);
        assert!(gmd_cross(&[], &[1.0], 1, Alpha::ONE).is_err());
    }

    #[test]
    fn multivariate_matches_brute_force() {
        let s = [0.0, 0.0, 3.0, 4.0, 1.0, -1.0, 2.5, 0.5];
        for alpha in [0.5, 1.0, 1.5, 2.0] {
            let got = gmd_pairwise(&s, 2, a(alpha), EstimatorKind::V).unwrap().value;
            let want = brute_v(&s, 2, alpha);
            assert!((got - want).abs() <= 1e-13 * want, "alpha={alpha}: {got} vs {want}");
        }
    }

    #[test]
    fn row_sums_match_enumeration() {
        let x = [3.0, 1.0, 4.0, 1.0, 5.0, 9.0, 2.0, 6.0];
        let labels = [0, 1, 0, 1, 2, 0, 2, 1];
        let counts = [3, 3, 2];
        let sorted = SortedSample::new(&x);
        let (all, same) = sorted.row_sums(&labels, &counts);
        let (all2, same2) = grouped_row_sums(&x, 1, &labels, Alpha::ONE);
        for i in 0..x.len() {
            assert!((all[i] - all2[i]).abs() < 1e-12);
            assert!((same[i] - same2[i]).abs() < 1e-12);
        }
        let direct = grouped_pair_sums(&x, 1, &labels, 3, Alpha::ONE);
        let fast = sorted.pair_sums(&labels, &counts);
        assert!((direct.total - fast.total).abs() < 1e-12);
        for c in 0..3 {
            assert!((direct.within[c] - fast.within[c]).abs() < 1e-12);
        }
    }

    proptest! {
        #[test]
        fn fast_path_equals_pairwise(xs in prop::collection::vec(-50i32..50, 2..64), scale in 0.01f64..10.0) {
            // integer grid produces plenty of ties
            let x: Vec<f64> = xs.iter().map(|&v| v as f64 * scale).collect();
            for kind in [EstimatorKind::U, EstimatorKind::V] {
                let fast = gmd_sorted_fast(&x, kind).unwrap().value;
                let slow = gmd_pairwise(&x, 1, Alpha::ONE, kind).unwrap().value;
                prop_assert!((fast - slow).abs() <= 1e-10 * slow.abs().max(1e-300));
            }
        }

        #[test]
        fn u_v_relation(x in prop::collection::vec(-10.0f64..10.0, 2..40), alpha in 0.1f64..2.0) {
            let m = x.len() as f64;
            let u = gmd_pairwise(&x, 1, a(alpha), EstimatorKind::U).unwrap().value;
            let v = gmd_pairwise(&x, 1, a(alpha), EstimatorKind::V).unwrap().value;
            prop_assert!((v - u * (m - 1.0) / m).abs() <= 1e-12 * v.abs().max(1e-300));
        }

        #[test]
        fn scale_equivariance(x in prop::collection::vec(-10.0f64..10.0, 4..30), c in -5.0f64..5.0, alpha in 0.1f64..2.0) {
            prop_assume!(c.abs() > 1e-3);
            let scaled: Vec<f64> = x.iter().map(|v| v * c).collect();
            let g = gmd_pairwise(&x, 2, a(alpha), EstimatorKind::V);
            let gs = gmd_pairwise(&scaled, 2, a(alpha), EstimatorKind::V);
            if let (Ok(g), Ok(gs)) = (g, gs) {
                let want = c.abs().powf(alpha) * g.value;
                prop_assert!((gs.value - want).abs() <= 1e-12 * want.abs().max(1e-300));
            }
        }
    }
}
