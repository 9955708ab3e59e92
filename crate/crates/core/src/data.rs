//! Labeled datasets, class grouping, and the small parameter types shared by
//! every estimator.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Exponent applied to Euclidean distances, `0 < alpha <= 2`.
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Alpha(f64);

impl TryFrom<f64> for Alpha {
    type Error = Error;
    fn try_from(value: f64) -> Result<Self> {
        Alpha::new(value)
    }
}

impl From<Alpha> for f64 {
    fn from(a: Alpha) -> f64 {
        a.0
    }
}

impl Alpha {
    pub const ONE: Alpha = Alpha(1.0);

    pub fn new(value: f64) -> Result<Self> {
        if value.is_finite() && value > 0.0 && value <= 2.0 {
            Ok(Alpha(value))
        } else {
            Err(Error::InvalidParameter(format!(
                "alpha must lie in (0, 2], got {value}"
            )))
        }
    }

    pub fn value(self) -> f64 {
        self.0
    }

    /// Only `alpha < 2` gives a measure that vanishes exactly under
    /// independence. At `alpha = 2` the Gini correlation of univariate data
    /// collapses to the ANOVA R².
    pub fn is_characterizing(self) -> bool {
        self.0 < 2.0
    }

    pub(crate) fn is_one(self) -> bool {
        self.0 == 1.0
    }
}

impl Default for Alpha {
    fn default() -> Self {
        Alpha::ONE
    }
}

impl fmt::Display for Alpha {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// U-statistics average over distinct pairs; V-statistics average over all
/// ordered pairs including the diagonal.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub enum EstimatorKind {
    U,
    #[default]
    V,
}

impl std::str::FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "U" | "u" => Ok(EstimatorKind::U),
            "V" | "v" => Ok(EstimatorKind::V),
            other => Err(Error::InvalidParameter(format!(
                "estimator kind must be U or V, got `{other}`"
            ))),
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EstimatorKind::U => f.write_str("U"),
            EstimatorKind::V => f.write_str("V"),
        }
    }
}

/// Partition of observation indices by class.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupView {
    indices: Vec<Vec<usize>>,
    n: usize,
}

impl GroupView {
    /// Builds the partition from dense labels in `0..k`.
    pub(crate) fn from_dense(labels: &[usize], k: usize) -> Self {
        let mut indices = vec![Vec::new(); k];
        for (i, &l) in labels.iter().enumerate() {
            indices[l].push(i);
        }
        GroupView {
            indices,
            n: labels.len(),
        }
    }

    pub fn num_groups(&self) -> usize {
        self.indices.len()
    }

    pub fn indices(&self) -> &[Vec<usize>] {
        &self.indices
    }

    pub fn counts(&self) -> Vec<usize> {
        self.indices.iter().map(Vec::len).collect()
    }

    pub fn proportions(&self) -> Vec<f64> {
        let n = self.n as f64;
        self.indices.iter().map(|g| g.len() as f64 / n).collect()
    }
}

/// `n` observations of `d`-dimensional features with a categorical label.
///
/// Features are stored row-major. Labels are mapped to dense indices in
/// first-appearance order; the original level names are retained.
#[derive(Debug, Clone)]
pub struct LabeledDataset {
    features: Vec<f64>,
    n: usize,
    d: usize,
    labels: Vec<usize>,
    levels: Vec<String>,
    groups: GroupView,
}

impl LabeledDataset {
    /// Builds a dataset from a row-major feature buffer of `labels.len()` rows
    /// and `d` columns.
    pub fn new<S: AsRef<str>>(features: Vec<f64>, d: usize, labels: &[S]) -> Result<Self> {
        let mut lookup: HashMap<&str, usize> = HashMap::new();
        let mut levels = Vec::new();
        let mut dense = Vec::with_capacity(labels.len());
        for l in labels {
            let l = l.as_ref();
            let next = levels.len();
            let idx = *lookup.entry(l).or_insert(next);
            if idx == next {
                levels.push(l.to_string());
            }
            dense.push(idx);
        }
        Self::from_parts(features, d, dense, levels)
    }

    /// Builds a dataset from one feature vector per observation.
    pub fn from_rows<S: AsRef<str>>(rows: &[Vec<f64>], labels: &[S]) -> Result<Self> {
        let d = rows.first().map(Vec::len).ok_or(Error::EmptyInput)?;
        if let Some(bad) = rows.iter().position(|r| r.len() != d) {
            return Err(Error::DimensionMismatch(format!(
                "row {} has {} values, expected {d}",
                bad + 1,
                rows[bad].len()
            )));
        }
        Self::new(rows.concat(), d, labels)
    }

    /// Univariate convenience constructor.
    pub fn univariate<S: AsRef<str>>(values: &[f64], labels: &[S]) -> Result<Self> {
        Self::new(values.to_vec(), 1, labels)
    }

    /// Builds a dataset from integer class codes; level names are the codes
    /// rendered as strings.
    pub fn from_codes(features: Vec<f64>, d: usize, codes: &[usize]) -> Result<Self> {
        let names: Vec<String> = codes.iter().map(|c| c.to_string()).collect();
        Self::new(features, d, &names)
    }

    fn from_parts(features: Vec<f64>, d: usize, labels: Vec<usize>, levels: Vec<String>) -> Result<Self> {
        let n = labels.len();
        if n == 0 || features.is_empty() {
            return Err(Error::EmptyInput);
        }
        if d == 0 {
            return Err(Error::DimensionMismatch("feature dimension must be at least 1".into()));
        }
        if features.len() != n * d {
            return Err(Error::DimensionMismatch(format!(
                "{} feature values cannot form {n} rows of dimension {d}",
                features.len()
            )));
        }
        if n < 2 {
            return Err(Error::DimensionMismatch(format!(
                "at least 2 observations are required, got {n}"
            )));
        }
        if let Some(pos) = features.iter().position(|v| !v.is_finite()) {
            return Err(Error::NonFinite {
                row: pos / d + 1,
                col: pos % d + 1,
            });
        }
        let groups = GroupView::from_dense(&labels, levels.len());
        Ok(LabeledDataset {
            features,
            n,
            d,
            labels,
            levels,
            groups,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.d
    }

    pub fn num_classes(&self) -> usize {
        self.levels.len()
    }

    pub fn features(&self) -> &[f64] {
        &self.features
    }

    pub fn row(&self, i: usize) -> &[f64] {
        &self.features[i * self.d..(i + 1) * self.d]
    }

    /// Strided view of one feature column; nothing is copied.
    pub fn column(&self, j: usize) -> impl ExactSizeIterator<Item = f64> + '_ {
        assert!(j < self.d, "column {j} out of range for dimension {}", self.d);
        self.features.iter().skip(j).step_by(self.d).copied()
    }

    /// Dense class index of every observation, in `0..num_classes()`.
    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn levels(&self) -> &[String] {
        &self.levels
    }

    pub fn groups(&self) -> &GroupView {
        &self.groups
    }

    /// Copies the selected observations (in the given order) into a new
    /// dataset. Levels that no longer occur are dropped.
    pub fn subset(&self, rows: &[usize]) -> Result<Self> {
        let mut features = Vec::with_capacity(rows.len() * self.d);
        let mut names = Vec::with_capacity(rows.len());
        for &i in rows {
            features.extend_from_slice(self.row(i));
            names.push(self.levels[self.labels[i]].as_str());
        }
        Self::new(features, self.d, &names)
    }

    /// Copies a single feature column into a univariate dataset.
    pub fn select_column(&self, j: usize) -> Result<Self> {
        Self::from_parts(self.column(j).collect(), 1, self.labels.clone(), self.levels.clone())
    }

    /// Same features with a replacement set of dense labels.
    pub fn with_labels(&self, labels: Vec<usize>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::DimensionMismatch(format!(
                "{} labels for {} observations",
                labels.len(),
                self.n
            )));
        }
        let names: Vec<String> = labels
            .iter()
            .map(|&l| self.levels.get(l).cloned().unwrap_or_else(|| format!("#{}", l + 1)))
            .collect();
        Self::new(self.features.clone(), self.d, &names)
    }

    /// Applies `f` to every row, producing a dataset with the same labels.
    pub fn map_rows<F>(&self, out_dim: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&[f64], &mut [f64]),
    {
        let mut features = vec![0.0; self.n * out_dim];
        for i in 0..self.n {
            f(self.row(i), &mut features[i * out_dim..(i + 1) * out_dim]);
        }
        Self::from_parts(features, out_dim, self.labels.clone(), self.levels.clone())
    }

    /// Error unless every class has at least `min` members and there are at
    /// least two classes.
    pub(crate) fn require_classes(&self, min: usize) -> Result<()> {
        if self.num_classes() < 2 {
            return Err(Error::SingleClass(self.num_classes()));
        }
        for (k, g) in self.groups.indices().iter().enumerate() {
            if g.len() < min {
                return Err(Error::SmallClass {
                    level: self.levels[k].clone(),
                    size: g.len(),
                    required: min,
                });
            }
        }
        Ok(())
    }
}
