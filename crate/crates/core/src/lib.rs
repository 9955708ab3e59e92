//! Gini correlation between a numerical (possibly multivariate) variable and
//! a categorical label.
//!
//! The Gini covariance is the pooled Gini mean difference minus the
//! class-weighted average of within-class Gini mean differences; dividing by
//! the pooled value gives a correlation in `[0, 1]` that is zero exactly when
//! feature and label are independent. Distance covariance under the 0/1 label
//! metric is provided as a baseline, along with jackknife intervals,
//! permutation tests, closed-form population values for two-component
//! mixtures and seeded simulation drivers.
//!
//! ```
//! use ginicor::{gcor, Alpha, EstimatorKind, LabeledDataset};
//!
//! let ds = LabeledDataset::univariate(&[0.0, 0.0, 1.0, 1.0], &["a", "a", "b", "b"]).unwrap();
//! let report = gcor(&ds, Alpha::ONE, EstimatorKind::V).unwrap();
//! assert_eq!(report.estimate, 1.0);
//! ```

pub mod csv_input;
pub mod data;
pub mod datasets;
pub mod dist_cor;
pub mod error;
pub mod gini_cor;
pub mod gmd;
pub mod inference;
pub mod oracles;
pub mod simulate;

pub use csv_input::{read_csv, read_csv_from, read_csv_named, ColumnSelector};
pub use data::{Alpha, EstimatorKind, GroupView, LabeledDataset};
pub use dist_cor::{dcov_plugin, dcov_unbiased, label_metric, DistanceFlavor, DistanceReport};
pub use error::{Error, ErrorCategory, Result};
pub use gini_cor::{
    energy_distance, gcor, gcov, gcov_via_energy, gcov_via_pooled_energy, pearson_r2, screen_features,
    screen_features_timed, CorrelationReport, ScreenedFeature,
};
pub use gmd::{gmd_cross, gmd_pairwise, gmd_sorted_fast, GmdEstimate};
pub use inference::{
    jackknife_ci, jackknife_leave_one_out, permutation_test, power_at, JackknifeInterval, PermutationTestResult,
    TestStatistic,
};
pub use oracles::{Component, MixtureSpec};
