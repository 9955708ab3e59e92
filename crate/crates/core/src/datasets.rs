//! Bundled reference data.

use crate::csv_input::{read_csv_from, ColumnSelector};
use crate::data::LabeledDataset;

/// Fisher's iris measurements: 150 flowers, four measurements in
/// centimeters, three species of 50.
pub const IRIS_CSV: &str = include_str!("../data/iris.csv");

pub const IRIS_FEATURES: [&str; 4] = ["Sepal.Length", "Sepal.Width", "Petal.Length", "Petal.Width"];

pub fn iris() -> LabeledDataset {
    read_csv_from(IRIS_CSV.as_bytes(), &ColumnSelector::Name("Species".into()), &[])
        .expect("bundled iris data is valid")
}
