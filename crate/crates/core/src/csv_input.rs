//! Reading labeled datasets from CSV files with a header row.

use std::io::Read;
use std::path::Path;

use crate::data::LabeledDataset;
use crate::error::{Error, Result};

/// A column chosen by header name or by 0-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ColumnSelector {
    Name(String),
    Index(usize),
}

impl ColumnSelector {
    /// Header names take precedence, then a unique case-insensitive match;
    /// an all-digit selector that names no header is read as a 0-based index.
    fn resolve(&self, headers: &csv::StringRecord) -> Result<usize> {
        match self {
            ColumnSelector::Name(name) => {
                if let Some(i) = headers.iter().position(|h| h == name) {
                    return Ok(i);
                }
                let folded: Vec<usize> = (0..headers.len())
                    .filter(|&i| headers[i].eq_ignore_ascii_case(name))
                    .collect();
                if let [i] = folded[..] {
                    return Ok(i);
                }
                match name.parse::<usize>() {
                    Ok(i) if i < headers.len() => Ok(i),
                    _ => Err(Error::UnknownColumn(name.clone())),
                }
            }
            ColumnSelector::Index(i) if *i < headers.len() => Ok(*i),
            ColumnSelector::Index(i) => Err(Error::UnknownColumn(format!("#{i}"))),
        }
    }
}

impl std::str::FromStr for ColumnSelector {
    type Err = std::convert::Infallible;
    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        Ok(ColumnSelector::Name(s.trim().to_string()))
    }
}

impl From<&str> for ColumnSelector {
    fn from(s: &str) -> Self {
        ColumnSelector::Name(s.to_string())
    }
}

impl From<usize> for ColumnSelector {
    fn from(i: usize) -> Self {
        ColumnSelector::Index(i)
    }
}

/// Reads a dataset from a CSV file. With no feature selectors, every column
/// other than the label is a feature, in file order.
pub fn read_csv(path: impl AsRef<Path>, label: &ColumnSelector, features: &[ColumnSelector]) -> Result<LabeledDataset> {
    let file = std::fs::File::open(path.as_ref())?;
    read_csv_from(file, label, features)
}

pub fn read_csv_from<R: Read>(
    reader: R,
    label: &ColumnSelector,
    features: &[ColumnSelector],
) -> Result<LabeledDataset> {
    read_csv_named(reader, label, features).map(|(ds, _)| ds)
}

/// [`read_csv_from`], also returning the header names of the feature columns
/// in dataset order.
pub fn read_csv_named<R: Read>(
    reader: R,
    label: &ColumnSelector,
    features: &[ColumnSelector],
) -> Result<(LabeledDataset, Vec<String>)> {
    let mut rdr = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers()?.clone();
    if headers.is_empty() {
        return Err(Error::EmptyInput);
    }
    let label_col = label.resolve(&headers)?;
    let feature_cols: Vec<usize> = if features.is_empty() {
        (0..headers.len()).filter(|&c| c != label_col).collect()
    } else {
        features.iter().map(|f| f.resolve(&headers)).collect::<Result<_>>()?
    };
    if feature_cols.is_empty() {
        return Err(Error::DimensionMismatch("no feature columns selected".into()));
    }
    let d = feature_cols.len();
    let mut values = Vec::new();
    let mut labels = Vec::new();
    for (r, record) in rdr.records().enumerate() {
        let record = record?;
        for &c in &feature_cols {
            let cell = record.get(c).unwrap_or("");
            let v: f64 = cell.parse().map_err(|_| Error::ParseCell {
                row: r + 1,
                column: headers[c].to_string(),
                value: cell.to_string(),
            })?;
            values.push(v);
        }
        labels.push(record.get(label_col).unwrap_or("").to_string());
    }
    if labels.is_empty() {
        return Err(Error::EmptyInput);
    }
    let names = feature_cols.iter().map(|&c| headers[c].to_string()).collect();
    Ok((LabeledDataset::new(values, d, &labels)?, names))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn read(text: &str, label: &str, features: &[&str]) -> Result<LabeledDataset> {
        let sel: Vec<ColumnSelector> = features.iter().map(|&f| f.into()).collect();
        read_csv_from(text.as_bytes(), &label.into(), &sel)
    }

    #[test]
    fn three_rows() {
        let ds = read("x,y\n1,a\n2,b\n3.5e0,a\n", "y", &[]).unwrap();
        assert_eq!((ds.n(), ds.dim()), (3, 1));
        assert_eq!(ds.features(), &[1.0, 2.0, 3.5]);
    }

    #[test]
    fn bad_cell_names_row_and_column() {
        let err = read("x,y\n1,a\nabc,b\n", "y", &[]).unwrap_err();
        match err {
            Error::ParseCell { row, column, value } => {
                assert_eq!((row, column.as_str(), value.as_str()), (2, "x", "abc"));
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn feature_names_follow_selection() {
        let (_, names) = read_csv_named("a,b,c\n1,2,x\n3,4,y\n".as_bytes(), &"c".into(), &[]).unwrap();
        assert_eq!(names, vec!["a", "b"]);
        let (_, names) = read_csv_named("a,b,c\n1,2,x\n3,4,y\n".as_bytes(), &"c".into(), &["1".into()]).unwrap();
        assert_eq!(names, vec!["b"]);
    }

    #[test]
    fn names_fall_back_to_case_insensitive() {
        let ds = read("x,Species\n1,a\n2,b\n", "species", &[]).unwrap();
        assert_eq!(ds.levels(), &["a".to_string(), "b".to_string()]);
        assert!(matches!(read("x,Y,y\n1,a,a\n", "Z", &[]), Err(Error::UnknownColumn(_))));
    }

    #[test]
    fn projection_keeps_declared_order() {
        let ds = read("x1,x2,x3,y\n1,2,3,a\n4,5,6,b\n", "y", &["x3", "x1"]).unwrap();
        assert_eq!(ds.dim(), 2);
        assert_eq!(ds.row(0), &[3.0, 1.0]);
    }

    #[test]
    fn selectors_by_position_and_missing() {
        let ds = read("x,y\n1,a\n2,b\n", "1", &["0"]).unwrap();
        assert_eq!(ds.levels(), &["a".to_string(), "b".to_string()]);
        assert!(matches!(read("x,y\n1,a\n", "z", &[]), Err(Error::UnknownColumn(_))));
        assert!(matches!(read("x,y\n", "y", &[]), Err(Error::EmptyInput)));
    }
}
