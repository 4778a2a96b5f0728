//! Labeled multidimensional datasets and candidate scatterplot enumeration.

use std::collections::HashMap;
use std::io::Read;

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum DataError {
    #[error("input is empty")]
    Empty,
    #[error("missing header row")]
    MissingHeader,
    #[error("label column `{0}` not found in header")]
    MissingLabelColumn(String),
    #[error("dataset needs at least 2 numeric columns, found {0}")]
    TooFewDimensions(usize),
    #[error("dataset has no data rows")]
    NoRows,
    #[error("row {row}: expected {expected} fields, found {found}")]
    RaggedRow { row: usize, expected: usize, found: usize },
    #[error("row {row}, column {column}: missing value")]
    MissingValue { row: usize, column: String },
    #[error("row {row}, column {column}: `{value}` is not a number")]
    NonNumeric { row: usize, column: String, value: String },
    #[error("row {row}, column {column}: value is not finite")]
    NonFinite { row: usize, column: String },
    #[error("duplicate column name `{0}`")]
    DuplicateColumn(String),
    #[error("unknown dimension `{0}`")]
    UnknownDimension(String),
    #[error("dimension `{0}` appears in both the x and y sets")]
    OverlappingAxes(String),
    #[error("dimension `{0}` listed more than once")]
    RepeatedDimension(String),
    #[error("bipartite mode needs nonempty x and y dimension sets")]
    EmptyAxisSet,
    #[error("csv: {0}")]
    Csv(String),
}

/// `n` rows of `m` named numeric dimensions plus one categorical label per row.
///
/// Values are stored column-major. Class ids index into `class_names`, which
/// lists distinct labels in order of first appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dim_names: Vec<String>,
    columns: Vec<Vec<f64>>,
    labels: Vec<usize>,
    class_names: Vec<String>,
}

impl Dataset {
    /// Builds a dataset from columns and string labels, checking shape and finiteness.
    pub fn new<S: AsRef<str>>(
        dim_names: Vec<String>,
        columns: Vec<Vec<f64>>,
        labels: &[S],
    ) -> Result<Self, DataError> {
        if columns.len() < 2 || dim_names.len() != columns.len() {
            return Err(DataError::TooFewDimensions(columns.len().min(dim_names.len())));
        }
        let n = labels.len();
        if n == 0 {
            return Err(DataError::NoRows);
        }
        let mut seen = HashMap::new();
        for name in &dim_names {
            if seen.insert(name.as_str(), ()).is_some() {
                return Err(DataError::DuplicateColumn(name.clone()));
            }
        }
        for (name, col) in dim_names.iter().zip(&columns) {
            if col.len() != n {
                return Err(DataError::RaggedRow {
                    row: col.len().min(n) + 1,
                    expected: n,
                    found: col.len(),
                });
            }
            if let Some(row) = col.iter().position(|v| !v.is_finite()) {
                return Err(DataError::NonFinite { row: row + 1, column: name.clone() });
            }
        }
        let (labels, class_names) = encode_labels(labels);
        Ok(Self { dim_names, columns, labels, class_names })
    }

    pub fn n_rows(&self) -> usize {
        self.labels.len()
    }

    pub fn n_dims(&self) -> usize {
        self.columns.len()
    }

    pub fn n_classes(&self) -> usize {
        self.class_names.len()
    }

    pub fn dim_names(&self) -> &[String] {
        &self.dim_names
    }

    pub fn dim_name(&self, dim: usize) -> &str {
        &self.dim_names[dim]
    }

    pub fn dim_index(&self, name: &str) -> Option<usize> {
        self.dim_names.iter().position(|d| d == name)
    }

    pub fn column(&self, dim: usize) -> &[f64] {
        &self.columns[dim]
    }

    pub fn labels(&self) -> &[usize] {
        &self.labels
    }

    pub fn class_names(&self) -> &[String] {
        &self.class_names
    }

    /// Min-max scales every dimension to `[0, 1]`; constant dimensions become 0.5.
    pub fn normalize(&self) -> Dataset {
        let columns = self.columns.iter().map(|c| normalize_column(c)).collect();
        Dataset {
            dim_names: self.dim_names.clone(),
            columns,
            labels: self.labels.clone(),
            class_names: self.class_names.clone(),
        }
    }

    /// Points `(x, y)` for the spec's two dimensions, in row order.
    pub fn points(&self, spec: &ScatterplotSpec) -> Vec<[f64; 2]> {
        self.columns[spec.x_dim]
            .iter()
            .zip(&self.columns[spec.y_dim])
            .map(|(&x, &y)| [x, y])
            .collect()
    }
}

fn encode_labels<S: AsRef<str>>(raw: &[S]) -> (Vec<usize>, Vec<String>) {
    let mut index: HashMap<&str, usize> = HashMap::new();
    let mut names = Vec::new();
    let ids = raw
        .iter()
        .map(|s| {
            let s = s.as_ref();
            *index.entry(s).or_insert_with(|| {
                names.push(s.to_string());
                names.len() - 1
            })
        })
        .collect();
    (ids, names)
}

pub fn normalize_column(col: &[f64]) -> Vec<f64> {
    let (lo, hi) = col
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), &v| (lo.min(v), hi.max(v)));
    let span = hi - lo;
    if span.is_nan() || span <= 0.0 {
        return vec![0.5; col.len()];
    }
    col.iter().map(|&v| ((v - lo) / span).clamp(0.0, 1.0)).collect()
}

/// Reads delimited text with a header row. Every column other than `label_column`
/// must be numeric. Row numbers in diagnostics count data rows from 1.
pub fn load_dataset<R: Read>(source: R, label_column: &str, delimiter: u8) -> Result<Dataset, DataError> {
    let mut reader = csv::ReaderBuilder::new()
        .delimiter(delimiter)
        .has_headers(false)
        .flexible(true)
        .from_reader(source);
    let mut records = reader.records();

    let header = match records.next() {
        None => return Err(DataError::Empty),
        Some(rec) => rec.map_err(|e| DataError::Csv(e.to_string()))?,
    };
    let header: Vec<String> = header.iter().map(|h| h.trim().to_string()).collect();
    if header.iter().all(|h| h.is_empty()) {
        return Err(DataError::MissingHeader);
    }
    let label_idx = header
        .iter()
        .position(|h| h == label_column)
        .ok_or_else(|| DataError::MissingLabelColumn(label_column.to_string()))?;
    let numeric: Vec<usize> = (0..header.len()).filter(|&i| i != label_idx).collect();
    if numeric.len() < 2 {
        return Err(DataError::TooFewDimensions(numeric.len()));
    }

    let mut columns = vec![Vec::new(); numeric.len()];
    let mut labels = Vec::new();
    for (i, rec) in records.enumerate() {
        let row = i + 1;
        let rec = rec.map_err(|e| DataError::Csv(e.to_string()))?;
        if rec.len() == 1 && rec.get(0).is_some_and(|f| f.trim().is_empty()) {
            continue;
        }
        if rec.len() != header.len() {
            return Err(DataError::RaggedRow { row, expected: header.len(), found: rec.len() });
        }
        for (col, &field_idx) in columns.iter_mut().zip(&numeric) {
            let raw = rec[field_idx].trim();
            let name = &header[field_idx];
            if raw.is_empty() {
                return Err(DataError::MissingValue { row, column: name.clone() });
            }
            let v: f64 = raw.parse().map_err(|_| DataError::NonNumeric {
                row,
                column: name.clone(),
                value: raw.to_string(),
            })?;
            if !v.is_finite() {
                return Err(DataError::NonFinite { row, column: name.clone() });
            }
            col.push(v);
        }
        labels.push(rec[label_idx].trim().to_string());
    }
    if labels.is_empty() {
        return Err(DataError::NoRows);
    }
    let dim_names = numeric.iter().map(|&i| header[i].clone()).collect();
    Dataset::new(dim_names, columns, &labels)
}

/// One candidate scatterplot: dimension `x_dim` on the horizontal axis, `y_dim` vertical.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct ScatterplotSpec {
    pub id: usize,
    pub x_dim: usize,
    pub y_dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairMode {
    AllPairs,
    /// Explanatory dimensions on x crossed with objective dimensions on y.
    Bipartite { x_dims: Vec<String>, y_dims: Vec<String> },
}

/// Lists candidate scatterplots in lexicographic `(x_dim, y_dim)` order with ids `0..N`.
pub fn enumerate_scatterplots(d: &Dataset, mode: &PairMode) -> Result<Vec<ScatterplotSpec>, DataError> {
    let pairs: Vec<(usize, usize)> = match mode {
        PairMode::AllPairs => {
            let m = d.n_dims();
            (0..m).flat_map(|i| (i + 1..m).map(move |j| (i, j))).collect()
        }
        PairMode::Bipartite { x_dims, y_dims } => {
            if x_dims.is_empty() || y_dims.is_empty() {
                return Err(DataError::EmptyAxisSet);
            }
            if let Some(dup) = x_dims.iter().find(|x| y_dims.contains(x)) {
                return Err(DataError::OverlappingAxes(dup.clone()));
            }
            let xs = resolve_dims(d, x_dims)?;
            let ys = resolve_dims(d, y_dims)?;
            let mut pairs: Vec<_> = xs.iter().flat_map(|&x| ys.iter().map(move |&y| (x, y))).collect();
            pairs.sort_unstable();
            pairs
        }
    };
    Ok(pairs
        .into_iter()
        .enumerate()
        .map(|(id, (x_dim, y_dim))| ScatterplotSpec { id, x_dim, y_dim })
        .collect())
}

fn resolve_dims(d: &Dataset, names: &[String]) -> Result<Vec<usize>, DataError> {
    let mut out: Vec<usize> = Vec::with_capacity(names.len());
    for name in names {
        let idx = d.dim_index(name).ok_or_else(|| DataError::UnknownDimension(name.clone()))?;
        if out.contains(&idx) {
            return Err(DataError::RepeatedDimension(name.clone()));
        }
        out.push(idx);
    }
    Ok(out)
}
