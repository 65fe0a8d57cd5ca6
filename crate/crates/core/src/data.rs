//! Dataset representation: column roles, normalization, group partitioning
//! and train/test splitting.

use nalgebra::DMatrix;
use rand::Rng;
use thiserror::Error;

use crate::amputation::MechanismSpec;

#[derive(Debug, Error)]
pub enum DataError {
    #[error("dataset has no rows")]
    Empty,
    #[error("matrix has {cols} columns but {names} column names were given")]
    NameCountMismatch { cols: usize, names: usize },
    #[error("duplicate column name `{0}`")]
    DuplicateColumnName(String),
    #[error("non-finite value at row {row}, column `{column}`")]
    NonFinite { row: usize, column: String },
    #[error("column index {0} out of range")]
    ColumnOutOfRange(usize),
    #[error("column `{column}` must contain exactly two distinct values, found {distinct}")]
    NotBinary { column: String, distinct: usize },
    #[error("majority value {value} never occurs in column `{column}`")]
    MajorityValueAbsent { value: f64, column: String },
    #[error("columns {0} and {1} cannot share a role")]
    RoleOverlap(usize, usize),
    #[error("train fraction {0} must lie strictly between 0 and 1")]
    InvalidTrainFraction(f64),
    #[error("split of {n} rows with train fraction {fraction} leaves an empty part")]
    EmptySplit { n: usize, fraction: f64 },
    #[error("dataset has no sensitive column")]
    NoSensitiveColumn,
    #[error("empty {group} group (value {value}) in column `{column}`")]
    EmptyGroup {
        group: &'static str,
        value: f64,
        column: String,
    },
}

/// Column-role metadata shared by complete and masked datasets.
#[derive(Debug, Clone, PartialEq)]
pub struct ColumnRoles {
    pub column_names: Vec<String>,
    /// Primary binary sensitive attribute, if any.
    pub sensitive_col: Option<usize>,
    /// Value of the sensitive column that labels the majority group.
    pub majority_value: f64,
    /// Outcome column for prediction experiments, if any.
    pub response_col: Option<usize>,
    /// Additional binary attribute columns used only as metric groupings,
    /// stored as (column, majority value). Excluded from the feature set.
    pub aux_groups: Vec<(usize, f64)>,
}

impl ColumnRoles {
    /// Roles for a plain feature matrix without attribute columns.
    pub fn plain(column_names: Vec<String>) -> Self {
        ColumnRoles {
            column_names,
            sensitive_col: None,
            majority_value: 1.0,
            response_col: None,
            aux_groups: Vec::new(),
        }
    }

    pub fn p(&self) -> usize {
        self.column_names.len()
    }

    /// True for sensitive, response and auxiliary grouping columns.
    pub fn is_attribute(&self, col: usize) -> bool {
        self.sensitive_col == Some(col)
            || self.response_col == Some(col)
            || self.aux_groups.iter().any(|&(c, _)| c == col)
    }

    /// Feature columns in ascending index order (everything that is not an
    /// attribute column). Only these are eligible for amputation.
    pub fn feature_cols(&self) -> Vec<usize> {
        (0..self.p()).filter(|&c| !self.is_attribute(c)).collect()
    }

    /// All configured groupings: the primary sensitive attribute first,
    /// then the auxiliary ones, each named after its column.
    pub fn groupings(&self) -> Vec<Grouping> {
        let mut out = Vec::new();
        if let Some(col) = self.sensitive_col {
            out.push(Grouping {
                name: self.column_names[col].clone(),
                col,
                majority_value: self.majority_value,
            });
        }
        for &(col, majority_value) in &self.aux_groups {
            out.push(Grouping {
                name: self.column_names[col].clone(),
                col,
                majority_value,
            });
        }
        out
    }
}

/// A binary grouping attribute used by fairness metrics.
#[derive(Debug, Clone, PartialEq)]
pub struct Grouping {
    pub name: String,
    pub col: usize,
    pub majority_value: f64,
}

/// Complete numeric dataset: an n x p matrix plus column roles.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    pub values: DMatrix<f64>,
    pub roles: ColumnRoles,
}

impl Dataset {
    /// Build a dataset from a finite value matrix and column names.
    pub fn new(values: DMatrix<f64>, column_names: Vec<String>) -> Result<Self, DataError> {
        if values.nrows() == 0 {
            return Err(DataError::Empty);
        }
        if values.ncols() != column_names.len() {
            return Err(DataError::NameCountMismatch {
                cols: values.ncols(),
                names: column_names.len(),
            });
        }
        for (idx, name) in column_names.iter().enumerate() {
            if column_names[..idx].contains(name) {
                return Err(DataError::DuplicateColumnName(name.clone()));
            }
        }
        for i in 0..values.nrows() {
            for j in 0..values.ncols() {
                if !values[(i, j)].is_finite() {
                    return Err(DataError::NonFinite {
                        row: i,
                        column: column_names[j].clone(),
                    });
                }
            }
        }
        Ok(Dataset {
            values,
            roles: ColumnRoles::plain(column_names),
        })
    }

    /// Declare the primary binary sensitive attribute.
    pub fn with_sensitive(mut self, col: usize, majority_value: f64) -> Result<Self, DataError> {
        self.check_binary(col, majority_value)?;
        if self.roles.response_col == Some(col) {
            return Err(DataError::RoleOverlap(col, col));
        }
        self.roles.sensitive_col = Some(col);
        self.roles.majority_value = majority_value;
        Ok(self)
    }

    /// Declare the outcome column.
    pub fn with_response(mut self, col: usize) -> Result<Self, DataError> {
        if col >= self.p() {
            return Err(DataError::ColumnOutOfRange(col));
        }
        if self.roles.sensitive_col == Some(col)
            || self.roles.aux_groups.iter().any(|&(c, _)| c == col)
        {
            return Err(DataError::RoleOverlap(col, col));
        }
        self.roles.response_col = Some(col);
        Ok(self)
    }

    /// Declare an auxiliary binary grouping attribute (metrics only).
    pub fn with_aux_group(mut self, col: usize, majority_value: f64) -> Result<Self, DataError> {
        self.check_binary(col, majority_value)?;
        if self.roles.is_attribute(col) {
            return Err(DataError::RoleOverlap(col, col));
        }
        self.roles.aux_groups.push((col, majority_value));
        Ok(self)
    }

    fn check_binary(&self, col: usize, majority_value: f64) -> Result<(), DataError> {
        if col >= self.p() {
            return Err(DataError::ColumnOutOfRange(col));
        }
        let mut distinct: Vec<f64> = Vec::new();
        for i in 0..self.n() {
            let v = self.values[(i, col)];
            if !distinct.contains(&v) {
                distinct.push(v);
            }
        }
        if distinct.len() != 2 {
            return Err(DataError::NotBinary {
                column: self.roles.column_names[col].clone(),
                distinct: distinct.len(),
            });
        }
        if !distinct.contains(&majority_value) {
            return Err(DataError::MajorityValueAbsent {
                value: majority_value,
                column: self.roles.column_names[col].clone(),
            });
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.values.nrows()
    }

    pub fn p(&self) -> usize {
        self.values.ncols()
    }

    /// New dataset containing the given rows (in the given order), with the
    /// same column roles.
    pub fn select_rows(&self, rows: &[usize]) -> Dataset {
        let values = DMatrix::from_fn(rows.len(), self.p(), |i, j| self.values[(rows[i], j)]);
        Dataset {
            values,
            roles: self.roles.clone(),
        }
    }
}

/// Standardize every feature column to mean 0 and unit population standard
/// deviation; constant columns become all-zero. Attribute columns (sensitive,
/// response, auxiliary groupings) are left untouched.
pub fn normalize_columns(ds: &Dataset) -> Dataset {
    let mut values = ds.values.clone();
    let n = ds.n() as f64;
    for col in ds.roles.feature_cols() {
        let mean = values.column(col).sum() / n;
        let var = values.column(col).iter().map(|v| (v - mean).powi(2)).sum::<f64>() / n;
        let sd = var.sqrt();
        for i in 0..ds.n() {
            let z = if sd <= 1e-12 {
                0.0
            } else {
                (values[(i, col)] - mean) / sd
            };
            values[(i, col)] = z;
        }
    }
    Dataset {
        values,
        roles: ds.roles.clone(),
    }
}

/// Uniformly random row partition without replacement. The train part gets
/// `floor(train_fraction * n)` rows; both parts keep the original relative
/// row order and all column metadata. The same rng state yields the same
/// partition.
pub fn split_train_test<R: Rng>(
    ds: &Dataset,
    train_fraction: f64,
    rng: &mut R,
) -> Result<(Dataset, Dataset), DataError> {
    if !(train_fraction > 0.0 && train_fraction < 1.0) {
        return Err(DataError::InvalidTrainFraction(train_fraction));
    }
    let n = ds.n();
    let n_train = (train_fraction * n as f64).floor() as usize;
    if n_train == 0 || n_train == n {
        return Err(DataError::EmptySplit {
            n,
            fraction: train_fraction,
        });
    }
    let mut train_idx = rand::seq::index::sample(rng, n, n_train).into_vec();
    train_idx.sort_unstable();
    let mut in_train = vec![false; n];
    for &i in &train_idx {
        in_train[i] = true;
    }
    let test_idx: Vec<usize> = (0..n).filter(|&i| !in_train[i]).collect();
    Ok((ds.select_rows(&train_idx), ds.select_rows(&test_idx)))
}

/// Row indices of one sensitive group.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupView {
    pub group_value: f64,
    pub rows: Vec<usize>,
}

/// Partition rows by the primary sensitive attribute into
/// (majority view, minority view).
pub fn group_partition(ds: &Dataset) -> Result<(GroupView, GroupView), DataError> {
    let col = ds.roles.sensitive_col.ok_or(DataError::NoSensitiveColumn)?;
    group_partition_by(ds, col, ds.roles.majority_value)
}

/// Partition rows by an arbitrary binary attribute column.
pub fn group_partition_by(
    ds: &Dataset,
    col: usize,
    majority_value: f64,
) -> Result<(GroupView, GroupView), DataError> {
    if col >= ds.p() {
        return Err(DataError::ColumnOutOfRange(col));
    }
    let mut maj_rows = Vec::new();
    let mut min_rows = Vec::new();
    let mut minority_value = f64::NAN;
    for i in 0..ds.n() {
        let v = ds.values[(i, col)];
        if v == majority_value {
            maj_rows.push(i);
        } else {
            minority_value = v;
            min_rows.push(i);
        }
    }
    let column = ds.roles.column_names[col].clone();
    if maj_rows.is_empty() {
        return Err(DataError::EmptyGroup {
            group: "majority",
            value: majority_value,
            column,
        });
    }
    if min_rows.is_empty() {
        return Err(DataError::EmptyGroup {
            group: "minority",
            value: majority_value,
            column,
        });
    }
    Ok((
        GroupView {
            group_value: majority_value,
            rows: maj_rows,
        },
        GroupView {
            group_value: minority_value,
            rows: min_rows,
        },
    ))
}

/// A dataset with artificially missing entries.
///
/// `mask` is the missing indicator (1 = observed, 0 = missing); `observed`
/// holds NaN at missing positions. `truth` keeps the complete matrix for
/// metric evaluation and is `None` when the masked data came from an
/// external file.
#[derive(Debug, Clone, PartialEq)]
pub struct MaskedDataset {
    pub observed: DMatrix<f64>,
    pub mask: DMatrix<u8>,
    pub truth: Option<DMatrix<f64>>,
    pub source_spec: Option<MechanismSpec>,
    pub roles: ColumnRoles,
}

impl MaskedDataset {
    pub fn n(&self) -> usize {
        self.observed.nrows()
    }

    pub fn p(&self) -> usize {
        self.observed.ncols()
    }

    pub fn is_missing(&self, row: usize, col: usize) -> bool {
        self.mask[(row, col)] == 0
    }

    pub fn n_missing(&self) -> usize {
        self.mask.iter().filter(|&&m| m == 0).count()
    }

    /// Fraction of missing entries among the `n * L` amputable cells.
    pub fn missing_fraction_of_eligible(&self) -> f64 {
        let l = match &self.source_spec {
            Some(spec) => spec.l,
            None => return f64::NAN,
        };
        let eligible: Vec<usize> = self.roles.feature_cols().into_iter().take(l).collect();
        let total = self.n() * eligible.len();
        if total == 0 {
            return f64::NAN;
        }
        let missing: usize = eligible
            .iter()
            .map(|&c| (0..self.n()).filter(|&i| self.mask[(i, c)] == 0).count())
            .sum();
        missing as f64 / total as f64
    }
}
