//! Mask generation under parameterized MCAR/MAR/MNAR missingness mechanisms.
//!
//! Missing values are generated in the first `L` feature columns of a
//! normalized dataset. Each eligible cell is masked independently with a
//! probability given by the mechanism's rule, clamped into `[0, 1]`:
//!
//! | label | rule for cell (i, j), j < L                   |
//! |-------|-----------------------------------------------|
//! | 1a/1b/1c | constant 0.1 / 0.5 / 0.9                   |
//! | 2a    | 0.1 + 0.8 if row i is in the majority group   |
//! | 2b    | 0.1 + 0.8 if row i is in the minority group   |
//! | 2c    | 0.5 - 0.5 * z[i, L+j]                         |
//! | 2d    | 0.5 + 0.5 * z[i, L+j]                         |
//! | 3a    | 0.5 - z[i, j]                                 |
//! | 3b    | 0.5 - 0.2 * z[i, j]                           |
//! | 3c    | 0.5 + 0.2 * z[i, j]                           |
//! | 3d    | 0.5 + z[i, j]                                 |
//!
//! `2c`/`2d` condition on the feature `L` positions to the right of the
//! target, which is itself never amputable; this keeps the conditioning
//! covariate always observed (hence the `2L <= p` requirement). A custom
//! constant-probability mechanism is available as `mcar:<p>`.

use rand::Rng;
use thiserror::Error;

use crate::data::{Dataset, MaskedDataset};

#[derive(Debug, Error)]
pub enum AmputeError {
    #[error("unknown mechanism label `{0}`")]
    UnknownLabel(String),
    #[error("custom MCAR probability {0} must lie in [0, 1]")]
    InvalidProbability(f64),
    #[error("L = {l} exceeds the {features} available feature columns")]
    InvalidL { l: usize, features: usize },
    #[error("mechanism `{label}` needs 2L <= feature count (L = {l}, features = {features})")]
    CovariateWindow {
        label: String,
        l: usize,
        features: usize,
    },
    #[error("mechanism `{0}` needs a dataset with a sensitive column")]
    NoSensitiveColumn(String),
    #[error("target feature index {j} is not below L = {l}")]
    TargetOutOfRange { j: usize, l: usize },
}

/// Functional form of a missingness rule.
#[derive(Debug, Clone, PartialEq)]
pub enum MechanismKind {
    /// Same probability for every eligible cell.
    McarConst { p: f64 },
    /// `intercept + slope` when the row's group matches the target,
    /// `intercept` otherwise.
    MarGroup {
        intercept: f64,
        slope: f64,
        target_majority: bool,
    },
    /// `intercept + slope * z[i, L+j]`, conditioning on an always-observed
    /// feature.
    MarCovariate { intercept: f64, slope: f64 },
    /// `intercept + slope * z[i, j]`, conditioning on the value that may
    /// itself go missing.
    MnarSelf { intercept: f64, slope: f64 },
}

/// A fully parameterized missingness mechanism.
#[derive(Debug, Clone, PartialEq)]
pub struct MechanismSpec {
    pub kind: MechanismKind,
    /// Number of leading feature columns eligible for amputation.
    pub l: usize,
    /// Canonical label ("1a" .. "3d", or "mcar:<p>").
    pub label: String,
}

/// The eleven canonical mechanism labels.
pub const CANONICAL_LABELS: [&str; 11] = [
    "1a", "1b", "1c", "2a", "2b", "2c", "2d", "3a", "3b", "3c", "3d",
];

impl MechanismSpec {
    /// Resolve a label to its mechanism. `l` is the amputable-column count.
    pub fn from_label(label: &str, l: usize) -> Result<Self, AmputeError> {
        let kind = match label {
            "1a" => MechanismKind::McarConst { p: 0.1 },
            "1b" => MechanismKind::McarConst { p: 0.5 },
            "1c" => MechanismKind::McarConst { p: 0.9 },
            "2a" => MechanismKind::MarGroup {
                intercept: 0.1,
                slope: 0.8,
                target_majority: true,
            },
            "2b" => MechanismKind::MarGroup {
                intercept: 0.1,
                slope: 0.8,
                target_majority: false,
            },
            "2c" => MechanismKind::MarCovariate {
                intercept: 0.5,
                slope: -0.5,
            },
            "2d" => MechanismKind::MarCovariate {
                intercept: 0.5,
                slope: 0.5,
            },
            "3a" => MechanismKind::MnarSelf {
                intercept: 0.5,
                slope: -1.0,
            },
            "3b" => MechanismKind::MnarSelf {
                intercept: 0.5,
                slope: -0.2,
            },
            "3c" => MechanismKind::MnarSelf {
                intercept: 0.5,
                slope: 0.2,
            },
            "3d" => MechanismKind::MnarSelf {
                intercept: 0.5,
                slope: 1.0,
            },
            custom => {
                let Some(raw) = custom.strip_prefix("mcar:") else {
                    return Err(AmputeError::UnknownLabel(custom.to_string()));
                };
                let p: f64 = raw
                    .parse()
                    .map_err(|_| AmputeError::UnknownLabel(custom.to_string()))?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(AmputeError::InvalidProbability(p));
                }
                MechanismKind::McarConst { p }
            }
        };
        Ok(MechanismSpec {
            kind,
            l,
            label: label.to_string(),
        })
    }

    /// Check the spec against a dataset's dimensions and roles.
    pub fn validate_against(&self, ds: &Dataset) -> Result<(), AmputeError> {
        let features = ds.roles.feature_cols().len();
        if self.l == 0 || self.l > features {
            return Err(AmputeError::InvalidL {
                l: self.l,
                features,
            });
        }
        match self.kind {
            MechanismKind::MarCovariate { .. } if 2 * self.l > features => {
                Err(AmputeError::CovariateWindow {
                    label: self.label.clone(),
                    l: self.l,
                    features,
                })
            }
            MechanismKind::MarGroup { .. } if ds.roles.sensitive_col.is_none() => {
                Err(AmputeError::NoSensitiveColumn(self.label.clone()))
            }
            _ => Ok(()),
        }
    }
}

/// Probability that the j-th amputable feature of `row` goes missing
/// (j counts amputable feature columns, not raw matrix columns). The raw
/// rule value is clamped into the unit interval.
pub fn missing_probability(
    spec: &MechanismSpec,
    ds: &Dataset,
    row: usize,
    j: usize,
) -> Result<f64, AmputeError> {
    spec.validate_against(ds)?;
    if j >= spec.l {
        return Err(AmputeError::TargetOutOfRange { j, l: spec.l });
    }
    let features = ds.roles.feature_cols();
    let raw = match spec.kind {
        MechanismKind::McarConst { p } => p,
        MechanismKind::MarGroup {
            intercept,
            slope,
            target_majority,
        } => {
            let col = ds
                .roles
                .sensitive_col
                .ok_or_else(|| AmputeError::NoSensitiveColumn(spec.label.clone()))?;
            let in_majority = ds.values[(row, col)] == ds.roles.majority_value;
            intercept + if in_majority == target_majority { slope } else { 0.0 }
        }
        MechanismKind::MarCovariate { intercept, slope } => {
            intercept + slope * ds.values[(row, features[spec.l + j])]
        }
        MechanismKind::MnarSelf { intercept, slope } => {
            intercept + slope * ds.values[(row, features[j])]
        }
    };
    Ok(raw.clamp(0.0, 1.0))
}

/// Draw a missingness mask over the first L feature columns of `ds`.
///
/// Cells are masked independently; columns beyond L and all attribute
/// columns stay fully observed. One uniform draw is consumed per eligible
/// cell in row-major order, so a given (dataset, spec, seed) triple always
/// produces the same mask.
pub fn ampute<R: Rng>(
    ds: &Dataset,
    spec: &MechanismSpec,
    rng: &mut R,
) -> Result<MaskedDataset, AmputeError> {
    spec.validate_against(ds)?;
    let features = ds.roles.feature_cols();
    let mut observed = ds.values.clone();
    let mut mask = nalgebra::DMatrix::<u8>::from_element(ds.n(), ds.p(), 1);
    for i in 0..ds.n() {
        for j in 0..spec.l {
            let p = missing_probability(spec, ds, i, j)?;
            let u: f64 = rng.random();
            if u < p {
                let col = features[j];
                mask[(i, col)] = 0;
                observed[(i, col)] = f64::NAN;
            }
        }
    }
    Ok(MaskedDataset {
        observed,
        mask,
        truth: Some(ds.values.clone()),
        source_spec: Some(spec.clone()),
        roles: ds.roles.clone(),
    })
}
