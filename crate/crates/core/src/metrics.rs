//! Fairness and accuracy metrics for imputation and prediction.
//!
//! Imputation quality is scored by MSIE, the mean squared error over missing
//! entries only, optionally restricted to one sensitive group. IAPD is the
//! signed gap `MSIE(majority) - MSIE(minority)`: positive means the majority
//! group was imputed worse. Var/VarD are the matching baselines reached by
//! group-mean imputation: the mean squared deviation of missing truths from
//! their group's observed column means, and its between-group difference.
//!
//! Classification fairness uses the equalized-odds difference
//! `EOD = |FPR_maj - FPR_min| + |FNR_maj - FNR_min|`; regression uses
//! `RED = MSE(majority) - MSE(minority)`. All signed differences follow the
//! majority-minus-minority convention.

use std::collections::HashMap;

use thiserror::Error;

use crate::data::{GroupView, MaskedDataset};
use crate::imputers::ImputedDataset;

#[derive(Debug, Error)]
pub enum MetricError {
    #[error("masked dataset carries no ground truth")]
    NoGroundTruth,
    #[error("imputed and masked dataset dimensions differ")]
    DimensionMismatch,
    #[error("no missing entries in {0}")]
    NoMissingEntries(String),
    #[error("column {column}, group value {group_value}: no observed donors")]
    NoObservedDonors { column: usize, group_value: f64 },
    #[error("input vectors have different lengths")]
    LengthMismatch,
    #[error("{which} label {value} is not binary 0/1")]
    NonBinaryLabel { which: &'static str, value: f64 },
    #[error("{group} group is empty")]
    EmptyGroup { group: &'static str },
    #[error("{group} group has no {class} true labels")]
    MissingClass {
        group: &'static str,
        class: &'static str,
    },
}

/// Per-(mechanism, imputer) imputation-fairness summary.
#[derive(Debug, Clone, PartialEq)]
pub struct ImputationMetrics {
    pub msie_overall: f64,
    pub msie_majority: f64,
    pub msie_minority: f64,
    /// `msie_majority - msie_minority`.
    pub iapd: f64,
    pub var_overall: f64,
    /// `Var(majority) - Var(minority)`.
    pub vard: f64,
    pub n_missing_majority: usize,
    pub n_missing_minority: usize,
}

/// Confusion-rate mode: `Standard` conditions the FPR/FNR numerators on the
/// true label; `Literal` counts all positive (negative) predictions in the
/// numerator over the same denominators.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FprMode {
    #[default]
    Standard,
    Literal,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ClassificationMetrics {
    pub accuracy: f64,
    pub acc_majority: f64,
    pub acc_minority: f64,
    pub fpr_majority: f64,
    pub fpr_minority: f64,
    pub fnr_majority: f64,
    pub fnr_minority: f64,
    /// `|fpr_maj - fpr_min| + |fnr_maj - fnr_min|`.
    pub eod: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RegressionMetrics {
    pub mse: f64,
    pub mse_majority: f64,
    pub mse_minority: f64,
    /// `mse_majority - mse_minority`.
    pub red: f64,
}

fn check_dims(imputed: &ImputedDataset, md: &MaskedDataset) -> Result<(), MetricError> {
    if imputed.values.nrows() != md.n() || imputed.values.ncols() != md.p() {
        return Err(MetricError::DimensionMismatch);
    }
    Ok(())
}

/// Sum of squared imputation errors and missing-entry count over the given
/// rows, iterated in row-major order.
fn sq_err_sum(
    imputed: &ImputedDataset,
    md: &MaskedDataset,
    rows: &[usize],
) -> Result<(f64, usize), MetricError> {
    let truth = md.truth.as_ref().ok_or(MetricError::NoGroundTruth)?;
    let mut sum = 0.0;
    let mut count = 0usize;
    for &i in rows {
        for j in 0..md.p() {
            if md.mask[(i, j)] == 0 {
                let d = imputed.values[(i, j)] - truth[(i, j)];
                sum += d * d;
                count += 1;
            }
        }
    }
    Ok((sum, count))
}

/// Mean squared imputation error over the missing entries of `group`'s rows
/// (all rows when `group` is `None`).
pub fn msie(
    imputed: &ImputedDataset,
    md: &MaskedDataset,
    group: Option<&GroupView>,
) -> Result<f64, MetricError> {
    check_dims(imputed, md)?;
    let all_rows: Vec<usize>;
    let (rows, scope) = match group {
        Some(g) => (&g.rows, format!("group with value {}", g.group_value)),
        None => {
            all_rows = (0..md.n()).collect();
            (&all_rows, "dataset".to_string())
        }
    };
    let (sum, count) = sq_err_sum(imputed, md, rows)?;
    if count == 0 {
        return Err(MetricError::NoMissingEntries(scope));
    }
    Ok(sum / count as f64)
}

/// Imputation accuracy parity difference: `MSIE(majority) - MSIE(minority)`.
/// Positive means the majority group was imputed worse.
pub fn iapd(
    imputed: &ImputedDataset,
    md: &MaskedDataset,
    majority: &GroupView,
    minority: &GroupView,
) -> Result<f64, MetricError> {
    Ok(msie(imputed, md, Some(majority))? - msie(imputed, md, Some(minority))?)
}

/// Observed mean of each (column, group) cell that has missing entries.
/// Keyed by (column, majority-membership).
fn observed_group_means(
    md: &MaskedDataset,
    majority: &GroupView,
    minority: &GroupView,
) -> Result<HashMap<(usize, bool), f64>, MetricError> {
    let mut means = HashMap::new();
    for (is_majority, view) in [(true, majority), (false, minority)] {
        for j in 0..md.p() {
            let mut sum = 0.0;
            let mut n_obs = 0usize;
            let mut n_mis = 0usize;
            for &i in &view.rows {
                if md.mask[(i, j)] == 1 {
                    sum += md.observed[(i, j)];
                    n_obs += 1;
                } else {
                    n_mis += 1;
                }
            }
            if n_mis > 0 {
                if n_obs == 0 {
                    return Err(MetricError::NoObservedDonors {
                        column: j,
                        group_value: view.group_value,
                    });
                }
                means.insert((j, is_majority), sum / n_obs as f64);
            }
        }
    }
    Ok(means)
}

/// Variance baselines: per group, the mean squared deviation of missing
/// truths from the observed group/column mean; returns `(var, vard)` where
/// `var` pools the deviations over all missing entries and
/// `vard = Var(majority) - Var(minority)`.
pub fn variance_baselines(
    md: &MaskedDataset,
    majority: &GroupView,
    minority: &GroupView,
) -> Result<(f64, f64), MetricError> {
    let truth = md.truth.as_ref().ok_or(MetricError::NoGroundTruth)?;
    let means = observed_group_means(md, majority, minority)?;
    let mut sums = [0.0f64; 2];
    let mut counts = [0usize; 2];
    for (gi, (is_majority, view)) in [(true, majority), (false, minority)].iter().enumerate() {
        for &i in &view.rows {
            for j in 0..md.p() {
                if md.mask[(i, j)] == 0 {
                    let mu = means[&(j, *is_majority)];
                    let d = truth[(i, j)] - mu;
                    sums[gi] += d * d;
                    counts[gi] += 1;
                }
            }
        }
    }
    if counts[0] == 0 {
        return Err(MetricError::NoMissingEntries("majority group".into()));
    }
    if counts[1] == 0 {
        return Err(MetricError::NoMissingEntries("minority group".into()));
    }
    let var_maj = sums[0] / counts[0] as f64;
    let var_min = sums[1] / counts[1] as f64;
    let var = (sums[0] + sums[1]) / (counts[0] + counts[1]) as f64;
    Ok((var, var_maj - var_min))
}

/// Full imputation-fairness summary against one grouping.
pub fn imputation_metrics(
    imputed: &ImputedDataset,
    md: &MaskedDataset,
    majority: &GroupView,
    minority: &GroupView,
) -> Result<ImputationMetrics, MetricError> {
    check_dims(imputed, md)?;
    let (sum_maj, n_maj) = sq_err_sum(imputed, md, &majority.rows)?;
    let (sum_min, n_min) = sq_err_sum(imputed, md, &minority.rows)?;
    if n_maj == 0 {
        return Err(MetricError::NoMissingEntries("majority group".into()));
    }
    if n_min == 0 {
        return Err(MetricError::NoMissingEntries("minority group".into()));
    }
    let msie_majority = sum_maj / n_maj as f64;
    let msie_minority = sum_min / n_min as f64;
    let msie_overall =
        (n_maj as f64 * msie_majority + n_min as f64 * msie_minority) / (n_maj + n_min) as f64;
    let (var_overall, vard) = variance_baselines(md, majority, minority)?;
    Ok(ImputationMetrics {
        msie_overall,
        msie_majority,
        msie_minority,
        iapd: msie_majority - msie_minority,
        var_overall,
        vard,
        n_missing_majority: n_maj,
        n_missing_minority: n_min,
    })
}

fn check_binary(v: f64, which: &'static str) -> Result<(), MetricError> {
    if v != 0.0 && v != 1.0 {
        return Err(MetricError::NonBinaryLabel { which, value: v });
    }
    Ok(())
}

struct GroupCounts {
    total: usize,
    correct: usize,
    pos: usize,
    neg: usize,
    false_pos: usize,
    false_neg: usize,
    pred_pos: usize,
    pred_neg: usize,
}

/// Equalized-odds difference and per-group confusion rates for a binary
/// classifier.
pub fn eod(
    y_true: &[f64],
    y_pred: &[f64],
    is_majority: &[bool],
    mode: FprMode,
) -> Result<ClassificationMetrics, MetricError> {
    if y_true.len() != y_pred.len() || y_true.len() != is_majority.len() {
        return Err(MetricError::LengthMismatch);
    }
    let mut counts = [
        GroupCounts {
            total: 0,
            correct: 0,
            pos: 0,
            neg: 0,
            false_pos: 0,
            false_neg: 0,
            pred_pos: 0,
            pred_neg: 0,
        },
        GroupCounts {
            total: 0,
            correct: 0,
            pos: 0,
            neg: 0,
            false_pos: 0,
            false_neg: 0,
            pred_pos: 0,
            pred_neg: 0,
        },
    ];
    for k in 0..y_true.len() {
        check_binary(y_true[k], "true")?;
        check_binary(y_pred[k], "predicted")?;
        let g = &mut counts[if is_majority[k] { 0 } else { 1 }];
        g.total += 1;
        if y_true[k] == y_pred[k] {
            g.correct += 1;
        }
        if y_true[k] == 1.0 {
            g.pos += 1;
            if y_pred[k] == 0.0 {
                g.false_neg += 1;
            }
        } else {
            g.neg += 1;
            if y_pred[k] == 1.0 {
                g.false_pos += 1;
            }
        }
        if y_pred[k] == 1.0 {
            g.pred_pos += 1;
        } else {
            g.pred_neg += 1;
        }
    }
    let names: [&'static str; 2] = ["majority", "minority"];
    let mut fpr = [0.0f64; 2];
    let mut fnr = [0.0f64; 2];
    let mut acc = [0.0f64; 2];
    for (gi, g) in counts.iter().enumerate() {
        if g.total == 0 {
            return Err(MetricError::EmptyGroup { group: names[gi] });
        }
        if g.neg == 0 {
            return Err(MetricError::MissingClass {
                group: names[gi],
                class: "negative",
            });
        }
        if g.pos == 0 {
            return Err(MetricError::MissingClass {
                group: names[gi],
                class: "positive",
            });
        }
        let (fp_num, fn_num) = match mode {
            FprMode::Standard => (g.false_pos, g.false_neg),
            FprMode::Literal => (g.pred_pos, g.pred_neg),
        };
        fpr[gi] = fp_num as f64 / g.neg as f64;
        fnr[gi] = fn_num as f64 / g.pos as f64;
        acc[gi] = g.correct as f64 / g.total as f64;
    }
    let accuracy =
        (counts[0].correct + counts[1].correct) as f64 / (counts[0].total + counts[1].total) as f64;
    Ok(ClassificationMetrics {
        accuracy,
        acc_majority: acc[0],
        acc_minority: acc[1],
        fpr_majority: fpr[0],
        fpr_minority: fpr[1],
        fnr_majority: fnr[0],
        fnr_minority: fnr[1],
        eod: (fpr[0] - fpr[1]).abs() + (fnr[0] - fnr[1]).abs(),
    })
}

/// Regression error difference and per-group mean squared errors.
pub fn red(
    y_true: &[f64],
    y_pred: &[f64],
    is_majority: &[bool],
) -> Result<RegressionMetrics, MetricError> {
    if y_true.len() != y_pred.len() || y_true.len() != is_majority.len() {
        return Err(MetricError::LengthMismatch);
    }
    let mut sums = [0.0f64; 2];
    let mut counts = [0usize; 2];
    for k in 0..y_true.len() {
        let gi = if is_majority[k] { 0 } else { 1 };
        let d = y_pred[k] - y_true[k];
        sums[gi] += d * d;
        counts[gi] += 1;
    }
    if counts[0] == 0 {
        return Err(MetricError::EmptyGroup { group: "majority" });
    }
    if counts[1] == 0 {
        return Err(MetricError::EmptyGroup { group: "minority" });
    }
    let mse_majority = sums[0] / counts[0] as f64;
    let mse_minority = sums[1] / counts[1] as f64;
    Ok(RegressionMetrics {
        mse: (sums[0] + sums[1]) / (counts[0] + counts[1]) as f64,
        mse_majority,
        mse_minority,
        red: mse_majority - mse_minority,
    })
}

/// Plain classification accuracy, no group structure required.
pub fn accuracy(y_true: &[f64], y_pred: &[f64]) -> Result<f64, MetricError> {
    if y_true.len() != y_pred.len() {
        return Err(MetricError::LengthMismatch);
    }
    if y_true.is_empty() {
        return Err(MetricError::EmptyGroup { group: "majority" });
    }
    let correct = y_true
        .iter()
        .zip(y_pred.iter())
        .filter(|(a, b)| a == b)
        .count();
    Ok(correct as f64 / y_true.len() as f64)
}

/// Plain mean squared error, no group structure required.
pub fn mse(y_true: &[f64], y_pred: &[f64]) -> Result<f64, MetricError> {
    if y_true.len() != y_pred.len() {
        return Err(MetricError::LengthMismatch);
    }
    if y_true.is_empty() {
        return Err(MetricError::EmptyGroup { group: "majority" });
    }
    let sum: f64 = y_true
        .iter()
        .zip(y_pred.iter())
        .map(|(a, b)| (a - b) * (a - b))
        .sum();
    Ok(sum / y_true.len() as f64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::data::{ColumnRoles, MaskedDataset};
    use nalgebra::DMatrix;

    /// Masked dataset with explicit truth, observed and mask matrices.
    fn masked(truth: DMatrix<f64>, mask: DMatrix<u8>) -> MaskedDataset {
        let mut observed = truth.clone();
        for i in 0..truth.nrows() {
            for j in 0..truth.ncols() {
                if mask[(i, j)] == 0 {
                    observed[(i, j)] = f64::NAN;
                }
            }
        }
        let names = (0..truth.ncols()).map(|j| format!("x{j}")).collect();
        MaskedDataset {
            observed,
            mask,
            truth: Some(truth),
            source_spec: None,
            roles: ColumnRoles::plain(names),
        }
    }

    fn imputed_from(md: &MaskedDataset, values: DMatrix<f64>) -> ImputedDataset {
        ImputedDataset {
            filled_mask: md.mask.map(|m| 1 - m),
            values,
            method_name: "test".into(),
            iterations_used: 1,
            converged: true,
        }
    }

    #[test]
    fn msie_zero_for_perfect_imputation() {
        let truth = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let mask = DMatrix::from_row_slice(2, 2, &[0, 1, 1, 0]);
        let md = masked(truth.clone(), mask);
        let imp = imputed_from(&md, truth);
        assert_eq!(msie(&imp, &md, None).unwrap(), 0.0);
    }

    #[test]
    fn msie_hand_value() {
        // two missing entries with errors 0.5 and 1.5
        let truth = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let mask = DMatrix::from_row_slice(2, 2, &[0, 1, 0, 1]);
        let md = masked(truth, mask);
        let values = DMatrix::from_row_slice(2, 2, &[1.5, 2.0, 4.5, 4.0]);
        let imp = imputed_from(&md, values);
        assert_eq!(msie(&imp, &md, None).unwrap(), 1.25);
    }

    #[test]
    fn msie_errors_without_missing_entries() {
        let truth = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let mask = DMatrix::from_element(2, 2, 1u8);
        let md = masked(truth.clone(), mask);
        let imp = imputed_from(&md, truth);
        assert!(matches!(
            msie(&imp, &md, None),
            Err(MetricError::NoMissingEntries(_))
        ));
    }

    #[test]
    fn iapd_hand_values() {
        // majority rows {0}, minority rows {1}
        let truth = DMatrix::from_row_slice(2, 2, &[1.0, 2.0, 3.0, 4.0]);
        let mask = DMatrix::from_row_slice(2, 2, &[0, 1, 0, 1]);
        let md = masked(truth, mask);
        let maj = GroupView { group_value: 1.0, rows: vec![0] };
        let min = GroupView { group_value: 0.0, rows: vec![1] };

        // equal errors -> 0
        let imp = imputed_from(&md, DMatrix::from_row_slice(2, 2, &[2.0, 2.0, 4.0, 4.0]));
        assert_eq!(iapd(&imp, &md, &maj, &min).unwrap(), 0.0);

        // maj MSIE 1.25 (errors... single entry 1.25 = err^2), min MSIE 0.25
        let imp = imputed_from(
            &md,
            DMatrix::from_row_slice(2, 2, &[1.0 + 1.25f64.sqrt(), 2.0, 3.5, 4.0]),
        );
        let v = iapd(&imp, &md, &maj, &min).unwrap();
        assert!((v - 1.0).abs() < 1e-12);
    }

    #[test]
    fn variance_baselines_hand_value() {
        // one feature column; majority rows 0..4, minority rows 4..7
        // majority: observed {0, 0}, missing truths {+1, -1} -> Var_maj = 1
        // minority: observed {2}, missing truths {2, 2} -> Var_min = 0
        let truth = DMatrix::from_column_slice(7, 1, &[0.0, 0.0, 1.0, -1.0, 2.0, 2.0, 2.0]);
        let mask = DMatrix::from_column_slice(7, 1, &[1, 1, 0, 0, 1, 0, 0]);
        let md = masked(truth, mask);
        let maj = GroupView { group_value: 1.0, rows: vec![0, 1, 2, 3] };
        let min = GroupView { group_value: 0.0, rows: vec![4, 5, 6] };
        let (var, vard) = variance_baselines(&md, &maj, &min).unwrap();
        assert_eq!(vard, 1.0);
        // pooled: (1 + 1 + 0 + 0) / 4
        assert_eq!(var, 0.5);
    }

    #[test]
    fn variance_baselines_requires_missing_in_both_groups() {
        let truth = DMatrix::from_column_slice(4, 1, &[0.0, 1.0, 2.0, 3.0]);
        let mask = DMatrix::from_column_slice(4, 1, &[0, 1, 1, 1]);
        let md = masked(truth, mask);
        let maj = GroupView { group_value: 1.0, rows: vec![0, 1] };
        let min = GroupView { group_value: 0.0, rows: vec![2, 3] };
        assert!(matches!(
            variance_baselines(&md, &maj, &min),
            Err(MetricError::NoMissingEntries(_))
        ));
    }

    #[test]
    fn pooled_msie_decomposition_is_exact() {
        let truth = DMatrix::from_fn(6, 3, |i, j| (i * 3 + j) as f64 / 4.0);
        let mask = DMatrix::from_fn(6, 3, |i, j| u8::from((i + j) % 3 != 0));
        let md = masked(truth, mask);
        let maj = GroupView { group_value: 1.0, rows: vec![0, 2, 4] };
        let min = GroupView { group_value: 0.0, rows: vec![1, 3, 5] };
        let imp = imputed_from(&md, DMatrix::from_fn(6, 3, |i, j| (i + j) as f64 / 3.0));
        let m = imputation_metrics(&imp, &md, &maj, &min).unwrap();
        let weighted = (m.n_missing_majority as f64 * m.msie_majority
            + m.n_missing_minority as f64 * m.msie_minority)
            / (m.n_missing_majority + m.n_missing_minority) as f64;
        assert_eq!(m.msie_overall, weighted);
        assert!(m.msie_overall >= m.msie_majority.min(m.msie_minority));
        assert!(m.msie_overall <= m.msie_majority.max(m.msie_minority));
        assert_eq!(m.iapd, m.msie_majority - m.msie_minority);
    }

    #[test]
    fn eod_hand_confusion_counts() {
        // majority: y=[0,0,1,1], yhat=[1,0,0,1] -> FPR .5, FNR .5
        // minority: y=[0,1], yhat=[0,1] -> FPR 0, FNR 0
        let y_true = [0.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        let y_pred = [1.0, 0.0, 0.0, 1.0, 0.0, 1.0];
        let groups = [true, true, true, true, false, false];
        let m = eod(&y_true, &y_pred, &groups, FprMode::Standard).unwrap();
        assert_eq!(m.fpr_majority, 0.5);
        assert_eq!(m.fnr_majority, 0.5);
        assert_eq!(m.fpr_minority, 0.0);
        assert_eq!(m.fnr_minority, 0.0);
        assert_eq!(m.eod, 1.0);
    }

    #[test]
    fn eod_zero_for_perfect_classifier() {
        let y = [0.0, 1.0, 0.0, 1.0];
        let groups = [true, true, false, false];
        let m = eod(&y, &y, &groups, FprMode::Standard).unwrap();
        assert_eq!(m.eod, 0.0);
        assert_eq!(m.accuracy, 1.0);
    }

    #[test]
    fn eod_zero_for_constant_classifier() {
        let y_true = [0.0, 1.0, 0.0, 1.0, 0.0, 1.0];
        let y_pred = [1.0; 6];
        let groups = [true, true, true, false, false, false];
        let m = eod(&y_true, &y_pred, &groups, FprMode::Standard).unwrap();
        assert_eq!(m.fpr_majority, 1.0);
        assert_eq!(m.fnr_majority, 0.0);
        assert_eq!(m.eod, 0.0);
    }

    #[test]
    fn eod_errors_when_group_lacks_a_class() {
        let y_true = [1.0, 1.0, 0.0, 1.0];
        let y_pred = [1.0, 0.0, 0.0, 1.0];
        let groups = [true, true, false, false];
        assert!(matches!(
            eod(&y_true, &y_pred, &groups, FprMode::Standard),
            Err(MetricError::MissingClass { group: "majority", class: "negative" })
        ));
    }

    #[test]
    fn eod_literal_mode_counts_all_predictions() {
        let y_true = [0.0, 0.0, 1.0, 1.0, 0.0, 1.0];
        let y_pred = [1.0, 0.0, 0.0, 1.0, 0.0, 1.0];
        let groups = [true, true, true, true, false, false];
        let m = eod(&y_true, &y_pred, &groups, FprMode::Literal).unwrap();
        // majority: pred_pos = 2, neg = 2 -> 1.0; pred_neg = 2, pos = 2 -> 1.0
        assert_eq!(m.fpr_majority, 1.0);
        assert_eq!(m.fnr_majority, 1.0);
        // minority: pred_pos = 1, neg = 1 -> 1.0; pred_neg = 1, pos = 1 -> 1.0
        assert_eq!(m.eod, 0.0);
    }

    #[test]
    fn eod_invariant_under_joint_label_swap() {
        let y_true = [0.0, 1.0, 1.0, 0.0, 1.0, 0.0, 1.0, 0.0];
        let y_pred = [1.0, 1.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0];
        let groups = [true, true, true, true, false, false, false, false];
        let m1 = eod(&y_true, &y_pred, &groups, FprMode::Standard).unwrap();
        let flip = |v: &[f64]| v.iter().map(|x| 1.0 - x).collect::<Vec<_>>();
        let m2 = eod(&flip(&y_true), &flip(&y_pred), &groups, FprMode::Standard).unwrap();
        assert!((m1.eod - m2.eod).abs() < 1e-15);
        assert_eq!(m1.fpr_majority, m2.fnr_majority);
        assert_eq!(m1.fnr_minority, m2.fpr_minority);
    }

    #[test]
    fn red_hand_values() {
        // majority squared errors {1, 3^0.5^2...}: use {1, 3} -> MSE 2; minority {0} -> 0
        let y_true = [0.0, 0.0, 5.0];
        let y_pred = [1.0, 3.0f64.sqrt(), 5.0];
        let groups = [true, true, false];
        let m = red(&y_true, &y_pred, &groups).unwrap();
        assert!((m.mse_majority - 2.0).abs() < 1e-12);
        assert_eq!(m.mse_minority, 0.0);
        assert!((m.red - 2.0).abs() < 1e-12);
    }

    #[test]
    fn red_zero_for_perfect_predictions() {
        let y = [1.5, -0.5, 2.0, 0.0];
        let groups = [true, false, true, false];
        let m = red(&y, &y, &groups).unwrap();
        assert_eq!(m.mse, 0.0);
        assert_eq!(m.red, 0.0);
    }

    #[test]
    fn red_symmetric_groups_cancel() {
        let y_true = [0.0, 0.0];
        let y_pred = [1.0, 1.0];
        let groups = [true, false];
        let m = red(&y_true, &y_pred, &groups).unwrap();
        assert_eq!(m.red, 0.0);
    }

    #[test]
    fn msie_invariant_under_joint_row_permutation() {
        let truth = DMatrix::from_fn(5, 2, |i, j| (i * 2 + j) as f64);
        let mask = DMatrix::from_fn(5, 2, |i, j| u8::from((i * 2 + j) % 3 != 0));
        let md = masked(truth, mask);
        let values = DMatrix::from_fn(5, 2, |i, j| (i + j) as f64 * 0.7);
        let imp = imputed_from(&md, values.clone());
        let base = msie(&imp, &md, None).unwrap();

        let perm = [3usize, 0, 4, 1, 2];
        let ptruth = DMatrix::from_fn(5, 2, |i, j| md.truth.as_ref().unwrap()[(perm[i], j)]);
        let pmask = DMatrix::from_fn(5, 2, |i, j| md.mask[(perm[i], j)]);
        let pmd = masked(ptruth, pmask);
        let pvalues = DMatrix::from_fn(5, 2, |i, j| values[(perm[i], j)]);
        let pimp = imputed_from(&pmd, pvalues);
        let permuted = msie(&pimp, &pmd, None).unwrap();
        assert!((base - permuted).abs() < 1e-15);
    }
}
