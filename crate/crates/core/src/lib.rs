//! Fairness benchmarking for missing-data imputation.
//!
//! The crate generates missing values in complete numeric datasets under
//! parameterized MCAR/MAR/MNAR mechanisms, fills them back in with classical
//! imputation algorithms, and scores both imputation quality (MSIE, IAPD) and
//! downstream prediction quality (EOD, RED, accuracy differences) per
//! sensitive group. A seeded harness repeats the whole experiment grid and
//! aggregates the results into csv or markdown reports.

pub mod amputation;
pub mod csvio;
pub mod data;
pub mod harness;
pub mod imputers;
pub mod metrics;
pub mod prediction;
pub mod seed;

pub use amputation::{ampute, missing_probability, MechanismSpec};
pub use data::{Dataset, GroupView, MaskedDataset};
pub use imputers::{impute, ImputeOptions, ImputedDataset, Method};
