//! Folds, cross-validation, sweeps and confusion-matrix metrics.

mod confusion;
mod cv;
mod folds;
mod sweep;

pub use confusion::{ClassMetrics, ConfusionMatrix};
pub use cv::{
    cross_validate, evaluate_baseline, fold_config, FeatureRanking, FeatureSpec, Featurizer, FittedRanking, FoldAudit,
    PreparedFolds, Predictor,
};
pub use folds::{stratified_folds, FoldAssignment};
pub use sweep::{run_sweep, CurveExtremes, SweepPlan, SweepResult, SweepRow, BASELINE};
