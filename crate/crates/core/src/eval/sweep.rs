//! Grid sweeps over feature family × size × learner, with reproducible reports.

use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::confusion::ConfusionMatrix;
use super::cv::{evaluate_baseline, FeatureSpec, PreparedFolds};
use super::folds::FoldAssignment;
use crate::corpus::LabeledCorpus;
use crate::discovery::{FeatureKind, SeedSets};
use crate::error::Result;
use crate::features::LdaConfig;
use crate::learn::{ClassifierKind, TrainConfig};

pub const BASELINE: &str = "baseline";

#[derive(Debug, Clone)]
pub struct SweepPlan {
    pub grids: Vec<(FeatureKind, Vec<usize>)>,
    pub classifiers: Vec<ClassifierKind>,
    pub include_baseline: bool,
    pub seeds: SeedSets,
    pub lda: LdaConfig,
    /// Template for learner hyperparameters; `kind` is overridden per cell.
    pub train: TrainConfig,
}

impl SweepPlan {
    pub fn new(grids: Vec<(FeatureKind, Vec<usize>)>, classifiers: Vec<ClassifierKind>) -> Self {
        SweepPlan {
            grids,
            classifiers,
            include_baseline: false,
            seeds: SeedSets::default(),
            lda: LdaConfig::default(),
            train: TrainConfig::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub feature_kind: String,
    pub k: usize,
    pub classifier: String,
    pub accuracy: f64,
    pub matrix: ConfusionMatrix,
}

/// Lowest and highest accuracy seen along one (family, learner) curve.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveExtremes {
    pub feature_kind: String,
    pub classifier: String,
    pub min_k: usize,
    pub min_accuracy: f64,
    pub max_k: usize,
    pub max_accuracy: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepResult {
    pub rows: Vec<SweepRow>,
    pub extremes: Vec<CurveExtremes>,
}

impl SweepResult {
    fn from_rows(mut rows: Vec<SweepRow>) -> Self {
        rows.sort_by(|a, b| (&a.feature_kind, a.k, &a.classifier).cmp(&(&b.feature_kind, b.k, &b.classifier)));
        let mut extremes: Vec<CurveExtremes> = Vec::new();
        for r in &rows {
            match extremes.iter_mut().find(|e| e.feature_kind == r.feature_kind && e.classifier == r.classifier) {
                // Ties keep the smaller k, which comes first in row order.
                Some(e) => {
                    if r.accuracy < e.min_accuracy {
                        e.min_accuracy = r.accuracy;
                        e.min_k = r.k;
                    }
                    if r.accuracy > e.max_accuracy {
                        e.max_accuracy = r.accuracy;
                        e.max_k = r.k;
                    }
                }
                None => extremes.push(CurveExtremes {
                    feature_kind: r.feature_kind.clone(),
                    classifier: r.classifier.clone(),
                    min_k: r.k,
                    min_accuracy: r.accuracy,
                    max_k: r.k,
                    max_accuracy: r.accuracy,
                }),
            }
        }
        SweepResult { rows, extremes }
    }

    pub fn row(&self, kind: &str, k: usize, classifier: &str) -> Option<&SweepRow> {
        self.rows.iter().find(|r| r.feature_kind == kind && r.k == k && r.classifier == classifier)
    }

    pub fn curve(&self, kind: &str, classifier: &str) -> Vec<(usize, f64)> {
        self.rows
            .iter()
            .filter(|r| r.feature_kind == kind && r.classifier == classifier)
            .map(|r| (r.k, r.accuracy))
            .collect()
    }

    pub fn report_csv(&self) -> String {
        let mut s = String::from("feature_kind,k,classifier,accuracy\n");
        for r in &self.rows {
            s.push_str(&format!("{},{},{},{:.6}\n", r.feature_kind, r.k, r.classifier, r.accuracy));
        }
        s
    }

    pub fn summary_csv(&self) -> String {
        let mut s = String::from("feature_kind,classifier,min_k,min_accuracy,max_k,max_accuracy\n");
        for e in &self.extremes {
            s.push_str(&format!(
                "{},{},{},{:.6},{},{:.6}\n",
                e.feature_kind, e.classifier, e.min_k, e.min_accuracy, e.max_k, e.max_accuracy
            ));
        }
        s
    }

    /// Writes `report.csv`, `summary.csv` and one `.cm` file per row.
    pub fn write_report(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir)?;
        let mut paths = Vec::new();
        let mut put = |name: String, body: &str| -> Result<()> {
            let p = dir.join(name);
            fs::File::create(&p)?.write_all(body.as_bytes())?;
            paths.push(p);
            Ok(())
        };
        put("report.csv".into(), &self.report_csv())?;
        put("summary.csv".into(), &self.summary_csv())?;
        for r in &self.rows {
            put(format!("{}_{}_{}.cm", r.feature_kind, r.k, r.classifier), &r.matrix.to_string())?;
        }
        Ok(paths)
    }
}

/// Runs every grid cell under one fold assignment. Rankings are fitted once
/// per (family, fold); cells then differ only in truncation and learner.
pub fn run_sweep(corpus: &LabeledCorpus, plan: &SweepPlan, folds: &FoldAssignment) -> Result<SweepResult> {
    let mut rows = Vec::new();
    for (kind, grid) in &plan.grids {
        let spec = FeatureSpec { kind: *kind, seeds: plan.seeds.clone(), lda: plan.lda.clone() };
        let prepared = PreparedFolds::new(corpus, &spec, folds)?;
        let cells: Vec<(usize, ClassifierKind)> =
            grid.iter().flat_map(|&k| plan.classifiers.iter().map(move |&c| (k, c))).collect();
        let computed = cells
            .par_iter()
            .map(|&(k, c)| {
                let cfg = TrainConfig { kind: c, ..plan.train.clone() };
                let matrix = prepared.evaluate_classifier(k, &cfg)?;
                Ok(SweepRow {
                    feature_kind: kind.as_str().to_string(),
                    k,
                    classifier: c.as_str().to_string(),
                    accuracy: matrix.accuracy()?,
                    matrix,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.extend(computed);
    }
    if plan.include_baseline {
        let matrix = evaluate_baseline(corpus, &plan.seeds);
        rows.push(SweepRow {
            feature_kind: BASELINE.to_string(),
            k: 0,
            classifier: BASELINE.to_string(),
            accuracy: matrix.accuracy()?,
            matrix,
        });
    }
    Ok(SweepResult::from_rows(rows))
}
