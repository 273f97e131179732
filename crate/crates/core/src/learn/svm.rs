//! One-vs-rest linear SVM trained by dual coordinate descent on the
//! L1-hinge soft-margin problem. The bias is learned as the weight of an
//! implicit constant feature equal to 1.

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::config::TrainConfig;
use crate::corpus::ClassLabel;
use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, FeatureVector};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearSvmModel {
    pub dimension: usize,
    pub c: f64,
    /// One weight vector per class, in [`ClassLabel`] order.
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<f64>,
    pub epochs: Vec<usize>,
    /// Primal minus dual objective per class at the end of training.
    pub duality_gaps: Vec<f64>,
}

/// Result of one binary dual solve.
#[derive(Debug, Clone, PartialEq)]
pub struct DualSolution {
    pub alpha: Vec<f64>,
    pub weights: Vec<f64>,
    pub bias: f64,
    pub epochs: usize,
    pub max_violation: f64,
    /// Dual objective after the initial state and after every sweep.
    pub objective_trace: Vec<f64>,
    /// Smallest and largest dual value seen at any point during the solve.
    pub alpha_range: (f64, f64),
}

impl DualSolution {
    pub fn dual_objective(&self) -> f64 {
        *self.objective_trace.last().expect("trace starts with the initial objective")
    }
}

fn dual_objective(alpha: &[f64], w: &[f64], bias: f64) -> f64 {
    let w_sq: f64 = w.iter().map(|x| x * x).sum::<f64>() + bias * bias;
    alpha.iter().sum::<f64>() - 0.5 * w_sq
}

/// Maximizes `sum(alpha) - 0.5 * |sum_i alpha_i y_i x_i|^2` over
/// `0 <= alpha_i <= c`, where each `x_i` carries an extra constant 1.
pub fn solve_dual(
    xs: &[&FeatureVector],
    ys: &[f64],
    dimension: usize,
    c: f64,
    tol: f64,
    max_epochs: usize,
    rng_seed: u64,
) -> DualSolution {
    let n = xs.len();
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut alpha = vec![0.0; n];
    let mut w = vec![0.0; dimension];
    let mut bias = 0.0;
    let q_diag: Vec<f64> = xs.iter().map(|x| x.squared_norm() + 1.0).collect();
    let mut order: Vec<usize> = (0..n).collect();
    let mut trace = vec![dual_objective(&alpha, &w, bias)];
    let mut alpha_range = (0.0f64, 0.0f64);
    let mut epochs = 0;
    let mut max_violation = f64::INFINITY;

    while epochs < max_epochs {
        order.shuffle(&mut rng);
        max_violation = 0.0f64;
        for &i in &order {
            let x = xs[i];
            let y = ys[i];
            let g = y * (x.dot(&w) + bias) - 1.0;
            let pg = if alpha[i] <= 0.0 {
                g.min(0.0)
            } else if alpha[i] >= c {
                g.max(0.0)
            } else {
                g
            };
            max_violation = max_violation.max(pg.abs());
            if pg != 0.0 {
                let old = alpha[i];
                alpha[i] = (old - g / q_diag[i]).clamp(0.0, c);
                let step = (alpha[i] - old) * y;
                if step != 0.0 {
                    for &(j, v) in x.entries() {
                        w[j] += step * v;
                    }
                    bias += step;
                }
                alpha_range = (alpha_range.0.min(alpha[i]), alpha_range.1.max(alpha[i]));
            }
        }
        epochs += 1;
        trace.push(dual_objective(&alpha, &w, bias));
        if max_violation < tol {
            break;
        }
    }
    DualSolution { alpha, weights: w, bias, epochs, max_violation, objective_trace: trace, alpha_range }
}

fn primal_objective(xs: &[&FeatureVector], ys: &[f64], w: &[f64], bias: f64, c: f64) -> f64 {
    let w_sq: f64 = w.iter().map(|x| x * x).sum::<f64>() + bias * bias;
    let hinge: f64 = xs.iter().zip(ys).map(|(x, y)| (1.0 - y * (x.dot(w) + bias)).max(0.0)).sum();
    0.5 * w_sq + c * hinge
}

/// Per-class binary solves, returned alongside the model for inspection.
pub fn svm_train_traced(matrix: &FeatureMatrix, cfg: &TrainConfig) -> Result<(LinearSvmModel, Vec<DualSolution>)> {
    cfg.validate()?;
    if matrix.is_empty() {
        return Err(Error::TooFewInstances("empty training matrix".into()));
    }
    let labels = matrix.labels();
    if labels.iter().all(|&l| l == labels[0]) {
        return Err(Error::SingleClassInput);
    }
    let xs: Vec<&FeatureVector> = (0..matrix.len()).map(|i| matrix.vector(i)).collect();
    let dimension = matrix.dimension();
    let mut model = LinearSvmModel {
        dimension,
        c: cfg.c,
        weights: Vec::with_capacity(3),
        biases: Vec::with_capacity(3),
        epochs: Vec::with_capacity(3),
        duality_gaps: Vec::with_capacity(3),
    };
    let mut solutions = Vec::with_capacity(3);
    for class in ClassLabel::ALL {
        let ys: Vec<f64> = labels.iter().map(|&l| if l == class { 1.0 } else { -1.0 }).collect();
        let seed = cfg.rng_seed.wrapping_mul(31).wrapping_add(class.index() as u64);
        let sol = solve_dual(&xs, &ys, dimension, cfg.c, cfg.tol, cfg.max_epochs, seed);
        let gap = primal_objective(&xs, &ys, &sol.weights, sol.bias, cfg.c) - sol.dual_objective();
        model.weights.push(sol.weights.clone());
        model.biases.push(sol.bias);
        model.epochs.push(sol.epochs);
        model.duality_gaps.push(gap);
        solutions.push(sol);
    }
    Ok((model, solutions))
}

pub fn svm_train(matrix: &FeatureMatrix, cfg: &TrainConfig) -> Result<LinearSvmModel> {
    svm_train_traced(matrix, cfg).map(|(m, _)| m)
}

/// Index of the largest score; exact ties go to the earliest class.
pub fn argmax_label(scores: &[f64; 3]) -> ClassLabel {
    let mut best = 0;
    for i in 1..3 {
        if scores[i] > scores[best] {
            best = i;
        }
    }
    ClassLabel::ALL[best]
}

impl LinearSvmModel {
    pub fn scores(&self, v: &FeatureVector) -> Result<[f64; 3]> {
        if v.dimension() != self.dimension {
            return Err(Error::DimensionMismatch { expected: self.dimension, found: v.dimension() });
        }
        Ok(std::array::from_fn(|c| v.dot(&self.weights[c]) + self.biases[c]))
    }
}

/// Predicted label and the per-class decision values.
pub fn svm_predict(model: &LinearSvmModel, v: &FeatureVector) -> Result<(ClassLabel, [f64; 3])> {
    let scores = model.scores(v)?;
    Ok((argmax_label(&scores), scores))
}
