//! Binary decision trees on numeric features, split by C4.5's gain ratio.

use rand::Rng;
use serde::{Deserialize, Serialize};

use super::config::TrainConfig;
use crate::corpus::ClassLabel;
use crate::error::{Error, Result};
use crate::features::{FeatureMatrix, FeatureVector};

/// Information gain at or below this is treated as no gain.
pub const MIN_GAIN: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum Node {
    /// Instances with `value <= threshold` go left.
    Split { feature: usize, threshold: f64, left: usize, right: usize, gain: f64, gain_ratio: f64 },
    Leaf { label: ClassLabel, histogram: [usize; 3] },
}

/// Nodes in preorder; the root is node 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DecisionTreeModel {
    pub dimension: usize,
    pub min_leaf: usize,
    pub max_depth: Option<usize>,
    pub nodes: Vec<Node>,
}

impl DecisionTreeModel {
    pub fn root(&self) -> &Node {
        &self.nodes[0]
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], i: usize) -> usize {
            match nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, left).max(walk(nodes, right)),
            }
        }
        walk(&self.nodes, 0)
    }

    /// Node indices visited for `v`, root first, ending at a leaf.
    pub fn path(&self, v: &FeatureVector) -> Vec<usize> {
        let mut path = vec![0];
        let mut i = 0;
        while let Node::Split { feature, threshold, left, right, .. } = self.nodes[i] {
            i = if v.get(feature) <= threshold { left } else { right };
            path.push(i);
        }
        path
    }
}

pub fn entropy(hist: &[usize; 3]) -> f64 {
    let n: usize = hist.iter().sum();
    if n == 0 {
        return 0.0;
    }
    let n = n as f64;
    hist.iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / n;
            -p * p.log2()
        })
        .sum()
}

/// Majority label; ties go to the earliest class.
pub fn majority(hist: &[usize; 3]) -> ClassLabel {
    let mut best = 0;
    for i in 1..3 {
        if hist[i] > hist[best] {
            best = i;
        }
    }
    ClassLabel::ALL[best]
}

/// A candidate split and its quality.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SplitChoice {
    pub feature: usize,
    pub threshold: f64,
    pub gain: f64,
    pub gain_ratio: f64,
}

/// Scores a binary partition of `parent` into `left` and the rest; `None`
/// when a side is smaller than `min_leaf` or the gain is not positive.
pub fn score_partition(parent: &[usize; 3], left: &[usize; 3], min_leaf: usize) -> Option<(f64, f64)> {
    let n: usize = parent.iter().sum();
    let n_left: usize = left.iter().sum();
    let n_right = n - n_left;
    if n_left < min_leaf || n_right < min_leaf || n_left == 0 || n_right == 0 {
        return None;
    }
    let right: [usize; 3] = std::array::from_fn(|c| parent[c] - left[c]);
    let (pl, pr) = (n_left as f64 / n as f64, n_right as f64 / n as f64);
    let gain = entropy(parent) - pl * entropy(left) - pr * entropy(&right);
    if gain <= MIN_GAIN {
        return None;
    }
    let split_info = -pl * pl.log2() - pr * pr.log2();
    Some((gain, gain / split_info))
}

/// Nonzero `(value, class)` entries of one feature within a node.
struct FeatureColumn {
    feature: usize,
    values: Vec<(f64, usize)>,
}

/// Best split of one feature. Zeros are implicit: every node instance
/// without an entry sits at value 0.
fn best_threshold(col: &FeatureColumn, parent: &[usize; 3], min_leaf: usize) -> Option<SplitChoice> {
    let n: usize = parent.iter().sum();
    let mut zero_hist = *parent;
    for &(_, c) in &col.values {
        zero_hist[c] -= 1;
    }
    let n_zero = n - col.values.len();
    // Distinct values in increasing order with their class histograms.
    let mut groups: Vec<(f64, [usize; 3])> = Vec::new();
    let mut zero_pending = n_zero > 0;
    for &(v, c) in &col.values {
        if zero_pending && v > 0.0 {
            groups.push((0.0, zero_hist));
            zero_pending = false;
        }
        match groups.last_mut() {
            Some(g) if g.0 == v => g.1[c] += 1,
            _ => {
                let mut h = [0; 3];
                h[c] = 1;
                groups.push((v, h));
            }
        }
    }
    if zero_pending {
        groups.push((0.0, zero_hist));
    }

    let mut best: Option<SplitChoice> = None;
    let mut left = [0usize; 3];
    for pair in groups.windows(2) {
        for (l, g) in left.iter_mut().zip(pair[0].1) {
            *l += g;
        }
        if let Some((gain, gain_ratio)) = score_partition(parent, &left, min_leaf) {
            if best.is_none_or(|b| gain_ratio > b.gain_ratio) {
                let threshold = (pair[0].0 + pair[1].0) / 2.0;
                best = Some(SplitChoice { feature: col.feature, threshold, gain, gain_ratio });
            }
        }
    }
    best
}

/// Draws candidate features per split without replacement, in chunks, until
/// a chunk yields a usable split.
pub(crate) struct FeatureSampler<'r, R: Rng> {
    pub rng: &'r mut R,
    pub per_split: usize,
    perm: Vec<usize>,
    mask: Vec<bool>,
}

impl<'r, R: Rng> FeatureSampler<'r, R> {
    pub fn new(rng: &'r mut R, per_split: usize, dimension: usize) -> Self {
        FeatureSampler { rng, per_split, perm: (0..dimension).collect(), mask: vec![false; dimension] }
    }
}

struct Builder<'a> {
    xs: Vec<&'a FeatureVector>,
    ys: Vec<usize>,
    min_leaf: usize,
    max_depth: Option<usize>,
    nodes: Vec<Node>,
}

impl<'a> Builder<'a> {
    /// Columns of the features accepted by `keep` that are nonzero somewhere
    /// in the node.
    fn columns(&self, idx: &[usize], keep: &dyn Fn(usize) -> bool) -> Vec<FeatureColumn> {
        let mut triples: Vec<(usize, f64, usize)> = Vec::new();
        for &i in idx {
            for &(f, v) in self.xs[i].entries() {
                if keep(f) {
                    triples.push((f, v, self.ys[i]));
                }
            }
        }
        triples.sort_unstable_by(|a, b| a.0.cmp(&b.0).then(a.1.total_cmp(&b.1)));
        let mut cols: Vec<FeatureColumn> = Vec::new();
        for (f, v, c) in triples {
            match cols.last_mut() {
                Some(col) if col.feature == f => col.values.push((v, c)),
                _ => cols.push(FeatureColumn { feature: f, values: vec![(v, c)] }),
            }
        }
        cols
    }

    fn find_split<R: Rng>(
        &self,
        idx: &[usize],
        hist: &[usize; 3],
        sampler: &mut Option<FeatureSampler<'_, R>>,
    ) -> Option<SplitChoice> {
        let best_among = |keep: &dyn Fn(usize) -> bool| {
            let mut best: Option<SplitChoice> = None;
            for col in self.columns(idx, keep) {
                if let Some(s) = best_threshold(&col, hist, self.min_leaf) {
                    if best.is_none_or(|b| s.gain_ratio > b.gain_ratio) {
                        best = Some(s);
                    }
                }
            }
            best
        };
        let Some(s) = sampler else {
            return best_among(&|_| true);
        };
        if idx.iter().all(|&i| self.xs[i].nnz() == 0) {
            return None;
        }
        let dim = s.perm.len();
        let mut offset = 0;
        while offset < dim {
            let take = s.per_split.min(dim - offset);
            for j in offset..offset + take {
                let pick = s.rng.gen_range(j..dim);
                s.perm.swap(j, pick);
                s.mask[s.perm[j]] = true;
            }
            let mask = &s.mask;
            let found = best_among(&|f| mask[f]);
            for j in offset..offset + take {
                s.mask[s.perm[j]] = false;
            }
            if found.is_some() {
                return found;
            }
            offset += take;
        }
        None
    }

    fn grow<R: Rng>(&mut self, idx: &[usize], depth: usize, sampler: &mut Option<FeatureSampler<'_, R>>) -> usize {
        let mut hist = [0usize; 3];
        for &i in idx {
            hist[self.ys[i]] += 1;
        }
        let me = self.nodes.len();
        self.nodes.push(Node::Leaf { label: majority(&hist), histogram: hist });
        let pure = hist.iter().filter(|&&c| c > 0).count() <= 1;
        let depth_capped = self.max_depth.is_some_and(|d| depth >= d);
        if pure || depth_capped || idx.len() < 2 * self.min_leaf {
            return me;
        }
        let Some(split) = self.find_split(idx, &hist, sampler) else {
            return me;
        };
        let (left_idx, right_idx): (Vec<usize>, Vec<usize>) =
            idx.iter().partition(|&&i| self.xs[i].get(split.feature) <= split.threshold);
        let left = self.grow(&left_idx, depth + 1, sampler);
        let right = self.grow(&right_idx, depth + 1, sampler);
        self.nodes[me] = Node::Split {
            feature: split.feature,
            threshold: split.threshold,
            left,
            right,
            gain: split.gain,
            gain_ratio: split.gain_ratio,
        };
        me
    }
}

/// Grows a tree on the rows at `idx` (repeats allowed).
pub(crate) fn grow_tree<R: Rng>(
    matrix: &FeatureMatrix,
    idx: &[usize],
    min_leaf: usize,
    max_depth: Option<usize>,
    mut sampler: Option<FeatureSampler<'_, R>>,
) -> DecisionTreeModel {
    let mut b = Builder {
        xs: (0..matrix.len()).map(|i| matrix.vector(i)).collect(),
        ys: matrix.labels().iter().map(|l| l.index()).collect(),
        min_leaf,
        max_depth,
        nodes: Vec::new(),
    };
    b.grow(idx, 0, &mut sampler);
    DecisionTreeModel { dimension: matrix.dimension(), min_leaf, max_depth, nodes: b.nodes }
}

pub fn tree_train(matrix: &FeatureMatrix, cfg: &TrainConfig) -> Result<DecisionTreeModel> {
    cfg.validate()?;
    if matrix.is_empty() {
        return Err(Error::TooFewInstances("empty training matrix".into()));
    }
    let idx: Vec<usize> = (0..matrix.len()).collect();
    Ok(grow_tree::<rand_chacha::ChaCha8Rng>(matrix, &idx, cfg.min_leaf, cfg.max_depth, None))
}

/// Follows splits to a leaf; missing sparse entries read as 0.
pub fn tree_predict(model: &DecisionTreeModel, v: &FeatureVector) -> ClassLabel {
    let leaf = *model.path(v).last().expect("path ends at a leaf");
    match model.nodes[leaf] {
        Node::Leaf { label, .. } => label,
        Node::Split { .. } => unreachable!("path ends at a leaf"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::learn::ClassifierKind;

    fn cfg() -> TrainConfig {
        TrainConfig { min_leaf: 1, ..TrainConfig::for_kind(ClassifierKind::Tree) }
    }

    fn threshold_data() -> FeatureMatrix {
        let rows = (0..10)
            .map(|i| {
                let x = i as f64 - 4.5;
                let l = if x > 0.0 { ClassLabel::Yes } else { ClassLabel::No };
                (FeatureVector::from_dense(&[x]), l)
            })
            .collect();
        FeatureMatrix::from_rows(1, rows).unwrap()
    }

    #[test]
    fn single_perfect_split() {
        let m = threshold_data();
        let t = tree_train(&m, &cfg()).unwrap();
        assert_eq!(t.depth(), 1);
        for (_, v, l) in m.rows() {
            assert_eq!(tree_predict(&t, v), *l);
        }
        assert_eq!(tree_predict(&t, &FeatureVector::from_dense(&[-1.0])), ClassLabel::No);
        // A sparse zero reads as 0.0, which is at or below the 0.0 midpoint.
        assert_eq!(tree_predict(&t, &FeatureVector::zeros(1)), ClassLabel::No);
    }

    #[test]
    fn pure_data_gives_one_leaf() {
        let rows = (0..5).map(|i| (FeatureVector::from_dense(&[i as f64]), ClassLabel::Ambiguous)).collect();
        let t = tree_train(&FeatureMatrix::from_rows(1, rows).unwrap(), &cfg()).unwrap();
        assert_eq!(t.nodes.len(), 1);
        assert_eq!(tree_predict(&t, &FeatureVector::from_dense(&[100.0])), ClassLabel::Ambiguous);
    }

    #[test]
    fn min_leaf_and_depth_limits() {
        let m = threshold_data();
        let t = tree_train(&m, &TrainConfig { min_leaf: 6, ..cfg() }).unwrap();
        assert_eq!(t.nodes.len(), 1);
        let rows = (0..8)
            .map(|i| (FeatureVector::from_dense(&[i as f64]), ClassLabel::ALL[i % 3]))
            .collect();
        let m = FeatureMatrix::from_rows(1, rows).unwrap();
        let t = tree_train(&m, &TrainConfig { max_depth: Some(1), ..cfg() }).unwrap();
        assert!(t.depth() <= 1);
    }

    #[test]
    fn every_split_has_positive_gain() {
        let rows = (0..40)
            .map(|i| {
                let x = [(i * 7 % 5) as f64, (i * 3 % 4) as f64];
                (FeatureVector::from_dense(&x), ClassLabel::ALL[(i * 11 % 7) % 3])
            })
            .collect();
        let t = tree_train(&FeatureMatrix::from_rows(2, rows).unwrap(), &cfg()).unwrap();
        for n in &t.nodes {
            if let Node::Split { gain, .. } = n {
                assert!(*gain > MIN_GAIN);
            }
        }
    }

    #[test]
    fn negative_values_sort_before_implicit_zeros() {
        let rows = vec![
            (FeatureVector::from_dense(&[-2.0]), ClassLabel::No),
            (FeatureVector::from_dense(&[-1.0]), ClassLabel::No),
            (FeatureVector::zeros(1), ClassLabel::Yes),
            (FeatureVector::zeros(1), ClassLabel::Yes),
        ];
        let t = tree_train(&FeatureMatrix::from_rows(1, rows).unwrap(), &cfg()).unwrap();
        match t.root() {
            Node::Split { threshold, .. } => assert_eq!(*threshold, -0.5),
            other => panic!("expected a split, got {other:?}"),
        }
    }

    #[test]
    fn entropy_and_majority() {
        assert_eq!(entropy(&[5, 0, 0]), 0.0);
        assert!((entropy(&[1, 1, 0]) - 1.0).abs() < 1e-15);
        assert_eq!(majority(&[2, 2, 1]), ClassLabel::Yes);
        assert_eq!(majority(&[0, 1, 1]), ClassLabel::No);
    }
}
