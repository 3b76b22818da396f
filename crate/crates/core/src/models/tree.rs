//! CART decision trees: weighted Gini for classification, squared error for
//! regression, midpoint thresholds, `x <= threshold` goes left.

use rand::seq::index;
use rand::Rng;

use crate::dataset::FeatureMatrix;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct TreeParams {
    pub max_depth: usize,
    pub min_samples_leaf: usize,
    /// Features examined per split; `None` means all.
    pub max_features: Option<usize>,
}

#[derive(Clone, Debug)]
enum Node {
    Leaf(Vec<f64>),
    Split {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
    },
}

pub(crate) enum TreeTarget<'a> {
    Classes { labels: &'a [u32], n_classes: usize },
    Values(&'a [f64]),
}

/// A fitted tree. Classification leaves hold class probabilities, regression
/// leaves a single mean.
#[derive(Clone, Debug)]
pub struct DecisionTree {
    nodes: Vec<Node>,
    n_classes: usize,
}

struct Builder<'a, R> {
    x: &'a FeatureMatrix,
    target: TreeTarget<'a>,
    weights: Option<&'a [f64]>,
    params: TreeParams,
    rng: Option<&'a mut R>,
    nodes: Vec<Node>,
}

struct BestSplit {
    score: f64,
    feature: usize,
    threshold: f64,
}

impl<R: Rng> Builder<'_, R> {
    fn weight(&self, i: usize) -> f64 {
        self.weights.map_or(1.0, |w| w[i])
    }

    fn leaf_value(&self, idx: &[usize]) -> Vec<f64> {
        match &self.target {
            TreeTarget::Classes { labels, n_classes } => {
                let mut counts = vec![0.0; *n_classes];
                for &i in idx {
                    counts[labels[i] as usize] += self.weight(i);
                }
                let total: f64 = counts.iter().sum();
                if total > 0.0 {
                    counts.iter_mut().for_each(|c| *c /= total);
                }
                counts
            }
            TreeTarget::Values(y) => {
                let (mut s, mut w) = (0.0, 0.0);
                for &i in idx {
                    s += self.weight(i) * y[i];
                    w += self.weight(i);
                }
                vec![if w > 0.0 { s / w } else { 0.0 }]
            }
        }
    }

    /// Higher is better: sum over children of `sum_k c_k^2 / W` (Gini) or
    /// `S^2 / W` (squared error).
    fn node_score(&self, idx: &[usize]) -> (f64, bool) {
        match &self.target {
            TreeTarget::Classes { labels, n_classes } => {
                let mut counts = vec![0.0; *n_classes];
                let mut w = 0.0;
                for &i in idx {
                    counts[labels[i] as usize] += self.weight(i);
                    w += self.weight(i);
                }
                let pure = counts.iter().filter(|&&c| c > 0.0).count() <= 1;
                let s: f64 = counts.iter().map(|c| c * c).sum();
                (if w > 0.0 { s / w } else { 0.0 }, pure)
            }
            TreeTarget::Values(y) => {
                let (mut s, mut w) = (0.0, 0.0);
                let first = idx.first().map(|&i| y[i]);
                let mut pure = true;
                for &i in idx {
                    s += self.weight(i) * y[i];
                    w += self.weight(i);
                    pure &= Some(y[i]) == first;
                }
                (if w > 0.0 { s * s / w } else { 0.0 }, pure)
            }
        }
    }

    fn best_split_on(&self, idx: &[usize], feature: usize) -> Option<BestSplit> {
        let x = self.x;
        let mut order = idx.to_vec();
        order.sort_by(|&a, &b| x.get(a, feature).total_cmp(&x.get(b, feature)));
        let m = order.len();
        let min_leaf = self.params.min_samples_leaf.max(1);
        let mut best: Option<BestSplit> = None;

        match &self.target {
            TreeTarget::Classes { labels, n_classes } => {
                let mut right = vec![0.0; *n_classes];
                let mut w_right = 0.0;
                for &i in &order {
                    right[labels[i] as usize] += self.weight(i);
                    w_right += self.weight(i);
                }
                let mut left = vec![0.0; *n_classes];
                let mut s_left = 0.0;
                let mut s_right: f64 = right.iter().map(|c| c * c).sum();
                let mut w_left = 0.0;
                for pos in 0..m - 1 {
                    let i = order[pos];
                    let (k, w) = (labels[i] as usize, self.weight(i));
                    s_left += (left[k] + w).powi(2) - left[k].powi(2);
                    s_right += (right[k] - w).powi(2) - right[k].powi(2);
                    left[k] += w;
                    right[k] -= w;
                    w_left += w;
                    w_right -= w;
                    let (lo, hi) = (x.get(i, feature), x.get(order[pos + 1], feature));
                    if lo == hi || pos + 1 < min_leaf || m - pos - 1 < min_leaf {
                        continue;
                    }
                    if w_left <= 0.0 || w_right <= 0.0 {
                        continue;
                    }
                    let score = s_left / w_left + s_right / w_right;
                    if best.as_ref().is_none_or(|b| score > b.score) {
                        best = Some(BestSplit {
                            score,
                            feature,
                            threshold: midpoint(lo, hi),
                        });
                    }
                }
            }
            TreeTarget::Values(y) => {
                let (mut s_right, mut w_right) = (0.0, 0.0);
                for &i in &order {
                    s_right += self.weight(i) * y[i];
                    w_right += self.weight(i);
                }
                let (mut s_left, mut w_left) = (0.0, 0.0);
                for pos in 0..m - 1 {
                    let i = order[pos];
                    let w = self.weight(i);
                    s_left += w * y[i];
                    s_right -= w * y[i];
                    w_left += w;
                    w_right -= w;
                    let (lo, hi) = (x.get(i, feature), x.get(order[pos + 1], feature));
                    if lo == hi || pos + 1 < min_leaf || m - pos - 1 < min_leaf {
                        continue;
                    }
                    if w_left <= 0.0 || w_right <= 0.0 {
                        continue;
                    }
                    let score = s_left * s_left / w_left + s_right * s_right / w_right;
                    if best.as_ref().is_none_or(|b| score > b.score) {
                        best = Some(BestSplit {
                            score,
                            feature,
                            threshold: midpoint(lo, hi),
                        });
                    }
                }
            }
        }
        best
    }

    /// Features in the order they are tried, and how many must be tried
    /// before settling for the best split so far.
    fn candidate_features(&mut self) -> (Vec<usize>, usize) {
        let d = self.x.n_cols();
        match (self.params.max_features, self.rng.as_deref_mut()) {
            (Some(k), Some(rng)) if k < d => (index::sample(rng, d, d).into_vec(), k.max(1)),
            _ => ((0..d).collect(), d),
        }
    }

    fn build(&mut self, idx: Vec<usize>, depth: usize) -> usize {
        let id = self.nodes.len();
        self.nodes.push(Node::Leaf(Vec::new()));
        let (parent_score, pure) = self.node_score(&idx);
        let min_leaf = self.params.min_samples_leaf.max(1);
        let can_split = !pure && depth < self.params.max_depth && idx.len() >= 2 * min_leaf;

        let improves = |s: &BestSplit| s.score > parent_score + 1e-12 * parent_score.abs().max(1.0);
        let mut best: Option<BestSplit> = None;
        if can_split {
            // like common forest implementations, keep drawing features past
            // the quota until some feature yields an improving split
            let (order, quota) = self.candidate_features();
            for (tried, f) in order.into_iter().enumerate() {
                if tried >= quota && best.as_ref().is_some_and(improves) {
                    break;
                }
                if let Some(s) = self.best_split_on(&idx, f) {
                    if best.as_ref().is_none_or(|b| s.score > b.score) {
                        best = Some(s);
                    }
                }
            }
        }
        match best {
            Some(s) if improves(&s) => {
                let (l, r): (Vec<usize>, Vec<usize>) = idx
                    .iter()
                    .partition(|&&i| self.x.get(i, s.feature) <= s.threshold);
                let left = self.build(l, depth + 1);
                let right = self.build(r, depth + 1);
                self.nodes[id] = Node::Split {
                    feature: s.feature,
                    threshold: s.threshold,
                    left,
                    right,
                };
            }
            _ => {
                self.nodes[id] = Node::Leaf(self.leaf_value(&idx));
            }
        }
        id
    }
}

fn midpoint(lo: f64, hi: f64) -> f64 {
    let mid = lo + (hi - lo) / 2.0;
    if mid >= hi {
        lo
    } else {
        mid
    }
}

impl DecisionTree {
    /// Fits on the rows listed in `rows` (repeats allowed, as in bootstrap
    /// samples). Feature subsampling draws from `rng` when provided.
    pub(crate) fn fit_rows<R: Rng>(
        x: &FeatureMatrix,
        target: TreeTarget<'_>,
        weights: Option<&[f64]>,
        rows: Vec<usize>,
        params: TreeParams,
        rng: Option<&mut R>,
    ) -> DecisionTree {
        let n_classes = match target {
            TreeTarget::Classes { n_classes, .. } => n_classes,
            TreeTarget::Values(_) => 0,
        };
        let mut b = Builder {
            x,
            target,
            weights,
            params,
            rng,
            nodes: Vec::new(),
        };
        b.build(rows, 0);
        DecisionTree {
            nodes: b.nodes,
            n_classes,
        }
    }

    fn leaf_for(&self, row: &[f64]) -> &[f64] {
        let mut id = 0;
        loop {
            match &self.nodes[id] {
                Node::Leaf(v) => return v,
                Node::Split {
                    feature,
                    threshold,
                    left,
                    right,
                } => {
                    id = if row[*feature] <= *threshold {
                        *left
                    } else {
                        *right
                    }
                }
            }
        }
    }

    pub fn is_classifier(&self) -> bool {
        self.n_classes > 0
    }

    pub fn n_classes(&self) -> usize {
        self.n_classes
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], id: usize) -> usize {
            match &nodes[id] {
                Node::Leaf(_) => 0,
                Node::Split { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }

    /// Class probabilities per row (classification trees).
    pub fn predict_proba(&self, x: &FeatureMatrix) -> Vec<Vec<f64>> {
        x.rows().map(|r| self.leaf_for(r).to_vec()).collect()
    }

    /// Leaf means (regression) or arg-max classes as `f64` (classification).
    pub fn predict(&self, x: &FeatureMatrix) -> Vec<f64> {
        x.rows()
            .map(|r| {
                let leaf = self.leaf_for(r);
                if self.is_classifier() {
                    argmax(leaf) as f64
                } else {
                    leaf[0]
                }
            })
            .collect()
    }
}

/// Index of the largest entry, lowest index on ties.
pub(crate) fn argmax(v: &[f64]) -> usize {
    let mut best = 0;
    for (i, &x) in v.iter().enumerate() {
        if x > v[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand_chacha::ChaCha8Rng;

    fn params(depth: usize) -> TreeParams {
        TreeParams {
            max_depth: depth,
            min_samples_leaf: 1,
            max_features: None,
        }
    }

    #[test]
    fn single_split_recovers_label_feature() {
        let x = FeatureMatrix::from_rows(&[
            vec![0.0, 5.0],
            vec![1.0, 3.0],
            vec![0.0, 1.0],
            vec![1.0, 4.0],
        ])
        .unwrap();
        let y = [0, 1, 0, 1];
        let t = DecisionTree::fit_rows::<ChaCha8Rng>(
            &x,
            TreeTarget::Classes {
                labels: &y,
                n_classes: 2,
            },
            None,
            (0..4).collect(),
            params(8),
            None,
        );
        assert_eq!(t.predict(&x), vec![0.0, 1.0, 0.0, 1.0]);
        assert_eq!(t.depth(), 1);
    }

    #[test]
    fn regression_fits_step_function() {
        let x = FeatureMatrix::from_rows(&[vec![0.0], vec![1.0], vec![2.0], vec![3.0]]).unwrap();
        let y = [1.0, 1.0, 5.0, 5.0];
        let t = DecisionTree::fit_rows::<ChaCha8Rng>(
            &x,
            TreeTarget::Values(&y),
            None,
            (0..4).collect(),
            params(3),
            None,
        );
        assert_eq!(t.predict(&x), y.to_vec());
    }

    #[test]
    fn weights_shift_the_leaf_majority() {
        let x = FeatureMatrix::from_rows(&[vec![0.0], vec![0.0], vec![0.0]]).unwrap();
        let y = [0, 1, 1];
        let w = [10.0, 1.0, 1.0];
        let t = DecisionTree::fit_rows::<ChaCha8Rng>(
            &x,
            TreeTarget::Classes {
                labels: &y,
                n_classes: 2,
            },
            Some(&w),
            (0..3).collect(),
            params(3),
            None,
        );
        assert_eq!(t.predict(&x), vec![0.0; 3]);
    }

    #[test]
    fn respects_depth_cap() {
        let rows: Vec<Vec<f64>> = (0..64).map(|i| vec![f64::from(i)]).collect();
        let x = FeatureMatrix::from_rows(&rows).unwrap();
        let y: Vec<u32> = (0..64).map(|i| (i % 2) as u32).collect();
        let t = DecisionTree::fit_rows::<ChaCha8Rng>(
            &x,
            TreeTarget::Classes {
                labels: &y,
                n_classes: 2,
            },
            None,
            (0..64).collect(),
            params(3),
            None,
        );
        assert!(t.depth() <= 3);
    }
}
