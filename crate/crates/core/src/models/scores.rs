use std::collections::BTreeSet;

use serde::Serialize;

use crate::error::{EvalError, Result};

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ClassificationScores {
    pub f1_micro: f64,
    pub f1_macro: f64,
    pub precision_macro: f64,
    pub recall_macro: f64,
    pub auroc: Option<f64>,
}

/// Per-class precision, recall and F1 for class `c` (0 on empty denominators).
pub fn class_prf(y_true: &[u32], y_pred: &[u32], c: u32) -> (f64, f64, f64) {
    let (mut tp, mut fp, mut fneg) = (0usize, 0usize, 0usize);
    for (&t, &p) in y_true.iter().zip(y_pred) {
        match (t == c, p == c) {
            (true, true) => tp += 1,
            (false, true) => fp += 1,
            (true, false) => fneg += 1,
            _ => {}
        }
    }
    let precision = if tp + fp > 0 {
        tp as f64 / (tp + fp) as f64
    } else {
        0.0
    };
    let recall = if tp + fneg > 0 {
        tp as f64 / (tp + fneg) as f64
    } else {
        0.0
    };
    let f1 = if precision + recall > 0.0 {
        2.0 * precision * recall / (precision + recall)
    } else {
        0.0
    };
    (precision, recall, f1)
}

/// Standard multi-class scores. Macro averages run over the labels present
/// in either vector. `y_prob`, the predicted probability of the larger of
/// two observed labels, yields an AUROC when `y_true` has exactly two
/// classes.
pub fn scores(
    y_true: &[u32],
    y_pred: &[u32],
    y_prob: Option<&[f64]>,
) -> Result<ClassificationScores> {
    if y_true.len() != y_pred.len() || y_prob.is_some_and(|p| p.len() != y_true.len()) {
        return Err(EvalError::InvalidInput(
            "score inputs have different lengths".into(),
        ));
    }
    if y_true.is_empty() {
        return Err(EvalError::InsufficientData(
            "no predictions to score".into(),
        ));
    }
    let correct = y_true.iter().zip(y_pred).filter(|(a, b)| a == b).count();
    let f1_micro = correct as f64 / y_true.len() as f64;
    let labels: BTreeSet<u32> = y_true.iter().chain(y_pred).copied().collect();
    let (mut p_sum, mut r_sum, mut f_sum) = (0.0, 0.0, 0.0);
    for &c in &labels {
        let (p, r, f) = class_prf(y_true, y_pred, c);
        p_sum += p;
        r_sum += r;
        f_sum += f;
    }
    let m = labels.len() as f64;
    let true_labels: BTreeSet<u32> = y_true.iter().copied().collect();
    let auroc = match (y_prob, true_labels.len()) {
        (Some(prob), 2) => {
            let positive = *true_labels.iter().next_back().expect("two labels");
            let is_pos: Vec<bool> = y_true.iter().map(|&y| y == positive).collect();
            auroc(&is_pos, prob)
        }
        _ => None,
    };
    Ok(ClassificationScores {
        f1_micro,
        f1_macro: f_sum / m,
        precision_macro: p_sum / m,
        recall_macro: r_sum / m,
        auroc,
    })
}

/// Area under the ROC curve via the Mann-Whitney rank statistic with
/// mid-ranks for ties; `None` unless both classes occur.
pub fn auroc(is_positive: &[bool], scores: &[f64]) -> Option<f64> {
    let n_pos = is_positive.iter().filter(|&&p| p).count();
    let n_neg = is_positive.len() - n_pos;
    if n_pos == 0 || n_neg == 0 || scores.len() != is_positive.len() {
        return None;
    }
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[a].total_cmp(&scores[b]));
    let mut rank_sum_pos = 0.0;
    let mut i = 0;
    while i < order.len() {
        let mut j = i;
        while j + 1 < order.len() && scores[order[j + 1]] == scores[order[i]] {
            j += 1;
        }
        let mid_rank = (i + j) as f64 / 2.0 + 1.0;
        for &idx in &order[i..=j] {
            if is_positive[idx] {
                rank_sum_pos += mid_rank;
            }
        }
        i = j + 1;
    }
    let (np, nn) = (n_pos as f64, n_neg as f64);
    Some((rank_sum_pos - np * (np + 1.0) / 2.0) / (np * nn))
}

/// ROC curve points `(fpr, tpr)` from the highest threshold down.
pub fn roc_curve(is_positive: &[bool], scores: &[f64]) -> Vec<(f64, f64)> {
    let n_pos = is_positive.iter().filter(|&&p| p).count().max(1) as f64;
    let n_neg = is_positive.iter().filter(|&&p| !p).count().max(1) as f64;
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_by(|&a, &b| scores[b].total_cmp(&scores[a]));
    let mut points = vec![(0.0, 0.0)];
    let (mut tp, mut fp) = (0.0, 0.0);
    let mut i = 0;
    while i < order.len() {
        let s = scores[order[i]];
        while i < order.len() && scores[order[i]] == s {
            if is_positive[order[i]] {
                tp += 1.0;
            } else {
                fp += 1.0;
            }
            i += 1;
        }
        points.push((fp / n_neg, tp / n_pos));
    }
    points
}
