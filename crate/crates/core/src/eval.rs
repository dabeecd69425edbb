//! Evaluation of predicted polarities against manual labels.
//!
//! The retrieval task is "opinionated versus neutral": a comment counts as
//! retrieved when it is predicted positive or negative. All metric values are
//! kept as exact fractions and rounded half-up only for display.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::corpus::{Comment, Polarity};
use crate::rating::ClassCounts;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("nothing to evaluate")]
    EmptyInput,
    #[error("count totals differ: predicted {predicted}, manual {manual}")]
    TotalMismatch { predicted: u64, manual: u64 },
}

/// An exact non-negative fraction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Ratio {
    pub num: u64,
    pub den: u64,
}

impl Ratio {
    /// `None` when the denominator is zero.
    pub fn new(num: u64, den: u64) -> Option<Ratio> {
        (den != 0).then_some(Ratio { num, den })
    }

    pub fn value(self) -> f64 {
        self.num as f64 / self.den as f64
    }

    /// Value × 1000 rounded half-up.
    pub fn thousandths(self) -> u64 {
        let n = u128::from(self.num);
        let d = u128::from(self.den);
        ((2 * n * 1000 + d) / (2 * d)) as u64
    }

    /// Value rounded half-up to three decimals.
    pub fn rounded(self) -> f64 {
        self.thousandths() as f64 / 1000.0
    }
}

impl fmt::Display for Ratio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let t = self.thousandths();
        write!(f, "{}.{:03}", t / 1000, t % 1000)
    }
}

impl Serialize for Ratio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

/// A metric that may be undefined (zero denominator); shown as `n/a`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Metric(pub Option<Ratio>);

impl Metric {
    pub fn is_defined(self) -> bool {
        self.0.is_some()
    }

    pub fn value(self) -> Option<f64> {
        self.0.map(Ratio::value)
    }

    pub fn rounded(self) -> Option<f64> {
        self.0.map(Ratio::rounded)
    }
}

impl fmt::Display for Metric {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.0 {
            Some(r) => r.fmt(f),
            None => f.write_str("n/a"),
        }
    }
}

impl Serialize for Metric {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Contingency {
    pub tp: u64,
    pub fp: u64,
    #[serde(rename = "fn")]
    pub fn_: u64,
    pub tn: u64,
}

impl Contingency {
    pub fn total(&self) -> u64 {
        self.tp + self.fp + self.fn_ + self.tn
    }
}

/// What counts as a correct retrieval.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum MatchRule {
    /// Any opinionated prediction of an opinionated comment is a hit.
    #[default]
    Opinionated,
    /// The predicted sign must also agree; a wrong sign counts as a false
    /// positive.
    SameSign,
}

pub fn build_contingency(pairs: &[(Polarity, Polarity)]) -> Result<Contingency, EvalError> {
    build_contingency_with(pairs, MatchRule::Opinionated)
}

/// Tallies (predicted, actual) pairs.
pub fn build_contingency_with(
    pairs: &[(Polarity, Polarity)],
    rule: MatchRule,
) -> Result<Contingency, EvalError> {
    if pairs.is_empty() {
        return Err(EvalError::EmptyInput);
    }
    let mut c = Contingency::default();
    for &(predicted, actual) in pairs {
        match (predicted.is_opinionated(), actual.is_opinionated()) {
            (true, true) if rule == MatchRule::SameSign && predicted != actual => c.fp += 1,
            (true, true) => c.tp += 1,
            (true, false) => c.fp += 1,
            (false, true) => c.fn_ += 1,
            (false, false) => c.tn += 1,
        }
    }
    Ok(c)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Metrics {
    pub precision: Metric,
    pub recall: Metric,
    pub f_measure: Metric,
}

pub fn compute_metrics(c: &Contingency) -> Metrics {
    let precision = Ratio::new(c.tp, c.tp + c.fp);
    let recall = Ratio::new(c.tp, c.tp + c.fn_);
    // 2PR/(P+R) reduces to 2tp/(2tp+fp+fn); P+R is zero exactly when tp is.
    let f_measure = match (precision, recall) {
        (Some(_), Some(_)) if c.tp > 0 => Ratio::new(2 * c.tp, 2 * c.tp + c.fp + c.fn_),
        _ => None,
    };
    Metrics {
        precision: Metric(precision),
        recall: Metric(recall),
        f_measure: Metric(f_measure),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DeviationReport {
    pub dev_positive: Ratio,
    pub dev_negative: Ratio,
    pub dev_neutral: Ratio,
    pub average: Ratio,
}

/// Absolute difference of class proportions, per class and averaged.
pub fn proportion_deviation(
    predicted: &ClassCounts,
    manual: &ClassCounts,
) -> Result<DeviationReport, EvalError> {
    let total = predicted.total();
    if total != manual.total() {
        return Err(EvalError::TotalMismatch {
            predicted: total,
            manual: manual.total(),
        });
    }
    if total == 0 {
        return Err(EvalError::EmptyInput);
    }
    let diff = |p: Polarity| predicted.get(p).abs_diff(manual.get(p));
    let (dp, dn, du) = (
        diff(Polarity::Positive),
        diff(Polarity::Negative),
        diff(Polarity::Neutral),
    );
    let r = |n| Ratio { num: n, den: total };
    Ok(DeviationReport {
        dev_positive: r(dp),
        dev_negative: r(dn),
        dev_neutral: r(du),
        average: Ratio {
            num: dp + dn + du,
            den: 3 * total,
        },
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ProductBreakdown {
    pub product_id: String,
    pub predicted: ClassCounts,
    pub manual: ClassCounts,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EvaluationReport {
    pub match_rule: MatchRule,
    /// Evaluated (prediction unit, gold label) pairs.
    pub pairs: u64,
    /// Comments skipped for lacking a gold label or a prediction.
    pub skipped_comments: u64,
    pub contingency: Contingency,
    pub metrics: Metrics,
    pub predicted: ClassCounts,
    pub manual: ClassCounts,
    pub deviation: DeviationReport,
    pub per_product: Vec<ProductBreakdown>,
}

impl EvaluationReport {
    pub fn to_json_pretty(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serialization is infallible")
    }
}

/// Pairs every prediction unit with its comment's gold polarity.
pub fn labeled_pairs(comments: &[Comment]) -> (Vec<(String, Polarity, Polarity)>, u64) {
    let mut pairs = Vec::new();
    let mut skipped = 0;
    for c in comments {
        match (&c.prediction, &c.gold) {
            (Some(pred), Some(gold)) => {
                for &u in &pred.units {
                    pairs.push((c.product_id.clone(), u, gold.polarity));
                }
            }
            _ => skipped += 1,
        }
    }
    (pairs, skipped)
}

pub fn evaluate(comments: &[Comment], rule: MatchRule) -> Result<EvaluationReport, EvalError> {
    let (pairs, skipped) = labeled_pairs(comments);
    let flat: Vec<(Polarity, Polarity)> = pairs.iter().map(|(_, p, a)| (*p, *a)).collect();
    let contingency = build_contingency_with(&flat, rule)?;
    let predicted: ClassCounts = flat.iter().map(|(p, _)| *p).collect();
    let manual: ClassCounts = flat.iter().map(|(_, a)| *a).collect();
    let deviation = proportion_deviation(&predicted, &manual)?;

    let mut order = Vec::new();
    let mut by_product: BTreeMap<&str, (ClassCounts, ClassCounts)> = BTreeMap::new();
    for (product, p, a) in &pairs {
        let entry = by_product.entry(product.as_str()).or_insert_with(|| {
            order.push(product.clone());
            Default::default()
        });
        entry.0.add(*p);
        entry.1.add(*a);
    }
    let per_product = order
        .into_iter()
        .map(|id| {
            let (predicted, manual) = by_product[id.as_str()];
            ProductBreakdown {
                product_id: id,
                predicted,
                manual,
            }
        })
        .collect();

    Ok(EvaluationReport {
        match_rule: rule,
        pairs: flat.len() as u64,
        skipped_comments: skipped,
        contingency,
        metrics: compute_metrics(&contingency),
        predicted,
        manual,
        deviation,
        per_product,
    })
}
