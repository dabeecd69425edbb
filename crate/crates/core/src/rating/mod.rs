//! Per-product polarity counts, percentages and charts.

mod chart;

use std::fmt;

use serde::{Serialize, Serializer};
use thiserror::Error;

pub use chart::{render_chart, ChartFormat};

use crate::corpus::Polarity;
use crate::opinion::CommentClassification;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum RatingError {
    #[error("no classifications for product `{0}`")]
    EmptyProduct(String),
    #[error("unsupported chart format `{0}` (expected svg_bar, svg_pie or ascii)")]
    UnsupportedFormat(String),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize)]
pub struct ClassCounts {
    pub positive: u64,
    pub negative: u64,
    pub neutral: u64,
}

impl ClassCounts {
    pub fn new(positive: u64, negative: u64, neutral: u64) -> Self {
        ClassCounts {
            positive,
            negative,
            neutral,
        }
    }

    pub fn total(&self) -> u64 {
        self.positive + self.negative + self.neutral
    }

    pub fn get(&self, p: Polarity) -> u64 {
        match p {
            Polarity::Positive => self.positive,
            Polarity::Negative => self.negative,
            Polarity::Neutral => self.neutral,
        }
    }

    pub fn add(&mut self, p: Polarity) {
        match p {
            Polarity::Positive => self.positive += 1,
            Polarity::Negative => self.negative += 1,
            Polarity::Neutral => self.neutral += 1,
        }
    }

    pub fn merge(&self, other: &ClassCounts) -> ClassCounts {
        ClassCounts::new(
            self.positive + other.positive,
            self.negative + other.negative,
            self.neutral + other.neutral,
        )
    }
}

impl FromIterator<Polarity> for ClassCounts {
    fn from_iter<I: IntoIterator<Item = Polarity>>(iter: I) -> Self {
        let mut c = ClassCounts::default();
        for p in iter {
            c.add(p);
        }
        c
    }
}

/// A percentage held in tenths, so 32.5% is `Percent(325)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Percent(pub u32);

impl Percent {
    /// `count / total × 100`, rounded half-up to one decimal.
    pub fn of(count: u64, total: u64) -> Percent {
        assert!(total > 0, "percentage of an empty total");
        // floor((count*1000 + total/2) / total), with the half computed exactly
        let tenths = (2 * count * 1000 + total) / (2 * total);
        Percent(tenths as u32)
    }

    pub fn tenths(self) -> u32 {
        self.0
    }

    pub fn as_f64(self) -> f64 {
        f64::from(self.0) / 10.0
    }
}

impl fmt::Display for Percent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}.{}", self.0 / 10, self.0 % 10)
    }
}

impl Serialize for Percent {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_f64(self.as_f64())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatingSummary {
    pub product_id: String,
    pub n_positive: u64,
    pub n_negative: u64,
    pub n_neutral: u64,
    pub total: u64,
    pub pct_positive: Percent,
    pub pct_negative: Percent,
    pub pct_neutral: Percent,
    /// Extension: (n_positive − n_negative) / total, rounded to 3 decimals.
    pub net_score: f64,
    /// Comments flagged as advertisement/noise (already counted as neutral).
    pub n_noise: u64,
}

impl RatingSummary {
    pub fn from_counts(
        product_id: impl Into<String>,
        counts: ClassCounts,
    ) -> Result<Self, RatingError> {
        let product_id = product_id.into();
        let total = counts.total();
        if total == 0 {
            return Err(RatingError::EmptyProduct(product_id));
        }
        let net = counts.positive as f64 - counts.negative as f64;
        Ok(RatingSummary {
            product_id,
            n_positive: counts.positive,
            n_negative: counts.negative,
            n_neutral: counts.neutral,
            total,
            pct_positive: Percent::of(counts.positive, total),
            pct_negative: Percent::of(counts.negative, total),
            pct_neutral: Percent::of(counts.neutral, total),
            net_score: (net / total as f64 * 1000.0).round() / 1000.0,
            n_noise: 0,
        })
    }

    pub fn counts(&self) -> ClassCounts {
        ClassCounts::new(self.n_positive, self.n_negative, self.n_neutral)
    }

    pub fn count(&self, p: Polarity) -> u64 {
        self.counts().get(p)
    }

    pub fn percent(&self, p: Polarity) -> Percent {
        match p {
            Polarity::Positive => self.pct_positive,
            Polarity::Negative => self.pct_negative,
            Polarity::Neutral => self.pct_neutral,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("summary serialization is infallible")
    }
}

/// Counts every classification unit of `product_id`.
pub fn summarize_product(
    classifications: &[CommentClassification],
    product_id: &str,
) -> Result<RatingSummary, RatingError> {
    let mine: Vec<&CommentClassification> = classifications
        .iter()
        .filter(|c| c.product_id == product_id)
        .collect();
    if mine.is_empty() {
        return Err(RatingError::EmptyProduct(product_id.to_string()));
    }
    let counts: ClassCounts = mine.iter().flat_map(|c| c.units.iter().copied()).collect();
    let mut summary = RatingSummary::from_counts(product_id, counts)?;
    summary.n_noise = mine.iter().filter(|c| c.noise.is_noise).count() as u64;
    Ok(summary)
}
