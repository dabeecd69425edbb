//! Adjective-based opinion scoring and comment classification.
//!
//! Only adjective-tagged tokens (JJ, JJR, JJS) are looked up in the opinion
//! lexicon. A sentence's orientation is the sign of its net score
//! (positive hits minus negative hits); ties and sentences with no hits are
//! neutral. Negation is not handled.

mod lexicon;
mod noise;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use lexicon::{LexiconError, OpinionLexicon};
pub use noise::{detect_noise, NoiseDetector};

use crate::corpus::{Comment, NoiseVerdict, Polarity, Prediction};
use crate::nlp::{analyze, TagLexicon, TaggedToken};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SentenceScore {
    pub opinion_words: Vec<(String, i8)>,
    pub pos_count: u32,
    pub neg_count: u32,
    pub net: i64,
    pub polarity: Polarity,
}

/// How sentence scores become comment-level classification units.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ClassificationMode {
    /// Sum the sentence nets; one unit per comment.
    #[default]
    Aggregate,
    /// Every sentence is its own classification unit.
    PerSentence,
}

impl FromStr for ClassificationMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "aggregate" => Ok(ClassificationMode::Aggregate),
            "per-sentence" | "per_sentence" | "paper" => Ok(ClassificationMode::PerSentence),
            other => Err(format!(
                "unknown classification mode `{other}` (expected aggregate or per-sentence)"
            )),
        }
    }
}

impl fmt::Display for ClassificationMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ClassificationMode::Aggregate => "aggregate",
            ClassificationMode::PerSentence => "per-sentence",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommentClassification {
    pub comment_id: String,
    pub product_id: String,
    pub sentence_scores: Vec<SentenceScore>,
    /// Comment-level polarity, after the noise override when enabled.
    pub polarity: Polarity,
    /// Units counted in ratings and evaluation.
    pub units: Vec<Polarity>,
    pub noise: NoiseVerdict,
}

impl CommentClassification {
    pub fn to_prediction(&self) -> Prediction {
        Prediction {
            polarity: self.polarity,
            lexical_polarity: aggregate_polarity(&self.sentence_scores),
            units: self.units.clone(),
            noise: self.noise.clone(),
        }
    }

    /// Rebuilds a classification from a stored prediction. Sentence scores
    /// are not persisted and come back empty.
    pub fn from_prediction(comment: &Comment, prediction: &Prediction) -> Self {
        CommentClassification {
            comment_id: comment.id.clone(),
            product_id: comment.product_id.clone(),
            sentence_scores: Vec::new(),
            polarity: prediction.polarity,
            units: prediction.units.clone(),
            noise: prediction.noise.clone(),
        }
    }
}

pub fn extract_opinion_words(tagged: &[TaggedToken]) -> Vec<String> {
    tagged
        .iter()
        .filter(|t| t.tag.is_adjective())
        .map(|t| t.surface.to_lowercase())
        .collect()
}

pub fn score_sentence(tagged: &[TaggedToken], lexicon: &OpinionLexicon) -> SentenceScore {
    let opinion_words: Vec<(String, i8)> = extract_opinion_words(tagged)
        .into_iter()
        .filter_map(|w| lexicon.value(&w).map(|v| (w, v)))
        .collect();
    let pos_count = opinion_words.iter().filter(|(_, v)| *v > 0).count() as u32;
    let neg_count = opinion_words.iter().filter(|(_, v)| *v < 0).count() as u32;
    let net = i64::from(pos_count) - i64::from(neg_count);
    SentenceScore {
        opinion_words,
        pos_count,
        neg_count,
        net,
        polarity: Polarity::from_net(net),
    }
}

/// Sign of the summed sentence nets.
pub fn aggregate_polarity(scores: &[SentenceScore]) -> Polarity {
    Polarity::from_net(scores.iter().map(|s| s.net).sum())
}

/// Turns sentence scores into classification units. Aggregate mode always
/// yields exactly one unit; per-sentence mode yields one per sentence (and a
/// single neutral unit for a comment with no sentences).
pub fn classify_comment(scores: &[SentenceScore], mode: ClassificationMode) -> Vec<Polarity> {
    match mode {
        ClassificationMode::Aggregate => vec![aggregate_polarity(scores)],
        ClassificationMode::PerSentence if scores.is_empty() => vec![Polarity::Neutral],
        ClassificationMode::PerSentence => scores.iter().map(|s| s.polarity).collect(),
    }
}

/// Everything needed to classify a comment end to end.
#[derive(Debug, Clone)]
pub struct Classifier {
    pub tags: TagLexicon,
    pub opinions: OpinionLexicon,
    pub noise: NoiseDetector,
    pub mode: ClassificationMode,
    /// When set, comments flagged as noise are counted as a single neutral unit.
    pub noise_filter: bool,
}

impl Classifier {
    pub fn bundled() -> Self {
        Classifier {
            tags: TagLexicon::bundled(),
            opinions: OpinionLexicon::bundled(),
            noise: NoiseDetector::bundled(),
            mode: ClassificationMode::Aggregate,
            noise_filter: true,
        }
    }

    pub fn score_text(&self, text: &str) -> Vec<SentenceScore> {
        analyze(text, &self.tags)
            .iter()
            .map(|s| score_sentence(s, &self.opinions))
            .collect()
    }

    pub fn classify(&self, comment: &Comment) -> CommentClassification {
        let sentence_scores = self.score_text(comment.analysis_text());
        let noise = self.noise.detect(comment);
        let (polarity, units) = if self.noise_filter && noise.is_noise {
            (Polarity::Neutral, vec![Polarity::Neutral])
        } else {
            (
                aggregate_polarity(&sentence_scores),
                classify_comment(&sentence_scores, self.mode),
            )
        };
        CommentClassification {
            comment_id: comment.id.clone(),
            product_id: comment.product_id.clone(),
            sentence_scores,
            polarity,
            units,
            noise,
        }
    }
}
