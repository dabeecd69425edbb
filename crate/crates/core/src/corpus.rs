//! Comment records and the line-delimited corpus file.
//!
//! A corpus file holds one JSON object per line. Every pipeline stage reads
//! and writes this format, so a stage can be rerun on the output of another.

use std::collections::HashSet;
use std::fmt;
use std::fs;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed record{}: {reason}", line_suffix(*.line))]
    MalformedRecord { line: Option<usize>, reason: String },
    #[error("missing field `{field}`{}", line_suffix(*.line))]
    MissingField {
        field: &'static str,
        line: Option<usize>,
    },
    #[error("duplicate comment id `{0}`")]
    DuplicateId(String),
}

fn line_suffix(line: Option<usize>) -> String {
    line.map(|n| format!(" at line {n}")).unwrap_or_default()
}

impl CorpusError {
    fn at_line(self, n: usize) -> Self {
        match self {
            CorpusError::MalformedRecord { reason, .. } => CorpusError::MalformedRecord {
                line: Some(n),
                reason,
            },
            CorpusError::MissingField { field, .. } => CorpusError::MissingField {
                field,
                line: Some(n),
            },
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Polarity {
    Positive,
    Negative,
    Neutral,
}

impl Polarity {
    pub const ALL: [Polarity; 3] = [Polarity::Positive, Polarity::Negative, Polarity::Neutral];

    pub fn is_opinionated(self) -> bool {
        self != Polarity::Neutral
    }

    /// Sign of a net opinion score; zero is neutral.
    pub fn from_net(net: i64) -> Self {
        match net.signum() {
            1 => Polarity::Positive,
            -1 => Polarity::Negative,
            _ => Polarity::Neutral,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Polarity::Positive => "positive",
            Polarity::Negative => "negative",
            Polarity::Neutral => "neutral",
        }
    }
}

impl fmt::Display for Polarity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Polarity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "positive" => Ok(Polarity::Positive),
            "negative" => Ok(Polarity::Negative),
            "neutral" => Ok(Polarity::Neutral),
            other => Err(other.to_string()),
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LanguageHint {
    RomanUrdu,
    English,
    #[default]
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relevancy {
    Relevant,
    Noise,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Origin {
    User,
    Machine,
    Unknown,
}

/// Manual annotation of a comment.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GoldLabel {
    pub polarity: Polarity,
    pub relevancy: Relevancy,
    pub origin: Origin,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NoiseReason {
    Url,
    PhoneNumber,
    SaleKeyword,
    None,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoiseVerdict {
    pub is_noise: bool,
    pub reasons: Vec<NoiseReason>,
}

impl NoiseVerdict {
    pub fn clean() -> Self {
        NoiseVerdict {
            is_noise: false,
            reasons: vec![NoiseReason::None],
        }
    }

    pub fn from_reasons(mut reasons: Vec<NoiseReason>) -> Self {
        reasons.retain(|r| *r != NoiseReason::None);
        reasons.sort();
        reasons.dedup();
        if reasons.is_empty() {
            Self::clean()
        } else {
            NoiseVerdict {
                is_noise: true,
                reasons,
            }
        }
    }
}

/// Classifier output stored back on a comment by the `classify` stage.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    /// Final polarity after the noise filter.
    pub polarity: Polarity,
    /// Polarity from the opinion words alone, before any noise override.
    pub lexical_polarity: Polarity,
    /// Classification units. One entry in aggregate mode, one per sentence in
    /// per-sentence mode.
    pub units: Vec<Polarity>,
    pub noise: NoiseVerdict,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comment {
    pub id: String,
    pub product_id: String,
    pub raw_text: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub translated_text: Option<String>,
    pub language_hint: LanguageHint,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub gold: Option<GoldLabel>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub prediction: Option<Prediction>,
}

impl Comment {
    pub fn new(
        id: impl Into<String>,
        product_id: impl Into<String>,
        raw_text: impl Into<String>,
    ) -> Self {
        Comment {
            id: id.into(),
            product_id: product_id.into(),
            raw_text: raw_text.into().trim().to_string(),
            translated_text: None,
            language_hint: LanguageHint::Unknown,
            gold: None,
            prediction: None,
        }
    }

    /// Text the classifier reads: the translation when present, otherwise the
    /// raw text.
    pub fn analysis_text(&self) -> &str {
        self.translated_text.as_deref().unwrap_or(&self.raw_text)
    }
}

// Wire form; every field optional so missing ones can be reported by name.
#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawRecord {
    id: Option<String>,
    product_id: Option<String>,
    raw_text: Option<String>,
    translated_text: Option<String>,
    language_hint: Option<LanguageHint>,
    gold: Option<GoldLabel>,
    prediction: Option<Prediction>,
}

/// Parses one corpus line into a [`Comment`].
pub fn parse_comment_record(line: &str) -> Result<Comment, CorpusError> {
    let raw: RawRecord = serde_json::from_str(line).map_err(|e| CorpusError::MalformedRecord {
        line: None,
        reason: e.to_string(),
    })?;
    let missing = |field| CorpusError::MissingField { field, line: None };
    let id = raw.id.ok_or_else(|| missing("id"))?;
    let product_id = raw.product_id.ok_or_else(|| missing("product_id"))?;
    let raw_text = raw.raw_text.ok_or_else(|| missing("raw_text"))?;
    if id.is_empty() {
        return Err(missing("id"));
    }
    let raw_text = raw_text.trim().to_string();
    if raw_text.is_empty() {
        return Err(missing("raw_text"));
    }
    Ok(Comment {
        id,
        product_id,
        raw_text,
        translated_text: raw.translated_text,
        language_hint: raw.language_hint.unwrap_or_default(),
        gold: raw.gold,
        prediction: raw.prediction,
    })
}

/// Serializes a comment as a single corpus line (no trailing newline).
pub fn format_comment_record(comment: &Comment) -> String {
    serde_json::to_string(comment).expect("comment serialization is infallible")
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusBatch {
    pub comments: Vec<Comment>,
    pub source: String,
}

impl CorpusBatch {
    pub fn new(source: impl Into<String>, comments: Vec<Comment>) -> Result<Self, CorpusError> {
        check_unique_ids(&comments)?;
        Ok(CorpusBatch {
            comments,
            source: source.into(),
        })
    }

    pub fn len(&self) -> usize {
        self.comments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.comments.is_empty()
    }

    /// Product ids in order of first appearance.
    pub fn product_ids(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        self.comments
            .iter()
            .filter(|c| seen.insert(c.product_id.as_str()))
            .map(|c| c.product_id.clone())
            .collect()
    }
}

pub fn check_unique_ids(comments: &[Comment]) -> Result<(), CorpusError> {
    let mut seen = HashSet::with_capacity(comments.len());
    for c in comments {
        if !seen.insert(c.id.as_str()) {
            return Err(CorpusError::DuplicateId(c.id.clone()));
        }
    }
    Ok(())
}

/// A loaded batch plus the 1-based line numbers skipped in lenient mode.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LoadReport {
    pub batch: CorpusBatch,
    pub skipped_lines: Vec<usize>,
}

pub fn parse_corpus(text: &str, source: &str, strict: bool) -> Result<LoadReport, CorpusError> {
    let mut comments = Vec::new();
    let mut skipped_lines = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match parse_comment_record(line) {
            Ok(c) => comments.push(c),
            Err(e) if strict => return Err(e.at_line(idx + 1)),
            Err(e) => {
                log::warn!("{source}: skipping line {}: {e}", idx + 1);
                skipped_lines.push(idx + 1);
            }
        }
    }
    let batch = CorpusBatch::new(source, comments)?;
    Ok(LoadReport {
        batch,
        skipped_lines,
    })
}

/// Reads a corpus file. In strict mode the first bad line aborts the load;
/// otherwise bad lines are skipped and listed in the report.
pub fn load_corpus(path: &Path, strict: bool) -> Result<LoadReport, CorpusError> {
    let text = fs::read_to_string(path).map_err(|source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    })?;
    parse_corpus(&text, &path.display().to_string(), strict)
}

pub fn write_corpus(batch: &CorpusBatch, path: &Path) -> Result<(), CorpusError> {
    let io_err = |source| CorpusError::Io {
        path: path.display().to_string(),
        source,
    };
    let file = fs::File::create(path).map_err(io_err)?;
    let mut out = BufWriter::new(file);
    for c in &batch.comments {
        writeln!(out, "{}", format_comment_record(c)).map_err(io_err)?;
    }
    out.flush().map_err(io_err)
}
