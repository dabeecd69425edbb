//! Stage orchestration: crawl/load → translate → classify → rate → evaluate.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use thiserror::Error;

use crate::config::{ConfigError, FetcherKind, Settings};
use crate::corpus::{self, CorpusBatch, CorpusError};
use crate::eval::{self, EvalError, EvaluationReport};
use crate::ingest::{self, Fetcher, FixtureFetcher, IngestError, NetworkFetcher};
use crate::nlp::TagLexicon;
use crate::opinion::{Classifier, CommentClassification, NoiseDetector, OpinionLexicon};
use crate::rating::{self, render_chart, ChartFormat, RatingSummary};
use crate::translate::{self, TranslateError};

#[derive(Debug, Error)]
pub enum PipelineError {
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error("{stage}: {message}")]
    Data {
        stage: &'static str,
        item: Option<String>,
        message: String,
    },
    #[error("{stage}: {message}")]
    Remote {
        stage: &'static str,
        message: String,
    },
}

impl PipelineError {
    /// 1 usage/config, 2 data, 3 remote service.
    pub fn exit_code(&self) -> i32 {
        match self {
            PipelineError::Config(_) => 1,
            PipelineError::Data { .. } => 2,
            PipelineError::Remote { .. } => 3,
        }
    }

    fn data(stage: &'static str, item: Option<String>, e: impl std::fmt::Display) -> Self {
        let message = match &item {
            Some(i) if !e.to_string().contains(i.as_str()) => format!("{e} (item {i})"),
            _ => e.to_string(),
        };
        PipelineError::Data {
            stage,
            item,
            message,
        }
    }
}

impl From<CorpusError> for PipelineError {
    fn from(e: CorpusError) -> Self {
        let item = match &e {
            CorpusError::DuplicateId(id) => Some(id.clone()),
            CorpusError::MalformedRecord { line: Some(n), .. }
            | CorpusError::MissingField { line: Some(n), .. } => Some(format!("line {n}")),
            _ => None,
        };
        PipelineError::data("load", item, e)
    }
}

impl From<TranslateError> for PipelineError {
    fn from(e: TranslateError) -> Self {
        match e {
            TranslateError::Config(m) => PipelineError::Config(ConfigError::InvalidValue {
                key: "translator".into(),
                reason: m,
            }),
            TranslateError::Remote { .. } => PipelineError::Remote {
                stage: "translate",
                message: e.to_string(),
            },
            TranslateError::Dictionary(_) => PipelineError::data("translate", None, e),
        }
    }
}

impl From<IngestError> for PipelineError {
    fn from(e: IngestError) -> Self {
        match e {
            IngestError::InvalidSelector(_) | IngestError::ZeroPageLimit => {
                PipelineError::Config(ConfigError::InvalidValue {
                    key: "extraction rules".into(),
                    reason: e.to_string(),
                })
            }
            IngestError::Fetch { ref url, .. } | IngestError::CrawlCycle(ref url) => {
                let url = url.clone();
                PipelineError::data("crawl", Some(url), e)
            }
            other => PipelineError::data("crawl", None, other),
        }
    }
}

impl From<EvalError> for PipelineError {
    fn from(e: EvalError) -> Self {
        PipelineError::data("eval", None, e)
    }
}

fn io_err(stage: &'static str, path: &Path, e: std::io::Error) -> PipelineError {
    PipelineError::data(stage, Some(path.display().to_string()), e)
}

pub fn crawl(settings: &Settings) -> Result<CorpusBatch, PipelineError> {
    let start = settings
        .start_url
        .as_deref()
        .ok_or(ConfigError::Missing("start_url"))?;
    let product = settings
        .product_id
        .as_deref()
        .ok_or(ConfigError::Missing("product_id"))?;
    let rules = settings.extraction_rules()?;
    let fetcher: Box<dyn Fetcher> = match settings.fetcher {
        FetcherKind::Fixture => {
            let map = settings
                .fixture_map
                .as_deref()
                .ok_or(ConfigError::Missing("fixture_map"))?;
            Box::new(FixtureFetcher::from_map_file(map).map_err(|e| io_err("crawl", map, e))?)
        }
        FetcherKind::Network => Box::new(NetworkFetcher::new(
            settings.timeout,
            &settings.user_agent,
            settings.request_delay,
        )),
    };
    Ok(ingest::crawl_product_page(
        start,
        product,
        &rules,
        fetcher.as_ref(),
        settings.page_limit,
    )?)
}

pub fn load(path: &Path, strict: bool) -> Result<CorpusBatch, PipelineError> {
    let report = corpus::load_corpus(path, strict)?;
    if !report.skipped_lines.is_empty() {
        log::warn!(
            "{}: skipped {} malformed line(s): {:?}",
            path.display(),
            report.skipped_lines.len(),
            report.skipped_lines
        );
    }
    Ok(report.batch)
}

/// Loads the configured corpus, or crawls when no corpus is set.
pub fn acquire(settings: &Settings) -> Result<CorpusBatch, PipelineError> {
    match &settings.corpus {
        Some(p) => load(p, settings.strict_load),
        None if settings.start_url.is_some() => crawl(settings),
        None => Err(ConfigError::Missing("corpus").into()),
    }
}

pub fn translate(batch: &CorpusBatch, settings: &Settings) -> Result<CorpusBatch, PipelineError> {
    Ok(translate::translate_batch(
        batch,
        &settings.translator_config(),
    )?)
}

pub fn build_classifier(settings: &Settings) -> Result<Classifier, PipelineError> {
    let tags = match &settings.tag_lexicon {
        Some(p) => TagLexicon::load(p).map_err(|e| PipelineError::data("classify", None, e))?,
        None => TagLexicon::bundled(),
    };
    let opinions = match &settings.opinion_lexicon {
        Some(p) => OpinionLexicon::load(p).map_err(|e| PipelineError::data("classify", None, e))?,
        None => OpinionLexicon::bundled(),
    };
    let noise = match &settings.noise_keywords {
        Some(p) => NoiseDetector::load(p).map_err(|e| io_err("classify", p, e))?,
        None => NoiseDetector::bundled(),
    };
    Ok(Classifier {
        tags,
        opinions,
        noise,
        mode: settings.mode,
        noise_filter: settings.noise_filter,
    })
}

/// Classifies every comment (in parallel, output in input order) and stores
/// the prediction on each comment.
pub fn classify(
    batch: &CorpusBatch,
    classifier: &Classifier,
) -> (CorpusBatch, Vec<CommentClassification>) {
    let classifications: Vec<CommentClassification> = batch
        .comments
        .par_iter()
        .map(|c| classifier.classify(c))
        .collect();
    let mut out = batch.clone();
    for (c, cls) in out.comments.iter_mut().zip(&classifications) {
        c.prediction = Some(cls.to_prediction());
    }
    (out, classifications)
}

/// Rebuilds classifications from a corpus whose comments carry predictions.
pub fn stored_classifications(
    batch: &CorpusBatch,
) -> Result<Vec<CommentClassification>, PipelineError> {
    batch
        .comments
        .iter()
        .map(|c| match &c.prediction {
            Some(p) => Ok(CommentClassification::from_prediction(c, p)),
            None => Err(PipelineError::data(
                "rate",
                Some(c.id.clone()),
                "comment has no prediction; run classify first",
            )),
        })
        .collect()
}

pub fn summarize(
    batch: &CorpusBatch,
    classifications: &[CommentClassification],
) -> Result<Vec<RatingSummary>, PipelineError> {
    batch
        .product_ids()
        .iter()
        .map(|p| {
            rating::summarize_product(classifications, p)
                .map_err(|e| PipelineError::data("rate", Some(p.clone()), e))
        })
        .collect()
}

pub fn has_gold(batch: &CorpusBatch) -> bool {
    batch.comments.iter().any(|c| c.gold.is_some())
}

pub fn evaluate(
    batch: &CorpusBatch,
    settings: &Settings,
) -> Result<EvaluationReport, PipelineError> {
    Ok(eval::evaluate(&batch.comments, settings.match_rule)?)
}

/// File-name-safe form of a product id.
pub fn file_stem(product_id: &str) -> String {
    let s: String = product_id
        .chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect();
    if s.is_empty() {
        "product".into()
    } else {
        s
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), PipelineError> {
    fs::write(path, contents).map_err(|e| io_err("write", path, e))
}

/// Writes `summaries.jsonl` and one chart per format per product.
pub fn write_ratings(
    dir: &Path,
    summaries: &[RatingSummary],
) -> Result<Vec<PathBuf>, PipelineError> {
    fs::create_dir_all(dir).map_err(|e| io_err("write", dir, e))?;
    let mut written = Vec::new();
    let mut lines = String::new();
    for s in summaries {
        let _ = writeln!(lines, "{}", s.to_json());
    }
    let path = dir.join("summaries.jsonl");
    write_file(&path, &lines)?;
    written.push(path);
    for s in summaries {
        for f in ChartFormat::ALL {
            let path = dir.join(format!(
                "{}.{}",
                file_stem(&s.product_id),
                f.file_extension()
            ));
            write_file(&path, &render_chart(s, f))?;
            written.push(path);
        }
    }
    Ok(written)
}

fn noise_report(classifications: &[CommentClassification]) -> String {
    let mut out = String::new();
    for c in classifications.iter().filter(|c| c.noise.is_noise) {
        let line = serde_json::json!({
            "id": c.comment_id,
            "product_id": c.product_id,
            "reasons": c.noise.reasons,
        });
        let _ = writeln!(out, "{line}");
    }
    out
}

#[derive(Debug, Clone)]
pub struct PipelineOutcome {
    pub comments: usize,
    pub summaries: Vec<RatingSummary>,
    pub evaluation: Option<EvaluationReport>,
    pub files: Vec<PathBuf>,
}

/// Runs every stage and writes the reports into the output directory.
pub fn run_pipeline(settings: &Settings) -> Result<PipelineOutcome, PipelineError> {
    settings.check_files()?;
    let out_dir = settings
        .output_dir
        .clone()
        .ok_or(ConfigError::Missing("output_dir"))?;
    let classifier = build_classifier(settings)?;

    let batch = acquire(settings)?;
    log::info!("loaded {} comments from {}", batch.len(), batch.source);
    let translated = translate(&batch, settings)?;
    let (classified, classifications) = classify(&translated, &classifier);
    let summaries = summarize(&classified, &classifications)?;

    fs::create_dir_all(&out_dir).map_err(|e| io_err("write", &out_dir, e))?;
    let mut files = Vec::new();
    let classified_path = out_dir.join("classified.jsonl");
    corpus::write_corpus(&classified, &classified_path)?;
    files.push(classified_path);
    files.extend(write_ratings(&out_dir, &summaries)?);
    let noise_path = out_dir.join("noise.jsonl");
    write_file(&noise_path, &noise_report(&classifications))?;
    files.push(noise_path);

    let evaluation = if has_gold(&classified) {
        let report = evaluate(&classified, settings)?;
        let path = out_dir.join("evaluation.json");
        write_file(&path, &(report.to_json_pretty() + "\n"))?;
        files.push(path);
        Some(report)
    } else {
        None
    };

    Ok(PipelineOutcome {
        comments: classified.len(),
        summaries,
        evaluation,
        files,
    })
}
