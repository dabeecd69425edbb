//! Flat `key = value` configuration shared by every subcommand.
//!
//! Relative paths in a config file resolve against the file's directory.
//! Command-line flags are applied on top through [`Settings::set`].

use std::path::{Path, PathBuf};
use std::time::Duration;

use thiserror::Error;

use crate::eval::MatchRule;
use crate::ingest::ExtractionRules;
use crate::opinion::ClassificationMode;
use crate::translate::{Backend, TranslatorConfig};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConfigError {
    #[error("{path}:{line}: expected `key = value`")]
    Syntax { path: String, line: usize },
    #[error("unknown config key `{0}`")]
    UnknownKey(String),
    #[error("invalid value for `{key}`: {reason}")]
    InvalidValue { key: String, reason: String },
    #[error("cannot read config {path}: {reason}")]
    Io { path: String, reason: String },
    #[error("{what} not found: {path}")]
    MissingFile { what: String, path: String },
    #[error("missing setting `{0}`")]
    Missing(&'static str),
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum FetcherKind {
    #[default]
    Fixture,
    Network,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Settings {
    pub corpus: Option<PathBuf>,
    pub strict_load: bool,
    pub output_dir: Option<PathBuf>,

    pub start_url: Option<String>,
    pub product_id: Option<String>,
    pub comment_selector: Option<String>,
    pub text_selector: Option<String>,
    pub next_page_selector: Option<String>,
    pub page_limit: usize,
    pub fetcher: FetcherKind,
    pub fixture_map: Option<PathBuf>,
    pub timeout: Duration,
    pub user_agent: String,
    pub request_delay: Duration,

    pub gloss_dictionary: Option<PathBuf>,
    pub tag_lexicon: Option<PathBuf>,
    pub opinion_lexicon: Option<PathBuf>,
    pub noise_keywords: Option<PathBuf>,

    pub translator: Backend,
    pub endpoint_url: Option<String>,
    pub api_key_env: Option<String>,
    pub batch_size: usize,
    pub skip_translated: bool,
    pub concurrency: usize,
    pub retry_base: Duration,

    pub mode: ClassificationMode,
    pub noise_filter: bool,
    pub match_rule: MatchRule,
}

impl Default for Settings {
    fn default() -> Self {
        let t = TranslatorConfig::default();
        Settings {
            corpus: None,
            strict_load: true,
            output_dir: None,
            start_url: None,
            product_id: None,
            comment_selector: None,
            text_selector: None,
            next_page_selector: None,
            page_limit: 10,
            fetcher: FetcherKind::Fixture,
            fixture_map: None,
            timeout: Duration::from_secs(30),
            user_agent: concat!("urdu-opinion/", env!("CARGO_PKG_VERSION")).to_string(),
            request_delay: Duration::from_millis(1000),
            gloss_dictionary: None,
            tag_lexicon: None,
            opinion_lexicon: None,
            noise_keywords: None,
            translator: t.backend,
            endpoint_url: None,
            api_key_env: None,
            batch_size: t.batch_size,
            skip_translated: t.skip_translated,
            concurrency: t.concurrency,
            retry_base: t.retry_base,
            mode: ClassificationMode::Aggregate,
            noise_filter: true,
            match_rule: MatchRule::Opinionated,
        }
    }
}

fn parse_bool(key: &str, v: &str) -> Result<bool, ConfigError> {
    match v {
        "true" | "yes" | "on" | "1" => Ok(true),
        "false" | "no" | "off" | "0" => Ok(false),
        _ => Err(ConfigError::InvalidValue {
            key: key.into(),
            reason: format!("`{v}` is not a boolean"),
        }),
    }
}

fn parse_num<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, ConfigError> {
    v.parse().map_err(|_| ConfigError::InvalidValue {
        key: key.into(),
        reason: format!("`{v}` is not a number"),
    })
}

fn positive(key: &str, n: usize) -> Result<usize, ConfigError> {
    if n == 0 {
        Err(ConfigError::InvalidValue {
            key: key.into(),
            reason: "must be at least 1".into(),
        })
    } else {
        Ok(n)
    }
}

impl Settings {
    pub fn from_file(path: &Path) -> Result<Self, ConfigError> {
        let text = std::fs::read_to_string(path).map_err(|e| ConfigError::Io {
            path: path.display().to_string(),
            reason: e.to_string(),
        })?;
        let base = path.parent().unwrap_or(Path::new("."));
        let mut s = Settings::default();
        s.apply_text(&text, &path.display().to_string(), base)?;
        Ok(s)
    }

    pub fn apply_text(&mut self, text: &str, origin: &str, base: &Path) -> Result<(), ConfigError> {
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| ConfigError::Syntax {
                path: origin.to_string(),
                line: idx + 1,
            })?;
            self.set(key.trim(), value.trim(), Some(base))?;
        }
        Ok(())
    }

    /// Sets one key. Relative path values are joined onto `base` when given.
    pub fn set(&mut self, key: &str, value: &str, base: Option<&Path>) -> Result<(), ConfigError> {
        let path = || {
            let p = PathBuf::from(value);
            match base {
                Some(b) if p.is_relative() => b.join(p),
                _ => p,
            }
        };
        let text = || Some(value.to_string()).filter(|v| !v.is_empty());
        let invalid = |reason: String| ConfigError::InvalidValue {
            key: key.into(),
            reason,
        };
        match key {
            "corpus" => self.corpus = Some(path()),
            "strict_load" => self.strict_load = parse_bool(key, value)?,
            "output_dir" => self.output_dir = Some(path()),
            "start_url" => self.start_url = text(),
            "product_id" => self.product_id = text(),
            "comment_selector" => self.comment_selector = text(),
            "text_selector" => self.text_selector = text(),
            "next_page_selector" => self.next_page_selector = text(),
            "page_limit" => self.page_limit = positive(key, parse_num(key, value)?)?,
            "fetcher" => {
                self.fetcher = match value {
                    "fixture" => FetcherKind::Fixture,
                    "network" => FetcherKind::Network,
                    other => return Err(invalid(format!("unknown fetcher `{other}`"))),
                }
            }
            "fixture_map" => self.fixture_map = Some(path()),
            "timeout_secs" => self.timeout = Duration::from_secs(parse_num(key, value)?),
            "user_agent" => self.user_agent = value.to_string(),
            "request_delay_ms" => {
                self.request_delay = Duration::from_millis(parse_num(key, value)?)
            }
            "gloss_dictionary" => self.gloss_dictionary = Some(path()),
            "tag_lexicon" => self.tag_lexicon = Some(path()),
            "opinion_lexicon" => self.opinion_lexicon = Some(path()),
            "noise_keywords" => self.noise_keywords = Some(path()),
            "translator" => self.translator = value.parse().map_err(invalid)?,
            "endpoint_url" => self.endpoint_url = text(),
            "api_key_env" => self.api_key_env = text(),
            "batch_size" => self.batch_size = positive(key, parse_num(key, value)?)?,
            "skip_translated" => self.skip_translated = parse_bool(key, value)?,
            "concurrency" => self.concurrency = positive(key, parse_num(key, value)?)?,
            "retry_base_ms" => self.retry_base = Duration::from_millis(parse_num(key, value)?),
            "mode" => self.mode = value.parse().map_err(invalid)?,
            "noise_filter" => self.noise_filter = parse_bool(key, value)?,
            "strict_match" => {
                self.match_rule = if parse_bool(key, value)? {
                    MatchRule::SameSign
                } else {
                    MatchRule::Opinionated
                }
            }
            other => return Err(ConfigError::UnknownKey(other.to_string())),
        }
        Ok(())
    }

    pub fn translator_config(&self) -> TranslatorConfig {
        TranslatorConfig {
            backend: self.translator,
            dictionary_path: self.gloss_dictionary.clone(),
            endpoint_url: self.endpoint_url.clone(),
            api_key_env_name: self.api_key_env.clone(),
            batch_size: self.batch_size,
            skip_translated: self.skip_translated,
            concurrency: self.concurrency,
            timeout: self.timeout,
            retry_base: self.retry_base,
        }
    }

    pub fn extraction_rules(&self) -> Result<ExtractionRules, ConfigError> {
        let comment = self
            .comment_selector
            .clone()
            .ok_or(ConfigError::Missing("comment_selector"))?;
        Ok(ExtractionRules {
            comment_selector: comment,
            text_selector: self.text_selector.clone(),
            next_page_selector: self.next_page_selector.clone(),
        })
    }

    /// Every file path the settings name must exist.
    pub fn check_files(&self) -> Result<(), ConfigError> {
        let named = [
            ("corpus", &self.corpus),
            ("gloss dictionary", &self.gloss_dictionary),
            ("tag lexicon", &self.tag_lexicon),
            ("opinion lexicon", &self.opinion_lexicon),
            ("noise keyword list", &self.noise_keywords),
            ("fixture map", &self.fixture_map),
        ];
        for (what, p) in named {
            if let Some(p) = p {
                if !p.is_file() {
                    return Err(ConfigError::MissingFile {
                        what: what.to_string(),
                        path: p.display().to_string(),
                    });
                }
            }
        }
        Ok(())
    }
}
