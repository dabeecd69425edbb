//! Roman Urdu → English translation with an offline gloss dictionary or a
//! remote HTTP service.

mod gloss;
mod remote;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Duration;

use thiserror::Error;

pub use gloss::{dictionary_translate, GlossDictionary, GlossError};
pub use remote::{RemoteTranslator, MAX_RETRIES, SOURCE_LANG, TARGET_LANG};

use crate::corpus::{CorpusBatch, LanguageHint};

#[derive(Debug, Error)]
pub enum TranslateError {
    #[error("translator configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Dictionary(#[from] GlossError),
    #[error("remote translation failed (status {}): {excerpt}", status.map_or("none".to_string(), |s| s.to_string()))]
    Remote {
        status: Option<u16>,
        excerpt: String,
    },
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum Backend {
    #[default]
    Offline,
    Remote,
}

impl FromStr for Backend {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "offline" => Ok(Backend::Offline),
            "remote" => Ok(Backend::Remote),
            other => Err(format!("unknown translator backend `{other}`")),
        }
    }
}

impl fmt::Display for Backend {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Backend::Offline => "offline",
            Backend::Remote => "remote",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslatorConfig {
    pub backend: Backend,
    /// Offline dictionary; the bundled one is used when unset.
    pub dictionary_path: Option<PathBuf>,
    pub endpoint_url: Option<String>,
    pub api_key_env_name: Option<String>,
    pub batch_size: usize,
    pub skip_translated: bool,
    /// Upper bound on concurrent remote requests.
    pub concurrency: usize,
    pub timeout: Duration,
    pub retry_base: Duration,
}

impl Default for TranslatorConfig {
    fn default() -> Self {
        TranslatorConfig {
            backend: Backend::Offline,
            dictionary_path: None,
            endpoint_url: None,
            api_key_env_name: None,
            batch_size: 25,
            skip_translated: true,
            concurrency: 2,
            timeout: Duration::from_secs(30),
            retry_base: Duration::from_millis(500),
        }
    }
}

/// Something that turns a list of texts into aligned translations.
pub trait TranslationBackend: Sync {
    fn translate_texts(&self, texts: &[String]) -> Result<Vec<String>, TranslateError>;
}

impl TranslationBackend for GlossDictionary {
    fn translate_texts(&self, texts: &[String]) -> Result<Vec<String>, TranslateError> {
        Ok(texts
            .iter()
            .map(|t| dictionary_translate(t, self))
            .collect())
    }
}

/// Remote backend that splits work into groups and runs a bounded number of
/// requests at a time.
pub struct GroupedRemote {
    client: RemoteTranslator,
    batch_size: usize,
    concurrency: usize,
}

type GroupResult = Result<Vec<String>, TranslateError>;

impl TranslationBackend for GroupedRemote {
    fn translate_texts(&self, texts: &[String]) -> Result<Vec<String>, TranslateError> {
        let groups: Vec<&[String]> = texts.chunks(self.batch_size.max(1)).collect();
        let results: Mutex<Vec<Option<GroupResult>>> =
            Mutex::new((0..groups.len()).map(|_| None).collect());
        let next = AtomicUsize::new(0);
        let workers = self.concurrency.clamp(1, groups.len().max(1));
        std::thread::scope(|s| {
            for _ in 0..workers {
                s.spawn(|| loop {
                    let i = next.fetch_add(1, Ordering::SeqCst);
                    if i >= groups.len() {
                        break;
                    }
                    let r = self.client.translate_group(groups[i]);
                    let failed = r.is_err();
                    results.lock().unwrap()[i] = Some(r);
                    if failed {
                        // stop handing out new groups
                        next.store(groups.len(), Ordering::SeqCst);
                    }
                });
            }
        });
        let mut out = Vec::with_capacity(texts.len());
        for r in results.into_inner().unwrap().into_iter().flatten() {
            out.extend(r?);
        }
        if out.len() != texts.len() {
            return Err(TranslateError::Remote {
                status: None,
                excerpt: "translation aborted before all groups completed".into(),
            });
        }
        Ok(out)
    }
}

impl TranslatorConfig {
    /// Validates the configuration and builds the selected backend.
    pub fn build_backend(&self) -> Result<Box<dyn TranslationBackend>, TranslateError> {
        if self.batch_size == 0 {
            return Err(TranslateError::Config("batch_size must be positive".into()));
        }
        match self.backend {
            Backend::Offline => {
                let dict = match &self.dictionary_path {
                    Some(p) => GlossDictionary::load(p)?,
                    None => GlossDictionary::bundled(),
                };
                Ok(Box::new(dict))
            }
            Backend::Remote => {
                let endpoint = self
                    .endpoint_url
                    .clone()
                    .filter(|s| !s.trim().is_empty())
                    .ok_or_else(|| {
                        TranslateError::Config("remote backend needs endpoint_url".into())
                    })?;
                let env = self
                    .api_key_env_name
                    .as_deref()
                    .filter(|s| !s.trim().is_empty())
                    .ok_or_else(|| {
                        TranslateError::Config("remote backend needs api_key_env".into())
                    })?;
                let key = std::env::var(env).map_err(|_| {
                    TranslateError::Config(format!("environment variable `{env}` is not set"))
                })?;
                let client = RemoteTranslator::new(endpoint, key, self.timeout)
                    .with_retry_base(self.retry_base);
                Ok(Box::new(GroupedRemote {
                    client,
                    batch_size: self.batch_size,
                    concurrency: self.concurrency,
                }))
            }
        }
    }
}

/// Fills in `translated_text` for every comment. English-hinted comments
/// copy their raw text; already translated ones are left alone when
/// `skip_translated` is set. Order, ids and raw text never change.
pub fn translate_batch(
    batch: &CorpusBatch,
    config: &TranslatorConfig,
) -> Result<CorpusBatch, TranslateError> {
    let backend = config.build_backend()?;
    translate_batch_with(batch, config.skip_translated, backend.as_ref())
}

pub fn translate_batch_with(
    batch: &CorpusBatch,
    skip_translated: bool,
    backend: &dyn TranslationBackend,
) -> Result<CorpusBatch, TranslateError> {
    let mut out = batch.clone();
    let mut pending = Vec::new();
    for (i, c) in out.comments.iter_mut().enumerate() {
        if skip_translated && c.translated_text.is_some() {
            continue;
        }
        if c.language_hint == LanguageHint::English {
            c.translated_text = Some(c.raw_text.clone());
            continue;
        }
        pending.push(i);
    }
    if pending.is_empty() {
        return Ok(out);
    }
    let texts: Vec<String> = pending
        .iter()
        .map(|&i| out.comments[i].raw_text.clone())
        .collect();
    let translated = backend.translate_texts(&texts)?;
    for (i, t) in pending.into_iter().zip(translated) {
        out.comments[i].translated_text = Some(t);
    }
    Ok(out)
}
