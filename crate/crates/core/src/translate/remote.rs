//! HTTP client for a remote translation service.
//!
//! Request: `POST endpoint` with `{"texts":[..],"from":"ur-Latn","to":"en"}`
//! and a bearer token. Response: `{"translations":[..]}` aligned by index.

use std::thread;
use std::time::Duration;

use serde::{Deserialize, Serialize};

use super::TranslateError;

pub const SOURCE_LANG: &str = "ur-Latn";
pub const TARGET_LANG: &str = "en";
pub const MAX_RETRIES: u32 = 3;
const EXCERPT_LEN: usize = 200;

#[derive(Debug, Serialize)]
struct TranslateRequest<'a> {
    texts: &'a [String],
    from: &'a str,
    to: &'a str,
}

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct TranslateResponse {
    translations: Vec<String>,
}

#[derive(Debug, Clone)]
pub struct RemoteTranslator {
    agent: ureq::Agent,
    endpoint: String,
    api_key: String,
    retry_base: Duration,
}

enum Attempt {
    Done(Vec<String>),
    Transient(TranslateError),
    Fatal(TranslateError),
}

fn excerpt(body: &str) -> String {
    body.chars().take(EXCERPT_LEN).collect()
}

impl RemoteTranslator {
    pub fn new(endpoint: impl Into<String>, api_key: impl Into<String>, timeout: Duration) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .http_status_as_error(false)
            .build()
            .into();
        RemoteTranslator {
            agent,
            endpoint: endpoint.into(),
            api_key: api_key.into(),
            retry_base: Duration::from_millis(500),
        }
    }

    /// First retry waits `base`, then 2×, then 4×.
    pub fn with_retry_base(mut self, base: Duration) -> Self {
        self.retry_base = base;
        self
    }

    fn attempt(&self, texts: &[String]) -> Attempt {
        let body = serde_json::to_string(&TranslateRequest {
            texts,
            from: SOURCE_LANG,
            to: TARGET_LANG,
        })
        .expect("request serialization is infallible");
        let result = self
            .agent
            .post(&self.endpoint)
            .header("Authorization", format!("Bearer {}", self.api_key))
            .header("Content-Type", "application/json")
            .send(body);
        let mut resp = match result {
            Ok(r) => r,
            Err(e) => {
                return Attempt::Transient(TranslateError::Remote {
                    status: None,
                    excerpt: excerpt(&e.to_string()),
                })
            }
        };
        let status = resp.status().as_u16();
        let text = match resp.body_mut().read_to_string() {
            Ok(t) => t,
            Err(e) => {
                return Attempt::Transient(TranslateError::Remote {
                    status: Some(status),
                    excerpt: excerpt(&e.to_string()),
                })
            }
        };
        if status == 429 || status >= 500 {
            return Attempt::Transient(TranslateError::Remote {
                status: Some(status),
                excerpt: excerpt(&text),
            });
        }
        if !(200..300).contains(&status) {
            return Attempt::Fatal(TranslateError::Remote {
                status: Some(status),
                excerpt: excerpt(&text),
            });
        }
        match serde_json::from_str::<TranslateResponse>(&text) {
            Ok(r) if r.translations.len() == texts.len() => Attempt::Done(r.translations),
            _ => Attempt::Fatal(TranslateError::Remote {
                status: Some(status),
                excerpt: excerpt(&text),
            }),
        }
    }

    /// Translates one group of texts, retrying transient failures (transport
    /// errors, 429, 5xx) up to three times with exponential backoff.
    pub fn translate_group(&self, texts: &[String]) -> Result<Vec<String>, TranslateError> {
        let mut retries = 0;
        loop {
            match self.attempt(texts) {
                Attempt::Done(v) => return Ok(v),
                Attempt::Fatal(e) => return Err(e),
                Attempt::Transient(e) if retries >= MAX_RETRIES => return Err(e),
                Attempt::Transient(e) => {
                    let delay = self.retry_base * 2u32.pow(retries);
                    log::warn!("translation request failed ({e}); retrying in {delay:?}");
                    thread::sleep(delay);
                    retries += 1;
                }
            }
        }
    }
}
