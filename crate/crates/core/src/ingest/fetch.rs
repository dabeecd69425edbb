use std::collections::HashMap;
use std::fmt;
use std::path::{Path, PathBuf};
use std::sync::Mutex;
use std::time::{Duration, Instant};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FetchError {
    pub url: String,
    pub cause: String,
}

impl fmt::Display for FetchError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "fetching {} failed: {}", self.url, self.cause)
    }
}

impl std::error::Error for FetchError {}

pub trait Fetcher: Sync {
    fn fetch(&self, url: &str) -> Result<String, FetchError>;
}

/// Serves pages from local files named in a `url<TAB>path` map.
#[derive(Debug, Clone, Default)]
pub struct FixtureFetcher {
    pages: HashMap<String, PathBuf>,
}

impl FixtureFetcher {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, url: impl Into<String>, path: impl Into<PathBuf>) {
        self.pages.insert(url.into(), path.into());
    }

    /// Reads a map file; relative paths resolve against the map's directory.
    pub fn from_map_file(path: &Path) -> std::io::Result<Self> {
        let text = std::fs::read_to_string(path)?;
        let base = path.parent().unwrap_or(Path::new("."));
        let mut out = FixtureFetcher::new();
        for (idx, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (url, file) = line.split_once('\t').ok_or_else(|| {
                std::io::Error::new(
                    std::io::ErrorKind::InvalidData,
                    format!("{}:{}: expected `url<TAB>path`", path.display(), idx + 1),
                )
            })?;
            out.insert(url.trim(), base.join(file.trim()));
        }
        Ok(out)
    }
}

impl Fetcher for FixtureFetcher {
    fn fetch(&self, url: &str) -> Result<String, FetchError> {
        let err = |cause: String| FetchError {
            url: url.to_string(),
            cause,
        };
        let path = self
            .pages
            .get(url)
            .ok_or_else(|| err("no fixture for url".into()))?;
        let bytes = std::fs::read(path).map_err(|e| err(format!("{}: {e}", path.display())))?;
        Ok(String::from_utf8_lossy(&bytes).into_owned())
    }
}

/// Live HTTP fetcher with a timeout, user agent and a fixed delay between
/// requests.
pub struct NetworkFetcher {
    agent: ureq::Agent,
    delay: Duration,
    last: Mutex<Option<Instant>>,
}

impl NetworkFetcher {
    pub fn new(timeout: Duration, user_agent: &str, delay: Duration) -> Self {
        let agent: ureq::Agent = ureq::Agent::config_builder()
            .timeout_global(Some(timeout))
            .user_agent(user_agent)
            .build()
            .into();
        NetworkFetcher {
            agent,
            delay,
            last: Mutex::new(None),
        }
    }
}

impl Fetcher for NetworkFetcher {
    fn fetch(&self, url: &str) -> Result<String, FetchError> {
        {
            let mut last = self.last.lock().unwrap();
            if let Some(t) = *last {
                let since = t.elapsed();
                if since < self.delay {
                    std::thread::sleep(self.delay - since);
                }
            }
            *last = Some(Instant::now());
        }
        let err = |cause: String| FetchError {
            url: url.to_string(),
            cause,
        };
        let mut resp = self.agent.get(url).call().map_err(|e| err(e.to_string()))?;
        resp.body_mut()
            .read_to_string()
            .map_err(|e| err(e.to_string()))
    }
}
