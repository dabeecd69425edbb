use std::collections::HashMap;
use std::path::Path;

use thiserror::Error;

use crate::resources;

#[derive(Debug, Error)]
pub enum LexiconError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `word<TAB>positive|negative`")]
    Malformed { line: usize },
    #[error("`{0}` is listed as both positive and negative")]
    DuplicateEntry(String),
    #[error("unknown polarity `{0}`")]
    UnknownPolarity(String),
}

/// Adjective → orientation table. Values are +1 or -1.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct OpinionLexicon {
    entries: HashMap<String, i8>,
}

impl OpinionLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn bundled() -> Self {
        Self::parse(resources::OPINION_LEXICON).expect("bundled opinion lexicon is valid")
    }

    pub fn load(path: &Path) -> Result<Self, LexiconError> {
        let text = std::fs::read_to_string(path).map_err(|source| LexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        let lex = Self::parse(&text)?;
        if lex.is_empty() {
            log::warn!("opinion lexicon {} has no entries", path.display());
        }
        Ok(lex)
    }

    pub fn parse(text: &str) -> Result<Self, LexiconError> {
        let mut lex = OpinionLexicon::new();
        for (idx, line) in text.lines().enumerate() {
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (word, label) = trimmed
                .split_once('\t')
                .ok_or(LexiconError::Malformed { line: idx + 1 })?;
            let word = word.trim().to_lowercase();
            if word.is_empty() {
                return Err(LexiconError::Malformed { line: idx + 1 });
            }
            let value = match label.trim() {
                "positive" => 1,
                "negative" => -1,
                other => return Err(LexiconError::UnknownPolarity(other.to_string())),
            };
            lex.try_insert(&word, value)?;
        }
        Ok(lex)
    }

    /// Adds an entry. Re-adding with the same sign is a no-op; the opposite
    /// sign is rejected.
    pub fn try_insert(&mut self, word: &str, value: i8) -> Result<(), LexiconError> {
        assert!(value == 1 || value == -1, "opinion value must be +1 or -1");
        let word = word.to_lowercase();
        match self.entries.get(&word) {
            Some(&v) if v != value => Err(LexiconError::DuplicateEntry(word)),
            _ => {
                self.entries.insert(word, value);
                Ok(())
            }
        }
    }

    pub fn value(&self, word: &str) -> Option<i8> {
        self.entries.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn count_positive(&self) -> usize {
        self.entries.values().filter(|v| **v > 0).count()
    }

    pub fn count_negative(&self) -> usize {
        self.entries.values().filter(|v| **v < 0).count()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, i8)> {
        self.entries.iter().map(|(w, v)| (w.as_str(), *v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_entry() {
        let lex = OpinionLexicon::parse("good\tpositive").unwrap();
        assert_eq!(lex.len(), 1);
        assert_eq!(lex.value("good"), Some(1));
    }

    #[test]
    fn conflicting_signs_rejected() {
        let err = OpinionLexicon::parse("fine\tpositive\nfine\tnegative").unwrap_err();
        assert!(matches!(err, LexiconError::DuplicateEntry(w) if w == "fine"));
    }

    #[test]
    fn unknown_label_rejected() {
        let err = OpinionLexicon::parse("meh\tneutral").unwrap_err();
        assert!(matches!(err, LexiconError::UnknownPolarity(w) if w == "neutral"));
    }

    #[test]
    fn empty_file_loads_empty() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.tsv");
        std::fs::write(&path, "").unwrap();
        assert!(OpinionLexicon::load(&path).unwrap().is_empty());
    }

    #[test]
    fn bundled_has_at_least_a_hundred_each_way() {
        let lex = OpinionLexicon::bundled();
        assert!(lex.count_positive() >= 100, "{}", lex.count_positive());
        assert!(lex.count_negative() >= 100, "{}", lex.count_negative());
    }
}
