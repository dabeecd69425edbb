use std::collections::HashMap;
use std::path::Path;

use thiserror::Error;

use crate::nlp::is_edge_punct;
use crate::resources;

#[derive(Debug, Error)]
pub enum GlossError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `roman_token<TAB>english_gloss`")]
    Malformed { line: usize },
    #[error("line {line}: duplicate entry for `{token}`")]
    Duplicate { line: usize, token: String },
}

/// Word-for-word Roman Urdu → English glosses.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GlossDictionary {
    entries: HashMap<String, String>,
}

impl GlossDictionary {
    pub fn bundled() -> Self {
        Self::parse(resources::GLOSS_DICTIONARY).expect("bundled gloss dictionary is valid")
    }

    pub fn load(path: &Path) -> Result<Self, GlossError> {
        let text = std::fs::read_to_string(path).map_err(|source| GlossError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, GlossError> {
        let mut entries = HashMap::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (token, gloss) = trimmed
                .split_once('\t')
                .ok_or(GlossError::Malformed { line: line_no })?;
            let token = token.trim().to_lowercase();
            let gloss = gloss.split_whitespace().collect::<Vec<_>>().join(" ");
            if token.is_empty() || token.contains(char::is_whitespace) || gloss.is_empty() {
                return Err(GlossError::Malformed { line: line_no });
            }
            if entries.insert(token.clone(), gloss).is_some() {
                return Err(GlossError::Duplicate {
                    line: line_no,
                    token,
                });
            }
        }
        Ok(GlossDictionary { entries })
    }

    pub fn from_pairs<I, K, V>(pairs: I) -> Self
    where
        I: IntoIterator<Item = (K, V)>,
        K: AsRef<str>,
        V: Into<String>,
    {
        GlossDictionary {
            entries: pairs
                .into_iter()
                .map(|(k, v)| (k.as_ref().to_lowercase(), v.into()))
                .collect(),
        }
    }

    pub fn gloss(&self, token: &str) -> Option<&str> {
        self.entries.get(token).map(String::as_str)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &str)> {
        self.entries.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    fn translate_token(&self, token: &str) -> String {
        if let Some(g) = self.gloss(&token.to_lowercase()) {
            return g.to_string();
        }
        // Retry without edge punctuation, keeping it around the gloss.
        let core = token.trim_matches(is_edge_punct);
        if core.is_empty() || core.len() == token.len() {
            return token.to_string();
        }
        match self.gloss(&core.to_lowercase()) {
            Some(g) => {
                let start = token.find(core).unwrap_or(0);
                let (lead, rest) = token.split_at(start);
                format!("{lead}{g}{}", &rest[core.len()..])
            }
            None => token.to_string(),
        }
    }
}

/// Replaces every whitespace-delimited token found in the dictionary by its
/// gloss. Unknown tokens pass through unchanged; output is single-spaced.
pub fn dictionary_translate(text: &str, dict: &GlossDictionary) -> String {
    text.split_whitespace()
        .map(|t| dict.translate_token(t))
        .collect::<Vec<_>>()
        .join(" ")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn glosses_reference_sentence_with_bundled_dictionary() {
        assert_eq!(
            dictionary_translate("Iss mobile ka camera acha ha", &GlossDictionary::bundled()),
            "this mobile of camera good is"
        );
    }

    #[test]
    fn passthrough_and_empty() {
        let d = GlossDictionary::bundled();
        assert_eq!(dictionary_translate("hello world", &d), "hello world");
        assert_eq!(dictionary_translate("", &d), "");
        assert_eq!(dictionary_translate("  hello \t world ", &d), "hello world");
    }

    #[test]
    fn multi_word_gloss_and_punctuation() {
        let d = GlossDictionary::from_pairs([("zabardast", "very excellent"), ("ha", "is")]);
        assert_eq!(
            dictionary_translate("Zabardast! camera ha.", &d),
            "very excellent! camera is."
        );
        assert_eq!(dictionary_translate("(ha)", &d), "(is)");
    }

    #[test]
    fn parse_rules() {
        assert!(matches!(
            GlossDictionary::parse("acha\tgood\nacha\tfine"),
            Err(GlossError::Duplicate { line: 2, .. })
        ));
        assert!(matches!(
            GlossDictionary::parse("acha"),
            Err(GlossError::Malformed { line: 1 })
        ));
        assert!(matches!(
            GlossDictionary::parse("acha\t  "),
            Err(GlossError::Malformed { line: 1 })
        ));
        let d = GlossDictionary::parse("# header\nACHA\tgood\n").unwrap();
        assert_eq!(d.gloss("acha"), Some("good"));
    }

    #[test]
    fn bundled_dictionary_size() {
        assert!(GlossDictionary::bundled().len() >= 150);
    }
}
