//! Deterministic lexicon + suffix part-of-speech tagger.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::resources;

/// Penn-Treebank-style tag subset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[allow(clippy::upper_case_acronyms)]
pub enum PosTag {
    DT,
    NNS,
    NN,
    NNP,
    VBP,
    VB,
    VBD,
    VBZ,
    RB,
    JJ,
    JJR,
    JJS,
    PRP,
    IN,
    CC,
    CD,
    UH,
    PUNCT,
    OTHER,
}

impl PosTag {
    pub fn is_adjective(self) -> bool {
        matches!(self, PosTag::JJ | PosTag::JJR | PosTag::JJS)
    }

    pub fn as_str(self) -> &'static str {
        use PosTag::*;
        match self {
            DT => "DT",
            NNS => "NNS",
            NN => "NN",
            NNP => "NNP",
            VBP => "VBP",
            VB => "VB",
            VBD => "VBD",
            VBZ => "VBZ",
            RB => "RB",
            JJ => "JJ",
            JJR => "JJR",
            JJS => "JJS",
            PRP => "PRP",
            IN => "IN",
            CC => "CC",
            CD => "CD",
            UH => "UH",
            PUNCT => "PUNCT",
            OTHER => "OTHER",
        }
    }
}

impl fmt::Display for PosTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PosTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        use PosTag::*;
        Ok(match s {
            "DT" => DT,
            "NNS" => NNS,
            "NN" => NN,
            "NNP" => NNP,
            "VBP" => VBP,
            "VB" => VB,
            "VBD" => VBD,
            "VBZ" => VBZ,
            "RB" => RB,
            "JJ" => JJ,
            "JJR" => JJR,
            "JJS" => JJS,
            "PRP" => PRP,
            "IN" => IN,
            "CC" => CC,
            "CD" => CD,
            "UH" => UH,
            "PUNCT" => PUNCT,
            "OTHER" => OTHER,
            other => return Err(other.to_string()),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub surface: String,
    pub tag: PosTag,
}

impl TaggedToken {
    pub fn new(surface: impl Into<String>, tag: PosTag) -> Self {
        TaggedToken {
            surface: surface.into(),
            tag,
        }
    }
}

impl fmt::Display for TaggedToken {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}/{}", self.surface, self.tag)
    }
}

#[derive(Debug, Error)]
pub enum TagLexiconError {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: expected `word<TAB>TAG`")]
    Malformed { line: usize },
    #[error("line {line}: unknown tag `{tag}`")]
    UnknownTag { line: usize, tag: String },
    #[error("line {line}: `{word}` already tagged {existing}")]
    Conflict {
        line: usize,
        word: String,
        existing: PosTag,
    },
}

/// Word → tag table consulted before the suffix rules.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct TagLexicon {
    entries: HashMap<String, PosTag>,
}

impl TagLexicon {
    pub fn new() -> Self {
        Self::default()
    }

    /// The tag lexicon shipped with the crate.
    pub fn bundled() -> Self {
        Self::parse(resources::TAG_LEXICON).expect("bundled tag lexicon is valid")
    }

    pub fn load(path: &Path) -> Result<Self, TagLexiconError> {
        let text = std::fs::read_to_string(path).map_err(|source| TagLexiconError::Io {
            path: path.display().to_string(),
            source,
        })?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, TagLexiconError> {
        let mut lex = TagLexicon::new();
        for (idx, line) in text.lines().enumerate() {
            let line_no = idx + 1;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let (word, tag) = trimmed
                .split_once('\t')
                .ok_or(TagLexiconError::Malformed { line: line_no })?;
            let word = word.trim().to_lowercase();
            if word.is_empty() {
                return Err(TagLexiconError::Malformed { line: line_no });
            }
            let tag: PosTag = tag
                .trim()
                .parse()
                .map_err(|tag| TagLexiconError::UnknownTag { line: line_no, tag })?;
            match lex.entries.get(&word) {
                Some(&existing) if existing != tag => {
                    return Err(TagLexiconError::Conflict {
                        line: line_no,
                        word,
                        existing,
                    })
                }
                _ => {
                    lex.entries.insert(word, tag);
                }
            }
        }
        Ok(lex)
    }

    pub fn insert(&mut self, word: &str, tag: PosTag) {
        self.entries.insert(word.to_lowercase(), tag);
    }

    pub fn get(&self, word: &str) -> Option<PosTag> {
        self.entries.get(word).copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, PosTag)> {
        self.entries.iter().map(|(w, t)| (w.as_str(), *t))
    }

    fn has(&self, word: &str, tag: PosTag) -> bool {
        self.get(word) == Some(tag)
    }
}

const ADJECTIVE_SUFFIXES: [&str; 6] = ["able", "ible", "ful", "ous", "ish", "ive"];
const MIN_STEM: usize = 3;

fn is_punct_only(token: &str) -> bool {
    !token.is_empty()
        && token
            .chars()
            .all(|c| !c.is_alphanumeric() && !c.is_whitespace())
}

fn is_cardinal(token: &str) -> bool {
    token.chars().any(|c| c.is_ascii_digit())
        && token
            .chars()
            .all(|c| c.is_ascii_digit() || matches!(c, '.' | ',' | '/' | '-' | ':'))
}

fn stem_of<'a>(word: &'a str, suffix: &str) -> Option<&'a str> {
    word.strip_suffix(suffix)
        .filter(|stem| stem.chars().count() >= MIN_STEM)
}

/// Candidate adjective stems for a comparative/superlative ending.
fn degree_stems(word: &str, suffix: &str) -> Vec<String> {
    let mut out = Vec::new();
    let Some(bare) = word.strip_suffix(suffix) else {
        return out;
    };
    if bare.is_empty() {
        return out;
    }
    // cheap-er
    out.push(bare.to_string());
    // nice-r, nic-est -> nice
    out.push(format!("{bare}e"));
    // bigg-er -> big
    let mut rev = bare.chars().rev();
    if let (Some(a), Some(b)) = (rev.next(), rev.next()) {
        if a == b {
            out.push(bare[..bare.len() - a.len_utf8()].to_string());
        }
    }
    // happi-er -> happy
    if let Some(s) = bare.strip_suffix('i') {
        out.push(format!("{s}y"));
    }
    out.retain(|s| s.chars().count() >= 2);
    out
}

fn plural_stems(word: &str) -> Vec<String> {
    let mut out = Vec::new();
    if let Some(s) = word.strip_suffix("ies") {
        out.push(format!("{s}y"));
    }
    if let Some(s) = word.strip_suffix("es") {
        out.push(s.to_string());
    }
    if let Some(s) = word.strip_suffix('s') {
        if !s.ends_with('s') {
            out.push(s.to_string());
        }
    }
    out.retain(|s| s.chars().count() >= 2);
    out
}

fn suffix_tag(lower: &str, lexicon: &TagLexicon) -> Option<PosTag> {
    if stem_of(lower, "ly").is_some() {
        return Some(PosTag::RB);
    }
    if ADJECTIVE_SUFFIXES
        .iter()
        .any(|suf| stem_of(lower, suf).is_some())
    {
        return Some(PosTag::JJ);
    }
    if degree_stems(lower, "er")
        .iter()
        .any(|s| lexicon.has(s, PosTag::JJ))
    {
        return Some(PosTag::JJR);
    }
    if degree_stems(lower, "est")
        .iter()
        .any(|s| lexicon.has(s, PosTag::JJ))
    {
        return Some(PosTag::JJS);
    }
    if plural_stems(lower)
        .iter()
        .any(|s| lexicon.has(s, PosTag::NN))
    {
        return Some(PosTag::NNS);
    }
    None
}

/// Tags one token. `position` is the token's index in its sentence; the
/// proper-noun rule only applies to non-initial tokens.
pub fn tag_token(token: &str, position: usize, lexicon: &TagLexicon) -> PosTag {
    if is_punct_only(token) {
        return PosTag::PUNCT;
    }
    if is_cardinal(token) {
        return PosTag::CD;
    }
    let lower = token.to_lowercase();
    if let Some(tag) = lexicon.get(&lower) {
        return tag;
    }
    if let Some(tag) = suffix_tag(&lower, lexicon) {
        return tag;
    }
    if position > 0 && token.chars().next().is_some_and(char::is_uppercase) {
        return PosTag::NNP;
    }
    PosTag::NN
}

pub fn pos_tag<S: AsRef<str>>(tokens: &[S], lexicon: &TagLexicon) -> Vec<TaggedToken> {
    tokens
        .iter()
        .enumerate()
        .map(|(i, t)| TaggedToken::new(t.as_ref(), tag_token(t.as_ref(), i, lexicon)))
        .collect()
}
