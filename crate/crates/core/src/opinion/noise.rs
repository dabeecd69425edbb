//! Rule-based detection of advertisement and off-topic comments.
//!
//! Three signals are checked on the raw (untranslated) text: web addresses,
//! phone numbers (including partially masked ones such as `03xx 8xx5xx9`),
//! and sale vocabulary.

use std::collections::HashSet;
use std::path::Path;

use crate::corpus::{Comment, NoiseReason, NoiseVerdict};
use crate::nlp::is_edge_punct;
use crate::resources;

const TLDS: [&str; 13] = [
    "com", "net", "org", "info", "biz", "io", "co", "pk", "in", "uk", "us", "xyz", "ly",
];

const PHONE_WINDOW: usize = 14;
const PHONE_MIN_POSITIONS: usize = 7;
const PHONE_MIN_REAL_DIGITS: usize = 3;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NoiseDetector {
    keywords: HashSet<String>,
}

impl Default for NoiseDetector {
    fn default() -> Self {
        Self::bundled()
    }
}

impl NoiseDetector {
    pub fn with_keywords<I, S>(keywords: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        NoiseDetector {
            keywords: keywords
                .into_iter()
                .map(|k| k.as_ref().trim().to_lowercase())
                .filter(|k| !k.is_empty())
                .collect(),
        }
    }

    pub fn bundled() -> Self {
        Self::parse_keywords(resources::NOISE_KEYWORDS)
    }

    /// One keyword per line; `#` starts a comment line.
    pub fn parse_keywords(text: &str) -> Self {
        Self::with_keywords(
            text.lines()
                .map(str::trim)
                .filter(|l| !l.is_empty() && !l.starts_with('#')),
        )
    }

    pub fn load(path: &Path) -> std::io::Result<Self> {
        Ok(Self::parse_keywords(&std::fs::read_to_string(path)?))
    }

    pub fn keywords(&self) -> impl Iterator<Item = &str> {
        self.keywords.iter().map(String::as_str)
    }

    pub fn detect_text(&self, text: &str) -> NoiseVerdict {
        let mut reasons = Vec::new();
        if text.split_whitespace().any(looks_like_url) {
            reasons.push(NoiseReason::Url);
        }
        if contains_phone_number(text) {
            reasons.push(NoiseReason::PhoneNumber);
        }
        if text
            .split(|c: char| !c.is_alphanumeric())
            .any(|w| !w.is_empty() && self.keywords.contains(&w.to_lowercase()))
        {
            reasons.push(NoiseReason::SaleKeyword);
        }
        NoiseVerdict::from_reasons(reasons)
    }

    /// Checks a comment's raw text; the translation is never consulted.
    pub fn detect(&self, comment: &Comment) -> NoiseVerdict {
        self.detect_text(&comment.raw_text)
    }
}

pub fn detect_noise(comment: &Comment) -> NoiseVerdict {
    NoiseDetector::bundled().detect(comment)
}

fn looks_like_url(token: &str) -> bool {
    let token = token.trim_matches(is_edge_punct).to_lowercase();
    if token.contains("www.") || token.contains("http") {
        return true;
    }
    match token.rsplit_once('.') {
        Some((host, tld)) => {
            !host.is_empty()
                && host.chars().last().is_some_and(char::is_alphanumeric)
                && TLDS.contains(&tld)
        }
        None => false,
    }
}

fn is_mask(c: char) -> bool {
    c == 'x' || c == 'X'
}

fn contains_phone_number(text: &str) -> bool {
    let chars: Vec<char> = text.chars().collect();
    (0..chars.len()).any(|start| {
        let c = chars[start];
        if !(c.is_ascii_digit() || is_mask(c)) {
            return false;
        }
        let mut positions = 0;
        let mut digits = 0;
        for &d in chars[start..].iter().take(PHONE_WINDOW) {
            if d.is_ascii_digit() {
                positions += 1;
                digits += 1;
            } else if is_mask(d) {
                positions += 1;
            } else if d != ' ' && d != '-' {
                break;
            }
        }
        positions >= PHONE_MIN_POSITIONS && digits >= PHONE_MIN_REAL_DIGITS
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn verdict(text: &str) -> NoiseVerdict {
        NoiseDetector::bundled().detect_text(text)
    }

    #[test]
    fn web_address_is_noise() {
        let v = verdict("www.xyz.com is the website you need for change");
        assert!(v.is_noise);
        assert_eq!(v.reasons, vec![NoiseReason::Url]);
    }

    #[test]
    fn sale_with_phone_is_noise() {
        let v = verdict(
            "I m selling BB curve 8900. Good condition. Demand is 4500/- Not Negotiable. rwp isb contact 92 334 xxx 0000.",
        );
        assert!(v.is_noise);
        assert!(v.reasons.contains(&NoiseReason::SaleKeyword));
        assert!(v.reasons.contains(&NoiseReason::PhoneNumber));
    }

    #[test]
    fn relevant_question_is_clean() {
        let v = verdict("Do it contain skype???");
        assert!(!v.is_noise);
        assert_eq!(v.reasons, vec![NoiseReason::None]);
    }

    #[test]
    fn masked_numbers_count() {
        assert!(contains_phone_number("lahore 03xx 8xx5xx9"));
        assert!(contains_phone_number(
            "plz cntct me 0xx-2xx9xx8x frm lahore"
        ));
        assert!(contains_phone_number("call 03001234567"));
        assert!(!contains_phone_number("Demand is 4500/- final 2700"));
        assert!(!contains_phone_number("xperia x8 ki original battery"));
        assert!(!contains_phone_number("xxx xxxx"));
    }

    #[test]
    fn url_tld_rule() {
        assert!(looks_like_url("shop.pk"));
        assert!(looks_like_url("(http://a.b/c)"));
        assert!(!looks_like_url("alaikum.frndz"));
        assert!(!looks_like_url("thanx..."));
        assert!(!looks_like_url(".com"));
    }

    #[test]
    fn keywords_are_whole_words_case_insensitive() {
        assert!(verdict("10 month WARINTI new").is_noise);
        assert!(!verdict("wholesale prices are nice").is_noise);
        let custom = NoiseDetector::with_keywords(["trade"]);
        assert!(custom.detect_text("Trade offers welcome").is_noise);
        assert!(!custom.detect_text("contact me").is_noise);
    }
}
