//! Sentence segmentation, tokenization and part-of-speech tagging.

mod tagger;
mod tokenize;

pub use tagger::{pos_tag, tag_token, PosTag, TagLexicon, TagLexiconError, TaggedToken};
pub use tokenize::{is_edge_punct, split_sentences, tokenize};

/// Splits `text` into sentences and tags each one.
pub fn analyze(text: &str, lexicon: &TagLexicon) -> Vec<Vec<TaggedToken>> {
    split_sentences(text)
        .iter()
        .map(|s| pos_tag(&tokenize(s), lexicon))
        .collect()
}
