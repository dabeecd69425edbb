mod common;

use urdu_opinion::corpus::load_corpus;
use urdu_opinion::nlp::{is_edge_punct, tag_token, TagLexicon};
use urdu_opinion::opinion::OpinionLexicon;
use urdu_opinion::translate::GlossDictionary;

#[test]
fn bundled_lexicon_tags_are_honoured() {
    let lex = TagLexicon::bundled();
    assert!(lex.len() >= 1500, "{}", lex.len());
    for (word, tag) in lex.iter() {
        assert_eq!(tag_token(word, 0, &lex), tag, "{word}");
        assert_eq!(tag_token(word, 3, &lex), tag, "{word}");
    }
}

#[test]
fn every_opinion_word_is_tagged_as_an_adjective() {
    let tags = TagLexicon::bundled();
    let opinions = OpinionLexicon::bundled();
    assert!(opinions.count_positive() >= 100 && opinions.count_negative() >= 100);
    for (word, _) in opinions.iter() {
        let tag = tags
            .get(word)
            .unwrap_or_else(|| panic!("{word} missing from tag lexicon"));
        assert!(tag.is_adjective(), "{word} tagged {tag}");
    }
}

#[test]
fn gloss_output_words_are_tagged() {
    let tags = TagLexicon::bundled();
    let gloss = GlossDictionary::bundled();
    assert!(gloss.len() >= 150);
    for (roman, english) in gloss.iter() {
        assert_eq!(roman, roman.to_lowercase());
        for w in english.split_whitespace() {
            assert!(tags.get(w).is_some(), "gloss of {roman}: {w} untagged");
        }
    }
}

/// Plain words in the fixture corpus (after translation) are all in the tag
/// lexicon. Masked numbers, urls and glued tokens are not words.
#[test]
fn fixture_words_are_covered() {
    let tags = TagLexicon::bundled();
    let classified = load_corpus(&common::fixtures().join("golden/classified.jsonl"), true)
        .unwrap()
        .batch;
    let mut missing = Vec::new();
    for c in &classified.comments {
        for raw in c.analysis_text().split_whitespace() {
            let w = raw.trim_matches(is_edge_punct).to_lowercase();
            let plain = !w.is_empty()
                && w.chars()
                    .all(|ch| ch.is_alphabetic() || ch == '-' || ch == '\'');
            if plain && tags.get(&w).is_none() {
                missing.push(w);
            }
        }
    }
    assert!(missing.is_empty(), "{missing:?}");
}
