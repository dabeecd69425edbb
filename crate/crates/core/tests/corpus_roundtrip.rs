mod common;

use urdu_opinion::corpus::{
    format_comment_record, load_corpus, parse_comment_record, parse_corpus, write_corpus,
    CorpusError, LanguageHint, Origin, Relevancy,
};
use urdu_opinion::{Comment, CorpusBatch, GoldLabel, Polarity};

#[test]
fn urdu_script_and_roman_urdu_survive_a_round_trip() {
    let mut urdu = Comment::new("u1", "p", "اس موبائل کا کیمرہ اچھا ہے");
    urdu.gold = Some(GoldLabel {
        polarity: Polarity::Positive,
        relevancy: Relevancy::Relevant,
        origin: Origin::User,
    });
    let mut roman = Comment::new("u2", "p", "camera kharab ha");
    roman.language_hint = LanguageHint::RomanUrdu;
    roman.translated_text = Some("camera bad is".into());
    let batch = CorpusBatch::new("test", vec![urdu, roman]).unwrap();

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("c.jsonl");
    write_corpus(&batch, &path).unwrap();
    let back = load_corpus(&path, true).unwrap();
    assert!(back.skipped_lines.is_empty());
    assert_eq!(back.batch.comments, batch.comments);
    for c in &batch.comments {
        assert_eq!(&parse_comment_record(&format_comment_record(c)).unwrap(), c);
    }
}

#[test]
fn fixture_corpus_loads_strictly() {
    let report = load_corpus(&common::fixtures().join("corpus.jsonl"), true).unwrap();
    assert_eq!(report.batch.len(), 65);
    assert_eq!(
        report.batch.product_ids(),
        vec!["nokia-108", "xperia-x8", "bb-curve-8900"]
    );
    assert!(report.batch.comments.iter().all(|c| c.gold.is_some()));
}

#[test]
fn lenient_loading_skips_bad_lines() {
    let text = "{\"id\":\"a\",\"product_id\":\"p\",\"raw_text\":\"ok\"}\nnot json\n{\"id\":\"b\",\"product_id\":\"p\"}\n";
    let report = parse_corpus(text, "mem", false).unwrap();
    assert_eq!(report.batch.len(), 1);
    assert_eq!(report.skipped_lines, vec![2, 3]);
    assert!(matches!(
        parse_corpus(text, "mem", true),
        Err(CorpusError::MalformedRecord { line: Some(2), .. })
    ));
}

#[test]
fn missing_file_names_the_path() {
    let err = load_corpus(std::path::Path::new("/no/such/corpus.jsonl"), true).unwrap_err();
    assert!(err.to_string().contains("/no/such/corpus.jsonl"));
}
