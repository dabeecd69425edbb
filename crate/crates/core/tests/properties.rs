mod common;

use common::CASES;

macro_rules! property {
    ($($name:ident),* $(,)?) => {
        $(
            #[test]
            fn $name() {
                if let Err(e) = common::$name(CASES) {
                    panic!("{e}");
                }
            }
        )*
    };
}

property!(
    tokenizer_preserves_characters,
    split_then_tokenize_matches,
    pos_tag_preserves_length,
    lexicon_monotonicity,
    count_conservation,
    contingency_cell_sum,
    f_measure_bounds,
    deviation_symmetry,
    contingency_oracle,
    score_sentence_oracle,
    extraction_count,
    chart_proportions,
);

mod more {
    use proptest::prelude::*;

    use urdu_opinion::corpus::{parse_corpus, CorpusError, LanguageHint};
    use urdu_opinion::eval::{compute_metrics, Contingency};
    use urdu_opinion::opinion::NoiseDetector;
    use urdu_opinion::pipeline::{classify, summarize};
    use urdu_opinion::rating::ClassCounts;
    use urdu_opinion::rating::{Percent, RatingSummary};
    use urdu_opinion::{ClassificationMode, Classifier, Comment, CorpusBatch, Polarity};

    fn comment_text() -> impl Strategy<Value = String> {
        prop::collection::vec(
            prop::sample::select(vec![
                "good", "bad", "acha", "kharab", "camera", "phone", "is", "very", "clear.",
                "slow!", "bekar", "ha", "the", "not", "great?", "battery", "اچھا", "price",
            ]),
            1..12,
        )
        .prop_map(|w| w.join(" "))
    }

    fn comments() -> impl Strategy<Value = Vec<Comment>> {
        prop::collection::vec(
            (
                comment_text(),
                prop::sample::select(vec!["p1", "p2", "p3"]),
                prop::option::of("[a-z ]{1,20}"),
                prop::sample::select(vec![
                    LanguageHint::RomanUrdu,
                    LanguageHint::English,
                    LanguageHint::Unknown,
                ]),
            ),
            1..30,
        )
        .prop_map(|rows| {
            rows.into_iter()
                .enumerate()
                .map(|(i, (text, product, translated, hint))| {
                    let mut c = Comment::new(format!("c{i}"), product, text);
                    c.translated_text = translated;
                    c.language_hint = hint;
                    c
                })
                .collect()
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn corpus_round_trip(cs in comments()) {
            let batch = CorpusBatch::new("mem", cs).unwrap();
            let text: String = batch
                .comments
                .iter()
                .map(|c| urdu_opinion::corpus::format_comment_record(c) + "\n")
                .collect();
            let back = parse_corpus(&text, "mem", true).unwrap();
            prop_assert_eq!(back.batch.comments, batch.comments);
        }

        #[test]
        fn lenient_load_accounts_for_every_line(
            cs in comments(),
            junk in prop::collection::vec((any::<prop::sample::Index>(), "[{}a-z:\"]{1,10}"), 0..6),
        ) {
            let mut lines: Vec<String> = cs.iter().map(urdu_opinion::corpus::format_comment_record).collect();
            for (at, j) in &junk {
                lines.insert(at.index(lines.len() + 1), format!("{{{j}"));
            }
            let text = lines.join("\n");
            let report = parse_corpus(&text, "mem", false).unwrap();
            prop_assert_eq!(report.batch.len() + report.skipped_lines.len(), lines.len());
            prop_assert_eq!(report.skipped_lines.len(), junk.len());
        }

        #[test]
        fn duplicate_ids_are_found_anywhere(cs in comments(), pick in any::<prop::sample::Index>(), at in any::<prop::sample::Index>()) {
            let mut cs = cs;
            let dup = cs[pick.index(cs.len())].clone();
            let pos = at.index(cs.len() + 1);
            cs.insert(pos, dup.clone());
            let err = CorpusBatch::new("mem", cs).unwrap_err();
            prop_assert!(matches!(&err, CorpusError::DuplicateId(id) if *id == dup.id), "{:?}", err);
        }

        /// Every comment lands in exactly one bucket of exactly one product.
        #[test]
        fn one_bucket_per_comment(cs in comments()) {
            let batch = CorpusBatch::new("mem", cs).unwrap();
            let (_, cls) = classify(&batch, &Classifier::bundled());
            let summaries = summarize(&batch, &cls).unwrap();
            let total: u64 = summaries.iter().map(|s| s.total).sum();
            prop_assert_eq!(total, batch.len() as u64);
            for s in &summaries {
                let mine = batch.comments.iter().filter(|c| c.product_id == s.product_id).count();
                prop_assert_eq!(s.total, mine as u64);
            }
        }

        #[test]
        fn per_sentence_mode_counts_sentences(cs in comments()) {
            let batch = CorpusBatch::new("mem", cs).unwrap();
            let mut classifier = Classifier::bundled();
            classifier.mode = ClassificationMode::PerSentence;
            classifier.noise_filter = false;
            let (_, cls) = classify(&batch, &classifier);
            for (c, k) in batch.comments.iter().zip(&cls) {
                let sentences = urdu_opinion::nlp::split_sentences(c.analysis_text()).len().max(1);
                prop_assert_eq!(k.units.len(), sentences);
            }
        }

        #[test]
        fn noise_ignores_translation(cs in comments(), other in "[a-z0-9 .]{0,30}") {
            let detector = NoiseDetector::bundled();
            for c in cs {
                let mut t = c.clone();
                t.translated_text = Some(other.clone());
                prop_assert_eq!(detector.detect(&c), detector.detect(&t));
            }
        }

        #[test]
        fn no_lexicon_adjective_means_neutral(words in prop::collection::vec("(phone|camera|the|is|battery|very|price|it)", 0..10)) {
            let text = words.join(" ");
            for mode in [ClassificationMode::Aggregate, ClassificationMode::PerSentence] {
                let mut classifier = Classifier::bundled();
                classifier.mode = mode;
                let mut c = Comment::new("c", "p", text.clone());
                c.language_hint = LanguageHint::English;
                let k = classifier.classify(&c);
                prop_assert_eq!(k.polarity, Polarity::Neutral);
                prop_assert!(k.units.iter().all(|u| *u == Polarity::Neutral));
            }
        }

        #[test]
        fn percentages_match_exact_rounding(a in 0u64..5000, b in 0u64..5000, c in 0u64..5000) {
            prop_assume!(a + b + c > 0);
            let counts = ClassCounts::new(a, b, c);
            let s = RatingSummary::from_counts("p", counts).unwrap();
            let total = counts.total();
            for p in Polarity::ALL {
                let scaled = counts.get(p) * 1000;
                let (q, r) = (scaled / total, scaled % total);
                let want = q + u64::from(2 * r >= total);
                prop_assert_eq!(s.percent(p), Percent(want as u32));
            }
        }

        #[test]
        fn full_recall_without_false_negatives(tp in 1u64..10_000, fp in 0u64..10_000, tn in 0u64..10_000) {
            let m = compute_metrics(&Contingency { tp, fp, fn_: 0, tn });
            let r = m.recall.0.unwrap();
            prop_assert_eq!(r.num, r.den);
        }
    }
}
