#![allow(dead_code)]

use std::collections::HashMap;
use std::path::PathBuf;

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

use urdu_opinion::corpus::NoiseVerdict;
use urdu_opinion::eval::{
    build_contingency, compute_metrics, proportion_deviation, Contingency, Ratio,
};
use urdu_opinion::ingest::{extract_comments, Document, ExtractionRules};
use urdu_opinion::nlp::{pos_tag, split_sentences, tokenize, PosTag, TagLexicon, TaggedToken};
use urdu_opinion::opinion::{score_sentence, OpinionLexicon};
use urdu_opinion::rating::{
    render_chart, summarize_product, ChartFormat, ClassCounts, RatingSummary,
};
use urdu_opinion::{CommentClassification, Polarity};

pub const CASES: u32 = 256;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn binary() -> PathBuf {
    PathBuf::from(env!("CARGO_BIN_EXE_urdu-opinion"))
}

pub fn unit(product: &str, id: usize, p: Polarity) -> CommentClassification {
    CommentClassification {
        comment_id: format!("{product}#{id}"),
        product_id: product.to_string(),
        sentence_scores: Vec::new(),
        polarity: p,
        units: vec![p],
        noise: NoiseVerdict::clean(),
    }
}

/// One single-unit classification per counted comment.
pub fn classifications(product: &str, counts: ClassCounts) -> Vec<CommentClassification> {
    let mut out = Vec::new();
    for p in Polarity::ALL {
        for _ in 0..counts.get(p) {
            let id = out.len() + 1;
            out.push(unit(product, id, p));
        }
    }
    out
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config {
        cases,
        failure_persistence: None,
        ..Config::default()
    })
}

fn report<T: std::fmt::Debug>(
    r: Result<(), proptest::test_runner::TestError<T>>,
) -> Result<(), String> {
    r.map_err(|e| e.to_string())
}

pub fn polarity() -> impl Strategy<Value = Polarity> {
    prop_oneof![
        Just(Polarity::Positive),
        Just(Polarity::Negative),
        Just(Polarity::Neutral)
    ]
}

fn text() -> impl Strategy<Value = String> {
    "[a-zA-Z0-9 .,!?;:'\"()\\-\t\n]{0,60}"
}

const VOCAB: [&str; 10] = [
    "good", "bad", "clear", "slow", "phone", "very", "nice", "poor", "camera", "great",
];

fn tag() -> impl Strategy<Value = PosTag> {
    prop_oneof![
        Just(PosTag::JJ),
        Just(PosTag::JJR),
        Just(PosTag::JJS),
        Just(PosTag::NN),
        Just(PosTag::RB),
        Just(PosTag::DT),
        Just(PosTag::VBP),
    ]
}

fn tagged_sentence(max: usize) -> impl Strategy<Value = Vec<TaggedToken>> {
    prop::collection::vec(
        (prop::sample::select(VOCAB.to_vec()), tag()).prop_map(|(w, t)| TaggedToken::new(w, t)),
        0..=max,
    )
}

fn lexicon_entries() -> impl Strategy<Value = HashMap<String, i8>> {
    prop::collection::hash_map(
        prop::sample::select(VOCAB.to_vec()).prop_map(String::from),
        prop_oneof![Just(1i8), Just(-1i8)],
        0..VOCAB.len(),
    )
}

fn lexicon_from(entries: &HashMap<String, i8>) -> OpinionLexicon {
    let mut lex = OpinionLexicon::new();
    for (w, v) in entries {
        lex.try_insert(w, *v).unwrap();
    }
    lex
}

fn counts() -> impl Strategy<Value = ClassCounts> {
    (0u64..400, 0u64..400, 0u64..400).prop_map(|(a, b, c)| ClassCounts::new(a, b, c))
}

fn nonempty_counts() -> impl Strategy<Value = ClassCounts> {
    counts().prop_filter("empty", |c| c.total() > 0)
}

fn pairs(max: usize) -> impl Strategy<Value = Vec<(Polarity, Polarity)>> {
    prop::collection::vec((polarity(), polarity()), 1..=max)
}

pub fn tokenizer_preserves_characters(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&text(), |s| {
        let joined: String = tokenize(&s).concat();
        let expected: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        prop_assert_eq!(joined, expected);
        Ok(())
    }))
}

pub fn split_then_tokenize_matches(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&text(), |s| {
        let split: Vec<String> = split_sentences(&s)
            .iter()
            .flat_map(|x| tokenize(x))
            .collect();
        prop_assert_eq!(split, tokenize(&s));
        Ok(())
    }))
}

pub fn pos_tag_preserves_length(cases: u32) -> Result<(), String> {
    let lex = TagLexicon::bundled();
    report(runner(cases).run(&text(), |s| {
        let tokens = tokenize(&s);
        let tagged = pos_tag(&tokens, &lex);
        prop_assert_eq!(tagged.len(), tokens.len());
        for (t, tok) in tagged.iter().zip(&tokens) {
            prop_assert_eq!(&t.surface, tok);
        }
        Ok(())
    }))
}

/// Adding a positive word to the lexicon never lowers a sentence's net score,
/// and a negative word never raises it.
pub fn lexicon_monotonicity(cases: u32) -> Result<(), String> {
    let strategy = (
        tagged_sentence(8),
        lexicon_entries(),
        prop::sample::select(VOCAB.to_vec()),
    );
    report(
        runner(cases).run(&strategy, |(sentence, mut entries, word)| {
            entries.remove(word);
            let before = score_sentence(&sentence, &lexicon_from(&entries)).net;
            entries.insert(word.to_string(), 1);
            let after = score_sentence(&sentence, &lexicon_from(&entries));
            prop_assert!(after.net >= before, "{} < {}", after.net, before);
            if Polarity::from_net(before) == Polarity::Positive {
                prop_assert_eq!(after.polarity, Polarity::Positive);
            }
            // dual: a negative entry never raises the score
            entries.insert(word.to_string(), -1);
            let lowered = score_sentence(&sentence, &lexicon_from(&entries)).net;
            prop_assert!(lowered <= before, "{} > {}", lowered, before);
            Ok(())
        }),
    )
}

pub fn count_conservation(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&nonempty_counts(), |c| {
        let s = summarize_product(&classifications("p", c), "p")
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(s.n_positive + s.n_negative + s.n_neutral, s.total);
        prop_assert_eq!(s.total, c.total());
        let tenths: i64 = Polarity::ALL
            .iter()
            .map(|p| i64::from(s.percent(*p).tenths()))
            .sum();
        prop_assert!((tenths - 1000).abs() <= 2, "percent sum {}", tenths);
        Ok(())
    }))
}

pub fn contingency_cell_sum(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&pairs(200), |ps| {
        let c = build_contingency(&ps).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(c.tp + c.fp + c.fn_ + c.tn, ps.len() as u64);
        Ok(())
    }))
}

fn le(a: Ratio, b: Ratio) -> bool {
    u128::from(a.num) * u128::from(b.den) <= u128::from(b.num) * u128::from(a.den)
}

pub fn f_measure_bounds(cases: u32) -> Result<(), String> {
    let strategy = (0u64..500, 0u64..500, 0u64..500, 0u64..500);
    report(runner(cases).run(&strategy, |(tp, fp, fn_, tn)| {
        let m = compute_metrics(&Contingency { tp, fp, fn_, tn });
        if let (Some(p), Some(r), Some(f)) = (m.precision.0, m.recall.0, m.f_measure.0) {
            let (lo, hi) = if le(p, r) { (p, r) } else { (r, p) };
            prop_assert!(le(lo, f) && le(f, hi), "f {} outside [{}, {}]", f, lo, hi);
        } else {
            prop_assert!(m.f_measure.0.is_none());
        }
        Ok(())
    }))
}

fn same_total() -> impl Strategy<Value = (ClassCounts, ClassCounts)> {
    nonempty_counts().prop_flat_map(|a| {
        let t = a.total();
        (Just(a), 0..=t).prop_flat_map(move |(a, x)| {
            (Just(a), 0..=(t - x)).prop_map(move |(a, y)| (a, ClassCounts::new(x, y, t - x - y)))
        })
    })
}

pub fn deviation_symmetry(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&same_total(), |(a, b)| {
        let ab = proportion_deviation(&a, &b).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let ba = proportion_deviation(&b, &a).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(ab, ba);
        prop_assert_eq!(ab.average.num == 0, a == b);
        let aa = proportion_deviation(&a, &a).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(aa.average.num, 0);
        Ok(())
    }))
}

/// Cell of the opinionated-vs-neutral table, written out case by case.
fn cell(predicted: Polarity, actual: Polarity) -> usize {
    use Polarity::*;
    match (predicted, actual) {
        (Positive, Positive)
        | (Positive, Negative)
        | (Negative, Positive)
        | (Negative, Negative) => 0,
        (Positive, Neutral) | (Negative, Neutral) => 1,
        (Neutral, Positive) | (Neutral, Negative) => 2,
        (Neutral, Neutral) => 3,
    }
}

pub fn contingency_oracle(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&pairs(50), |ps| {
        let mut cells = [0u64; 4];
        for &(p, a) in &ps {
            cells[cell(p, a)] += 1;
        }
        let c = build_contingency(&ps).map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!([c.tp, c.fp, c.fn_, c.tn], cells);
        Ok(())
    }))
}

pub fn score_sentence_oracle(cases: u32) -> Result<(), String> {
    report(runner(cases).run(
        &(tagged_sentence(6), lexicon_entries()),
        |(sentence, entries)| {
            let (mut pos, mut neg) = (0u32, 0u32);
            for t in &sentence {
                let adjective = matches!(t.tag, PosTag::JJ | PosTag::JJR | PosTag::JJS);
                match entries.get(&t.surface) {
                    Some(1) if adjective => pos += 1,
                    Some(-1) if adjective => neg += 1,
                    _ => {}
                }
            }
            let net = i64::from(pos) - i64::from(neg);
            let expected = if net > 0 {
                Polarity::Positive
            } else if net < 0 {
                Polarity::Negative
            } else {
                Polarity::Neutral
            };
            let s = score_sentence(&sentence, &lexicon_from(&entries));
            prop_assert_eq!(
                (s.pos_count, s.neg_count, s.net, s.polarity),
                (pos, neg, net, expected)
            );
            Ok(())
        },
    ))
}

#[derive(Debug, Clone)]
struct Block {
    class: &'static str,
    text: String,
    wrapped: bool,
}

fn page() -> impl Strategy<Value = Vec<Block>> {
    prop::collection::vec(
        (
            prop::sample::select(vec!["comment", "ad", "comment reply", "author"]),
            "[a-z ]{0,12}",
            any::<bool>(),
        )
            .prop_map(|(class, text, wrapped)| Block {
                class,
                text,
                wrapped,
            }),
        0..12,
    )
}

fn render(blocks: &[Block]) -> String {
    let mut html = String::from("<html><body>\n");
    for b in blocks {
        let inner = if b.wrapped {
            format!("<section><span>{}</span></section>", b.text)
        } else {
            b.text.clone()
        };
        html.push_str(&format!("<div class=\"{}\">{}</div>\n", b.class, inner));
    }
    html.push_str("</body></html>");
    html
}

/// Extraction yields one comment per non-empty `div.comment`, counted both
/// from the generated model and by walking the parsed tree.
pub fn extraction_count(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&page(), |blocks| {
        let html = render(&blocks);
        let model = blocks
            .iter()
            .filter(|b| b.class.split(' ').any(|c| c == "comment") && !b.text.trim().is_empty())
            .count();
        let doc = Document::parse(&html);
        let walked = doc
            .elements()
            .into_iter()
            .filter(|&id| doc.element_name(id) == Some("div") && doc.has_class(id, "comment"))
            .filter(|&id| !doc.text_content(id).trim().is_empty())
            .count();
        let got = extract_comments(&html, &ExtractionRules::new("div.comment"), "p")
            .map_err(|e| TestCaseError::fail(e.to_string()))?;
        prop_assert_eq!(got.len(), model);
        prop_assert_eq!(got.len(), walked);
        Ok(())
    }))
}

fn attr_values(svg: &str, class: &str, attr: &str) -> Vec<(String, f64)> {
    svg.lines()
        .filter(|l| l.contains(&format!("class=\"{class}\"")))
        .map(|l| {
            let grab = |key: &str| {
                let start = l.find(&format!("{key}=\"")).unwrap() + key.len() + 2;
                let end = start + l[start..].find('"').unwrap();
                l[start..end].to_string()
            };
            (grab("data-polarity"), grab(attr).parse().unwrap())
        })
        .collect()
}

pub fn chart_proportions(cases: u32) -> Result<(), String> {
    report(runner(cases).run(&nonempty_counts(), |c| {
        let s =
            RatingSummary::from_counts("p", c).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let max = Polarity::ALL.iter().map(|p| c.get(*p)).max().unwrap() as f64;
        let bars = attr_values(&render_chart(&s, ChartFormat::SvgBar), "bar", "height");
        prop_assert_eq!(bars.len(), 3);
        let tallest = bars.iter().map(|b| b.1).fold(0.0, f64::max);
        for (p, h) in &bars {
            let want = c.get(p.parse().unwrap()) as f64 / max;
            prop_assert!(
                (h / tallest - want).abs() <= 0.005,
                "{} bar {} vs {}",
                p,
                h / tallest,
                want
            );
        }
        let sectors = attr_values(
            &render_chart(&s, ChartFormat::SvgPie),
            "sector",
            "data-degrees",
        );
        let total = c.total() as f64;
        for (p, deg) in &sectors {
            let want = c.get(p.parse().unwrap()) as f64 / total;
            prop_assert!(
                (deg / 360.0 - want).abs() <= 0.005,
                "{} sector {} vs {}",
                p,
                deg / 360.0,
                want
            );
        }
        let nonzero = Polarity::ALL.iter().filter(|p| c.get(**p) > 0).count();
        prop_assert_eq!(sectors.len(), nonzero);
        Ok(())
    }))
}
