//! Data files compiled into the binary.

pub const TAG_LEXICON: &str = include_str!("../data/tag_lexicon.tsv");
pub const OPINION_LEXICON: &str = include_str!("../data/opinion_lexicon.tsv");
pub const GLOSS_DICTIONARY: &str = include_str!("../data/gloss_dictionary.tsv");
pub const NOISE_KEYWORDS: &str = include_str!("../data/noise_keywords.txt");
