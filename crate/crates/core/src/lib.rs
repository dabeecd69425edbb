//! Opinion mining for product comments written in Roman Urdu or English.
//!
//! The pipeline crawls comments from product pages, glosses Roman Urdu into
//! English, tags parts of speech, scores adjectives against an opinion
//! lexicon, and summarizes and evaluates the resulting polarities.

pub mod config;
pub mod corpus;
pub mod eval;
pub mod ingest;
pub mod nlp;
pub mod opinion;
pub mod pipeline;
pub mod rating;
pub mod resources;
pub mod translate;

pub use corpus::{Comment, CorpusBatch, GoldLabel, Polarity};
pub use opinion::{ClassificationMode, Classifier, CommentClassification};
