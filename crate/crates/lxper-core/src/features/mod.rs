//! The 29-feature vector and its extractors.

mod chains;
mod difficulty;
mod entity;
mod simple;
mod vector;

pub use chains::{
    build_lexical_chains, lexical_chain_features, ChainFeatures, LexicalChain, LexicalChainSet,
    RelationResource,
};
pub use difficulty::{word_difficulty_features, DifficultyFeatures};
pub use entity::{
    build_entity_index, entity_features, EntityFeatures, EntityIndex, EntityStrategy,
    NpHeadEntities,
};
pub use simple::{simple_features, SimpleFeatures};
pub use vector::{FeatureCode, FeatureFamily, FeatureFlag, FeatureVector};

use thiserror::Error;

use crate::corpus::GradedWordList;
use crate::textproc::AnalyzedText;

/// Errors from feature extraction.
#[derive(Debug, Error)]
pub enum FeatureError {
    #[error("sentence count is zero")]
    ZeroSentences,
    #[error("word count is zero")]
    ZeroWords,
    #[error("word list is empty")]
    EmptyWordList,
    #[error("unknown feature code {0:?}")]
    UnknownCode(String),
    #[error("{path}:{line}: malformed relation line: {message}")]
    MalformedRelation {
        path: String,
        line: usize,
        message: String,
    },
    #[error("hypernym edges contain a cycle through {0:?}")]
    HypernymCycle(String),
    #[error("{0}: {1}")]
    Io(String, String),
}

/// Extract the full 29-entry feature vector in canonical order.
pub fn extract_all(
    text: &AnalyzedText,
    wordlist: &GradedWordList,
    resource: &RelationResource,
) -> Result<FeatureVector, FeatureError> {
    let mut vector = FeatureVector::zeroed();

    let simple = simple_features(text);
    simple.write_into(&mut vector);

    let index = build_entity_index(text);
    let entity = entity_features(&index, text.sentence_count())?;
    entity.write_into(&mut vector);

    let chains = build_lexical_chains(text, resource);
    let chain = lexical_chain_features(&chains, text.word_count, simple.noun_phrase_total)?;
    chain.write_into(&mut vector);

    let difficulty = word_difficulty_features(text, wordlist)?;
    difficulty.write_into(&mut vector);

    Ok(vector)
}

/// A mean as the exact (correctly rounded) quotient of two counts. The
/// integer numerator is always recoverable as `(q * d).round()`.
pub(crate) fn exact_ratio(n: f64, d: f64) -> f64 {
    debug_assert!(d > 0.0);
    n / d
}
