//! Shared fixtures and independent oracles for the integration and
//! acceptance suites.

#![allow(dead_code)]

pub mod fixture;
pub mod oracle;
pub mod published;

use std::path::PathBuf;

use lxper_core::corpus::{EasyWordList, GradedTextCorpus, GradedWordList};
use lxper_core::features::{extract_all, FeatureVector, RelationResource};
use lxper_core::textproc::{annotate, AnalyzedText, ParseSource};
use lxper_core::Grade;

/// Path of a committed fixture file.
pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn annotate(raw: &str) -> AnalyzedText {
    annotate(raw, &ParseSource::Heuristic).expect("fixture text annotates")
}

/// Annotate and featurize every text of a corpus.
pub fn featurize(
    corpus: &GradedTextCorpus,
    wordlist: &GradedWordList,
    resource: &RelationResource,
) -> Vec<(Grade, AnalyzedText, FeatureVector)> {
    corpus
        .texts()
        .iter()
        .map(|t| {
            let analyzed = annotate(&t.text);
            let vector =
                extract_all(&analyzed, wordlist, resource).expect("fixture text featurizes");
            (t.grade, analyzed, vector)
        })
        .collect()
}

/// Load the committed synthetic fixture set.
pub fn load_fixture_set() -> (
    GradedTextCorpus,
    GradedWordList,
    RelationResource,
    EasyWordList,
) {
    let corpus = lxper_core::corpus::load_text_corpus(&fixture_path(fixture::CORPUS_FILE))
        .expect("fixture corpus loads");
    let (wordlist, warnings) =
        lxper_core::corpus::load_word_list(&fixture_path(fixture::WORDLIST_FILE))
            .expect("fixture word list loads");
    assert!(
        warnings.is_empty(),
        "fixture word list has duplicates: {warnings:?}"
    );
    let resource = RelationResource::load(&fixture_path(fixture::RELATIONS_FILE))
        .expect("fixture relations load");
    let easy = lxper_core::corpus::load_easy_words(&fixture_path(fixture::EASYWORDS_FILE))
        .expect("fixture easy words load");
    (corpus, wordlist, resource, easy)
}
