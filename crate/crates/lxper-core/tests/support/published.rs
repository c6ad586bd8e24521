//! Reference selection fixture: the published per-feature correlations
//! with the target grade, the eight over-threshold collinear pairs, and
//! the expected outcome of running selection over them.

use lxper_core::features::FeatureCode::{self, *};
use lxper_core::selection::{CollinearPair, CorrelationReport};

/// Correlation of each feature with the target grade.
pub const CORRELATIONS: [(FeatureCode, f64); 29] = [
    (WordsPerSentence, 0.494),
    (SyllablesPerWord, 0.419),
    (NounPhrasesPerSentence, 0.445),
    (ProperNounsPerSentence, 0.410),
    (VerbPhrasesPerSentence, 0.302),
    (AdjectivesPerSentence, 0.381),
    (SubClausesPerSentence, 0.270),
    (PrepPhrasesPerSentence, 0.432),
    (LongWordRatio, 0.419),
    (NounPhraseTotal, 0.342),
    (ProperNounTotal, 0.400),
    (VerbPhraseTotal, 0.201),
    (AdjectiveTotal, 0.392),
    (SubClauseTotal, 0.261),
    (PrepPhraseTotal, 0.442),
    (UniqueEntityTotal, 0.00643),
    (EntityMentionsPerSentence, 0.0629),
    (UniqueEntitiesPerSentence, 0.0705),
    (LexicalChainTotal, 0.190),
    (LexicalChainsPerWord, 0.10196),
    (LexicalChainsPerNounPhrase, 0.0912),
    (LevelCRatio, 0.280),
    (LevelCTotal, 0.444),
    (LevelDRatio, 0.416),
    (LevelDTotal, 0.503),
    (LevelERatio, 0.180),
    (LevelETotal, 0.352),
    (LevelFRatio, 0.0714),
    (LevelFTotal, 0.180),
];

/// The eight reported over-threshold pairs. Pairwise correlations are not
/// published beyond "above 0.85"; the values here only fix processing
/// order, which does not affect the outcome.
pub fn collinear_pairs() -> Vec<CollinearPair> {
    [
        (SyllablesPerWord, LongWordRatio),
        (SubClausesPerSentence, SubClauseTotal),
        (UniqueEntityTotal, EntityMentionsPerSentence),
        (UniqueEntityTotal, UniqueEntitiesPerSentence),
        (LexicalChainsPerWord, LexicalChainsPerNounPhrase),
        (LevelDRatio, LevelDTotal),
        (LevelERatio, LevelETotal),
        (LevelFRatio, LevelFTotal),
    ]
    .iter()
    .map(|&(a, b)| CollinearPair { a, b, r_pair: 0.9 })
    .collect()
}

/// The 22 features expected to survive, in canonical order.
pub const EXPECTED_INCLUDED: [FeatureCode; 22] = [
    WordsPerSentence,
    SyllablesPerWord,
    NounPhrasesPerSentence,
    ProperNounsPerSentence,
    VerbPhrasesPerSentence,
    AdjectivesPerSentence,
    SubClausesPerSentence,
    PrepPhrasesPerSentence,
    NounPhraseTotal,
    ProperNounTotal,
    VerbPhraseTotal,
    AdjectiveTotal,
    PrepPhraseTotal,
    EntityMentionsPerSentence,
    UniqueEntitiesPerSentence,
    LexicalChainTotal,
    LexicalChainsPerWord,
    LevelCRatio,
    LevelCTotal,
    LevelDTotal,
    LevelETotal,
    LevelFTotal,
];

/// The expected importance ranking (descending |r|, canonical ties).
pub const EXPECTED_RANKING: [FeatureCode; 22] = [
    LevelDTotal,               // 0.503
    WordsPerSentence,          // 0.494
    NounPhrasesPerSentence,    // 0.445
    LevelCTotal,               // 0.444
    PrepPhraseTotal,           // 0.442
    PrepPhrasesPerSentence,    // 0.432
    SyllablesPerWord,          // 0.419
    ProperNounsPerSentence,    // 0.410
    ProperNounTotal,           // 0.400
    AdjectiveTotal,            // 0.392
    AdjectivesPerSentence,     // 0.381
    LevelETotal,               // 0.352
    NounPhraseTotal,           // 0.342
    VerbPhrasesPerSentence,    // 0.302
    LevelCRatio,               // 0.280
    SubClausesPerSentence,     // 0.270
    VerbPhraseTotal,           // 0.201
    LexicalChainTotal,         // 0.190
    LevelFTotal,               // 0.180
    LexicalChainsPerWord,      // 0.10196
    UniqueEntitiesPerSentence, // 0.0705
    EntityMentionsPerSentence, // 0.0629
];

pub fn report() -> CorrelationReport {
    CorrelationReport::from_values(&CORRELATIONS, 2760)
}
