//! Canonical feature codes and the fixed-width feature vector.

use std::fmt;
use std::str::FromStr;

use super::FeatureError;

/// The 29 feature codes in canonical order. The short code strings are the
/// wire names used in selection tables, model files and reports.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum FeatureCode {
    /// aWPS: average words per sentence.
    WordsPerSentence,
    /// aSPW: average syllables per word.
    SyllablesPerWord,
    /// aNP: noun phrases per sentence.
    NounPhrasesPerSentence,
    /// aNN: proper nouns per sentence.
    ProperNounsPerSentence,
    /// aVP: verb phrases per sentence.
    VerbPhrasesPerSentence,
    /// aAdj: adjectives per sentence.
    AdjectivesPerSentence,
    /// aSBr: subordinate clauses per sentence.
    SubClausesPerSentence,
    /// aPP: prepositional phrases per sentence.
    PrepPhrasesPerSentence,
    /// M3S: fraction of words with three or more syllables.
    LongWordRatio,
    /// nNP: total noun phrases.
    NounPhraseTotal,
    /// nNN: total proper nouns.
    ProperNounTotal,
    /// nVP: total verb phrases.
    VerbPhraseTotal,
    /// nAdj: total adjectives.
    AdjectiveTotal,
    /// nSBr: total subordinate clauses.
    SubClauseTotal,
    /// nPP: total prepositional phrases.
    PrepPhraseTotal,
    /// nUE: total unique entities.
    UniqueEntityTotal,
    /// aEM: entity mentions per sentence.
    EntityMentionsPerSentence,
    /// aUE: unique entities per sentence.
    UniqueEntitiesPerSentence,
    /// nLC: total lexical chains.
    LexicalChainTotal,
    /// aLCw: lexical chains per word.
    LexicalChainsPerWord,
    /// aLCn: lexical chains per noun phrase.
    LexicalChainsPerNounPhrase,
    /// aCw: level C words per word.
    LevelCRatio,
    /// nCw: total level C words.
    LevelCTotal,
    /// aDw: level D words per word.
    LevelDRatio,
    /// nDw: total level D words.
    LevelDTotal,
    /// aEw: level E words per word.
    LevelERatio,
    /// nEw: total level E words.
    LevelETotal,
    /// aFw: level F words per word.
    LevelFRatio,
    /// nFw: total level F words.
    LevelFTotal,
}

/// The three feature families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FeatureFamily {
    Simple,
    CognitivelyMotivated,
    WordDifficulty,
}

use FeatureCode::*;

impl FeatureCode {
    /// All 29 codes in canonical order.
    pub const ALL: [FeatureCode; 29] = [
        WordsPerSentence,
        SyllablesPerWord,
        NounPhrasesPerSentence,
        ProperNounsPerSentence,
        VerbPhrasesPerSentence,
        AdjectivesPerSentence,
        SubClausesPerSentence,
        PrepPhrasesPerSentence,
        LongWordRatio,
        NounPhraseTotal,
        ProperNounTotal,
        VerbPhraseTotal,
        AdjectiveTotal,
        SubClauseTotal,
        PrepPhraseTotal,
        UniqueEntityTotal,
        EntityMentionsPerSentence,
        UniqueEntitiesPerSentence,
        LexicalChainTotal,
        LexicalChainsPerWord,
        LexicalChainsPerNounPhrase,
        LevelCRatio,
        LevelCTotal,
        LevelDRatio,
        LevelDTotal,
        LevelERatio,
        LevelETotal,
        LevelFRatio,
        LevelFTotal,
    ];

    /// Position in canonical order.
    pub fn index(self) -> usize {
        self as usize
    }

    /// The short wire code, e.g. `aWPS`.
    pub fn code(self) -> &'static str {
        match self {
            WordsPerSentence => "aWPS",
            SyllablesPerWord => "aSPW",
            NounPhrasesPerSentence => "aNP",
            ProperNounsPerSentence => "aNN",
            VerbPhrasesPerSentence => "aVP",
            AdjectivesPerSentence => "aAdj",
            SubClausesPerSentence => "aSBr",
            PrepPhrasesPerSentence => "aPP",
            LongWordRatio => "M3S",
            NounPhraseTotal => "nNP",
            ProperNounTotal => "nNN",
            VerbPhraseTotal => "nVP",
            AdjectiveTotal => "nAdj",
            SubClauseTotal => "nSBr",
            PrepPhraseTotal => "nPP",
            UniqueEntityTotal => "nUE",
            EntityMentionsPerSentence => "aEM",
            UniqueEntitiesPerSentence => "aUE",
            LexicalChainTotal => "nLC",
            LexicalChainsPerWord => "aLCw",
            LexicalChainsPerNounPhrase => "aLCn",
            LevelCRatio => "aCw",
            LevelCTotal => "nCw",
            LevelDRatio => "aDw",
            LevelDTotal => "nDw",
            LevelERatio => "aEw",
            LevelETotal => "nEw",
            LevelFRatio => "aFw",
            LevelFTotal => "nFw",
        }
    }

    pub fn family(self) -> FeatureFamily {
        match self.index() {
            0..=14 => FeatureFamily::Simple,
            15..=20 => FeatureFamily::CognitivelyMotivated,
            _ => FeatureFamily::WordDifficulty,
        }
    }

    /// True for the `n`-prefixed document totals.
    pub fn is_total(self) -> bool {
        self.code().starts_with('n')
    }
}

impl fmt::Display for FeatureCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

impl FromStr for FeatureCode {
    type Err = FeatureError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        FeatureCode::ALL
            .iter()
            .copied()
            .find(|c| c.code() == s)
            .ok_or_else(|| FeatureError::UnknownCode(s.to_string()))
    }
}

/// Degenerate conditions recorded alongside the values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum FeatureFlag {
    /// aLCn reported as 0 because the text has no noun phrases.
    ChainsPerNounPhraseUndefined,
}

/// The 29 feature values in canonical order.
#[derive(Debug, Clone, PartialEq)]
pub struct FeatureVector {
    values: [f64; 29],
    flags: Vec<FeatureFlag>,
}

impl FeatureVector {
    pub fn zeroed() -> FeatureVector {
        FeatureVector {
            values: [0.0; 29],
            flags: Vec::new(),
        }
    }

    pub fn get(&self, code: FeatureCode) -> f64 {
        self.values[code.index()]
    }

    pub fn set(&mut self, code: FeatureCode, value: f64) {
        self.values[code.index()] = value;
    }

    pub fn flag(&mut self, flag: FeatureFlag) {
        if !self.flags.contains(&flag) {
            self.flags.push(flag);
        }
    }

    pub fn flags(&self) -> &[FeatureFlag] {
        &self.flags
    }

    /// (code, value) pairs in canonical order.
    pub fn iter(&self) -> impl Iterator<Item = (FeatureCode, f64)> + '_ {
        FeatureCode::ALL.iter().map(move |&c| (c, self.get(c)))
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}
