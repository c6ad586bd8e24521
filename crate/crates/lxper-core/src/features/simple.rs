//! Surface and parse-tree features (the first 15 codes).

use super::{exact_ratio, FeatureCode, FeatureVector};
use crate::textproc::AnalyzedText;

const PROPER_NOUN_TAGS: &[&str] = &["NNP", "NNPS"];
const ADJECTIVE_TAGS: &[&str] = &["JJ", "JJR", "JJS"];

/// Values for the simple feature family.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimpleFeatures {
    pub words_per_sentence: f64,
    pub syllables_per_word: f64,
    pub long_word_ratio: f64,
    pub noun_phrase_total: usize,
    pub proper_noun_total: usize,
    pub verb_phrase_total: usize,
    pub adjective_total: usize,
    pub sub_clause_total: usize,
    pub prep_phrase_total: usize,
    sentence_count: usize,
}

impl SimpleFeatures {
    fn per_sentence(&self, total: usize) -> f64 {
        exact_ratio(total as f64, self.sentence_count as f64)
    }

    pub fn write_into(&self, vector: &mut FeatureVector) {
        use FeatureCode::*;
        vector.set(WordsPerSentence, self.words_per_sentence);
        vector.set(SyllablesPerWord, self.syllables_per_word);
        vector.set(LongWordRatio, self.long_word_ratio);
        vector.set(NounPhraseTotal, self.noun_phrase_total as f64);
        vector.set(ProperNounTotal, self.proper_noun_total as f64);
        vector.set(VerbPhraseTotal, self.verb_phrase_total as f64);
        vector.set(AdjectiveTotal, self.adjective_total as f64);
        vector.set(SubClauseTotal, self.sub_clause_total as f64);
        vector.set(PrepPhraseTotal, self.prep_phrase_total as f64);
        vector.set(
            NounPhrasesPerSentence,
            self.per_sentence(self.noun_phrase_total),
        );
        vector.set(
            ProperNounsPerSentence,
            self.per_sentence(self.proper_noun_total),
        );
        vector.set(
            VerbPhrasesPerSentence,
            self.per_sentence(self.verb_phrase_total),
        );
        vector.set(
            AdjectivesPerSentence,
            self.per_sentence(self.adjective_total),
        );
        vector.set(
            SubClausesPerSentence,
            self.per_sentence(self.sub_clause_total),
        );
        vector.set(
            PrepPhrasesPerSentence,
            self.per_sentence(self.prep_phrase_total),
        );
    }
}

/// Compute the simple features from an annotated text.
pub fn simple_features(text: &AnalyzedText) -> SimpleFeatures {
    let sentence_count = text.sentence_count();
    let word_count = text.word_count;
    let long_words = text.syllable_counts.iter().filter(|&&s| s >= 3).count();

    let mut noun_phrase_total = 0;
    let mut proper_noun_total = 0;
    let mut verb_phrase_total = 0;
    let mut adjective_total = 0;
    let mut sub_clause_total = 0;
    let mut prep_phrase_total = 0;
    for sentence in &text.sentences {
        let tree = &sentence.tree;
        noun_phrase_total += tree.count_constituent("NP");
        verb_phrase_total += tree.count_constituent("VP");
        prep_phrase_total += tree.count_constituent("PP");
        sub_clause_total += tree.count_constituent("SBAR");
        proper_noun_total += tree.count_leaf_tags(PROPER_NOUN_TAGS);
        adjective_total += tree.count_leaf_tags(ADJECTIVE_TAGS);
    }

    SimpleFeatures {
        words_per_sentence: exact_ratio(word_count as f64, sentence_count as f64),
        syllables_per_word: exact_ratio(text.total_syllables() as f64, word_count as f64),
        long_word_ratio: exact_ratio(long_words as f64, word_count as f64),
        noun_phrase_total,
        proper_noun_total,
        verb_phrase_total,
        adjective_total,
        sub_clause_total,
        prep_phrase_total,
        sentence_count,
    }
}
