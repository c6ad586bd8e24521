//! Curriculum word-difficulty features: token-based counts and ratios of
//! level C–F words. Levels A and B are not features; unlisted and
//! unclassified words count toward no level.

use super::{exact_ratio, FeatureCode, FeatureError, FeatureVector};
use crate::corpus::{GradedWordList, WordLevel};
use crate::textproc::AnalyzedText;

/// Counts and ratios for levels C, D, E and F.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct DifficultyFeatures {
    pub level_c: usize,
    pub level_d: usize,
    pub level_e: usize,
    pub level_f: usize,
    word_count: usize,
}

impl DifficultyFeatures {
    fn ratio(&self, n: usize) -> f64 {
        exact_ratio(n as f64, self.word_count as f64)
    }

    pub fn write_into(&self, vector: &mut FeatureVector) {
        use FeatureCode::*;
        vector.set(LevelCTotal, self.level_c as f64);
        vector.set(LevelDTotal, self.level_d as f64);
        vector.set(LevelETotal, self.level_e as f64);
        vector.set(LevelFTotal, self.level_f as f64);
        vector.set(LevelCRatio, self.ratio(self.level_c));
        vector.set(LevelDRatio, self.ratio(self.level_d));
        vector.set(LevelERatio, self.ratio(self.level_e));
        vector.set(LevelFRatio, self.ratio(self.level_f));
    }
}

/// Count word tokens at each of levels C–F. Every occurrence counts, so a
/// word appearing three times contributes three.
pub fn word_difficulty_features(
    text: &AnalyzedText,
    wordlist: &GradedWordList,
) -> Result<DifficultyFeatures, FeatureError> {
    if wordlist.is_empty() {
        return Err(FeatureError::EmptyWordList);
    }
    if text.word_count == 0 {
        return Err(FeatureError::ZeroWords);
    }
    let mut features = DifficultyFeatures {
        word_count: text.word_count,
        ..DifficultyFeatures::default()
    };
    for lower in text.word_lowers() {
        match wordlist.level_of(lower) {
            Some(WordLevel::C) => features.level_c += 1,
            Some(WordLevel::D) => features.level_d += 1,
            Some(WordLevel::E) => features.level_e += 1,
            Some(WordLevel::F) => features.level_f += 1,
            _ => {}
        }
    }
    Ok(features)
}
