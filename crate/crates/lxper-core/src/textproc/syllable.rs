//! Heuristic English syllable counting.
//!
//! Counts vowel groups (`a e i o u y`, with `y` counting only when it is not
//! the first letter), applies a silent terminal-e rule, and consults an
//! exceptions table first. Aggregate features tolerate heuristic error;
//! the exceptions table pins the words used in tests.

use std::collections::HashMap;
use std::path::Path;
use std::sync::OnceLock;

use super::TextError;

const BUNDLED_EXCEPTIONS: &str = include_str!("../../assets/syllable_exceptions.tsv");

/// Syllable counter backed by an exceptions table.
#[derive(Debug, Clone)]
pub struct SyllableCounter {
    exceptions: HashMap<String, usize>,
}

impl SyllableCounter {
    /// The counter with the bundled exceptions table.
    pub fn bundled() -> &'static SyllableCounter {
        static BUNDLED: OnceLock<SyllableCounter> = OnceLock::new();
        BUNDLED.get_or_init(|| {
            SyllableCounter::parse(BUNDLED_EXCEPTIONS, "<bundled>")
                .expect("bundled exceptions table is well-formed")
        })
    }

    /// Load an exceptions table from `word<TAB>syllable_count` lines.
    pub fn from_file(path: &Path) -> Result<Self, TextError> {
        let content = std::fs::read_to_string(path)
            .map_err(|e| TextError::Io(path.display().to_string(), e.to_string()))?;
        Self::parse(&content, &path.display().to_string())
    }

    fn parse(content: &str, origin: &str) -> Result<Self, TextError> {
        let mut exceptions = HashMap::new();
        for (lineno, line) in content.lines().enumerate() {
            let line = line.trim_end();
            if line.is_empty() {
                continue;
            }
            let (word, count) = line
                .split_once('\t')
                .ok_or_else(|| TextError::BadExceptionsLine(origin.to_string(), lineno + 1))?;
            let count: usize = count
                .trim()
                .parse()
                .map_err(|_| TextError::BadExceptionsLine(origin.to_string(), lineno + 1))?;
            if word.is_empty() || count == 0 {
                return Err(TextError::BadExceptionsLine(origin.to_string(), lineno + 1));
            }
            exceptions.insert(word.to_lowercase(), count);
        }
        Ok(Self { exceptions })
    }

    /// Entries in the table, for tests and diagnostics.
    pub fn entries(&self) -> impl Iterator<Item = (&str, usize)> {
        self.exceptions.iter().map(|(w, &c)| (w.as_str(), c))
    }

    /// Count syllables in a word. The word must contain at least one
    /// alphabetic character.
    pub fn count(&self, word: &str) -> Result<usize, TextError> {
        if !word.chars().any(|c| c.is_alphabetic()) {
            return Err(TextError::NoAlphabetic(word.to_string()));
        }
        let lower = word.to_lowercase();
        if let Some(&count) = self.exceptions.get(&lower) {
            return Ok(count);
        }
        Ok(heuristic_count(&lower))
    }
}

/// Count syllables with the bundled exceptions table.
pub fn count_syllables(word: &str) -> Result<usize, TextError> {
    SyllableCounter::bundled().count(word)
}

fn is_vowel(c: char, position: usize) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u') || (c == 'y' && position > 0)
}

fn heuristic_count(lower: &str) -> usize {
    let chars: Vec<char> = lower.chars().collect();
    let mut groups = 0usize;
    let mut in_group = false;
    let mut final_e_is_singleton_group = false;
    for (i, &c) in chars.iter().enumerate() {
        if is_vowel(c, i) {
            if !in_group {
                groups += 1;
                in_group = true;
                final_e_is_singleton_group = c == 'e' && i + 1 == chars.len();
            } else {
                final_e_is_singleton_group = false;
            }
        } else {
            in_group = false;
        }
    }

    if groups > 1 && final_e_is_singleton_group && !ends_consonant_le(&chars) {
        groups -= 1;
    }
    groups.max(1)
}

/// True for words like "table": final e preceded by `l` which is itself
/// preceded by a consonant, so the `-le` carries a syllable.
fn ends_consonant_le(chars: &[char]) -> bool {
    let n = chars.len();
    if n < 3 {
        return false;
    }
    chars[n - 1] == 'e'
        && chars[n - 2] == 'l'
        && chars[n - 3].is_alphabetic()
        && !is_vowel(chars[n - 3], n - 3)
}
