//! Rule-based sentence segmentation.
//!
//! A sentence break is a `.`, `!` or `?` followed by whitespace and then an
//! uppercase letter or an opening quote. A fixed abbreviation table
//! suppresses breaks after common abbreviated titles and Latin shorthand.

use super::TextError;

/// Abbreviations whose trailing period never ends a sentence.
const ABBREVIATIONS: &[&str] = &[
    "mr.", "mrs.", "dr.", "prof.", "st.", "vs.", "etc.", "e.g.", "i.e.", "u.s.",
];

const TERMINATORS: &[char] = &['.', '!', '?'];
const QUOTE_CHARS: &[char] = &['"', '\'', '\u{201c}', '\u{201d}', '\u{2018}', '\u{2019}'];

/// Split raw text into sentence strings. Every non-whitespace character of
/// the input appears in exactly one returned sentence.
pub fn segment_sentences(raw: &str) -> Result<Vec<String>, TextError> {
    if raw.trim().is_empty() {
        return Err(TextError::EmptyInput);
    }

    let chars: Vec<char> = raw.chars().collect();
    let mut sentences = Vec::new();
    let mut start = 0;
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if TERMINATORS.contains(&c) {
            if let Some(end) = break_end(&chars, start, i) {
                let sentence: String = chars[start..end].iter().collect();
                let sentence = sentence.trim().to_string();
                if !sentence.is_empty() {
                    sentences.push(sentence);
                }
                start = end;
                i = end;
                continue;
            }
        }
        i += 1;
    }
    let tail: String = chars[start..].iter().collect();
    let tail = tail.trim().to_string();
    if !tail.is_empty() {
        sentences.push(tail);
    }
    Ok(sentences)
}

/// Decide whether the terminator at `at` ends a sentence; if so return the
/// index one past the terminator (and any closing quote glued to it).
fn break_end(chars: &[char], start: usize, at: usize) -> Option<usize> {
    if chars[at] == '.' && is_abbreviation(chars, start, at) {
        return None;
    }
    let mut end = at + 1;
    // A closing quote directly after the terminator stays in this sentence.
    if end < chars.len() && QUOTE_CHARS.contains(&chars[end]) {
        end += 1;
    }
    let mut j = end;
    while j < chars.len() && chars[j].is_whitespace() {
        j += 1;
    }
    if j == end {
        return None; // no whitespace after the terminator
    }
    if j >= chars.len() {
        return Some(end); // trailing terminator at end of input
    }
    let next = chars[j];
    if next.is_uppercase() || QUOTE_CHARS.contains(&next) {
        Some(end)
    } else {
        None
    }
}

/// The word ending at the period at `at` (scanning back to whitespace),
/// compared case-insensitively against the abbreviation table.
fn is_abbreviation(chars: &[char], start: usize, at: usize) -> bool {
    let mut w = at;
    while w > start && !chars[w - 1].is_whitespace() {
        w -= 1;
    }
    let word: String = chars[w..=at].iter().collect::<String>().to_lowercase();
    ABBREVIATIONS.contains(&word.as_str())
}
