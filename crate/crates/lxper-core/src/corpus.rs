//! Graded text corpus, graded word list, and easy-word list: loading,
//! saving, summary statistics, and stratified train/test splitting.
//!
//! The text corpus format is line-delimited JSON records with named fields
//! (`id`, `grade`, `source`, `text`), so corpora are diffable and
//! appendable and embedded newlines are escaped by the encoding.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::textproc::{AnalyzedText, TextError};

pub const GRADE_MIN: f64 = 7.0;
pub const GRADE_MAX: f64 = 12.5;

/// Errors from corpus loading and handling.
#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("{path}:{line}: malformed record: {message}")]
    MalformedRecord {
        path: String,
        line: usize,
        message: String,
    },
    #[error("{path}:{line}: duplicate text id {id:?}")]
    DuplicateId {
        path: String,
        line: usize,
        id: String,
    },
    #[error("grade {0} is outside [{GRADE_MIN}, {GRADE_MAX}]")]
    GradeOutOfRange(f64),
    #[error("record {0:?}: grade {1} is outside [{GRADE_MIN}, {GRADE_MAX}]")]
    RecordGradeOutOfRange(String, f64),
    #[error("record {0:?}: text is empty")]
    EmptyText(String),
    #[error("corpus is empty")]
    EmptyCorpus,
    #[error("{path}:{line}: {message}")]
    MalformedWordList {
        path: String,
        line: usize,
        message: String,
    },
    #[error("easy-word list {0:?} is empty")]
    EmptyEasyWordList(String),
    #[error("test fraction {0} is outside the open interval (0, 1)")]
    BadTestFraction(f64),
    #[error(
        "grade {0} has only one text; merge it with a neighbouring grade or exclude it before splitting"
    )]
    UnsplittableGrade(Grade),
    #[error("analysis failed for text {0:?}: {1}")]
    Analysis(String, TextError),
    #[error("{0}: {1}")]
    Io(String, String),
}

/// A decimal grade level in [7.0, 12.5]. Stored as a finite `f64`; ordering
/// and hashing use the bit pattern, which is total for the validated range.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
#[serde(try_from = "f64", into = "f64")]
pub struct Grade(f64);

impl Grade {
    pub fn new(value: f64) -> Result<Grade, CorpusError> {
        if !value.is_finite() || !(GRADE_MIN..=GRADE_MAX).contains(&value) {
            return Err(CorpusError::GradeOutOfRange(value));
        }
        Ok(Grade(value))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl TryFrom<f64> for Grade {
    type Error = CorpusError;
    fn try_from(value: f64) -> Result<Self, Self::Error> {
        Grade::new(value)
    }
}

impl From<Grade> for f64 {
    fn from(g: Grade) -> f64 {
        g.0
    }
}

impl PartialEq for Grade {
    fn eq(&self, other: &Self) -> bool {
        self.0.to_bits() == other.0.to_bits()
    }
}
impl Eq for Grade {}

impl PartialOrd for Grade {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Grade {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.0.total_cmp(&other.0)
    }
}
impl std::hash::Hash for Grade {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.to_bits().hash(state);
    }
}

impl fmt::Display for Grade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.fract() == 0.0 {
            write!(f, "{}", self.0 as i64)
        } else {
            write!(f, "{}", self.0)
        }
    }
}

/// Where a curriculum text came from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TextSource {
    Exam,
    Textbook,
    MockTest,
    Other,
}

/// One curriculum text with its target grade label.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GradedText {
    pub id: String,
    pub grade: Grade,
    pub source: TextSource,
    pub text: String,
}

/// An ordered collection of graded texts with unique ids.
#[derive(Debug, Clone, PartialEq)]
pub struct GradedTextCorpus {
    texts: Vec<GradedText>,
    counts_by_grade: BTreeMap<Grade, usize>,
}

impl GradedTextCorpus {
    /// Build a corpus, validating id uniqueness and non-empty text.
    pub fn new(texts: Vec<GradedText>) -> Result<GradedTextCorpus, CorpusError> {
        let mut seen = BTreeSet::new();
        let mut counts_by_grade: BTreeMap<Grade, usize> = BTreeMap::new();
        for t in &texts {
            if !seen.insert(t.id.clone()) {
                return Err(CorpusError::DuplicateId {
                    path: "<memory>".into(),
                    line: 0,
                    id: t.id.clone(),
                });
            }
            if t.text.trim().is_empty() {
                return Err(CorpusError::EmptyText(t.id.clone()));
            }
            *counts_by_grade.entry(t.grade).or_insert(0) += 1;
        }
        Ok(GradedTextCorpus {
            texts,
            counts_by_grade,
        })
    }

    pub fn texts(&self) -> &[GradedText] {
        &self.texts
    }

    pub fn len(&self) -> usize {
        self.texts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.texts.is_empty()
    }

    pub fn counts_by_grade(&self) -> &BTreeMap<Grade, usize> {
        &self.counts_by_grade
    }

    /// Grades present, ascending.
    pub fn grades(&self) -> Vec<Grade> {
        self.counts_by_grade.keys().copied().collect()
    }
}

/// Load a graded text corpus from line-delimited JSON records.
pub fn load_text_corpus(path: &Path) -> Result<GradedTextCorpus, CorpusError> {
    let display = path.display().to_string();
    let content = std::fs::read_to_string(path)
        .map_err(|e| CorpusError::Io(display.clone(), e.to_string()))?;

    let mut texts = Vec::new();
    let mut seen = BTreeSet::new();
    for (lineno, line) in content.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        let record: GradedText =
            serde_json::from_str(line).map_err(|e| CorpusError::MalformedRecord {
                path: display.clone(),
                line: lineno + 1,
                message: e.to_string(),
            })?;
        if record.text.trim().is_empty() {
            return Err(CorpusError::EmptyText(record.id));
        }
        if !seen.insert(record.id.clone()) {
            return Err(CorpusError::DuplicateId {
                path: display.clone(),
                line: lineno + 1,
                id: record.id,
            });
        }
        texts.push(record);
    }
    GradedTextCorpus::new(texts)
}

/// Write a corpus as line-delimited JSON records.
pub fn save_text_corpus(corpus: &GradedTextCorpus, path: &Path) -> Result<(), CorpusError> {
    let mut out = String::new();
    for t in corpus.texts() {
        out.push_str(&serde_json::to_string(t).expect("record serializes"));
        out.push('\n');
    }
    std::fs::write(path, out)
        .map_err(|e| CorpusError::Io(path.display().to_string(), e.to_string()))
}

/// Curriculum word difficulty levels.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum WordLevel {
    A,
    B,
    C,
    D,
    E,
    F,
}

impl WordLevel {
    pub fn parse(symbol: &str) -> Option<WordLevel> {
        match symbol {
            "A" => Some(WordLevel::A),
            "B" => Some(WordLevel::B),
            "C" => Some(WordLevel::C),
            "D" => Some(WordLevel::D),
            "E" => Some(WordLevel::E),
            "F" => Some(WordLevel::F),
            _ => None,
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            WordLevel::A => "A",
            WordLevel::B => "B",
            WordLevel::C => "C",
            WordLevel::D => "D",
            WordLevel::E => "E",
            WordLevel::F => "F",
        }
    }
}

/// Word → difficulty level mapping plus the unclassified set (proper nouns,
/// abbreviations and the like).
#[derive(Debug, Clone, Default, PartialEq)]
pub struct GradedWordList {
    entries: BTreeMap<String, WordLevel>,
    unclassified: BTreeSet<String>,
}

impl GradedWordList {
    pub fn level_of(&self, lower_word: &str) -> Option<WordLevel> {
        self.entries.get(lower_word).copied()
    }

    pub fn is_unclassified(&self, lower_word: &str) -> bool {
        self.unclassified.contains(lower_word)
    }

    pub fn entries(&self) -> &BTreeMap<String, WordLevel> {
        &self.entries
    }

    pub fn unclassified(&self) -> &BTreeSet<String> {
        &self.unclassified
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty() && self.unclassified.is_empty()
    }
}

/// Load a word list from `word<TAB>level` lines (levels `A`..`F`, or `U`
/// for unclassified). Later duplicates override earlier ones; each
/// override is logged and returned as a warning.
pub fn load_word_list(path: &Path) -> Result<(GradedWordList, Vec<String>), CorpusError> {
    let display = path.display().to_string();
    let content = std::fs::read_to_string(path)
        .map_err(|e| CorpusError::Io(display.clone(), e.to_string()))?;
    parse_word_list(&content, &display)
}

fn parse_word_list(
    content: &str,
    origin: &str,
) -> Result<(GradedWordList, Vec<String>), CorpusError> {
    let mut list = GradedWordList::default();
    let mut warnings = Vec::new();
    for (lineno, line) in content.lines().enumerate() {
        let line = line.trim_end();
        if line.is_empty() {
            continue;
        }
        let malformed = |message: String| CorpusError::MalformedWordList {
            path: origin.to_string(),
            line: lineno + 1,
            message,
        };
        let (word, level) = line
            .split_once('\t')
            .ok_or_else(|| malformed("expected word<TAB>level".into()))?;
        let word = word.trim();
        if word.is_empty() {
            return Err(malformed("empty word field".into()));
        }
        let word = word.to_lowercase();
        if word.chars().any(|c| c.is_whitespace()) {
            return Err(malformed(format!("word {word:?} contains whitespace")));
        }
        let level = level.trim();

        let previous = if level == "U" {
            let prior = list.entries.remove(&word).map(|l| l.symbol().to_string());
            let was_unclassified = !list.unclassified.insert(word.clone());
            prior.or_else(|| was_unclassified.then(|| "U".to_string()))
        } else {
            let parsed = WordLevel::parse(level)
                .ok_or_else(|| malformed(format!("unknown level symbol {level:?}")))?;
            let was_unclassified = list.unclassified.remove(&word);
            let prior = list.entries.insert(word.clone(), parsed);
            prior
                .map(|l| l.symbol().to_string())
                .or_else(|| was_unclassified.then(|| "U".to_string()))
        };
        if let Some(prior) = previous {
            let warning = format!(
                "{origin}:{line}: duplicate entry for {word:?}: level {prior} replaced by {level}",
                line = lineno + 1,
            );
            log::warn!("{warning}");
            warnings.push(warning);
        }
    }
    Ok((list, warnings))
}

/// Write a word list back out, entries first then unclassified words, each
/// group sorted. Reloading the output reproduces the list exactly.
pub fn save_word_list(list: &GradedWordList, path: &Path) -> Result<(), CorpusError> {
    let mut out = String::new();
    for (word, level) in &list.entries {
        out.push_str(word);
        out.push('\t');
        out.push_str(level.symbol());
        out.push('\n');
    }
    for word in &list.unclassified {
        out.push_str(word);
        out.push_str("\tU\n");
    }
    std::fs::write(path, out)
        .map_err(|e| CorpusError::Io(path.display().to_string(), e.to_string()))
}

/// Words considered "not difficult" by a published easy list.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct EasyWordList {
    words: BTreeSet<String>,
}

impl EasyWordList {
    pub fn from_words<I: IntoIterator<Item = String>>(words: I) -> EasyWordList {
        EasyWordList {
            words: words.into_iter().map(|w| w.to_lowercase()).collect(),
        }
    }

    pub fn contains(&self, lower_word: &str) -> bool {
        self.words.contains(lower_word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }
}

/// Load an easy-word list: one word per line, case-insensitive.
pub fn load_easy_words(path: &Path) -> Result<EasyWordList, CorpusError> {
    let display = path.display().to_string();
    let content = std::fs::read_to_string(path)
        .map_err(|e| CorpusError::Io(display.clone(), e.to_string()))?;
    let list = EasyWordList::from_words(
        content
            .lines()
            .map(|l| l.trim().to_string())
            .filter(|l| !l.is_empty()),
    );
    if list.is_empty() {
        return Err(CorpusError::EmptyEasyWordList(display));
    }
    Ok(list)
}

/// Per-grade and pooled text statistics.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GradeStats {
    pub text_count: usize,
    pub word_total: usize,
    pub sentence_total: usize,
    /// Mean words per text.
    pub awpt: f64,
    /// Mean sentences per text.
    pub aspt: f64,
    /// Pooled words per sentence.
    pub awps: f64,
}

impl GradeStats {
    fn from_totals(text_count: usize, word_total: usize, sentence_total: usize) -> GradeStats {
        GradeStats {
            text_count,
            word_total,
            sentence_total,
            awpt: word_total as f64 / text_count as f64,
            aspt: sentence_total as f64 / text_count as f64,
            awps: word_total as f64 / sentence_total as f64,
        }
    }
}

/// Corpus summary: aWPT, aSPT and aWPS per grade and pooled.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusSummary {
    pub per_grade: BTreeMap<Grade, GradeStats>,
    pub overall: GradeStats,
}

/// Compute per-grade and pooled summary statistics, annotating each text
/// with the supplied analyzer.
pub fn summarize_corpus<F>(
    corpus: &GradedTextCorpus,
    mut analyze: F,
) -> Result<CorpusSummary, CorpusError>
where
    F: FnMut(&str) -> Result<AnalyzedText, TextError>,
{
    if corpus.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    let mut totals: BTreeMap<Grade, (usize, usize, usize)> = BTreeMap::new();
    for t in corpus.texts() {
        let analyzed = analyze(&t.text).map_err(|e| CorpusError::Analysis(t.id.clone(), e))?;
        let entry = totals.entry(t.grade).or_insert((0, 0, 0));
        entry.0 += 1;
        entry.1 += analyzed.word_count;
        entry.2 += analyzed.sentence_count();
    }
    let (mut texts, mut words, mut sentences) = (0, 0, 0);
    let per_grade = totals
        .into_iter()
        .map(|(grade, (t, w, s))| {
            texts += t;
            words += w;
            sentences += s;
            (grade, GradeStats::from_totals(t, w, s))
        })
        .collect();
    Ok(CorpusSummary {
        per_grade,
        overall: GradeStats::from_totals(texts, words, sentences),
    })
}

/// Stratified, seeded train/test split. Every grade keeps at least one
/// text on each side; per-grade test size is `round(count × fraction)`
/// clamped to `[1, count - 1]`.
pub fn split_corpus(
    corpus: &GradedTextCorpus,
    test_fraction: f64,
    seed: u64,
) -> Result<(GradedTextCorpus, GradedTextCorpus), CorpusError> {
    if !(test_fraction > 0.0 && test_fraction < 1.0) {
        return Err(CorpusError::BadTestFraction(test_fraction));
    }
    if corpus.is_empty() {
        return Err(CorpusError::EmptyCorpus);
    }
    for (&grade, &count) in corpus.counts_by_grade() {
        if count < 2 {
            return Err(CorpusError::UnsplittableGrade(grade));
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut test_ids: BTreeSet<&str> = BTreeSet::new();
    // Buckets are visited in ascending grade order so the RNG stream is
    // consumed deterministically.
    for &grade in corpus.counts_by_grade().keys() {
        let mut bucket: Vec<&GradedText> =
            corpus.texts().iter().filter(|t| t.grade == grade).collect();
        let take =
            ((bucket.len() as f64 * test_fraction).round() as usize).clamp(1, bucket.len() - 1);
        bucket.shuffle(&mut rng);
        test_ids.extend(bucket[..take].iter().map(|t| t.id.as_str()));
    }

    let (test, train): (Vec<GradedText>, Vec<GradedText>) = corpus
        .texts()
        .iter()
        .cloned()
        .partition(|t| test_ids.contains(t.id.as_str()));
    Ok((GradedTextCorpus::new(train)?, GradedTextCorpus::new(test)?))
}
