//! From-scratch calculators for the three public comparison formulas and
//! the harness that lines them up against the trained model. All three
//! formulas reuse the same segmentation, tokens and syllable counts as the
//! rest of the pipeline, so the comparison sees identical preprocessing.

use std::collections::BTreeMap;
use std::fmt;
use std::fmt::Write as _;

use thiserror::Error;

use crate::corpus::{EasyWordList, Grade};
use crate::features::FeatureVector;
use crate::model::RegressionModel;
use crate::textproc::AnalyzedText;

/// Errors from baseline calculators.
#[derive(Debug, Error)]
pub enum BaselineError {
    #[error("text has no sentences")]
    NoSentences,
    #[error("text has no words")]
    NoWords,
    #[error("easy-word list is empty")]
    EmptyEasyList,
    #[error("comparison needs a non-empty test set")]
    EmptyTestSet,
    #[error("{path}:{line}: malformed comparison table: {message}")]
    MalformedTable {
        path: String,
        line: usize,
        message: String,
    },
}

/// The models compared in the harness.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum BaselineName {
    FleschKincaid,
    ColemanLiau,
    DaleChall,
    Lxper,
}

impl BaselineName {
    pub const ALL: [BaselineName; 4] = [
        BaselineName::FleschKincaid,
        BaselineName::ColemanLiau,
        BaselineName::DaleChall,
        BaselineName::Lxper,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            BaselineName::FleschKincaid => "flesch_kincaid",
            BaselineName::ColemanLiau => "coleman_liau",
            BaselineName::DaleChall => "dale_chall",
            BaselineName::Lxper => "lxper",
        }
    }

    pub fn parse(s: &str) -> Option<BaselineName> {
        BaselineName::ALL.iter().copied().find(|n| n.as_str() == s)
    }
}

impl fmt::Display for BaselineName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// One formula's output on its native scale.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BaselineScore {
    pub name: BaselineName,
    pub value: f64,
}

/// Grade level from words-per-sentence and syllables-per-word.
pub fn flesch_kincaid_from_counts(words: usize, sentences: usize, syllables: usize) -> f64 {
    0.39 * (words as f64 / sentences as f64) + 11.8 * (syllables as f64 / words as f64) - 15.59
}

/// Flesch-Kincaid grade level of an annotated text.
pub fn flesch_kincaid(text: &AnalyzedText) -> Result<f64, BaselineError> {
    if text.sentence_count() == 0 {
        return Err(BaselineError::NoSentences);
    }
    if text.word_count == 0 {
        return Err(BaselineError::NoWords);
    }
    Ok(flesch_kincaid_from_counts(
        text.word_count,
        text.sentence_count(),
        text.total_syllables(),
    ))
}

/// Grade level from letters per 100 words and sentences per 100 words.
pub fn coleman_liau_from_counts(words: usize, sentences: usize, letters: usize) -> f64 {
    let l = 100.0 * letters as f64 / words as f64;
    let s = 100.0 * sentences as f64 / words as f64;
    0.0588 * l - 0.296 * s - 15.8
}

/// Coleman-Liau index of an annotated text. Letters come from each
/// token's alphabetic character count.
pub fn coleman_liau(text: &AnalyzedText) -> Result<f64, BaselineError> {
    if text.word_count == 0 {
        return Err(BaselineError::NoWords);
    }
    Ok(coleman_liau_from_counts(
        text.word_count,
        text.sentence_count(),
        text.letter_count(),
    ))
}

/// Raw score from the difficult-word percentage and words per sentence.
/// The 3.6365 adjustment applies only when the percentage strictly
/// exceeds 5.
pub fn dale_chall_from_counts(words: usize, sentences: usize, difficult: usize) -> f64 {
    let pct_difficult = 100.0 * difficult as f64 / words as f64;
    let mut score = 0.1579 * pct_difficult + 0.0496 * (words as f64 / sentences as f64);
    if pct_difficult > 5.0 {
        score += 3.6365;
    }
    score
}

/// Dale-Chall raw score of an annotated text. A word is difficult when its
/// lowercase form is absent from the easy list. The raw score is not a US
/// grade level; it is reported unconverted.
pub fn dale_chall(text: &AnalyzedText, easy: &EasyWordList) -> Result<f64, BaselineError> {
    if easy.is_empty() {
        return Err(BaselineError::EmptyEasyList);
    }
    if text.sentence_count() == 0 {
        return Err(BaselineError::NoSentences);
    }
    if text.word_count == 0 {
        return Err(BaselineError::NoWords);
    }
    let difficult = text.word_lowers().filter(|w| !easy.contains(w)).count();
    Ok(dale_chall_from_counts(
        text.word_count,
        text.sentence_count(),
        difficult,
    ))
}

/// One model's row in the comparison table.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonRow {
    pub name: BaselineName,
    pub per_grade_mean: BTreeMap<Grade, f64>,
    /// Mean |score − target grade| over scored texts.
    pub average_error: f64,
    pub scored: usize,
    /// Texts this model failed on and skipped.
    pub skipped: usize,
}

/// The comparison table: four model rows over the grades present.
#[derive(Debug, Clone, PartialEq)]
pub struct ComparisonTable {
    pub grades: Vec<Grade>,
    pub rows: Vec<ComparisonRow>,
}

/// A test text ready for comparison: its grade, annotation and features.
pub struct ScoredText<'a> {
    pub grade: Grade,
    pub analyzed: &'a AnalyzedText,
    pub features: &'a FeatureVector,
}

/// Score every text with every model. A calculator error on one text skips
/// that text for that model only, and the skip is counted in the row.
pub fn compare_models(
    texts: &[ScoredText<'_>],
    lxper: &RegressionModel,
    easy: &EasyWordList,
) -> Result<ComparisonTable, BaselineError> {
    if texts.is_empty() {
        return Err(BaselineError::EmptyTestSet);
    }
    let mut grades: Vec<Grade> = texts.iter().map(|t| t.grade).collect();
    grades.sort();
    grades.dedup();

    let mut rows = Vec::new();
    for name in BaselineName::ALL {
        let mut sums: BTreeMap<Grade, (f64, usize)> = BTreeMap::new();
        let mut abs_error = 0.0;
        let mut scored = 0;
        let mut skipped = 0;
        for text in texts {
            match score_text(name, text, lxper, easy) {
                Ok(score) => {
                    let entry = sums.entry(text.grade).or_insert((0.0, 0));
                    entry.0 += score.value;
                    entry.1 += 1;
                    abs_error += (score.value - text.grade.value()).abs();
                    scored += 1;
                }
                Err(_) => skipped += 1,
            }
        }
        let per_grade_mean = sums
            .into_iter()
            .map(|(g, (sum, count))| (g, sum / count as f64))
            .collect();
        rows.push(ComparisonRow {
            name,
            per_grade_mean,
            average_error: if scored > 0 {
                abs_error / scored as f64
            } else {
                f64::NAN
            },
            scored,
            skipped,
        });
    }
    Ok(ComparisonTable { grades, rows })
}

/// Score one text with one model, on that model's native scale.
pub fn score_text(
    name: BaselineName,
    text: &ScoredText<'_>,
    lxper: &RegressionModel,
    easy: &EasyWordList,
) -> Result<BaselineScore, BaselineError> {
    let value = match name {
        BaselineName::FleschKincaid => flesch_kincaid(text.analyzed)?,
        BaselineName::ColemanLiau => coleman_liau(text.analyzed)?,
        BaselineName::DaleChall => dale_chall(text.analyzed, easy)?,
        BaselineName::Lxper => lxper.predict(text.features),
    };
    Ok(BaselineScore { name, value })
}

impl ComparisonTable {
    /// Tab-separated form; parses back via [`ComparisonTable::parse`].
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("model");
        for grade in &self.grades {
            write!(out, "\tgr{grade}").expect("string write");
        }
        out.push_str("\tavg_err\tscored\tskipped\n");
        for row in &self.rows {
            out.push_str(row.name.as_str());
            for grade in &self.grades {
                match row.per_grade_mean.get(grade) {
                    Some(mean) => write!(out, "\t{mean}").expect("string write"),
                    None => out.push_str("\t-"),
                }
            }
            writeln!(
                out,
                "\t{}\t{}\t{}",
                row.average_error, row.scored, row.skipped
            )
            .expect("string write");
        }
        out
    }

    /// Aligned plain-text form with the Dale-Chall scale note.
    pub fn to_aligned(&self) -> String {
        let mut out = String::new();
        write!(out, "{:<15}", "model").expect("string write");
        for grade in &self.grades {
            write!(out, " {:>9}", format!("Gr {grade}")).expect("string write");
        }
        writeln!(out, " {:>9}", "AvgEr").expect("string write");
        for row in &self.rows {
            write!(out, "{:<15}", row.name.as_str()).expect("string write");
            for grade in &self.grades {
                match row.per_grade_mean.get(grade) {
                    Some(mean) => write!(out, " {:>9.3}", mean).expect("string write"),
                    None => write!(out, " {:>9}", "-").expect("string write"),
                }
            }
            write!(out, " {:>9.3}", row.average_error).expect("string write");
            if row.skipped > 0 {
                write!(out, "  ({} skipped)", row.skipped).expect("string write");
            }
            out.push('\n');
        }
        out.push_str("note: dale_chall is a raw score on its native scale, not a grade level\n");
        out
    }

    /// Parse the TSV form back.
    pub fn parse(content: &str, origin: &str) -> Result<ComparisonTable, BaselineError> {
        let malformed = |line: usize, message: String| BaselineError::MalformedTable {
            path: origin.to_string(),
            line,
            message,
        };
        let mut lines = content.lines().enumerate();
        let (_, header) = lines
            .next()
            .ok_or_else(|| malformed(1, "empty table".into()))?;
        let columns: Vec<&str> = header.split('\t').collect();
        if columns.len() < 4 || columns[0] != "model" {
            return Err(malformed(1, "bad header".into()));
        }
        let grade_columns = &columns[1..columns.len() - 3];
        let grades: Vec<Grade> = grade_columns
            .iter()
            .map(|c| {
                c.strip_prefix("gr")
                    .and_then(|g| g.parse::<f64>().ok())
                    .and_then(|g| Grade::new(g).ok())
                    .ok_or_else(|| malformed(1, format!("bad grade column {c:?}")))
            })
            .collect::<Result<_, _>>()?;

        let mut rows = Vec::new();
        for (lineno, line) in lines {
            if line.trim().is_empty() {
                continue;
            }
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != columns.len() {
                return Err(malformed(lineno + 1, "field count mismatch".into()));
            }
            let name = BaselineName::parse(fields[0])
                .ok_or_else(|| malformed(lineno + 1, format!("unknown model {:?}", fields[0])))?;
            let mut per_grade_mean = BTreeMap::new();
            for (grade, &field) in grades.iter().zip(&fields[1..=grades.len()]) {
                if field != "-" {
                    let mean: f64 = field
                        .parse()
                        .map_err(|_| malformed(lineno + 1, format!("bad mean {field:?}")))?;
                    per_grade_mean.insert(*grade, mean);
                }
            }
            let tail = &fields[fields.len() - 3..];
            rows.push(ComparisonRow {
                name,
                per_grade_mean,
                average_error: tail[0]
                    .parse()
                    .map_err(|_| malformed(lineno + 1, "bad avg_err".into()))?,
                scored: tail[1]
                    .parse()
                    .map_err(|_| malformed(lineno + 1, "bad scored".into()))?,
                skipped: tail[2]
                    .parse()
                    .map_err(|_| malformed(lineno + 1, "bad skipped".into()))?,
            });
        }
        Ok(ComparisonTable { grades, rows })
    }
}
