//! Per-paragraph document scoring and the plain-text report around it.
//!
//! A document splits into paragraphs on blank lines; each paragraph is
//! annotated, featurized and predicted independently. The report lists
//! every paragraph in order, then the average and the population standard
//! deviation of the paragraph scores. A paragraph that fails annotation
//! becomes an error row and is excluded from the two aggregate lines.

use thiserror::Error;

use lxper_core::corpus::GradedWordList;
use lxper_core::features::{extract_all, RelationResource};
use lxper_core::model::RegressionModel;
use lxper_core::textproc::{
    annotate_with_trees, heuristic_parse, sentence_token_groups, ParseTree,
};

/// Errors from document scoring and report parsing.
#[derive(Debug, Error)]
pub enum ReportError {
    #[error("document has no paragraphs")]
    EmptyDocument,
    #[error("every paragraph failed to score")]
    NothingScored,
    #[error("parse file has {got} trees but the document needs {want}")]
    TreeCount { got: usize, want: usize },
    #[error("paragraph {paragraph}: {message} (external trees cannot realign)")]
    Misaligned { paragraph: usize, message: String },
    #[error("report line {0}: {1}")]
    BadLine(usize, String),
}

/// Where paragraph trees come from.
pub enum ParagraphParses {
    Heuristic,
    /// One tree per sentence, aligned with the document's sentences in
    /// paragraph order.
    Trees(Vec<ParseTree>),
}

/// One paragraph's outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct ParagraphScore {
    /// 1-based paragraph number.
    pub index: usize,
    pub outcome: Result<f64, String>,
}

/// The scored document.
#[derive(Debug, Clone, PartialEq)]
pub struct DocumentReport {
    pub paragraphs: Vec<ParagraphScore>,
    pub average: f64,
    pub standard_dev: f64,
    pub skipped: usize,
}

/// Split a document into paragraphs on blank lines.
pub fn split_paragraphs(document: &str) -> Vec<String> {
    let mut paragraphs = Vec::new();
    let mut current = String::new();
    for line in document.lines() {
        if line.trim().is_empty() {
            if !current.trim().is_empty() {
                paragraphs.push(std::mem::take(&mut current));
            }
            current.clear();
        } else {
            if !current.is_empty() {
                current.push('\n');
            }
            current.push_str(line);
        }
    }
    if !current.trim().is_empty() {
        paragraphs.push(current);
    }
    paragraphs
}

/// Score every paragraph of a document.
pub fn score_document(
    model: &RegressionModel,
    document: &str,
    wordlist: &GradedWordList,
    resource: &RelationResource,
    parses: &ParagraphParses,
) -> Result<DocumentReport, ReportError> {
    let paragraphs = split_paragraphs(document);
    if paragraphs.is_empty() {
        return Err(ReportError::EmptyDocument);
    }

    let mut tree_cursor = 0usize;
    let mut scores = Vec::with_capacity(paragraphs.len());
    for (i, paragraph) in paragraphs.iter().enumerate() {
        let outcome = score_paragraph(
            model,
            paragraph,
            wordlist,
            resource,
            parses,
            &mut tree_cursor,
        );
        // Under external trees a failure breaks sentence/tree alignment
        // for everything after it, so it cannot degrade to an error row.
        if let (Err(message), ParagraphParses::Trees(_)) = (&outcome, parses) {
            return Err(ReportError::Misaligned {
                paragraph: i + 1,
                message: message.clone(),
            });
        }
        scores.push(ParagraphScore {
            index: i + 1,
            outcome,
        });
    }
    if let ParagraphParses::Trees(trees) = parses {
        if tree_cursor < trees.len() {
            return Err(ReportError::TreeCount {
                got: trees.len(),
                want: tree_cursor,
            });
        }
    }

    let values: Vec<f64> = scores
        .iter()
        .filter_map(|s| s.outcome.clone().ok())
        .collect();
    if values.is_empty() {
        return Err(ReportError::NothingScored);
    }
    let n = values.len() as f64;
    let average = values.iter().sum::<f64>() / n;
    let variance = values
        .iter()
        .map(|v| (v - average) * (v - average))
        .sum::<f64>()
        / n;
    Ok(DocumentReport {
        skipped: scores.len() - values.len(),
        paragraphs: scores,
        average,
        standard_dev: variance.sqrt(),
    })
}

fn score_paragraph(
    model: &RegressionModel,
    paragraph: &str,
    wordlist: &GradedWordList,
    resource: &RelationResource,
    parses: &ParagraphParses,
    tree_cursor: &mut usize,
) -> Result<f64, String> {
    let groups = sentence_token_groups(paragraph).map_err(|e| e.to_string())?;
    let analyzed = match parses {
        ParagraphParses::Heuristic => {
            let trees = groups.iter().map(|g| heuristic_parse(g)).collect();
            annotate_with_trees(groups, trees).map_err(|e| e.to_string())?
        }
        ParagraphParses::Trees(trees) => {
            let take = groups.len();
            let slice = trees
                .get(*tree_cursor..*tree_cursor + take)
                .ok_or_else(|| format!("parse file ran out of trees (needs {take} more)"))?;
            *tree_cursor += take;
            annotate_with_trees(groups, slice.to_vec()).map_err(|e| e.to_string())?
        }
    };
    let vector = extract_all(&analyzed, wordlist, resource).map_err(|e| e.to_string())?;
    Ok(model.predict(&vector))
}

fn format_score(value: f64, digits: Option<usize>) -> String {
    match digits {
        Some(d) => format!("{value:.d$}"),
        None => format!("{value}"),
    }
}

impl DocumentReport {
    /// Render the report: one line per paragraph, then the average and
    /// population standard deviation, each tab-separated.
    pub fn render(&self, digits: Option<usize>) -> String {
        let mut out = String::from("LXPER Index\n");
        for paragraph in &self.paragraphs {
            match &paragraph.outcome {
                Ok(score) => out.push_str(&format!(
                    "paragraph{}:\t{}\n",
                    paragraph.index,
                    format_score(*score, digits)
                )),
                Err(message) => out.push_str(&format!(
                    "paragraph{}:\terror: {message}\n",
                    paragraph.index
                )),
            }
        }
        out.push_str(&format!(
            "average:\t{}\n",
            format_score(self.average, digits)
        ));
        out.push_str(&format!(
            "standard dev.:\t{}\n",
            format_score(self.standard_dev, digits)
        ));
        if self.skipped > 0 {
            out.push_str(&format!("skipped paragraphs:\t{}\n", self.skipped));
        }
        out
    }

    /// Parse a rendered report back into scores and aggregates.
    pub fn parse(text: &str) -> Result<DocumentReport, ReportError> {
        let mut paragraphs = Vec::new();
        let mut average = None;
        let mut standard_dev = None;
        let mut skipped = 0usize;
        for (lineno, line) in text.lines().enumerate() {
            let bad = |m: String| ReportError::BadLine(lineno + 1, m);
            if line == "LXPER Index" || line.trim().is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once(":\t")
                .ok_or_else(|| bad("expected key:<TAB>value".into()))?;
            if let Some(number) = key.strip_prefix("paragraph") {
                let index: usize = number
                    .parse()
                    .map_err(|_| bad(format!("bad index {number:?}")))?;
                let outcome = match value.strip_prefix("error: ") {
                    Some(message) => Err(message.to_string()),
                    None => Ok(value
                        .parse::<f64>()
                        .map_err(|_| bad(format!("bad score {value:?}")))?),
                };
                paragraphs.push(ParagraphScore { index, outcome });
            } else if key == "average" {
                average = Some(value.parse().map_err(|_| bad("bad average".into()))?);
            } else if key == "standard dev." {
                standard_dev = Some(value.parse().map_err(|_| bad("bad std dev".into()))?);
            } else if key == "skipped paragraphs" {
                skipped = value.parse().map_err(|_| bad("bad skip count".into()))?;
            } else {
                return Err(bad(format!("unknown key {key:?}")));
            }
        }
        Ok(DocumentReport {
            paragraphs,
            average: average.ok_or(ReportError::BadLine(0, "missing average".into()))?,
            standard_dev: standard_dev
                .ok_or(ReportError::BadLine(0, "missing standard dev.".into()))?,
            skipped,
        })
    }
}
