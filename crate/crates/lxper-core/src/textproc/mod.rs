//! Deterministic linguistic preprocessing.
//!
//! Turns raw prose into an [`AnalyzedText`]: segmented sentences, tokens,
//! per-word syllable counts, and one constituency tree per sentence. Trees
//! come either from an external parser's bracketed output or from the
//! built-in heuristic chunker, behind the same [`ParseSource`] switch.

mod heuristic;
mod ptb;
mod segment;
mod syllable;
mod tokenize;

pub use heuristic::heuristic_parse;
pub use ptb::parse_ptb;
pub use segment::segment_sentences;
pub use syllable::{count_syllables, SyllableCounter};
pub use tokenize::tokenize;

use std::fmt;
use std::path::PathBuf;

use thiserror::Error;

/// Errors from preprocessing operations.
#[derive(Debug, Error)]
pub enum TextError {
    #[error("input is empty after trimming whitespace")]
    EmptyInput,
    #[error("word {0:?} has no alphabetic character")]
    NoAlphabetic(String),
    #[error("tree syntax error at offset {offset}: {message}")]
    TreeSyntax { offset: usize, message: String },
    #[error("{0}: bad exceptions line {1} (expected word<TAB>count)")]
    BadExceptionsLine(String, usize),
    #[error("sentence {0} has no tree")]
    MissingTree(usize),
    #[error("sentence {index}: tree has {leaves} leaves but {tokens} tokens")]
    LeafTokenMismatch {
        index: usize,
        leaves: usize,
        tokens: usize,
    },
    #[error("{0} extra tree(s) beyond the sentence count")]
    ExtraTrees(usize),
    #[error("no sentence contains a word token")]
    NoWords,
    #[error("{0}: {1}")]
    Io(String, String),
}

/// Token classification.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TokenKind {
    Word,
    Number,
    Punctuation,
}

/// A surface token.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    pub kind: TokenKind,
    /// Number of alphabetic characters in the surface.
    pub letter_count: usize,
}

impl Token {
    pub(crate) fn punctuation(c: char) -> Token {
        Token {
            surface: c.to_string(),
            lower: c.to_lowercase().to_string(),
            kind: TokenKind::Punctuation,
            letter_count: 0,
        }
    }

    pub fn is_word(&self) -> bool {
        self.kind == TokenKind::Word
    }
}

/// A constituency tree. Internal nodes carry a constituent label and
/// children; leaves carry a part-of-speech label and a token surface.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseTree {
    Node {
        label: String,
        children: Vec<ParseTree>,
    },
    Leaf {
        label: String,
        text: String,
    },
}

impl ParseTree {
    pub fn node(label: String, children: Vec<ParseTree>) -> ParseTree {
        ParseTree::Node { label, children }
    }

    pub fn leaf(label: String, text: String) -> ParseTree {
        ParseTree::Leaf { label, text }
    }

    pub fn label(&self) -> &str {
        match self {
            ParseTree::Node { label, .. } | ParseTree::Leaf { label, .. } => label,
        }
    }

    /// Label with any `-`/`=` function annotation removed (`NP-SBJ` → `NP`).
    pub fn base_label(&self) -> &str {
        let label = self.label();
        match label
            .char_indices()
            .find(|&(i, c)| i > 0 && (c == '-' || c == '='))
        {
            Some((i, _)) => &label[..i],
            None => label,
        }
    }

    /// Leaves in order as (part-of-speech label, token surface).
    pub fn leaves(&self) -> Box<dyn Iterator<Item = (&str, &str)> + '_> {
        match self {
            ParseTree::Leaf { label, text } => {
                Box::new(std::iter::once((label.as_str(), text.as_str())))
            }
            ParseTree::Node { children, .. } => Box::new(children.iter().flat_map(|c| c.leaves())),
        }
    }

    pub fn leaf_count(&self) -> usize {
        match self {
            ParseTree::Leaf { .. } => 1,
            ParseTree::Node { children, .. } => children.iter().map(|c| c.leaf_count()).sum(),
        }
    }

    /// Count internal nodes whose base label equals `wanted`.
    pub fn count_constituent(&self, wanted: &str) -> usize {
        match self {
            ParseTree::Leaf { .. } => 0,
            ParseTree::Node { children, .. } => {
                let here = usize::from(self.base_label() == wanted);
                here + children
                    .iter()
                    .map(|c| c.count_constituent(wanted))
                    .sum::<usize>()
            }
        }
    }

    /// Count leaves whose part-of-speech label is in `tags`.
    pub fn count_leaf_tags(&self, tags: &[&str]) -> usize {
        self.leaves().filter(|(tag, _)| tags.contains(tag)).count()
    }

    /// Render in bracketed notation.
    pub fn to_bracketed(&self) -> String {
        match self {
            ParseTree::Leaf { label, text } => format!("({label} {text})"),
            ParseTree::Node { label, children } => {
                let inner: Vec<String> = children.iter().map(|c| c.to_bracketed()).collect();
                format!("({} {})", label, inner.join(" "))
            }
        }
    }
}

impl fmt::Display for ParseTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_bracketed())
    }
}

/// One sentence: its tokens and its constituency tree.
#[derive(Debug, Clone, PartialEq)]
pub struct Sentence {
    pub tokens: Vec<Token>,
    pub tree: ParseTree,
}

impl Sentence {
    pub fn word_tokens(&self) -> impl Iterator<Item = &Token> {
        self.tokens.iter().filter(|t| t.is_word())
    }
}

/// Where sentence trees come from.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseSource {
    /// Built-in tagger + chunker.
    Heuristic,
    /// File with one bracketed tree per line, aligned with segmented
    /// sentence order.
    ExternalFile(PathBuf),
}

/// Fully annotated text: the input to every feature extractor.
#[derive(Debug, Clone, PartialEq)]
pub struct AnalyzedText {
    pub sentences: Vec<Sentence>,
    /// Total number of word-kind tokens.
    pub word_count: usize,
    /// Syllable count per word token, in document order.
    pub syllable_counts: Vec<usize>,
    /// Per-sentence lowercase noun lemmas, from tree tags.
    pub noun_lemmas: Vec<Vec<String>>,
}

impl AnalyzedText {
    pub fn sentence_count(&self) -> usize {
        self.sentences.len()
    }

    pub fn total_syllables(&self) -> usize {
        self.syllable_counts.iter().sum()
    }

    /// Total alphabetic characters over all tokens.
    pub fn letter_count(&self) -> usize {
        self.sentences
            .iter()
            .flat_map(|s| s.tokens.iter())
            .map(|t| t.letter_count)
            .sum()
    }

    /// Lowercase forms of all word tokens, in document order.
    pub fn word_lowers(&self) -> impl Iterator<Item = &str> {
        self.sentences
            .iter()
            .flat_map(|s| s.word_tokens())
            .map(|t| t.lower.as_str())
    }
}

const NOUN_TAGS: &[&str] = &["NN", "NNS", "NNP", "NNPS"];

/// Lowercase a noun and strip a plural `s` when the tag marks a plural.
pub(crate) fn noun_lemma(surface_lower: &str, tag: &str) -> String {
    if (tag == "NNS" || tag == "NNPS") && surface_lower.len() > 1 && surface_lower.ends_with('s') {
        surface_lower[..surface_lower.len() - 1].to_string()
    } else {
        surface_lower.to_string()
    }
}

/// Annotate raw text: segment, tokenize, parse, count syllables.
///
/// Segments that contain no word token (stray punctuation) are merged into
/// the neighbouring sentence so every [`Sentence`] has at least one word.
pub fn annotate(raw: &str, source: &ParseSource) -> Result<AnalyzedText, TextError> {
    let token_groups = sentence_token_groups(raw)?;
    let trees = match source {
        ParseSource::Heuristic => token_groups
            .iter()
            .map(|tokens| heuristic_parse(tokens))
            .collect(),
        ParseSource::ExternalFile(path) => load_trees(path)?,
    };
    annotate_tokens(
        token_groups,
        trees,
        matches!(source, ParseSource::ExternalFile(_)),
    )
}

/// Segment and tokenize raw text into per-sentence token groups, merging
/// wordless segments. This is the sentence structure trees must align
/// with.
pub fn sentence_token_groups(raw: &str) -> Result<Vec<Vec<Token>>, TextError> {
    let raw_sentences = segment_sentences(raw)?;
    merge_wordless(
        raw_sentences
            .iter()
            .map(|s| tokenize(s))
            .collect::<Vec<_>>(),
    )
}

/// Build an [`AnalyzedText`] from pre-tokenized sentences and externally
/// supplied trees, validating leaf/token alignment.
pub fn annotate_with_trees(
    token_groups: Vec<Vec<Token>>,
    trees: Vec<ParseTree>,
) -> Result<AnalyzedText, TextError> {
    annotate_tokens(token_groups, trees, true)
}

/// Build an [`AnalyzedText`] from pre-tokenized sentences and their trees.
fn annotate_tokens(
    token_groups: Vec<Vec<Token>>,
    trees: Vec<ParseTree>,
    validate_leaves: bool,
) -> Result<AnalyzedText, TextError> {
    if trees.len() > token_groups.len() {
        return Err(TextError::ExtraTrees(trees.len() - token_groups.len()));
    }
    if trees.len() < token_groups.len() {
        return Err(TextError::MissingTree(trees.len() + 1));
    }

    let counter = SyllableCounter::bundled();
    let mut sentences = Vec::with_capacity(token_groups.len());
    let mut word_count = 0;
    let mut syllable_counts = Vec::new();
    let mut noun_lemmas = Vec::with_capacity(token_groups.len());

    for (index, (tokens, tree)) in token_groups.into_iter().zip(trees).enumerate() {
        if validate_leaves && tree.leaf_count() != tokens.len() {
            return Err(TextError::LeafTokenMismatch {
                index: index + 1,
                leaves: tree.leaf_count(),
                tokens: tokens.len(),
            });
        }
        for token in tokens.iter().filter(|t| t.is_word()) {
            word_count += 1;
            syllable_counts.push(counter.count(&token.surface)?);
        }
        let lemmas = tree
            .leaves()
            .filter(|(tag, _)| NOUN_TAGS.contains(tag))
            .map(|(tag, text)| noun_lemma(&text.to_lowercase(), tag))
            .collect();
        noun_lemmas.push(lemmas);
        sentences.push(Sentence { tokens, tree });
    }

    Ok(AnalyzedText {
        sentences,
        word_count,
        syllable_counts,
        noun_lemmas,
    })
}

/// Merge token groups that contain no word token into their neighbour, so
/// the sentence invariant (at least one word) holds without losing tokens.
fn merge_wordless(groups: Vec<Vec<Token>>) -> Result<Vec<Vec<Token>>, TextError> {
    let mut merged: Vec<Vec<Token>> = Vec::with_capacity(groups.len());
    let mut pending: Vec<Token> = Vec::new();
    for group in groups {
        if group.iter().any(|t| t.is_word()) {
            let mut group = group;
            if !pending.is_empty() {
                pending.extend(group);
                group = std::mem::take(&mut pending);
            }
            merged.push(group);
        } else if let Some(last) = merged.last_mut() {
            last.extend(group);
        } else {
            pending.extend(group);
        }
    }
    if !pending.is_empty() {
        match merged.last_mut() {
            Some(last) => last.extend(pending),
            None => return Err(TextError::NoWords),
        }
    }
    Ok(merged)
}

fn load_trees(path: &PathBuf) -> Result<Vec<ParseTree>, TextError> {
    let content = std::fs::read_to_string(path)
        .map_err(|e| TextError::Io(path.display().to_string(), e.to_string()))?;
    parse_tree_lines(&content)
}

/// Parse one bracketed tree per non-empty line.
pub fn parse_tree_lines(content: &str) -> Result<Vec<ParseTree>, TextError> {
    content
        .lines()
        .filter(|l| !l.trim().is_empty())
        .map(parse_ptb)
        .collect()
}
