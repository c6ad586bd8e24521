//! Fallback annotator: a lexicon+suffix part-of-speech tagger and a fixed
//! chunking rule table producing a flat two-level tree (chunks under a
//! single S node). Used when no external parses are supplied, so the
//! pipeline has no hard dependency on a neural parser.

use super::{ParseTree, Token, TokenKind};

/// Tag a token sequence and group it into NP/VP/PP chunks.
pub fn heuristic_parse(tokens: &[Token]) -> ParseTree {
    let tags: Vec<&'static str> = tokens
        .iter()
        .enumerate()
        .map(|(i, t)| tag_token(t, i == 0))
        .collect();
    chunk(tokens, &tags)
}

const NP_TAGS: &[&str] = &[
    "DT", "PRP$", "JJ", "JJR", "JJS", "CD", "NN", "NNS", "NNP", "NNPS", "PRP",
];
const VERB_TAGS: &[&str] = &["MD", "VB", "VBD", "VBG", "VBN", "VBP", "VBZ"];

fn chunk(tokens: &[Token], tags: &[&'static str]) -> ParseTree {
    let leaf = |i: usize| ParseTree::leaf(tags[i].to_string(), tokens[i].surface.clone());
    let mut children = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        let tag = tags[i];
        if NP_TAGS.contains(&tag) {
            let start = i;
            while i < tokens.len() && NP_TAGS.contains(&tags[i]) {
                i += 1;
            }
            children.push(ParseTree::node(
                "NP".to_string(),
                (start..i).map(leaf).collect(),
            ));
        } else if VERB_TAGS.contains(&tag) || (tag == "TO" && is_verb_next(tags, i)) {
            let start = i;
            while i < tokens.len()
                && (VERB_TAGS.contains(&tags[i]) || (tags[i] == "TO" && is_verb_next(tags, i)))
            {
                i += 1;
            }
            children.push(ParseTree::node(
                "VP".to_string(),
                (start..i).map(leaf).collect(),
            ));
        } else if (tag == "IN" || tag == "TO") && starts_np(tags, i + 1) {
            // Preposition plus its noun run becomes one flat PP chunk.
            let start = i;
            i += 1;
            while i < tokens.len() && NP_TAGS.contains(&tags[i]) {
                i += 1;
            }
            children.push(ParseTree::node(
                "PP".to_string(),
                (start..i).map(leaf).collect(),
            ));
        } else {
            children.push(leaf(i));
            i += 1;
        }
    }
    ParseTree::node("S".to_string(), children)
}

fn is_verb_next(tags: &[&'static str], i: usize) -> bool {
    tags.get(i + 1).is_some_and(|t| VERB_TAGS.contains(t))
}

fn starts_np(tags: &[&'static str], i: usize) -> bool {
    tags.get(i).is_some_and(|t| NP_TAGS.contains(t))
}

fn tag_token(token: &Token, sentence_initial: bool) -> &'static str {
    match token.kind {
        TokenKind::Number => return "CD",
        TokenKind::Punctuation => return punctuation_tag(&token.surface),
        TokenKind::Word => {}
    }
    if let Some(tag) = lexicon_tag(&token.lower) {
        return tag;
    }
    let capitalized = token
        .surface
        .chars()
        .next()
        .is_some_and(|c| c.is_uppercase());
    if capitalized && !sentence_initial {
        return "NNP";
    }
    suffix_tag(&token.lower)
}

fn punctuation_tag(surface: &str) -> &'static str {
    match surface {
        "," => ",",
        ";" | ":" => ":",
        "(" | "[" | "{" => "-LRB-",
        ")" | "]" | "}" => "-RRB-",
        "\"" | "'" | "\u{201c}" | "\u{201d}" | "\u{2018}" | "\u{2019}" => "''",
        _ => ".",
    }
}

fn lexicon_tag(lower: &str) -> Option<&'static str> {
    let tag = match lower {
        "the" | "a" | "an" | "this" | "that" | "these" | "those" | "each" | "every" | "some"
        | "any" | "no" | "another" | "both" => "DT",
        "of" | "in" | "on" | "at" | "by" | "for" | "with" | "from" | "about" | "into" | "over"
        | "under" | "after" | "before" | "between" | "through" | "during" | "against" | "among"
        | "within" | "without" | "upon" | "toward" | "towards" | "near" | "beside" | "above"
        | "below" | "across" | "behind" | "off" | "since" | "until" | "because" | "although"
        | "though" | "while" | "if" | "unless" | "whereas" | "like" => "IN",
        "to" => "TO",
        "and" | "or" | "but" | "nor" | "yet" => "CC",
        "i" | "you" | "he" | "she" | "it" | "we" | "they" | "me" | "him" | "her" | "us"
        | "them" | "himself" | "herself" | "itself" | "myself" | "themselves" => "PRP",
        "my" | "your" | "his" | "its" | "our" | "their" => "PRP$",
        "can" | "could" | "will" | "would" | "shall" | "should" | "may" | "might" | "must" => "MD",
        "is" | "are" | "am" | "was" | "were" | "be" | "been" | "being" | "has" | "have" | "had"
        | "do" | "does" | "did" | "say" | "says" | "said" | "go" | "goes" | "went" | "gone"
        | "run" | "runs" | "ran" | "sat" | "sit" | "sits" | "see" | "sees" | "saw" | "seen"
        | "come" | "comes" | "came" | "get" | "gets" | "got" | "make" | "makes" | "made"
        | "take" | "takes" | "took" | "keep" | "keeps" | "kept" | "know" | "knows" | "knew"
        | "think" | "thinks" | "thought" | "find" | "finds" | "found" | "give" | "gives"
        | "gave" | "tell" | "tells" | "told" | "feel" | "feels" | "felt" | "leave" | "leaves"
        | "left" | "met" | "meet" | "meets" | "bought" | "buy" | "buys" | "read" | "reads"
        | "wrote" | "write" | "writes" | "sleep" | "sleeps" | "slept" | "eat" | "eats" | "ate" => {
            "VB"
        }
        "not" | "very" | "too" | "also" | "just" | "never" | "always" | "often" | "however"
        | "then" | "now" | "here" | "there" | "quite" | "rather" | "soon" | "again" | "still"
        | "fast" | "well" => "RB",
        "who" | "what" | "which" | "whom" | "whose" => "WP",
        "when" | "where" | "why" | "how" => "WRB",
        "big" | "small" | "old" | "new" | "good" | "bad" | "red" | "blue" | "green" | "warm"
        | "cold" | "long" | "short" | "high" | "low" | "young" | "early" | "late" | "few"
        | "many" | "much" | "other" | "same" | "different" | "last" | "first" | "next" | "own"
        | "great" | "little" => "JJ",
        "more" | "less" | "better" | "worse" | "fewer" => "JJR",
        "most" | "least" | "best" | "worst" => "JJS",
        "one" | "two" | "three" | "four" | "five" | "six" | "seven" | "eight" | "nine" | "ten" => {
            "CD"
        }
        _ => return None,
    };
    Some(tag)
}

fn suffix_tag(lower: &str) -> &'static str {
    if lower.ends_with("ly") && lower.len() > 3 {
        "RB"
    } else if lower.ends_with("ing") && lower.len() > 4 {
        "VBG"
    } else if lower.ends_with("ed") && lower.len() > 3 {
        "VBD"
    } else if lower.ends_with("est") && lower.len() > 4 {
        "JJS"
    } else if ["ous", "ful", "ive", "ble", "ish", "ant", "ent"]
        .iter()
        .any(|s| lower.ends_with(s) && lower.len() > s.len() + 1)
        || (lower.ends_with("al") && lower.len() > 3)
        || (lower.ends_with("ic") && lower.len() > 3)
    {
        "JJ"
    } else if lower.ends_with('s')
        && !lower.ends_with("ss")
        && !lower.ends_with("us")
        && !lower.ends_with("is")
        && lower.len() > 2
    {
        "NNS"
    } else {
        "NN"
    }
}
