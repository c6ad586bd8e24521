//! Whitespace tokenizer with punctuation detachment.
//!
//! Splits on whitespace, peels leading/trailing punctuation off into
//! single-character punctuation tokens, and keeps internal hyphens and
//! apostrophes inside one word token. No characters are lost: joining
//! the token surfaces reproduces the sentence minus whitespace.

use super::{Token, TokenKind};

/// Tokenize one sentence string.
pub fn tokenize(sentence: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    for chunk in sentence.split_whitespace() {
        tokenize_chunk(chunk, &mut tokens);
    }
    tokens
}

fn tokenize_chunk(chunk: &str, out: &mut Vec<Token>) {
    let chars: Vec<char> = chunk.chars().collect();
    let mut start = 0;
    let mut end = chars.len();
    while start < end && !chars[start].is_alphanumeric() {
        start += 1;
    }
    while end > start && !chars[end - 1].is_alphanumeric() {
        end -= 1;
    }

    for &c in &chars[..start] {
        out.push(Token::punctuation(c));
    }
    if start < end {
        let core: String = chars[start..end].iter().collect();
        out.push(classify_core(core));
    }
    for &c in &chars[end..] {
        out.push(Token::punctuation(c));
    }
}

fn classify_core(core: String) -> Token {
    let letter_count = core.chars().filter(|c| c.is_alphabetic()).count();
    let kind = if letter_count > 0 {
        TokenKind::Word
    } else if core.chars().any(|c| c.is_ascii_digit()) {
        TokenKind::Number
    } else {
        // Alphanumeric per char classification but neither letter nor
        // ASCII digit (e.g. non-ASCII numerals); treat as a number.
        TokenKind::Number
    };
    Token {
        lower: core.to_lowercase(),
        letter_count,
        surface: core,
        kind,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn surfaces(tokens: &[Token]) -> Vec<&str> {
        tokens.iter().map(|t| t.surface.as_str()).collect()
    }

    #[test]
    fn detaches_leading_and_trailing_punctuation() {
        let toks = tokenize("The cat, sat.");
        let words: Vec<&str> = toks
            .iter()
            .filter(|t| t.kind == TokenKind::Word)
            .map(|t| t.surface.as_str())
            .collect();
        let punct: Vec<&str> = toks
            .iter()
            .filter(|t| t.kind == TokenKind::Punctuation)
            .map(|t| t.surface.as_str())
            .collect();
        assert_eq!(words, vec!["The", "cat", "sat"]);
        assert_eq!(punct, vec![",", "."]);
    }

    #[test]
    fn internal_hyphen_stays_in_one_word() {
        let toks = tokenize("well-known");
        assert_eq!(toks.len(), 1);
        assert_eq!(toks[0].kind, TokenKind::Word);
        assert_eq!(toks[0].surface, "well-known");
        assert_eq!(toks[0].letter_count, 9);
    }

    #[test]
    fn internal_apostrophe_stays_in_one_word() {
        let toks = tokenize("don't");
        assert_eq!(surfaces(&toks), vec!["don't"]);
        assert_eq!(toks[0].letter_count, 4);
    }

    #[test]
    fn numeric_strings_are_number_tokens() {
        let toks = tokenize("3.5");
        assert_eq!(toks.len(), 1);
        assert_eq!(toks[0].kind, TokenKind::Number);
        assert_eq!(toks[0].letter_count, 0);

        let toks = tokenize("3,500.25");
        assert_eq!(toks.len(), 1);
        assert_eq!(toks[0].kind, TokenKind::Number);
    }

    #[test]
    fn trailing_period_is_detached_from_number() {
        let toks = tokenize("3.");
        assert_eq!(surfaces(&toks), vec!["3", "."]);
        assert_eq!(toks[0].kind, TokenKind::Number);
    }

    #[test]
    fn bracketed_word_keeps_all_characters() {
        let toks = tokenize("(well-known)");
        assert_eq!(surfaces(&toks), vec!["(", "well-known", ")"]);
    }

    #[test]
    fn no_token_loss() {
        for s in [
            "The cat, sat.",
            "\"Quoted,\" he said...",
            "a--b (c) 3.5% $2",
            "U.S. rules, e.g. these.",
        ] {
            let toks = tokenize(s);
            let joined: String = toks.iter().map(|t| t.surface.as_str()).collect();
            let stripped: String = s.chars().filter(|c| !c.is_whitespace()).collect();
            assert_eq!(joined, stripped, "token loss for {s:?}");
        }
    }

    #[test]
    fn empty_input_yields_no_tokens() {
        assert!(tokenize("").is_empty());
        assert!(tokenize("   ").is_empty());
    }
}
