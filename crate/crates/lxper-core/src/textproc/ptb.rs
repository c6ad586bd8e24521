//! Reader for bracketed constituency trees, the standard output format of
//! external constituency parsers. Labels are preserved verbatim; errors
//! carry the character offset of the offending input.

use super::{ParseTree, TextError};

/// Parse one bracketed tree, e.g. `(S (NP (NN cat)))`.
pub fn parse_ptb(bracketed: &str) -> Result<ParseTree, TextError> {
    let chars: Vec<char> = bracketed.chars().collect();
    let mut pos = 0;
    skip_ws(&chars, &mut pos);
    let tree = parse_node(&chars, &mut pos)?;
    skip_ws(&chars, &mut pos);
    if pos != chars.len() {
        return Err(TextError::TreeSyntax {
            offset: pos,
            message: "trailing input after tree".into(),
        });
    }
    Ok(tree)
}

fn skip_ws(chars: &[char], pos: &mut usize) {
    while *pos < chars.len() && chars[*pos].is_whitespace() {
        *pos += 1;
    }
}

fn parse_node(chars: &[char], pos: &mut usize) -> Result<ParseTree, TextError> {
    expect(chars, pos, '(')?;
    skip_ws(chars, pos);
    let label = read_atom(chars, pos)?;
    if label.is_empty() {
        return Err(TextError::TreeSyntax {
            offset: *pos,
            message: "empty node label".into(),
        });
    }

    let mut children = Vec::new();
    let mut leaf_texts: Vec<String> = Vec::new();
    loop {
        skip_ws(chars, pos);
        match chars.get(*pos) {
            None => {
                return Err(TextError::TreeSyntax {
                    offset: *pos,
                    message: format!("unclosed node ({label}"),
                })
            }
            Some(')') => {
                *pos += 1;
                break;
            }
            Some('(') => children.push(parse_node(chars, pos)?),
            Some(_) => leaf_texts.push(read_atom(chars, pos)?),
        }
    }

    match (children.is_empty(), leaf_texts.len()) {
        (true, 1) => Ok(ParseTree::leaf(label, leaf_texts.pop().unwrap())),
        (false, 0) => Ok(ParseTree::node(label, children)),
        (true, 0) => Err(TextError::TreeSyntax {
            offset: *pos,
            message: format!("node ({label}) has no children and no token"),
        }),
        _ => Err(TextError::TreeSyntax {
            offset: *pos,
            message: format!("node ({label} ...) mixes tokens and child nodes"),
        }),
    }
}

fn expect(chars: &[char], pos: &mut usize, wanted: char) -> Result<(), TextError> {
    match chars.get(*pos) {
        Some(&c) if c == wanted => {
            *pos += 1;
            Ok(())
        }
        found => Err(TextError::TreeSyntax {
            offset: *pos,
            message: match found {
                Some(c) => format!("expected '{wanted}', found '{c}'"),
                None => format!("expected '{wanted}', found end of input"),
            },
        }),
    }
}

fn read_atom(chars: &[char], pos: &mut usize) -> Result<String, TextError> {
    let start = *pos;
    while *pos < chars.len() {
        let c = chars[*pos];
        if c.is_whitespace() || c == '(' || c == ')' {
            break;
        }
        *pos += 1;
    }
    if *pos == start {
        return Err(TextError::TreeSyntax {
            offset: *pos,
            message: "expected a label or token".into(),
        });
    }
    Ok(chars[start..*pos].iter().collect())
}
