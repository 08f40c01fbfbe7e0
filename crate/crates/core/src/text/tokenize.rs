use std::ops::Range;

use serde::{Deserialize, Serialize};

/// A caption token with its byte span in the source text.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    pub span: Range<usize>,
    pub index: usize,
}

fn is_punct(c: char) -> bool {
    !c.is_alphanumeric() && !c.is_whitespace()
}

fn possessive_suffix_len(core: &str) -> Option<usize> {
    ["'s", "’s", "'S", "’S"]
        .iter()
        .find(|suffix| core.len() > suffix.len() && core.ends_with(*suffix))
        .map(|suffix| suffix.len())
}

/// Splits a caption into word, punctuation and possessive-clitic tokens.
///
/// Whitespace separates chunks. Leading and trailing punctuation characters
/// of a chunk become single-character tokens; a trailing `'s` is split off.
/// Internal punctuation (hyphens, apostrophes in contractions) stays put.
pub fn tokenize(caption: &str) -> Vec<Token> {
    let mut spans: Vec<Range<usize>> = Vec::new();
    let mut offset = 0;
    for chunk in caption.split_inclusive(char::is_whitespace) {
        let word = chunk.trim_end_matches(char::is_whitespace);
        split_chunk(word, offset, &mut spans);
        offset += chunk.len();
    }
    spans
        .into_iter()
        .enumerate()
        .map(|(index, span)| {
            let surface = caption[span.clone()].to_string();
            Token { lower: surface.to_lowercase(), surface, span, index }
        })
        .collect()
}

fn split_chunk(word: &str, base: usize, out: &mut Vec<Range<usize>>) {
    if word.is_empty() {
        return;
    }
    let mut start = 0;
    let mut end = word.len();
    let mut leading = Vec::new();
    for (i, c) in word.char_indices() {
        if !is_punct(c) {
            break;
        }
        leading.push(base + i..base + i + c.len_utf8());
        start = i + c.len_utf8();
    }
    let mut trailing = Vec::new();
    if start < end {
        for (i, c) in word[start..].char_indices().rev() {
            if !is_punct(c) {
                break;
            }
            let at = start + i;
            trailing.push(base + at..base + at + c.len_utf8());
            end = at;
        }
    }
    trailing.reverse();
    out.extend(leading);
    if start < end {
        let core = &word[start..end];
        if let Some(len) = possessive_suffix_len(core) {
            out.push(base + start..base + end - len);
            out.push(base + end - len..base + end);
        } else {
            out.push(base + start..base + end);
        }
    }
    out.extend(trailing);
}

/// Reassembles the caption from token surfaces and the gaps between spans.
pub fn reconstruct(caption: &str, tokens: &[Token]) -> String {
    let mut out = String::with_capacity(caption.len());
    let mut cursor = 0;
    for t in tokens {
        out.push_str(&caption[cursor..t.span.start]);
        out.push_str(&t.surface);
        cursor = t.span.end;
    }
    out.push_str(&caption[cursor..]);
    out
}
