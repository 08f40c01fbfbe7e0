use std::ops::Range;

use serde::{Deserialize, Serialize};

use super::inflect::Inflector;
use super::lexicon::{Lexicon, Tag};
use super::tokenize::Token;
use super::TextError;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TaggedToken {
    pub surface: String,
    pub lower: String,
    pub tag: Tag,
    pub span: Range<usize>,
    pub index: usize,
}

impl TaggedToken {
    pub fn from_token(token: &Token, tag: Tag) -> Self {
        Self {
            surface: token.surface.clone(),
            lower: token.lower.clone(),
            tag,
            span: token.span.clone(),
            index: token.index,
        }
    }
}

/// Anything that assigns one tag per token.
pub trait PosTagger {
    fn tag(&self, tokens: &[Token]) -> Vec<TaggedToken>;
}

/// Lexicon lookup with suffix fallbacks; unknown content words are nouns.
#[derive(Debug, Clone, Copy)]
pub struct RuleTagger<'a> {
    lexicon: &'a Lexicon,
}

impl Default for RuleTagger<'static> {
    fn default() -> Self {
        Self { lexicon: Lexicon::bundled() }
    }
}

fn is_punct_only(s: &str) -> bool {
    s.chars().all(|c| !c.is_alphanumeric())
}

impl<'a> RuleTagger<'a> {
    pub fn new(lexicon: &'a Lexicon) -> Self {
        Self { lexicon }
    }

    pub fn tag_word(&self, lower: &str) -> Tag {
        if is_punct_only(lower) {
            return Tag::Punct;
        }
        if let Some(tag) = self.lexicon.tag_of(lower) {
            return tag;
        }
        if lower.chars().any(|c| c.is_ascii_digit()) {
            return Tag::Other;
        }
        if lower.contains('-') {
            return Tag::Adj;
        }
        if lower.ends_with('s') {
            let singular = Inflector::new(self.lexicon).singularize(lower);
            if singular != lower && self.lexicon.is_noun(&singular) {
                return Tag::Noun;
            }
        }
        if (lower.len() > 4 && lower.ends_with("ing")) || (lower.len() > 3 && lower.ends_with("ed")) {
            return Tag::Verb;
        }
        if lower.ends_with('y') || lower.ends_with("ful") || lower.ends_with("ous") {
            return Tag::Adj;
        }
        if lower.chars().all(char::is_alphabetic) {
            Tag::Noun
        } else {
            Tag::Other
        }
    }
}

impl PosTagger for RuleTagger<'_> {
    fn tag(&self, tokens: &[Token]) -> Vec<TaggedToken> {
        tokens.iter().map(|t| TaggedToken::from_token(t, self.tag_word(&t.lower))).collect()
    }
}

/// Tags tokens with the bundled rule tagger.
pub fn pos_tag(tokens: &[Token]) -> Vec<TaggedToken> {
    RuleTagger::default().tag(tokens)
}

/// Aligns externally produced `(token, tag)` pairs against the caption text.
///
/// Tokens must appear in order, separated only by whitespace.
pub fn align_pretagged(caption: &str, pairs: &[(String, Tag)]) -> Result<Vec<TaggedToken>, TextError> {
    let mut cursor = 0;
    let mut out = Vec::with_capacity(pairs.len());
    for (index, (surface, tag)) in pairs.iter().enumerate() {
        let rest = &caption[cursor..];
        let trimmed = rest.trim_start();
        let start = cursor + (rest.len() - trimmed.len());
        if surface.is_empty() || !trimmed.starts_with(surface.as_str()) {
            return Err(TextError::PretaggedMismatch { index, token: surface.clone() });
        }
        let end = start + surface.len();
        out.push(TaggedToken {
            surface: surface.clone(),
            lower: surface.to_lowercase(),
            tag: *tag,
            span: start..end,
            index,
        });
        cursor = end;
    }
    if !caption[cursor..].trim().is_empty() {
        return Err(TextError::PretaggedIncomplete { remaining: caption[cursor..].trim().to_string() });
    }
    Ok(out)
}
