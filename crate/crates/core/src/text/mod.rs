//! Tokenization, tagging, inflection and noun-mention extraction.

mod inflect;
mod lexicon;
mod mentions;
mod tagger;
mod tokenize;

pub use inflect::{pluralize, singularize, Inflector};
pub use lexicon::{Lexicon, Tag};
pub use mentions::{extract_noun_mentions, MentionOptions, NounMention};
pub use tagger::{align_pretagged, pos_tag, PosTagger, RuleTagger, TaggedToken};
pub use tokenize::{reconstruct, tokenize, Token};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TextError {
    #[error("lexicon line {line} is not `word<TAB>value`: {content:?}")]
    MalformedLexiconLine { line: usize, content: String },
    #[error("unknown part-of-speech tag {0:?}")]
    UnknownTag(String),
    #[error("pre-tagged token {index} ({token:?}) does not match the caption text")]
    PretaggedMismatch { index: usize, token: String },
    #[error("pre-tagged tokens leave caption text uncovered: {remaining:?}")]
    PretaggedIncomplete { remaining: String },
}
