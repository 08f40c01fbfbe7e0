use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::LazyLock;

use serde::{Deserialize, Serialize};

use super::TextError;

/// Coarse part-of-speech tag set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Tag {
    Noun,
    Verb,
    Adj,
    Det,
    Adp,
    PartPossessive,
    Punct,
    Other,
}

impl Tag {
    pub fn as_str(self) -> &'static str {
        match self {
            Tag::Noun => "NOUN",
            Tag::Verb => "VERB",
            Tag::Adj => "ADJ",
            Tag::Det => "DET",
            Tag::Adp => "ADP",
            Tag::PartPossessive => "PART_POSSESSIVE",
            Tag::Punct => "PUNCT",
            Tag::Other => "OTHER",
        }
    }
}

impl fmt::Display for Tag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Tag {
    type Err = TextError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s.trim().to_ascii_uppercase().as_str() {
            "NOUN" => Tag::Noun,
            "VERB" => Tag::Verb,
            "ADJ" => Tag::Adj,
            "DET" => Tag::Det,
            "ADP" => Tag::Adp,
            "PART_POSSESSIVE" => Tag::PartPossessive,
            "PUNCT" => Tag::Punct,
            "OTHER" => Tag::Other,
            other => return Err(TextError::UnknownTag(other.to_string())),
        })
    }
}

const BUNDLED_LEXICON: &str = include_str!("../../data/lexicon.tsv");
const BUNDLED_IRREGULARS: &str = include_str!("../../data/irregular_plurals.tsv");

static BUNDLED: LazyLock<Lexicon> = LazyLock::new(|| {
    Lexicon::parse(BUNDLED_LEXICON, BUNDLED_IRREGULARS).expect("bundled lexicon is well-formed")
});

/// Word/tag lexicon plus irregular plural table.
#[derive(Debug, Clone, Default)]
pub struct Lexicon {
    tags: HashMap<String, Tag>,
    plural_to_singular: HashMap<String, String>,
    singular_to_plural: HashMap<String, String>,
}

fn data_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end_matches('\r')))
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
}

fn split_pair(line_no: usize, line: &str) -> Result<(&str, &str), TextError> {
    let mut parts = line.split('\t');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(a), Some(b), None) if !a.trim().is_empty() && !b.trim().is_empty() => {
            Ok((a.trim(), b.trim()))
        }
        _ => Err(TextError::MalformedLexiconLine { line: line_no, content: line.to_string() }),
    }
}

impl Lexicon {
    /// The lexicon shipped with the crate, loaded once.
    pub fn bundled() -> &'static Lexicon {
        &BUNDLED
    }

    /// Parses `word<TAB>tag` lines and `plural<TAB>singular` lines.
    /// Blank lines and `#` comments are ignored. Later entries win.
    pub fn parse(lexicon: &str, irregulars: &str) -> Result<Self, TextError> {
        let mut lex = Lexicon::default();
        for (no, line) in data_lines(lexicon) {
            let (word, tag) = split_pair(no, line)?;
            lex.tags.insert(word.to_lowercase(), tag.parse()?);
        }
        for (no, line) in data_lines(irregulars) {
            let (plural, singular) = split_pair(no, line)?;
            lex.add_irregular(&singular.to_lowercase(), &plural.to_lowercase());
        }
        Ok(lex)
    }

    pub fn add_irregular(&mut self, singular: &str, plural: &str) {
        self.plural_to_singular.insert(plural.to_string(), singular.to_string());
        self.singular_to_plural.insert(singular.to_string(), plural.to_string());
    }

    pub fn insert(&mut self, word: &str, tag: Tag) {
        self.tags.insert(word.to_lowercase(), tag);
    }

    pub fn tag_of(&self, word: &str) -> Option<Tag> {
        self.tags.get(word).copied()
    }

    pub fn is_noun(&self, word: &str) -> bool {
        self.tag_of(word) == Some(Tag::Noun) || self.singular_to_plural.contains_key(word)
    }

    pub fn irregular_singular(&self, plural: &str) -> Option<&str> {
        self.plural_to_singular.get(plural).map(String::as_str)
    }

    pub fn irregular_plural(&self, singular: &str) -> Option<&str> {
        self.singular_to_plural.get(singular).map(String::as_str)
    }

    /// Nouns listed in the lexicon, sorted.
    pub fn nouns(&self) -> Vec<&str> {
        let mut v: Vec<&str> = self
            .tags
            .iter()
            .filter(|(_, t)| **t == Tag::Noun)
            .map(|(w, _)| w.as_str())
            .collect();
        v.sort_unstable();
        v
    }

    pub fn len(&self) -> usize {
        self.tags.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tags.is_empty()
    }
}
