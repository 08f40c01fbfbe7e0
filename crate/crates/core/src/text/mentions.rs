use serde::{Deserialize, Serialize};

use super::inflect::Inflector;
use super::lexicon::Tag;
use super::tagger::TaggedToken;

/// A caption noun that may be resolved to an image region.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NounMention {
    pub lemma_singular: String,
    pub is_plural: bool,
    /// Token after which proposal text is spliced.
    pub insertion_token_index: usize,
    /// Token supplying the lemma (the possessor in possessive phrases).
    pub head_token_index: usize,
    pub source_token_indices: Vec<usize>,
}

impl NounMention {
    /// Token range covering the noun and its existing description.
    pub fn description_span(&self) -> std::ops::RangeInclusive<usize> {
        self.head_token_index..=self.insertion_token_index
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MentionOptions {
    /// Drop runs of adjacent nouns entirely instead of treating each token
    /// as its own mention.
    pub skip_compound_nouns: bool,
}

const NUMERALS: &[&str] = &[
    "one", "two", "three", "four", "five", "six", "seven", "eight", "nine", "ten", "several", "many",
];

fn is_modifier(t: &TaggedToken) -> bool {
    matches!(t.tag, Tag::Det | Tag::Adj)
        || (t.tag == Tag::Other
            && (NUMERALS.contains(&t.lower.as_str()) || t.lower.chars().all(|c| c.is_ascii_digit())))
}

struct PhraseScanner<'t> {
    tokens: &'t [TaggedToken],
}

impl PhraseScanner<'_> {
    fn lower_at(&self, i: usize) -> Option<&str> {
        self.tokens.get(i).map(|t| t.lower.as_str())
    }

    fn tag_at(&self, i: usize) -> Option<Tag> {
        self.tokens.get(i).map(|t| t.tag)
    }

    /// First noun after `from`, skipping determiners, adjectives and numerals.
    fn next_noun(&self, from: usize) -> Option<usize> {
        let mut j = from;
        while let Some(t) = self.tokens.get(j) {
            if t.tag == Tag::Noun {
                return Some(j);
            }
            if !is_modifier(t) {
                return None;
            }
            j += 1;
        }
        None
    }

    /// Last noun of an adjective/noun run starting at `from`.
    fn possessed_run_end(&self, from: usize) -> Option<usize> {
        let mut last = None;
        let mut j = from;
        while let Some(t) = self.tokens.get(j) {
            match t.tag {
                Tag::Noun => last = Some(j),
                Tag::Adj => {}
                _ => break,
            }
            j += 1;
        }
        last
    }

    /// Last noun of a coordinated description such as
    /// `a red beak, black wings and a short tail`.
    fn description_end(&self, from: usize) -> Option<usize> {
        let mut last = None;
        let mut j = from;
        while let Some(t) = self.tokens.get(j) {
            let allowed = match t.tag {
                Tag::Noun => {
                    last = Some(j);
                    true
                }
                Tag::Det | Tag::Adj => true,
                Tag::Other => matches!(t.lower.as_str(), "and" | "or") || is_modifier(t),
                Tag::Punct => t.lower == ",",
                Tag::Adp => t.lower == "of",
                _ => false,
            };
            if !allowed {
                break;
            }
            j += 1;
        }
        last
    }

    /// Resolves the phrase headed by the noun at `start`.
    /// Returns (head, end, sources).
    fn resolve(&self, start: usize) -> (usize, usize, Vec<usize>) {
        let mut head = start;
        let mut end = start;
        let mut sources = vec![start];
        loop {
            match self.tag_at(end + 1) {
                Some(Tag::PartPossessive) => {
                    end = match self.possessed_run_end(end + 2) {
                        Some(e) => {
                            sources.push(e);
                            e
                        }
                        None => end + 1,
                    };
                }
                _ if self.lower_at(end + 1) == Some("of") => match self.next_noun(end + 2) {
                    Some(j) => {
                        head = j;
                        end = j;
                        sources.push(j);
                    }
                    None => break,
                },
                _ => break,
            }
        }
        if self.lower_at(end + 1) == Some("with") {
            if let Some(e) = self.description_end(end + 2) {
                end = e;
                if self.lower_at(end + 1) == Some("in")
                    && self.lower_at(end + 2) == Some("addition")
                    && self.lower_at(end + 3) == Some("to")
                {
                    if let Some(e) = self.description_end(end + 4) {
                        end = e;
                    }
                }
            }
        }
        sources.sort_unstable();
        sources.dedup();
        (head, end, sources)
    }
}

/// Extracts one mention per noun phrase.
///
/// In `X's Y` and `Y of X` the possessor `X` supplies the lemma and the
/// phrase end is the insertion point. A trailing `with ...` description is
/// absorbed into the phrase so new proposals land after it. Adjacent nouns
/// are independent mentions unless `skip_compound_nouns` is set.
pub fn extract_noun_mentions(
    tokens: &[TaggedToken],
    inflector: &Inflector<'_>,
    options: MentionOptions,
) -> Vec<NounMention> {
    let scanner = PhraseScanner { tokens };
    let mut mentions = Vec::new();
    let mut i = 0;
    while i < tokens.len() {
        if tokens[i].tag != Tag::Noun {
            i += 1;
            continue;
        }
        if options.skip_compound_nouns {
            let run = tokens[i..].iter().take_while(|t| t.tag == Tag::Noun).count();
            if run > 1 {
                i += run;
                continue;
            }
        }
        let (head, end, sources) = scanner.resolve(i);
        let lower = &tokens[head].lower;
        let lemma = inflector.singularize(lower);
        mentions.push(NounMention {
            is_plural: lemma != *lower,
            lemma_singular: lemma,
            insertion_token_index: end,
            head_token_index: head,
            source_token_indices: sources,
        });
        i = end + 1;
    }
    mentions
}
