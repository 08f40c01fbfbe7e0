//! Rule-based English noun inflection backed by the lexicon's irregular table.
//!
//! Regular suffix rules can be ambiguous on the way back to the singular
//! (`horses`/`buses`, `cookies`/`cities`). Each rule yields candidate stems;
//! the first candidate that is a known noun wins, otherwise the rule default.

use super::lexicon::Lexicon;

#[derive(Debug, Clone, Copy)]
pub struct Inflector<'a> {
    lexicon: &'a Lexicon,
}

impl Default for Inflector<'static> {
    fn default() -> Self {
        Self { lexicon: Lexicon::bundled() }
    }
}

fn is_vowel(c: char) -> bool {
    matches!(c, 'a' | 'e' | 'i' | 'o' | 'u')
}

fn strip(word: &str, n: usize) -> String {
    word[..word.len() - n].to_string()
}

impl<'a> Inflector<'a> {
    pub fn new(lexicon: &'a Lexicon) -> Self {
        Self { lexicon }
    }

    pub fn lexicon(&self) -> &'a Lexicon {
        self.lexicon
    }

    /// Returns the singular form; singular inputs come back unchanged.
    pub fn singularize(&self, word: &str) -> String {
        let lex = self.lexicon;
        if let Some(s) = lex.irregular_singular(word) {
            return s.to_string();
        }
        if lex.irregular_plural(word).is_some() || lex.is_noun(word) {
            return word.to_string();
        }
        let (candidates, default) = singular_candidates(word);
        candidates
            .iter()
            .find(|c| lex.is_noun(c))
            .cloned()
            .or(default)
            .filter(|s| !s.is_empty())
            .unwrap_or_else(|| word.to_string())
    }

    /// Returns the plural form of a singular noun.
    pub fn pluralize(&self, word: &str) -> String {
        let lex = self.lexicon;
        if word.is_empty() {
            return String::new();
        }
        if let Some(p) = lex.irregular_plural(word) {
            return p.to_string();
        }
        if lex.irregular_singular(word).is_some() {
            return word.to_string();
        }
        let mut chars = word.chars().rev();
        let last = chars.next().unwrap_or_default();
        let before = chars.next();
        if last == 'y' && before.is_some_and(|c| !is_vowel(c)) {
            return format!("{}ies", strip(word, 1));
        }
        if ["s", "x", "z", "ch", "sh"].iter().any(|s| word.ends_with(s)) {
            return format!("{word}es");
        }
        format!("{word}s")
    }

    pub fn is_plural(&self, word: &str) -> bool {
        self.singularize(word) != word
    }
}

/// Candidate singular stems in preference order, plus the fallback used when
/// none is a known noun. A `None` fallback means "leave unchanged".
fn singular_candidates(word: &str) -> (Vec<String>, Option<String>) {
    let n = word.len();
    if n < 2 || !word.ends_with('s') || !word.is_ascii() {
        return (Vec::new(), None);
    }
    if word.ends_with("ss") || word.ends_with("us") || word.ends_with("is") {
        return (vec![strip(word, 1)], None);
    }
    if n > 4 && word.ends_with("ies") {
        let y = format!("{}y", strip(word, 3));
        return (vec![y.clone(), strip(word, 1)], Some(y));
    }
    if word.ends_with("ves") {
        let base = strip(word, 3);
        let opts = vec![strip(word, 1), format!("{base}f"), format!("{base}fe")];
        return (opts, Some(strip(word, 1)));
    }
    if ["sses", "shes", "ches", "xes", "zzes"].iter().any(|s| word.ends_with(s)) {
        return (vec![strip(word, 2), strip(word, 1)], Some(strip(word, 2)));
    }
    if ["ses", "zes", "oes"].iter().any(|s| word.ends_with(s)) {
        return (vec![strip(word, 1), strip(word, 2)], Some(strip(word, 1)));
    }
    (vec![strip(word, 1)], Some(strip(word, 1)))
}

/// Singular form using the bundled lexicon.
pub fn singularize(word: &str) -> String {
    Inflector::default().singularize(word)
}

/// Plural form using the bundled lexicon.
pub fn pluralize(word: &str) -> String {
    Inflector::default().pluralize(word)
}
