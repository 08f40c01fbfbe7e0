//! Word-frequency statistics over caption corpora.
//!
//! Frequencies are per token: a term's count divided by the number of
//! non-punctuation tokens in the corpus. No stemming is applied.

use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::text::tokenize;

/// Indicators of part descriptions (`with`, `has`, `have`) and of
/// object-to-object relations (`on`, `in`).
pub const DEFAULT_INDICATORS: [&str; 5] = ["with", "has", "have", "on", "in"];

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TermCount {
    pub term: String,
    pub count: u64,
    pub relative_frequency: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyReport {
    pub corpus_id: String,
    pub total_tokens: u64,
    pub term_counts: Vec<TermCount>,
    pub indicator_counts: BTreeMap<String, u64>,
    pub indicator_frequencies: BTreeMap<String, f64>,
}

/// Mergeable token counts.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CorpusCounts {
    counts: HashMap<String, u64>,
    total: u64,
}

/// Lowercased tokens of `caption`, punctuation dropped.
pub fn stat_tokens(caption: &str) -> impl Iterator<Item = String> + '_ {
    tokenize(caption)
        .into_iter()
        .filter(|t| t.lower.chars().any(char::is_alphanumeric))
        .map(|t| t.lower)
}

impl CorpusCounts {
    pub fn from_captions<S: AsRef<str> + Sync>(captions: &[S]) -> Self {
        captions
            .par_iter()
            .fold(CorpusCounts::default, |mut acc, c| {
                acc.add_caption(c.as_ref());
                acc
            })
            .reduce(CorpusCounts::default, CorpusCounts::merge)
    }

    pub fn add_caption(&mut self, caption: &str) {
        for tok in stat_tokens(caption) {
            *self.counts.entry(tok).or_default() += 1;
            self.total += 1;
        }
    }

    pub fn merge(mut self, other: CorpusCounts) -> CorpusCounts {
        for (term, n) in other.counts {
            *self.counts.entry(term).or_default() += n;
        }
        self.total += other.total;
        self
    }

    pub fn total(&self) -> u64 {
        self.total
    }

    pub fn count(&self, term: &str) -> u64 {
        self.counts.get(term).copied().unwrap_or(0)
    }

    pub fn distinct_terms(&self) -> usize {
        self.counts.len()
    }

    fn relative(&self, n: u64) -> f64 {
        if self.total == 0 {
            0.0
        } else {
            n as f64 / self.total as f64
        }
    }

    /// All terms by count descending, then term ascending.
    pub fn ranked(&self) -> Vec<TermCount> {
        let mut v: Vec<TermCount> = self
            .counts
            .iter()
            .map(|(t, &n)| TermCount { term: t.clone(), count: n, relative_frequency: self.relative(n) })
            .collect();
        v.sort_by(|a, b| b.count.cmp(&a.count).then_with(|| a.term.cmp(&b.term)));
        v
    }

    pub fn report(&self, corpus_id: &str, top_k: usize, indicators: &[&str]) -> FrequencyReport {
        let mut term_counts = self.ranked();
        term_counts.truncate(top_k);
        let indicator_counts: BTreeMap<String, u64> =
            indicators.iter().map(|i| (i.to_string(), self.count(i))).collect();
        let indicator_frequencies = indicator_counts.iter().map(|(i, &n)| (i.clone(), self.relative(n))).collect();
        FrequencyReport {
            corpus_id: corpus_id.to_string(),
            total_tokens: self.total,
            term_counts,
            indicator_counts,
            indicator_frequencies,
        }
    }
}

/// Top-`top_k` terms of a corpus, with the default indicator set.
pub fn term_frequencies<S: AsRef<str> + Sync>(captions: &[S], top_k: usize) -> FrequencyReport {
    CorpusCounts::from_captions(captions).report("", top_k, &DEFAULT_INDICATORS)
}

/// Indicator count divided by total token count.
pub fn semantic_indicator_frequencies<S: AsRef<str> + Sync>(captions: &[S], indicators: &[&str]) -> BTreeMap<String, f64> {
    CorpusCounts::from_captions(captions).report("", 0, indicators).indicator_frequencies
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hand_counts() {
        let r = term_frequencies(&["a a b"], 2);
        assert_eq!(r.total_tokens, 3);
        assert_eq!(
            r.term_counts,
            vec![
                TermCount { term: "a".into(), count: 2, relative_frequency: 2.0 / 3.0 },
                TermCount { term: "b".into(), count: 1, relative_frequency: 1.0 / 3.0 },
            ]
        );
    }

    #[test]
    fn empty_corpus() {
        let r = term_frequencies::<&str>(&[], 5);
        assert_eq!(r.total_tokens, 0);
        assert!(r.term_counts.is_empty());
        assert_eq!(r.indicator_frequencies["with"], 0.0);
    }

    #[test]
    fn tie_order() {
        let r = term_frequencies(&["c c b b"], 2);
        let terms: Vec<_> = r.term_counts.iter().map(|t| (t.term.as_str(), t.count)).collect();
        assert_eq!(terms, [("b", 2), ("c", 2)]);
    }

    #[test]
    fn indicator_examples() {
        let f = semantic_indicator_frequencies(&["a bird with a beak"], &["with"]);
        assert_eq!(f["with"], 1.0 / 5.0);
        let f = semantic_indicator_frequencies(&["a bird"], &["near"]);
        assert_eq!(f["near"], 0.0);
    }

    #[test]
    fn punctuation_not_counted() {
        let r = term_frequencies(&["Petals, leaves."], 5);
        assert_eq!(r.total_tokens, 2);
        assert_eq!(r.term_counts[0].term, "leaves");
    }

    #[test]
    fn merge_adds_counts() {
        let a = ["a bird with a beak", "two birds"];
        let b = ["a bird in a tree"];
        let both: Vec<&str> = a.iter().chain(&b).copied().collect();
        let merged = CorpusCounts::from_captions(&a).merge(CorpusCounts::from_captions(&b));
        assert_eq!(merged, CorpusCounts::from_captions(&both));
        assert_eq!(merged.count("bird"), 2);
        assert_eq!(merged.total(), 12);
    }
}
