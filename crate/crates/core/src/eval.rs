//! Token-overlap precision/recall against reference captions and sweeps
//! over the number of inserted proposals.
//!
//! This is a transparent proxy metric over content-token multisets. It is
//! not a model-based semantic score and its absolute values are not
//! comparable to one.

use std::collections::{BTreeSet, HashMap};
use std::sync::LazyLock;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};
use thiserror::Error;

use crate::corpus::stat_tokens;
use crate::geometry::Detection;
use crate::pipeline::Enhancer;
use crate::proposals::EnhancementConfig;
use crate::scalar::Scalar;
use crate::text::Inflector;

pub const METRIC_NAME: &str = "token_overlap_proxy";

const BUNDLED_STOPWORDS: &str = include_str!("../data/stopwords.txt");

static BUNDLED: LazyLock<Stoplist> = LazyLock::new(|| Stoplist::parse(BUNDLED_STOPWORDS));

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("no reference captions for item {0}")]
    NoReferences(usize),
    #[error("evaluation dataset is empty")]
    EmptyDataset,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Stoplist {
    words: BTreeSet<String>,
    sha256: String,
}

impl Stoplist {
    pub fn bundled() -> &'static Stoplist {
        &BUNDLED
    }

    /// One word per line; `#` comments and blank lines ignored.
    pub fn parse(text: &str) -> Self {
        let words: BTreeSet<String> = text
            .lines()
            .map(str::trim)
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_lowercase)
            .collect();
        let mut hasher = Sha256::new();
        for w in &words {
            hasher.update(w.as_bytes());
            hasher.update(b"\n");
        }
        Self { words, sha256: hex::encode(hasher.finalize()) }
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    /// Hash of the normalized word set.
    pub fn sha256(&self) -> &str {
        &self.sha256
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrScore {
    pub precision: f64,
    pub recall: f64,
    /// Candidate had no content tokens; precision reported as 0.
    pub empty_candidate: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PRPoint {
    pub parts_per_object: usize,
    pub precision: f64,
    pub recall: f64,
    pub num_samples: usize,
    pub empty_candidates: usize,
}

/// One sweep item: base caption, its detections, and references.
#[derive(Debug, Clone, PartialEq)]
pub struct EvalItem<T> {
    pub base_caption: String,
    pub detections: Vec<Detection<T>>,
    pub references: Vec<String>,
}

type Bag = HashMap<String, usize>;

#[derive(Debug, Clone, Copy)]
pub struct TokenMetric<'a> {
    stoplist: &'a Stoplist,
    inflector: Inflector<'a>,
}

impl Default for TokenMetric<'static> {
    fn default() -> Self {
        Self { stoplist: Stoplist::bundled(), inflector: Inflector::default() }
    }
}

fn overlap(a: &Bag, b: &Bag) -> usize {
    a.iter().map(|(t, &n)| n.min(b.get(t).copied().unwrap_or(0))).sum()
}

impl<'a> TokenMetric<'a> {
    pub fn new(stoplist: &'a Stoplist, inflector: Inflector<'a>) -> Self {
        Self { stoplist, inflector }
    }

    pub fn stoplist(&self) -> &'a Stoplist {
        self.stoplist
    }

    /// Multiset of singularized, lowercased, non-stopword tokens.
    pub fn content_bag(&self, text: &str) -> HashMap<String, usize> {
        let mut bag = Bag::new();
        for tok in stat_tokens(text).filter(|t| !self.stoplist.contains(t)) {
            *bag.entry(self.inflector.singularize(&tok)).or_default() += 1;
        }
        bag
    }

    /// Precision against the union of references; recall is the best
    /// single-reference recall.
    pub fn score<S: AsRef<str>>(&self, candidate: &str, references: &[S]) -> Option<PrScore> {
        if references.is_empty() {
            return None;
        }
        let cand = self.content_bag(candidate);
        let refs: Vec<Bag> = references.iter().map(|r| self.content_bag(r.as_ref())).collect();
        let mut union = Bag::new();
        for r in &refs {
            for (t, &n) in r {
                let e = union.entry(t.clone()).or_default();
                *e = (*e).max(n);
            }
        }
        let cand_len: usize = cand.values().sum();
        let precision = if cand_len == 0 { 0.0 } else { overlap(&cand, &union) as f64 / cand_len as f64 };
        let recall = refs
            .iter()
            .filter_map(|r| {
                let len: usize = r.values().sum();
                (len > 0).then(|| overlap(&cand, r) as f64 / len as f64)
            })
            .fold(0.0, f64::max);
        Some(PrScore { precision, recall, empty_candidate: cand_len == 0 })
    }
}

/// Token precision/recall with the bundled stoplist.
pub fn token_precision_recall<S: AsRef<str>>(candidate: &str, references: &[S]) -> Result<PrScore, EvalError> {
    TokenMetric::default().score(candidate, references).ok_or(EvalError::NoReferences(0))
}

/// Averages precision and recall over the dataset for N = 0..=n_max using
/// the bundled lexicon and stoplist. The N = 0 point is the base captions.
pub fn pr_sweep<T: Scalar>(
    dataset: &[EvalItem<T>],
    n_max: usize,
    config: &EnhancementConfig<T>,
) -> Result<Vec<PRPoint>, EvalError> {
    pr_sweep_with(dataset, n_max, &Enhancer::new(config.clone()), &TokenMetric::default())
}

/// [`pr_sweep`] with a caller-configured enhancer and metric; the
/// enhancer's part count is replaced by each sweep value.
pub fn pr_sweep_with<T: Scalar>(
    dataset: &[EvalItem<T>],
    n_max: usize,
    enhancer: &Enhancer<'_, T>,
    metric: &TokenMetric<'_>,
) -> Result<Vec<PRPoint>, EvalError> {
    if dataset.is_empty() {
        return Err(EvalError::EmptyDataset);
    }
    if let Some(i) = dataset.iter().position(|d| d.references.is_empty()) {
        return Err(EvalError::NoReferences(i));
    }
    let points = (0..=n_max)
        .map(|n| {
            let enhancer = enhancer.with_parts(n);
            let scores: Vec<PrScore> = dataset
                .par_iter()
                .map(|item| {
                    let caption = enhancer.enhance(&item.base_caption, &item.detections).enhanced_caption;
                    metric.score(&caption, &item.references).expect("references checked above")
                })
                .collect();
            let count = scores.len() as f64;
            PRPoint {
                parts_per_object: n,
                precision: scores.iter().map(|s| s.precision).sum::<f64>() / count,
                recall: scores.iter().map(|s| s.recall).sum::<f64>() / count,
                num_samples: scores.len(),
                empty_candidates: scores.iter().filter(|s| s.empty_candidate).count(),
            }
        })
        .collect();
    Ok(points)
}
