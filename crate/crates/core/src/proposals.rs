//! Part assignment, duplicate merging, ranking and rendering of proposals.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{overlap_ratio, Detection};
use crate::matching::KeyObject;
use crate::scalar::{cmp_desc, Scalar};
use crate::text::Inflector;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("overlap threshold must lie in (0, 1], got {0}")]
    Threshold(f64),
    #[error("unknown ranking criterion {0:?} (expected score, overlap or score+overlap)")]
    Criterion(String),
    #[error("unknown component mode {0:?} (expected both, descriptor or part)")]
    Components(String),
}

/// Statistic used to order a key object's proposals.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum RankCriterion {
    #[serde(rename = "score")]
    Score,
    #[serde(rename = "overlap")]
    Overlap,
    #[default]
    #[serde(rename = "score+overlap")]
    ScorePlusOverlap,
}

impl RankCriterion {
    pub fn as_str(self) -> &'static str {
        match self {
            RankCriterion::Score => "score",
            RankCriterion::Overlap => "overlap",
            RankCriterion::ScorePlusOverlap => "score+overlap",
        }
    }

    pub fn score<T: Scalar>(self, overlap: T, confidence: T) -> T {
        match self {
            RankCriterion::Score => confidence,
            RankCriterion::Overlap => overlap,
            RankCriterion::ScorePlusOverlap => confidence + overlap,
        }
    }
}

impl FromStr for RankCriterion {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "score" => Ok(Self::Score),
            "overlap" => Ok(Self::Overlap),
            "score+overlap" | "score_plus_overlap" => Ok(Self::ScorePlusOverlap),
            other => Err(ConfigError::Criterion(other.to_string())),
        }
    }
}

impl fmt::Display for RankCriterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Which parts of a proposal are rendered.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentMode {
    /// Attribute only.
    Descriptor,
    /// Article and part label only.
    Part,
    #[default]
    Both,
}

impl ComponentMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ComponentMode::Descriptor => "descriptor",
            ComponentMode::Part => "part",
            ComponentMode::Both => "both",
        }
    }
}

impl FromStr for ComponentMode {
    type Err = ConfigError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "descriptor" | "descriptor_only" => Ok(Self::Descriptor),
            "part" | "part_only" => Ok(Self::Part),
            "both" => Ok(Self::Both),
            other => Err(ConfigError::Components(other.to_string())),
        }
    }
}

impl fmt::Display for ComponentMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct EnhancementConfig<T> {
    /// Proposals inserted per key object (N).
    pub parts: usize,
    /// Part-assignment overlap threshold (T), strict.
    pub threshold: T,
    pub rank: RankCriterion,
    pub components: ComponentMode,
    /// Drop parts whose label equals the key object's lemma.
    #[serde(default)]
    pub dedupe: bool,
    #[serde(default)]
    pub oxford_comma: bool,
    #[serde(default)]
    pub skip_compound_nouns: bool,
}

impl<T: Scalar> Default for EnhancementConfig<T> {
    fn default() -> Self {
        Self {
            parts: 1,
            threshold: T::lit(0.5),
            rank: RankCriterion::default(),
            components: ComponentMode::default(),
            dedupe: false,
            oxford_comma: false,
            skip_compound_nouns: false,
        }
    }
}

impl<T: Scalar> EnhancementConfig<T> {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.threshold > T::zero() && self.threshold <= T::one()) {
            return Err(ConfigError::Threshold(self.threshold.to_f64_lossy()));
        }
        Ok(())
    }

    pub fn with_parts(mut self, parts: usize) -> Self {
        self.parts = parts;
        self
    }

    pub fn with_threshold(mut self, threshold: T) -> Self {
        self.threshold = threshold;
        self
    }

    pub fn with_rank(mut self, rank: RankCriterion) -> Self {
        self.rank = rank;
        self
    }

    pub fn with_components(mut self, components: ComponentMode) -> Self {
        self.components = components;
        self
    }
}

/// A candidate part phrase for one key object.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct PartProposal<T> {
    /// Singular part label.
    pub part_label: String,
    pub attribute: Option<String>,
    pub is_plural: bool,
    pub article: Option<String>,
    pub rank_score: T,
    pub overlap: T,
    pub confidence: T,
    pub merged_count: usize,
}

const AN_EXCEPTIONS: &[&str] = &["uni", "use", "usu", "eu", "one", "once", "ur"];
const SILENT_H: &[&str] = &["hour", "honest", "honor", "heir"];

/// Indefinite article for the word that follows it.
pub fn indefinite_article(word: &str) -> &'static str {
    let w = word.to_lowercase();
    if SILENT_H.iter().any(|p| w.starts_with(p)) {
        return "an";
    }
    if AN_EXCEPTIONS.iter().any(|p| w.starts_with(p)) {
        return "a";
    }
    match w.chars().next() {
        Some('a' | 'e' | 'i' | 'o' | 'u') => "an",
        _ => "a",
    }
}

/// Detection indices and overlap ratios assigned to each key object.
pub type Assignment<T> = Vec<Vec<(usize, T)>>;

/// Assigns each non-reserved detection to at most one key object.
///
/// Key objects are visited smallest area first; a candidate goes to the
/// first key whose overlap ratio strictly exceeds `threshold`. Zero-area
/// candidates are skipped. The result is indexed like `key_objects`, and
/// each list keeps detection order.
pub fn assign_parts<T: Scalar>(
    key_objects: &[KeyObject<T>],
    detections: &[Detection<T>],
    reserved: impl Fn(usize) -> bool,
    threshold: T,
) -> Assignment<T> {
    let mut order: Vec<usize> = (0..key_objects.len()).collect();
    order.sort_by(|&a, &b| {
        key_objects[a]
            .bbox
            .area()
            .partial_cmp(&key_objects[b].bbox.area())
            .unwrap_or(Ordering::Equal)
    });
    let mut out: Assignment<T> = vec![Vec::new(); key_objects.len()];
    for (r, det) in detections.iter().enumerate() {
        if reserved(r) {
            continue;
        }
        for &k in &order {
            let Ok(ratio) = overlap_ratio(&det.bbox, &key_objects[k].bbox) else {
                break;
            };
            if ratio > threshold {
                out[k].push((r, ratio));
                break;
            }
        }
    }
    out
}

/// Groups candidates by (label, attribute); groups of two or more become one
/// plural proposal carrying the maximum overlap and confidence.
pub fn merge_duplicate_parts<T: Scalar>(
    candidates: &[(&Detection<T>, T)],
    inflector: &Inflector<'_>,
) -> Vec<PartProposal<T>> {
    let mut groups: Vec<PartProposal<T>> = Vec::new();
    for (det, overlap) in candidates {
        let label = inflector.singularize(&det.object_label);
        let attribute = det.attribute_label.clone();
        match groups.iter_mut().find(|g| g.part_label == label && g.attribute == attribute) {
            Some(g) => {
                g.merged_count += 1;
                g.overlap = g.overlap.max(*overlap);
                g.confidence = g.confidence.max(det.confidence);
            }
            None => groups.push(PartProposal {
                part_label: label,
                attribute,
                is_plural: false,
                article: None,
                rank_score: T::zero(),
                overlap: *overlap,
                confidence: det.confidence,
                merged_count: 1,
            }),
        }
    }
    for g in &mut groups {
        g.is_plural = g.merged_count > 1;
        g.article = if g.is_plural {
            None
        } else {
            Some(indefinite_article(g.attribute.as_deref().unwrap_or(&g.part_label)).to_string())
        };
    }
    groups
}

/// Orders proposals by the criterion, descending. Ties: higher confidence,
/// then label, then attribute.
pub fn rank_proposals<T: Scalar>(mut proposals: Vec<PartProposal<T>>, criterion: RankCriterion) -> Vec<PartProposal<T>> {
    for p in &mut proposals {
        p.rank_score = criterion.score(p.overlap, p.confidence);
    }
    proposals.sort_by(|a, b| {
        cmp_desc(a.rank_score, b.rank_score)
            .then_with(|| cmp_desc(a.confidence, b.confidence))
            .then_with(|| a.part_label.cmp(&b.part_label))
            .then_with(|| a.attribute.cmp(&b.attribute))
    });
    proposals
}

/// Renders one proposal. Returns `None` when the mode leaves nothing to say
/// (descriptor mode without an attribute).
pub fn render_proposal<T: Scalar>(p: &PartProposal<T>, mode: ComponentMode, inflector: &Inflector<'_>) -> Option<String> {
    let label = if p.is_plural { inflector.pluralize(&p.part_label) } else { p.part_label.clone() };
    let with_article = |phrase: String| {
        if p.is_plural {
            phrase
        } else {
            format!("{} {phrase}", indefinite_article(&phrase))
        }
    };
    match mode {
        ComponentMode::Descriptor => p.attribute.clone(),
        ComponentMode::Part => Some(with_article(label)),
        ComponentMode::Both => Some(with_article(match &p.attribute {
            Some(a) => format!("{a} {label}"),
            None => label,
        })),
    }
}
