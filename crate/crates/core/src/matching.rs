//! Resolving caption noun mentions to detector regions.

use std::collections::{BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::geometry::{enclosing_box, BoundingBox, Detection};
use crate::scalar::Scalar;
use crate::text::{Inflector, NounMention};

/// A caption noun with the image region it refers to.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct KeyObject<T> {
    pub mention: NounMention,
    #[serde(rename = "box")]
    pub bbox: BoundingBox<T>,
    /// Indices into the detection list.
    pub matched_detections: Vec<usize>,
}

impl<T: Scalar> KeyObject<T> {
    pub fn lemma(&self) -> &str {
        &self.mention.lemma_singular
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct KeyObjectMatch<T> {
    pub key_objects: Vec<KeyObject<T>>,
    /// Detections claimed as key objects; excluded from part candidacy.
    pub reserved: BTreeSet<usize>,
}

/// Optional extra label mapping: caption lemma -> detector lemma.
pub type SynonymTable = HashMap<String, String>;

/// Matches mentions to detections by exact singular lemma.
///
/// Singular mentions take the highest-confidence detection (earliest wins
/// ties). Plural mentions take the box enclosing every same-label detection.
/// Mentions without a match are dropped. Only sole-match detections are
/// reserved; constituents of a plural enclosure stay available as parts.
pub fn match_key_objects<T: Scalar>(
    mentions: &[NounMention],
    detections: &[Detection<T>],
    inflector: &Inflector<'_>,
    synonyms: Option<&SynonymTable>,
) -> KeyObjectMatch<T> {
    let labels: Vec<String> = detections.iter().map(|d| inflector.singularize(&d.object_label)).collect();
    let mut key_objects = Vec::new();
    let mut reserved = BTreeSet::new();
    for mention in mentions {
        let wanted = synonyms
            .and_then(|s| s.get(&mention.lemma_singular))
            .unwrap_or(&mention.lemma_singular);
        let matches: Vec<usize> = (0..detections.len()).filter(|&i| labels[i] == *wanted).collect();
        if matches.is_empty() {
            continue;
        }
        let (bbox, matched) = if mention.is_plural {
            let boxes: Vec<_> = matches.iter().map(|&i| detections[i].bbox).collect();
            (enclosing_box(&boxes).expect("non-empty match list"), matches)
        } else {
            let best = matches
                .iter()
                .copied()
                .reduce(|best, i| if detections[i].confidence > detections[best].confidence { i } else { best })
                .expect("non-empty match list");
            (detections[best].bbox, vec![best])
        };
        if let [sole] = matched.as_slice() {
            reserved.insert(*sole);
        }
        key_objects.push(KeyObject { mention: mention.clone(), bbox, matched_detections: matched });
    }
    KeyObjectMatch { key_objects, reserved }
}
