//! End-to-end enhancement: mentions, matching, assignment, ranking,
//! aggregation and insertion.

use serde::{Deserialize, Serialize};

use crate::aggregate::{aggregate_selected, apply_splices, plan_insertion, select_top};
use crate::geometry::Detection;
use crate::matching::{match_key_objects, SynonymTable};
use crate::proposals::{assign_parts, merge_duplicate_parts, rank_proposals, EnhancementConfig};
use crate::scalar::Scalar;
use crate::text::{extract_noun_mentions, tokenize, Inflector, MentionOptions, PosTagger, RuleTagger, TaggedToken};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct InsertedPart {
    pub label: String,
    #[serde(default)]
    pub attribute: Option<String>,
    pub plural: bool,
}

/// One splice performed on the base caption.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Insertion {
    pub key: String,
    pub token_index: usize,
    /// Inserted text, connective included.
    pub text: String,
    pub parts: Vec<InsertedPart>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct EnhancementRecord<T> {
    pub image_id: String,
    pub base_caption: String,
    pub enhanced_caption: String,
    pub insertions: Vec<Insertion>,
    pub config: EnhancementConfig<T>,
}

impl<T: Scalar> EnhancementRecord<T> {
    pub fn passthrough(base: &str, config: &EnhancementConfig<T>) -> Self {
        Self {
            image_id: String::new(),
            base_caption: base.to_string(),
            enhanced_caption: base.to_string(),
            insertions: Vec::new(),
            config: config.clone(),
        }
    }

    pub fn with_image_id(mut self, image_id: impl Into<String>) -> Self {
        self.image_id = image_id.into();
        self
    }
}

/// Caption enhancer bound to a configuration and an inflection lexicon.
#[derive(Debug, Clone)]
pub struct Enhancer<'a, T> {
    config: EnhancementConfig<T>,
    inflector: Inflector<'a>,
    synonyms: Option<&'a SynonymTable>,
}

impl<T: Scalar> Enhancer<'static, T> {
    pub fn new(config: EnhancementConfig<T>) -> Self {
        Self { config, inflector: Inflector::default(), synonyms: None }
    }
}

impl<'a, T: Scalar> Enhancer<'a, T> {
    pub fn with_inflector(mut self, inflector: Inflector<'a>) -> Self {
        self.inflector = inflector;
        self
    }

    pub fn with_synonyms(mut self, synonyms: &'a SynonymTable) -> Self {
        self.synonyms = Some(synonyms);
        self
    }

    pub fn config(&self) -> &EnhancementConfig<T> {
        &self.config
    }

    /// Same enhancer with a different part count.
    pub fn with_parts(&self, parts: usize) -> Self {
        let mut e = self.clone();
        e.config.parts = parts;
        e
    }

    /// Tokenizes and tags with the rule tagger, then enhances.
    pub fn enhance(&self, base: &str, detections: &[Detection<T>]) -> EnhancementRecord<T> {
        if self.config.parts == 0 {
            return EnhancementRecord::passthrough(base, &self.config);
        }
        let tagger = RuleTagger::new(self.inflector.lexicon());
        let tokens = tagger.tag(&tokenize(base));
        self.enhance_tagged(base, &tokens, detections)
    }

    /// Enhances using caller-supplied tagged tokens aligned to `base`.
    pub fn enhance_tagged(&self, base: &str, tokens: &[TaggedToken], detections: &[Detection<T>]) -> EnhancementRecord<T> {
        let cfg = &self.config;
        if cfg.parts == 0 || detections.is_empty() {
            return EnhancementRecord::passthrough(base, cfg);
        }
        let options = MentionOptions { skip_compound_nouns: cfg.skip_compound_nouns };
        let mentions = extract_noun_mentions(tokens, &self.inflector, options);
        let matched = match_key_objects(&mentions, detections, &self.inflector, self.synonyms);
        let assignment = assign_parts(&matched.key_objects, detections, |r| matched.reserved.contains(&r), cfg.threshold);

        let mut splices = Vec::new();
        let mut insertions = Vec::new();
        for (key, parts) in matched.key_objects.iter().zip(&assignment) {
            let candidates: Vec<(&Detection<T>, T)> = parts
                .iter()
                .map(|&(r, ovl)| (&detections[r], ovl))
                .filter(|(d, _)| !cfg.dedupe || self.inflector.singularize(&d.object_label) != key.lemma())
                .collect();
            if candidates.is_empty() {
                continue;
            }
            let ranked = rank_proposals(merge_duplicate_parts(&candidates, &self.inflector), cfg.rank);
            let selected = select_top(&ranked, cfg.parts, cfg.components);
            let text = aggregate_selected(&selected, cfg.components, &self.inflector, cfg.oxford_comma);
            let splice = plan_insertion(base, tokens, &key.mention, &text)
                .expect("mention indices come from the same token list");
            let Some(splice) = splice else { continue };
            insertions.push(Insertion {
                key: key.lemma().to_string(),
                token_index: key.mention.insertion_token_index,
                text: splice.text.clone(),
                parts: selected
                    .iter()
                    .map(|p| InsertedPart { label: p.part_label.clone(), attribute: p.attribute.clone(), plural: p.is_plural })
                    .collect(),
            });
            splices.push(splice);
        }
        insertions.sort_by_key(|i| i.token_index);
        EnhancementRecord {
            image_id: String::new(),
            base_caption: base.to_string(),
            enhanced_caption: apply_splices(base, splices),
            insertions,
            config: cfg.clone(),
        }
    }
}

/// Enhances `base` with the bundled lexicon and rule tagger.
pub fn enhance_caption<T: Scalar>(base: &str, detections: &[Detection<T>], config: &EnhancementConfig<T>) -> EnhancementRecord<T> {
    Enhancer::new(config.clone()).enhance(base, detections)
}
