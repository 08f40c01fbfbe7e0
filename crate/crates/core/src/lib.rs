//! Training-free caption enhancement with object-part proposals.
//!
//! Given a base caption and object-detector regions, nouns in the caption
//! are resolved to regions, smaller regions overlapping them are turned into
//! part phrases (`a red beak`, `white and pink petals`), and the best phrases
//! are spliced in after each object. Core math is generic over [`Scalar`]
//! (`f32` or `f64`); the `*F64`/`*F32` aliases below fix the type.

pub mod aggregate;
pub mod cli;
pub mod corpus;
pub mod eval;
pub mod geometry;
pub mod matching;
pub mod pipeline;
pub mod proposals;
pub mod scalar;
pub mod text;

pub use aggregate::{aggregate, insert, join_list, InsertError};
pub use corpus::{semantic_indicator_frequencies, term_frequencies, CorpusCounts, FrequencyReport, DEFAULT_INDICATORS};
pub use eval::{pr_sweep, pr_sweep_with, token_precision_recall, EvalError, EvalItem, PRPoint, PrScore, Stoplist, TokenMetric};
pub use geometry::{enclosing_box, intersection_area, overlap_ratio, BoundingBox, Detection, GeometryError};
pub use matching::{match_key_objects, KeyObject, KeyObjectMatch};
pub use pipeline::{enhance_caption, EnhancementRecord, Enhancer, InsertedPart, Insertion};
pub use proposals::{
    assign_parts, merge_duplicate_parts, rank_proposals, render_proposal, ComponentMode, ConfigError,
    EnhancementConfig, PartProposal, RankCriterion,
};
pub use scalar::Scalar;

pub type BoundingBoxF64 = BoundingBox<f64>;
pub type BoundingBoxF32 = BoundingBox<f32>;
pub type DetectionF64 = Detection<f64>;
pub type DetectionF32 = Detection<f32>;
pub type KeyObjectF64 = KeyObject<f64>;
pub type KeyObjectF32 = KeyObject<f32>;
pub type PartProposalF64 = PartProposal<f64>;
pub type PartProposalF32 = PartProposal<f32>;
pub type EnhancementConfigF64 = EnhancementConfig<f64>;
pub type EnhancementConfigF32 = EnhancementConfig<f32>;
pub type EnhancementRecordF64 = EnhancementRecord<f64>;
pub type EnhancementRecordF32 = EnhancementRecord<f32>;
