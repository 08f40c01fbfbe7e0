//! Command-line entry points: `enhance`, `freq` and `pr-sweep`.

mod commands;
pub mod io;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use commands::{run, run_enhance, run_freq, run_pr_sweep, Outcome};

use crate::geometry::GeometryError;
use crate::proposals::{ComponentMode, ConfigError, EnhancementConfig, RankCriterion};
use crate::text::TextError;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{path}:{line}: {message}")]
    Malformed { path: PathBuf, line: usize, message: String },
    #[error("duplicate image_id {0:?} in detection file")]
    DuplicateImageId(String),
    #[error("image {image_id}: region {region}: {source}")]
    InvalidRegion { image_id: String, region: usize, source: GeometryError },
    #[error("no references for image {0:?}")]
    MissingReferences(String),
    #[error(transparent)]
    Config(#[from] ConfigError),
    #[error(transparent)]
    Text(#[from] TextError),
    #[error(transparent)]
    Eval(#[from] crate::eval::EvalError),
}

#[derive(Debug, Parser)]
#[command(name = "partcap", version, about = "Insert object-part descriptions into image captions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Enhance captions with part proposals from detector output.
    Enhance(EnhanceArgs),
    /// Word and semantic-indicator frequencies of caption corpora.
    Freq(FreqArgs),
    /// Token precision/recall while sweeping the number of parts.
    PrSweep(SweepArgs),
}

#[derive(Debug, Clone, Args)]
pub struct ConfigArgs {
    /// Overlap threshold T for part assignment (strict).
    #[arg(long, default_value_t = 0.5)]
    pub threshold: f64,
    /// Ranking criterion: score, overlap or score+overlap.
    #[arg(long, default_value = "score+overlap")]
    pub rank: RankCriterion,
    /// Proposal components: both, descriptor or part.
    #[arg(long, default_value = "both")]
    pub components: ComponentMode,
    /// Drop parts whose label equals the key object's label.
    #[arg(long)]
    pub dedupe: bool,
    /// Use a serial comma in lists of three or more.
    #[arg(long)]
    pub oxford_comma: bool,
    /// Skip runs of adjacent nouns instead of matching each one.
    #[arg(long)]
    pub skip_compounds: bool,
    /// Tab-separated `caption_lemma<TAB>detector_label` synonym table.
    #[arg(long)]
    pub synonyms: Option<PathBuf>,
    /// Replacement `word<TAB>tag` lexicon.
    #[arg(long)]
    pub lexicon: Option<PathBuf>,
    /// Replacement `plural<TAB>singular` table (used with --lexicon).
    #[arg(long, requires = "lexicon")]
    pub irregulars: Option<PathBuf>,
    /// Skip malformed input records with a warning instead of failing.
    #[arg(long)]
    pub skip_bad: bool,
}

impl ConfigArgs {
    pub fn to_config(&self, parts: usize) -> Result<EnhancementConfig<f64>, ConfigError> {
        let cfg = EnhancementConfig {
            parts,
            threshold: self.threshold,
            rank: self.rank,
            components: self.components,
            dedupe: self.dedupe,
            oxford_comma: self.oxford_comma,
            skip_compound_nouns: self.skip_compounds,
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

impl Default for ConfigArgs {
    fn default() -> Self {
        Self {
            threshold: 0.5,
            rank: RankCriterion::default(),
            components: ComponentMode::default(),
            dedupe: false,
            oxford_comma: false,
            skip_compounds: false,
            synonyms: None,
            lexicon: None,
            irregulars: None,
            skip_bad: false,
        }
    }
}

#[derive(Debug, Clone, Args)]
pub struct EnhanceArgs {
    /// Detection document (JSON array of per-image records).
    #[arg(long)]
    pub detections: PathBuf,
    /// Captions JSONL (`image_id`, `caption`, optional `tokens`).
    #[arg(long)]
    pub captions: PathBuf,
    /// Output JSONL path.
    #[arg(long, short)]
    pub out: PathBuf,
    /// Parts per key object (N).
    #[arg(long, default_value_t = 1)]
    pub parts: usize,
    #[command(flatten)]
    pub config: ConfigArgs,
}

#[derive(Debug, Clone, Args)]
pub struct FreqArgs {
    /// Corpus files: plain text (one caption per line) or `.jsonl`.
    #[arg(required = true)]
    pub corpora: Vec<PathBuf>,
    /// Comma-separated indicator words.
    #[arg(long, value_delimiter = ',', default_value = "with,has,have,on,in")]
    pub indicators: Vec<String>,
    /// Number of top terms to report.
    #[arg(long, default_value_t = 5)]
    pub top_k: usize,
    /// Output JSONL report, one line per corpus.
    #[arg(long, short)]
    pub out: PathBuf,
    /// Optional tab-separated table for plotting.
    #[arg(long)]
    pub table: Option<PathBuf>,
}

#[derive(Debug, Clone, Args)]
pub struct SweepArgs {
    #[arg(long)]
    pub detections: PathBuf,
    #[arg(long)]
    pub captions: PathBuf,
    /// References JSONL (`image_id`, `references`).
    #[arg(long)]
    pub references: PathBuf,
    /// Largest N in the sweep; N = 0 is the base caption.
    #[arg(long, default_value_t = 10)]
    pub max_parts: usize,
    /// Output table path.
    #[arg(long, short)]
    pub out: PathBuf,
    #[command(flatten)]
    pub config: ConfigArgs,
}
