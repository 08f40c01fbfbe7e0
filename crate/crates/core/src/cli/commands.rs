use std::collections::HashMap;
use std::fmt::Write as _;

use rayon::prelude::*;

use super::io::{self, CaptionRecord, ReferenceRecord};
use super::{CliError, Command, ConfigArgs, EnhanceArgs, FreqArgs, SweepArgs};
use crate::corpus::CorpusCounts;
use crate::eval::{pr_sweep_with, EvalItem, TokenMetric, METRIC_NAME};
use crate::matching::SynonymTable;
use crate::pipeline::{EnhancementRecord, Enhancer};
use crate::text::{align_pretagged, Inflector, Lexicon};

/// Non-fatal diagnostics from a successful command.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Outcome {
    pub warnings: Vec<String>,
    pub records: usize,
}

pub fn run(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Enhance(a) => run_enhance(a),
        Command::Freq(a) => run_freq(a),
        Command::PrSweep(a) => run_pr_sweep(a),
    }
}

struct Resources {
    lexicon: Option<Lexicon>,
    synonyms: Option<SynonymTable>,
}

impl Resources {
    fn load(cfg: &ConfigArgs) -> Result<Self, CliError> {
        let lexicon = match &cfg.lexicon {
            Some(path) => {
                let irregulars = match &cfg.irregulars {
                    Some(p) => io::read_text(p)?,
                    None => String::new(),
                };
                Some(Lexicon::parse(&io::read_text(path)?, &irregulars)?)
            }
            None => None,
        };
        let synonyms = cfg.synonyms.as_deref().map(io::load_synonyms).transpose()?;
        Ok(Self { lexicon, synonyms })
    }

    fn enhancer(&self, config: crate::EnhancementConfig<f64>) -> Enhancer<'_, f64> {
        let inflector = match &self.lexicon {
            Some(l) => Inflector::new(l),
            None => Inflector::default(),
        };
        let e = Enhancer::new(config).with_inflector(inflector);
        match &self.synonyms {
            Some(s) => e.with_synonyms(s),
            None => e,
        }
    }
}

/// One output record and an optional warning for it.
type Enhanced = Result<(EnhancementRecord<f64>, Option<String>), CliError>;

pub fn run_enhance(args: &EnhanceArgs) -> Result<Outcome, CliError> {
    let config = args.config.to_config(args.parts)?;
    let skip_bad = args.config.skip_bad;
    let mut warnings = Vec::new();
    let detections = io::load_detections(&args.detections, skip_bad, &mut warnings)?;
    let captions: Vec<(usize, CaptionRecord)> = io::read_jsonl(&args.captions, skip_bad, &mut warnings)?;
    let resources = Resources::load(&args.config)?;
    let enhancer = resources.enhancer(config.clone());

    let results: Vec<Enhanced> = captions
        .par_iter()
        .map(|(line, rec)| {
            let Some(dets) = detections.get(&rec.image_id) else {
                let warning = format!("{}:{line}: no detections for image {:?}; caption passed through", args.captions.display(), rec.image_id);
                return Ok((EnhancementRecord::passthrough(&rec.caption, &config).with_image_id(&rec.image_id), Some(warning)));
            };
            let record = match &rec.tokens {
                Some(pairs) => {
                    let tokens = align_pretagged(&rec.caption, pairs).map_err(|e| CliError::Malformed {
                        path: args.captions.clone(),
                        line: *line,
                        message: e.to_string(),
                    })?;
                    enhancer.enhance_tagged(&rec.caption, &tokens, dets)
                }
                None => enhancer.enhance(&rec.caption, dets),
            };
            Ok((record.with_image_id(&rec.image_id), None))
        })
        .collect();

    let mut records = Vec::with_capacity(results.len());
    for (result, (_, rec)) in results.into_iter().zip(&captions) {
        match result {
            Ok((record, warning)) => {
                warnings.extend(warning);
                records.push(record);
            }
            Err(e) if skip_bad => {
                warnings.push(format!("{e}; caption passed through"));
                records.push(EnhancementRecord::passthrough(&rec.caption, &config).with_image_id(&rec.image_id));
            }
            Err(e) => return Err(e),
        }
    }
    io::write_text(&args.out, &io::to_jsonl(&records))?;
    Ok(Outcome { warnings, records: records.len() })
}

pub fn run_freq(args: &FreqArgs) -> Result<Outcome, CliError> {
    let indicators: Vec<String> = args
        .indicators
        .iter()
        .map(|s| s.trim().to_lowercase())
        .filter(|s| !s.is_empty())
        .collect();
    let indicator_refs: Vec<&str> = indicators.iter().map(String::as_str).collect();
    let mut warnings = Vec::new();
    let mut reports = Vec::new();
    for path in &args.corpora {
        let captions = io::load_corpus(path)?;
        if captions.is_empty() {
            warnings.push(format!("{}: empty corpus", path.display()));
        }
        let corpus_id = path.file_stem().and_then(|s| s.to_str()).unwrap_or("corpus").to_string();
        reports.push(CorpusCounts::from_captions(&captions).report(&corpus_id, args.top_k, &indicator_refs));
    }
    io::write_text(&args.out, &io::to_jsonl(&reports))?;
    if let Some(table) = &args.table {
        let mut out = String::from("corpus_id\tkind\tterm\tcount\trelative_frequency\n");
        for r in &reports {
            for t in &r.term_counts {
                writeln!(out, "{}\tterm\t{}\t{}\t{}", r.corpus_id, t.term, t.count, t.relative_frequency).unwrap();
            }
            for (ind, freq) in &r.indicator_frequencies {
                writeln!(out, "{}\tindicator\t{ind}\t{}\t{freq}", r.corpus_id, r.indicator_counts[ind]).unwrap();
            }
        }
        io::write_text(table, &out)?;
    }
    Ok(Outcome { warnings, records: reports.len() })
}

/// Curve table: provenance comment lines, a header, then one row per N.
pub fn format_curve(points: &[crate::eval::PRPoint], stoplist_sha256: &str) -> String {
    let mut out = String::new();
    writeln!(out, "# metric: {METRIC_NAME} (content-token multiset precision/recall)").unwrap();
    writeln!(out, "# stoplist_sha256: {stoplist_sha256}").unwrap();
    out.push_str("N\tprecision\trecall\tnum_samples\n");
    for p in points {
        writeln!(out, "{}\t{:.6}\t{:.6}\t{}", p.parts_per_object, p.precision, p.recall, p.num_samples).unwrap();
    }
    out
}

pub fn run_pr_sweep(args: &SweepArgs) -> Result<Outcome, CliError> {
    let config = args.config.to_config(1)?;
    let skip_bad = args.config.skip_bad;
    let mut warnings = Vec::new();
    let detections = io::load_detections(&args.detections, skip_bad, &mut warnings)?;
    let captions: Vec<(usize, CaptionRecord)> = io::read_jsonl(&args.captions, skip_bad, &mut warnings)?;
    let refs: Vec<(usize, ReferenceRecord)> = io::read_jsonl(&args.references, skip_bad, &mut warnings)?;
    let mut references: HashMap<String, Vec<String>> = HashMap::new();
    for (_, r) in refs {
        references.entry(r.image_id).or_default().extend(r.references);
    }
    let mut dataset = Vec::with_capacity(captions.len());
    for (_, rec) in captions {
        let refs = references
            .get(&rec.image_id)
            .filter(|r| !r.is_empty())
            .ok_or_else(|| CliError::MissingReferences(rec.image_id.clone()))?;
        let dets = match detections.get(&rec.image_id) {
            Some(d) => d.clone(),
            None => {
                warnings.push(format!("no detections for image {:?}; base caption used", rec.image_id));
                Vec::new()
            }
        };
        dataset.push(EvalItem { base_caption: rec.caption, detections: dets, references: refs.clone() });
    }
    let resources = Resources::load(&args.config)?;
    let enhancer = resources.enhancer(config);
    let inflector = match &resources.lexicon {
        Some(l) => Inflector::new(l),
        None => Inflector::default(),
    };
    let metric = TokenMetric::new(crate::eval::Stoplist::bundled(), inflector);
    let points = pr_sweep_with(&dataset, args.max_parts, &enhancer, &metric)?;
    io::write_text(&args.out, &format_curve(&points, metric.stoplist().sha256()))?;
    Ok(Outcome { warnings, records: points.len() })
}
