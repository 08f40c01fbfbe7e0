//! File schemas: detection documents, caption/reference/output JSONL.

use std::collections::{HashMap, HashSet};
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::CliError;
use crate::geometry::{BoundingBox, Detection};
use crate::matching::SynonymTable;
use crate::text::Tag;

/// Box encoding used by a detection record.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BoxFormat {
    /// `[x_min, y_min, x_max, y_max]`
    #[default]
    Xyxy,
    /// `[x, y, width, height]`, converted to corner form on ingest.
    Xywh,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RegionRecord {
    #[serde(rename = "box")]
    pub bbox: [f64; 4],
    pub label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attribute: Option<String>,
    pub confidence: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DetectionFileRecord {
    pub image_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub width: Option<u32>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub height: Option<u32>,
    #[serde(default, skip_serializing_if = "is_default_format")]
    pub box_format: BoxFormat,
    pub regions: Vec<RegionRecord>,
}

fn is_default_format(f: &BoxFormat) -> bool {
    *f == BoxFormat::Xyxy
}

impl RegionRecord {
    pub fn to_detection(&self, format: BoxFormat) -> Result<Detection<f64>, crate::geometry::GeometryError> {
        let [a, b, c, d] = self.bbox;
        let bbox = match format {
            BoxFormat::Xyxy => BoundingBox::new(a, b, c, d)?,
            BoxFormat::Xywh => BoundingBox::from_xywh(a, b, c, d)?,
        };
        Detection::new(bbox, &self.label, self.attribute.as_deref(), self.confidence)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CaptionRecord {
    pub image_id: String,
    pub caption: String,
    /// Externally produced `(token, tag)` pairs; bypasses the rule tagger.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tokens: Option<Vec<(String, Tag)>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReferenceRecord {
    pub image_id: String,
    pub references: Vec<String>,
}

pub fn read_text(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io { path: path.to_path_buf(), source })
}

/// Detections per image id.
pub type DetectionIndex = HashMap<String, Vec<Detection<f64>>>;

/// Parses a detection document (a JSON array of records) and validates it.
/// Invalid regions are fatal unless `skip_bad`, in which case they are
/// dropped with a warning.
pub fn load_detections(path: &Path, skip_bad: bool, warnings: &mut Vec<String>) -> Result<DetectionIndex, CliError> {
    let text = read_text(path)?;
    let records: Vec<DetectionFileRecord> = serde_json::from_str(&text)
        .map_err(|e| CliError::Malformed { path: path.to_path_buf(), line: e.line(), message: e.to_string() })?;
    parse_detection_records(records, skip_bad, warnings)
}

pub fn parse_detection_records(
    records: Vec<DetectionFileRecord>,
    skip_bad: bool,
    warnings: &mut Vec<String>,
) -> Result<DetectionIndex, CliError> {
    let mut seen = HashSet::new();
    let mut index = DetectionIndex::new();
    for rec in records {
        if !seen.insert(rec.image_id.clone()) {
            return Err(CliError::DuplicateImageId(rec.image_id));
        }
        let mut dets = Vec::with_capacity(rec.regions.len());
        for (i, region) in rec.regions.iter().enumerate() {
            match region.to_detection(rec.box_format) {
                Ok(d) => dets.push(d),
                Err(source) if skip_bad => {
                    warnings.push(format!("image {}: skipping region {i}: {source}", rec.image_id));
                }
                Err(source) => {
                    return Err(CliError::InvalidRegion { image_id: rec.image_id, region: i, source });
                }
            }
        }
        index.insert(rec.image_id, dets);
    }
    Ok(index)
}

/// Parses a JSONL file, one record per non-blank line.
pub fn read_jsonl<R: for<'de> Deserialize<'de>>(
    path: &Path,
    skip_bad: bool,
    warnings: &mut Vec<String>,
) -> Result<Vec<(usize, R)>, CliError> {
    let text = read_text(path)?;
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        match serde_json::from_str(line) {
            Ok(r) => out.push((i + 1, r)),
            Err(e) if skip_bad => warnings.push(format!("{}:{}: skipping malformed record: {e}", path.display(), i + 1)),
            Err(e) => {
                return Err(CliError::Malformed { path: path.to_path_buf(), line: i + 1, message: e.to_string() })
            }
        }
    }
    Ok(out)
}

/// Serializes records as JSON lines.
pub fn to_jsonl<R: Serialize>(records: &[R]) -> String {
    let mut out = String::new();
    for r in records {
        out.push_str(&serde_json::to_string(r).expect("records serialize"));
        out.push('\n');
    }
    out
}

/// `caption_lemma<TAB>detector_label` lines.
pub fn load_synonyms(path: &Path) -> Result<SynonymTable, CliError> {
    let text = read_text(path)?;
    let mut table = SynonymTable::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let Some((from, to)) = line.split_once('\t') else {
            return Err(CliError::Malformed {
                path: path.to_path_buf(),
                line: i + 1,
                message: "expected `lemma<TAB>label`".into(),
            });
        };
        table.insert(from.trim().to_lowercase(), to.trim().to_lowercase());
    }
    Ok(table)
}

/// Captions from a corpus file: JSONL records with a `caption` field when
/// the extension is `.jsonl`/`.json`, otherwise one caption per line.
pub fn load_corpus(path: &Path) -> Result<Vec<String>, CliError> {
    #[derive(Deserialize)]
    struct Line {
        caption: String,
    }
    let text = read_text(path)?;
    let is_json = matches!(path.extension().and_then(|e| e.to_str()), Some("jsonl" | "json"));
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        if is_json {
            let rec: Line = serde_json::from_str(line).map_err(|e| CliError::Malformed {
                path: path.to_path_buf(),
                line: i + 1,
                message: e.to_string(),
            })?;
            out.push(rec.caption);
        } else {
            out.push(line.to_string());
        }
    }
    Ok(out)
}
