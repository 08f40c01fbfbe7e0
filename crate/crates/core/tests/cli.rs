use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command as Process;

use partcap::cli::io::DetectionFileRecord;
use partcap::cli::{run_enhance, run_freq, run_pr_sweep, CliError, ConfigArgs, EnhanceArgs, FreqArgs, SweepArgs};
use partcap::EnhancementRecordF64;
use tempfile::TempDir;

const DETECTIONS: &str = r#"[
  {"image_id": "flower1", "width": 100, "height": 100, "regions": [
    {"box": [0, 0, 100, 100], "label": "flower", "attribute": "pink", "confidence": 0.95},
    {"box": [10, 10, 30, 30], "label": "leaf", "attribute": "green", "confidence": 0.8},
    {"box": [60, 60, 80, 80], "label": "leaf", "attribute": "green", "confidence": 0.7}
  ]},
  {"image_id": "bird1", "regions": [
    {"box": [0, 0, 50, 50], "label": "bird", "confidence": 0.9},
    {"box": [10, 10, 20, 20], "label": "beak", "attribute": "orange", "confidence": 0.9},
    {"box": [30, 0, 70, 50], "label": "wing", "attribute": "black", "confidence": 0.6}
  ]}
]"#;

const CAPTIONS: &str = r#"{"image_id": "flower1", "caption": "a flower with white and pink petals"}
{"image_id": "bird1", "caption": "a bird on a branch."}

{"image_id": "nowhere", "caption": "an empty field"}
"#;

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let p = dir.join(name);
    fs::write(&p, text).unwrap();
    p
}

fn enhance_args(dir: &Path, parts: usize, threshold: f64) -> EnhanceArgs {
    EnhanceArgs {
        detections: write(dir, "det.json", DETECTIONS),
        captions: write(dir, "captions.jsonl", CAPTIONS),
        out: dir.join("out.jsonl"),
        parts,
        config: ConfigArgs { threshold, ..ConfigArgs::default() },
    }
}

fn read_records(path: &Path) -> Vec<EnhancementRecordF64> {
    fs::read_to_string(path).unwrap().lines().map(|l| serde_json::from_str(l).unwrap()).collect()
}

#[test]
fn enhance_writes_ordered_records() {
    let dir = TempDir::new().unwrap();
    let args = enhance_args(dir.path(), 5, 0.5);
    let outcome = run_enhance(&args).unwrap();
    assert_eq!(outcome.records, 3);
    assert_eq!(outcome.warnings.len(), 1, "{:?}", outcome.warnings);
    let recs = read_records(&args.out);
    let ids: Vec<_> = recs.iter().map(|r| r.image_id.as_str()).collect();
    assert_eq!(ids, ["flower1", "bird1", "nowhere"]);
    assert_eq!(recs[0].enhanced_caption, "a flower with white and pink petals in addition to green leaves");
    assert_eq!(recs[1].enhanced_caption, "a bird with an orange beak on a branch.");
    assert_eq!(recs[2].enhanced_caption, recs[2].base_caption);
    assert_eq!(recs[0].config.parts, 5);
}

#[test]
fn output_round_trips() {
    let dir = TempDir::new().unwrap();
    let args = enhance_args(dir.path(), 3, 0.25);
    run_enhance(&args).unwrap();
    let text = fs::read_to_string(&args.out).unwrap();
    let recs = read_records(&args.out);
    assert_eq!(partcap::cli::io::to_jsonl(&recs), text);
}

#[test]
fn threshold_changes_part_sets() {
    let dir = TempDir::new().unwrap();
    // wing overlaps the bird box by exactly half
    let low = enhance_args(dir.path(), 5, 0.25);
    run_enhance(&low).unwrap();
    let low_out = read_records(&low.out);
    let high = enhance_args(dir.path(), 5, 0.75);
    run_enhance(&high).unwrap();
    let high_out = read_records(&high.out);
    assert_eq!(low_out[1].enhanced_caption, "a bird with an orange beak and a black wing on a branch.");
    assert_eq!(high_out[1].enhanced_caption, "a bird with an orange beak on a branch.");
}

#[test]
fn zero_parts_passthrough() {
    let dir = TempDir::new().unwrap();
    let args = enhance_args(dir.path(), 0, 0.5);
    run_enhance(&args).unwrap();
    for r in read_records(&args.out) {
        assert_eq!(r.enhanced_caption, r.base_caption);
    }
}

#[test]
fn malformed_line_reports_line_number() {
    let dir = TempDir::new().unwrap();
    let mut args = enhance_args(dir.path(), 1, 0.5);
    args.captions = write(dir.path(), "bad.jsonl", "{\"image_id\": \"bird1\", \"caption\": \"a bird\"}\n{oops\n");
    match run_enhance(&args) {
        Err(CliError::Malformed { line, .. }) => assert_eq!(line, 2),
        other => panic!("expected malformed error, got {other:?}"),
    }
    args.config.skip_bad = true;
    let outcome = run_enhance(&args).unwrap();
    assert_eq!(outcome.records, 1);
    assert_eq!(outcome.warnings.len(), 1);
}

#[test]
fn pretagged_tokens_bypass_tagger() {
    let dir = TempDir::new().unwrap();
    let mut args = enhance_args(dir.path(), 1, 0.5);
    // "bird" tagged as a verb: no key object, caption unchanged
    let line = r#"{"image_id":"bird1","caption":"a bird","tokens":[["a","DET"],["bird","VERB"]]}"#;
    args.captions = write(dir.path(), "tagged.jsonl", line);
    run_enhance(&args).unwrap();
    assert_eq!(read_records(&args.out)[0].enhanced_caption, "a bird");
    let line = r#"{"image_id":"bird1","caption":"a bird","tokens":[["a","DET"],["bird","NOUN"]]}"#;
    args.captions = write(dir.path(), "tagged.jsonl", line);
    run_enhance(&args).unwrap();
    assert_eq!(read_records(&args.out)[0].enhanced_caption, "a bird with an orange beak");
}

#[test]
fn synonym_table_extends_matching() {
    let dir = TempDir::new().unwrap();
    let mut args = enhance_args(dir.path(), 1, 0.5);
    args.captions = write(dir.path(), "syn.jsonl", r#"{"image_id":"bird1","caption":"a sparrow"}"#);
    run_enhance(&args).unwrap();
    assert_eq!(read_records(&args.out)[0].enhanced_caption, "a sparrow");
    args.config.synonyms = Some(write(dir.path(), "syn.tsv", "sparrow\tbird\n"));
    run_enhance(&args).unwrap();
    assert_eq!(read_records(&args.out)[0].enhanced_caption, "a sparrow with an orange beak");
}

#[test]
fn invalid_detection_file_fails() {
    let dir = TempDir::new().unwrap();
    let mut args = enhance_args(dir.path(), 1, 0.5);
    args.detections = write(dir.path(), "bad.json", r#"[{"image_id":"a","regions":[{"box":[0,0,1,1],"label":"x","confidence":2}]}]"#);
    assert!(matches!(run_enhance(&args), Err(CliError::InvalidRegion { .. })));
    let recs: Vec<DetectionFileRecord> = serde_json::from_str(DETECTIONS).unwrap();
    assert_eq!(recs.len(), 2);
}

#[test]
fn freq_reports_and_table() {
    let dir = TempDir::new().unwrap();
    let corpus = write(dir.path(), "toy.txt", "a bird with a red beak\nthe bird has wings\na dog on a mat in a room\n");
    let args = FreqArgs {
        corpora: vec![corpus],
        indicators: vec!["with".into(), "has".into(), "near".into()],
        top_k: 2,
        out: dir.path().join("freq.jsonl"),
        table: Some(dir.path().join("freq.tsv")),
    };
    run_freq(&args).unwrap();
    let report: partcap::FrequencyReport =
        serde_json::from_str(fs::read_to_string(&args.out).unwrap().trim()).unwrap();
    assert_eq!(report.corpus_id, "toy");
    assert_eq!(report.total_tokens, 18);
    assert_eq!(report.term_counts[0].term, "a");
    assert_eq!(report.term_counts[0].count, 5);
    assert_eq!(report.term_counts[1].term, "bird");
    assert_eq!(report.indicator_counts["with"], 1);
    assert_eq!(report.indicator_frequencies["has"], 1.0 / 18.0);
    assert_eq!(report.indicator_frequencies["near"], 0.0);
    let table = fs::read_to_string(args.table.as_ref().unwrap()).unwrap();
    assert!(table.starts_with("corpus_id\tkind\tterm\tcount\trelative_frequency\n"));
    assert!(table.contains("toy\tindicator\tnear\t0\t0\n"));
}

#[test]
fn freq_empty_corpus_warns() {
    let dir = TempDir::new().unwrap();
    let args = FreqArgs {
        corpora: vec![write(dir.path(), "empty.txt", "")],
        indicators: vec!["with".into()],
        top_k: 5,
        out: dir.path().join("freq.jsonl"),
        table: None,
    };
    let outcome = run_freq(&args).unwrap();
    assert_eq!(outcome.warnings.len(), 1);
}

fn sweep_args(dir: &Path, max_parts: usize) -> SweepArgs {
    SweepArgs {
        detections: write(dir, "det.json", DETECTIONS),
        captions: write(dir, "cap.jsonl", r#"{"image_id": "bird1", "caption": "a bird on a branch."}
{"image_id": "flower1", "caption": "a flower with white and pink petals"}
"#),
        references: write(dir, "refs.jsonl", r#"{"image_id": "bird1", "references": ["a bird with an orange beak and black wings on a branch"]}
{"image_id": "flower1", "references": ["a pink flower with white petals and green leaves"]}
"#),
        max_parts,
        out: dir.join("curve.tsv"),
        config: ConfigArgs { threshold: 0.25, ..ConfigArgs::default() },
    }
}

fn read_curve(path: &Path) -> Vec<(usize, f64, f64, usize)> {
    fs::read_to_string(path)
        .unwrap()
        .lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with('N'))
        .map(|l| {
            let f: Vec<&str> = l.split('\t').collect();
            (f[0].parse().unwrap(), f[1].parse().unwrap(), f[2].parse().unwrap(), f[3].parse().unwrap())
        })
        .collect()
}

#[test]
fn pr_sweep_curve() {
    let dir = TempDir::new().unwrap();
    let args = sweep_args(dir.path(), 10);
    run_pr_sweep(&args).unwrap();
    let text = fs::read_to_string(&args.out).unwrap();
    assert!(text.starts_with("# metric: token_overlap_proxy"));
    assert!(text.contains(&format!("# stoplist_sha256: {}", partcap::Stoplist::bundled().sha256())));
    let rows = read_curve(&args.out);
    assert_eq!(rows.len(), 11);
    assert!(rows.windows(2).all(|w| w[1].2 >= w[0].2));
    assert!(rows.iter().all(|r| r.3 == 2));
    assert!(rows[2].2 > rows[0].2);
}

#[test]
fn pr_sweep_base_only_and_missing_refs() {
    let dir = TempDir::new().unwrap();
    let args = sweep_args(dir.path(), 0);
    run_pr_sweep(&args).unwrap();
    let rows = read_curve(&args.out);
    assert_eq!(rows.len(), 1);
    assert_eq!(rows[0].0, 0);

    let mut args = sweep_args(dir.path(), 2);
    args.references = write(dir.path(), "refs_partial.jsonl", r#"{"image_id": "bird1", "references": ["a bird"]}"#);
    assert!(matches!(run_pr_sweep(&args), Err(CliError::MissingReferences(id)) if id == "flower1"));
}

#[test]
fn binary_exit_status() {
    let dir = TempDir::new().unwrap();
    let args = enhance_args(dir.path(), 2, 0.5);
    let bin = env!("CARGO_BIN_EXE_partcap");
    let status = Process::new(bin)
        .args(["enhance", "--detections"])
        .arg(&args.detections)
        .arg("--captions")
        .arg(&args.captions)
        .arg("--out")
        .arg(&args.out)
        .args(["--parts", "2", "--rank", "score", "--components", "both"])
        .output()
        .unwrap();
    assert!(status.status.success(), "{}", String::from_utf8_lossy(&status.stderr));
    // the missing image warning does not change the exit status
    assert!(String::from_utf8_lossy(&status.stderr).contains("nowhere"));

    let bad = Process::new(bin)
        .args(["enhance", "--detections"])
        .arg(&args.detections)
        .arg("--captions")
        .arg(dir.path().join("missing.jsonl"))
        .arg("--out")
        .arg(&args.out)
        .output()
        .unwrap();
    assert!(!bad.status.success());

    let bad_threshold = Process::new(bin)
        .args(["enhance", "--detections"])
        .arg(&args.detections)
        .arg("--captions")
        .arg(&args.captions)
        .arg("--out")
        .arg(&args.out)
        .args(["--threshold", "0"])
        .output()
        .unwrap();
    assert!(!bad_threshold.status.success());
}
