#![allow(dead_code)]

use partcap::{BoundingBoxF64, DetectionF64};
use rand::seq::SliceRandom;
use rand::Rng;

pub const KEY_NOUNS: &[&str] = &["bird", "flower", "tree", "car", "house", "dog", "boat", "horse"];
pub const PART_LABELS: &[&str] = &[
    "beak", "wing", "tail", "eye", "petal", "leaf", "stem", "wheel", "window", "door", "roof", "branch", "ear", "leg",
];
pub const ATTRIBUTES: &[&str] = &["red", "white", "black", "green", "yellow", "orange", "small", "long", "pink"];
pub const NOISE_LABELS: &[&str] = &["sky", "cloud", "road", "grass"];

pub struct Scene {
    pub caption: String,
    pub detections: Vec<DetectionF64>,
    /// Every detector term (labels and attributes) plus the caption's words.
    pub references: Vec<String>,
}

fn rand_box<R: Rng>(rng: &mut R, within: Option<&BoundingBoxF64>) -> BoundingBoxF64 {
    match within {
        Some(k) => {
            let w = rng.gen_range(1.0..=(k.width().max(2.0)));
            let h = rng.gen_range(1.0..=(k.height().max(2.0)));
            let x = k.x_min() + rng.gen_range(-0.3 * w..k.width().max(1.0));
            let y = k.y_min() + rng.gen_range(-0.3 * h..k.height().max(1.0));
            BoundingBoxF64::from_xywh(x, y, w, h).unwrap()
        }
        None => {
            let x = rng.gen_range(0.0..400.0);
            let y = rng.gen_range(0.0..400.0);
            BoundingBoxF64::from_xywh(x, y, rng.gen_range(5.0..200.0), rng.gen_range(5.0..200.0)).unwrap()
        }
    }
}

fn conf<R: Rng>(rng: &mut R) -> f64 {
    // quantized so score+overlap sums stay exact in ties
    f64::from(rng.gen_range(1..=64u32)) / 64.0
}

/// Random caption over key nouns with detections for some of them and
/// part-like regions around those.
pub fn random_scene<R: Rng>(rng: &mut R) -> Scene {
    let n_keys = rng.gen_range(1..=3);
    let mut nouns: Vec<&str> = KEY_NOUNS.choose_multiple(rng, n_keys).copied().collect();
    nouns.shuffle(rng);
    let connectors = ["near", "on", "and", "beside", "behind"];
    let mut words = Vec::new();
    let mut caption_nouns = Vec::new();
    for (i, noun) in nouns.iter().enumerate() {
        if i > 0 {
            words.push(connectors.choose(rng).unwrap().to_string());
        }
        let plural = rng.gen_bool(0.25);
        words.push(if plural { "two".to_string() } else { "a".to_string() });
        if rng.gen_bool(0.3) {
            words.push(ATTRIBUTES.choose(rng).unwrap().to_string());
        }
        let surface = if plural { partcap::text::pluralize(noun) } else { noun.to_string() };
        words.push(surface);
        if rng.gen_bool(0.2) {
            words.push("with".into());
            words.push(PART_LABELS.choose(rng).unwrap().to_string());
        }
        caption_nouns.push((*noun, plural));
    }
    let mut caption = words.join(" ");
    if rng.gen_bool(0.5) {
        caption.push('.');
    }

    let mut detections = Vec::new();
    for (noun, plural) in &caption_nouns {
        if rng.gen_bool(0.15) {
            continue;
        }
        let copies = if *plural { rng.gen_range(1..=3) } else { rng.gen_range(1..=2) };
        for _ in 0..copies {
            let key_box = rand_box(rng, None);
            detections.push(DetectionF64::new(key_box, noun, None, conf(rng)).unwrap());
            for _ in 0..rng.gen_range(0..=6) {
                let b = rand_box(rng, Some(&key_box));
                let label = PART_LABELS.choose(rng).unwrap();
                let attr = rng.gen_bool(0.8).then(|| *ATTRIBUTES.choose(rng).unwrap());
                detections.push(DetectionF64::new(b, label, attr, conf(rng)).unwrap());
            }
        }
    }
    for _ in 0..rng.gen_range(0..=2) {
        let b = rand_box(rng, None);
        detections.push(DetectionF64::new(b, NOISE_LABELS.choose(rng).unwrap(), None, conf(rng)).unwrap());
    }
    detections.shuffle(rng);

    let mut terms: Vec<String> = Vec::new();
    for d in &detections {
        terms.push(d.object_label.clone());
        terms.extend(d.attribute_label.clone());
    }
    // repeat so reference multiplicity never limits recall growth
    let reference = std::iter::repeat_n(terms.join(" "), 12).collect::<Vec<_>>().join(" ");
    Scene { caption: caption.clone(), detections, references: vec![format!("{caption} {reference}")] }
}

/// Greedy subsequence test on token surfaces.
pub fn is_token_subsequence(base: &str, enhanced: &str) -> bool {
    let mut it = partcap::text::tokenize(enhanced).into_iter();
    partcap::text::tokenize(base).iter().all(|b| it.any(|e| e.surface == b.surface))
}
