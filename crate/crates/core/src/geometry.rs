//! Axis-aligned box arithmetic and the detector region model.
//!
//! Boxes are corner-form `(x_min, y_min, x_max, y_max)` with real-valued
//! coordinates. The part-assignment statistic is [`overlap_ratio`], which is
//! normalized by the *part* box area and is therefore not symmetric.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("box coordinates must be finite, got ({0}, {1}, {2}, {3})")]
    NonFinite(f64, f64, f64, f64),
    #[error("inverted box: min ({0}, {1}) exceeds max ({2}, {3})")]
    Inverted(f64, f64, f64, f64),
    #[error("negative width or height ({0}, {1})")]
    NegativeExtent(f64, f64),
    #[error("part box has zero area and cannot be scored")]
    DegeneratePart,
    #[error("cannot enclose an empty list of boxes")]
    EmptyEnclosure,
    #[error("detection label is empty")]
    EmptyLabel,
    #[error("confidence {0} outside [0, 1]")]
    ConfidenceOutOfRange(f64),
}

/// Corner-form axis-aligned bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[T; 4]", into = "[T; 4]")]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct BoundingBox<T> {
    x_min: T,
    y_min: T,
    x_max: T,
    y_max: T,
}

impl<T: Scalar> BoundingBox<T> {
    pub fn new(x_min: T, y_min: T, x_max: T, y_max: T) -> Result<Self, GeometryError> {
        let f = |v: T| v.to_f64_lossy();
        if ![x_min, y_min, x_max, y_max].iter().all(|v| v.is_finite()) {
            return Err(GeometryError::NonFinite(f(x_min), f(y_min), f(x_max), f(y_max)));
        }
        if x_min > x_max || y_min > y_max {
            return Err(GeometryError::Inverted(f(x_min), f(y_min), f(x_max), f(y_max)));
        }
        Ok(Self { x_min, y_min, x_max, y_max })
    }

    /// Builds a box from top-left corner plus width and height.
    pub fn from_xywh(x: T, y: T, width: T, height: T) -> Result<Self, GeometryError> {
        if width < T::zero() || height < T::zero() {
            return Err(GeometryError::NegativeExtent(width.to_f64_lossy(), height.to_f64_lossy()));
        }
        Self::new(x, y, x + width, y + height)
    }

    pub fn x_min(&self) -> T {
        self.x_min
    }
    pub fn y_min(&self) -> T {
        self.y_min
    }
    pub fn x_max(&self) -> T {
        self.x_max
    }
    pub fn y_max(&self) -> T {
        self.y_max
    }

    pub fn width(&self) -> T {
        self.x_max - self.x_min
    }

    pub fn height(&self) -> T {
        self.y_max - self.y_min
    }

    pub fn area(&self) -> T {
        self.width() * self.height()
    }

    pub fn is_degenerate(&self) -> bool {
        self.area() == T::zero()
    }

    /// Area of the overlap region, zero when the boxes are disjoint.
    pub fn intersection_area(&self, other: &Self) -> T {
        let w = self.x_max.min(other.x_max) - self.x_min.max(other.x_min);
        let h = self.y_max.min(other.y_max) - self.y_min.max(other.y_min);
        if w <= T::zero() || h <= T::zero() {
            T::zero()
        } else {
            w * h
        }
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.x_min <= other.x_min
            && self.y_min <= other.y_min
            && self.x_max >= other.x_max
            && self.y_max >= other.y_max
    }

    pub fn to_array(self) -> [T; 4] {
        [self.x_min, self.y_min, self.x_max, self.y_max]
    }
}

impl<T: Scalar> TryFrom<[T; 4]> for BoundingBox<T> {
    type Error = GeometryError;

    fn try_from(v: [T; 4]) -> Result<Self, Self::Error> {
        Self::new(v[0], v[1], v[2], v[3])
    }
}

impl<T: Scalar> From<BoundingBox<T>> for [T; 4] {
    fn from(b: BoundingBox<T>) -> Self {
        b.to_array()
    }
}

pub fn area<T: Scalar>(b: &BoundingBox<T>) -> T {
    b.area()
}

pub fn intersection_area<T: Scalar>(a: &BoundingBox<T>, b: &BoundingBox<T>) -> T {
    a.intersection_area(b)
}

/// Fraction of `part_box` covered by `key_box`.
///
/// Fails on a zero-area part; such detections are unusable as parts.
pub fn overlap_ratio<T: Scalar>(
    part_box: &BoundingBox<T>,
    key_box: &BoundingBox<T>,
) -> Result<T, GeometryError> {
    let denom = part_box.area();
    if denom <= T::zero() {
        return Err(GeometryError::DegeneratePart);
    }
    let ratio = key_box.intersection_area(part_box) / denom;
    Ok(ratio.min(T::one()))
}

/// Smallest box containing every input box.
pub fn enclosing_box<T: Scalar>(boxes: &[BoundingBox<T>]) -> Result<BoundingBox<T>, GeometryError> {
    let (first, rest) = boxes.split_first().ok_or(GeometryError::EmptyEnclosure)?;
    Ok(rest.iter().fold(*first, |acc, b| BoundingBox {
        x_min: acc.x_min.min(b.x_min),
        y_min: acc.y_min.min(b.y_min),
        x_max: acc.x_max.max(b.x_max),
        y_max: acc.y_max.max(b.y_max),
    }))
}

/// One detector region: box, object label, optional attribute, confidence.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(bound(serialize = "T: Scalar + Serialize", deserialize = "T: Scalar + Deserialize<'de>"))]
pub struct Detection<T> {
    #[serde(rename = "box")]
    pub bbox: BoundingBox<T>,
    pub object_label: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub attribute_label: Option<String>,
    pub confidence: T,
}

impl<T: Scalar> Detection<T> {
    /// Validates and lowercases labels. Blank attributes become `None`.
    pub fn new(
        bbox: BoundingBox<T>,
        object_label: &str,
        attribute_label: Option<&str>,
        confidence: T,
    ) -> Result<Self, GeometryError> {
        let object_label = object_label.trim().to_lowercase();
        if object_label.is_empty() {
            return Err(GeometryError::EmptyLabel);
        }
        if !(confidence >= T::zero() && confidence <= T::one()) {
            return Err(GeometryError::ConfidenceOutOfRange(confidence.to_f64_lossy()));
        }
        let attribute_label = attribute_label
            .map(|a| a.trim().to_lowercase())
            .filter(|a| !a.is_empty());
        Ok(Self { bbox, object_label, attribute_label, confidence })
    }
}
