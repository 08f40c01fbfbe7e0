use std::fmt::{Debug, Display};

use num_traits::{Float, FromPrimitive};

/// Real-valued scalar used for box coordinates, confidences and scores.
///
/// Implemented for `f32` and `f64`.
pub trait Scalar: Float + FromPrimitive + Debug + Display + Default + Send + Sync + 'static {
    /// Lossy conversion from `f64`, used for literal constants.
    fn lit(value: f64) -> Self {
        Self::from_f64(value).expect("f64 literal representable in scalar type")
    }

    fn to_f64_lossy(self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}

/// Descending comparison helper for finite scalars.
pub(crate) fn cmp_desc<T: Scalar>(a: T, b: T) -> std::cmp::Ordering {
    b.partial_cmp(&a).unwrap_or(std::cmp::Ordering::Equal)
}
