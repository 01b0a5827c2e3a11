//! Cross-supervised object detection on synthetic multi-object scenes.
//!
//! The crate trains a shared-backbone network with two heads: a MIL-style
//! recognition head learned from image-level labels on novel classes, and a
//! fully supervised detection head learned from instance boxes on base
//! classes plus pseudo boxes on novel classes. A spatial correlation module
//! converts high-confidence recognition boxes into a class-agnostic heatmap
//! and detects refined pseudo ground-truth boxes on it.
//!
//! All numeric code is generic over [`Scalar`] (`f32` or `f64`); the CLI and
//! the default pipeline use [`DefaultScalar`].

pub mod audit;
pub mod checkpoint;
pub mod config;
pub mod detection;
pub mod evaluator;
pub mod features;
pub mod geometry;
pub mod image_buf;
pub mod model;
pub mod nn;
pub mod proposals;
pub mod recognition;
pub mod scm;
pub mod synthdata;
pub mod trainer;

use ndarray::{LinalgScalar, ScalarOperand};
use num_traits::{Float, FromPrimitive, NumAssign};

/// Floating-point scalar the numeric pipeline is generic over.
///
/// Implemented for `f32` and `f64`. Random draws are always taken in `f64`
/// and converted, so both instantiations consume identical RNG streams.
pub trait Scalar:
    Float
    + FromPrimitive
    + NumAssign
    + ScalarOperand
    + LinalgScalar
    + std::iter::Sum
    + std::fmt::Debug
    + std::fmt::Display
    + std::fmt::LowerExp
    + Default
    + Send
    + Sync
    + 'static
{
    fn cast(v: f64) -> Self;
    fn to_f64(self) -> f64;
}

impl Scalar for f32 {
    fn cast(v: f64) -> Self {
        v as f32
    }
    fn to_f64(self) -> f64 {
        self as f64
    }
}

impl Scalar for f64 {
    fn cast(v: f64) -> Self {
        v
    }
    fn to_f64(self) -> f64 {
        self
    }
}

/// Scalar type used by the CLI and the published benchmark configuration.
pub type DefaultScalar = f32;

/// Box type at the default precision.
pub type BBoxF = geometry::BBox<DefaultScalar>;
/// Detection type at the default precision.
pub type DetectionF = geometry::Detection<DefaultScalar>;

pub use geometry::{BBox, Detection};
pub use synthdata::{ClassSplit, ImageSample, SceneRecipe};
