//! Exact pixel-permutation augmentations (right-angle rotations and flips).

use serde::{Deserialize, Serialize};

use crate::image::{DepthMap, RgbImage};
use crate::pipeline::PipelineError;
use crate::scalar::Scalar;
use crate::water::Channel;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum AugmentOp {
    /// Quarter turn clockwise.
    Rot90,
    Rot180,
    /// Three quarter turns clockwise.
    Rot270,
    /// Mirror left-right.
    HFlip,
    /// Mirror top-bottom. Not drawn by the dataset sampler.
    VFlip,
}

impl AugmentOp {
    /// Operations drawn for training items.
    pub const TRAINING: [AugmentOp; 4] = [AugmentOp::Rot90, AugmentOp::Rot180, AugmentOp::Rot270, AugmentOp::HFlip];

    fn is_rotation(self) -> bool {
        matches!(self, AugmentOp::Rot90 | AugmentOp::Rot180 | AugmentOp::Rot270)
    }

    /// Source coordinate feeding destination `(x, y)` of a `w`×`h` image.
    #[inline]
    fn source(self, x: usize, y: usize, w: usize, h: usize) -> (usize, usize) {
        match self {
            AugmentOp::Rot90 => (y, h - 1 - x),
            AugmentOp::Rot180 => (w - 1 - x, h - 1 - y),
            AugmentOp::Rot270 => (w - 1 - y, x),
            AugmentOp::HFlip => (w - 1 - x, y),
            AugmentOp::VFlip => (x, h - 1 - y),
        }
    }

    fn check(self, w: usize, h: usize) -> Result<(), PipelineError> {
        if self.is_rotation() && w != h {
            return Err(PipelineError::NonSquare { width: w, height: h });
        }
        Ok(())
    }
}

pub fn augment<T: Scalar>(image: &RgbImage<T>, op: AugmentOp) -> Result<RgbImage<T>, PipelineError> {
    let (w, h) = image.dimensions();
    op.check(w, h)?;
    Ok(RgbImage::from_fn(w, h, |x, y| {
        let (sx, sy) = op.source(x, y, w, h);
        Channel::ALL.map(|c| image.get(sx, sy, c))
    }))
}

pub fn augment_depth<T: Scalar>(depth: &DepthMap<T>, op: AugmentOp) -> Result<DepthMap<T>, PipelineError> {
    let (w, h) = depth.dimensions();
    op.check(w, h)?;
    Ok(DepthMap::from_fn(w, h, |x, y| {
        let (sx, sy) = op.source(x, y, w, h);
        depth.get(sx, sy)
    }))
}
