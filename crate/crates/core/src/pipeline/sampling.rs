//! Per-item random substreams.
//!
//! Every item draws from its own generator whose seed is a hash of
//! `(master_seed, image_index, water_type, purpose)`, so results never depend
//! on processing order or worker count.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formation::SynthesisParams;
use crate::pipeline::DatasetConfig;
use crate::water::WaterType;

/// What a substream is used for; keeps streams for different draws disjoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u64)]
pub enum StreamPurpose {
    Params = 1,
    Augment = 2,
    Selection = 3,
}

#[inline]
fn mix64(mut z: u64) -> u64 {
    // splitmix64 finalizer
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub fn derive_seed(master_seed: u64, image_index: u64, water_type: Option<WaterType>, purpose: StreamPurpose) -> u64 {
    const GOLDEN: u64 = 0x9e37_79b9_7f4a_7c15;
    let type_key = water_type.map_or(u64::MAX, WaterType::ordinal);
    [image_index, type_key, purpose as u64]
        .into_iter()
        .fold(mix64(master_seed.wrapping_add(GOLDEN)), |h, k| mix64(h ^ k.wrapping_add(GOLDEN)))
}

pub fn item_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub(crate) fn draw_params<R: Rng>(
    rng: &mut R,
    seed: u64,
    water_type: WaterType,
    config: &DatasetConfig,
) -> SynthesisParams<f64> {
    let (d_lo, d_hi) = config.surface_depth_range;
    let (g_lo, g_hi) = config.green_range;
    let surface_depth = rng.random_range(d_lo..=d_hi);
    let green = rng.random_range(g_lo..=g_hi);
    SynthesisParams { water_type, surface_depth, green, depth_range: config.depth_range, seed }
}

/// Samples `D` and `B_g` for one `(image, water type)` item.
pub fn sample_params(
    master_seed: u64,
    image_index: u64,
    water_type: WaterType,
    config: &DatasetConfig,
) -> SynthesisParams<f64> {
    let seed = derive_seed(master_seed, image_index, Some(water_type), StreamPurpose::Params);
    draw_params(&mut item_rng(seed), seed, water_type, config)
}
