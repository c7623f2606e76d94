//! Batch construction of paired underwater / clean datasets from RGB-D
//! sources.
//!
//! A run has two phases. [`plan_dataset`] decides everything up front from the
//! configuration and master seed: which sources are used, which split each
//! lands in, the sampled surface depth and green ambient, and the
//! augmentation. [`generate_dataset`] then renders each planned record
//! independently and writes the files plus `manifest.json`. Because every
//! random draw comes from a per-item substream, output bytes do not depend on
//! the number of workers.
//!
//! Input layout: `<id>.png` (8-bit RGB) next to `<id>.depth.png` (8/16-bit
//! grayscale) or `<id>.depth.pgm`, with raw depth code × `depth_scale` =
//! meters.
//!
//! Output layout: `<out>/<water_type>/<split>/<id>.png` (synthesized),
//! `<id>.gt.png` (resized clean ground truth), `<id>.depth.png` (rescaled
//! depth, 16-bit millimetres) and `<out>/manifest.json`.

mod augment;
mod depth;
mod manifest;
mod resize;
mod sampling;

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use rand::seq::{IndexedRandom, SliceRandom};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

pub use self::augment::{augment, augment_depth, AugmentOp};
pub use self::depth::rescale_depth;
pub use self::manifest::{read_manifest, write_manifest, Manifest, MANIFEST_SCHEMA_VERSION};
pub use self::resize::{resize_bilinear, resize_nearest};
pub use self::sampling::{derive_seed, item_rng, sample_params, StreamPurpose};

use crate::ambient::{ambient_light_bounded, AmbientLight, DEFAULT_GREEN_RANGE, DEFAULT_MAX_SURFACE_DEPTH};
use crate::formation::{synthesize_with_ambient, FormationError, SynthesisParams, DEFAULT_DEPTH_RANGE};
use crate::image::{self, DepthMap, ImageError, RgbImage};
use crate::water::{CoefficientTable, WaterType};

/// Attempts per item when `resample_clamped` is set.
const MAX_RESAMPLE_ATTEMPTS: usize = 16;

#[derive(Debug, thiserror::Error)]
pub enum PipelineError {
    #[error("invalid dataset configuration: {0}")]
    Config(String),
    #[error("degenerate depth map: {0}")]
    DegenerateDepth(String),
    #[error("rotation needs a square image, got {width}x{height}")]
    NonSquare { width: usize, height: usize },
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error(transparent)]
    Image(#[from] ImageError),
    #[error(transparent)]
    Formation(#[from] FormationError),
    #[error("manifest schema version {found} is not supported (expected {expected})")]
    SchemaVersionMismatch { found: u64, expected: u32 },
    #[error("malformed manifest: {0}")]
    Manifest(String),
    #[error("worker pool: {0}")]
    Pool(String),
}

impl PipelineError {
    pub(crate) fn io(path: &Path, source: std::io::Error) -> Self {
        PipelineError::Io { path: path.to_path_buf(), source }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
    /// Synthesized but kept out of train/test (excluded water types or
    /// sources beyond the split counts).
    Unsplit,
}

impl Split {
    pub fn dir_name(self) -> &'static str {
        match self {
            Split::Train => "train",
            Split::Test => "test",
            Split::Unsplit => "unsplit",
        }
    }
}

/// Normalization a loader should apply to the exported unit-interval files.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Normalization {
    #[default]
    UnitInterval,
    /// Map [0, 1] onto [-1, 1] (see [`RgbImage::to_symmetric_unit`]).
    SymmetricUnit,
}

/// Dataset generation settings; the JSON form uses these field names.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct DatasetConfig {
    pub input_dir: PathBuf,
    pub output_dir: PathBuf,
    pub water_types: Vec<WaterType>,
    pub images_per_type: usize,
    /// `(train_count, test_count)` per water type.
    pub split: (usize, usize),
    /// Water types synthesized into their own subset but never assigned to
    /// train or test.
    pub excluded_from_splits: Vec<WaterType>,
    /// Object-camera distance range `(d_min, d_max)` in meters.
    pub depth_range: (f64, f64),
    /// Surface-object distance range in meters.
    #[serde(rename = "D_range")]
    pub surface_depth_range: (f64, f64),
    #[serde(rename = "Bg_range")]
    pub green_range: (f64, f64),
    /// `(width, height)` every source is resized to.
    pub target_size: (usize, usize),
    pub master_seed: u64,
    pub augment: bool,
    pub normalize_export: Normalization,
    /// Meters per raw depth code.
    pub depth_scale: f64,
    /// Redraw `D` and `B_g` when the ambient triple needed clamping.
    pub resample_clamped: bool,
}

impl Default for DatasetConfig {
    fn default() -> Self {
        DatasetConfig {
            input_dir: PathBuf::new(),
            output_dir: PathBuf::new(),
            water_types: WaterType::ALL.to_vec(),
            images_per_type: 1000,
            split: (700, 300),
            excluded_from_splits: vec![WaterType::C9],
            depth_range: DEFAULT_DEPTH_RANGE,
            surface_depth_range: (0.0, DEFAULT_MAX_SURFACE_DEPTH),
            green_range: DEFAULT_GREEN_RANGE,
            target_size: (256, 256),
            master_seed: 0,
            augment: false,
            normalize_export: Normalization::UnitInterval,
            depth_scale: 1e-3,
            resample_clamped: false,
        }
    }
}

impl DatasetConfig {
    pub fn from_json_str(text: &str) -> Result<Self, PipelineError> {
        serde_json::from_str(text).map_err(|e| PipelineError::Config(e.to_string()))
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, PipelineError> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| PipelineError::io(path, e))?;
        Self::from_json_str(&text)
    }

    pub fn validate(&self) -> Result<(), PipelineError> {
        let fail = |msg: &str| Err(PipelineError::Config(msg.to_string()));
        if self.water_types.is_empty() {
            return fail("water_types is empty");
        }
        let mut seen = self.water_types.clone();
        seen.sort();
        seen.dedup();
        if seen.len() != self.water_types.len() {
            return fail("water_types contains duplicates");
        }
        if self.images_per_type == 0 {
            return fail("images_per_type must be positive");
        }
        if self.split.0 + self.split.1 > self.images_per_type {
            return fail("train_count + test_count exceeds images_per_type");
        }
        let (d_lo, d_hi) = self.depth_range;
        if !(d_lo > 0.0 && d_lo < d_hi && d_hi.is_finite()) {
            return fail("depth_range must satisfy 0 < d_min < d_max");
        }
        let (s_lo, s_hi) = self.surface_depth_range;
        if !(s_lo >= 0.0 && s_lo <= s_hi && s_hi.is_finite()) {
            return fail("D_range must satisfy 0 <= lo <= hi");
        }
        let (g_lo, g_hi) = self.green_range;
        if !(g_lo > 0.0 && g_lo <= g_hi && g_hi <= 1.0) {
            return fail("Bg_range must lie within (0, 1]");
        }
        if self.target_size.0 == 0 || self.target_size.1 == 0 {
            return fail("target_size must be nonzero");
        }
        if self.augment && self.target_size.0 != self.target_size.1 {
            return fail("augmentation rotates images and needs a square target_size");
        }
        if !(self.depth_scale > 0.0 && self.depth_scale.is_finite()) {
            return fail("depth_scale must be positive");
        }
        Ok(())
    }
}

/// Relative (to the output root) paths of one item's files, `/`-separated.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutputPaths {
    pub image: String,
    pub ground_truth: String,
    pub depth: String,
}

/// Everything needed to re-render one synthesized image bit-identically.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SynthesisRecord {
    pub source_id: String,
    pub water_type: WaterType,
    pub split: Split,
    /// Position of the source in the selected list; keys the random substreams.
    pub image_index: u64,
    #[serde(rename = "D")]
    pub surface_depth: f64,
    #[serde(rename = "B_g")]
    pub green: f64,
    /// `[B_r, B_g, B_b]` after clamping.
    pub ambient: [f64; 3],
    pub clamped: bool,
    pub depth_range: (f64, f64),
    pub depth_scale: f64,
    pub target_size: (usize, usize),
    pub seed: u64,
    pub augmentation: Option<AugmentOp>,
    pub paths: OutputPaths,
}

impl SynthesisRecord {
    pub fn params(&self) -> SynthesisParams<f64> {
        SynthesisParams {
            water_type: self.water_type,
            surface_depth: self.surface_depth,
            green: self.green,
            depth_range: self.depth_range,
            seed: self.seed,
        }
    }

    pub fn ambient_light(&self) -> AmbientLight<f64> {
        let [r, g, b] = self.ambient;
        AmbientLight { r, g, b, clamped: self.clamped }
    }
}

/// A clean image with its raw depth file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourcePair {
    pub id: String,
    pub image: PathBuf,
    pub depth: PathBuf,
}

/// Finds `<id>.png` files that have a `<id>.depth.png` or `<id>.depth.pgm`
/// partner, sorted by id.
pub fn discover_sources(dir: impl AsRef<Path>) -> Result<Vec<SourcePair>, PipelineError> {
    let dir = dir.as_ref();
    let entries = std::fs::read_dir(dir).map_err(|e| PipelineError::io(dir, e))?;
    let mut pairs = Vec::new();
    for entry in entries {
        let path = entry.map_err(|e| PipelineError::io(dir, e))?.path();
        let Some(name) = path.file_name().and_then(|n| n.to_str()) else { continue };
        let Some(id) = name.strip_suffix(".png") else { continue };
        if id.ends_with(".depth") || id.ends_with(".gt") {
            continue;
        }
        let depth = ["depth.png", "depth.pgm"].iter().map(|ext| dir.join(format!("{id}.{ext}"))).find(|p| p.is_file());
        match depth {
            Some(depth) => pairs.push(SourcePair { id: id.to_string(), image: path.clone(), depth }),
            None => log::warn!("{}: no matching depth file, skipped", path.display()),
        }
    }
    pairs.sort_by(|a, b| a.id.cmp(&b.id));
    Ok(pairs)
}

/// Picks `images_per_type` sources from `source_ids` using the selection
/// substream. The returned order is the item index order.
pub fn select_sources(config: &DatasetConfig, source_ids: &[String]) -> Result<Vec<String>, PipelineError> {
    let mut ids = source_ids.to_vec();
    ids.sort();
    ids.dedup();
    if ids.len() < config.images_per_type {
        return Err(PipelineError::Config(format!(
            "{} sources available but images_per_type is {}",
            ids.len(),
            config.images_per_type
        )));
    }
    let seed = derive_seed(config.master_seed, 0, None, StreamPurpose::Selection);
    ids.shuffle(&mut item_rng(seed));
    ids.truncate(config.images_per_type);
    Ok(ids)
}

fn split_for(config: &DatasetConfig, water_type: WaterType, index: usize) -> Split {
    let (train, test) = config.split;
    if config.excluded_from_splits.contains(&water_type) {
        Split::Unsplit
    } else if index < train {
        Split::Train
    } else if index < train + test {
        Split::Test
    } else {
        Split::Unsplit
    }
}

/// Decides every record of a run without touching pixel data.
///
/// All water types share the same selected sources and the same split of
/// those sources, so a clean image never appears in train under one water
/// type and in test under another.
pub fn plan_dataset(
    config: &DatasetConfig,
    table: &CoefficientTable<f64>,
    source_ids: &[String],
) -> Result<Vec<SynthesisRecord>, PipelineError> {
    config.validate()?;
    let selected = select_sources(config, source_ids)?;
    let mut records = Vec::with_capacity(selected.len() * config.water_types.len());
    for &water_type in &config.water_types {
        let coeffs = table.get(water_type);
        for (index, id) in selected.iter().enumerate() {
            let image_index = index as u64;
            let split = split_for(config, water_type, index);

            let seed = derive_seed(config.master_seed, image_index, Some(water_type), StreamPurpose::Params);
            let mut rng = item_rng(seed);
            let mut attempts = 0;
            let (params, ambient) = loop {
                attempts += 1;
                let params = sampling::draw_params(&mut rng, seed, water_type, config);
                let ambient = ambient_light_bounded(coeffs, params.surface_depth, params.green, f64::INFINITY)
                    .map_err(FormationError::from)?;
                if !(ambient.clamped && config.resample_clamped) || attempts == MAX_RESAMPLE_ATTEMPTS {
                    break (params, ambient);
                }
            };

            let augmentation = if config.augment && split == Split::Train {
                let aug_seed = derive_seed(config.master_seed, image_index, Some(water_type), StreamPurpose::Augment);
                let choices = [
                    None,
                    Some(AugmentOp::Rot90),
                    Some(AugmentOp::Rot180),
                    Some(AugmentOp::Rot270),
                    Some(AugmentOp::HFlip),
                ];
                *choices.choose(&mut item_rng(aug_seed)).expect("nonempty")
            } else {
                None
            };

            let stem = format!("{}/{}/{}", water_type.name(), split.dir_name(), id);
            records.push(SynthesisRecord {
                source_id: id.clone(),
                water_type,
                split,
                image_index,
                surface_depth: params.surface_depth,
                green: params.green,
                ambient: ambient.as_array(),
                clamped: ambient.clamped,
                depth_range: config.depth_range,
                depth_scale: config.depth_scale,
                target_size: config.target_size,
                seed,
                augmentation,
                paths: OutputPaths {
                    image: format!("{stem}.png"),
                    ground_truth: format!("{stem}.gt.png"),
                    depth: format!("{stem}.depth.png"),
                },
            });
        }
    }
    Ok(records)
}

/// A source resized to the target size, before depth rescaling.
#[derive(Debug, Clone)]
pub struct PreparedSource {
    pub clean: RgbImage<f64>,
    pub raw_depth: DepthMap<f64>,
}

pub fn prepare_source(
    pair: &SourcePair,
    (width, height): (usize, usize),
    depth_scale: f64,
) -> Result<PreparedSource, PipelineError> {
    let clean = image::load_rgb(&pair.image)?;
    let raw_depth = image::load_depth(&pair.depth, depth_scale)?;
    Ok(PreparedSource {
        clean: resize_bilinear(&clean, width, height),
        raw_depth: resize_nearest(&raw_depth, width, height),
    })
}

/// The three images written for one record, at working precision.
#[derive(Debug, Clone)]
pub struct RenderedItem {
    pub observed: RgbImage<f64>,
    pub clean: RgbImage<f64>,
    pub depth: DepthMap<f64>,
}

pub fn render_record(
    source: &PreparedSource,
    record: &SynthesisRecord,
    table: &CoefficientTable<f64>,
) -> Result<RenderedItem, PipelineError> {
    let (lo, hi) = record.depth_range;
    let mut depth = rescale_depth(&source.raw_depth, lo, hi)?;
    let mut clean = source.clean.clone();
    if let Some(op) = record.augmentation {
        clean = augment(&clean, op)?;
        depth = augment_depth(&depth, op)?;
    }
    let coeffs = table.get(record.water_type);
    record.params().validate()?;
    let observed = synthesize_with_ambient(&clean, &depth, coeffs, record.surface_depth, &record.ambient_light());
    Ok(RenderedItem { observed, clean, depth })
}

/// Re-renders a record from its source files.
pub fn resynthesize(
    record: &SynthesisRecord,
    pair: &SourcePair,
    table: &CoefficientTable<f64>,
) -> Result<RenderedItem, PipelineError> {
    let source = prepare_source(pair, record.target_size, record.depth_scale)?;
    render_record(&source, record, table)
}

fn write_item(root: &Path, record: &SynthesisRecord, item: &RenderedItem) -> Result<(), PipelineError> {
    let image_path = root.join(&record.paths.image);
    if let Some(parent) = image_path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| PipelineError::io(parent, e))?;
    }
    image::save_rgb_png(&item.observed, &image_path)?;
    image::save_rgb_png(&item.clean, root.join(&record.paths.ground_truth))?;
    image::save_depth_png(&item.depth, root.join(&record.paths.depth))?;
    Ok(())
}

/// A record that could not be produced; the rest of the batch continues.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ItemFailure {
    pub source_id: String,
    pub water_type: Option<WaterType>,
    pub error: String,
}

#[derive(Debug, Clone)]
pub struct DatasetOutcome {
    pub records: Vec<SynthesisRecord>,
    pub failures: Vec<ItemFailure>,
    pub manifest_path: PathBuf,
}

pub const MANIFEST_FILE: &str = "manifest.json";

/// Plans, renders and writes a dataset, then writes the manifest of the
/// records that succeeded. `workers == 0` uses the default pool size.
pub fn generate_dataset(
    config: &DatasetConfig,
    table: &CoefficientTable<f64>,
    workers: usize,
) -> Result<DatasetOutcome, PipelineError> {
    config.validate()?;
    let sources = discover_sources(&config.input_dir)?;
    let ids: Vec<String> = sources.iter().map(|s| s.id.clone()).collect();
    let records = plan_dataset(config, table, &ids)?;
    let root = config.output_dir.as_path();
    std::fs::create_dir_all(root).map_err(|e| PipelineError::io(root, e))?;

    let by_id: BTreeMap<&str, &SourcePair> = sources.iter().map(|s| (s.id.as_str(), s)).collect();
    // one task per source so each file is decoded and resized once
    let mut groups: BTreeMap<&str, Vec<usize>> = BTreeMap::new();
    for (i, r) in records.iter().enumerate() {
        groups.entry(r.source_id.as_str()).or_default().push(i);
    }
    let groups: Vec<(&str, Vec<usize>)> = groups.into_iter().collect();

    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(workers).build().map_err(|e| PipelineError::Pool(e.to_string()))?;
    let results: Vec<(usize, Result<(), String>)> = pool.install(|| {
        groups
            .par_iter()
            .flat_map_iter(|(id, indices)| {
                let prepared = prepare_source(by_id[id], config.target_size, config.depth_scale);
                indices
                    .iter()
                    .map(|&i| {
                        let outcome = match &prepared {
                            Err(e) => Err(e.to_string()),
                            Ok(src) => render_record(src, &records[i], table)
                                .and_then(|item| write_item(root, &records[i], &item))
                                .map_err(|e| e.to_string()),
                        };
                        (i, outcome)
                    })
                    .collect::<Vec<_>>()
            })
            .collect()
    });

    let mut status: Vec<Option<Result<(), String>>> = vec![None; records.len()];
    for (i, r) in results {
        status[i] = Some(r);
    }
    let mut ok = Vec::with_capacity(records.len());
    let mut failures = Vec::new();
    for (record, st) in records.into_iter().zip(status) {
        match st.expect("every record processed") {
            Ok(()) => ok.push(record),
            Err(error) => {
                log::error!("{} [{}]: {error}", record.source_id, record.water_type);
                failures.push(ItemFailure { source_id: record.source_id, water_type: Some(record.water_type), error });
            }
        }
    }

    let manifest = Manifest::new(config.normalize_export, table.provenance(), ok);
    let manifest_path = root.join(MANIFEST_FILE);
    write_manifest(&manifest, &manifest_path)?;
    Ok(DatasetOutcome { records: manifest.records, failures, manifest_path })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::water::bundled_table;

    fn ids(n: usize) -> Vec<String> {
        (0..n).map(|i| format!("src{i:05}")).collect()
    }

    #[test]
    fn config_json_uses_documented_names() {
        let cfg = DatasetConfig::from_json_str(
            r#"{"input_dir": "in", "output_dir": "out", "water_types": ["I", "3C"], "images_per_type": 4,
                "split": [2, 1], "D_range": [0, 3], "Bg_range": [0.6, 0.9], "target_size": [32, 32],
                "master_seed": 9, "augment": true, "normalize_export": "symmetric-unit"}"#,
        )
        .unwrap();
        assert_eq!(cfg.water_types, vec![WaterType::I, WaterType::C3]);
        assert_eq!(cfg.surface_depth_range, (0.0, 3.0));
        assert_eq!(cfg.normalize_export, Normalization::SymmetricUnit);
        assert_eq!(cfg.depth_range, (0.25, 20.0));
        cfg.validate().unwrap();
        assert!(DatasetConfig::from_json_str(r#"{"bogus": 1}"#).is_err());
    }

    #[test]
    fn invalid_configs_are_rejected_up_front() {
        let base = DatasetConfig::default();
        let cases = [
            DatasetConfig { split: (800, 300), ..base.clone() },
            DatasetConfig { water_types: vec![], ..base.clone() },
            DatasetConfig { water_types: vec![WaterType::I, WaterType::I], ..base.clone() },
            DatasetConfig { green_range: (0.5, 1.2), ..base.clone() },
            DatasetConfig { depth_range: (0.0, 20.0), ..base.clone() },
            DatasetConfig { augment: true, target_size: (256, 128), ..base.clone() },
        ];
        for cfg in cases {
            assert!(matches!(cfg.validate(), Err(PipelineError::Config(_))), "{cfg:?}");
        }
        let table = bundled_table();
        assert!(matches!(plan_dataset(&base, &table, &ids(10)), Err(PipelineError::Config(_))));
    }

    #[test]
    fn plan_counts_and_splits() {
        let cfg = DatasetConfig { images_per_type: 10, split: (6, 3), ..DatasetConfig::default() };
        let records = plan_dataset(&cfg, &bundled_table(), &ids(25)).unwrap();
        assert_eq!(records.len(), 100);
        for t in WaterType::ALL {
            let of_type: Vec<_> = records.iter().filter(|r| r.water_type == t).collect();
            let count = |s| of_type.iter().filter(|r| r.split == s).count();
            if t == WaterType::C9 {
                assert_eq!(count(Split::Unsplit), 10);
            } else {
                assert_eq!((count(Split::Train), count(Split::Test), count(Split::Unsplit)), (6, 3, 1));
            }
        }
        // same sources and split for every water type
        let train_i: Vec<_> = records
            .iter()
            .filter(|r| r.water_type == WaterType::I && r.split == Split::Train)
            .map(|r| &r.source_id)
            .collect();
        let train_7c: Vec<_> = records
            .iter()
            .filter(|r| r.water_type == WaterType::C7 && r.split == Split::Train)
            .map(|r| &r.source_id)
            .collect();
        assert_eq!(train_i, train_7c);
    }

    #[test]
    fn plan_is_deterministic_and_seed_sensitive() {
        let cfg = DatasetConfig { images_per_type: 5, split: (3, 2), augment: true, ..DatasetConfig::default() };
        let table = bundled_table();
        let a = plan_dataset(&cfg, &table, &ids(8)).unwrap();
        let mut shuffled = ids(8);
        shuffled.reverse();
        assert_eq!(a, plan_dataset(&cfg, &table, &shuffled).unwrap());
        let b = plan_dataset(&DatasetConfig { master_seed: 1, ..cfg.clone() }, &table, &ids(8)).unwrap();
        assert_ne!(a, b);
        assert!(a.iter().filter(|r| r.split != Split::Train).all(|r| r.augmentation.is_none()));
    }

    #[test]
    fn resampling_avoids_clamped_ambient_when_possible() {
        let table = bundled_table();
        let cfg = DatasetConfig {
            images_per_type: 50,
            split: (50, 0),
            water_types: vec![WaterType::C7],
            ..DatasetConfig::default()
        };
        let plain = plan_dataset(&cfg, &table, &ids(50)).unwrap();
        assert!(plain.iter().any(|r| r.clamped), "expected some clamped ambient draws in turbid coastal water");
        let resampled = plan_dataset(&DatasetConfig { resample_clamped: true, ..cfg }, &table, &ids(50)).unwrap();
        assert!(resampled.iter().filter(|r| r.clamped).count() < plain.iter().filter(|r| r.clamped).count());
        assert!(resampled.iter().all(|r| r.ambient.iter().all(|&v| v > 0.0 && v <= 1.0)));
    }
}
