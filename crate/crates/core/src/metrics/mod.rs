//! Quality metrics: L1 reconstruction error, PSNR and SSIM against a
//! reference, and the no-reference UIQM.

mod ssim;
mod uiqm;

use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

pub use self::ssim::{ssim, SSIM_K1, SSIM_K2, SSIM_RADIUS, SSIM_SIGMA, SSIM_WINDOW};
pub use self::uiqm::{
    uicm, uiconm, uiqm, uiqm_components, uism, UiqmComponents, UICM_ALPHA, UIQM_BLOCK, UIQM_C1, UIQM_C2, UIQM_C3,
    UISM_CHANNEL_WEIGHTS,
};

use crate::image::{self, RgbImage};
use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error)]
pub enum MetricError {
    #[error("image sizes differ: {0:?} vs {1:?}")]
    DimensionMismatch((usize, usize), (usize, usize)),
    #[error("image {width}x{height} is smaller than the {min}-pixel minimum")]
    ImageTooSmall { width: usize, height: usize, min: usize },
    #[error(transparent)]
    Image(#[from] image::ImageError),
    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

pub(crate) fn check_same_size<T: Scalar>(a: &RgbImage<T>, b: &RgbImage<T>) -> Result<(), MetricError> {
    if a.dimensions() != b.dimensions() {
        return Err(MetricError::DimensionMismatch(a.dimensions(), b.dimensions()));
    }
    Ok(())
}

/// Mean absolute difference over all pixels and channels.
pub fn l1_loss<T: Scalar>(out: &RgbImage<T>, gt: &RgbImage<T>) -> Result<T, MetricError> {
    check_same_size(out, gt)?;
    let sum = out.data().iter().zip(gt.data()).fold(T::zero(), |acc, (&a, &b)| acc + (a - b).abs());
    Ok(sum / T::from_usize_lossy(out.data().len()))
}

pub fn mse<T: Scalar>(out: &RgbImage<T>, gt: &RgbImage<T>) -> Result<T, MetricError> {
    check_same_size(out, gt)?;
    let sum = out.data().iter().zip(gt.data()).fold(T::zero(), |acc, (&a, &b)| acc + (a - b) * (a - b));
    Ok(sum / T::from_usize_lossy(out.data().len()))
}

/// Peak signal-to-noise ratio in dB with peak 1.0. Identical images give
/// `+∞`.
pub fn psnr<T: Scalar>(out: &RgbImage<T>, gt: &RgbImage<T>) -> Result<T, MetricError> {
    let err = mse(out, gt)?;
    if err == T::zero() {
        return Ok(T::infinity());
    }
    Ok(T::lit(10.0) * (T::one() / err).log10())
}

/// JSON form of a score that may be `+∞`: a number, or the string `"inf"`.
pub mod infinite_sentinel {
    use super::*;

    pub const SENTINEL: &str = "inf";

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            None => s.serialize_none(),
            Some(x) if x.is_infinite() && *x > 0.0 => s.serialize_str(SENTINEL),
            Some(x) => s.serialize_f64(*x),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Num(f64),
            Text(String),
        }
        match Option::<Repr>::deserialize(d)? {
            None => Ok(None),
            Some(Repr::Num(x)) => Ok(Some(x)),
            Some(Repr::Text(t)) if t == SENTINEL => Ok(Some(f64::INFINITY)),
            Some(Repr::Text(t)) => Err(serde::de::Error::custom(format!("unexpected PSNR value {t:?}"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ImageScores {
    pub name: String,
    #[serde(with = "infinite_sentinel", default)]
    pub psnr: Option<f64>,
    pub ssim: Option<f64>,
    pub l1: Option<f64>,
    pub uiqm: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MeanScores {
    /// `"inf"` if any image pair was identical.
    #[serde(with = "infinite_sentinel", default)]
    pub psnr: Option<f64>,
    pub ssim: Option<f64>,
    pub l1: Option<f64>,
    pub uiqm: Option<f64>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalFailure {
    pub name: String,
    pub error: String,
}

/// Per-image scores and directory means for one evaluation run.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub images: Vec<ImageScores>,
    pub mean: MeanScores,
    pub count: usize,
    pub failures: Vec<EvalFailure>,
}

impl MetricReport {
    pub fn from_scores(images: Vec<ImageScores>, failures: Vec<EvalFailure>) -> Self {
        fn mean(values: impl Iterator<Item = Option<f64>>) -> Option<f64> {
            let v: Vec<f64> = values.flatten().collect();
            (!v.is_empty()).then(|| v.iter().sum::<f64>() / v.len() as f64)
        }
        let mean = MeanScores {
            psnr: mean(images.iter().map(|s| s.psnr)),
            ssim: mean(images.iter().map(|s| s.ssim)),
            l1: mean(images.iter().map(|s| s.l1)),
            uiqm: mean(images.iter().map(|s| s.uiqm)),
        };
        MetricReport { count: images.len(), images, mean, failures }
    }

    pub fn to_csv(&self) -> String {
        let fmt = |v: Option<f64>| match v {
            None => String::new(),
            Some(x) if x.is_infinite() => infinite_sentinel::SENTINEL.to_string(),
            Some(x) => x.to_string(),
        };
        let mut out = String::from("name,psnr,ssim,l1,uiqm\n");
        for s in &self.images {
            out.push_str(&format!("{},{},{},{},{}\n", s.name, fmt(s.psnr), fmt(s.ssim), fmt(s.l1), fmt(s.uiqm)));
        }
        out
    }
}

/// Scores one prediction, optionally against its reference.
pub fn score_image<T: Scalar>(
    name: &str,
    pred: &RgbImage<T>,
    reference: Option<&RgbImage<T>>,
) -> Result<ImageScores, MetricError> {
    let mut scores = ImageScores {
        name: name.to_string(),
        psnr: None,
        ssim: None,
        l1: None,
        uiqm: Some(uiqm(pred)?.to_f64_lossy()),
    };
    if let Some(gt) = reference {
        scores.psnr = Some(psnr(pred, gt)?.to_f64_lossy());
        scores.ssim = Some(ssim(pred, gt)?.to_f64_lossy());
        scores.l1 = Some(l1_loss(pred, gt)?.to_f64_lossy());
    }
    Ok(scores)
}

fn list_pngs(dir: &Path) -> Result<Vec<String>, MetricError> {
    let io = |e| MetricError::Io { path: dir.to_path_buf(), source: e };
    let mut names = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(io)? {
        let path = entry.map_err(io)?.path();
        if path.is_file() && path.extension().is_some_and(|e| e.eq_ignore_ascii_case("png")) {
            if let Some(name) = path.file_name().and_then(|n| n.to_str()) {
                names.push(name.to_string());
            }
        }
    }
    names.sort();
    Ok(names)
}

/// Scores every PNG in `pred_dir`, pairing by file name with `ref_dir` when
/// given. Images are processed in parallel; results keep file-name order.
pub fn evaluate_dirs(pred_dir: &Path, ref_dir: Option<&Path>) -> Result<MetricReport, MetricError> {
    let names = list_pngs(pred_dir)?;
    let results: Vec<Result<ImageScores, EvalFailure>> = names
        .par_iter()
        .map(|name| {
            let run = || -> Result<ImageScores, MetricError> {
                let pred = image::load_rgb(pred_dir.join(name))?;
                let reference = ref_dir.map(|d| image::load_rgb(d.join(name))).transpose()?;
                score_image(name, &pred, reference.as_ref())
            };
            run().map_err(|e| EvalFailure { name: name.clone(), error: e.to_string() })
        })
        .collect();
    let (mut images, mut failures) = (Vec::new(), Vec::new());
    for r in results {
        match r {
            Ok(s) => images.push(s),
            Err(f) => failures.push(f),
        }
    }
    Ok(MetricReport::from_scores(images, failures))
}
