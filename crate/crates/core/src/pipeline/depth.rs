use crate::image::DepthMap;
use crate::pipeline::PipelineError;
use crate::scalar::Scalar;

/// Maps the per-image depth extent affinely onto `[d_min, d_max]`,
/// preserving order.
pub fn rescale_depth<T: Scalar>(raw: &DepthMap<T>, d_min: T, d_max: T) -> Result<DepthMap<T>, PipelineError> {
    if d_min.partial_cmp(&d_max) != Some(std::cmp::Ordering::Less) {
        return Err(PipelineError::Config(format!("depth range ({d_min}, {d_max}) is empty")));
    }
    if raw.data().iter().any(|v| !v.is_finite()) {
        return Err(PipelineError::DegenerateDepth("non-finite raw depth".into()));
    }
    let (lo, hi) = raw.min_max();
    if lo == hi {
        return Err(PipelineError::DegenerateDepth(format!("constant raw depth {lo}")));
    }
    let span = d_max - d_min;
    let data = raw
        .data()
        .iter()
        .map(|&v| {
            let t = (v - lo) / (hi - lo);
            (d_min + t * span).max(d_min).min(d_max)
        })
        .collect();
    Ok(DepthMap::new(raw.width(), raw.height(), data).expect("same shape"))
}
