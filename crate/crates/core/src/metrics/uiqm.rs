//! Underwater image quality measure (UIQM), a no-reference score
//!
//! ```text
//! UIQM = 0.0282 · UICM + 0.2953 · UISM + 3.5753 · UIConM
//! ```
//!
//! with coefficients from Panetta, Gao & Agaian, "Human-Visual-System-Inspired
//! Underwater Image Quality Measures", IEEE J. Oceanic Eng. 41(3), 2016.
//!
//! Conventions (all computed on a 0–255 scale):
//! * UICM: opponent planes `RG = R − G`, `YB = (R + G)/2 − B`; asymmetric
//!   alpha-trimmed mean with α = 0.1 on each side, variance about that mean
//!   over all pixels; `−0.0268·√(μ²_RG + μ²_YB) + 0.1586·√(σ²_RG + σ²_YB)`.
//! * UISM: per channel, 3×3 Sobel magnitude (half-sample symmetric borders)
//!   times the channel, scored with EME; channels weighted 0.299 / 0.587 /
//!   0.114.
//! * UIConM: block contrast `(max − min)/(max + min)` over all three
//!   channels, entropy-weighted as `−mean(c·ln c)`; ordinary rather than
//!   PLIP arithmetic.
//! * Blocks: nominal 10×10, laid out as a mirror-symmetric partition of the
//!   whole image into near-equal blocks, so no pixels are dropped and the
//!   score is unchanged by flips. Blocks whose minimum is zero contribute 0.

use crate::image::RgbImage;
use crate::metrics::MetricError;
use crate::scalar::Scalar;
use crate::water::Channel;

pub const UIQM_C1: f64 = 0.0282;
pub const UIQM_C2: f64 = 0.2953;
pub const UIQM_C3: f64 = 3.5753;
pub const UICM_ALPHA: f64 = 0.1;
pub const UISM_CHANNEL_WEIGHTS: [f64; 3] = [0.299, 0.587, 0.114];
pub const UIQM_BLOCK: usize = 10;
/// Smallest side on which every component is defined (Sobel needs 3 pixels).
pub const UIQM_MIN_SIZE: usize = 3;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UiqmComponents<T> {
    pub uicm: T,
    pub uism: T,
    pub uiconm: T,
}

impl<T: Scalar> UiqmComponents<T> {
    pub fn score(&self) -> T {
        T::lit(UIQM_C1) * self.uicm + T::lit(UIQM_C2) * self.uism + T::lit(UIQM_C3) * self.uiconm
    }
}

/// Block boundaries along one axis of length `n`.
fn block_bounds(n: usize, block: usize) -> Vec<usize> {
    let mut k = (n / block).max(1);
    if k.is_multiple_of(2) && !n.is_multiple_of(2) {
        // an even count on an odd length would put the middle edge off center
        k -= 1;
    }
    (0..=k).map(|i| if 2 * i <= k { i * n / k } else { n - (k - i) * n / k }).collect()
}

fn for_each_block(w: usize, h: usize, mut f: impl FnMut(std::ops::Range<usize>, std::ops::Range<usize>)) -> usize {
    let xs = block_bounds(w, UIQM_BLOCK);
    let ys = block_bounds(h, UIQM_BLOCK);
    for yb in ys.windows(2) {
        for xb in xs.windows(2) {
            f(xb[0]..xb[1], yb[0]..yb[1]);
        }
    }
    (xs.len() - 1) * (ys.len() - 1)
}

fn trimmed_mean<T: Scalar>(mut values: Vec<T>, alpha: f64) -> T {
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let k = values.len();
    let lo = (alpha * k as f64).ceil() as usize;
    let hi = (alpha * k as f64).floor() as usize;
    let kept = &values[lo..k - hi];
    kept.iter().fold(T::zero(), |a, &v| a + v) / T::from_usize_lossy(kept.len())
}

fn variance_about<T: Scalar>(values: &[T], mean: T) -> T {
    values.iter().fold(T::zero(), |a, &v| a + (v - mean) * (v - mean)) / T::from_usize_lossy(values.len())
}

pub fn uicm<T: Scalar>(img: &RgbImage<T>) -> T {
    let s = T::lit(255.0);
    let half = T::lit(0.5);
    let (r, g, b) = (img.plane(Channel::R), img.plane(Channel::G), img.plane(Channel::B));
    let rg: Vec<T> = r.iter().zip(g).map(|(&r, &g)| (r - g) * s).collect();
    let yb: Vec<T> = r.iter().zip(g).zip(b).map(|((&r, &g), &b)| ((r + g) * half - b) * s).collect();
    let mu_rg = trimmed_mean(rg.clone(), UICM_ALPHA);
    let mu_yb = trimmed_mean(yb.clone(), UICM_ALPHA);
    let spread = (variance_about(&rg, mu_rg) + variance_about(&yb, mu_yb)).sqrt();
    T::lit(-0.0268) * mu_rg.hypot(mu_yb) + T::lit(0.1586) * spread
}

fn sobel_magnitude<T: Scalar>(plane: &[T], w: usize, h: usize) -> Vec<T> {
    let at = |x: isize, y: isize| {
        let rx = if x < 0 {
            -x - 1
        } else if x >= w as isize {
            2 * w as isize - x - 1
        } else {
            x
        };
        let ry = if y < 0 {
            -y - 1
        } else if y >= h as isize {
            2 * h as isize - y - 1
        } else {
            y
        };
        plane[ry as usize * w + rx as usize]
    };
    let two = T::lit(2.0);
    let mut out = Vec::with_capacity(w * h);
    for y in 0..h as isize {
        for x in 0..w as isize {
            let gx = (at(x + 1, y - 1) + two * at(x + 1, y) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + two * at(x - 1, y) + at(x - 1, y + 1));
            let gy = (at(x - 1, y + 1) + two * at(x, y + 1) + at(x + 1, y + 1))
                - (at(x - 1, y - 1) + two * at(x, y - 1) + at(x + 1, y - 1));
            out.push(gx.hypot(gy));
        }
    }
    out
}

/// Measure of enhancement: `2/n · Σ ln(max/min)` over the block partition.
fn eme<T: Scalar>(plane: &[T], w: usize, h: usize) -> T {
    let mut total = T::zero();
    let n = for_each_block(w, h, |xs, ys| {
        let (mut lo, mut hi) = (T::infinity(), T::neg_infinity());
        for y in ys {
            for v in &plane[y * w + xs.start..y * w + xs.end] {
                lo = lo.min(*v);
                hi = hi.max(*v);
            }
        }
        if lo > T::zero() && hi > T::zero() {
            total += (hi / lo).ln();
        }
    });
    T::lit(2.0) * total / T::from_usize_lossy(n)
}

pub fn uism<T: Scalar>(img: &RgbImage<T>) -> T {
    let (w, h) = img.dimensions();
    let s = T::lit(255.0);
    Channel::ALL.iter().zip(UISM_CHANNEL_WEIGHTS).fold(T::zero(), |acc, (&c, lambda)| {
        let plane: Vec<T> = img.plane(c).iter().map(|&v| v * s).collect();
        let edges = sobel_magnitude(&plane, w, h);
        let weighted: Vec<T> = edges.iter().zip(&plane).map(|(&e, &v)| e * v).collect();
        acc + T::lit(lambda) * eme(&weighted, w, h)
    })
}

pub fn uiconm<T: Scalar>(img: &RgbImage<T>) -> T {
    let (w, h) = img.dimensions();
    let s = T::lit(255.0);
    let mut total = T::zero();
    let n = for_each_block(w, h, |xs, ys| {
        let (mut lo, mut hi) = (T::infinity(), T::neg_infinity());
        for c in Channel::ALL {
            let plane = img.plane(c);
            for y in ys.clone() {
                for v in &plane[y * w + xs.start..y * w + xs.end] {
                    lo = lo.min(*v * s);
                    hi = hi.max(*v * s);
                }
            }
        }
        let (top, bottom) = (hi - lo, hi + lo);
        if top > T::zero() && bottom > T::zero() {
            let ratio = top / bottom;
            total += ratio * ratio.ln();
        }
    });
    -total / T::from_usize_lossy(n)
}

pub fn uiqm_components<T: Scalar>(img: &RgbImage<T>) -> Result<UiqmComponents<T>, MetricError> {
    let (w, h) = img.dimensions();
    if w < UIQM_MIN_SIZE || h < UIQM_MIN_SIZE {
        return Err(MetricError::ImageTooSmall { width: w, height: h, min: UIQM_MIN_SIZE });
    }
    Ok(UiqmComponents { uicm: uicm(img), uism: uism(img), uiconm: uiconm(img) })
}

pub fn uiqm<T: Scalar>(img: &RgbImage<T>) -> Result<T, MetricError> {
    uiqm_components(img).map(|c| c.score())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn partition_covers_axis_symmetrically() {
        for n in 1..80 {
            let b = block_bounds(n, UIQM_BLOCK);
            assert_eq!(*b.first().unwrap(), 0);
            assert_eq!(*b.last().unwrap(), n);
            assert!(b.windows(2).all(|p| p[0] < p[1]));
            let mirrored: Vec<usize> = b.iter().rev().map(|&v| n - v).collect();
            assert_eq!(mirrored, b, "n = {n}");
        }
        assert_eq!(block_bounds(40, 10), vec![0, 10, 20, 30, 40]);
    }

    #[test]
    fn trimmed_mean_drops_tails() {
        let v: Vec<f64> = (1..=10).map(f64::from).collect();
        // drops 1 and 10
        assert_eq!(trimmed_mean(v, 0.1), 5.5);
        let mut skew: Vec<f64> = vec![0.0; 9];
        skew.push(1000.0);
        assert_eq!(trimmed_mean(skew, 0.1), 0.0);
    }

    #[test]
    fn gray_image_has_no_colorfulness() {
        let img = RgbImage::<f64>::filled(16, 16, [0.4; 3]);
        assert_eq!(uicm(&img), 0.0);
        let ramp = RgbImage::<f64>::from_fn(16, 16, |x, _| [x as f64 / 15.0; 3]);
        assert_eq!(uicm(&ramp), 0.0);
    }

    #[test]
    fn constant_image_has_no_sharpness_or_contrast() {
        let img = RgbImage::<f64>::filled(20, 20, [0.2, 0.5, 0.7]);
        assert_eq!(uism(&img), 0.0);
        let c = uiconm(&img);
        // one value per block: (max − min) / (max + min) over channels is constant
        assert!(c > 0.0);
    }

    #[test]
    fn tiny_images_are_rejected() {
        let img = RgbImage::<f64>::filled(2, 5, [0.5; 3]);
        assert!(matches!(uiqm(&img), Err(MetricError::ImageTooSmall { .. })));
    }
}
