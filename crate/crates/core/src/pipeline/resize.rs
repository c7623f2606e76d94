//! Deterministic resampling used before synthesis: bilinear for color,
//! nearest-neighbor for depth. Both use pixel-center alignment, no
//! antialiasing prefilter.

use crate::image::{DepthMap, RgbImage};
use crate::scalar::Scalar;
use crate::water::Channel;

#[inline]
fn source_coord(dst: usize, dst_len: usize, src_len: usize) -> f64 {
    let s = (dst as f64 + 0.5) * (src_len as f64 / dst_len as f64) - 0.5;
    s.clamp(0.0, (src_len - 1) as f64)
}

pub fn resize_bilinear<T: Scalar>(img: &RgbImage<T>, width: usize, height: usize) -> RgbImage<T> {
    let (sw, sh) = img.dimensions();
    if (sw, sh) == (width, height) {
        return img.clone();
    }
    let xs: Vec<(usize, usize, T)> = (0..width)
        .map(|x| {
            let s = source_coord(x, width, sw);
            let x0 = s.floor() as usize;
            (x0, (x0 + 1).min(sw - 1), T::lit(s - x0 as f64))
        })
        .collect();
    let mut out = RgbImage::filled(width, height, [T::zero(); 3]);
    for y in 0..height {
        let s = source_coord(y, height, sh);
        let y0 = s.floor() as usize;
        let y1 = (y0 + 1).min(sh - 1);
        let fy = T::lit(s - y0 as f64);
        for (x, &(x0, x1, fx)) in xs.iter().enumerate() {
            for c in Channel::ALL {
                let top = img.get(x0, y0, c) * (T::one() - fx) + img.get(x1, y0, c) * fx;
                let bottom = img.get(x0, y1, c) * (T::one() - fx) + img.get(x1, y1, c) * fx;
                out.set(x, y, c, top * (T::one() - fy) + bottom * fy);
            }
        }
    }
    out
}

#[inline]
fn nearest(dst: usize, dst_len: usize, src_len: usize) -> usize {
    let s = ((dst as f64 + 0.5) * (src_len as f64 / dst_len as f64)).floor() as usize;
    s.min(src_len - 1)
}

pub fn resize_nearest<T: Scalar>(depth: &DepthMap<T>, width: usize, height: usize) -> DepthMap<T> {
    let (sw, sh) = depth.dimensions();
    if (sw, sh) == (width, height) {
        return depth.clone();
    }
    DepthMap::from_fn(width, height, |x, y| depth.get(nearest(x, width, sw), nearest(y, height, sh)))
}
