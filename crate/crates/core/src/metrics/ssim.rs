//! Mean structural similarity with a Gaussian window.
//!
//! Constants: 11×11 Gaussian window (σ = 1.5, truncated at radius 5),
//! `k1 = 0.01`, `k2 = 0.03`, dynamic range 1. Local statistics use
//! population (not sample) covariance and half-sample symmetric borders; the
//! SSIM map is averaged after discarding a 5-pixel border, and the three
//! channel scores are averaged.

use crate::image::RgbImage;
use crate::metrics::{check_same_size, MetricError};
use crate::scalar::Scalar;
use crate::water::Channel;

pub const SSIM_SIGMA: f64 = 1.5;
pub const SSIM_RADIUS: usize = 5;
pub const SSIM_WINDOW: usize = 2 * SSIM_RADIUS + 1;
pub const SSIM_K1: f64 = 0.01;
pub const SSIM_K2: f64 = 0.03;

fn gaussian_kernel<T: Scalar>() -> Vec<T> {
    let raw: Vec<f64> = (0..SSIM_WINDOW)
        .map(|i| {
            let x = i as f64 - SSIM_RADIUS as f64;
            (-0.5 * x * x / (SSIM_SIGMA * SSIM_SIGMA)).exp()
        })
        .collect();
    let sum: f64 = raw.iter().sum();
    raw.iter().map(|w| T::lit(w / sum)).collect()
}

#[inline]
fn reflect(i: isize, n: usize) -> usize {
    let n = n as isize;
    let j = if i < 0 {
        -i - 1
    } else if i >= n {
        2 * n - i - 1
    } else {
        i
    };
    j as usize
}

/// Separable Gaussian filter over a `w`×`h` plane.
fn blur<T: Scalar>(src: &[T], w: usize, h: usize, kernel: &[T]) -> Vec<T> {
    let r = SSIM_RADIUS as isize;
    let mut tmp = vec![T::zero(); w * h];
    for y in 0..h {
        let row = &src[y * w..(y + 1) * w];
        for x in 0..w {
            let mut acc = T::zero();
            for (k, &wk) in kernel.iter().enumerate() {
                acc += wk * row[reflect(x as isize + k as isize - r, w)];
            }
            tmp[y * w + x] = acc;
        }
    }
    let mut out = vec![T::zero(); w * h];
    for y in 0..h {
        for x in 0..w {
            let mut acc = T::zero();
            for (k, &wk) in kernel.iter().enumerate() {
                acc += wk * tmp[reflect(y as isize + k as isize - r, h) * w + x];
            }
            out[y * w + x] = acc;
        }
    }
    out
}

fn plane_ssim<T: Scalar>(a: &[T], b: &[T], w: usize, h: usize) -> T {
    let kernel = gaussian_kernel::<T>();
    let c1 = T::lit((SSIM_K1 * 1.0).powi(2));
    let c2 = T::lit((SSIM_K2 * 1.0).powi(2));
    let two = T::lit(2.0);
    let prod = |f: &dyn Fn(T, T) -> T| -> Vec<T> { a.iter().zip(b).map(|(&x, &y)| f(x, y)).collect() };

    let mu_a = blur(a, w, h, &kernel);
    let mu_b = blur(b, w, h, &kernel);
    let aa = blur(&prod(&|x, _| x * x), w, h, &kernel);
    let bb = blur(&prod(&|_, y| y * y), w, h, &kernel);
    let ab = blur(&prod(&|x, y| x * y), w, h, &kernel);

    let mut sum = T::zero();
    for y in SSIM_RADIUS..h - SSIM_RADIUS {
        for x in SSIM_RADIUS..w - SSIM_RADIUS {
            let i = y * w + x;
            let (ma, mb) = (mu_a[i], mu_b[i]);
            let var_a = aa[i] - ma * ma;
            let var_b = bb[i] - mb * mb;
            let cov = ab[i] - ma * mb;
            let num = (two * ma * mb + c1) * (two * cov + c2);
            let den = (ma * ma + mb * mb + c1) * (var_a + var_b + c2);
            sum += num / den;
        }
    }
    sum / T::from_usize_lossy((w - 2 * SSIM_RADIUS) * (h - 2 * SSIM_RADIUS))
}

/// Mean SSIM over the three channels.
pub fn ssim<T: Scalar>(out: &RgbImage<T>, gt: &RgbImage<T>) -> Result<T, MetricError> {
    check_same_size(out, gt)?;
    let (w, h) = out.dimensions();
    if w < SSIM_WINDOW || h < SSIM_WINDOW {
        return Err(MetricError::ImageTooSmall { width: w, height: h, min: SSIM_WINDOW });
    }
    let total = Channel::ALL.iter().fold(T::zero(), |acc, &c| acc + plane_ssim(out.plane(c), gt.plane(c), w, h));
    Ok(total / T::lit(3.0))
}
