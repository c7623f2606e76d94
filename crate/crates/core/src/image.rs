//! Planar floating-point RGB images and metric depth maps, plus the 8/16-bit
//! file codecs used at the dataset boundary.

use std::path::Path;

use image::{ImageBuffer, Luma, Rgb};

use crate::scalar::Scalar;
use crate::water::Channel;

#[derive(Debug, thiserror::Error)]
pub enum ImageError {
    #[error("buffer of length {len} does not match {width}x{height}x{channels}")]
    BadLength { len: usize, width: usize, height: usize, channels: usize },
    #[error("image must have nonzero dimensions")]
    Empty,
    #[error("image codec error: {0}")]
    Codec(#[from] image::ImageError),
    #[error("unsupported depth encoding in {0}")]
    UnsupportedDepth(String),
}

/// Three-channel image stored plane by plane (all red, then green, then blue).
#[derive(Debug, Clone, PartialEq)]
pub struct RgbImage<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T: Scalar> RgbImage<T> {
    pub fn new(width: usize, height: usize, data: Vec<T>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::Empty);
        }
        if data.len() != width * height * 3 {
            return Err(ImageError::BadLength { len: data.len(), width, height, channels: 3 });
        }
        Ok(RgbImage { width, height, data })
    }

    pub fn filled(width: usize, height: usize, rgb: [T; 3]) -> Self {
        Self::from_fn(width, height, |_, _| rgb)
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> [T; 3]) -> Self {
        assert!(width > 0 && height > 0, "image must have nonzero dimensions");
        let plane = width * height;
        let mut data = vec![T::zero(); plane * 3];
        for y in 0..height {
            for x in 0..width {
                let px = f(x, y);
                let i = y * width + x;
                data[i] = px[0];
                data[plane + i] = px[1];
                data[2 * plane + i] = px[2];
            }
        }
        RgbImage { width, height, data }
    }

    #[inline]
    pub fn width(&self) -> usize {
        self.width
    }

    #[inline]
    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    #[inline]
    pub fn pixel_count(&self) -> usize {
        self.width * self.height
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    pub fn into_data(self) -> Vec<T> {
        self.data
    }

    pub fn plane(&self, channel: Channel) -> &[T] {
        let n = self.pixel_count();
        &self.data[channel.index() * n..(channel.index() + 1) * n]
    }

    pub fn plane_mut(&mut self, channel: Channel) -> &mut [T] {
        let n = self.pixel_count();
        &mut self.data[channel.index() * n..(channel.index() + 1) * n]
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, channel: Channel) -> T {
        self.data[channel.index() * self.pixel_count() + y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, channel: Channel, value: T) {
        let n = self.pixel_count();
        self.data[channel.index() * n + y * self.width + x] = value;
    }

    pub fn pixel(&self, x: usize, y: usize) -> [T; 3] {
        Channel::ALL.map(|c| self.get(x, y, c))
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        RgbImage { width: self.width, height: self.height, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    pub fn channel_mean(&self, channel: Channel) -> T {
        let plane = self.plane(channel);
        plane.iter().fold(T::zero(), |acc, &v| acc + v) / T::from_usize_lossy(plane.len())
    }

    pub fn clamped(&self) -> Self {
        self.map(|v| v.max(T::zero()).min(T::one()))
    }

    pub fn cast<U: Scalar>(&self) -> RgbImage<U> {
        RgbImage {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|v| U::lit(v.to_f64_lossy())).collect(),
        }
    }

    /// Quantizes to interleaved 8-bit RGB, clamping to [0, 1] first.
    pub fn to_rgb8(&self) -> ImageBuffer<Rgb<u8>, Vec<u8>> {
        ImageBuffer::from_fn(self.width as u32, self.height as u32, |x, y| {
            Rgb(self.pixel(x as usize, y as usize).map(quantize_u8))
        })
    }

    pub fn from_rgb8(buf: &ImageBuffer<Rgb<u8>, Vec<u8>>) -> Self {
        let scale = T::lit(255.0);
        Self::from_fn(buf.width() as usize, buf.height() as usize, |x, y| {
            buf.get_pixel(x as u32, y as u32).0.map(|v| T::lit(f64::from(v)) / scale)
        })
    }

    /// Maps [0, 1] values onto [-1, 1], the loader-side network normalization.
    pub fn to_symmetric_unit(&self) -> Self {
        let two = T::lit(2.0);
        self.map(|v| v * two - T::one())
    }

    pub fn from_symmetric_unit(&self) -> Self {
        let half = T::lit(0.5);
        self.map(|v| (v + T::one()) * half)
    }
}

/// Rounds a unit-interval value to the nearest 8-bit code.
#[inline]
pub fn quantize_u8<T: Scalar>(v: T) -> u8 {
    let v = v.to_f64_lossy();
    let v = if v.is_nan() { 0.0 } else { v.clamp(0.0, 1.0) };
    (v * 255.0).round() as u8
}

/// Per-pixel object-camera distance in meters.
#[derive(Debug, Clone, PartialEq)]
pub struct DepthMap<T> {
    width: usize,
    height: usize,
    data: Vec<T>,
}

impl<T: Scalar> DepthMap<T> {
    pub fn new(width: usize, height: usize, data: Vec<T>) -> Result<Self, ImageError> {
        if width == 0 || height == 0 {
            return Err(ImageError::Empty);
        }
        if data.len() != width * height {
            return Err(ImageError::BadLength { len: data.len(), width, height, channels: 1 });
        }
        Ok(DepthMap { width, height, data })
    }

    pub fn filled(width: usize, height: usize, depth: T) -> Self {
        assert!(width > 0 && height > 0, "depth map must have nonzero dimensions");
        DepthMap { width, height, data: vec![depth; width * height] }
    }

    pub fn from_fn(width: usize, height: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        assert!(width > 0 && height > 0, "depth map must have nonzero dimensions");
        let data = (0..height).flat_map(|y| (0..width).map(move |x| (x, y))).map(|(x, y)| f(x, y)).collect();
        DepthMap { width, height, data }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn dimensions(&self) -> (usize, usize) {
        (self.width, self.height)
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> T {
        self.data[y * self.width + x]
    }

    pub fn min_max(&self) -> (T, T) {
        self.data.iter().fold((T::infinity(), T::neg_infinity()), |(lo, hi), &v| (lo.min(v), hi.max(v)))
    }

    pub fn cast<U: Scalar>(&self) -> DepthMap<U> {
        DepthMap {
            width: self.width,
            height: self.height,
            data: self.data.iter().map(|v| U::lit(v.to_f64_lossy())).collect(),
        }
    }
}

/// Loads an 8-bit (or wider, truncated by the decoder) RGB file as unit-interval values.
pub fn load_rgb(path: impl AsRef<Path>) -> Result<RgbImage<f64>, ImageError> {
    let img = image::open(path)?.to_rgb8();
    Ok(RgbImage::from_rgb8(&img))
}

pub fn save_rgb_png<T: Scalar>(img: &RgbImage<T>, path: impl AsRef<Path>) -> Result<(), ImageError> {
    img.to_rgb8().save_with_format(path, image::ImageFormat::Png)?;
    Ok(())
}

/// Loads a raw single-channel depth file (8- or 16-bit PGM or PNG) and
/// multiplies each stored code by `scale` to obtain meters.
pub fn load_depth(path: impl AsRef<Path>, scale: f64) -> Result<DepthMap<f64>, ImageError> {
    let path = path.as_ref();
    let img = image::open(path)?;
    let luma = match img {
        image::DynamicImage::ImageLuma8(_) | image::DynamicImage::ImageLuma16(_) => img.to_luma16(),
        _ => return Err(ImageError::UnsupportedDepth(path.display().to_string())),
    };
    // 8-bit inputs are widened by the decoder (v * 257); keep the stored code.
    let widened = matches!(img, image::DynamicImage::ImageLuma8(_));
    let (w, h) = luma.dimensions();
    let data = luma
        .pixels()
        .map(|p| {
            let code = if widened { p.0[0] / 257 } else { p.0[0] };
            f64::from(code) * scale
        })
        .collect();
    DepthMap::new(w as usize, h as usize, data)
}

/// Depth export resolution: one code per millimetre.
pub const DEPTH_EXPORT_SCALE: f64 = 1e-3;

/// Writes depth as a 16-bit grayscale PNG in millimetres.
pub fn save_depth_png<T: Scalar>(depth: &DepthMap<T>, path: impl AsRef<Path>) -> Result<(), ImageError> {
    let buf: ImageBuffer<Luma<u16>, Vec<u16>> =
        ImageBuffer::from_fn(depth.width() as u32, depth.height() as u32, |x, y| {
            let mm = (depth.get(x as usize, y as usize).to_f64_lossy() / DEPTH_EXPORT_SCALE).round();
            Luma([mm.clamp(0.0, f64::from(u16::MAX)) as u16])
        });
    buf.save_with_format(path, image::ImageFormat::Png)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn planar_layout() {
        let img = RgbImage::<f64>::from_fn(3, 2, |x, y| [x as f64, y as f64, 7.0]);
        assert_eq!(img.plane(Channel::R), &[0.0, 1.0, 2.0, 0.0, 1.0, 2.0]);
        assert_eq!(img.plane(Channel::G), &[0.0, 0.0, 0.0, 1.0, 1.0, 1.0]);
        assert_eq!(img.pixel(2, 1), [2.0, 1.0, 7.0]);
        assert!(RgbImage::<f64>::new(2, 2, vec![0.0; 11]).is_err());
        assert!(matches!(RgbImage::<f64>::new(0, 2, vec![]), Err(ImageError::Empty)));
    }

    #[test]
    fn quantizer_rounds_and_clamps() {
        assert_eq!(quantize_u8(0.0), 0);
        assert_eq!(quantize_u8(1.0), 255);
        assert_eq!(quantize_u8(1.5), 255);
        assert_eq!(quantize_u8(-0.2), 0);
        assert_eq!(quantize_u8(0.5), 128);
        assert_eq!(quantize_u8(f64::NAN), 0);
        for code in 0..=255u8 {
            assert_eq!(quantize_u8(f64::from(code) / 255.0), code);
        }
    }

    #[test]
    fn symmetric_unit_transform_inverts() {
        let img = RgbImage::<f64>::from_fn(4, 4, |x, y| [x as f64 / 3.0, y as f64 / 3.0, 0.25]);
        let sym = img.to_symmetric_unit();
        assert!(sym.data().iter().all(|v| (-1.0..=1.0).contains(v)));
        let back = sym.from_symmetric_unit();
        for (a, b) in back.data().iter().zip(img.data()) {
            assert!((a - b).abs() < 1e-15);
        }
    }

    #[test]
    fn png_and_depth_files_round_trip() {
        let dir = tempfile::tempdir().unwrap();
        let img = RgbImage::<f64>::from_fn(5, 4, |x, y| [x as f64 / 4.0, y as f64 / 3.0, 1.0]);
        let p = dir.path().join("a.png");
        save_rgb_png(&img, &p).unwrap();
        let back = load_rgb(&p).unwrap();
        assert_eq!(back.to_rgb8(), img.to_rgb8());

        let depth = DepthMap::<f64>::from_fn(5, 4, |x, y| 0.25 + x as f64 + 0.5 * y as f64);
        let dp = dir.path().join("a.depth.png");
        save_depth_png(&depth, &dp).unwrap();
        let back = load_depth(&dp, DEPTH_EXPORT_SCALE).unwrap();
        for (a, b) in back.data().iter().zip(depth.data()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn eight_bit_pgm_depth_keeps_codes() {
        let dir = tempfile::tempdir().unwrap();
        let buf: ImageBuffer<Luma<u8>, Vec<u8>> = ImageBuffer::from_fn(3, 1, |x, _| Luma([(x * 100) as u8]));
        let p = dir.path().join("d.depth.pgm");
        buf.save(&p).unwrap();
        let d = load_depth(&p, 0.1).unwrap();
        assert_eq!(d.data(), &[0.0, 10.0, 20.0]);
    }
}
