//! Per-pixel underwater image formation with surface color shift.
//!
//! For channel `c`, clean value `E` (taken as the scene irradiance before the
//! water column above the object), object-camera distance `d` and
//! surface-object distance `D`:
//!
//! ```text
//! I_c = E_c · exp(-a_c·D) · exp(-β_c·d) + B_c · (1 - exp(-β_c·d))
//! ```
//!
//! All arithmetic happens at working precision; callers clamp and quantize on
//! export.

use serde::{Deserialize, Serialize};

use crate::ambient::{ambient_light_bounded, AmbientError, AmbientLight};
use crate::image::{DepthMap, RgbImage};
use crate::scalar::Scalar;
use crate::water::{Channel, ChannelCoefficients, WaterType};

/// Default object-camera distance range in meters.
pub const DEFAULT_DEPTH_RANGE: (f64, f64) = (0.25, 20.0);
/// Transmission below which the inverse is considered undefined.
pub const DEFAULT_TRANSMISSION_FLOOR: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FormationError {
    #[error("clean image is {clean:?} but depth map is {depth:?}")]
    DimensionMismatch { clean: (usize, usize), depth: (usize, usize) },
    #[error("invalid synthesis parameters: {0}")]
    InvalidParams(String),
    #[error("every pixel has transmission below the floor {0}")]
    DegenerateTransmission(f64),
}

impl From<AmbientError> for FormationError {
    fn from(e: AmbientError) -> Self {
        FormationError::InvalidParams(e.to_string())
    }
}

/// Parameters sampled for one synthesized image.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SynthesisParams<T> {
    pub water_type: WaterType,
    /// Surface-object distance `D` in meters.
    pub surface_depth: T,
    /// Green ambient anchor `B_g`.
    pub green: T,
    /// Object-camera distance range `(d_min, d_max)` in meters.
    pub depth_range: (T, T),
    pub seed: u64,
}

impl<T: Scalar> SynthesisParams<T> {
    pub fn validate(&self) -> Result<(), FormationError> {
        let bad = |msg: String| Err(FormationError::InvalidParams(msg));
        if !(self.surface_depth >= T::zero() && self.surface_depth.is_finite()) {
            return bad(format!("surface depth {} must be finite and non-negative", self.surface_depth));
        }
        if !(self.green > T::zero() && self.green <= T::one()) {
            return bad(format!("green ambient {} outside (0, 1]", self.green));
        }
        let (lo, hi) = self.depth_range;
        if !(lo > T::zero() && lo < hi && hi.is_finite()) {
            return bad(format!("depth range ({lo}, {hi}) must satisfy 0 < d_min < d_max"));
        }
        Ok(())
    }

    pub fn ambient(&self, coeffs: &ChannelCoefficients<T>) -> Result<AmbientLight<T>, FormationError> {
        self.validate()?;
        Ok(ambient_light_bounded(coeffs, self.surface_depth, self.green, T::infinity())?)
    }
}

/// Surface-to-object attenuation `E_in · exp(-a_c·D)`.
#[inline]
pub fn attenuate_surface<T: Scalar>(irradiance: T, absorption: T, surface_depth: T) -> T {
    irradiance * (-absorption * surface_depth).exp()
}

/// `J'·t + B·(1 - t)` with transmission `t = exp(-β·d)`.
#[inline]
pub fn synthesize_pixel<T: Scalar>(direct: T, ambient: T, beta: T, distance: T) -> T {
    let t = (-beta * distance).exp();
    direct * t + ambient * (T::one() - t)
}

fn check_inputs<T: Scalar>(img: &RgbImage<T>, depth: &DepthMap<T>) -> Result<(), FormationError> {
    if img.dimensions() != depth.dimensions() {
        return Err(FormationError::DimensionMismatch { clean: img.dimensions(), depth: depth.dimensions() });
    }
    if let Some(bad) = depth.data().iter().find(|d| !(d.is_finite() && **d >= T::zero())) {
        return Err(FormationError::InvalidParams(format!("depth value {bad} is not a finite non-negative distance")));
    }
    Ok(())
}

/// Renders the underwater observation of `clean` seen through `depth`.
///
/// Values are returned unclamped.
pub fn synthesize_image<T: Scalar>(
    clean: &RgbImage<T>,
    depth: &DepthMap<T>,
    coeffs: &ChannelCoefficients<T>,
    params: &SynthesisParams<T>,
) -> Result<RgbImage<T>, FormationError> {
    check_inputs(clean, depth)?;
    let ambient = params.ambient(coeffs)?;
    Ok(synthesize_with_ambient(clean, depth, coeffs, params.surface_depth, &ambient))
}

/// Formation with an already computed ambient triple. Inputs must have
/// matching dimensions.
pub fn synthesize_with_ambient<T: Scalar>(
    clean: &RgbImage<T>,
    depth: &DepthMap<T>,
    coeffs: &ChannelCoefficients<T>,
    surface_depth: T,
    ambient: &AmbientLight<T>,
) -> RgbImage<T> {
    assert_eq!(clean.dimensions(), depth.dimensions());
    let mut out = clean.clone();
    for c in Channel::ALL {
        let surface = attenuate_surface(T::one(), coeffs.absorption(c), surface_depth);
        let beta = coeffs.beta(c);
        let b = ambient.channel(c);
        for (v, &d) in out.plane_mut(c).iter_mut().zip(depth.data()) {
            *v = synthesize_pixel(*v * surface, b, beta, d);
        }
    }
    out
}

/// Result of inverting the formation model.
#[derive(Debug, Clone, PartialEq)]
pub struct Inverted<T> {
    /// Recovered clean values; masked entries hold zero.
    pub image: RgbImage<T>,
    /// Planar validity mask aligned with `image.data()`.
    pub valid: Vec<bool>,
}

impl<T: Scalar> Inverted<T> {
    pub fn valid_count(&self) -> usize {
        self.valid.iter().filter(|&&v| v).count()
    }
}

/// Solves the formation model for the clean image, masking entries whose
/// transmission is at or below `DEFAULT_TRANSMISSION_FLOOR`.
pub fn invert_formation<T: Scalar>(
    observed: &RgbImage<T>,
    depth: &DepthMap<T>,
    coeffs: &ChannelCoefficients<T>,
    params: &SynthesisParams<T>,
) -> Result<Inverted<T>, FormationError> {
    invert_formation_with_floor(observed, depth, coeffs, params, T::lit(DEFAULT_TRANSMISSION_FLOOR))
}

pub fn invert_formation_with_floor<T: Scalar>(
    observed: &RgbImage<T>,
    depth: &DepthMap<T>,
    coeffs: &ChannelCoefficients<T>,
    params: &SynthesisParams<T>,
    floor: T,
) -> Result<Inverted<T>, FormationError> {
    check_inputs(observed, depth)?;
    let ambient = params.ambient(coeffs)?;
    let n = observed.pixel_count();
    let mut image = observed.clone();
    let mut valid = vec![false; 3 * n];
    for c in Channel::ALL {
        let surface = attenuate_surface(T::one(), coeffs.absorption(c), params.surface_depth);
        let beta = coeffs.beta(c);
        let b = ambient.channel(c);
        let mask = &mut valid[c.index() * n..(c.index() + 1) * n];
        for ((v, &d), ok) in image.plane_mut(c).iter_mut().zip(depth.data()).zip(mask) {
            let t = (-beta * d).exp();
            if t > floor {
                *v = (*v - b * (T::one() - t)) / (t * surface);
                *ok = true;
            } else {
                *v = T::zero();
            }
        }
    }
    if !valid.iter().any(|&v| v) {
        return Err(FormationError::DegenerateTransmission(floor.to_f64_lossy()));
    }
    Ok(Inverted { image, valid })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn coeffs() -> ChannelCoefficients<f64> {
        ChannelCoefficients::new([0.5, 0.05, 0.02], [0.1, 0.05, 0.08]).unwrap()
    }

    fn params(surface_depth: f64, green: f64) -> SynthesisParams<f64> {
        SynthesisParams { water_type: WaterType::I, surface_depth, green, depth_range: (0.25, 20.0), seed: 0 }
    }

    #[test]
    fn surface_attenuation() {
        assert_eq!(attenuate_surface(0.7, 0.5, 0.0), 0.7);
        assert_relative_eq!(attenuate_surface(1.0, 0.5, 2.0), 0.36787944117144233, max_relative = 1e-15);
        assert_eq!(attenuate_surface(0.0, 3.0, 4.0), 0.0);
    }

    #[test]
    fn pixel_limits_and_reference_value() {
        assert!((synthesize_pixel(0.3f64, 0.9, 0.7, 1e-12) - 0.3).abs() < 1e-9);
        assert!((synthesize_pixel(0.3f64, 0.9, 1.0, 30.0) - 0.9).abs() < 1e-12);
        // 40-digit reference: 0.8·e⁻¹ + 0.2·(1 − e⁻¹)
        assert_relative_eq!(synthesize_pixel(0.8, 0.2, 0.5, 2.0), 0.42072766470286539, max_relative = 1e-15);
    }

    #[test]
    fn single_pixel_matches_composed_scalar_reference() {
        let clean = RgbImage::filled(1, 1, [1.0, 1.0, 1.0]);
        let depth = DepthMap::filled(1, 1, 2.0);
        let out = synthesize_image(&clean, &depth, &coeffs(), &params(2.0, 0.5)).unwrap();
        // composed from the ambient-ratio and formation references at 40 digits
        let expected = [0.15364920549718529, 0.83145284414272694, 0.93164325860416792];
        for (c, e) in Channel::ALL.into_iter().zip(expected) {
            assert_relative_eq!(out.get(0, 0, c), e, max_relative = 1e-14);
        }
    }

    #[test]
    fn far_field_is_ambient_and_near_field_is_clean() {
        let c = coeffs();
        let clean = RgbImage::from_fn(4, 3, |x, y| [x as f64 / 4.0, y as f64 / 3.0, 0.5]);
        let p = params(1.5, 0.6);
        let amb = p.ambient(&c).unwrap();
        let far = 30.0 / c.beta(Channel::G).min(c.beta(Channel::B)).min(c.beta(Channel::R));
        let out = synthesize_image(&clean, &DepthMap::filled(4, 3, far), &c, &p).unwrap();
        for ch in Channel::ALL {
            assert!(out.plane(ch).iter().all(|&v| (v - amb.channel(ch)).abs() < 1e-12));
        }
        let out = synthesize_image(&clean, &DepthMap::filled(4, 3, 1e-12), &c, &params(0.0, 0.6)).unwrap();
        for (a, b) in out.data().iter().zip(clean.data()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn mismatched_or_invalid_inputs_are_rejected() {
        let clean = RgbImage::filled(2, 2, [0.5; 3]);
        let err = synthesize_image(&clean, &DepthMap::filled(3, 2, 1.0), &coeffs(), &params(1.0, 0.7)).unwrap_err();
        assert!(matches!(err, FormationError::DimensionMismatch { .. }));
        let err = synthesize_image(&clean, &DepthMap::filled(2, 2, 1.0), &coeffs(), &params(-1.0, 0.7)).unwrap_err();
        assert!(matches!(err, FormationError::InvalidParams(_)));
        let mut p = params(1.0, 0.7);
        p.depth_range = (5.0, 1.0);
        assert!(matches!(p.validate(), Err(FormationError::InvalidParams(_))));
        let err =
            synthesize_image(&clean, &DepthMap::filled(2, 2, f64::NAN), &coeffs(), &params(1.0, 0.7)).unwrap_err();
        assert!(matches!(err, FormationError::InvalidParams(_)));
    }

    #[test]
    fn inversion_recovers_clean_image() {
        let c = coeffs();
        let clean = RgbImage::from_fn(8, 8, |x, y| [x as f64 / 7.0, y as f64 / 7.0, ((x * y) % 5) as f64 / 4.0]);
        let depth = DepthMap::from_fn(8, 8, |x, y| 0.25 + 0.6 * (x + y) as f64);
        let p = params(2.5, 0.8);
        let observed = synthesize_image(&clean, &depth, &c, &p).unwrap();
        let inv = invert_formation(&observed, &depth, &c, &p).unwrap();
        assert_eq!(inv.valid_count(), 8 * 8 * 3);
        for (a, b) in inv.image.data().iter().zip(clean.data()) {
            assert!((a - b).abs() < 1e-9);
        }
    }

    #[test]
    fn inversion_masks_opaque_pixels() {
        let c = coeffs();
        let p = params(1.0, 0.7);
        let amb = p.ambient(&c).unwrap();
        let observed = RgbImage::filled(3, 3, amb.as_array());
        let err = invert_formation(&observed, &DepthMap::filled(3, 3, 1e4), &c, &p).unwrap_err();
        assert!(matches!(err, FormationError::DegenerateTransmission(_)));

        // red is opaque at d = 30 (β_r·d = 18 → t ≈ 1.5e-8), green and blue are not
        let inv = invert_formation(&observed, &DepthMap::filled(3, 3, 30.0), &c, &p).unwrap();
        assert_eq!(inv.valid_count(), 2 * 9);
        assert!(inv.valid[..9].iter().all(|&v| !v));
    }

    #[test]
    fn inversion_without_water_is_identity() {
        let c = coeffs();
        let observed = RgbImage::from_fn(2, 2, |x, y| [0.1 * x as f64, 0.2 * y as f64, 0.3]);
        let inv = invert_formation(&observed, &DepthMap::filled(2, 2, 1e-12), &c, &params(0.0, 0.7)).unwrap();
        for (a, b) in inv.image.data().iter().zip(observed.data()) {
            assert!((a - b).abs() < 1e-9);
        }
    }
}
