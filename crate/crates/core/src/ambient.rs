//! Ambient (veiling) light as a function of water type and surface depth.
//!
//! The infinite-range ambient light of one channel is
//!
//! ```text
//! B∞_c = b_c · exp(-(a_c + b_c) · D) / (a_c + b_c) · E0
//! ```
//!
//! where `D` is the surface-object distance and `E0` the surface irradiance.
//! With `E0` equal across channels it cancels from the red/green and
//! blue/green ratios, so a synthesized ambient triple is anchored on a
//! sampled green value and the other two channels follow from the ratios.

use rand::{Rng, RngCore};
use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;
use crate::water::{Channel, ChannelCoefficients};

/// Default upper bound for the surface-object distance, in meters.
pub const DEFAULT_MAX_SURFACE_DEPTH: f64 = 5.0;
/// Default sampling range for the green ambient value.
pub const DEFAULT_GREEN_RANGE: (f64, f64) = (0.5, 1.0);

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum AmbientError {
    #[error("surface-object distance {0} m outside [0, {1}] m")]
    DepthOutOfRange(f64, f64),
    #[error("green ambient value {0} outside (0, 1]")]
    GreenOutOfRange(f64),
    #[error("surface irradiance must be positive and equal across channels")]
    InvalidIrradiance,
}

/// Per-channel ambient intensity, normalized to (0, 1].
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AmbientLight<T> {
    pub r: T,
    pub g: T,
    pub b: T,
    /// Set when a channel exceeded 1 before clamping.
    #[serde(default)]
    pub clamped: bool,
}

impl<T: Scalar> AmbientLight<T> {
    pub fn channel(&self, channel: Channel) -> T {
        match channel {
            Channel::R => self.r,
            Channel::G => self.g,
            Channel::B => self.b,
        }
    }

    pub fn as_array(&self) -> [T; 3] {
        [self.r, self.g, self.b]
    }
}

/// Surface-object distance together with the (channel-uniform) surface irradiance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceParams<T> {
    depth: T,
    irradiance: T,
}

impl<T: Scalar> SurfaceParams<T> {
    pub fn new(depth: T, irradiance: T, max_depth: T) -> Result<Self, AmbientError> {
        if !(depth >= T::zero() && depth <= max_depth) {
            return Err(AmbientError::DepthOutOfRange(depth.to_f64_lossy(), max_depth.to_f64_lossy()));
        }
        if !(irradiance > T::zero() && irradiance.is_finite()) {
            return Err(AmbientError::InvalidIrradiance);
        }
        Ok(SurfaceParams { depth, irradiance })
    }

    /// Accepts a per-channel irradiance, which must be identical in r, g and b.
    pub fn from_channels(depth: T, irradiance: [T; 3], max_depth: T) -> Result<Self, AmbientError> {
        if irradiance[0] != irradiance[1] || irradiance[1] != irradiance[2] {
            return Err(AmbientError::InvalidIrradiance);
        }
        Self::new(depth, irradiance[0], max_depth)
    }

    pub fn depth(&self) -> T {
        self.depth
    }

    pub fn irradiance(&self) -> T {
        self.irradiance
    }

    pub fn unnormalized(&self, coeffs: &ChannelCoefficients<T>, channel: Channel) -> T {
        unnormalized_ambient(coeffs, channel, self.depth, self.irradiance)
    }
}

/// Absolute ambient light of one channel at surface depth `depth`, given
/// surface irradiance `irradiance`.
pub fn unnormalized_ambient<T: Scalar>(
    coeffs: &ChannelCoefficients<T>,
    channel: Channel,
    depth: T,
    irradiance: T,
) -> T {
    let beta = coeffs.beta(channel);
    coeffs.scattering(channel) * (-beta * depth).exp() / beta * irradiance
}

fn ratio_to_green<T: Scalar>(coeffs: &ChannelCoefficients<T>, channel: Channel, depth: T) -> T {
    let g = Channel::G;
    let beta_c = coeffs.beta(channel);
    let beta_g = coeffs.beta(g);
    (coeffs.scattering(channel) / coeffs.scattering(g)) * (beta_g / beta_c) * (-(beta_c - beta_g) * depth).exp()
}

/// `B_r / B_g` at surface depth `depth`.
pub fn ambient_ratio_rg<T: Scalar>(coeffs: &ChannelCoefficients<T>, depth: T) -> T {
    ratio_to_green(coeffs, Channel::R, depth)
}

/// `B_b / B_g` at surface depth `depth`.
pub fn ambient_ratio_bg<T: Scalar>(coeffs: &ChannelCoefficients<T>, depth: T) -> T {
    ratio_to_green(coeffs, Channel::B, depth)
}

/// Ambient triple anchored on the green value `green`, using the default
/// depth bound.
pub fn ambient_light<T: Scalar>(
    coeffs: &ChannelCoefficients<T>,
    depth: T,
    green: T,
) -> Result<AmbientLight<T>, AmbientError> {
    ambient_light_bounded(coeffs, depth, green, T::lit(DEFAULT_MAX_SURFACE_DEPTH))
}

/// As [`ambient_light`] with an explicit upper bound on `depth`.
///
/// Channels that come out above 1 are clamped to 1 and `clamped` is set.
pub fn ambient_light_bounded<T: Scalar>(
    coeffs: &ChannelCoefficients<T>,
    depth: T,
    green: T,
    max_depth: T,
) -> Result<AmbientLight<T>, AmbientError> {
    if !(depth >= T::zero() && depth <= max_depth) {
        return Err(AmbientError::DepthOutOfRange(depth.to_f64_lossy(), max_depth.to_f64_lossy()));
    }
    if !(green > T::zero() && green <= T::one()) {
        return Err(AmbientError::GreenOutOfRange(green.to_f64_lossy()));
    }
    let r = ambient_ratio_rg(coeffs, depth) * green;
    let b = ambient_ratio_bg(coeffs, depth) * green;
    let clamped = r > T::one() || b > T::one();
    Ok(AmbientLight { r: r.min(T::one()), g: green, b: b.min(T::one()), clamped })
}

/// Draws a green ambient value uniformly from `[0.5, 1]`.
pub fn sample_bg<R: RngCore + ?Sized>(rng: &mut R) -> f64 {
    sample_bg_in(rng, DEFAULT_GREEN_RANGE)
}

pub fn sample_bg_in<R: RngCore + ?Sized>(rng: &mut R, (lo, hi): (f64, f64)) -> f64 {
    rng.random_range(lo..=hi)
}
