//! Physics-based synthesis of underwater imagery from clean RGB-D pairs,
//! plus image-quality metrics and forward kernels for prior fusion.
//!
//! Numeric code is generic over [`scalar::Scalar`] (`f32` or `f64`); the
//! aliases below fix it to `f64`.

pub mod ambient;
pub mod formation;
pub mod fusion;
pub mod image;
pub mod metrics;
pub mod pipeline;
pub mod scalar;
pub mod water;

pub use scalar::Scalar;
pub use water::{Channel, WaterType};

pub type Image = image::RgbImage<f64>;
pub type Depth = image::DepthMap<f64>;
pub type Coefficients = water::ChannelCoefficients<f64>;
pub type Table = water::CoefficientTable<f64>;
pub type Ambient = ambient::AmbientLight<f64>;
pub type Params = formation::SynthesisParams<f64>;
pub type Tensor = fusion::FeatureTensor<f64>;
