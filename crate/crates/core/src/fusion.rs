//! Forward-only reference kernels for prior fusion: instance normalization,
//! residual feature modulation, and squeeze-style adaptive prior weighting.
//!
//! Tensors are dense `N×C×H×W` blocks in row-major order. Parameters are never
//! learned here; they come from a JSON fixture of named arrays:
//!
//! ```json
//! { "arrays": { "fc1.weight": { "shape": [24, 64], "data": [ ... ] }, ... } }
//! ```
//!
//! Dense weights are stored `[out, in]`, biases `[out]`.

use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

/// Default stabilizer added to the standard deviation in [`instance_normalize`].
pub const INSTANCE_NORM_EPSILON: f64 = 1e-5;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FusionError {
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("tensor dimensions must all be at least 1 (got {0:?})")]
    EmptyDimension([usize; 4]),
    #[error("tensor contains non-finite values")]
    NonFinite,
    #[error("instance normalization needs at least 2 values per slice, got {0}")]
    SliceTooSmall(usize),
    #[error("fixture: {0}")]
    Fixture(String),
}

fn mismatch<T>(msg: impl Into<String>) -> Result<T, FusionError> {
    Err(FusionError::ShapeMismatch(msg.into()))
}

#[derive(Debug, Clone, PartialEq)]
pub struct FeatureTensor<T> {
    shape: [usize; 4],
    data: Vec<T>,
}

impl<T: Scalar> FeatureTensor<T> {
    pub fn new(shape: [usize; 4], data: Vec<T>) -> Result<Self, FusionError> {
        if shape.contains(&0) {
            return Err(FusionError::EmptyDimension(shape));
        }
        if data.len() != shape.iter().product::<usize>() {
            return mismatch(format!("{} values for shape {shape:?}", data.len()));
        }
        if data.iter().any(|v| !v.is_finite()) {
            return Err(FusionError::NonFinite);
        }
        Ok(FeatureTensor { shape, data })
    }

    pub fn filled(shape: [usize; 4], value: T) -> Result<Self, FusionError> {
        Self::new(shape, vec![value; shape.iter().product()])
    }

    pub fn shape(&self) -> [usize; 4] {
        self.shape
    }

    pub fn batch(&self) -> usize {
        self.shape[0]
    }

    pub fn channels(&self) -> usize {
        self.shape[1]
    }

    fn slice_len(&self) -> usize {
        self.shape[2] * self.shape[3]
    }

    pub fn data(&self) -> &[T] {
        &self.data
    }

    /// The `H×W` plane of batch item `n`, channel `c`.
    pub fn slice(&self, n: usize, c: usize) -> &[T] {
        let len = self.slice_len();
        let start = (n * self.shape[1] + c) * len;
        &self.data[start..start + len]
    }

    pub fn map(&self, f: impl Fn(T) -> T) -> Self {
        FeatureTensor { shape: self.shape, data: self.data.iter().map(|&v| f(v)).collect() }
    }

    fn zip_with(&self, other: &Self, f: impl Fn(T, T) -> T) -> Result<Self, FusionError> {
        if self.shape != other.shape {
            return mismatch(format!("{:?} vs {:?}", self.shape, other.shape));
        }
        Ok(FeatureTensor {
            shape: self.shape,
            data: self.data.iter().zip(&other.data).map(|(&a, &b)| f(a, b)).collect(),
        })
    }
}

fn mean_std<T: Scalar>(values: &[T]) -> (T, T) {
    let n = T::from_usize_lossy(values.len());
    let mean = values.iter().fold(T::zero(), |a, &v| a + v) / n;
    let var = values.iter().fold(T::zero(), |a, &v| a + (v - mean) * (v - mean)) / n;
    (mean, var.sqrt())
}

/// Per-`(n, c)` slice standardization `(S − μ) / (σ + ε)` with population σ.
pub fn instance_normalize<T: Scalar>(features: &FeatureTensor<T>, epsilon: T) -> Result<FeatureTensor<T>, FusionError> {
    let len = features.slice_len();
    if len < 2 {
        return Err(FusionError::SliceTooSmall(len));
    }
    let mut data = Vec::with_capacity(features.data.len());
    for slice in features.data.chunks_exact(len) {
        let (mean, std) = mean_std(slice);
        let denom = std + epsilon;
        data.extend(slice.iter().map(|&v| (v - mean) / denom));
    }
    Ok(FeatureTensor { shape: features.shape, data })
}

/// Scale and bias tensors for [`sft_modulate`], each shaped like the
/// modulated features.
#[derive(Debug, Clone, PartialEq)]
pub struct ModulationPair<T> {
    pub gamma: FeatureTensor<T>,
    pub beta: FeatureTensor<T>,
}

impl<T: Scalar> ModulationPair<T> {
    pub fn new(gamma: FeatureTensor<T>, beta: FeatureTensor<T>) -> Result<Self, FusionError> {
        if gamma.shape != beta.shape {
            return mismatch(format!("gamma {:?} vs beta {:?}", gamma.shape, beta.shape));
        }
        Ok(ModulationPair { gamma, beta })
    }
}

/// `Ŝ · (γ + 1) + β`, elementwise.
pub fn sft_modulate<T: Scalar>(
    normalized: &FeatureTensor<T>,
    mods: &ModulationPair<T>,
) -> Result<FeatureTensor<T>, FusionError> {
    let scaled = normalized.zip_with(&mods.gamma, |s, g| s * (g + T::one()))?;
    scaled.zip_with(&mods.beta, |s, b| s + b)
}

/// `N×C` matrix of per-channel descriptors.
#[derive(Debug, Clone, PartialEq)]
pub struct Descriptor<T> {
    pub batch: usize,
    pub channels: usize,
    pub values: Vec<T>,
}

impl<T: Scalar> Descriptor<T> {
    pub fn row(&self, n: usize) -> &[T] {
        &self.values[n * self.channels..(n + 1) * self.channels]
    }
}

/// Mean over the spatial dimensions of every channel.
pub fn global_average_pool<T: Scalar>(features: &FeatureTensor<T>) -> Descriptor<T> {
    let values = features.data.chunks_exact(features.slice_len()).map(|s| mean_std(s).0).collect();
    Descriptor { batch: features.shape[0], channels: features.shape[1], values }
}

/// Fully connected layer `y = W·x + b`, `W` stored `[out, in]`.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseLayer<T> {
    inputs: usize,
    outputs: usize,
    weight: Vec<T>,
    bias: Vec<T>,
}

impl<T: Scalar> DenseLayer<T> {
    pub fn new(outputs: usize, inputs: usize, weight: Vec<T>, bias: Vec<T>) -> Result<Self, FusionError> {
        if weight.len() != outputs * inputs || bias.len() != outputs {
            return mismatch(format!(
                "dense layer {outputs}x{inputs} got {} weights and {} biases",
                weight.len(),
                bias.len()
            ));
        }
        Ok(DenseLayer { inputs, outputs, weight, bias })
    }

    pub fn zeros(outputs: usize, inputs: usize) -> Self {
        DenseLayer { inputs, outputs, weight: vec![T::zero(); outputs * inputs], bias: vec![T::zero(); outputs] }
    }

    pub fn inputs(&self) -> usize {
        self.inputs
    }

    pub fn outputs(&self) -> usize {
        self.outputs
    }

    pub fn forward(&self, x: &[T]) -> Result<Vec<T>, FusionError> {
        if x.len() != self.inputs {
            return mismatch(format!("dense layer expects {} inputs, got {}", self.inputs, x.len()));
        }
        Ok(self
            .weight
            .chunks_exact(self.inputs)
            .zip(&self.bias)
            .map(|(row, &b)| row.iter().zip(x).fold(b, |acc, (&w, &v)| acc + w * v))
            .collect())
    }

    /// Applies the layer at every pixel, i.e. a 1×1 convolution.
    pub fn project(&self, features: &FeatureTensor<T>) -> Result<FeatureTensor<T>, FusionError> {
        let [n, c, h, w] = features.shape;
        if c != self.inputs {
            return mismatch(format!("projection expects {} channels, got {c}", self.inputs));
        }
        let hw = h * w;
        let mut data = vec![T::zero(); n * self.outputs * hw];
        let mut pixel = vec![T::zero(); c];
        for b in 0..n {
            for p in 0..hw {
                for (ch, v) in pixel.iter_mut().enumerate() {
                    *v = features.data[(b * c + ch) * hw + p];
                }
                for (o, y) in self.forward(&pixel)?.into_iter().enumerate() {
                    data[(b * self.outputs + o) * hw + p] = y;
                }
            }
        }
        FeatureTensor::new([n, self.outputs, h, w], data)
    }
}

/// One weight per prior per batch item, each in (0, 1).
#[derive(Debug, Clone, PartialEq)]
pub struct PriorWeightVector<T> {
    batch: usize,
    priors: usize,
    values: Vec<T>,
}

impl<T: Scalar> PriorWeightVector<T> {
    pub fn new(batch: usize, priors: usize, values: Vec<T>) -> Result<Self, FusionError> {
        if values.len() != batch * priors {
            return mismatch(format!("{} weights for {batch} items x {priors} priors", values.len()));
        }
        Ok(PriorWeightVector { batch, priors, values })
    }

    pub fn batch(&self) -> usize {
        self.batch
    }

    pub fn priors(&self) -> usize {
        self.priors
    }

    /// Weight of prior `i` for batch item `n`.
    pub fn get(&self, n: usize, i: usize) -> T {
        self.values[n * self.priors + i]
    }

    pub fn values(&self) -> &[T] {
        &self.values
    }
}

fn sigmoid<T: Scalar>(x: T) -> T {
    let s = if x >= T::zero() {
        T::one() / (T::one() + (-x).exp())
    } else {
        let e = x.exp();
        e / (T::one() + e)
    };
    // saturated logits would otherwise round onto the closed interval ends
    s.max(T::min_positive_value()).min(T::one() - T::epsilon())
}

/// `sigmoid(fc2(relu(fc1(concat(descriptors)))))`, one row per batch item.
pub fn adaptive_weights<T: Scalar>(
    descriptors: &[Descriptor<T>],
    fc1: &DenseLayer<T>,
    fc2: &DenseLayer<T>,
) -> Result<PriorWeightVector<T>, FusionError> {
    let Some(first) = descriptors.first() else {
        return mismatch("no descriptors");
    };
    let batch = first.batch;
    if descriptors.iter().any(|d| d.batch != batch) {
        return mismatch("descriptors disagree on batch size");
    }
    let width: usize = descriptors.iter().map(|d| d.channels).sum();
    if width != fc1.inputs {
        return mismatch(format!("concatenated descriptor length {width} but fc1 takes {}", fc1.inputs));
    }
    if fc1.outputs != fc2.inputs {
        return mismatch(format!("fc1 yields {} values but fc2 takes {}", fc1.outputs, fc2.inputs));
    }
    let mut values = Vec::with_capacity(batch * fc2.outputs);
    for n in 0..batch {
        let concat: Vec<T> = descriptors.iter().flat_map(|d| d.row(n).iter().copied()).collect();
        let hidden: Vec<T> = fc1.forward(&concat)?.into_iter().map(|v| v.max(T::zero())).collect();
        values.extend(fc2.forward(&hidden)?.into_iter().map(sigmoid));
    }
    PriorWeightVector::new(batch, fc2.outputs, values)
}

/// Multiplies every prior tensor by its per-item scalar weight.
pub fn apply_prior_weights<T: Scalar>(
    priors: &[FeatureTensor<T>],
    weights: &PriorWeightVector<T>,
) -> Result<Vec<FeatureTensor<T>>, FusionError> {
    if priors.len() != weights.priors {
        return mismatch(format!("{} priors but {} weights per item", priors.len(), weights.priors));
    }
    priors
        .iter()
        .enumerate()
        .map(|(i, prior)| {
            if prior.batch() != weights.batch {
                return mismatch(format!("prior {i} has batch {} but weights have {}", prior.batch(), weights.batch));
            }
            let item_len = prior.data.len() / prior.batch();
            let data = prior
                .data
                .chunks_exact(item_len)
                .enumerate()
                .flat_map(|(n, item)| {
                    let w = weights.get(n, i);
                    item.iter().map(move |&v| v * w)
                })
                .collect();
            Ok(FeatureTensor { shape: prior.shape, data })
        })
        .collect()
}

/// Adaptive prior weighting: per-input channel projections, pooling and
/// two dense layers.
#[derive(Debug, Clone, PartialEq)]
pub struct AdaptiveWeighting<T> {
    /// One projection per input (the image first, then each prior); `None`
    /// pools the raw tensor.
    pub projections: Vec<Option<DenseLayer<T>>>,
    pub fc1: DenseLayer<T>,
    pub fc2: DenseLayer<T>,
}

impl<T: Scalar> AdaptiveWeighting<T> {
    /// Reads `proj{i}.weight`/`proj{i}.bias` (optional, for each of `inputs`
    /// inputs), `fc1.*` and `fc2.*`.
    pub fn from_fixture(fixture: &ParamFixture, inputs: usize) -> Result<Self, FusionError> {
        let projections = (0..inputs)
            .map(|i| {
                let name = format!("proj{i}");
                fixture.contains(&format!("{name}.weight")).then(|| fixture.dense(&name)).transpose()
            })
            .collect::<Result<_, _>>()?;
        Ok(AdaptiveWeighting { projections, fc1: fixture.dense("fc1")?, fc2: fixture.dense("fc2")? })
    }

    pub fn descriptors(&self, inputs: &[&FeatureTensor<T>]) -> Result<Vec<Descriptor<T>>, FusionError> {
        if inputs.len() != self.projections.len() {
            return mismatch(format!("{} inputs for {} projections", inputs.len(), self.projections.len()));
        }
        inputs
            .iter()
            .zip(&self.projections)
            .map(|(x, proj)| match proj {
                Some(p) => Ok(global_average_pool(&p.project(x)?)),
                None => Ok(global_average_pool(x)),
            })
            .collect()
    }

    pub fn forward(&self, inputs: &[&FeatureTensor<T>]) -> Result<PriorWeightVector<T>, FusionError> {
        adaptive_weights(&self.descriptors(inputs)?, &self.fc1, &self.fc2)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NamedArray {
    pub shape: Vec<usize>,
    pub data: Vec<f64>,
}

/// Named parameter arrays with explicit shapes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamFixture {
    pub arrays: BTreeMap<String, NamedArray>,
}

impl ParamFixture {
    pub fn from_json_str(text: &str) -> Result<Self, FusionError> {
        let fixture: ParamFixture = serde_json::from_str(text).map_err(|e| FusionError::Fixture(e.to_string()))?;
        for (name, a) in &fixture.arrays {
            if a.shape.iter().product::<usize>() != a.data.len() {
                return Err(FusionError::Fixture(format!(
                    "array {name} declares shape {:?} but holds {} values",
                    a.shape,
                    a.data.len()
                )));
            }
        }
        Ok(fixture)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self, FusionError> {
        let text = std::fs::read_to_string(path).map_err(|e| FusionError::Fixture(e.to_string()))?;
        Self::from_json_str(&text)
    }

    pub fn contains(&self, name: &str) -> bool {
        self.arrays.contains_key(name)
    }

    fn array(&self, name: &str, rank: usize) -> Result<&NamedArray, FusionError> {
        let a = self.arrays.get(name).ok_or_else(|| FusionError::Fixture(format!("missing array {name}")))?;
        if a.shape.len() != rank {
            return Err(FusionError::Fixture(format!("array {name} must have rank {rank}, has shape {:?}", a.shape)));
        }
        Ok(a)
    }

    pub fn dense<T: Scalar>(&self, name: &str) -> Result<DenseLayer<T>, FusionError> {
        let w = self.array(&format!("{name}.weight"), 2)?;
        let b = self.array(&format!("{name}.bias"), 1)?;
        DenseLayer::new(
            w.shape[0],
            w.shape[1],
            w.data.iter().map(|&v| T::lit(v)).collect(),
            b.data.iter().map(|&v| T::lit(v)).collect(),
        )
    }

    pub fn tensor<T: Scalar>(&self, name: &str) -> Result<FeatureTensor<T>, FusionError> {
        let a = self.array(name, 4)?;
        FeatureTensor::new(
            [a.shape[0], a.shape[1], a.shape[2], a.shape[3]],
            a.data.iter().map(|&v| T::lit(v)).collect(),
        )
    }

    pub fn matrix(&self, name: &str) -> Result<(usize, usize, &[f64]), FusionError> {
        let a = self.array(name, 2)?;
        Ok((a.shape[0], a.shape[1], &a.data))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn lcg(seed: u64) -> impl FnMut() -> f64 {
        let mut s = seed;
        move || {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (s >> 11) as f64 / (1u64 << 53) as f64
        }
    }

    fn random_tensor(shape: [usize; 4], seed: u64) -> FeatureTensor<f64> {
        let mut next = lcg(seed);
        FeatureTensor::new(shape, (0..shape.iter().product()).map(|_| next() * 4.0 - 2.0).collect()).unwrap()
    }

    #[test]
    fn constant_slice_normalizes_to_zero() {
        let t = FeatureTensor::<f64>::filled([1, 2, 3, 3], 5.0).unwrap();
        let n = instance_normalize(&t, 1e-5).unwrap();
        assert!(n.data().iter().all(|&v| v == 0.0));
    }

    #[test]
    fn unit_slice_is_nearly_unchanged() {
        let t = FeatureTensor::<f64>::new([1, 1, 1, 2], vec![-1.0, 1.0]).unwrap();
        let n = instance_normalize(&t, 1e-5).unwrap();
        assert!((n.data()[0] + 1.0).abs() < 1e-5 && (n.data()[1] - 1.0).abs() < 1e-5);
        let single = FeatureTensor::new([1, 1, 1, 1], vec![3.0]).unwrap();
        assert_eq!(instance_normalize(&single, 1e-5), Err(FusionError::SliceTooSmall(1)));
    }

    #[test]
    fn normalized_slices_have_zero_mean_unit_std() {
        let t = random_tensor([1, 3, 8, 8], 7);
        let n = instance_normalize(&t, INSTANCE_NORM_EPSILON).unwrap();
        for c in 0..3 {
            let (m, s) = mean_std(n.slice(0, c));
            assert!(m.abs() < 1e-6 && (s - 1.0).abs() < 1e-3, "mean {m} std {s}");
        }
    }

    #[test]
    fn modulation_cases() {
        let s = random_tensor([2, 2, 3, 3], 1);
        let zero = FeatureTensor::filled(s.shape(), 0.0).unwrap();
        let id = sft_modulate(&s, &ModulationPair::new(zero.clone(), zero.clone()).unwrap()).unwrap();
        assert_eq!(id, s);
        let minus_one = FeatureTensor::filled(s.shape(), -1.0).unwrap();
        let c = FeatureTensor::filled(s.shape(), 0.25).unwrap();
        let flat = sft_modulate(&s, &ModulationPair::new(minus_one, c).unwrap()).unwrap();
        assert!(flat.data().iter().all(|&v| v == 0.25));
        let one = FeatureTensor::filled(s.shape(), 1.0).unwrap();
        let half = FeatureTensor::filled(s.shape(), 0.5).unwrap();
        let out = sft_modulate(&s, &ModulationPair::new(one, half).unwrap()).unwrap();
        for (o, x) in out.data().iter().zip(s.data()) {
            assert_eq!(*o, 2.0 * x + 0.5);
        }
        let wrong = FeatureTensor::filled([2, 2, 3, 4], 0.0).unwrap();
        assert!(matches!(
            sft_modulate(&s, &ModulationPair { gamma: wrong.clone(), beta: wrong }),
            Err(FusionError::ShapeMismatch(_))
        ));
    }

    #[test]
    fn zero_network_gives_half_weights() {
        let d = Descriptor { batch: 3, channels: 4, values: (0..12).map(f64::from).collect() };
        let w = adaptive_weights(&[d.clone(), d], &DenseLayer::zeros(5, 8), &DenseLayer::zeros(3, 5)).unwrap();
        assert_eq!((w.batch(), w.priors()), (3, 3));
        assert!(w.values().iter().all(|&v| v == 0.5));
    }

    #[test]
    fn weight_shape_errors() {
        let d = Descriptor { batch: 1, channels: 4, values: vec![0.0; 4] };
        assert!(adaptive_weights(std::slice::from_ref(&d), &DenseLayer::zeros(5, 3), &DenseLayer::zeros(2, 5)).is_err());
        assert!(adaptive_weights(&[d], &DenseLayer::zeros(5, 4), &DenseLayer::zeros(2, 6)).is_err());
        assert!(adaptive_weights::<f64>(&[], &DenseLayer::zeros(5, 4), &DenseLayer::zeros(2, 5)).is_err());
    }

    #[test]
    fn prior_weighting_broadcasts_per_item() {
        let ones = FeatureTensor::filled([2, 3, 2, 2], 1.0).unwrap();
        let w = PriorWeightVector::new(2, 1, vec![0.5, 0.5]).unwrap();
        let out = apply_prior_weights(std::slice::from_ref(&ones), &w).unwrap();
        assert!(out[0].data().iter().all(|&v| v == 0.5));

        let unit = PriorWeightVector::new(2, 2, vec![1.0; 4]).unwrap();
        let p = [random_tensor([2, 3, 2, 2], 3), random_tensor([2, 1, 2, 2], 4)];
        assert_eq!(apply_prior_weights(&p, &unit).unwrap(), p.to_vec());

        let w = PriorWeightVector::new(2, 2, vec![0.1, 0.2, 0.3, 0.4]).unwrap();
        let out = apply_prior_weights(&p, &w).unwrap();
        for (i, prior) in p.iter().enumerate() {
            let [_, c, h, ww] = prior.shape();
            for n in 0..2 {
                for k in 0..c * h * ww {
                    let idx = n * c * h * ww + k;
                    assert_eq!(out[i].data()[idx], prior.data()[idx] * w.get(n, i));
                }
            }
        }
        assert!(apply_prior_weights(&p[..1], &w).is_err());
    }

    proptest! {
        #[test]
        fn weights_stay_strictly_inside_unit_interval(seed in any::<u64>(), scale in 0.1f64..1e3) {
            let mut next = lcg(seed);
            let mut rnd = |n: usize| (0..n).map(|_| (next() * 2.0 - 1.0) * scale).collect::<Vec<_>>();
            let d = Descriptor { batch: 2, channels: 6, values: rnd(12) };
            let fc1 = DenseLayer::new(4, 6, rnd(24), rnd(4)).unwrap();
            let fc2 = DenseLayer::new(3, 4, rnd(12), rnd(3)).unwrap();
            let w = adaptive_weights(&[d], &fc1, &fc2).unwrap();
            prop_assert!(w.values().iter().all(|&v| v > 0.0 && v < 1.0));
        }

        #[test]
        fn weighting_is_linear_in_the_prior(seed in any::<u64>(), k in -4.0f64..4.0) {
            let p = random_tensor([2, 2, 3, 3], seed);
            let w = PriorWeightVector::new(2, 1, vec![0.3, 0.8]).unwrap();
            let base = apply_prior_weights(std::slice::from_ref(&p), &w).unwrap();
            let scaled = apply_prior_weights(&[p.map(|v| v * k)], &w).unwrap();
            for (a, b) in scaled[0].data().iter().zip(base[0].data()) {
                prop_assert!((a - k * b).abs() <= 1e-15 * (1.0 + b.abs() * k.abs()));
            }
        }

        #[test]
        fn normalization_is_nearly_idempotent(seed in any::<u64>()) {
            let t = random_tensor([2, 3, 6, 5], seed);
            let once = instance_normalize(&t, INSTANCE_NORM_EPSILON).unwrap();
            let twice = instance_normalize(&once, INSTANCE_NORM_EPSILON).unwrap();
            for (a, b) in once.data().iter().zip(twice.data()) {
                prop_assert!((a - b).abs() < 1e-4);
            }
            let zero = FeatureTensor::filled(t.shape(), 0.0).unwrap();
            let modulated = sft_modulate(&once, &ModulationPair::new(zero.clone(), zero).unwrap()).unwrap();
            for n in 0..2 {
                for c in 0..3 {
                    prop_assert!(mean_std(modulated.slice(n, c)).0.abs() < 1e-6);
                }
            }
        }
    }
}
