//! Water types and their per-channel inherent optical properties.
//!
//! Coefficients are evaluated at three fixed wavelengths, one per color
//! channel: red at 650 nm, green at 525 nm and blue at 450 nm. A coefficient
//! file stores those three samples per water type, never a spectral curve.

use std::collections::BTreeMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::scalar::Scalar;

#[derive(Debug, thiserror::Error)]
pub enum WaterError {
    #[error("coefficient table has no entry for water type {0}")]
    MissingWaterType(String),
    #[error("coefficient {field} of water type {water_type} must be positive and finite")]
    NonPositiveCoefficient { water_type: String, field: &'static str },
    #[error("malformed coefficient file: {0}")]
    MalformedFile(String),
    #[error("unknown water type {0:?}")]
    UnknownWaterType(String),
    #[error("failed to read coefficient file: {0}")]
    Io(#[from] std::io::Error),
}

/// Color channel, tied to its reference wavelength.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Channel {
    R,
    G,
    B,
}

impl Channel {
    pub const ALL: [Channel; 3] = [Channel::R, Channel::G, Channel::B];

    #[inline]
    pub const fn index(self) -> usize {
        self as usize
    }

    /// Reference wavelength in nanometres.
    pub const fn wavelength_nm(self) -> u32 {
        match self {
            Channel::R => 650,
            Channel::G => 525,
            Channel::B => 450,
        }
    }
}

impl FromStr for Channel {
    type Err = WaterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "r" | "red" => Ok(Channel::R),
            "g" | "green" => Ok(Channel::G),
            "b" | "blue" => Ok(Channel::B),
            _ => Err(WaterError::MalformedFile(format!("unknown channel {s:?}"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum WaterClass {
    OpenOcean,
    Coastal,
}

/// The ten Jerlov water types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum WaterType {
    #[serde(rename = "I")]
    I,
    #[serde(rename = "IA")]
    IA,
    #[serde(rename = "IB")]
    IB,
    #[serde(rename = "II")]
    II,
    #[serde(rename = "III")]
    III,
    #[serde(rename = "1C")]
    C1,
    #[serde(rename = "3C")]
    C3,
    #[serde(rename = "5C")]
    C5,
    #[serde(rename = "7C")]
    C7,
    #[serde(rename = "9C")]
    C9,
}

impl WaterType {
    pub const ALL: [WaterType; 10] = [
        WaterType::I,
        WaterType::IA,
        WaterType::IB,
        WaterType::II,
        WaterType::III,
        WaterType::C1,
        WaterType::C3,
        WaterType::C5,
        WaterType::C7,
        WaterType::C9,
    ];

    pub const fn name(self) -> &'static str {
        match self {
            WaterType::I => "I",
            WaterType::IA => "IA",
            WaterType::IB => "IB",
            WaterType::II => "II",
            WaterType::III => "III",
            WaterType::C1 => "1C",
            WaterType::C3 => "3C",
            WaterType::C5 => "5C",
            WaterType::C7 => "7C",
            WaterType::C9 => "9C",
        }
    }

    pub const fn class(self) -> WaterClass {
        match self {
            WaterType::I | WaterType::IA | WaterType::IB | WaterType::II | WaterType::III => WaterClass::OpenOcean,
            _ => WaterClass::Coastal,
        }
    }

    /// Stable position in [`WaterType::ALL`], used to key random substreams.
    pub fn ordinal(self) -> u64 {
        WaterType::ALL.iter().position(|&t| t == self).unwrap() as u64
    }
}

impl fmt::Display for WaterType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WaterType {
    type Err = WaterError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        WaterType::ALL
            .iter()
            .copied()
            .find(|t| t.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| WaterError::UnknownWaterType(s.to_string()))
    }
}

/// Absorption `a` and scattering `b` coefficients (1/m) for the r, g, b channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelCoefficients<T> {
    absorption: [T; 3],
    scattering: [T; 3],
}

impl<T: Scalar> ChannelCoefficients<T> {
    /// Builds a coefficient set, rejecting any value that is not strictly
    /// positive and finite.
    pub fn new(absorption: [T; 3], scattering: [T; 3]) -> Result<Self, WaterError> {
        Self::validated(absorption, scattering, "<unnamed>")
    }

    fn validated(absorption: [T; 3], scattering: [T; 3], name: &str) -> Result<Self, WaterError> {
        const A_FIELDS: [&str; 3] = ["a_r", "a_g", "a_b"];
        const B_FIELDS: [&str; 3] = ["b_r", "b_g", "b_b"];
        let checks = absorption.iter().zip(A_FIELDS).chain(scattering.iter().zip(B_FIELDS));
        for (&v, field) in checks {
            if !(v.is_finite() && v > T::zero()) {
                return Err(WaterError::NonPositiveCoefficient { water_type: name.to_string(), field });
            }
        }
        Ok(ChannelCoefficients { absorption, scattering })
    }

    #[inline]
    pub fn absorption(&self, channel: Channel) -> T {
        self.absorption[channel.index()]
    }

    #[inline]
    pub fn scattering(&self, channel: Channel) -> T {
        self.scattering[channel.index()]
    }

    /// Total attenuation `a_c + b_c`.
    #[inline]
    pub fn beta(&self, channel: Channel) -> T {
        self.absorption[channel.index()] + self.scattering[channel.index()]
    }

    pub fn cast<U: Scalar>(&self) -> ChannelCoefficients<U> {
        let conv = |v: [T; 3]| v.map(|x| U::lit(x.to_f64_lossy()));
        ChannelCoefficients { absorption: conv(self.absorption), scattering: conv(self.scattering) }
    }
}

/// Total attenuation of `channel`.
#[inline]
pub fn beta<T: Scalar>(coeffs: &ChannelCoefficients<T>, channel: Channel) -> T {
    coeffs.beta(channel)
}

/// On-disk form of one table entry. Key names are part of the file format.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawEntry {
    a_r: f64,
    a_g: f64,
    a_b: f64,
    b_r: f64,
    b_g: f64,
    b_b: f64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    source: Option<String>,
}

/// Coefficients for every water type, immutable after loading.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientTable<T> {
    entries: BTreeMap<WaterType, ChannelCoefficients<T>>,
    provenance: String,
}

impl<T: Scalar> CoefficientTable<T> {
    pub fn new(
        entries: BTreeMap<WaterType, ChannelCoefficients<T>>,
        provenance: impl Into<String>,
    ) -> Result<Self, WaterError> {
        if let Some(missing) = WaterType::ALL.iter().find(|t| !entries.contains_key(t)) {
            return Err(WaterError::MissingWaterType(missing.name().to_string()));
        }
        Ok(CoefficientTable { entries, provenance: provenance.into() })
    }

    pub fn from_json_str(text: &str) -> Result<Self, WaterError> {
        let raw: BTreeMap<String, RawEntry> =
            serde_json::from_str(text).map_err(|e| WaterError::MalformedFile(e.to_string()))?;

        let mut entries = BTreeMap::new();
        let mut sources: Vec<String> = Vec::new();
        for (key, entry) in raw {
            let water_type = WaterType::from_str(&key)
                .ok()
                .filter(|t| t.name() == key)
                .ok_or_else(|| WaterError::MalformedFile(format!("unknown water type key {key:?}")))?;
            let a = [entry.a_r, entry.a_g, entry.a_b].map(T::lit);
            let b = [entry.b_r, entry.b_g, entry.b_b].map(T::lit);
            entries.insert(water_type, ChannelCoefficients::validated(a, b, &key)?);
            if let Some(src) = entry.source {
                if !sources.contains(&src) {
                    sources.push(src);
                }
            }
        }
        Self::new(entries, sources.join("; "))
    }

    pub fn to_json_string(&self) -> String {
        let raw: BTreeMap<&str, RawEntry> = self
            .entries
            .iter()
            .map(|(t, c)| {
                let a = c.absorption.map(|v| v.to_f64_lossy());
                let b = c.scattering.map(|v| v.to_f64_lossy());
                let entry = RawEntry {
                    a_r: a[0],
                    a_g: a[1],
                    a_b: a[2],
                    b_r: b[0],
                    b_g: b[1],
                    b_b: b[2],
                    source: (!self.provenance.is_empty()).then(|| self.provenance.clone()),
                };
                (t.name(), entry)
            })
            .collect();
        serde_json::to_string_pretty(&raw).expect("table serializes")
    }

    pub fn get(&self, water_type: WaterType) -> &ChannelCoefficients<T> {
        // every type is present once construction succeeded
        &self.entries[&water_type]
    }

    pub fn provenance(&self) -> &str {
        &self.provenance
    }

    pub fn iter(&self) -> impl Iterator<Item = (WaterType, &ChannelCoefficients<T>)> {
        self.entries.iter().map(|(t, c)| (*t, c))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Loads and validates a coefficient file.
pub fn load_coefficient_table<T: Scalar>(path: impl AsRef<Path>) -> Result<CoefficientTable<T>, WaterError> {
    let text = std::fs::read_to_string(path)?;
    CoefficientTable::from_json_str(&text)
}

/// The table bundled with the crate (`data/jerlov_coefficients.json`).
pub const BUNDLED_TABLE_JSON: &str = include_str!("../data/jerlov_coefficients.json");

pub fn bundled_table<T: Scalar>() -> CoefficientTable<T> {
    CoefficientTable::from_json_str(BUNDLED_TABLE_JSON).expect("bundled coefficient table is valid")
}
