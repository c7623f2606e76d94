//! `manifest.json`: versioned, byte-stable listing of every synthesized item.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::pipeline::{Normalization, PipelineError, SynthesisRecord};

pub const MANIFEST_SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Manifest {
    pub schema_version: u32,
    /// Transform loaders should apply to the unit-interval 8-bit files.
    pub normalization: Normalization,
    pub coefficient_provenance: String,
    pub records: Vec<SynthesisRecord>,
}

impl Manifest {
    pub fn new(
        normalization: Normalization,
        coefficient_provenance: impl Into<String>,
        records: Vec<SynthesisRecord>,
    ) -> Self {
        Manifest {
            schema_version: MANIFEST_SCHEMA_VERSION,
            normalization,
            coefficient_provenance: coefficient_provenance.into(),
            records,
        }
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("manifest serializes");
        s.push('\n');
        s
    }

    pub fn from_json(text: &str) -> Result<Self, PipelineError> {
        let value: serde_json::Value =
            serde_json::from_str(text).map_err(|e| PipelineError::Manifest(e.to_string()))?;
        let found = value
            .get("schema_version")
            .and_then(serde_json::Value::as_u64)
            .ok_or_else(|| PipelineError::Manifest("missing schema_version".into()))?;
        if found != u64::from(MANIFEST_SCHEMA_VERSION) {
            return Err(PipelineError::SchemaVersionMismatch { found, expected: MANIFEST_SCHEMA_VERSION });
        }
        serde_json::from_value(value).map_err(|e| PipelineError::Manifest(e.to_string()))
    }
}

pub fn write_manifest(manifest: &Manifest, path: impl AsRef<Path>) -> Result<(), PipelineError> {
    let path = path.as_ref();
    std::fs::write(path, manifest.to_json()).map_err(|e| PipelineError::io(path, e))
}

pub fn read_manifest(path: impl AsRef<Path>) -> Result<Manifest, PipelineError> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path).map_err(|e| PipelineError::io(path, e))?;
    Manifest::from_json(&text)
}
