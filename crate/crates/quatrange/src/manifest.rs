use std::collections::BTreeMap;

use serde::Serialize;

/// Everything needed to reproduce a run. Outputs depend only on the fields
/// other than `wall_time_s`.
#[derive(Debug, Clone, Serialize)]
pub struct RunManifest {
    pub command: String,
    pub input_sha256: Option<String>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub tolerances: BTreeMap<String, f64>,
    pub grid_sizes: BTreeMap<String, usize>,
    pub tool_version: String,
    pub wall_time_s: f64,
}

impl RunManifest {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            input_sha256: None,
            seed: None,
            samples: None,
            tolerances: BTreeMap::new(),
            grid_sizes: BTreeMap::new(),
            tool_version: env!("CARGO_PKG_VERSION").to_string(),
            wall_time_s: 0.0,
        }
    }

    pub fn tolerance(mut self, name: &str, v: f64) -> Self {
        self.tolerances.insert(name.to_string(), v);
        self
    }

    pub fn grid(mut self, name: &str, v: usize) -> Self {
        self.grid_sizes.insert(name.to_string(), v);
        self
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("manifest serializes")
    }
}
