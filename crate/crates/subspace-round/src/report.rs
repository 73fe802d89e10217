//! Machine-readable clustering reports emitted by the CLI and returned by
//! the library entry points.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

/// Metrics bundle for one clustering run. `runtime_ms` is informational and
/// excluded from determinism comparisons; every other field is a pure
/// function of (fixture, seed, parameters).
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct ClusteringReport {
    pub k: usize,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub delta_to_truth: Option<f64>,
    pub residual: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub per_cluster_expansion: Option<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub lambda_k1: Option<f64>,
    pub runtime_ms: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub algorithm_parameters: BTreeMap<String, serde_json::Value>,
}

impl ClusteringReport {
    /// Equality modulo the runtime field.
    pub fn same_metrics(&self, other: &ClusteringReport) -> bool {
        let mut a = self.clone();
        let mut b = other.clone();
        a.runtime_ms = 0.0;
        b.runtime_ms = 0.0;
        a == b
    }
}
