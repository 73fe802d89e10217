//! Fixture formats: text edge lists for graphs, JSON for partitions,
//! embeddings, and symmetric matrices.
//!
//! Graph files hold one `u v w` triple per line, `#` starts a comment, and
//! an optional `n <int>` header pins the node count (otherwise it is
//! inferred as max id + 1). Parse errors carry line numbers.

use std::path::Path;

use ndarray::Array2;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::partitions::Partition;
use crate::spectral::Embedding;

pub fn parse_graph(text: &str) -> Result<WeightedGraph> {
    let mut declared_n: Option<usize> = None;
    let mut edges: Vec<(usize, usize, f64)> = Vec::new();
    let mut max_id = 0usize;
    let mut any_node = false;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        }
        .trim();
        if line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        if fields[0] == "n" {
            if fields.len() != 2 {
                return Err(Error::Parse {
                    line: line_no,
                    message: "header must be exactly `n <int>`".into(),
                });
            }
            let n: usize = fields[1].parse().map_err(|_| Error::Parse {
                line: line_no,
                message: format!("invalid node count `{}`", fields[1]),
            })?;
            declared_n = Some(n);
            continue;
        }
        if fields.len() != 3 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("expected `u v w`, found {} fields", fields.len()),
            });
        }
        let u: usize = fields[0].parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("invalid node id `{}`", fields[0]),
        })?;
        let v: usize = fields[1].parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("invalid node id `{}`", fields[1]),
        })?;
        let w: f64 = fields[2].parse().map_err(|_| Error::Parse {
            line: line_no,
            message: format!("invalid weight `{}`", fields[2]),
        })?;
        if !w.is_finite() || w <= 0.0 {
            return Err(Error::Parse {
                line: line_no,
                message: format!("weight must be positive and finite, found {w}"),
            });
        }
        max_id = max_id.max(u).max(v);
        any_node = true;
        edges.push((u, v, w));
    }

    let n = declared_n.unwrap_or(if any_node { max_id + 1 } else { 0 });
    WeightedGraph::new(n, edges)
}

pub fn format_graph(graph: &WeightedGraph) -> String {
    let mut out = String::new();
    out.push_str(&format!("n {}\n", graph.n()));
    for &(u, v, w) in graph.edges() {
        out.push_str(&format!("{u} {v} {w}\n"));
    }
    out
}

pub fn read_graph(path: &Path) -> Result<WeightedGraph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn write_graph(path: &Path, graph: &WeightedGraph) -> Result<()> {
    Ok(std::fs::write(path, format_graph(graph))?)
}

/// JSON form of an embedding fixture: row-major rows of the k×n matrix plus
/// optional generation metadata.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct EmbeddingFixture {
    pub k: usize,
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub eps_actual: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

impl EmbeddingFixture {
    pub fn from_embedding(y: &Embedding, eps_actual: Option<f64>, seed: Option<u64>) -> Self {
        EmbeddingFixture {
            k: y.k(),
            n: y.n(),
            rows: y
                .matrix()
                .rows()
                .into_iter()
                .map(|r| r.to_vec())
                .collect(),
            eps_actual,
            seed,
        }
    }

    pub fn into_embedding(self) -> Result<Embedding> {
        if self.rows.len() != self.k || self.rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::Numeric(
                "embedding fixture dimensions do not match rows".into(),
            ));
        }
        let mut m = Array2::zeros((self.k, self.n));
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[[i, j]] = x;
            }
        }
        Embedding::new(m)
    }
}

/// JSON form of a symmetric matrix fixture.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MatrixFixture {
    pub n: usize,
    pub rows: Vec<Vec<f64>>,
}

impl MatrixFixture {
    pub fn from_matrix(m: &Array2<f64>) -> Self {
        MatrixFixture {
            n: m.nrows(),
            rows: m.rows().into_iter().map(|r| r.to_vec()).collect(),
        }
    }

    pub fn into_matrix(self) -> Result<Array2<f64>> {
        if self.rows.len() != self.n || self.rows.iter().any(|r| r.len() != self.n) {
            return Err(Error::Numeric(
                "matrix fixture dimensions do not match rows".into(),
            ));
        }
        let mut m = Array2::zeros((self.n, self.n));
        for (i, row) in self.rows.iter().enumerate() {
            for (j, &x) in row.iter().enumerate() {
                m[[i, j]] = x;
            }
        }
        if !crate::linalg::all_finite(&m) {
            return Err(Error::NonFiniteEntries);
        }
        Ok(m)
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    Ok(serde_json::from_str(&std::fs::read_to_string(path)?)?)
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    Ok(std::fs::write(
        path,
        serde_json::to_string_pretty(value)? + "\n",
    )?)
}

pub fn read_partition(path: &Path) -> Result<Partition> {
    read_json(path)
}
