//! # subspace-round
//!
//! Spectral clustering by subspace rounding: given a k-dimensional
//! orthonormal embedding of n points, recover a k-partition whose indicator
//! span is close to the embedding in spectral norm, together with the
//! graph-partitioning and matrix-approximation applications built on top of
//! it.
//!
//! The pipeline alternates four moves until every cluster is found:
//!
//! 1. [`spectral::find_cluster`]: pick a core set for one cluster from the
//!    current (projected) embedding;
//! 2. [`unravel::unravel`]: disjointify the sets found so far through a
//!    capacitated bipartite matching;
//! 3. [`spectral::boost`]: re-round the top singular direction of the core
//!    against the full embedding, recovering what the core missed;
//! 4. project the found centers out and repeat.
//!
//! The one-dimensional base case is [`rounding::round_vector`], plain
//! threshold rounding with the normalized-indicator correlation score.
//!
//! Applications ([`graph`]): clustering a graph by the smallest k Laplacian
//! eigenvectors, approximating a symmetric matrix by a partition projector,
//! approximating a graph by a disjoint union of normalized cliques, and a
//! feasibility verifier for the reduction certificate. [`synth`] generates
//! seeded planted instances with measured perturbation levels, and
//! [`verify`] packages every documented invariant as a runnable property
//! suite (`subspace-round verify <suite>` from the CLI).

pub mod error;
pub mod graph;
pub mod io;
pub mod linalg;
pub mod oracle;
pub mod partitions;
pub mod report;
pub mod rounding;
pub mod spectral;
pub mod synth;
pub mod unravel;
pub mod verify;

pub use error::{Error, Result};
pub use partitions::{NodeSet, OverlappingFamily, Partition};
pub use report::ClusteringReport;
pub use spectral::{boost, find_cluster, residual, spectral_clustering, Embedding};
