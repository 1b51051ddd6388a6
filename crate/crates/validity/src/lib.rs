//! Fuzzy-clustering validity laboratory.
//!
//! The crate clusters point sets with fuzzy c-means, scores the resulting
//! partitions with eight cluster-validity indexes (membership sharpness,
//! membership entropy, four compactness-vs-separation ratios, a
//! distance-ratio-plus-variance score, and an inter-cluster proximity index
//! built from overlap between membership columns), and sweeps the cluster
//! count to pick the value each index prefers.
//!
//! Modules:
//! - [`core`]: datasets, membership matrices, centroids, solver config.
//! - [`fcm`]: the alternating-optimization solver with restarts.
//! - [`classic`]: the seven centroid/membership-based indexes.
//! - [`proximity`]: the membership-overlap proximity index.
//! - [`data`]: builtin datasets and CSV ingestion.
//! - [`bench`]: the sweep harness, table renderer, and SVG plot.

pub mod bench;
pub mod classic;
pub mod core;
pub mod data;
pub mod error;
pub mod fcm;
pub mod proximity;
