//! Growth of scale-free, clustered, small-world graphs through random walks
//! with distance-biased shortcut edges, and the statistics used to assess them.

pub mod cli;
pub mod error;
pub mod generator;
pub mod graph;
pub mod metrics;
pub mod sampling;

pub use error::{Error, Result};
pub use generator::{generate, GenParams, InitialGraphSpec};
pub use graph::{Graph, NodeId};
pub use metrics::{measure, AsplMode, NetworkMetrics};
pub use sampling::{DistanceDistribution, DistanceModel, RngSeed};
