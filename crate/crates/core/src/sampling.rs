//! Stochastic primitives for the growth process: the seeded RNG stream, the
//! step-length coin, the branching-process diameter estimate and the
//! inverse-power shortcut-distance distribution.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// The PRNG used by every stochastic routine in the crate.
pub type WalkRng = ChaCha8Rng;

/// Seed for one run. Equal seeds and parameters give identical graphs.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct RngSeed(pub u64);

impl RngSeed {
    pub fn rng(self) -> WalkRng {
        WalkRng::seed_from_u64(self.0)
    }

    /// An independent seed for a named sub-stream of this run.
    pub fn derive(self, stream: u64) -> RngSeed {
        RngSeed(mix64(
            self.0 ^ mix64(stream.wrapping_add(0x9e37_79b9_7f4a_7c15)),
        ))
    }
}

/// SplitMix64 finalizer.
pub fn mix64(mut z: u64) -> u64 {
    z = z.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

pub(crate) fn check_p1(p1: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p1) {
        Ok(())
    } else {
        Err(Error::invalid(format!("p1 must lie in [0, 1], got {p1}")))
    }
}

/// Number of walk steps before the next mark: 1 with probability `p1`, else 2.
pub fn sample_step_length<R: Rng + ?Sized>(p1: f64, rng: &mut R) -> Result<u32> {
    check_p1(p1)?;
    Ok(step_length(p1, rng))
}

#[inline]
pub(crate) fn step_length<R: Rng + ?Sized>(p1: f64, rng: &mut R) -> u32 {
    if rng.random_bool(p1) {
        1
    } else {
        2
    }
}

/// Knobs of the shortcut-distance distribution.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DistanceModel {
    /// `P(d)` is proportional to `d^-beta`.
    pub beta: f64,
    /// The branching estimate is used only when the average degree exceeds `2 + epsilon`.
    pub epsilon: f64,
}

impl Default for DistanceModel {
    fn default() -> Self {
        DistanceModel {
            beta: 2.0,
            epsilon: 0.05,
        }
    }
}

impl DistanceModel {
    pub fn validate(&self) -> Result<()> {
        if !(self.beta.is_finite() && self.beta > 1.0) {
            return Err(Error::invalid(format!(
                "beta must be > 1, got {}",
                self.beta
            )));
        }
        if !(self.epsilon.is_finite() && self.epsilon >= 0.0) {
            return Err(Error::invalid(format!(
                "epsilon must be finite and >= 0, got {}",
                self.epsilon
            )));
        }
        Ok(())
    }
}

/// Approximate diameter of a graph with `node_count` nodes and `edge_count` edges.
///
/// Treats the graph as a branching process where every node has the average
/// degree `deg`: the ball of radius `k` holds `((deg-1)^k - 1)/(deg-2)` nodes,
/// and twice the radius that covers all nodes is returned. When `deg` is
/// within `epsilon` of 2 the logarithm base degenerates and the path-graph
/// bound `node_count - 1` is returned instead.
pub fn estimate_diameter(node_count: usize, edge_count: usize, epsilon: f64) -> Result<f64> {
    if node_count == 0 {
        return Err(Error::invalid("diameter estimate of an empty graph"));
    }
    let n = node_count as f64;
    let deg = 2.0 * edge_count as f64 / n;
    if deg > 2.0 + epsilon {
        let radius = (n * (deg - 2.0) + 1.0).ln() / (deg - 1.0).ln();
        Ok(2.0 * radius)
    } else {
        Ok((node_count - 1) as f64)
    }
}

/// Floored diameter estimate clamped to `[2, node_count - 1]`.
pub fn support_upper_bound(node_count: usize, edge_count: usize, epsilon: f64) -> Result<usize> {
    if node_count < 3 {
        return Err(Error::invalid(format!(
            "shortcut distances need at least 3 nodes, got {node_count}"
        )));
    }
    let est = estimate_diameter(node_count, edge_count, epsilon)?;
    let floored = if est.is_finite() {
        est.floor() as usize
    } else {
        2
    };
    Ok(floored.clamp(2, node_count - 1))
}

/// Normalized `P(d) = A / d^beta` over `d = 2..=d_max_est`.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceDistribution {
    d_max_est: usize,
    beta: f64,
    normalizer: f64,
    probabilities: Vec<f64>,
    cumulative: Vec<f64>,
}

impl DistanceDistribution {
    pub const D_MIN: usize = 2;

    /// Distribution with support `2..=d_max_est`.
    pub fn with_support(d_max_est: usize, beta: f64) -> Result<Self> {
        if d_max_est < Self::D_MIN {
            return Err(Error::invalid(format!(
                "distance support must reach at least 2, got {d_max_est}"
            )));
        }
        DistanceModel { beta, epsilon: 0.0 }.validate()?;
        let weight = |d: usize| (d as f64).powf(-beta);
        // Smallest terms first keeps the long sums accurate.
        let total: f64 = (Self::D_MIN..=d_max_est).rev().map(weight).sum();
        let normalizer = 1.0 / total;
        let probabilities: Vec<f64> = (Self::D_MIN..=d_max_est)
            .map(|d| normalizer * weight(d))
            .collect();
        let mut acc = 0.0;
        let mut cumulative: Vec<f64> = probabilities
            .iter()
            .map(|p| {
                acc += p;
                acc
            })
            .collect();
        if let Some(last) = cumulative.last_mut() {
            *last = 1.0;
        }
        Ok(DistanceDistribution {
            d_max_est,
            beta,
            normalizer,
            probabilities,
            cumulative,
        })
    }

    /// Distribution sized from the current graph's node and edge counts.
    pub fn for_graph(g: &Graph, model: DistanceModel) -> Result<Self> {
        model.validate()?;
        let d_max_est = support_upper_bound(g.node_count(), g.edge_count(), model.epsilon)?;
        Self::with_support(d_max_est, model.beta)
    }

    pub fn d_max_est(&self) -> usize {
        self.d_max_est
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// The constant `A`.
    pub fn normalizer(&self) -> f64 {
        self.normalizer
    }

    /// `P(d)` for `d = 2, 3, ..., d_max_est`.
    pub fn probabilities(&self) -> &[f64] {
        &self.probabilities
    }

    /// `P(d)`, zero outside the support.
    pub fn probability(&self, d: usize) -> f64 {
        if (Self::D_MIN..=self.d_max_est).contains(&d) {
            self.probabilities[d - Self::D_MIN]
        } else {
            0.0
        }
    }

    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> usize {
        let u: f64 = rng.random();
        let idx = self.cumulative.partition_point(|&c| c <= u);
        Self::D_MIN + idx.min(self.cumulative.len() - 1)
    }
}

/// Draws a shortcut distance from `dist`.
pub fn sample_distance<R: Rng + ?Sized>(dist: &DistanceDistribution, rng: &mut R) -> usize {
    dist.sample(rng)
}
