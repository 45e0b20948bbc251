// SPDX-License-Identifier: Apache-2.0

//! Blockmodel samplers.
//!
//! * [`FourParamSbm`]: `K` blocks of `s` nodes, in-block probability `p`,
//!   out-of-block probability `r`. The planted block is the first one.
//! * [`LocalSbm`]: one planted block of `s` nodes attached to a background
//!   graph on `n` nodes. In-block pairs appear with probability `p_in`, pairs
//!   across the boundary with probability `p_out`.
//! * [`DegreeCorrectedLocalSbm`]: as above, but a cross pair `(i, j)` appears
//!   with probability `min(d*_j / n, 1)`, `d*_j` being the degree of `j` in the
//!   background graph.
//!
//! In the local models the background occupies ids `0..n` and the planted set
//! the last `s` ids `n..n+s`. Inequality constraints on edge probabilities are
//! realized with equality and no self-loops are generated.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::UndirectedGraph;
use crate::metrics::{count_triangles, two_star_count};
use crate::rng::{derive_seed, for_each_bernoulli, for_each_random_pair, stream};

const TAG_BACKGROUND: u64 = 1;
const TAG_WITHIN: u64 = 2;
const TAG_CROSS: u64 = 3;

fn check_probability(name: &str, p: f64) -> Result<()> {
    if (0.0..=1.0).contains(&p) {
        Ok(())
    } else {
        Err(Error::domain(format!("{name} must lie in [0, 1], got {p}")))
    }
}

/// Planted partition with `blocks` equal blocks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FourParamSbm {
    pub blocks: usize,
    pub block_size: usize,
    pub p: f64,
    pub r: f64,
}

impl FourParamSbm {
    pub fn new(blocks: usize, block_size: usize, p: f64, r: f64) -> Result<Self> {
        let m = FourParamSbm {
            blocks,
            block_size,
            p,
            r,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn validate(&self) -> Result<()> {
        if self.blocks == 0 || self.block_size == 0 {
            return Err(Error::domain(
                "block count and block size must be at least 1",
            ));
        }
        check_probability("p", self.p)?;
        check_probability("r", self.r)?;
        if self.r > self.p {
            return Err(Error::domain(format!(
                "out-of-block probability r = {} exceeds in-block probability p = {}",
                self.r, self.p
            )));
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.blocks * self.block_size
    }

    /// `s·p + (n − s)·r`, counting a self-pair in the block as the closed form does.
    pub fn expected_degree(&self) -> f64 {
        let s = self.block_size as f64;
        s * self.p + (self.n() - self.block_size) as f64 * self.r
    }
}

/// Graph outside the planted set.
#[derive(Debug, Clone, PartialEq)]
pub enum BackgroundSpec {
    /// Erdős–Rényi with per-pair probability `mean_degree / (n − 1)`.
    ErdosRenyi { mean_degree: f64 },
    /// Given graph, used as is.
    Fixed(UndirectedGraph),
}

impl BackgroundSpec {
    fn validate(&self, n: usize) -> Result<()> {
        match self {
            BackgroundSpec::ErdosRenyi { mean_degree } => {
                if mean_degree.is_nan() || *mean_degree < 0.0 {
                    return Err(Error::domain(format!(
                        "background mean degree must be non-negative, got {mean_degree}"
                    )));
                }
            }
            BackgroundSpec::Fixed(g) => {
                if g.n() != n {
                    return Err(Error::domain(format!(
                        "fixed background has {} nodes, model needs {n}",
                        g.n()
                    )));
                }
            }
        }
        Ok(())
    }

    /// Background edges on `0..n`, drawn from the background stream of `seed`.
    fn edges(&self, n: usize, seed: u64) -> Vec<(usize, usize)> {
        match self {
            BackgroundSpec::ErdosRenyi { mean_degree } => {
                let mut edges = Vec::new();
                if n >= 2 {
                    let p = (mean_degree / (n - 1) as f64).min(1.0);
                    let mut rng = stream(seed, TAG_BACKGROUND);
                    for_each_random_pair(&mut rng, n, p, |u, v| edges.push((u, v)));
                }
                edges
            }
            BackgroundSpec::Fixed(g) => g.edges().to_vec(),
        }
    }
}

/// Local blockmodel with a uniform cross-boundary probability.
#[derive(Debug, Clone, PartialEq)]
pub struct LocalSbm {
    pub n: usize,
    pub s: usize,
    pub p_in: f64,
    pub p_out: f64,
    pub background: BackgroundSpec,
}

impl LocalSbm {
    pub fn validate(&self) -> Result<()> {
        if self.s == 0 {
            return Err(Error::domain("planted set size s must be at least 1"));
        }
        check_probability("p_in", self.p_in)?;
        check_probability("p_out", self.p_out)?;
        if self.p_in == 0.0 {
            return Err(Error::domain("p_in must be positive"));
        }
        self.background.validate(self.n)
    }
}

/// Local blockmodel whose cross-boundary probabilities follow background degrees.
#[derive(Debug, Clone, PartialEq)]
pub struct DegreeCorrectedLocalSbm {
    pub n: usize,
    pub s: usize,
    pub p_in: f64,
    pub background: BackgroundSpec,
}

impl DegreeCorrectedLocalSbm {
    pub fn validate(&self) -> Result<()> {
        if self.s == 0 {
            return Err(Error::domain("planted set size s must be at least 1"));
        }
        check_probability("p_in", self.p_in)?;
        if self.p_in == 0.0 {
            return Err(Error::domain("p_in must be positive"));
        }
        self.background.validate(self.n)
    }
}

/// A sampled graph together with its planted set.
#[derive(Debug, Clone, PartialEq)]
pub struct SampleResult {
    pub graph: UndirectedGraph,
    /// Sorted planted node ids.
    pub planted: Vec<usize>,
    pub seed: u64,
}

impl SampleResult {
    /// `Σ_{i,j ∉ S*} A_ij / |S*ᶜ|` over ordered pairs: the mean degree of the
    /// graph induced outside the planted set.
    pub fn realized_lambda(&self) -> f64 {
        let n = self.graph.n();
        let outside = n - self.planted.len();
        if outside == 0 {
            return 0.0;
        }
        let mut inside = vec![false; n];
        for &i in &self.planted {
            inside[i] = true;
        }
        let count = self
            .graph
            .edges()
            .iter()
            .filter(|&&(u, v)| !inside[u] && !inside[v])
            .count();
        2.0 * count as f64 / outside as f64
    }

    pub fn is_planted(&self, node: usize) -> bool {
        self.planted.binary_search(&node).is_ok()
    }
}

fn within_block_edges(
    first: usize,
    s: usize,
    p: f64,
    rng: &mut impl rand::Rng,
    edges: &mut Vec<(usize, usize)>,
) {
    for_each_random_pair(rng, s, p, |u, v| edges.push((first + u, first + v)));
}

/// Samples the planted partition; the planted set is block 0.
pub fn sample_four_param(m: &FourParamSbm, seed: u64) -> Result<SampleResult> {
    m.validate()?;
    let n = m.n();
    let s = m.block_size;
    let mut edges = Vec::new();
    let mut within = stream(seed, TAG_WITHIN);
    for b in 0..m.blocks {
        within_block_edges(b * s, s, m.p, &mut within, &mut edges);
    }
    // Every pair is offered at probability r; same-block pairs are discarded
    // since they were already drawn at probability p.
    let mut cross = stream(seed, TAG_CROSS);
    for_each_random_pair(&mut cross, n, m.r, |u, v| {
        if u / s != v / s {
            edges.push((u, v));
        }
    });
    Ok(SampleResult {
        graph: UndirectedGraph::from_edges(n, edges)?,
        planted: (0..s).collect(),
        seed,
    })
}

/// Samples the local blockmodel on `n + s` nodes.
pub fn sample_local_sbm(m: &LocalSbm, seed: u64) -> Result<SampleResult> {
    m.validate()?;
    let (n, s) = (m.n, m.s);
    let mut edges = m.background.edges(n, seed);
    within_block_edges(n, s, m.p_in, &mut stream(seed, TAG_WITHIN), &mut edges);
    let mut cross = stream(seed, TAG_CROSS);
    for_each_bernoulli(&mut cross, (s as u64) * (n as u64), m.p_out, |idx| {
        let i = n + (idx / n as u64) as usize;
        let j = (idx % n as u64) as usize;
        edges.push((j, i));
    });
    Ok(SampleResult {
        graph: UndirectedGraph::from_edges(n + s, edges)?,
        planted: (n..n + s).collect(),
        seed,
    })
}

/// Samples the degree-corrected local blockmodel on `n + s` nodes. The
/// background is drawn first and the cross pairs are drawn conditionally on
/// its degrees.
pub fn sample_dc_local_sbm(m: &DegreeCorrectedLocalSbm, seed: u64) -> Result<SampleResult> {
    m.validate()?;
    let (n, s) = (m.n, m.s);
    let background = m.background.edges(n, seed);
    let mut degree = vec![0usize; n];
    for &(u, v) in &background {
        degree[u] += 1;
        degree[v] += 1;
    }
    let mut edges = background;
    within_block_edges(n, s, m.p_in, &mut stream(seed, TAG_WITHIN), &mut edges);
    let mut cross = stream(seed, TAG_CROSS);
    for (j, &d) in degree.iter().enumerate() {
        let q = (d as f64 / n as f64).min(1.0);
        for_each_bernoulli(&mut cross, s as u64, q, |k| edges.push((j, n + k as usize)));
    }
    Ok(SampleResult {
        graph: UndirectedGraph::from_edges(n + s, edges)?,
        planted: (n..n + s).collect(),
        seed,
    })
}

/// `s·p + (n − s)·r`.
pub fn expected_degree(m: &FourParamSbm) -> f64 {
    m.expected_degree()
}

/// Approximate limiting transitivity of the planted partition when
/// `r = c0 / n`: `p³s² / (p²s² + c0² + 2spc0)`.
pub fn limiting_transitivity(p: f64, s: usize, c0: f64) -> Result<f64> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::domain(format!("p must lie in (0, 1], got {p}")));
    }
    if s < 3 {
        return Err(Error::domain(format!(
            "block size must be at least 3, got {s}"
        )));
    }
    if c0.is_nan() || c0 < 0.0 {
        return Err(Error::domain(format!("c0 must be non-negative, got {c0}")));
    }
    let s = s as f64;
    let den = p * p * s * s + c0 * c0 + 2.0 * s * p * c0;
    if den == 0.0 {
        return Err(Error::domain("limiting transitivity denominator is zero"));
    }
    Ok(p.powi(3) * s * s / den)
}

/// Monte Carlo estimate of the probability that a 2-star is closed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PDeltaEstimate {
    pub estimate: f64,
    pub std_error: f64,
    pub closed_two_stars: u64,
    pub two_stars: u64,
    pub trials: usize,
}

/// Pools closed and total 2-stars (`u–i–v`, unordered ends) over `trials`
/// sampled graphs. The standard error is that of a ratio estimator across
/// trials, or the binomial one for a single trial.
pub fn estimate_p_delta(m: &FourParamSbm, trials: usize, seed: u64) -> Result<PDeltaEstimate> {
    if trials == 0 {
        return Err(Error::domain("trials must be at least 1"));
    }
    m.validate()?;
    let counts: Vec<(u64, u64)> = (0..trials)
        .into_par_iter()
        .map(|t| {
            let sample = sample_four_param(m, derive_seed(seed, t as u64))?;
            let g = &sample.graph;
            Ok((3 * count_triangles(g), two_star_count(g) / 2))
        })
        .collect::<Result<_>>()?;
    let closed: u64 = counts.iter().map(|c| c.0).sum();
    let stars: u64 = counts.iter().map(|c| c.1).sum();
    if stars == 0 {
        return Err(Error::NoTwoStars);
    }
    let estimate = closed as f64 / stars as f64;
    let std_error = if trials == 1 {
        (estimate * (1.0 - estimate) / stars as f64).sqrt()
    } else {
        let t = trials as f64;
        let mean_stars = stars as f64 / t;
        let ss: f64 = counts
            .iter()
            .map(|&(c, st)| (c as f64 - estimate * st as f64).powi(2))
            .sum();
        (ss / (t * (t - 1.0))).sqrt() / mean_stars
    };
    Ok(PDeltaEstimate {
        estimate,
        std_error,
        closed_two_stars: closed,
        two_stars: stars,
        trials,
    })
}
