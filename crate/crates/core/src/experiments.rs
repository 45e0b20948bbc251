// SPDX-License-Identifier: Apache-2.0

//! Monte Carlo experiments over the blockmodel samplers.
//!
//! Each experiment derives one seed per trial from a master seed, runs the
//! trials in parallel and folds the outcomes in trial order, so reports are
//! identical for identical configurations regardless of thread count.
//! Wall-clock time is kept on the report but never serialized.

use std::io::Write;
use std::path::PathBuf;
use std::time::{Duration, Instant};

use rand::Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::clustering::{build_dendrogram, cut_dendrogram, local_trans};
use crate::error::{Error, Result};
use crate::format::fmt_real;
use crate::graph::{load_edge_list, UndirectedGraph};
use crate::metrics::transitivity_ratio;
use crate::models::{
    limiting_transitivity, sample_dc_local_sbm, sample_four_param, sample_local_sbm,
    BackgroundSpec, DegreeCorrectedLocalSbm, FourParamSbm, LocalSbm, SampleResult,
};
use crate::rng::{derive_seed, for_each_random_pair, stream};
use crate::similarity::{laplacian_support, triangle_support, LaplacianConfig, WeightedSimilarity};

/// Stream tag for choosing the single tested seed node; the samplers use 1-3.
const TAG_SEED_CHOICE: u64 = 4;

/// Background description as it appears in JSON parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BackgroundParams {
    ErdosRenyi {
        mean_degree: f64,
    },
    /// Edge-list file; its node count must equal the model's `n`.
    Fixed {
        path: PathBuf,
    },
}

impl BackgroundParams {
    pub fn resolve(&self) -> Result<BackgroundSpec> {
        match self {
            BackgroundParams::ErdosRenyi { mean_degree } => Ok(BackgroundSpec::ErdosRenyi {
                mean_degree: *mean_degree,
            }),
            BackgroundParams::Fixed { path } => {
                let file = std::fs::File::open(path).map_err(|e| Error::file(path, e))?;
                Ok(BackgroundSpec::Fixed(load_edge_list(
                    std::io::BufReader::new(file),
                )?))
            }
        }
    }
}

fn nominal_lambda(bg: &BackgroundSpec) -> f64 {
    match bg {
        BackgroundSpec::ErdosRenyi { mean_degree } => *mean_degree,
        BackgroundSpec::Fixed(g) => g.mean_degree(),
    }
}

/// Serializable model description shared by `simulate` and `experiment`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "model", rename_all = "snake_case")]
pub enum ModelParams {
    Four {
        blocks: usize,
        block_size: usize,
        p: f64,
        r: f64,
    },
    Local {
        n: usize,
        s: usize,
        p_in: f64,
        p_out: f64,
        background: BackgroundParams,
    },
    Dclocal {
        n: usize,
        s: usize,
        p_in: f64,
        background: BackgroundParams,
    },
}

/// A model ready to sample.
#[derive(Debug, Clone, PartialEq)]
pub enum ModelSpec {
    Four(FourParamSbm),
    Local(LocalSbm),
    DcLocal(DegreeCorrectedLocalSbm),
}

impl ModelParams {
    pub fn resolve(&self) -> Result<ModelSpec> {
        let spec = match self {
            ModelParams::Four {
                blocks,
                block_size,
                p,
                r,
            } => ModelSpec::Four(FourParamSbm::new(*blocks, *block_size, *p, *r)?),
            ModelParams::Local {
                n,
                s,
                p_in,
                p_out,
                background,
            } => ModelSpec::Local(LocalSbm {
                n: *n,
                s: *s,
                p_in: *p_in,
                p_out: *p_out,
                background: background.resolve()?,
            }),
            ModelParams::Dclocal {
                n,
                s,
                p_in,
                background,
            } => ModelSpec::DcLocal(DegreeCorrectedLocalSbm {
                n: *n,
                s: *s,
                p_in: *p_in,
                background: background.resolve()?,
            }),
        };
        spec.validate()?;
        Ok(spec)
    }
}

impl ModelSpec {
    pub fn validate(&self) -> Result<()> {
        match self {
            ModelSpec::Four(m) => m.validate(),
            ModelSpec::Local(m) => m.validate(),
            ModelSpec::DcLocal(m) => m.validate(),
        }
    }

    pub fn sample(&self, seed: u64) -> Result<SampleResult> {
        match self {
            ModelSpec::Four(m) => sample_four_param(m, seed),
            ModelSpec::Local(m) => sample_local_sbm(m, seed),
            ModelSpec::DcLocal(m) => sample_dc_local_sbm(m, seed),
        }
    }

    /// Mean degree of the background the model was configured with.
    pub fn nominal_lambda(&self) -> Option<f64> {
        match self {
            ModelSpec::Four(_) => None,
            ModelSpec::Local(m) => Some(nominal_lambda(&m.background)),
            ModelSpec::DcLocal(m) => Some(nominal_lambda(&m.background)),
        }
    }

    fn planted_size_and_p_in(&self) -> (usize, f64) {
        match self {
            ModelSpec::Four(m) => (m.block_size, m.p),
            ModelSpec::Local(m) => (m.s, m.p_in),
            ModelSpec::DcLocal(m) => (m.s, m.p_in),
        }
    }

    fn background_size(&self) -> usize {
        match self {
            ModelSpec::Four(m) => m.n() - m.block_size,
            ModelSpec::Local(m) => m.n,
            ModelSpec::DcLocal(m) => m.n,
        }
    }
}

/// Regularizer choice: a fixed value, or the realized mean degree of each
/// sampled graph.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TauChoice {
    Value(f64),
    Named(NamedTau),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedTau {
    MeanDegree,
}

/// Threshold choice for the Laplacian similarity.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CutChoice {
    Value(f64),
    Named(NamedCut),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum NamedCut {
    /// `(2(s−1)p_in + 2λ + τ)^{−3}` with the nominal background degree λ.
    #[serde(alias = "theorem3")]
    ClosedForm,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "similarity", rename_all = "snake_case")]
pub enum RecoveryAlgorithm {
    Adjacency { cut: f64 },
    Laplacian { tau: TauChoice, cut: CutChoice },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SeedsToTest {
    #[default]
    All,
    OneRandom,
}

fn default_epsilon() -> f64 {
    0.1
}

/// Configuration of a planted-set recovery experiment.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RecoveryConfig {
    pub model: ModelParams,
    pub algorithm: RecoveryAlgorithm,
    pub trials: usize,
    pub seed: u64,
    /// Which of the two recorded success events is the headline rate.
    #[serde(default)]
    pub seeds_to_test: SeedsToTest,
    /// Exponent of the sample-size condition attached to the Laplacian
    /// threshold; only reported.
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
}

/// `(2(s−1)p_in + 2λ + τ)^{−3}`.
pub fn closed_form_cut(s: usize, p_in: f64, lambda: f64, tau: f64) -> f64 {
    closed_form_base(s, p_in, lambda, tau).powi(-3)
}

fn closed_form_base(s: usize, p_in: f64, lambda: f64, tau: f64) -> f64 {
    2.0 * (s as f64 - 1.0) * p_in + 2.0 * lambda + tau
}

/// Computable part of the recovery failure bound for the adjacency
/// similarity: `½s²(1−p_in²)^{s−2}` at cut 1 and `s³(1−p_in²)^{s−3}` at cut 2.
pub fn adjacency_failure_bound(s: usize, p_in: f64, cut: u32) -> Result<f64> {
    let q = 1.0 - p_in * p_in;
    let s_f = s as f64;
    match cut {
        1 => {
            if s < 2 {
                return Err(Error::domain("cut 1 bound needs s >= 2"));
            }
            Ok(0.5 * s_f * s_f * q.powi(s as i32 - 2))
        }
        2 => {
            if s < 3 {
                return Err(Error::domain("cut 2 bound needs s >= 3"));
            }
            Ok(s_f.powi(3) * q.powi(s as i32 - 3))
        }
        other => Err(Error::domain(format!(
            "bound is stated for cut 1 or 2, got {other}"
        ))),
    }
}

/// Outcome of one recovery trial.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoveryTrial {
    pub trial: usize,
    pub seed: u64,
    /// Every planted node recovers exactly the planted set.
    pub all_seeds_success: bool,
    /// The randomly chosen planted node recovers exactly the planted set.
    pub single_seed_success: bool,
    pub single_seed_node: usize,
    pub cluster_size: usize,
    /// Planted nodes in the single-seed cluster.
    pub overlap: usize,
    pub realized_lambda: f64,
    pub tau: Option<f64>,
    pub cut: f64,
}

/// Success rate with its binomial standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Rate {
    pub rate: f64,
    pub std_error: f64,
}

impl Rate {
    fn of(successes: usize, trials: usize) -> Self {
        let t = trials as f64;
        let rate = successes as f64 / t;
        Rate {
            rate,
            std_error: (rate * (1.0 - rate) / t).sqrt(),
        }
    }
}

/// Mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanEstimate {
    pub mean: f64,
    pub std_error: f64,
}

impl MeanEstimate {
    pub fn of(values: &[f64]) -> Self {
        let t = values.len() as f64;
        let mean = values.iter().sum::<f64>() / t;
        let std_error = if values.len() < 2 {
            0.0
        } else {
            let var = values.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (t - 1.0);
            (var / t).sqrt()
        };
        MeanEstimate { mean, std_error }
    }
}

/// Bound terms that can be evaluated, next to the raw parameter combinations
/// of the terms whose constants are unknown.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BoundReport {
    /// `½s²(1−p_in²)^{s−2}` (cut 1 and Laplacian) or `s³(1−p_in²)^{s−3}` (cut 2).
    pub leading_term: Option<f64>,
    /// `p_out²·n·s·(s+λ)` or `p_out³·n·s·(s+λ)²` for the uniform local model.
    pub unknown_constant_term_parameters: Option<f64>,
    /// `s·exp(−s·p_in/4 + λ)` for the Laplacian threshold.
    pub exponential_term: Option<f64>,
    /// `n^{3ε−1}` for the Laplacian threshold.
    pub sample_size_term: Option<f64>,
    /// Whether `n ≥ 3(2(s−1)p_in + 2λ + τ)^{3/ε} τ^{−1/ε}` holds at the mean τ.
    pub sample_size_condition_met: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RecoverySummary {
    pub trials: usize,
    pub all_seeds: Rate,
    pub single_seed: Rate,
    /// Rate selected by `seeds_to_test`.
    pub success: Rate,
    pub mean_realized_lambda: f64,
    pub mean_cut: f64,
    pub mean_tau: Option<f64>,
    pub bound: BoundReport,
}

#[derive(Debug, Clone, Serialize)]
pub struct RecoveryReport {
    pub config: RecoveryConfig,
    pub summary: RecoverySummary,
    pub trials: Vec<RecoveryTrial>,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn run_recovery_trial(
    model: &ModelSpec,
    algorithm: &RecoveryAlgorithm,
    trial: usize,
    seed: u64,
) -> Result<RecoveryTrial> {
    let sample = model.sample(seed)?;
    let g = &sample.graph;
    let (s, p_in) = model.planted_size_and_p_in();
    let (sim, tau, cut): (WeightedSimilarity, Option<f64>, f64) = match algorithm {
        RecoveryAlgorithm::Adjacency { cut } => (triangle_support(g), None, *cut),
        RecoveryAlgorithm::Laplacian { tau, cut } => {
            let tau = match tau {
                TauChoice::Value(t) => *t,
                TauChoice::Named(NamedTau::MeanDegree) => g.mean_degree(),
            };
            let cut = match cut {
                CutChoice::Value(c) => *c,
                CutChoice::Named(NamedCut::ClosedForm) => {
                    let lambda = model.nominal_lambda().ok_or_else(|| {
                        Error::Config("the closed-form cut needs a local model".into())
                    })?;
                    closed_form_cut(s, p_in, lambda, tau)
                }
            };
            (
                laplacian_support(g, LaplacianConfig::new(tau)?),
                Some(tau),
                cut,
            )
        }
    };

    let pick = stream(seed, TAG_SEED_CHOICE).random_range(0..sample.planted.len());
    let single_seed_node = sample.planted[pick];
    let mut all_seeds_success = true;
    let mut single = Vec::new();
    for &i in &sample.planted {
        let found = local_trans(&sim, i, cut)?;
        if found != sample.planted {
            all_seeds_success = false;
        }
        if i == single_seed_node {
            single = found;
        }
    }
    let overlap = single.iter().filter(|&&v| sample.is_planted(v)).count();
    Ok(RecoveryTrial {
        trial,
        seed,
        all_seeds_success,
        single_seed_success: single == sample.planted,
        single_seed_node,
        cluster_size: single.len(),
        overlap,
        realized_lambda: sample.realized_lambda(),
        tau,
        cut,
    })
}

/// Samples the configured model `trials` times and records whether the
/// local cluster grown from the planted nodes equals the planted set.
pub fn run_recovery(cfg: &RecoveryConfig) -> Result<RecoveryReport> {
    if cfg.trials == 0 {
        return Err(Error::Config("trials must be at least 1".into()));
    }
    let start = Instant::now();
    let model = cfg.model.resolve()?;
    if matches!(model, ModelSpec::Four(_)) {
        return Err(Error::Config(
            "recovery needs a local or dclocal model".into(),
        ));
    }
    let trials: Vec<RecoveryTrial> = (0..cfg.trials)
        .into_par_iter()
        .map(|t| run_recovery_trial(&model, &cfg.algorithm, t, derive_seed(cfg.seed, t as u64)))
        .collect::<Result<_>>()?;

    let count = trials.len();
    let all_seeds = Rate::of(trials.iter().filter(|t| t.all_seeds_success).count(), count);
    let single_seed = Rate::of(
        trials.iter().filter(|t| t.single_seed_success).count(),
        count,
    );
    let success = match cfg.seeds_to_test {
        SeedsToTest::All => all_seeds,
        SeedsToTest::OneRandom => single_seed,
    };
    let mean = |f: &dyn Fn(&RecoveryTrial) -> f64| trials.iter().map(f).sum::<f64>() / count as f64;
    let mean_tau = trials[0].tau.map(|_| mean(&|t| t.tau.unwrap_or(0.0)));
    let summary = RecoverySummary {
        trials: count,
        all_seeds,
        single_seed,
        success,
        mean_realized_lambda: mean(&|t| t.realized_lambda),
        mean_cut: mean(&|t| t.cut),
        mean_tau,
        bound: bound_report(&model, &cfg.algorithm, mean_tau, cfg.epsilon),
    };
    Ok(RecoveryReport {
        config: cfg.clone(),
        summary,
        trials,
        elapsed: start.elapsed(),
    })
}

fn bound_report(
    model: &ModelSpec,
    algorithm: &RecoveryAlgorithm,
    tau: Option<f64>,
    epsilon: f64,
) -> BoundReport {
    let (s, p_in) = model.planted_size_and_p_in();
    let n = model.background_size() as f64;
    let lambda = model.nominal_lambda().unwrap_or(0.0);
    let s_f = s as f64;
    let mut report = BoundReport {
        leading_term: None,
        unknown_constant_term_parameters: None,
        exponential_term: None,
        sample_size_term: None,
        sample_size_condition_met: None,
    };
    match algorithm {
        RecoveryAlgorithm::Adjacency { cut } => {
            let p_out = match model {
                ModelSpec::Local(m) => Some(m.p_out),
                _ => None,
            };
            if *cut == 1.0 {
                report.leading_term = adjacency_failure_bound(s, p_in, 1).ok();
                report.unknown_constant_term_parameters =
                    p_out.map(|p| p * p * n * s_f * (s_f + lambda));
            } else if *cut == 2.0 {
                report.leading_term = adjacency_failure_bound(s, p_in, 2).ok();
                report.unknown_constant_term_parameters =
                    p_out.map(|p| p.powi(3) * n * s_f * (s_f + lambda).powi(2));
            }
        }
        RecoveryAlgorithm::Laplacian { .. } => {
            report.leading_term = adjacency_failure_bound(s, p_in, 1).ok();
            report.exponential_term = Some(s_f * (-0.25 * s_f * p_in + lambda).exp());
            report.sample_size_term = Some(n.powf(3.0 * epsilon - 1.0));
            report.sample_size_condition_met = tau.map(|tau| {
                let base = closed_form_base(s, p_in, lambda, tau);
                n >= 3.0 * base.powf(3.0 / epsilon) * tau.powf(-1.0 / epsilon)
            });
        }
    }
    report
}

/// Planted partition with `r = c0 / n` sampled at several sizes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransLimitConfig {
    pub p: f64,
    pub block_size: usize,
    pub c0: f64,
    /// Requested sizes; each is rounded down to a multiple of `block_size`.
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
}

/// Erdős–Rényi graphs with `p_n = n^{exponent} / n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransVanishConfig {
    pub n_values: Vec<usize>,
    pub trials: usize,
    pub seed: u64,
    /// Growth exponent of the mean degree, in `(0, 1)`.
    #[serde(default = "default_exponent")]
    pub exponent: f64,
}

fn default_exponent() -> f64 {
    0.5
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransTrial {
    pub n: usize,
    pub trial: usize,
    pub seed: u64,
    pub transitivity: f64,
}

/// Aggregate at one graph size.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TransLevel {
    pub n: usize,
    pub transitivity: MeanEstimate,
    /// Value the mean is compared with: the limiting constant, or the edge
    /// probability for Erdős–Rényi graphs.
    pub reference: f64,
    pub gap: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct TransReport<C> {
    pub config: C,
    pub levels: Vec<TransLevel>,
    /// Means strictly decrease with `n` (Erdős–Rényi) or gaps shrink from the
    /// first to the last size (planted partition).
    pub trend_holds: bool,
    pub trials: Vec<TransTrial>,
    #[serde(skip)]
    pub elapsed: Duration,
}

fn level(n: usize, values: &[f64], reference: f64) -> TransLevel {
    let transitivity = MeanEstimate::of(values);
    TransLevel {
        n,
        transitivity,
        reference,
        gap: (transitivity.mean - reference).abs(),
    }
}

/// Mean transitivity of the planted partition with `r = c0/n` at each size,
/// against the limiting constant `p³s²/(p²s²+c0²+2spc0)`.
pub fn run_transitivity_limit(cfg: &TransLimitConfig) -> Result<TransReport<TransLimitConfig>> {
    let start = Instant::now();
    if cfg.trials == 0 || cfg.n_values.is_empty() {
        return Err(Error::Config("need at least one trial and one size".into()));
    }
    if cfg.block_size < 3 {
        return Err(Error::Config("block size must be at least 3".into()));
    }
    let reference = limiting_transitivity(cfg.p, cfg.block_size, cfg.c0)?;
    let mut levels = Vec::new();
    let mut records = Vec::new();
    for (level_idx, &requested) in cfg.n_values.iter().enumerate() {
        let blocks = requested / cfg.block_size;
        if blocks == 0 {
            return Err(Error::Config(format!(
                "n = {requested} is smaller than one block"
            )));
        }
        let n = blocks * cfg.block_size;
        let r = (cfg.c0 / n as f64).min(cfg.p);
        let model = FourParamSbm::new(blocks, cfg.block_size, cfg.p, r)?;
        let level_seed = derive_seed(cfg.seed, level_idx as u64);
        let trials: Vec<TransTrial> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let seed = derive_seed(level_seed, t as u64);
                let g = sample_four_param(&model, seed)?.graph;
                Ok(TransTrial {
                    n,
                    trial: t,
                    seed,
                    transitivity: transitivity_ratio(&g),
                })
            })
            .collect::<Result<_>>()?;
        let values: Vec<f64> = trials.iter().map(|t| t.transitivity).collect();
        levels.push(level(n, &values, reference));
        records.extend(trials);
    }
    let first = &levels[0];
    let last = &levels[levels.len() - 1];
    let trend_holds = last.gap < first.gap;
    Ok(TransReport {
        config: cfg.clone(),
        levels,
        trend_holds,
        trials: records,
        elapsed: start.elapsed(),
    })
}

/// Erdős–Rényi graph `G(n, p)` from the background stream of `seed`.
pub fn sample_erdos_renyi(n: usize, p: f64, seed: u64) -> Result<UndirectedGraph> {
    let mut rng = stream(seed, 1);
    let mut edges = Vec::new();
    for_each_random_pair(&mut rng, n, p, |u, v| edges.push((u, v)));
    UndirectedGraph::from_edges(n, edges)
}

/// Mean transitivity of `G(n, n^{exponent}/n)`, compared with the edge
/// probability, which is where it concentrates.
pub fn run_transitivity_vanishing(
    cfg: &TransVanishConfig,
) -> Result<TransReport<TransVanishConfig>> {
    let start = Instant::now();
    if cfg.trials == 0 || cfg.n_values.is_empty() {
        return Err(Error::Config("need at least one trial and one size".into()));
    }
    if !(cfg.exponent > 0.0 && cfg.exponent < 1.0) {
        return Err(Error::Config(format!(
            "mean degree n^a must grow without bound and stay o(n): need 0 < a < 1, got {}",
            cfg.exponent
        )));
    }
    let mut levels = Vec::new();
    let mut records = Vec::new();
    for (level_idx, &n) in cfg.n_values.iter().enumerate() {
        if n < 3 {
            return Err(Error::Config(format!("n = {n} is too small for triangles")));
        }
        let p = (n as f64).powf(cfg.exponent) / n as f64;
        let level_seed = derive_seed(cfg.seed, level_idx as u64);
        let trials: Vec<TransTrial> = (0..cfg.trials)
            .into_par_iter()
            .map(|t| {
                let seed = derive_seed(level_seed, t as u64);
                let g = sample_erdos_renyi(n, p, seed)?;
                Ok(TransTrial {
                    n,
                    trial: t,
                    seed,
                    transitivity: transitivity_ratio(&g),
                })
            })
            .collect::<Result<_>>()?;
        let values: Vec<f64> = trials.iter().map(|t| t.transitivity).collect();
        levels.push(level(n, &values, p));
        records.extend(trials);
    }
    let trend_holds = levels
        .windows(2)
        .all(|w| w[1].transitivity.mean < w[0].transitivity.mean);
    Ok(TransReport {
        config: cfg.clone(),
        levels,
        trend_holds,
        trials: records,
        elapsed: start.elapsed(),
    })
}

/// Number of cluster sizes reported per cut.
pub const CURVE_RANKS: usize = 10;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CurveRow {
    pub cut: f64,
    /// Sizes of the ten largest clusters after the largest, padded with 1.
    pub sizes: [usize; CURVE_RANKS],
}

/// For each cut, the sizes of the ten largest clusters after dropping the
/// single largest one. One dendrogram is built and replayed at every cut.
pub fn cluster_size_curve(sim: &WeightedSimilarity, cuts: &[f64]) -> Result<Vec<CurveRow>> {
    if cuts.is_empty() {
        return Err(Error::domain("cluster size curve needs at least one cut"));
    }
    let dendrogram = build_dendrogram(sim);
    cuts.iter()
        .map(|&cut| {
            let mut sizes = cut_dendrogram(&dendrogram, cut)?.sizes();
            sizes.sort_unstable_by(|a, b| b.cmp(a));
            let mut row = [1usize; CURVE_RANKS];
            for (slot, &size) in row.iter_mut().zip(sizes.iter().skip(1)) {
                *slot = size;
            }
            Ok(CurveRow { cut, sizes: row })
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SimilarityChoice {
    Adjacency,
    Laplacian,
}

/// Cluster-size curve over an edge-list file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveConfig {
    pub input: PathBuf,
    pub similarity: SimilarityChoice,
    /// Laplacian regularizer; defaults to the mean degree.
    #[serde(default)]
    pub tau: Option<f64>,
    pub cuts: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CurveReport {
    pub config: CurveConfig,
    pub n: usize,
    pub m: usize,
    pub tau: Option<f64>,
    pub rows: Vec<CurveRow>,
    #[serde(skip)]
    pub elapsed: Duration,
}

pub fn run_curve(cfg: &CurveConfig) -> Result<CurveReport> {
    let start = Instant::now();
    let file = std::fs::File::open(&cfg.input).map_err(|e| Error::file(&cfg.input, e))?;
    let g = load_edge_list(std::io::BufReader::new(file))?;
    let (sim, tau) = match cfg.similarity {
        SimilarityChoice::Adjacency => (triangle_support(&g), None),
        SimilarityChoice::Laplacian => {
            let lap = match cfg.tau {
                Some(t) => LaplacianConfig::new(t)?,
                None => LaplacianConfig::mean_degree(&g),
            };
            (laplacian_support(&g, lap), Some(lap.tau()))
        }
    };
    let rows = cluster_size_curve(&sim, &cfg.cuts)?;
    Ok(CurveReport {
        config: cfg.clone(),
        n: g.n(),
        m: g.m(),
        tau,
        rows,
        elapsed: start.elapsed(),
    })
}

fn opt_real(x: Option<f64>) -> String {
    x.map(fmt_real).unwrap_or_default()
}

impl RecoveryReport {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(
            out,
            "trial,seed,all_seeds_success,single_seed_success,single_seed_node,cluster_size,overlap,realized_lambda,tau,cut"
        )?;
        for t in &self.trials {
            writeln!(
                out,
                "{},{},{},{},{},{},{},{},{},{}",
                t.trial,
                t.seed,
                t.all_seeds_success as u8,
                t.single_seed_success as u8,
                t.single_seed_node,
                t.cluster_size,
                t.overlap,
                fmt_real(t.realized_lambda),
                opt_real(t.tau),
                fmt_real(t.cut)
            )?;
        }
        Ok(())
    }
}

impl<C> TransReport<C> {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        writeln!(out, "n,trial,seed,transitivity")?;
        for t in &self.trials {
            writeln!(
                out,
                "{},{},{},{}",
                t.n,
                t.trial,
                t.seed,
                fmt_real(t.transitivity)
            )?;
        }
        Ok(())
    }
}

impl CurveReport {
    pub fn write_csv<W: Write>(&self, mut out: W) -> Result<()> {
        write!(out, "cut")?;
        for rank in 1..=CURVE_RANKS {
            write!(out, ",size_{rank}")?;
        }
        writeln!(out)?;
        for row in &self.rows {
            write!(out, "{}", fmt_real(row.cut))?;
            for size in row.sizes {
                write!(out, ",{size}")?;
            }
            writeln!(out)?;
        }
        Ok(())
    }
}

/// Report of any experiment kind.
#[derive(Debug, Clone)]
pub enum ExperimentReport {
    Recovery(RecoveryReport),
    TransLimit(TransReport<TransLimitConfig>),
    TransVanish(TransReport<TransVanishConfig>),
    Curve(CurveReport),
}

impl ExperimentReport {
    pub fn write_csv<W: Write>(&self, out: W) -> Result<()> {
        match self {
            ExperimentReport::Recovery(r) => r.write_csv(out),
            ExperimentReport::TransLimit(r) => r.write_csv(out),
            ExperimentReport::TransVanish(r) => r.write_csv(out),
            ExperimentReport::Curve(r) => r.write_csv(out),
        }
    }

    /// Config echo and aggregates, without per-trial records.
    pub fn summary_json(&self) -> Result<String> {
        let value = match self {
            ExperimentReport::Recovery(r) => serde_json::json!({
                "kind": "recovery",
                "config": r.config,
                "summary": r.summary,
            }),
            ExperimentReport::TransLimit(r) => serde_json::json!({
                "kind": "translimit",
                "config": r.config,
                "levels": r.levels,
                "trend_holds": r.trend_holds,
            }),
            ExperimentReport::TransVanish(r) => serde_json::json!({
                "kind": "transvanish",
                "config": r.config,
                "levels": r.levels,
                "trend_holds": r.trend_holds,
            }),
            ExperimentReport::Curve(r) => serde_json::json!({
                "kind": "curve",
                "config": r.config,
                "n": r.n,
                "m": r.m,
                "tau": r.tau,
                "rows": r.rows,
            }),
        };
        Ok(serde_json::to_string_pretty(&value)?)
    }

    pub fn elapsed(&self) -> Duration {
        match self {
            ExperimentReport::Recovery(r) => r.elapsed,
            ExperimentReport::TransLimit(r) => r.elapsed,
            ExperimentReport::TransVanish(r) => r.elapsed,
            ExperimentReport::Curve(r) => r.elapsed,
        }
    }
}
