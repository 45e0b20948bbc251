// SPDX-License-Identifier: Apache-2.0

//! Command-line front end.
//!
//! Every subcommand loads its input, calls one library operation and writes
//! the result with fixed formatting. Usage errors exit with 2, runtime
//! failures with 1.

use std::ffi::OsString;
use std::fs::File;
use std::io::{self, BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::clustering::{build_dendrogram, global_trans, local_trans};
use crate::error::{Error, Result};
use crate::experiments::{
    run_curve, run_recovery, run_transitivity_limit, run_transitivity_vanishing, CurveConfig,
    ExperimentReport, ModelParams, RecoveryConfig, SimilarityChoice, TransLimitConfig,
    TransVanishConfig,
};
use crate::format::fmt_real;
use crate::graph::{load_edge_list, write_edge_list, UndirectedGraph};
use crate::metrics::GraphStats;
use crate::similarity::{laplacian_support, triangle_support, LaplacianConfig, WeightedSimilarity};

/// Environment variable capping the worker count; 0 means automatic.
pub const THREADS_ENV: &str = "TRANSCLUST_THREADS";

#[derive(Debug, Parser)]
#[command(
    name = "transclust",
    version,
    about = "Triangle-support graph clustering"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SimArg {
    Adjacency,
    Laplacian,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModelArg {
    Four,
    Local,
    Dclocal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Recovery,
    Translimit,
    Transvanish,
    Curve,
}

#[derive(Debug, clap::Args)]
struct GraphArgs {
    /// Edge-list file, `-` for stdin.
    #[arg(long = "in", value_name = "PATH")]
    input: PathBuf,
    /// Output file; stdout when omitted.
    #[arg(long, value_name = "PATH")]
    out: Option<PathBuf>,
}

#[derive(Debug, clap::Args)]
struct SimArgs {
    #[arg(long, value_enum, default_value = "adjacency")]
    sim: SimArg,
    /// Laplacian regularizer; defaults to the mean degree.
    #[arg(long, allow_negative_numbers = true)]
    tau: Option<f64>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print graph statistics as JSON.
    Stats {
        #[command(flatten)]
        io: GraphArgs,
    },
    /// Write edge similarities as CSV `u,v,weight`.
    Similarity {
        #[command(flatten)]
        io: GraphArgs,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Write the maximum spanning forest as CSV `u,v,weight`.
    Dendrogram {
        #[command(flatten)]
        io: GraphArgs,
        #[command(flatten)]
        sim: SimArgs,
    },
    /// Print the local cluster of a seed node, one id per line.
    Local {
        #[command(flatten)]
        io: GraphArgs,
        #[command(flatten)]
        sim: SimArgs,
        /// Seed node, as it appears in the input file.
        #[arg(long)]
        seed: u64,
        #[arg(long, allow_negative_numbers = true)]
        cut: f64,
    },
    /// Write the global clustering as CSV `node,cluster`.
    Global {
        #[command(flatten)]
        io: GraphArgs,
        #[command(flatten)]
        sim: SimArgs,
        #[arg(long, allow_negative_numbers = true)]
        cut: f64,
    },
    /// Write sizes of the ten largest non-giant clusters per cut.
    Curve {
        #[command(flatten)]
        io: GraphArgs,
        #[command(flatten)]
        sim: SimArgs,
        /// Cut levels; repeat the flag or separate with commas.
        #[arg(
            long,
            value_delimiter = ',',
            required = true,
            num_args = 1..,
            allow_negative_numbers = true
        )]
        cut: Vec<f64>,
    },
    /// Sample a blockmodel graph; writes the edge list and a JSON sidecar.
    Simulate {
        #[arg(long, value_enum)]
        model: ModelArg,
        /// Model parameters as inline JSON or a path to a JSON file.
        #[arg(long, value_name = "JSON")]
        params: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
    },
    /// Run a Monte Carlo experiment; writes a CSV and a JSON summary sidecar.
    Experiment {
        #[arg(long, value_enum)]
        kind: KindArg,
        #[arg(long, value_name = "PATH")]
        config: PathBuf,
        #[arg(long, value_name = "PATH")]
        out: PathBuf,
        /// Overrides the configured master seed.
        #[arg(long)]
        seed: Option<u64>,
        /// Overrides the configured trial count.
        #[arg(long)]
        trials: Option<u32>,
    },
}

/// Parses `argv` (including the program name), runs the command and
/// returns the process exit code.
pub fn dispatch<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(err) => {
            let code = err.exit_code();
            let _ = err.print();
            return code;
        }
    };
    configure_threads();
    match run(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("error: {err}");
            1
        }
    }
}

fn configure_threads() {
    let Ok(value) = std::env::var(THREADS_ENV) else {
        return;
    };
    match value.trim().parse::<usize>() {
        // The global pool can only be set once per process; later calls keep it.
        Ok(threads) => {
            let _ = rayon::ThreadPoolBuilder::new()
                .num_threads(threads)
                .build_global();
        }
        Err(_) => eprintln!("warning: ignoring {THREADS_ENV}={value:?}"),
    }
}

fn read_graph(path: &Path) -> Result<UndirectedGraph> {
    if path == Path::new("-") {
        return load_edge_list(io::stdin().lock());
    }
    let file = File::open(path).map_err(|e| Error::file(path, e))?;
    load_edge_list(BufReader::new(file))
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).map_err(|e| Error::file(p, e))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn build_similarity(g: &UndirectedGraph, args: &SimArgs) -> Result<WeightedSimilarity> {
    Ok(match args.sim {
        SimArg::Adjacency => triangle_support(g),
        SimArg::Laplacian => {
            let cfg = match args.tau {
                Some(tau) => LaplacianConfig::new(tau)?,
                None => LaplacianConfig::mean_degree(g),
            };
            laplacian_support(g, cfg)
        }
    })
}

fn sidecar_path(out: &Path) -> PathBuf {
    out.with_extension("json")
}

fn write_file(path: &Path, contents: &str) -> Result<()> {
    std::fs::write(path, contents).map_err(|e| Error::file(path, e))
}

fn read_json_arg(value: &str) -> Result<serde_json::Value> {
    let trimmed = value.trim_start();
    let text = if trimmed.starts_with('{') {
        value.to_string()
    } else {
        std::fs::read_to_string(value).map_err(|e| Error::file(value, e))?
    };
    Ok(serde_json::from_str(&text)?)
}

fn read_config<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::file(path, e))?;
    serde_json::from_str(&text).map_err(|e| Error::Config(format!("{}: {e}", path.display())))
}

fn run(command: Command) -> Result<()> {
    match command {
        Command::Stats { io } => {
            let g = read_graph(&io.input)?;
            let mut out = open_output(io.out.as_deref())?;
            writeln!(out, "{}", GraphStats::compute(&g).to_json())?;
            out.flush()?;
        }
        Command::Similarity { io, sim } => {
            let g = read_graph(&io.input)?;
            let sim = build_similarity(&g, &sim)?;
            let mut out = open_output(io.out.as_deref())?;
            writeln!(out, "u,v,weight")?;
            for (u, v, w) in sim.iter() {
                writeln!(
                    out,
                    "{},{},{}",
                    g.original_id(u),
                    g.original_id(v),
                    fmt_real(w)
                )?;
            }
            out.flush()?;
        }
        Command::Dendrogram { io, sim } => {
            let g = read_graph(&io.input)?;
            let d = build_dendrogram(&build_similarity(&g, &sim)?);
            let mut out = open_output(io.out.as_deref())?;
            writeln!(out, "u,v,weight")?;
            for m in d.merges() {
                writeln!(
                    out,
                    "{},{},{}",
                    g.original_id(m.u),
                    g.original_id(m.v),
                    fmt_real(m.weight)
                )?;
            }
            out.flush()?;
        }
        Command::Local { io, sim, seed, cut } => {
            let g = read_graph(&io.input)?;
            let node = g.node_for_original(seed).ok_or_else(|| {
                Error::domain(format!("seed node {seed} does not appear in the input"))
            })?;
            let members = local_trans(&build_similarity(&g, &sim)?, node, cut)?;
            let mut out = open_output(io.out.as_deref())?;
            for v in members {
                writeln!(out, "{}", g.original_id(v))?;
            }
            out.flush()?;
        }
        Command::Global { io, sim, cut } => {
            let g = read_graph(&io.input)?;
            let clusters = global_trans(&build_similarity(&g, &sim)?, cut)?;
            let mut out = open_output(io.out.as_deref())?;
            writeln!(out, "node,cluster")?;
            for (v, &c) in clusters.labels().iter().enumerate() {
                writeln!(out, "{},{}", g.original_id(v), c)?;
            }
            out.flush()?;
        }
        Command::Curve { io, sim, cut } => {
            let g = read_graph(&io.input)?;
            let similarity = build_similarity(&g, &sim)?;
            let rows = crate::experiments::cluster_size_curve(&similarity, &cut)?;
            let report = crate::experiments::CurveReport {
                config: CurveConfig {
                    input: io.input.clone(),
                    similarity: match sim.sim {
                        SimArg::Adjacency => SimilarityChoice::Adjacency,
                        SimArg::Laplacian => SimilarityChoice::Laplacian,
                    },
                    tau: sim.tau,
                    cuts: cut,
                },
                n: g.n(),
                m: g.m(),
                tau: match similarity.kind() {
                    crate::similarity::SimilarityKind::Laplacian { tau } => Some(tau),
                    _ => None,
                },
                rows,
                elapsed: Default::default(),
            };
            let mut out = open_output(io.out.as_deref())?;
            report.write_csv(&mut out)?;
            out.flush()?;
        }
        Command::Simulate {
            model,
            params,
            seed,
            out,
        } => simulate(model, &params, seed, &out)?,
        Command::Experiment {
            kind,
            config,
            out,
            seed,
            trials,
        } => {
            if sidecar_path(&out) == config || out == config {
                return Err(Error::Config(format!(
                    "--out {} would overwrite the config file",
                    out.display()
                )));
            }
            let report = experiment(kind, &config, seed, trials)?;
            let mut csv = BufWriter::new(File::create(&out).map_err(|e| Error::file(&out, e))?);
            report.write_csv(&mut csv)?;
            csv.flush()?;
            write_file(&sidecar_path(&out), &(report.summary_json()? + "\n"))?;
            eprintln!("elapsed: {:.3}s", report.elapsed().as_secs_f64());
        }
    }
    Ok(())
}

fn simulate(model: ModelArg, params: &str, seed: u64, out: &Path) -> Result<()> {
    let mut value = read_json_arg(params)?;
    let tag = match model {
        ModelArg::Four => "four",
        ModelArg::Local => "local",
        ModelArg::Dclocal => "dclocal",
    };
    let obj = value
        .as_object_mut()
        .ok_or_else(|| Error::Config("model parameters must be a JSON object".into()))?;
    obj.insert("model".into(), serde_json::Value::from(tag));
    let params: ModelParams = serde_json::from_value(value)
        .map_err(|e| Error::Config(format!("model parameters: {e}")))?;
    let sample = params.resolve()?.sample(seed)?;
    let g = &sample.graph;

    let mut edges = BufWriter::new(File::create(out).map_err(|e| Error::file(out, e))?);
    writeln!(
        edges,
        "# transclust simulate model={tag} seed={seed} nodes={} edges={}",
        g.n(),
        g.m()
    )?;
    write_edge_list(g, &mut edges)?;

    let sidecar = serde_json::json!({
        "model": params,
        "seed": seed,
        "n": g.n(),
        "m": g.m(),
        "planted": sample.planted,
        "realized_lambda": sample.realized_lambda(),
    });
    write_file(
        &sidecar_path(out),
        &(serde_json::to_string_pretty(&sidecar)? + "\n"),
    )
}

fn experiment(
    kind: KindArg,
    config: &Path,
    seed: Option<u64>,
    trials: Option<u32>,
) -> Result<ExperimentReport> {
    let trials = trials.map(|t| t as usize);
    Ok(match kind {
        KindArg::Recovery => {
            let mut cfg: RecoveryConfig = read_config(config)?;
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.trials = trials.unwrap_or(cfg.trials);
            ExperimentReport::Recovery(run_recovery(&cfg)?)
        }
        KindArg::Translimit => {
            let mut cfg: TransLimitConfig = read_config(config)?;
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.trials = trials.unwrap_or(cfg.trials);
            ExperimentReport::TransLimit(run_transitivity_limit(&cfg)?)
        }
        KindArg::Transvanish => {
            let mut cfg: TransVanishConfig = read_config(config)?;
            cfg.seed = seed.unwrap_or(cfg.seed);
            cfg.trials = trials.unwrap_or(cfg.trials);
            ExperimentReport::TransVanish(run_transitivity_vanishing(&cfg)?)
        }
        KindArg::Curve => {
            let mut cfg: CurveConfig = read_config(config)?;
            if cfg.input.is_relative() {
                if let Some(dir) = config.parent() {
                    cfg.input = dir.join(&cfg.input);
                }
            }
            ExperimentReport::Curve(run_curve(&cfg)?)
        }
    })
}
