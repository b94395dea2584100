// Licensed under the Apache License, Version 2.0 (the "License"); you may
// not use this file except in compliance with the License. You may obtain
// a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS, WITHOUT
// WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied. See the
// License for the specific language governing permissions and limitations
// under the License.


use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use polarsign::harness::{
    grid_f1, scalability_run, write_rows, GridAxis, GridSpec, OutputFormat, ScaleConfig,
};
use polarsign::io::{read_assignment, write_assignment, write_edge_list, write_id_map, LoadOptions, LoadedGraph};
use polarsign::oracle::enumerate_opt;
use polarsign::{
    augment_with, generate_planted, leading_eigenpair, load_edge_list, Algorithm, Attach, Backend, DummyDegree,
    EdgeListFormat, GroundTruth, PickRule, PlantedSpec, PolarError, RunOptions, Scale, SymmetrizePolicy,
};
use serde::Serialize;

const EXIT_INPUT: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;

#[derive(Parser)]
#[command(name = "polarsign", version, about = "Polarized community detection in signed networks")]
struct Cli {
    /// Master seed for every stochastic step.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Eigensolver residual tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol: f64,
    /// Output file: reports for detect/grid/scale/stats, the graph for synth/augment.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, default_value = "csv")]
    format: OutputFormat,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run detectors on an edge list and emit one report per algorithm.
    Detect(DetectArgs),
    /// Generate a planted two-community graph.
    Synth(SynthArgs),
    /// Add dummy vertices to an edge list.
    Augment(AugmentArgs),
    /// Exact optimum by enumeration (small graphs only).
    Oracle(OracleArgs),
    /// Mean F1 over planted replicates on a parameter grid.
    Grid(GridArgs),
    /// Runtime as dummy vertices are added.
    Scale(ScaleArgs),
    /// Graph statistics.
    Stats(StatsArgs),
}

#[derive(Args)]
struct InputArgs {
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long = "input-format", default_value = "plain")]
    input_format: EdgeListFormat,
    #[arg(long, default_value = "agree")]
    symmetrize: SymmetrizePolicy,
    /// Write the `internal_id original_label` sidecar here.
    #[arg(long)]
    id_map: Option<PathBuf>,
}

impl InputArgs {
    fn load(&self) -> polarsign::Result<LoadedGraph> {
        let loaded = load_edge_list(
            &self.input,
            LoadOptions {
                format: self.input_format,
                symmetrize: self.symmetrize,
            },
        )?;
        if let Some(p) = &self.id_map {
            write_id_map(&loaded.labels, p)?;
        }
        Ok(loaded)
    }

    fn dataset(&self) -> String {
        self.input
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    }
}

#[derive(Copy, Clone, PartialEq, Eq, ValueEnum)]
enum AlgorithmName {
    Eigensign,
    EigensignSweep,
    RandomEigensign,
    PickAnEdge,
    Greedy,
    Bansal,
    LocalSearch,
}

#[derive(Args, Clone)]
struct AlgorithmArgs {
    /// Repeatable; the eigenpair is shared across algorithms.
    #[arg(long = "algorithm", value_enum, default_values_t = [AlgorithmName::EigensignSweep])]
    algorithms: Vec<AlgorithmName>,
    /// Restarts for random-eigensign and local-search.
    #[arg(long, default_value_t = 100)]
    runs: usize,
    #[arg(long, default_value = "l1")]
    scale: Scale,
    #[arg(long, default_value_t = 0.2)]
    min_gain: f64,
    #[arg(long, default_value_t = 0.05)]
    init_fraction: f64,
    /// Bansal: evaluate this many sampled centers instead of all.
    #[arg(long)]
    sample: Option<usize>,
    /// Pick-an-edge: choose the edge at random instead of the first.
    #[arg(long)]
    random_edge: bool,
    #[arg(long, default_value = "lanczos")]
    backend: Backend,
}

impl AlgorithmArgs {
    fn resolve(&self, seed: u64) -> Vec<Algorithm> {
        self.algorithms
            .iter()
            .map(|a| match a {
                AlgorithmName::Eigensign => Algorithm::Eigensign,
                AlgorithmName::EigensignSweep => Algorithm::EigensignSweep,
                AlgorithmName::RandomEigensign => Algorithm::RandomEigensign {
                    runs: self.runs,
                    scale: self.scale,
                },
                AlgorithmName::PickAnEdge => Algorithm::PickAnEdge {
                    rule: if self.random_edge {
                        PickRule::Seeded(seed)
                    } else {
                        PickRule::First
                    },
                },
                AlgorithmName::Greedy => Algorithm::Greedy,
                AlgorithmName::Bansal => Algorithm::Bansal { sample: self.sample },
                AlgorithmName::LocalSearch => Algorithm::LocalSearch {
                    runs: self.runs,
                    min_gain: self.min_gain,
                    init_fraction: self.init_fraction,
                },
            })
            .collect()
    }
}

#[derive(Args)]
struct DetectArgs {
    #[command(flatten)]
    input: InputArgs,
    #[command(flatten)]
    algorithms: AlgorithmArgs,
    /// Ground-truth labels file (`vertex label`, label in {1, -1, 0}).
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Per-algorithm timeout in seconds.
    #[arg(long)]
    timeout: Option<f64>,
    /// Write the solution of the last algorithm, in original vertex labels.
    #[arg(long)]
    solution: Option<PathBuf>,
}

#[derive(Args)]
struct SynthArgs {
    #[arg(long)]
    nc: usize,
    #[arg(long)]
    nn: usize,
    #[arg(long)]
    eta: f64,
    /// Ground-truth labels file (default: `<out>.truth`).
    #[arg(long)]
    truth: Option<PathBuf>,
}

#[derive(Args)]
struct AugmentArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long)]
    extra: usize,
    #[arg(long, default_value = "all")]
    attach: Attach,
    #[arg(long, default_value = "average")]
    dummy_degree: DummyDegree,
}

#[derive(Args)]
struct OracleArgs {
    #[command(flatten)]
    input: InputArgs,
    #[arg(long, default_value_t = polarsign::oracle::DEFAULT_CAP)]
    cap: usize,
}

#[derive(Copy, Clone, ValueEnum)]
enum Axis {
    Eta,
    Nn,
}

#[derive(Args)]
struct GridArgs {
    #[arg(long, value_enum, default_value = "eta")]
    axis: Axis,
    /// Comma-separated grid values.
    #[arg(long, value_delimiter = ',', required = true)]
    values: Vec<f64>,
    #[arg(long, default_value_t = 100)]
    nc: usize,
    /// Fixed noise-vertex count for the eta axis.
    #[arg(long, default_value_t = 800)]
    nn: usize,
    /// Fixed eta for the nn axis.
    #[arg(long, default_value_t = 0.5)]
    eta: f64,
    #[arg(long, default_value_t = 10)]
    replicates: usize,
    #[command(flatten)]
    algorithms: AlgorithmArgs,
}

#[derive(Args)]
struct ScaleArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Dummy vertices as multiples of the base vertex count, ascending.
    #[arg(long, value_delimiter = ',', default_value = "0,1,3")]
    multipliers: Vec<f64>,
    #[arg(long, default_value_t = 10_000.0)]
    timeout: f64,
    #[arg(long, default_value_t = 1)]
    repeats: usize,
    #[arg(long, default_value = "all")]
    attach: Attach,
    #[arg(long, default_value = "average")]
    dummy_degree: DummyDegree,
    #[command(flatten)]
    algorithms: AlgorithmArgs,
}

#[derive(Args)]
struct StatsArgs {
    #[command(flatten)]
    input: InputArgs,
    /// Also report the L1 norm of the leading eigenvector.
    #[arg(long)]
    eigen: bool,
}

#[derive(Serialize)]
struct StatsRow {
    dataset: String,
    n: usize,
    m: usize,
    m_pos: usize,
    m_neg: usize,
    rho_neg: f64,
    delta: f64,
    avg_degree: f64,
    records: usize,
    zero_weight_dropped: usize,
    self_loops_dropped: usize,
    duplicates_merged: usize,
    conflicts_dropped: usize,
    lambda1: Option<f64>,
    eigenvector_l1: Option<f64>,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(t) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(t).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_INPUT);
        }
    }
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            let input = e
                .chain()
                .filter_map(|c| c.downcast_ref::<PolarError>())
                .any(PolarError::is_input_error);
            ExitCode::from(if input { EXIT_INPUT } else { 1 })
        }
    }
}

fn run_options(cli: &Cli, backend: Backend) -> RunOptions {
    let mut opts = RunOptions::default().with_seed(cli.seed);
    opts.spectral.tol = cli.tol;
    opts.spectral.backend = backend;
    opts
}

fn require_out(cli: &Cli) -> anyhow::Result<&Path> {
    match &cli.out {
        Some(p) => Ok(p),
        None => bail!(PolarError::InvalidParameter("--out is required".into())),
    }
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    let out = cli.out.as_deref();
    match &cli.command {
        Command::Detect(args) => {
            let loaded = args.input.load()?;
            let g = &loaded.graph;
            let truth = args
                .truth
                .as_ref()
                .map(|p| read_assignment(p, g.n()).map(GroundTruth::from_assignment))
                .transpose()?;
            let mut opts = run_options(cli, args.algorithms.backend);
            if let Some(t) = args.timeout {
                if !(t > 0.0) {
                    bail!(PolarError::InvalidParameter("timeout must be positive".into()));
                }
                opts.timeout = Some(Duration::from_secs_f64(t));
            }
            let algorithms = args.algorithms.resolve(cli.seed);
            let workload = polarsign::harness::Workload::new(g, args.input.dataset(), truth.as_ref());
            let mut reports = Vec::new();
            let mut last = None;
            for algo in &algorithms {
                match workload.run(algo, &opts) {
                    Ok(r) => {
                        reports.push(r.report);
                        last = Some(r.solution);
                    }
                    Err(PolarError::Timeout) => eprintln!("{}: TIMEOUT", algo.id()),
                    Err(e) => return Err(e).with_context(|| format!("running {}", algo.id())),
                }
            }
            write_rows(&reports, out, cli.format)?;
            if let (Some(path), Some(x)) = (&args.solution, &last) {
                write_assignment(x, Some(&loaded.labels), path)?;
            }
            Ok(if reports.is_empty() {
                ExitCode::from(EXIT_TIMEOUT)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Synth(args) => {
            let path = require_out(cli)?;
            let spec = PlantedSpec::new(args.nc, args.nn, args.eta, cli.seed);
            let (g, truth) = generate_planted(&spec)?;
            write_edge_list(&g, path)?;
            let truth_path = args.truth.clone().unwrap_or_else(|| {
                let mut s = path.as_os_str().to_owned();
                s.push(".truth");
                PathBuf::from(s)
            });
            write_assignment(truth.labels(), None, &truth_path)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Augment(args) => {
            let path = require_out(cli)?;
            let loaded = args.input.load()?;
            let g = augment_with(&loaded.graph, args.extra, cli.seed, args.attach, args.dummy_degree)?;
            write_edge_list(&g, path)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Oracle(args) => {
            let loaded = args.input.load()?;
            let r = enumerate_opt(&loaded.graph, args.cap)?;
            println!("opt {}", r.opt);
            let argmax: Vec<String> = r.argmax.as_slice().iter().map(|v| v.to_string()).collect();
            println!("argmax {}", argmax.join(" "));
            println!("evaluated {}", r.evaluated);
            Ok(ExitCode::SUCCESS)
        }
        Command::Grid(args) => {
            let axis = match args.axis {
                Axis::Eta => GridAxis::Eta(args.values.clone()),
                Axis::Nn => {
                    if args.values.iter().any(|v| v.fract() != 0.0 || *v < 0.0) {
                        bail!(PolarError::InvalidParameter("nn grid values must be non-negative integers".into()));
                    }
                    GridAxis::NoiseVertices(args.values.iter().map(|&v| v as usize).collect())
                }
            };
            let spec = GridSpec {
                axis,
                n_c: args.nc,
                n_n: args.nn,
                eta: args.eta,
                replicates: args.replicates,
                algorithms: args.algorithms.resolve(cli.seed),
            };
            let rows = grid_f1(&spec, &run_options(cli, args.algorithms.backend))?;
            write_rows(&rows, out, cli.format)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Scale(args) => {
            let loaded = args.input.load()?;
            let cfg = ScaleConfig {
                multipliers: args.multipliers.clone(),
                algorithms: args.algorithms.resolve(cli.seed),
                timeout_seconds: args.timeout,
                attach: args.attach,
                dummy_degree: args.dummy_degree,
                repeats: args.repeats,
            };
            let rows = scalability_run(&loaded.graph, &cfg, &run_options(cli, args.algorithms.backend))?;
            write_rows(&rows, out, cli.format)?;
            Ok(if rows.iter().all(|r| r.timed_out()) {
                ExitCode::from(EXIT_TIMEOUT)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Stats(args) => {
            let loaded = args.input.load()?;
            let g = &loaded.graph;
            let s = g.stats();
            let spec = if args.eigen && g.n() > 0 {
                Some(leading_eigenpair(g, &run_options(cli, Backend::default()).spectral)?)
            } else {
                None
            };
            let r = &loaded.report;
            let row = StatsRow {
                dataset: args.input.dataset(),
                n: s.n,
                m: s.m,
                m_pos: s.m_pos,
                m_neg: s.m_neg,
                rho_neg: s.rho_neg,
                delta: s.delta,
                avg_degree: s.avg_degree,
                records: r.records,
                zero_weight_dropped: r.zero_weight_dropped,
                self_loops_dropped: r.self_loops_dropped,
                duplicates_merged: r.duplicates_merged,
                conflicts_dropped: r.conflicts_dropped,
                lambda1: spec.as_ref().map(|s| s.lambda1),
                eigenvector_l1: spec.as_ref().map(|s| s.l1_norm()),
            };
            write_rows(&[row], out, cli.format)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}
