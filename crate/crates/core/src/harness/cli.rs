//! The `agabc` command line.
//!
//! ```text
//! agabc bench    [--function f2 ...] [--algo agabc ...] [--dim 10 ...]
//! agabc schedule [--algo agabc] [--dataset tasks.toml]
//! agabc trace    [--function f2] [--algo agabc] [--dim 10] [--path]
//! agabc list
//! ```
//!
//! Settings resolve in the order flag, `--config` file, profile default.
//! The output directory falls back to `$AGABC_OUT_DIR`, then `results`.

use std::ffi::OsString;
use std::fs::File;
use std::io::BufWriter;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};

use super::{
    run_experiment, write_schedule_json, write_search_path_csv, write_summary_csv, write_trials_csv,
    write_weight_trace_csv, ConfigFile, ExperimentOutcome, ExperimentSpec, Problem, Profile,
};
use crate::benchmarks::{registry, registry_lookup};
use crate::colony::{Algorithm, RunOptions};
use crate::error::{Error, Result};
use crate::scheduling::{verify_non_crossing, Dataset, SchedulingProblem, SimulationConfig};
use crate::strategies::StrategyId;

pub const OUT_DIR_ENV: &str = "AGABC_OUT_DIR";

#[derive(Debug, Parser)]
#[command(name = "agabc", version, about = "Artificial bee colony experiments")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Run benchmark functions and write summary and per-trial CSVs.
    Bench {
        #[command(flatten)]
        common: Common,
        /// Benchmark id (repeatable; default: all).
        #[arg(long = "function", value_parser = parse_function)]
        functions: Vec<String>,
        /// Algorithm (repeatable; default: abc, gabc, agabc, random).
        #[arg(long = "algo")]
        algos: Vec<Algorithm>,
        /// Dimension (repeatable; default from the profile).
        #[arg(long = "dim")]
        dims: Vec<usize>,
    },
    /// Optimize the twin-ETV schedule and write a schedule report.
    Schedule {
        #[command(flatten)]
        common: Common,
        #[arg(long = "algo")]
        algo: Option<Algorithm>,
        /// Task and port dataset (TOML); default: the built-in 60-task set.
        #[arg(long)]
        dataset: Option<PathBuf>,
    },
    /// Record one run: strategy weights, or source positions with `--path`.
    Trace {
        #[command(flatten)]
        common: Common,
        #[arg(long = "function", value_parser = parse_function)]
        function: Option<String>,
        #[arg(long = "algo")]
        algo: Option<Algorithm>,
        #[arg(long = "dim")]
        dim: Option<usize>,
        /// Write source positions per iteration (2-D problems only).
        #[arg(long)]
        path: bool,
    },
    /// List benchmark functions, algorithms and profiles.
    List,
}

#[derive(Debug, Clone, Default, Args)]
pub struct Common {
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out_dir: Option<PathBuf>,
    /// TOML file with defaults for any of these flags.
    #[arg(long)]
    pub config: Option<PathBuf>,
    /// Parallel trials (0 = one per core).
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long)]
    pub profile: Option<Profile>,
    #[arg(long)]
    pub trials: Option<usize>,
    /// Colony size.
    #[arg(long)]
    pub pop: Option<usize>,
    #[arg(long)]
    pub iters: Option<usize>,
    #[arg(long)]
    pub limit: Option<usize>,
}

fn parse_function(s: &str) -> Result<String> {
    registry_lookup(s).map(|f| f.id.to_string())
}

/// Flags merged over the config file.
struct Settings {
    file: ConfigFile,
    common: Common,
}

impl Settings {
    fn new(common: Common) -> Result<Self> {
        let file = match &common.config {
            Some(path) => ConfigFile::load(path)?,
            None => ConfigFile::default(),
        };
        Ok(Self { file, common })
    }

    fn profile(&self, fallback: Profile) -> Profile {
        self.common.profile.or(self.file.profile).unwrap_or(fallback)
    }

    fn seed(&self) -> u64 {
        self.common.seed.or(self.file.seed).unwrap_or(0)
    }

    fn workers(&self) -> usize {
        self.common.workers.or(self.file.workers).unwrap_or(0)
    }

    fn trials(&self, default: usize) -> usize {
        self.common.trials.or(self.file.trials).unwrap_or(default)
    }

    fn pop(&self, default: usize) -> usize {
        self.common.pop.or(self.file.pop).unwrap_or(default)
    }

    fn iters(&self, default: usize) -> usize {
        self.common.iters.or(self.file.iters).unwrap_or(default)
    }

    fn limit(&self, default: usize) -> usize {
        self.common.limit.or(self.file.limit).unwrap_or(default)
    }

    fn out_dir(&self) -> Result<PathBuf> {
        let dir = self
            .common
            .out_dir
            .clone()
            .or_else(|| self.file.out_dir.clone())
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from("results"));
        std::fs::create_dir_all(&dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        Ok(dir)
    }

    fn functions(&self, flag: Vec<String>) -> Result<Vec<String>> {
        if !flag.is_empty() {
            return Ok(flag);
        }
        match &self.file.functions {
            Some(list) => list.iter().map(|s| parse_function(s)).collect(),
            None => Ok(registry().iter().map(|f| f.id.to_string()).collect()),
        }
    }

    fn algorithms(&self, flag: Vec<Algorithm>) -> Result<Vec<Algorithm>> {
        if !flag.is_empty() {
            return Ok(flag);
        }
        match &self.file.algorithms {
            Some(list) => list.iter().map(|s| s.parse()).collect(),
            None => Ok(Algorithm::NAMED.to_vec()),
        }
    }

    fn dims(&self, flag: Vec<usize>, default: Vec<usize>) -> Vec<usize> {
        if !flag.is_empty() {
            flag
        } else {
            self.file.dims.clone().unwrap_or(default)
        }
    }
}

fn create(path: &Path) -> Result<BufWriter<File>> {
    File::create(path)
        .map(BufWriter::new)
        .map_err(|e| Error::Io(format!("{}: {e}", path.display())))
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code: 0 on success, 2 for usage errors, 1 for
/// anything else.
pub fn cli_main<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return e.exit_code();
        }
    };
    match run(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Lookup { .. } | Error::Config(_) | Error::Domain(_) => {
                    eprintln!("run `agabc --help` for usage");
                    2
                }
                _ => 1,
            }
        }
    }
}

pub fn run(command: Command) -> Result<()> {
    match command {
        Command::Bench { common, functions, algos, dims } => bench(Settings::new(common)?, functions, algos, dims),
        Command::Schedule { common, algo, dataset } => schedule(Settings::new(common)?, algo, dataset),
        Command::Trace { common, function, algo, dim, path } => {
            trace(Settings::new(common)?, function, algo, dim, path)
        }
        Command::List => {
            list();
            Ok(())
        }
    }
}

fn bench(s: Settings, functions: Vec<String>, algos: Vec<Algorithm>, dims: Vec<usize>) -> Result<()> {
    let defaults = s.profile(Profile::Full).bench();
    let functions = s.functions(functions)?;
    let algos = s.algorithms(algos)?;
    let dims = s.dims(dims, defaults.dims.clone());
    let out_dir = s.out_dir()?;

    let mut outcomes: Vec<ExperimentOutcome> = Vec::new();
    for function in &functions {
        for &dim in &dims {
            for &algorithm in &algos {
                let spec = ExperimentSpec {
                    algorithm,
                    problem: Problem::resolve(function)?,
                    dim,
                    trials: s.trials(defaults.trials),
                    colony_size: s.pop(defaults.colony_size),
                    max_iter: s.iters(defaults.max_iter),
                    limit: s.limit(defaults.limit),
                    seed: s.seed(),
                    options: RunOptions::default(),
                };
                let outcome = run_experiment(&spec, s.workers())?;
                let r = &outcome.summary;
                println!(
                    "{:<8} {:<3} D={:<4} best {:<10} avg {:<10} std {}",
                    r.algorithm,
                    r.function,
                    r.dim,
                    super::format_sci(r.best_f),
                    super::format_sci(r.avg_f),
                    super::format_sci(r.std)
                );
                outcomes.push(outcome);
            }
        }
    }
    write_outcomes(&out_dir, "bench", &outcomes)
}

fn write_outcomes(dir: &Path, stem: &str, outcomes: &[ExperimentOutcome]) -> Result<()> {
    let summary = dir.join(format!("{stem}_summary.csv"));
    let rows: Vec<_> = outcomes.iter().map(|o| o.summary.clone()).collect();
    write_summary_csv(create(&summary)?, &rows)?;
    let trials = dir.join(format!("{stem}_trials.csv"));
    let pairs: Vec<_> = outcomes.iter().map(|o| (&o.summary, o.trials.as_slice())).collect();
    write_trials_csv(create(&trials)?, &pairs)?;
    println!("wrote {}", summary.display());
    println!("wrote {}", trials.display());
    Ok(())
}

fn schedule(s: Settings, algo: Option<Algorithm>, dataset: Option<PathBuf>) -> Result<()> {
    let defaults = s.profile(Profile::Full).schedule();
    let problem = match dataset {
        Some(path) => SchedulingProblem::new(Dataset::load(&path)?, SimulationConfig::default())?,
        None => SchedulingProblem::builtin(),
    };
    let out_dir = s.out_dir()?;
    let spec = ExperimentSpec {
        algorithm: algo.unwrap_or(Algorithm::Agabc),
        problem: Problem::Schedule(problem.clone()),
        dim: problem.dim(),
        trials: s.trials(defaults.trials),
        colony_size: s.pop(defaults.colony_size),
        max_iter: s.iters(defaults.max_iter),
        limit: s.limit(defaults.limit),
        seed: s.seed(),
        options: RunOptions::default(),
    };
    let outcome = run_experiment(&spec, s.workers())?;
    let best = outcome
        .trials
        .iter()
        .min_by(|a, b| a.best_f.total_cmp(&b.best_f))
        .expect("at least one trial");
    let schedule = problem.schedule(&outcome.runs[best.trial].best_position)?;
    verify_non_crossing(&schedule, problem.config.margin, &problem.config.kinematics)
        .map_err(|e| Error::Infeasible { reason: e, penalty: problem.config.penalty })?;

    let report = out_dir.join("schedule_best.json");
    write_schedule_json(create(&report)?, &schedule, &problem.dataset)?;
    let r = &outcome.summary;
    println!(
        "{} over {} trials: best {} avg {} std {}",
        r.algorithm,
        r.trials,
        super::format_sci(r.best_f),
        super::format_sci(r.avg_f),
        super::format_sci(r.std)
    );
    println!("best trial {} (seed {})", best.trial, best.seed);
    let seq: Vec<String> = schedule.sequence.iter().map(u32::to_string).collect();
    println!("sequence: {}", seq.join(" "));
    for (port, tasks) in schedule.port_allocation(problem.dataset.ports.iter().map(|p| p.id.as_str())) {
        let tasks: Vec<String> = tasks.iter().map(u32::to_string).collect();
        println!("  {port:<3} {}", tasks.join(" "));
    }
    println!("makespan: {} s", schedule.makespan);
    println!("wrote {}", report.display());
    write_outcomes(&out_dir, "schedule", std::slice::from_ref(&outcome))
}

fn trace(s: Settings, function: Option<String>, algo: Option<Algorithm>, dim: Option<usize>, path: bool) -> Result<()> {
    let defaults = s.profile(Profile::Desk).bench();
    let function = function.unwrap_or_else(|| "f1".into());
    let algorithm = algo.unwrap_or(if path { Algorithm::Locked(StrategyId::A) } else { Algorithm::Agabc });
    let dim = dim.unwrap_or(if path { 2 } else { defaults.dims[0] });
    if path && dim != 2 {
        return Err(Error::Domain(format!("--path needs --dim 2, got {dim}")));
    }
    if !path && algorithm != Algorithm::Agabc {
        return Err(Error::Config(format!("weight traces need --algo agabc, got {algorithm}")));
    }
    let out_dir = s.out_dir()?;
    let spec = ExperimentSpec {
        algorithm,
        problem: Problem::resolve(&function)?,
        dim,
        trials: 1,
        colony_size: s.pop(defaults.colony_size),
        max_iter: s.iters(defaults.max_iter),
        limit: s.limit(defaults.limit),
        seed: s.seed(),
        options: RunOptions { record_path: path, record_awards: false },
    };
    let outcome = run_experiment(&spec, 1)?;
    let run = &outcome.runs[0];
    let file = if path {
        let file = out_dir.join(format!("path_{algorithm}_{function}.csv"));
        write_search_path_csv(create(&file)?, run)?;
        file
    } else {
        let file = out_dir.join(format!("weights_{function}_d{dim}.csv"));
        write_weight_trace_csv(create(&file)?, run)?;
        if let Some(w) = run.final_weights {
            println!("final weights a..e: {:?}", w.0);
        }
        file
    };
    println!("best objective: {}", super::format_sci(run.best_objective));
    println!("wrote {}", file.display());
    Ok(())
}

fn list() {
    println!("functions:");
    for f in registry() {
        println!(
            "  {:<3} {:<18} {:<10} [{}, {}]  min {} at x_i = {}",
            f.id,
            f.name,
            format!("{:?}", f.modality).to_lowercase(),
            f.lower,
            f.upper,
            f.known_minimum_value,
            f.minimizer_coordinate
        );
    }
    println!("  schedule (twin-ETV makespan, `agabc schedule`)");
    println!("algorithms:");
    for a in Algorithm::NAMED {
        println!("  {a}");
    }
    println!("  locked-A .. locked-E (single-strategy colony)");
    println!("profiles:");
    for (name, p) in [("full", Profile::Full), ("desk", Profile::Desk)] {
        let d = p.bench();
        println!(
            "  {name:<6} pop {} iters {} limit {} trials {} dims {:?}",
            d.colony_size, d.max_iter, d.limit, d.trials, d.dims
        );
    }
}
