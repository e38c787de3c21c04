//! Multi-trial experiments, summary statistics, CSV output and the CLI.
//!
//! Trials run in parallel on a rayon pool; trial `i` uses seed `seed + i`
//! and results are aggregated in trial order, so the output never depends on
//! the worker count.

pub mod cli;
mod config;
mod output;

use rayon::prelude::*;

use crate::benchmarks::{registry_lookup, BenchmarkFunction};
use crate::colony::{Algorithm, RunOptions, RunResult};
use crate::error::{Error, Result};
use crate::population::ColonyConfig;
use crate::scheduling::SchedulingProblem;

pub use config::{ConfigFile, Profile, ProfileDefaults};
pub use output::{
    format_sci, write_schedule_json, write_search_path_csv, write_summary_csv, write_trials_csv,
    write_weight_trace_csv, SUMMARY_HEADER, TRIALS_HEADER, WEIGHT_HEADER, PATH_HEADER,
};

/// What an experiment optimizes.
#[derive(Clone, Debug)]
pub enum Problem {
    Benchmark(&'static BenchmarkFunction),
    Schedule(SchedulingProblem),
}

impl Problem {
    /// `"schedule"` or a benchmark id.
    pub fn resolve(id: &str) -> Result<Self> {
        if id.eq_ignore_ascii_case("schedule") {
            Ok(Self::Schedule(SchedulingProblem::builtin()))
        } else {
            registry_lookup(id).map(Self::Benchmark)
        }
    }

    pub fn id(&self) -> &str {
        match self {
            Self::Benchmark(b) => b.id,
            Self::Schedule(_) => "schedule",
        }
    }

    /// Search box for `dim` variables. The scheduling problem has one key per
    /// task and ignores `dim`.
    pub fn bounds(&self, dim: usize) -> Result<crate::population::Bounds> {
        match self {
            Self::Benchmark(b) => b.bounds(dim),
            Self::Schedule(p) => Ok(p.bounds()),
        }
    }

    pub fn dim(&self, requested: usize) -> usize {
        match self {
            Self::Benchmark(_) => requested,
            Self::Schedule(p) => p.dim(),
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> f64 {
        match self {
            Self::Benchmark(b) => b.evaluate_unchecked(x),
            Self::Schedule(p) => p.objective_from_keys(x),
        }
    }
}

/// One experiment cell: an algorithm on a problem at one dimension.
#[derive(Clone, Debug)]
pub struct ExperimentSpec {
    pub algorithm: Algorithm,
    pub problem: Problem,
    pub dim: usize,
    pub trials: usize,
    pub colony_size: usize,
    pub max_iter: usize,
    pub limit: usize,
    pub seed: u64,
    pub options: RunOptions,
}

impl ExperimentSpec {
    pub fn validate(&self) -> Result<()> {
        if self.trials == 0 {
            return Err(Error::Config("trials must be at least 1".into()));
        }
        self.trial_config(0).and_then(|c| c.validate())
    }

    /// Colony configuration of trial `i`.
    pub fn trial_config(&self, i: usize) -> Result<ColonyConfig> {
        let dim = self.problem.dim(self.dim);
        let bounds = self.problem.bounds(dim)?;
        Ok(ColonyConfig::new(
            self.colony_size,
            bounds,
            self.max_iter,
            self.limit,
            self.seed.wrapping_add(i as u64),
        ))
    }
}

/// Final result of one trial.
#[derive(Clone, Debug, PartialEq)]
pub struct TrialRecord {
    pub trial: usize,
    pub seed: u64,
    pub best_f: f64,
    pub evaluations: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SummaryRow {
    pub algorithm: String,
    pub function: String,
    pub dim: usize,
    pub trials: usize,
    pub best_f: f64,
    pub avg_f: f64,
    pub std: f64,
}

#[derive(Clone, Debug)]
pub struct ExperimentOutcome {
    pub summary: SummaryRow,
    pub trials: Vec<TrialRecord>,
    /// Full run results in trial order.
    pub runs: Vec<RunResult>,
}

/// `(min, mean, sample standard deviation)`; the deviation of a single value
/// is 0.
pub fn summarize(finals: &[f64]) -> (f64, f64, f64) {
    assert!(!finals.is_empty(), "summarize needs at least one value");
    let n = finals.len() as f64;
    let best = finals.iter().copied().fold(f64::INFINITY, f64::min);
    let mean = finals.iter().sum::<f64>() / n;
    let std = if finals.len() < 2 {
        0.0
    } else {
        (finals.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / (n - 1.0)).sqrt()
    };
    (best, mean, std)
}

/// Runs every trial of `spec`, `workers` at a time (0 = one per core).
pub fn run_experiment(spec: &ExperimentSpec, workers: usize) -> Result<ExperimentOutcome> {
    spec.validate()?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::Config(format!("cannot start worker pool: {e}")))?;
    let runs: Vec<RunResult> = pool.install(|| {
        (0..spec.trials)
            .into_par_iter()
            .map(|i| {
                let cfg = spec.trial_config(i)?;
                let objective = |x: &[f64]| spec.problem.evaluate(x);
                spec.algorithm.run(&objective, &cfg, spec.options)
            })
            .collect::<Result<_>>()
    })?;

    let trials: Vec<TrialRecord> = runs
        .iter()
        .enumerate()
        .map(|(i, r)| TrialRecord {
            trial: i,
            seed: spec.seed.wrapping_add(i as u64),
            best_f: r.best_objective,
            evaluations: r.evaluations,
        })
        .collect();
    let finals: Vec<f64> = trials.iter().map(|t| t.best_f).collect();
    let (best_f, avg_f, std) = summarize(&finals);
    Ok(ExperimentOutcome {
        summary: SummaryRow {
            algorithm: spec.algorithm.to_string(),
            function: spec.problem.id().to_string(),
            dim: spec.problem.dim(spec.dim),
            trials: spec.trials,
            best_f,
            avg_f,
            std,
        },
        trials,
        runs,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(trials: usize) -> ExperimentSpec {
        ExperimentSpec {
            algorithm: Algorithm::Agabc,
            problem: Problem::resolve("f2").unwrap(),
            dim: 5,
            trials,
            colony_size: 20,
            max_iter: 30,
            limit: 10,
            seed: 7,
            options: RunOptions::default(),
        }
    }

    #[test]
    fn summary_hand_values() {
        assert_eq!(summarize(&[1.0, 2.0, 3.0]), (1.0, 2.0, 1.0));
        assert_eq!(summarize(&[3.0, 1.0, 2.0]), (1.0, 2.0, 1.0));
        assert_eq!(summarize(&[4.5]), (4.5, 4.5, 0.0));
    }

    #[test]
    fn experiment_is_deterministic_and_worker_independent() {
        let a = run_experiment(&spec(4), 1).unwrap();
        let b = run_experiment(&spec(4), 3).unwrap();
        assert_eq!(a.summary, b.summary);
        assert_eq!(a.trials, b.trials);
        assert_eq!(a.trials.iter().map(|t| t.seed).collect::<Vec<_>>(), [7, 8, 9, 10]);
        let finals: Vec<f64> = a.trials.iter().map(|t| t.best_f).collect();
        let (best, avg, std) = summarize(&finals);
        assert_eq!((a.summary.best_f, a.summary.avg_f, a.summary.std), (best, avg, std));
        assert!(a.summary.best_f <= a.summary.avg_f && a.summary.std >= 0.0);
    }

    #[test]
    fn trial_matches_standalone_run() {
        let s = spec(2);
        let out = run_experiment(&s, 2).unwrap();
        let cfg = s.trial_config(1).unwrap();
        let f = registry_lookup("f2").unwrap().func();
        let solo = crate::colony::run_agabc(&f, &cfg, RunOptions::default()).unwrap();
        assert_eq!(out.trials[1].best_f, solo.best_objective);
    }

    #[test]
    fn bad_specs() {
        assert!(matches!(Problem::resolve("f9"), Err(Error::Lookup { .. })));
        assert!(run_experiment(&spec(0), 1).is_err());
        let mut s = spec(1);
        s.dim = 1;
        s.problem = Problem::resolve("f3").unwrap();
        assert!(run_experiment(&s, 1).is_err());
    }

    #[test]
    fn schedule_problem_uses_task_count() {
        let p = Problem::resolve("schedule").unwrap();
        assert_eq!(p.dim(10), 60);
        assert_eq!(p.bounds(10).unwrap().dim(), 60);
    }
}
