//! Optimization loops.
//!
//! * [`run_abc`]: classic colony, strategy A in both phases.
//! * [`run_gabc`]: gbest-guided colony, strategy E in both phases.
//! * [`run_locked`]: classic loop driven by any single strategy.
//! * [`run_agabc`]: adaptive group-collaborative colony.
//! * [`run_random_search`]: uniform sampling baseline.
//!
//! Traces are indexed by completed iterations: entry `t` holds the state
//! entering iteration `t + 1`, so entry 0 is the state right after
//! initialization and a run of `max_iter` iterations yields `max_iter`
//! entries. The state after the last iteration is in
//! [`RunResult::best_objective`] and [`RunResult::final_weights`]. The
//! adaptive warm-up round runs at the start of iteration 1, so weight entry 0
//! holds the initial weights.
//!
//! # Evaluation budgets
//!
//! With `SN = colony_size / 2`, `V` onlooker visits (sources that passed the
//! probability gate) and `S` scout replacements:
//!
//! * single-strategy loops: `SN + max_iter * SN + V + S`
//! * adaptive loop: `SN + 5 * SN + 2 * max_iter * SN + V + S` (the `5 * SN`
//!   term is the strategy warm-up round)
//! * random search: `SN * (max_iter + 1)`

mod adaptive;
mod classic;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::population::{greedy_replace, init_population, ColonyConfig, FoodSource};
use crate::rng::RngStream;
use crate::strategies::{StrategyId, StrategyWeights};

pub use adaptive::{
    employed_phase_agabc, onlooker_phase_agabc, run_agabc, select_employed_winners,
    select_onlooker_strategy, warm_up_weights,
};
pub use classic::{run_abc, run_gabc, run_locked, run_random_search};

/// Which optimizer to run.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Algorithm {
    Abc,
    Gabc,
    Agabc,
    Random,
    /// Classic loop driven by one strategy in both phases.
    Locked(StrategyId),
}

impl Algorithm {
    /// The algorithms exposed by name.
    pub const NAMED: [Algorithm; 4] = [Self::Abc, Self::Gabc, Self::Agabc, Self::Random];

    pub fn run<F>(self, objective: &F, cfg: &ColonyConfig, opts: RunOptions) -> Result<RunResult>
    where
        F: Fn(&[f64]) -> f64 + ?Sized,
    {
        match self {
            Self::Abc => run_locked(objective, cfg, StrategyId::A, opts),
            Self::Gabc => run_locked(objective, cfg, StrategyId::E, opts),
            Self::Locked(s) => run_locked(objective, cfg, s, opts),
            Self::Agabc => run_agabc(objective, cfg, opts),
            Self::Random => run_random_search(objective, cfg),
        }
    }

    /// Number of objective evaluations a finished run must have spent.
    pub fn evaluation_budget(self, cfg: &ColonyConfig, counts: &PhaseCounts) -> usize {
        let sn = cfg.food_count();
        match self {
            Self::Abc | Self::Gabc | Self::Locked(_) => {
                sn + cfg.max_iter * sn + counts.onlooker_visits + counts.scouts
            }
            Self::Agabc => sn + 5 * sn + 2 * cfg.max_iter * sn + counts.onlooker_visits + counts.scouts,
            Self::Random => sn * (cfg.max_iter + 1),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Abc => f.write_str("abc"),
            Self::Gabc => f.write_str("gabc"),
            Self::Agabc => f.write_str("agabc"),
            Self::Random => f.write_str("random"),
            Self::Locked(s) => write!(f, "locked-{s}"),
        }
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.trim().to_ascii_lowercase();
        match lower.as_str() {
            "abc" => Ok(Self::Abc),
            "gabc" => Ok(Self::Gabc),
            "agabc" => Ok(Self::Agabc),
            "random" => Ok(Self::Random),
            _ => lower
                .strip_prefix("locked-")
                .and_then(|id| id.parse().ok())
                .map(Self::Locked)
                .ok_or_else(|| Error::Lookup {
                    kind: "algorithm",
                    name: s.to_string(),
                    valid: "abc, gabc, agabc, random, locked-<A..E>".into(),
                }),
        }
    }
}

/// Optional recording switches. Recording never changes the random stream.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Keep every source position after each iteration and every accepted
    /// move.
    pub record_path: bool,
    /// Keep every weight award.
    pub record_awards: bool,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhaseCounts {
    pub onlooker_visits: usize,
    pub scouts: usize,
}

/// One `+W1` award. Iteration 0 is the warm-up round.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AwardEvent {
    pub iter: usize,
    pub strategy: StrategyId,
}

/// Position of one source after an iteration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PathPoint {
    pub iter: usize,
    pub source: usize,
    pub position: Vec<f64>,
}

/// A greedy acceptance: source `source` moved by `length` (Euclidean) using
/// `strategy`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AcceptedStep {
    pub iter: usize,
    pub source: usize,
    pub strategy: StrategyId,
    pub length: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunResult {
    pub best_position: Vec<f64>,
    pub best_objective: f64,
    /// Best-so-far objective entering each iteration.
    pub objective_trace: Vec<f64>,
    /// Strategy weights entering each iteration. Empty for non-adaptive runs.
    pub weight_trace: Vec<StrategyWeights>,
    pub final_weights: Option<StrategyWeights>,
    /// Largest trial counter after each completed iteration.
    pub max_trial_trace: Vec<usize>,
    pub evaluations: usize,
    pub counts: PhaseCounts,
    pub awards: Vec<AwardEvent>,
    pub path: Vec<PathPoint>,
    pub accepted_steps: Vec<AcceptedStep>,
}

/// Mutable state of one colony run.
#[derive(Clone, Debug)]
pub struct ColonyState {
    pub sources: Vec<FoodSource>,
    pub gbest: FoodSource,
    pub weights: StrategyWeights,
    /// Current iteration, 1-based inside the main loop and 0 before it.
    pub iter: usize,
    pub rng: RngStream,
    pub evaluations: usize,
    pub counts: PhaseCounts,
    pub options: RunOptions,
    pub awards: Vec<AwardEvent>,
    pub accepted_steps: Vec<AcceptedStep>,
}

impl ColonyState {
    /// Samples and evaluates the initial population.
    pub fn initialize<F>(objective: &F, cfg: &ColonyConfig, options: RunOptions) -> Result<Self>
    where
        F: Fn(&[f64]) -> f64 + ?Sized,
    {
        cfg.validate()?;
        let mut rng = RngStream::new(cfg.seed);
        let sources = init_population(cfg, &mut rng, objective)?;
        let gbest = best_of(&sources).clone();
        Ok(Self {
            evaluations: sources.len(),
            sources,
            gbest,
            weights: StrategyWeights::uniform(cfg.strategy.initial_weight),
            iter: 0,
            rng,
            counts: PhaseCounts::default(),
            options,
            awards: Vec::new(),
            accepted_steps: Vec::new(),
        })
    }

    pub fn evaluate<F>(&mut self, objective: &F, x: &[f64]) -> Result<f64>
    where
        F: Fn(&[f64]) -> f64 + ?Sized,
    {
        self.evaluations += 1;
        let value = objective(x);
        if value.is_finite() {
            Ok(value)
        } else {
            Err(Error::NonFiniteObjective { value, iter: self.iter })
        }
    }

    pub fn award(&mut self, strategy: StrategyId, increment: f64) {
        self.weights.award(strategy, increment);
        if self.options.record_awards {
            self.awards.push(AwardEvent { iter: self.iter, strategy });
        }
    }

    /// Greedy update of source `m`; returns whether the candidate was kept.
    pub fn offer(&mut self, m: usize, candidate: Vec<f64>, f_candidate: f64, strategy: StrategyId) -> Result<bool> {
        let improved = f_candidate < self.sources[m].objective;
        if improved && self.options.record_path {
            let length = euclidean(&self.sources[m].position, &candidate);
            self.accepted_steps.push(AcceptedStep {
                iter: self.iter,
                source: m,
                strategy,
                length,
            });
        }
        let current = self.sources[m].clone();
        self.sources[m] = greedy_replace(current, candidate, f_candidate)?;
        if improved {
            self.refresh_gbest(m);
        }
        Ok(improved)
    }

    fn refresh_gbest(&mut self, m: usize) {
        if self.sources[m].objective < self.gbest.objective {
            self.gbest = self.sources[m].clone();
        }
    }

    /// Roulette probabilities of the current sources.
    pub fn probabilities(&self) -> Result<Vec<f64>> {
        let fit: Vec<f64> = self.sources.iter().map(|s| s.fitness).collect();
        crate::population::selection_probability(&fit)
    }

    pub fn max_trial(&self) -> usize {
        self.sources.iter().map(|s| s.trial).max().unwrap_or(0)
    }
}

/// Replaces every source whose trial counter exceeds `limit` with a fresh
/// uniform sample. The best-so-far record is kept even when its source is
/// abandoned.
pub fn scout_phase<F>(state: &mut ColonyState, objective: &F, cfg: &ColonyConfig) -> Result<()>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    for m in 0..state.sources.len() {
        if state.sources[m].trial > cfg.limit {
            let x = cfg.bounds.sample(&mut state.rng);
            let f = state.evaluate(objective, &x)?;
            state.sources[m] = FoodSource::new(x, f)?;
            state.counts.scouts += 1;
            state.refresh_gbest(m);
        }
    }
    Ok(())
}

fn best_of(sources: &[FoodSource]) -> &FoodSource {
    sources
        .iter()
        .reduce(|best, s| if s.objective < best.objective { s } else { best })
        .expect("population is non-empty")
}

fn euclidean(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum::<f64>().sqrt()
}

/// Collects traces while a loop runs and assembles the [`RunResult`].
pub(crate) struct Recorder {
    objective_trace: Vec<f64>,
    weight_trace: Vec<StrategyWeights>,
    max_trial_trace: Vec<usize>,
    path: Vec<PathPoint>,
    adaptive: bool,
}

impl Recorder {
    pub(crate) fn new(cfg: &ColonyConfig, adaptive: bool) -> Self {
        Self {
            objective_trace: Vec::with_capacity(cfg.max_iter),
            weight_trace: Vec::with_capacity(if adaptive { cfg.max_iter } else { 0 }),
            max_trial_trace: Vec::with_capacity(cfg.max_iter),
            path: Vec::new(),
            adaptive,
        }
    }

    /// Snapshot of the state entering the next iteration.
    pub(crate) fn entering(&mut self, state: &ColonyState) {
        self.objective_trace.push(state.gbest.objective);
        if self.adaptive {
            self.weight_trace.push(state.weights);
        }
    }

    pub(crate) fn completed(&mut self, state: &ColonyState) {
        self.max_trial_trace.push(state.max_trial());
        if state.options.record_path {
            for (m, s) in state.sources.iter().enumerate() {
                self.path.push(PathPoint {
                    iter: state.iter,
                    source: m,
                    position: s.position.clone(),
                });
            }
        }
    }

    pub(crate) fn finish(self, state: ColonyState) -> RunResult {
        RunResult {
            best_position: state.gbest.position,
            best_objective: state.gbest.objective,
            objective_trace: self.objective_trace,
            weight_trace: self.weight_trace,
            final_weights: self.adaptive.then_some(state.weights),
            max_trial_trace: self.max_trial_trace,
            evaluations: state.evaluations,
            counts: state.counts,
            awards: state.awards,
            path: self.path,
            accepted_steps: state.accepted_steps,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::population::Bounds;

    fn cfg(limit: usize) -> ColonyConfig {
        ColonyConfig::new(8, Bounds::uniform(2, -5.0, 5.0).unwrap(), 10, limit, 17)
    }

    fn sphere(x: &[f64]) -> f64 {
        x.iter().map(|v| v * v).sum()
    }

    #[test]
    fn algorithm_names_round_trip() {
        for a in Algorithm::NAMED {
            assert_eq!(a.to_string().parse::<Algorithm>().unwrap(), a);
        }
        assert_eq!("locked-D".parse::<Algorithm>().unwrap(), Algorithm::Locked(StrategyId::D));
        let err = "pso".parse::<Algorithm>().unwrap_err().to_string();
        assert!(err.contains("agabc") && err.contains("pso"));
    }

    #[test]
    fn scout_noop_when_all_within_limit() {
        let c = cfg(3);
        let mut state = ColonyState::initialize(&sphere, &c, RunOptions::default()).unwrap();
        for s in &mut state.sources {
            s.trial = 3;
        }
        let before = state.sources.clone();
        scout_phase(&mut state, &sphere, &c).unwrap();
        assert_eq!(state.sources, before);
        assert_eq!(state.counts.scouts, 0);
    }

    #[test]
    fn scout_resamples_exhausted_source_and_keeps_gbest() {
        let c = cfg(3);
        let mut state = ColonyState::initialize(&sphere, &c, RunOptions::default()).unwrap();
        let best = (0..state.sources.len())
            .min_by(|a, b| state.sources[*a].objective.total_cmp(&state.sources[*b].objective))
            .unwrap();
        state.sources[best].trial = 4;
        let gbest = state.gbest.clone();
        let old = state.sources[best].position.clone();
        scout_phase(&mut state, &sphere, &c).unwrap();
        assert_eq!(state.sources[best].trial, 0);
        assert_ne!(state.sources[best].position, old);
        assert!(state.gbest.objective <= gbest.objective);
        assert_eq!(state.counts.scouts, 1);
        assert_eq!(state.evaluations, 5);
    }

    #[test]
    fn non_finite_objective_aborts() {
        let c = cfg(3);
        let nan = |_: &[f64]| f64::NAN;
        assert!(matches!(
            ColonyState::initialize(&nan, &c, RunOptions::default()),
            Err(Error::NonFiniteObjective { .. })
        ));
        let late = std::cell::Cell::new(0usize);
        let flaky = |x: &[f64]| {
            late.set(late.get() + 1);
            if late.get() > 40 {
                f64::INFINITY
            } else {
                sphere(x)
            }
        };
        for alg in [Algorithm::Abc, Algorithm::Agabc, Algorithm::Gabc] {
            late.set(0);
            let err = alg.run(&flaky, &c, RunOptions::default()).unwrap_err();
            assert!(matches!(err, Error::NonFiniteObjective { iter, .. } if iter >= 1), "{alg}");
        }
    }
}
