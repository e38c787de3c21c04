use crate::error::{Error, Result};
use crate::population::ColonyConfig;
use crate::rng::RngStream;
use crate::strategies::{generate, SearchContext, StrategyId};

use super::{scout_phase, ColonyState, Recorder, RunOptions, RunResult};

/// Classic artificial bee colony: strategy A in the employed and onlooker
/// phases, scouts for exhausted sources.
pub fn run_abc<F>(objective: &F, cfg: &ColonyConfig) -> Result<RunResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    run_locked(objective, cfg, StrategyId::A, RunOptions::default())
}

/// Gbest-guided colony: strategy E replaces A in both phases.
pub fn run_gabc<F>(objective: &F, cfg: &ColonyConfig) -> Result<RunResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    run_locked(objective, cfg, StrategyId::E, RunOptions::default())
}

/// The classic loop with `strategy` generating every candidate.
///
/// Employed bees visit every source once per iteration. Onlooker bees make a
/// single pass over the sources and exploit source `m` when a uniform draw
/// falls below its roulette probability.
pub fn run_locked<F>(objective: &F, cfg: &ColonyConfig, strategy: StrategyId, opts: RunOptions) -> Result<RunResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let mut state = ColonyState::initialize(objective, cfg, opts)?;
    let mut rec = Recorder::new(cfg, false);
    let sn = state.sources.len();

    for iter in 1..=cfg.max_iter {
        rec.entering(&state);
        state.iter = iter;

        for m in 0..sn {
            search_once(&mut state, objective, cfg, strategy, m)?;
        }

        let prob = state.probabilities()?;
        for (m, p) in prob.iter().enumerate() {
            if state.rng.unit() < *p {
                state.counts.onlooker_visits += 1;
                search_once(&mut state, objective, cfg, strategy, m)?;
            }
        }

        scout_phase(&mut state, objective, cfg)?;
        rec.completed(&state);
    }
    Ok(rec.finish(state))
}

fn search_once<F>(state: &mut ColonyState, objective: &F, cfg: &ColonyConfig, strategy: StrategyId, m: usize) -> Result<bool>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let sn = state.sources.len();
    let j = state.rng.index_except(sn, m);
    let k = state.rng.index(cfg.dim);
    let candidate = {
        let ctx = SearchContext {
            bounds: &cfg.bounds,
            params: &cfg.strategy,
            gbest: &state.gbest.position,
            iter: state.iter.max(1),
        };
        generate(
            strategy,
            &state.sources[m].position,
            &state.sources[j].position,
            k,
            &ctx,
            &mut state.rng,
        )
    };
    let f = state.evaluate(objective, &candidate)?;
    state.offer(m, candidate, f, strategy)
}

/// Uniform random sampling with the budget `SN * (max_iter + 1)`: one batch
/// of `SN` samples to start, then `SN` per iteration.
pub fn run_random_search<F>(objective: &F, cfg: &ColonyConfig) -> Result<RunResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    cfg.validate()?;
    let sn = cfg.food_count();
    let mut rng = RngStream::new(cfg.seed);
    let mut best_position = Vec::new();
    let mut best_objective = f64::INFINITY;
    let mut evaluations = 0usize;
    let mut trace = Vec::with_capacity(cfg.max_iter);

    for iter in 0..=cfg.max_iter {
        if iter > 0 {
            trace.push(best_objective);
        }
        for _ in 0..sn {
            let x = cfg.bounds.sample(&mut rng);
            let f = objective(&x);
            evaluations += 1;
            if !f.is_finite() {
                return Err(Error::NonFiniteObjective { value: f, iter });
            }
            if f < best_objective {
                best_objective = f;
                best_position = x;
            }
        }
    }

    Ok(RunResult {
        best_position,
        best_objective,
        objective_trace: trace,
        weight_trace: Vec::new(),
        final_weights: None,
        max_trial_trace: vec![0; cfg.max_iter],
        evaluations,
        counts: Default::default(),
        awards: Vec::new(),
        path: Vec::new(),
        accepted_steps: Vec::new(),
    })
}
