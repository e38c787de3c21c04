//! Adaptive group-collaborative colony.
//!
//! Employed bees pick two of the long-step strategies {A, B, C} per source
//! through randomized weight comparisons and keep the better of the two
//! candidates; onlooker bees pick one of the short-step strategies {D, E}.
//! Every successful strategy earns `W1` on its weight, so the selection
//! drifts towards the operators that keep paying off.

use crate::error::Result;
use crate::population::ColonyConfig;
use crate::rng::RngStream;
use crate::strategies::{generate, SearchContext, StrategyId, StrategyWeights};

use super::{scout_phase, ColonyState, Recorder, RunOptions, RunResult};

/// Picks the employed-pool pair for one source.
///
/// Three randomized comparisons are drawn, each with fresh uniform factors:
///
/// * `r a > r c && r b > r c` selects {A, B}
/// * `r a > r b && r c > r b` selects {A, C}
/// * `r b > r a && r c > r a` selects {B, C}
///
/// When several comparisons hold, one of them is chosen uniformly; when none
/// holds, all three are redrawn.
pub fn select_employed_winners(weights: &StrategyWeights, rng: &mut RngStream) -> (StrategyId, StrategyId) {
    use StrategyId::{A, B, C};
    let (a, b, c) = (weights.get(A), weights.get(B), weights.get(C));
    let beats = |x: f64, y: f64, rng: &mut RngStream| rng.unit() * x > rng.unit() * y;
    loop {
        let ab = beats(a, c, rng) & beats(b, c, rng);
        let ac = beats(a, b, rng) & beats(c, b, rng);
        let bc = beats(b, a, rng) & beats(c, a, rng);
        let matched: Vec<(StrategyId, StrategyId)> = [(ab, (A, B)), (ac, (A, C)), (bc, (B, C))]
            .into_iter()
            .filter_map(|(hit, pair)| hit.then_some(pair))
            .collect();
        match matched.len() {
            0 => continue,
            1 => return matched[0],
            n => return matched[rng.index(n)],
        }
    }
}

/// `D` when `r d > r e`, otherwise `E`.
pub fn select_onlooker_strategy(weights: &StrategyWeights, rng: &mut RngStream) -> StrategyId {
    let d = rng.unit() * weights.get(StrategyId::D);
    let e = rng.unit() * weights.get(StrategyId::E);
    if d > e {
        StrategyId::D
    } else {
        StrategyId::E
    }
}

fn candidate<F>(
    state: &mut ColonyState,
    objective: &F,
    cfg: &ColonyConfig,
    strategy: StrategyId,
    m: usize,
) -> Result<(Vec<f64>, f64)>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let sn = state.sources.len();
    let j = state.rng.index_except(sn, m);
    let k = state.rng.index(cfg.dim);
    let x = {
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
    let f = state.evaluate(objective, &x)?;
    Ok((x, f))
}

/// Warm-up round run before the main loop: every strategy proposes one
/// candidate per source without touching the population. The two employed
/// strategies and the one onlooker strategy with the most improvements earn
/// `W1`; ties go to the earlier strategy.
pub fn warm_up_weights<F>(state: &mut ColonyState, objective: &F, cfg: &ColonyConfig) -> Result<()>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let mut wins = [0usize; 5];
    for pool in [&StrategyId::EMPLOYED[..], &StrategyId::ONLOOKER[..]] {
        for m in 0..state.sources.len() {
            for &s in pool {
                let (_, f) = candidate(state, objective, cfg, s, m)?;
                if f < state.sources[m].objective {
                    wins[s.index()] += 1;
                }
            }
        }
    }

    let mut employed = StrategyId::EMPLOYED;
    employed.sort_by_key(|s| std::cmp::Reverse(wins[s.index()]));
    let onlooker = if wins[StrategyId::D.index()] >= wins[StrategyId::E.index()] {
        StrategyId::D
    } else {
        StrategyId::E
    };
    for s in [employed[0], employed[1], onlooker] {
        state.award(s, cfg.strategy.w1_increment);
    }
    Ok(())
}

/// Employed phase: for each source, two winner strategies each propose a
/// candidate. If the better candidate improves the source it replaces it and
/// both winners earn `W1`; otherwise the source's trial counter grows.
pub fn employed_phase_agabc<F>(state: &mut ColonyState, objective: &F, cfg: &ColonyConfig) -> Result<()>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    for m in 0..state.sources.len() {
        let (s1, s2) = select_employed_winners(&state.weights, &mut state.rng);
        let (x1, f1) = candidate(state, objective, cfg, s1, m)?;
        let (x2, f2) = candidate(state, objective, cfg, s2, m)?;
        let (x, f, used) = if f2 < f1 { (x2, f2, s2) } else { (x1, f1, s1) };
        if state.offer(m, x, f, used)? {
            state.award(s1, cfg.strategy.w1_increment);
            state.award(s2, cfg.strategy.w1_increment);
        }
    }
    Ok(())
}

/// Onlooker phase: one pass over the sources; source `m` is exploited when a
/// uniform draw falls below its roulette probability. The chosen strategy
/// earns `W1` on improvement.
pub fn onlooker_phase_agabc<F>(state: &mut ColonyState, objective: &F, cfg: &ColonyConfig) -> Result<()>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let prob = state.probabilities()?;
    for (m, p) in prob.iter().enumerate() {
        if state.rng.unit() >= *p {
            continue;
        }
        state.counts.onlooker_visits += 1;
        let s = select_onlooker_strategy(&state.weights, &mut state.rng);
        let (x, f) = candidate(state, objective, cfg, s, m)?;
        if state.offer(m, x, f, s)? {
            state.award(s, cfg.strategy.w1_increment);
        }
    }
    Ok(())
}

pub fn run_agabc<F>(objective: &F, cfg: &ColonyConfig, opts: RunOptions) -> Result<RunResult>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    let mut state = ColonyState::initialize(objective, cfg, opts)?;
    let mut rec = Recorder::new(cfg, true);

    for iter in 1..=cfg.max_iter {
        rec.entering(&state);
        if iter == 1 {
            warm_up_weights(&mut state, objective, cfg)?;
        }
        state.iter = iter;
        employed_phase_agabc(&mut state, objective, cfg)?;
        onlooker_phase_agabc(&mut state, objective, cfg)?;
        scout_phase(&mut state, objective, cfg)?;
        rec.completed(&state);
    }
    Ok(rec.finish(state))
}
