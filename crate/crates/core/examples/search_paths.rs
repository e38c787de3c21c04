//! Strategy-locked colonies on the 2-D Rastrigin function, pooled over ten
//! seeds. Strategy D's step shrinks with the iteration count, so its late
//! moves are smaller on average than A's, whose sources keep hopping between
//! basins. Single seeds can go either way.
//!
//! Pass `--csv` to print the A-only path as `iter,source,x1,x2`.

use agabc::benchmarks::registry_lookup;
use agabc::colony::{run_locked, RunOptions, RunResult};
use agabc::harness::write_search_path_csv;
use agabc::population::ColonyConfig;
use agabc::strategies::StrategyId;

pub fn locked_run(strategy: StrategyId, max_iter: usize, seed: u64) -> RunResult {
    let f2 = registry_lookup("f2").unwrap();
    let cfg = ColonyConfig::new(20, f2.bounds(2).unwrap(), max_iter, 50, seed);
    let opts = RunOptions { record_path: true, record_awards: false };
    run_locked(&f2.func(), &cfg, strategy, opts).unwrap()
}

fn late_steps(run: &RunResult, max_iter: usize) -> impl Iterator<Item = f64> + '_ {
    let from = max_iter - max_iter / 10;
    run.accepted_steps.iter().filter(move |s| s.iter > from).map(|s| s.length)
}

/// Largest accepted step over the last tenth of the run.
pub fn late_max_step(run: &RunResult, max_iter: usize) -> f64 {
    late_steps(run, max_iter).fold(0.0, f64::max)
}

/// `(late mean step, late max step)` pooled over seeds `0..seeds`.
pub fn pooled(strategy: StrategyId, max_iter: usize, seeds: u64) -> (f64, f64) {
    let runs: Vec<RunResult> = (0..seeds).map(|seed| locked_run(strategy, max_iter, seed)).collect();
    let n: usize = runs.iter().map(|r| late_steps(r, max_iter).count()).sum();
    let sum: f64 = runs.iter().map(|r| late_steps(r, max_iter).sum::<f64>()).sum();
    let max = runs.iter().map(|r| late_max_step(r, max_iter)).fold(0.0, f64::max);
    (sum / n.max(1) as f64, max)
}

fn main() {
    let max_iter = 300;
    println!("last 10% of {max_iter} iterations, seeds 0..10:");
    for s in StrategyId::ALL {
        let (mean, max) = pooled(s, max_iter, 10);
        println!("  {s}-only: mean accepted step {mean:.3e}, max {max:.3e}");
    }
    if std::env::args().any(|a| a == "--csv") {
        write_search_path_csv(std::io::stdout().lock(), &locked_run(StrategyId::A, max_iter, 0)).unwrap();
    }
}
