//! Strategy weights of the adaptive colony on each benchmark. Weights only
//! grow; the strategies that keep improving sources pull ahead.

use agabc::benchmarks::registry;
use agabc::colony::{run_agabc, RunOptions};
use agabc::harness::write_weight_trace_csv;
use agabc::population::ColonyConfig;
use agabc::strategies::StrategyWeights;

pub fn final_weights(dim: usize, colony_size: usize, max_iter: usize, seed: u64) -> Vec<(&'static str, StrategyWeights)> {
    registry()
        .iter()
        .map(|f| {
            let cfg = ColonyConfig::new(colony_size, f.bounds(dim).unwrap(), max_iter, 100, seed);
            let r = run_agabc(&f.func(), &cfg, RunOptions::default()).unwrap();
            (f.id, r.final_weights.unwrap())
        })
        .collect()
}

fn main() {
    println!("function        A        B        C        D        E");
    for (id, w) in final_weights(10, 100, 2000, 3) {
        let [a, b, c, d, e] = w.0;
        println!("{id:<8} {a:>8} {b:>8} {c:>8} {d:>8} {e:>8}");
    }

    // Full trajectory of one run, ready for plotting.
    let f1 = &registry()[0];
    let cfg = ColonyConfig::new(100, f1.bounds(10).unwrap(), 200, 100, 3);
    let run = run_agabc(&f1.func(), &cfg, RunOptions::default()).unwrap();
    let mut csv = Vec::new();
    write_weight_trace_csv(&mut csv, &run).unwrap();
    let text = String::from_utf8(csv).unwrap();
    println!("\nf1 trace, first rows:");
    for line in text.lines().take(6) {
        println!("{line}");
    }
}
