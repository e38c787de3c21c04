//! Minimize a 10-D Rastrigin function with the classic and the adaptive
//! colony under the same budget.
//!
//! ```text
//! cargo run --release --example quickstart
//! ```

use agabc::benchmarks::registry_lookup;
use agabc::colony::{run_abc, run_agabc, RunOptions};
use agabc::population::ColonyConfig;

pub struct Comparison {
    pub abc: f64,
    pub agabc: f64,
    pub agabc_evaluations: usize,
}

pub fn compare(dim: usize, colony_size: usize, max_iter: usize, seed: u64) -> Comparison {
    let f2 = registry_lookup("f2").expect("f2 is registered");
    let cfg = ColonyConfig::new(colony_size, f2.bounds(dim).unwrap(), max_iter, 100, seed);
    let objective = f2.func();

    let abc = run_abc(&objective, &cfg).unwrap();
    let adaptive = run_agabc(&objective, &cfg, RunOptions::default()).unwrap();
    Comparison {
        abc: abc.best_objective,
        agabc: adaptive.best_objective,
        agabc_evaluations: adaptive.evaluations,
    }
}

fn main() {
    let c = compare(10, 100, 2000, 42);
    println!("rastrigin D=10, 2000 iterations, colony 100");
    println!("  abc   best {:.6e}", c.abc);
    println!("  agabc best {:.6e} ({} evaluations)", c.agabc, c.agabc_evaluations);
}
