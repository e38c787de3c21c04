//! A small benchmark table: every registered function, three algorithms,
//! a handful of seeded trials, written as the summary CSV.

use agabc::benchmarks::registry;
use agabc::colony::{Algorithm, RunOptions};
use agabc::harness::{run_experiment, write_summary_csv, ExperimentSpec, Problem, SummaryRow};

pub fn table(dim: usize, trials: usize, colony_size: usize, max_iter: usize) -> Vec<SummaryRow> {
    let mut rows = Vec::new();
    for f in registry() {
        for algorithm in [Algorithm::Abc, Algorithm::Gabc, Algorithm::Agabc] {
            let spec = ExperimentSpec {
                algorithm,
                problem: Problem::Benchmark(f),
                dim,
                trials,
                colony_size,
                max_iter,
                limit: 100,
                seed: 1,
                options: RunOptions::default(),
            };
            rows.push(run_experiment(&spec, 0).unwrap().summary);
        }
    }
    rows
}

fn main() {
    let rows = table(10, 5, 100, 1000);
    write_summary_csv(std::io::stdout().lock(), &rows).unwrap();
}
