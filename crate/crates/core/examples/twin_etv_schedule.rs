//! Schedule the built-in 60-task set on two rail-sharing vehicles: optimize
//! random keys with the adaptive colony, compare with random keys, and check
//! the resulting timelines never bring the vehicles closer than the margin.

use agabc::colony::{run_agabc, RunOptions};
use agabc::population::ColonyConfig;
use agabc::rng::RngStream;
use agabc::scheduling::{verify_non_crossing, Schedule, SchedulingProblem};

pub struct Outcome {
    pub schedule: Schedule,
    pub random_median: f64,
}

pub fn optimize(colony_size: usize, max_iter: usize, random_samples: usize, seed: u64) -> Outcome {
    let problem = SchedulingProblem::builtin();
    let cfg = ColonyConfig::new(colony_size, problem.bounds(), max_iter, 50, seed);
    let objective = |keys: &[f64]| problem.objective_from_keys(keys);
    let run = run_agabc(&objective, &cfg, RunOptions::default()).unwrap();
    let schedule = problem.schedule(&run.best_position).unwrap();
    verify_non_crossing(&schedule, problem.config.margin, &problem.config.kinematics).unwrap();

    let mut rng = RngStream::new(seed ^ 0x5eed);
    let mut samples: Vec<f64> = (0..random_samples)
        .map(|_| problem.objective_from_keys(&problem.bounds().sample(&mut rng)))
        .collect();
    samples.sort_by(f64::total_cmp);
    Outcome {
        schedule,
        random_median: samples[random_samples / 2],
    }
}

fn main() {
    let out = optimize(200, 300, 2000, 7);
    let s = &out.schedule;
    println!("makespan {} s (random keys: median {} s)", s.makespan, out.random_median);
    println!("ETV1 done at {} s, ETV2 done at {} s", s.completion[0], s.completion[1]);
    let dataset = SchedulingProblem::builtin().dataset;
    for (port, tasks) in s.port_allocation(dataset.ports.iter().map(|p| p.id.as_str())) {
        println!("{port:<3} {tasks:?}");
    }
}
