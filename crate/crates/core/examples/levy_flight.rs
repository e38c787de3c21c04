//! Mantegna Levy steps for a few exponents: the scale factor and how heavy
//! the tails are compared with the median step.

use agabc::rng::RngStream;
use agabc::strategies::{levy_coefficient, levy_step};

#[derive(Debug)]
pub struct TailReport {
    pub lambda: f64,
    pub sigma: f64,
    pub median: f64,
    pub p99: f64,
    pub max: f64,
}

pub fn tail_report(lambda: f64, samples: usize, seed: u64) -> TailReport {
    let mut rng = RngStream::new(seed);
    let mut steps: Vec<f64> = (0..samples).map(|_| levy_step(lambda, &mut rng).abs()).collect();
    steps.sort_by(f64::total_cmp);
    TailReport {
        lambda,
        sigma: levy_coefficient(lambda).unwrap(),
        median: steps[samples / 2],
        p99: steps[samples * 99 / 100],
        max: steps[samples - 1],
    }
}

fn main() {
    println!("lambda   sigma      median     p99        max");
    for lambda in [0.5, 1.0, 1.5, 1.9] {
        let r = tail_report(lambda, 100_000, 5);
        println!(
            "{:<6} {:<10.6} {:<10.4} {:<10.3e} {:.3e}",
            r.lambda, r.sigma, r.median, r.p99, r.max
        );
    }
}
