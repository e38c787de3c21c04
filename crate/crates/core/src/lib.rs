//! Artificial bee colony optimizers for continuous minimization.
//!
//! The crate provides the classic colony, a gbest-guided variant and an
//! adaptive group-collaborative colony that chooses among five search
//! operators (two of them Levy-flight based) by success-driven weights. It
//! also ships seven benchmark objectives, a random-key scheduling model for
//! twin elevating transfer vehicles, and an experiment harness with CSV
//! output.
//!
//! ```
//! use agabc::{colony::run_agabc, colony::RunOptions, population::{Bounds, ColonyConfig}};
//!
//! let bounds = Bounds::uniform(2, -100.0, 100.0).unwrap();
//! let cfg = ColonyConfig::new(40, bounds, 200, 100, 7);
//! let sphere = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
//! let result = run_agabc(&sphere, &cfg, RunOptions::default()).unwrap();
//! assert!(result.best_objective < 1e-3);
//! ```

pub mod benchmarks;
pub mod colony;
pub mod error;
pub mod population;
pub mod rng;
pub mod harness;
pub mod scheduling;
pub mod strategies;

pub use error::{Error, Result};
