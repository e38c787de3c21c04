//! Food sources and the population-level primitives shared by every colony
//! variant: fitness mapping, roulette probabilities, box handling and
//! greedy replacement.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rng::RngStream;
use crate::strategies::StrategyParams;

/// Axis-aligned search box.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Bounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl Bounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self> {
        if lower.len() != upper.len() {
            return Err(Error::Config(format!(
                "bounds length mismatch: {} lower vs {} upper",
                lower.len(),
                upper.len()
            )));
        }
        if lower.is_empty() {
            return Err(Error::Config("bounds must have at least one dimension".into()));
        }
        for (k, (lo, hi)) in lower.iter().zip(&upper).enumerate() {
            if !(lo.is_finite() && hi.is_finite() && lo < hi) {
                return Err(Error::Config(format!(
                    "dimension {k}: need finite lower < upper, got [{lo}, {hi}]"
                )));
            }
        }
        Ok(Self { lower, upper })
    }

    /// The same `[lo, hi]` interval on every one of `dim` axes.
    pub fn uniform(dim: usize, lo: f64, hi: f64) -> Result<Self> {
        Self::new(vec![lo; dim], vec![hi; dim])
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn width(&self, k: usize) -> f64 {
        self.upper[k] - self.lower[k]
    }

    pub fn max_width(&self) -> f64 {
        (0..self.dim()).map(|k| self.width(k)).fold(0.0, f64::max)
    }

    pub fn clamp_component(&self, k: usize, value: f64) -> f64 {
        value.clamp(self.lower[k], self.upper[k])
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.len() == self.dim()
            && x
                .iter()
                .enumerate()
                .all(|(k, v)| *v >= self.lower[k] && *v <= self.upper[k])
    }

    /// Uniform sample inside the box.
    pub fn sample(&self, rng: &mut RngStream) -> Vec<f64> {
        (0..self.dim())
            .map(|k| rng.uniform(self.lower[k], self.upper[k]))
            .collect()
    }
}

/// Limits every component of `x` to its interval. Components already inside
/// are returned untouched.
pub fn clamp_to_bounds(x: &[f64], bounds: &Bounds) -> Vec<f64> {
    debug_assert_eq!(x.len(), bounds.dim());
    x.iter()
        .enumerate()
        .map(|(k, v)| bounds.clamp_component(k, *v))
        .collect()
}

/// Maps a minimization objective onto a strictly positive fitness:
/// `1/(1+f)` for `f >= 0` and `1+|f|` otherwise.
pub fn fitness_from_objective(f: f64) -> Result<f64> {
    if !f.is_finite() {
        return Err(Error::Domain(format!("objective {f} is not finite")));
    }
    Ok(if f >= 0.0 { 1.0 / (1.0 + f) } else { 1.0 + f.abs() })
}

/// Roulette probabilities `P_m = fitness_m / sum(fitness)`.
pub fn selection_probability(fitnesses: &[f64]) -> Result<Vec<f64>> {
    if fitnesses.is_empty() {
        return Err(Error::Domain("selection over an empty population".into()));
    }
    if let Some(bad) = fitnesses.iter().find(|f| !(**f > 0.0) || !f.is_finite()) {
        return Err(Error::Domain(format!("fitness {bad} is not strictly positive")));
    }
    let total: f64 = fitnesses.iter().sum();
    Ok(fitnesses.iter().map(|f| f / total).collect())
}

/// One candidate solution with its bookkeeping.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FoodSource {
    pub position: Vec<f64>,
    pub objective: f64,
    pub fitness: f64,
    /// Consecutive failed improvement attempts.
    pub trial: usize,
}

impl FoodSource {
    pub fn new(position: Vec<f64>, objective: f64) -> Result<Self> {
        Ok(Self {
            fitness: fitness_from_objective(objective)?,
            position,
            objective,
            trial: 0,
        })
    }
}

/// Keeps the candidate only on strict improvement of the objective. A rejected
/// candidate costs the source one trial.
pub fn greedy_replace(
    current: FoodSource,
    candidate_position: Vec<f64>,
    f_candidate: f64,
) -> Result<FoodSource> {
    if f_candidate < current.objective {
        FoodSource::new(candidate_position, f_candidate)
    } else {
        Ok(FoodSource {
            trial: current.trial + 1,
            ..current
        })
    }
}

/// Run configuration shared by all colony variants.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ColonyConfig {
    /// Total number of bees; half of them are employed, one per food source.
    pub colony_size: usize,
    pub dim: usize,
    pub max_iter: usize,
    pub limit: usize,
    pub seed: u64,
    pub bounds: Bounds,
    pub strategy: StrategyParams,
}

impl ColonyConfig {
    /// Configuration with the default strategy parameters for `bounds`.
    pub fn new(colony_size: usize, bounds: Bounds, max_iter: usize, limit: usize, seed: u64) -> Self {
        Self {
            colony_size,
            dim: bounds.dim(),
            max_iter,
            limit,
            seed,
            strategy: StrategyParams::for_bounds(&bounds),
            bounds,
        }
    }

    /// Number of food sources, `colony_size / 2`.
    pub fn food_count(&self) -> usize {
        self.colony_size / 2
    }

    pub fn validate(&self) -> Result<()> {
        if self.food_count() < 2 {
            return Err(Error::Config(format!(
                "colony_size {} gives {} food sources; at least 2 are required",
                self.colony_size,
                self.food_count()
            )));
        }
        if self.dim == 0 {
            return Err(Error::Config("dim must be at least 1".into()));
        }
        if self.bounds.dim() != self.dim {
            return Err(Error::Config(format!(
                "bounds have {} dimensions but dim = {}",
                self.bounds.dim(),
                self.dim
            )));
        }
        if self.max_iter == 0 {
            return Err(Error::Config("max_iter must be positive".into()));
        }
        if self.limit == 0 {
            return Err(Error::Config("limit must be positive".into()));
        }
        self.strategy.validate()
    }
}

/// Draws `food_count` sources uniformly inside the box and evaluates them.
pub fn init_population<F>(cfg: &ColonyConfig, rng: &mut RngStream, objective: &F) -> Result<Vec<FoodSource>>
where
    F: Fn(&[f64]) -> f64 + ?Sized,
{
    (0..cfg.food_count())
        .map(|_| {
            let x = cfg.bounds.sample(rng);
            let f = objective(&x);
            if !f.is_finite() {
                return Err(Error::NonFiniteObjective { value: f, iter: 0 });
            }
            FoodSource::new(x, f)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn src(f: f64, trial: usize) -> FoodSource {
        FoodSource {
            trial,
            ..FoodSource::new(vec![0.0], f).unwrap()
        }
    }

    #[test]
    fn fitness_mapping_values() {
        assert_eq!(fitness_from_objective(0.0).unwrap(), 1.0);
        assert_eq!(fitness_from_objective(1.0).unwrap(), 0.5);
        assert_eq!(fitness_from_objective(-2.0).unwrap(), 3.0);
        assert!(fitness_from_objective(f64::NAN).is_err());
        assert!(fitness_from_objective(f64::INFINITY).is_err());
    }

    #[test]
    fn probability_values() {
        assert_eq!(selection_probability(&[1.0; 4]).unwrap(), vec![0.25; 4]);
        assert_eq!(selection_probability(&[3.0, 1.0]).unwrap(), vec![0.75, 0.25]);
        assert_eq!(selection_probability(&[5.0]).unwrap(), vec![1.0]);
        assert!(selection_probability(&[]).is_err());
        assert!(selection_probability(&[1.0, 0.0]).is_err());
        assert!(selection_probability(&[1.0, -1.0]).is_err());
    }

    #[test]
    fn clamp_examples() {
        let b = Bounds::uniform(2, -100.0, 100.0).unwrap();
        assert_eq!(clamp_to_bounds(&[0.0, 0.0], &b), vec![0.0, 0.0]);
        assert_eq!(clamp_to_bounds(&[-101.0, 42.0], &b), vec![-100.0, 42.0]);
        let b1 = Bounds::uniform(1, -100.0, 100.0).unwrap();
        assert_eq!(clamp_to_bounds(&[150.0], &b1), vec![100.0]);
    }

    #[test]
    fn bounds_reject_degenerate() {
        assert!(Bounds::uniform(1, 1.0, 1.0).is_err());
        assert!(Bounds::uniform(0, -1.0, 1.0).is_err());
        assert!(Bounds::new(vec![0.0], vec![1.0, 2.0]).is_err());
        assert!(Bounds::new(vec![f64::NEG_INFINITY], vec![1.0]).is_err());
    }

    #[test]
    fn greedy_examples() {
        let kept = greedy_replace(src(5.0, 4), vec![1.0], 3.0).unwrap();
        assert_eq!((kept.objective, kept.trial, kept.position.clone()), (3.0, 0, vec![1.0]));

        let tie = greedy_replace(src(5.0, 0), vec![1.0], 5.0).unwrap();
        assert_eq!((tie.objective, tie.trial, tie.position.clone()), (5.0, 1, vec![0.0]));

        let worse = greedy_replace(src(5.0, 7), vec![1.0], 9.0).unwrap();
        assert_eq!((worse.objective, worse.trial), (5.0, 8));
    }

    #[test]
    fn init_population_examples() {
        let cfg = ColonyConfig::new(20, Bounds::uniform(60, -100.0, 100.0).unwrap(), 10, 5, 3);
        let sphere = |x: &[f64]| x.iter().map(|v| v * v).sum::<f64>();
        let a = init_population(&cfg, &mut RngStream::new(cfg.seed), &sphere).unwrap();
        let b = init_population(&cfg, &mut RngStream::new(cfg.seed), &sphere).unwrap();
        assert_eq!(a.len(), 10);
        assert!(a.iter().all(|s| cfg.bounds.contains(&s.position) && s.trial == 0));
        assert_eq!(a, b);

        let small = ColonyConfig::new(8, Bounds::uniform(1, -1.0, 1.0).unwrap(), 10, 5, 3);
        let pop = init_population(&small, &mut RngStream::new(0), &sphere).unwrap();
        assert!(pop.iter().all(|s| (-1.0..=1.0).contains(&s.position[0])));
    }

    #[test]
    fn config_validation() {
        let b = Bounds::uniform(2, -1.0, 1.0).unwrap();
        assert!(ColonyConfig::new(4, b.clone(), 10, 5, 0).validate().is_ok());
        assert!(ColonyConfig::new(3, b.clone(), 10, 5, 0).validate().is_err());
        assert!(ColonyConfig::new(4, b.clone(), 0, 5, 0).validate().is_err());
        let mut c = ColonyConfig::new(4, b, 10, 5, 0);
        c.dim = 3;
        assert!(c.validate().is_err());
    }
}
