//! The seven benchmark objectives and their registry.
//!
//! All functions are minimized over `[-100, 100]^D` and have a minimum value
//! of 0. `f3` is a two-argument function; at higher dimensions it reads the
//! first two coordinates and ignores the rest.

use std::f64::consts::PI;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::population::Bounds;

/// Bent cigar: `x1^2 + 1e6 * sum_{i>=2} x_i^2`.
pub fn f1_bent_cigar(x: &[f64]) -> f64 {
    x[0] * x[0] + 1e6 * x[1..].iter().map(|v| v * v).sum::<f64>()
}

/// Rastrigin: `sum(x_i^2 - 10 cos(2 pi x_i) + 10)`.
pub fn f2_rastrigin(x: &[f64]) -> f64 {
    x.iter()
        .map(|v| v * v - 10.0 * (2.0 * PI * v).cos() + 10.0)
        .sum()
}

/// Schaffer F6 on `(x1, x2)`.
pub fn f3_schaffer(x: &[f64]) -> f64 {
    let r2 = x[0] * x[0] + x[1] * x[1];
    let s = r2.sqrt().sin();
    let d = 1.0 + 0.001 * r2;
    0.5 + (s * s - 0.5) / (d * d)
}

/// Shifted quadratic: `sum((x_i + 0.5)^2)`.
pub fn f4_shifted_quadratic(x: &[f64]) -> f64 {
    x.iter().map(|v| (v + 0.5) * (v + 0.5)).sum()
}

/// Step function `sum(floor(x_i + 0.5)^2)`, the other common reading of `f4`.
/// Not registered.
pub fn f4_step(x: &[f64]) -> f64 {
    x.iter().map(|v| (v + 0.5).floor().powi(2)).sum()
}

/// Discus: `1e6 * x1^2 + sum_{i>=2} x_i^2`.
pub fn f5_discus(x: &[f64]) -> f64 {
    1e6 * x[0] * x[0] + x[1..].iter().map(|v| v * v).sum::<f64>()
}

/// Griewank: `sum(x_i^2) / 4000 - prod(cos(x_i / sqrt(i))) + 1`.
pub fn f6_griewank(x: &[f64]) -> f64 {
    let mut sum = 0.0;
    let mut prod = 1.0;
    for (i, v) in x.iter().enumerate() {
        sum += v * v;
        prod *= (v / ((i + 1) as f64).sqrt()).cos();
    }
    sum / 4000.0 - prod + 1.0
}

/// HappyCat: `|sum(x_i^2) - D|^(1/4) + (0.5 sum(x_i^2) + sum(x_i)) / D + 0.5`.
pub fn f7_happycat(x: &[f64]) -> f64 {
    let d = x.len() as f64;
    let r2: f64 = x.iter().map(|v| v * v).sum();
    let s: f64 = x.iter().sum();
    (r2 - d).abs().powf(0.25) + (0.5 * r2 + s) / d + 0.5
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Modality {
    Unimodal,
    Multimodal,
    Hybrid,
}

/// Registry entry for one benchmark.
#[derive(Clone, Copy)]
pub struct BenchmarkFunction {
    pub id: &'static str,
    pub name: &'static str,
    pub modality: Modality,
    pub lower: f64,
    pub upper: f64,
    pub known_minimum_value: f64,
    /// Value shared by every coordinate of the known minimizer.
    pub minimizer_coordinate: f64,
    /// Smallest dimension the formula accepts.
    pub min_dim: usize,
    func: fn(&[f64]) -> f64,
}

impl fmt::Debug for BenchmarkFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("BenchmarkFunction")
            .field("id", &self.id)
            .field("name", &self.name)
            .field("modality", &self.modality)
            .finish_non_exhaustive()
    }
}

impl BenchmarkFunction {
    pub fn check_dim(&self, dim: usize) -> Result<()> {
        if dim < self.min_dim {
            return Err(Error::Domain(format!(
                "{} ({}) needs dim >= {}, got {dim}",
                self.id, self.name, self.min_dim
            )));
        }
        Ok(())
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x.len())?;
        Ok((self.func)(x))
    }

    /// Evaluates without the dimension check. Panics on vectors shorter than
    /// `min_dim`.
    pub fn evaluate_unchecked(&self, x: &[f64]) -> f64 {
        (self.func)(x)
    }

    /// The raw function pointer, for use as a colony objective.
    pub fn func(&self) -> fn(&[f64]) -> f64 {
        self.func
    }

    pub fn bounds(&self, dim: usize) -> Result<Bounds> {
        self.check_dim(dim)?;
        Bounds::uniform(dim, self.lower, self.upper)
    }

    pub fn known_minimizer(&self, dim: usize) -> Vec<f64> {
        vec![self.minimizer_coordinate; dim]
    }
}

const fn entry(
    id: &'static str,
    name: &'static str,
    modality: Modality,
    minimizer_coordinate: f64,
    min_dim: usize,
    func: fn(&[f64]) -> f64,
) -> BenchmarkFunction {
    BenchmarkFunction {
        id,
        name,
        modality,
        lower: -100.0,
        upper: 100.0,
        known_minimum_value: 0.0,
        minimizer_coordinate,
        min_dim,
        func,
    }
}

static REGISTRY: [BenchmarkFunction; 7] = [
    entry("f1", "bent cigar", Modality::Unimodal, 0.0, 2, f1_bent_cigar),
    entry("f2", "rastrigin", Modality::Multimodal, 0.0, 1, f2_rastrigin),
    entry("f3", "schaffer", Modality::Multimodal, 0.0, 2, f3_schaffer),
    entry("f4", "shifted quadratic", Modality::Unimodal, -0.5, 1, f4_shifted_quadratic),
    entry("f5", "discus", Modality::Hybrid, 0.0, 2, f5_discus),
    entry("f6", "griewank", Modality::Hybrid, 0.0, 1, f6_griewank),
    entry("f7", "happycat", Modality::Hybrid, -1.0, 1, f7_happycat),
];

pub fn registry() -> &'static [BenchmarkFunction] {
    &REGISTRY
}

pub fn registry_lookup(id: &str) -> Result<&'static BenchmarkFunction> {
    REGISTRY
        .iter()
        .find(|f| f.id.eq_ignore_ascii_case(id.trim()))
        .ok_or_else(|| Error::Lookup {
            kind: "function",
            name: id.to_string(),
            valid: REGISTRY.iter().map(|f| f.id).collect::<Vec<_>>().join(", "),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::RngStream;
    use approx::assert_abs_diff_eq;

    #[test]
    fn minimizers_reach_zero() {
        for f in registry() {
            for dim in [2, 10, 60] {
                let v = f.evaluate(&f.known_minimizer(dim)).unwrap();
                assert!(v.abs() <= 1e-12, "{} at dim {dim}: {v}", f.id);
            }
        }
        assert_eq!(f6_griewank(&[0.0; 100]), 0.0);
    }

    #[test]
    fn hand_values() {
        assert_eq!(f1_bent_cigar(&[1.0, 1.0]), 1_000_001.0);
        let mut e1 = vec![0.0; 5];
        e1[0] = 1.0;
        assert_eq!(f1_bent_cigar(&e1), 1.0);
        assert_abs_diff_eq!(f2_rastrigin(&[1.0]), 1.0, epsilon = 1e-9);
        assert_abs_diff_eq!(f2_rastrigin(&[0.5]), 20.25, epsilon = 1e-9);
        // mpmath, 30 digits
        assert_abs_diff_eq!(f3_schaffer(&[PI / 2.0, 0.0]), 0.997_541_701_050_987_7, epsilon = 1e-9);
        assert_abs_diff_eq!(f4_shifted_quadratic(&[0.0; 4]), 1.0, epsilon = 1e-12);
        assert_abs_diff_eq!(f4_shifted_quadratic(&[0.5]), 1.0, epsilon = 1e-12);
        assert_eq!(f5_discus(&[1.0, 0.0]), 1e6);
        assert_eq!(f5_discus(&[0.0, 1.0]), 1.0);
        assert_abs_diff_eq!(f6_griewank(&[100.0]), 2.637_681_127_712_316, epsilon = 1e-9);
        assert_abs_diff_eq!(f7_happycat(&[0.0]), 1.5, epsilon = 1e-12);
        assert_abs_diff_eq!(f7_happycat(&[1.0]), 2.0, epsilon = 1e-12);
    }

    #[test]
    fn schaffer_range_and_extra_coordinates() {
        let mut rng = RngStream::new(4);
        for _ in 0..10_000 {
            let x = [rng.uniform(-100.0, 100.0), rng.uniform(-100.0, 100.0)];
            let v = f3_schaffer(&x);
            assert!((0.0..=1.0).contains(&v));
            assert_eq!(f3_schaffer(&[x[0], x[1], 55.0, -3.0]), v);
        }
    }

    #[test]
    fn step_variant_plateaus() {
        assert_eq!(f4_step(&[-0.5, 0.2, 0.49]), 0.0);
        assert_eq!(f4_step(&[0.5]), 1.0);
        assert!(registry_lookup("f4").unwrap().evaluate(&[0.2]).unwrap() > 0.0);
    }

    #[test]
    fn non_negative_on_box() {
        let mut rng = RngStream::new(8);
        for f in registry() {
            let b = f.bounds(10).unwrap();
            for _ in 0..100_000 / 7 {
                let v = f.evaluate_unchecked(&b.sample(&mut rng));
                assert!(v.is_finite() && v >= 0.0, "{} -> {v}", f.id);
            }
        }
        let b = Bounds::uniform(10, -100.0, 100.0).unwrap();
        for _ in 0..100_000 {
            assert!(f7_happycat(&b.sample(&mut rng)) >= 0.0);
        }
    }

    #[test]
    fn dimension_errors() {
        assert!(registry_lookup("f1").unwrap().evaluate(&[1.0]).is_err());
        assert!(registry_lookup("f5").unwrap().evaluate(&[1.0]).is_err());
        assert!(registry_lookup("f3").unwrap().evaluate(&[1.0]).is_err());
        assert!(registry_lookup("f2").unwrap().evaluate(&[1.0]).is_ok());
    }

    #[test]
    fn registry_round_trip() {
        let f2 = registry_lookup("f2").unwrap();
        assert_eq!(f2.name, "rastrigin");
        assert_eq!((f2.lower, f2.upper), (-100.0, 100.0));
        assert!(matches!(registry_lookup("f9"), Err(Error::Lookup { .. })));
        for f in registry() {
            assert_eq!(registry_lookup(f.id).unwrap().id, f.id);
        }
    }
}
