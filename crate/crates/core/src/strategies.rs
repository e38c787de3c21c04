//! The five neighbourhood search operators and the Levy-flight sampler they
//! share.
//!
//! | id | role      | update of component `k`                                          |
//! |----|-----------|------------------------------------------------------------------|
//! | A  | employed  | `x_ik + phi (x_ik - x_jk)`                                       |
//! | B  | employed  | `x_ik + phi (x_ik - levy(x_jk))`                                 |
//! | C  | employed  | `levy(x_ik)`                                                     |
//! | D  | onlooker  | `x_ik + phi (x_ik - x_jk) / (iter w2)`                           |
//! | E  | onlooker  | `x_ik + phi1 (x_ik - x_jk) + phi2 (g_k - x_jk) w3`               |
//!
//! `phi` is uniform on `[-1, 1)`, `levy(x) = x + step_control * L` with `L` a
//! Mantegna draw, and `g` is the best position found so far. Every operator
//! rewrites a single component and clamps it into the search box.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::population::Bounds;
use crate::rng::RngStream;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum StrategyId {
    A,
    B,
    C,
    D,
    E,
}

impl StrategyId {
    pub const ALL: [StrategyId; 5] = [Self::A, Self::B, Self::C, Self::D, Self::E];
    pub const EMPLOYED: [StrategyId; 3] = [Self::A, Self::B, Self::C];
    pub const ONLOOKER: [StrategyId; 2] = [Self::D, Self::E];

    pub fn is_employed(self) -> bool {
        matches!(self, Self::A | Self::B | Self::C)
    }

    pub fn index(self) -> usize {
        self as usize
    }
}

impl fmt::Display for StrategyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::A => "A",
            Self::B => "B",
            Self::C => "C",
            Self::D => "D",
            Self::E => "E",
        };
        f.write_str(s)
    }
}

impl FromStr for StrategyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(Self::A),
            "B" => Ok(Self::B),
            "C" => Ok(Self::C),
            "D" => Ok(Self::D),
            "E" => Ok(Self::E),
            _ => Err(Error::Lookup {
                kind: "strategy",
                name: s.to_string(),
                valid: "A, B, C, D, E".into(),
            }),
        }
    }
}

/// Tunable constants of the operators and of the weight adaptation.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyParams {
    /// Levy exponent, in `(0, 2)`.
    pub lambda: f64,
    /// Scale applied to each Levy draw.
    pub step_control: f64,
    /// Weight of the shrinking step of strategy D, in `(0, 1]`.
    pub w2: f64,
    /// Step adjustment factor of the gbest term of strategy E.
    pub w3: f64,
    /// Bonus added to a strategy weight on every award.
    pub w1_increment: f64,
    pub initial_weight: f64,
}

impl StrategyParams {
    /// Defaults scaled to the search box: `step_control` is 1% of the widest
    /// interval.
    pub fn for_bounds(bounds: &Bounds) -> Self {
        Self {
            lambda: 1.5,
            step_control: 0.01 * bounds.max_width(),
            w2: 0.5,
            w3: 1.0,
            w1_increment: 1.0,
            initial_weight: 1.0,
        }
    }

    pub fn validate(&self) -> Result<()> {
        levy_coefficient(self.lambda)?;
        if !(self.w2 > 0.0 && self.w2 <= 1.0) {
            return Err(Error::Config(format!("w2 must lie in (0, 1], got {}", self.w2)));
        }
        if !(self.w1_increment > 0.0) {
            return Err(Error::Config(format!("W1 must be positive, got {}", self.w1_increment)));
        }
        if !(self.step_control >= 0.0) || !self.step_control.is_finite() {
            return Err(Error::Config(format!(
                "step_control must be finite and non-negative, got {}",
                self.step_control
            )));
        }
        if !self.w3.is_finite() {
            return Err(Error::Config(format!("w3 must be finite, got {}", self.w3)));
        }
        if !(self.initial_weight > 0.0) {
            return Err(Error::Config(format!(
                "initial weight must be positive, got {}",
                self.initial_weight
            )));
        }
        Ok(())
    }
}

/// Adaptive selection weights `a1, b1, c1` (employed pool) and `d1, e1`
/// (onlooker pool), indexed by [`StrategyId`].
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct StrategyWeights(pub [f64; 5]);

impl StrategyWeights {
    pub fn uniform(initial: f64) -> Self {
        Self([initial; 5])
    }

    pub fn get(&self, id: StrategyId) -> f64 {
        self.0[id.index()]
    }

    pub fn award(&mut self, id: StrategyId, increment: f64) {
        self.0[id.index()] += increment;
    }
}

/// Source of the random coefficients consumed by the operators. The colony
/// uses [`RngStream`]; tests substitute scripted values.
pub trait Coefficients {
    /// A `rand(-1, 1)` draw.
    fn symmetric(&mut self) -> f64;
    /// One Levy step for exponent `lambda`.
    fn levy_step(&mut self, lambda: f64) -> f64;
}

impl Coefficients for RngStream {
    fn symmetric(&mut self) -> f64 {
        RngStream::symmetric(self)
    }

    fn levy_step(&mut self, lambda: f64) -> f64 {
        levy_step(lambda, self)
    }
}

/// Mantegna's scale
/// `sigma = |G(1+l) sin(pi l / 2) / (G((1+l)/2) l 2^((l-1)/2))|^(1/l)`.
///
/// Defined for `lambda` in `(0, 2)`. At `lambda = 2` the sine vanishes and
/// the scale collapses to zero, so that endpoint is rejected.
pub fn levy_coefficient(lambda: f64) -> Result<f64> {
    if !(lambda > 0.0 && lambda < 2.0) {
        return Err(Error::Domain(format!("Levy exponent must lie in (0, 2), got {lambda}")));
    }
    let num = libm::tgamma(1.0 + lambda) * (std::f64::consts::PI * lambda / 2.0).sin();
    let den = libm::tgamma((1.0 + lambda) / 2.0) * lambda * 2f64.powf((lambda - 1.0) / 2.0);
    Ok((num / den).abs().powf(1.0 / lambda))
}

/// One Mantegna draw `u / |v|^(1/lambda)` with `u ~ N(0, sigma^2)` and
/// `v ~ N(0, 1)`. A zero `v` is redrawn.
///
/// Panics if `lambda` is outside `(0, 2)`; validated configurations never are.
pub fn levy_step(lambda: f64, rng: &mut RngStream) -> f64 {
    let sigma = levy_coefficient(lambda).expect("Levy exponent validated by StrategyParams");
    let u = sigma * rng.standard_normal();
    let mut v = rng.standard_normal();
    while v == 0.0 {
        v = rng.standard_normal();
    }
    u / v.abs().powf(1.0 / lambda)
}

/// `x + step_control * L(lambda)`.
pub fn levy_perturb<C: Coefficients + ?Sized>(x: f64, params: &StrategyParams, draws: &mut C) -> f64 {
    x + params.step_control * draws.levy_step(params.lambda)
}

fn with_component(x: &[f64], k: usize, value: f64, bounds: &Bounds) -> Vec<f64> {
    let mut out = x.to_vec();
    out[k] = bounds.clamp_component(k, value);
    out
}

/// Canonical ABC neighbourhood move.
pub fn strategy_a<C: Coefficients + ?Sized>(
    x_m: &[f64],
    x_n: &[f64],
    k: usize,
    bounds: &Bounds,
    draws: &mut C,
) -> Vec<f64> {
    let phi = draws.symmetric();
    with_component(x_m, k, x_m[k] + phi * (x_m[k] - x_n[k]), bounds)
}

/// Neighbourhood move towards a Levy-perturbed companion.
pub fn strategy_b<C: Coefficients + ?Sized>(
    x_i: &[f64],
    x_j: &[f64],
    k: usize,
    bounds: &Bounds,
    params: &StrategyParams,
    draws: &mut C,
) -> Vec<f64> {
    let phi = draws.symmetric();
    let companion = levy_perturb(x_j[k], params, draws);
    with_component(x_i, k, x_i[k] + phi * (x_i[k] - companion), bounds)
}

/// Pure Levy walk of a single component.
pub fn strategy_c<C: Coefficients + ?Sized>(
    x: &[f64],
    k: usize,
    bounds: &Bounds,
    params: &StrategyParams,
    draws: &mut C,
) -> Vec<f64> {
    with_component(x, k, levy_perturb(x[k], params, draws), bounds)
}

/// Neighbourhood move whose step shrinks as `1 / (iter * w2)`.
pub fn strategy_d<C: Coefficients + ?Sized>(
    x_i: &[f64],
    x_j: &[f64],
    k: usize,
    iter: usize,
    bounds: &Bounds,
    params: &StrategyParams,
    draws: &mut C,
) -> Vec<f64> {
    assert!(iter >= 1, "strategy D needs iter >= 1");
    let phi = draws.symmetric();
    let scale = 1.0 / (iter as f64 * params.w2);
    with_component(x_i, k, x_i[k] + phi * (x_i[k] - x_j[k]) * scale, bounds)
}

/// Neighbourhood move with an extra pull along `gbest - x_j`.
pub fn strategy_e<C: Coefficients + ?Sized>(
    x_i: &[f64],
    x_j: &[f64],
    k: usize,
    gbest: &[f64],
    bounds: &Bounds,
    params: &StrategyParams,
    draws: &mut C,
) -> Vec<f64> {
    let phi1 = draws.symmetric();
    let phi2 = draws.symmetric();
    let value = x_i[k] + phi1 * (x_i[k] - x_j[k]) + phi2 * (gbest[k] - x_j[k]) * params.w3;
    with_component(x_i, k, value, bounds)
}

/// Everything an operator may read besides the two parents.
#[derive(Clone, Copy, Debug)]
pub struct SearchContext<'a> {
    pub bounds: &'a Bounds,
    pub params: &'a StrategyParams,
    pub gbest: &'a [f64],
    /// 1-based iteration counter.
    pub iter: usize,
}

/// Builds the candidate of `strategy` for source `x_m` with companion `x_j`
/// on dimension `k`. Strategy C walks `x_m` itself and ignores the companion.
pub fn generate<C: Coefficients + ?Sized>(
    strategy: StrategyId,
    x_m: &[f64],
    x_j: &[f64],
    k: usize,
    ctx: &SearchContext<'_>,
    draws: &mut C,
) -> Vec<f64> {
    match strategy {
        StrategyId::A => strategy_a(x_m, x_j, k, ctx.bounds, draws),
        StrategyId::B => strategy_b(x_m, x_j, k, ctx.bounds, ctx.params, draws),
        StrategyId::C => strategy_c(x_m, k, ctx.bounds, ctx.params, draws),
        StrategyId::D => strategy_d(x_m, x_j, k, ctx.iter, ctx.bounds, ctx.params, draws),
        StrategyId::E => strategy_e(x_m, x_j, k, ctx.gbest, ctx.bounds, ctx.params, draws),
    }
}

#[cfg(test)]
pub(crate) mod scripted {
    use std::collections::VecDeque;

    use super::Coefficients;

    /// Replays fixed coefficient values; panics when a queue runs dry.
    #[derive(Default)]
    pub struct Scripted {
        pub symmetric: VecDeque<f64>,
        pub levy: VecDeque<f64>,
    }

    impl Scripted {
        pub fn new(symmetric: &[f64], levy: &[f64]) -> Self {
            Self {
                symmetric: symmetric.iter().copied().collect(),
                levy: levy.iter().copied().collect(),
            }
        }
    }

    impl Coefficients for Scripted {
        fn symmetric(&mut self) -> f64 {
            self.symmetric.pop_front().expect("scripted symmetric draw")
        }

        fn levy_step(&mut self, _lambda: f64) -> f64 {
            self.levy.pop_front().expect("scripted levy draw")
        }
    }
}
