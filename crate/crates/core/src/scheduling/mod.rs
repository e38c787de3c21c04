//! Twin-ETV task-set scheduling driven by random keys.
//!
//! A continuous key vector is decoded into a task order by ascending argsort.
//! Each task is served through its nearest compatible port (inbound tasks
//! enter through an entrance, outbound tasks leave through an exit) by one of
//! two elevating transfer vehicles sharing a rail: ETV1 owns the columns up
//! to the zone split, ETV2 the rest. The simulator turns the order into timed
//! trajectories in which ETV1 always stays at least `margin` columns below
//! ETV2, and the makespan is the optimization objective.

mod dataset;
mod simulate;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::population::Bounds;

pub use dataset::{builtin_dataset, Dataset, BUILTIN_DATASET_TOML};
pub use simulate::{simulate, verify_non_crossing, Move, MoveKind, Schedule};

/// Rack coordinate `(row, layer, column)`. Rows are the two shelf faces of
/// the shared rail and carry no travel cost.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CellPosition {
    pub row: u32,
    pub layer: u32,
    pub column: u32,
}

impl CellPosition {
    pub const fn new(row: u32, layer: u32, column: u32) -> Self {
        Self { row, layer, column }
    }
}

impl std::fmt::Display for CellPosition {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}-{}-{}", self.row, self.layer, self.column)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TaskKind {
    Inbound,
    Outbound,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Task {
    pub id: u32,
    pub kind: TaskKind,
    pub cell: CellPosition,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PortKind {
    Entrance,
    Exit,
}

impl PortKind {
    pub fn serves(self, task: TaskKind) -> bool {
        matches!(
            (self, task),
            (PortKind::Entrance, TaskKind::Inbound) | (PortKind::Exit, TaskKind::Outbound)
        )
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Airside,
    Landside,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Port {
    pub id: String,
    pub kind: PortKind,
    pub cell: CellPosition,
    pub side: Side,
}

/// Vehicle timing. Column and layer axes move simultaneously.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct KinematicsModel {
    /// Seconds per column step.
    pub t_col: f64,
    /// Seconds per layer step.
    pub t_layer: f64,
    /// Seconds per pick or place.
    pub t_handle: f64,
}

impl Default for KinematicsModel {
    fn default() -> Self {
        Self {
            t_col: 1.0,
            t_layer: 2.0,
            t_handle: 10.0,
        }
    }
}

impl KinematicsModel {
    pub fn validate(&self) -> Result<()> {
        for (name, v) in [("t_col", self.t_col), ("t_layer", self.t_layer), ("t_handle", self.t_handle)] {
            if !(v > 0.0 && v.is_finite()) {
                return Err(Error::Config(format!("{name} must be positive, got {v}")));
            }
        }
        Ok(())
    }
}

/// Simulation settings besides the kinematics.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SimulationConfig {
    pub kinematics: KinematicsModel,
    /// Minimum column gap between ETV1 and ETV2.
    pub margin: u32,
    /// Tasks at columns `<= zone_split` go to ETV1.
    pub zone_split: u32,
    /// Objective value reported for infeasible schedules.
    pub penalty: f64,
}

impl Default for SimulationConfig {
    fn default() -> Self {
        Self {
            kinematics: KinematicsModel::default(),
            margin: 1,
            zone_split: 30,
            penalty: 1e9,
        }
    }
}

/// `max(|d column| t_col, |d layer| t_layer)`.
pub fn travel_time(a: CellPosition, b: CellPosition, k: &KinematicsModel) -> f64 {
    let dc = a.column.abs_diff(b.column) as f64 * k.t_col;
    let dl = a.layer.abs_diff(b.layer) as f64 * k.t_layer;
    dc.max(dl)
}

/// 1-based task positions ordered by ascending key; ties keep the lower
/// position first.
pub fn decode_random_keys(keys: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    order.sort_by(|a, b| keys[*a].total_cmp(&keys[*b]));
    order.into_iter().map(|i| i + 1).collect()
}

/// Nearest compatible port by travel time; ties go to the port listed first.
pub fn assign_port<'a>(task: &Task, ports: &'a [Port], k: &KinematicsModel) -> Result<&'a Port> {
    ports
        .iter()
        .filter(|p| p.kind.serves(task.kind))
        .fold(None, |best: Option<(&Port, f64)>, p| {
            let t = travel_time(p.cell, task.cell, k);
            match best {
                Some((_, bt)) if bt <= t => best,
                _ => Some((p, t)),
            }
        })
        .map(|(p, _)| p)
        .ok_or_else(|| Error::Config(format!("no compatible port for {:?} task {}", task.kind, task.id)))
}

/// Which vehicle serves a task.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Etv {
    #[serde(rename = "1")]
    One,
    #[serde(rename = "2")]
    Two,
}

impl Etv {
    pub fn number(self) -> u8 {
        match self {
            Etv::One => 1,
            Etv::Two => 2,
        }
    }
}

/// Zone dispatch over `sequence` (task ids). Each vehicle keeps the sequence
/// order of its own tasks.
pub fn assign_etvs(sequence: &[u32], tasks: &[Task], zone_split: u32) -> Result<Vec<(u32, Etv)>> {
    sequence
        .iter()
        .map(|id| {
            let task = tasks
                .iter()
                .find(|t| t.id == *id)
                .ok_or_else(|| Error::Dataset(format!("sequence references unknown task {id}")))?;
            let etv = if task.cell.column <= zone_split { Etv::One } else { Etv::Two };
            Ok((*id, etv))
        })
        .collect()
}

/// The scheduling problem as a colony objective: keys in `[-10, 10]^n` map
/// to the makespan of the decoded sequence.
#[derive(Clone, Debug)]
pub struct SchedulingProblem {
    pub dataset: Dataset,
    pub config: SimulationConfig,
}

impl SchedulingProblem {
    pub const KEY_RANGE: (f64, f64) = (-10.0, 10.0);

    pub fn new(dataset: Dataset, config: SimulationConfig) -> Result<Self> {
        config.kinematics.validate()?;
        dataset.validate()?;
        for t in &dataset.tasks {
            assign_port(t, &dataset.ports, &config.kinematics)?;
        }
        Ok(Self { dataset, config })
    }

    pub fn builtin() -> Self {
        Self::new(builtin_dataset(), SimulationConfig::default()).expect("built-in dataset is valid")
    }

    pub fn dim(&self) -> usize {
        self.dataset.tasks.len()
    }

    pub fn bounds(&self) -> Bounds {
        Bounds::uniform(self.dim(), Self::KEY_RANGE.0, Self::KEY_RANGE.1).expect("non-empty dataset")
    }

    /// Task ids in decoded order.
    pub fn sequence_from_keys(&self, keys: &[f64]) -> Vec<u32> {
        decode_random_keys(keys)
            .into_iter()
            .map(|pos| self.dataset.tasks[pos - 1].id)
            .collect()
    }

    pub fn schedule(&self, keys: &[f64]) -> Result<Schedule> {
        if keys.len() != self.dim() {
            return Err(Error::Domain(format!(
                "expected {} keys, got {}",
                self.dim(),
                keys.len()
            )));
        }
        simulate(&self.sequence_from_keys(keys), &self.dataset, &self.config)
    }

    /// Makespan of the decoded schedule, or the configured penalty when the
    /// simulation cannot resolve a conflict.
    pub fn objective_from_keys(&self, keys: &[f64]) -> f64 {
        match self.schedule(keys) {
            Ok(s) => s.makespan,
            Err(Error::Infeasible { penalty, .. }) => penalty,
            Err(_) => self.config.penalty,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn decode_examples() {
        assert_eq!(decode_random_keys(&[-10.0, 0.0, 10.0]), vec![1, 2, 3]);
        assert_eq!(decode_random_keys(&[3.2, -5.1, 0.0]), vec![2, 3, 1]);
        assert_eq!(decode_random_keys(&[7.0, 7.0, 1.0]), vec![3, 1, 2]);
        assert!(decode_random_keys(&[]).is_empty());
    }

    #[test]
    fn travel_time_examples() {
        let k = KinematicsModel { t_col: 1.0, t_layer: 2.0, t_handle: 10.0 };
        let a = CellPosition::new(1, 1, 5);
        let b = CellPosition::new(1, 5, 10);
        assert_eq!(travel_time(a, b, &k), 8.0);
        assert_eq!(travel_time(b, a, &k), 8.0);
        assert_eq!(travel_time(a, a, &k), 0.0);
        // Rows are free.
        assert_eq!(travel_time(CellPosition::new(1, 3, 7), CellPosition::new(2, 3, 7), &k), 0.0);
    }

    #[test]
    fn port_assignment_is_nearest_entrance() {
        let ds = builtin_dataset();
        let k = KinematicsModel::default();
        let task = Task { id: 99, kind: TaskKind::Inbound, cell: CellPosition::new(1, 5, 10) };
        // Oracle: exhaustive scan, first minimum wins.
        let mut best: Option<(&Port, f64)> = None;
        for p in ds.ports.iter().filter(|p| p.kind == PortKind::Entrance) {
            let t = (p.cell.column.abs_diff(10) as f64).max(p.cell.layer.abs_diff(5) as f64 * 2.0);
            if best.is_none_or(|(_, bt)| t < bt) {
                best = Some((p, t));
            }
        }
        assert_eq!(assign_port(&task, &ds.ports, &k).unwrap().id, best.unwrap().0.id);
        assert_eq!(best.unwrap().0.id, "R1");

        for t in ds.tasks.iter().filter(|t| t.kind == TaskKind::Outbound) {
            assert_eq!(assign_port(t, &ds.ports, &k).unwrap().kind, PortKind::Exit);
        }
        let at_port = Task { id: 98, kind: TaskKind::Outbound, cell: CellPosition::new(2, 1, 48) };
        assert_eq!(assign_port(&at_port, &ds.ports, &k).unwrap().id, "C5");

        let entrances_only: Vec<Port> = ds.ports.iter().filter(|p| p.kind == PortKind::Entrance).cloned().collect();
        let out = Task { id: 97, kind: TaskKind::Outbound, cell: CellPosition::new(1, 1, 1) };
        assert!(matches!(assign_port(&out, &entrances_only, &k), Err(Error::Config(_))));
    }

    #[test]
    fn zone_dispatch() {
        let tasks = [
            Task { id: 1, kind: TaskKind::Inbound, cell: CellPosition::new(1, 1, 5) },
            Task { id: 2, kind: TaskKind::Inbound, cell: CellPosition::new(1, 1, 58) },
            Task { id: 3, kind: TaskKind::Outbound, cell: CellPosition::new(1, 1, 30) },
        ];
        let a = assign_etvs(&[2, 3, 1], &tasks, 30).unwrap();
        assert_eq!(a, vec![(2, Etv::Two), (3, Etv::One), (1, Etv::One)]);
        assert!(assign_etvs(&[4], &tasks, 30).is_err());
    }

    #[test]
    fn objective_is_pure_and_positive() {
        let problem = SchedulingProblem::builtin();
        let mut rng = crate::rng::RngStream::new(3);
        for _ in 0..20 {
            let keys = problem.bounds().sample(&mut rng);
            let a = problem.objective_from_keys(&keys);
            assert_eq!(a, problem.objective_from_keys(&keys));
            assert!(a > 0.0 && a < problem.config.penalty);
        }
        assert!(matches!(problem.schedule(&[0.0; 3]), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn decode_is_permutation_and_argsort_invariant(keys in proptest::collection::vec(-10.0f64..10.0, 1..80)) {
            let perm = decode_random_keys(&keys);
            let mut sorted = perm.clone();
            sorted.sort_unstable();
            prop_assert_eq!(sorted, (1..=keys.len()).collect::<Vec<_>>());
            let doubled: Vec<f64> = keys.iter().map(|k| 2.0 * k).collect();
            let halved: Vec<f64> = keys.iter().map(|k| 0.5 * k).collect();
            prop_assert_eq!(decode_random_keys(&doubled), perm.clone());
            prop_assert_eq!(decode_random_keys(&halved), perm);
        }
    }
}
