//! Timed twin-vehicle simulation.
//!
//! Each task expands into four legs: empty travel to the pickup, pick, loaded
//! travel to the drop, place. Inbound tasks pick at their entrance and place
//! at their cell; outbound tasks pick at their cell and place at their exit.
//!
//! Legs are planned one at a time for whichever vehicle is ready first. A leg
//! reserves the column span it sweeps for its whole duration, and two
//! reservations are compatible when ETV1's highest column plus the margin
//! does not exceed ETV2's lowest column. A leg that would clash with a
//! committed move of the other vehicle waits for that move to end. A leg that
//! would clash with the other vehicle parked after its last committed move
//! first pushes it away (an evasion move towards its own end of the rail).
//! Evasion only ever increases the gap, so committed moves stay valid.

use std::collections::VecDeque;

use serde::{Deserialize, Serialize};

use super::{assign_etvs, assign_port, travel_time, CellPosition, Dataset, Etv, KinematicsModel, SimulationConfig, TaskKind};
use crate::error::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MoveKind {
    Wait,
    TravelEmpty,
    Pick,
    TravelLoaded,
    Place,
    Evade,
}

impl MoveKind {
    fn is_travel(self) -> bool {
        matches!(self, Self::TravelEmpty | Self::TravelLoaded | Self::Evade)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Move {
    pub start: f64,
    pub end: f64,
    pub from: CellPosition,
    pub to: CellPosition,
    pub kind: MoveKind,
    pub task: Option<u32>,
}

impl Move {
    fn span(&self) -> (u32, u32) {
        (self.from.column.min(self.to.column), self.from.column.max(self.to.column))
    }

    /// Column at time `t` (clamped to the move's interval). The column axis
    /// runs at `1 / t_col` columns per second and then holds.
    pub fn column_at(&self, t: f64, k: &KinematicsModel) -> f64 {
        let (a, b) = (self.from.column as f64, self.to.column as f64);
        if a == b {
            return a;
        }
        let elapsed = (t - self.start).clamp(0.0, self.end - self.start);
        let progress = (elapsed / k.t_col).min((b - a).abs());
        a + (b - a).signum() * progress
    }

    /// Instant at which the column axis reaches its target.
    fn column_arrival(&self, k: &KinematicsModel) -> f64 {
        self.start + self.from.column.abs_diff(self.to.column) as f64 * k.t_col
    }
}

/// A simulated schedule.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Schedule {
    /// Task ids in decoded order.
    pub sequence: Vec<u32>,
    /// `(task id, vehicle)` in sequence order.
    pub etv_assignment: Vec<(u32, Etv)>,
    /// `(task id, port id)` in sequence order.
    pub port_assignment: Vec<(u32, String)>,
    /// Starting positions of ETV1 and ETV2.
    pub start: [CellPosition; 2],
    /// Gap-free timelines of ETV1 and ETV2 starting at time 0.
    pub timelines: [Vec<Move>; 2],
    /// Time at which each vehicle finishes its last task.
    pub completion: [f64; 2],
    pub makespan: f64,
}

impl Schedule {
    /// Tasks grouped by port in `port_order`, each group in sequence order.
    /// Ports without tasks are kept with an empty list.
    pub fn port_allocation<'a>(&self, port_order: impl IntoIterator<Item = &'a str>) -> Vec<(String, Vec<u32>)> {
        port_order
            .into_iter()
            .map(|port| {
                let tasks = self
                    .port_assignment
                    .iter()
                    .filter(|(_, p)| p == port)
                    .map(|(t, _)| *t)
                    .collect();
                (port.to_string(), tasks)
            })
            .collect()
    }

    pub fn timeline(&self, etv: Etv) -> &[Move] {
        &self.timelines[etv as usize]
    }
}

struct Leg {
    kind: MoveKind,
    target: CellPosition,
    task: u32,
}

struct Vehicle {
    pos: CellPosition,
    ready: f64,
    timeline: Vec<Move>,
    legs: VecDeque<Leg>,
    completion: f64,
    /// First move of the other vehicle that may still overlap this one.
    cursor: usize,
}

impl Vehicle {
    fn new(pos: CellPosition) -> Self {
        Self {
            pos,
            ready: 0.0,
            timeline: Vec::new(),
            legs: VecDeque::new(),
            completion: 0.0,
            cursor: 0,
        }
    }

    fn push(&mut self, kind: MoveKind, start: f64, end: f64, to: CellPosition, task: Option<u32>) {
        self.timeline.push(Move {
            start,
            end,
            from: self.pos,
            to,
            kind,
            task,
        });
        self.pos = to;
        self.ready = end;
    }
}

/// `true` when a span of vehicle `who` cannot coexist with a span of the
/// other vehicle.
fn clash(who: usize, ours: (u32, u32), theirs: (u32, u32), margin: u32) -> bool {
    if who == 0 {
        ours.1 + margin > theirs.0
    } else {
        theirs.1 + margin > ours.0
    }
}

/// Simulates `sequence` (task ids) on `dataset`.
pub fn simulate(sequence: &[u32], dataset: &Dataset, cfg: &SimulationConfig) -> Result<Schedule> {
    let k = &cfg.kinematics;
    let rail_max = dataset.max_column();
    let start = [CellPosition::new(1, 1, 1), CellPosition::new(1, 1, rail_max)];
    if 1 + cfg.margin > rail_max {
        return Err(infeasible(cfg, format!("rail of {rail_max} columns cannot hold two vehicles")));
    }

    let etv_assignment = assign_etvs(sequence, &dataset.tasks, cfg.zone_split)?;
    let mut port_assignment = Vec::with_capacity(sequence.len());
    let mut vehicles = [Vehicle::new(start[0]), Vehicle::new(start[1])];

    for &(id, etv) in &etv_assignment {
        let task = dataset.task(id).expect("assign_etvs checked ids");
        let port = assign_port(task, &dataset.ports, k)?;
        port_assignment.push((id, port.id.clone()));
        let (pickup, drop) = match task.kind {
            TaskKind::Inbound => (port.cell, task.cell),
            TaskKind::Outbound => (task.cell, port.cell),
        };
        let legs = &mut vehicles[etv as usize].legs;
        legs.push_back(Leg { kind: MoveKind::TravelEmpty, target: pickup, task: id });
        legs.push_back(Leg { kind: MoveKind::Pick, target: pickup, task: id });
        legs.push_back(Leg { kind: MoveKind::TravelLoaded, target: drop, task: id });
        legs.push_back(Leg { kind: MoveKind::Place, target: drop, task: id });
    }

    loop {
        let who = match (vehicles[0].legs.is_empty(), vehicles[1].legs.is_empty()) {
            (true, true) => break,
            (false, true) => 0,
            (true, false) => 1,
            (false, false) => usize::from(vehicles[1].ready < vehicles[0].ready),
        };
        let other = 1 - who;
        let leg = vehicles[who].legs.pop_front().expect("non-empty");
        let from = vehicles[who].pos;
        let to = if leg.kind.is_travel() { leg.target } else { from };
        let duration = if leg.kind.is_travel() { travel_time(from, to, k) } else { k.t_handle };
        if duration == 0.0 {
            continue;
        }
        let span = (from.column.min(to.column), from.column.max(to.column));

        let ready = vehicles[who].ready;
        {
            let (me, them) = pair_mut(&mut vehicles, who);
            while me.cursor < them.timeline.len() && them.timeline[me.cursor].end <= ready {
                me.cursor += 1;
            }
        }

        let mut s = ready;
        loop {
            let (me, them) = pair_mut(&mut vehicles, who);
            let blocked_until = them.timeline[me.cursor..]
                .iter()
                .take_while(|mv| mv.start < s + duration)
                .filter(|mv| mv.end > s && clash(who, span, mv.span(), cfg.margin))
                .map(|mv| mv.end)
                .fold(None, |acc: Option<f64>, e| Some(acc.map_or(e, |a| a.max(e))));
            if let Some(t) = blocked_until {
                s = t;
                continue;
            }
            let parked = (them.pos.column, them.pos.column);
            if them.ready < s + duration && clash(who, span, parked, cfg.margin) {
                let target = if who == 0 {
                    span.1 + cfg.margin
                } else {
                    match span.0.checked_sub(cfg.margin) {
                        Some(c) if c >= 1 => c,
                        _ => 0,
                    }
                };
                if target == 0 || target > rail_max {
                    return Err(infeasible(
                        cfg,
                        format!(
                            "ETV{} cannot clear columns {}..={} for task {}",
                            other + 1,
                            span.0,
                            span.1,
                            leg.task
                        ),
                    ));
                }
                let dest = CellPosition { column: target, ..them.pos };
                let t0 = them.ready;
                let t1 = t0 + them.pos.column.abs_diff(target) as f64 * k.t_col;
                them.push(MoveKind::Evade, t0, t1, dest, None);
                continue;
            }
            break;
        }

        let me = &mut vehicles[who];
        if s > me.ready {
            let (t0, pos) = (me.ready, me.pos);
            me.push(MoveKind::Wait, t0, s, pos, None);
        }
        me.push(leg.kind, s, s + duration, to, Some(leg.task));
        if leg.kind == MoveKind::Place {
            me.completion = me.ready;
        }
    }

    let completion = [vehicles[0].completion, vehicles[1].completion];
    let [v0, v1] = vehicles;
    Ok(Schedule {
        sequence: sequence.to_vec(),
        etv_assignment,
        port_assignment,
        start,
        timelines: [v0.timeline, v1.timeline],
        makespan: completion[0].max(completion[1]),
        completion,
    })
}

fn pair_mut(v: &mut [Vehicle; 2], who: usize) -> (&mut Vehicle, &mut Vehicle) {
    let (a, b) = v.split_at_mut(1);
    if who == 0 {
        (&mut a[0], &mut b[0])
    } else {
        (&mut b[0], &mut a[0])
    }
}

fn infeasible(cfg: &SimulationConfig, reason: String) -> Error {
    Error::Infeasible {
        reason,
        penalty: cfg.penalty,
    }
}

fn column_at(timeline: &[Move], start: CellPosition, t: f64, k: &KinematicsModel) -> f64 {
    let idx = timeline.partition_point(|mv| mv.end < t);
    match timeline.get(idx) {
        Some(mv) if mv.start <= t => mv.column_at(t, k),
        Some(_) if idx == 0 => start.column as f64,
        Some(_) => timeline[idx - 1].to.column as f64,
        None => timeline.last().map_or(start.column as f64, |mv| mv.to.column as f64),
    }
}

/// Checks `column(ETV1) + margin <= column(ETV2)` over the whole horizon.
///
/// Both column trajectories are piecewise linear with breakpoints at move
/// boundaries and column arrivals, so checking every breakpoint is exact.
/// Also checks that each timeline is time-ordered and gap-free.
pub fn verify_non_crossing(schedule: &Schedule, margin: u32, k: &KinematicsModel) -> std::result::Result<(), String> {
    let mut instants = vec![0.0];
    for (i, timeline) in schedule.timelines.iter().enumerate() {
        let mut clock = 0.0;
        let mut pos = schedule.start[i];
        for mv in timeline {
            if mv.start != clock || mv.end < mv.start || mv.from != pos {
                return Err(format!("ETV{} timeline is not contiguous at {:?}", i + 1, mv));
            }
            clock = mv.end;
            pos = mv.to;
            instants.extend([mv.start, mv.end, mv.column_arrival(k).min(mv.end)]);
        }
    }
    instants.sort_by(f64::total_cmp);
    instants.dedup();
    for t in instants {
        let c1 = column_at(&schedule.timelines[0], schedule.start[0], t, k);
        let c2 = column_at(&schedule.timelines[1], schedule.start[1], t, k);
        if c1 + margin as f64 > c2 + 1e-9 {
            return Err(format!("crossing at t={t}: ETV1 column {c1}, ETV2 column {c2}"));
        }
    }
    Ok(())
}
