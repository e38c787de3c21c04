//! CSV and JSON writers.
//!
//! | file | header |
//! |------|--------|
//! | summary | `algorithm,function,dim,trials,best_f,avg_f,std` |
//! | trials | `algorithm,function,dim,trial,seed,best_f,evaluations` |
//! | weight trace | `iter,a1,b1,c1,d1,e1` |
//! | search path | `iter,source,x1,x2` |
//!
//! Summary statistics use four significant digits (`1.235E-05`); per-trial
//! values and coordinates are written with round-trip precision.

use std::io::Write;

use serde::Serialize;

use super::{SummaryRow, TrialRecord};
use crate::colony::RunResult;
use crate::error::{Error, Result};
use crate::scheduling::{Dataset, Etv, Move, Schedule};

pub const SUMMARY_HEADER: &str = "algorithm,function,dim,trials,best_f,avg_f,std";
pub const TRIALS_HEADER: &str = "algorithm,function,dim,trial,seed,best_f,evaluations";
pub const WEIGHT_HEADER: &str = "iter,a1,b1,c1,d1,e1";
pub const PATH_HEADER: &str = "iter,source,x1,x2";

/// Scientific notation with four significant digits and a signed two-digit
/// exponent.
pub fn format_sci(v: f64) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    let s = format!("{v:.3E}");
    let (mantissa, exp) = s.split_once('E').expect("E format has an exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    let sign = if exp < 0 { '-' } else { '+' };
    format!("{mantissa}E{sign}{:02}", exp.abs())
}

pub fn write_summary_csv<W: Write>(mut w: W, rows: &[SummaryRow]) -> Result<()> {
    if rows.is_empty() {
        return Err(Error::Config("summary needs at least one row".into()));
    }
    writeln!(w, "{SUMMARY_HEADER}")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{},{}",
            r.algorithm,
            r.function,
            r.dim,
            r.trials,
            format_sci(r.best_f),
            format_sci(r.avg_f),
            format_sci(r.std)
        )?;
    }
    Ok(())
}

/// Per-trial finals. `rows` pairs each summary row with its trials.
pub fn write_trials_csv<W: Write>(mut w: W, rows: &[(&SummaryRow, &[TrialRecord])]) -> Result<()> {
    writeln!(w, "{TRIALS_HEADER}")?;
    for (row, trials) in rows {
        for t in *trials {
            writeln!(
                w,
                "{},{},{},{},{},{:e},{}",
                row.algorithm, row.function, row.dim, t.trial, t.seed, t.best_f, t.evaluations
            )?;
        }
    }
    Ok(())
}

/// One row per iteration; row `t` holds the weights entering iteration
/// `t + 1`.
pub fn write_weight_trace_csv<W: Write>(mut w: W, run: &RunResult) -> Result<()> {
    if run.weight_trace.is_empty() {
        return Err(Error::Config("run has no weight trace (only the adaptive colony adapts weights)".into()));
    }
    writeln!(w, "{WEIGHT_HEADER}")?;
    for (t, weights) in run.weight_trace.iter().enumerate() {
        let [a, b, c, d, e] = weights.0;
        writeln!(w, "{t},{a},{b},{c},{d},{e}")?;
    }
    Ok(())
}

/// Every source position after every iteration of a 2-D run recorded with
/// `record_path`.
pub fn write_search_path_csv<W: Write>(mut w: W, run: &RunResult) -> Result<()> {
    let dim = run.best_position.len();
    if dim != 2 {
        return Err(Error::Domain(format!("search paths need a 2-D problem, got dim {dim}")));
    }
    if run.path.is_empty() {
        return Err(Error::Config("run was not recorded with record_path".into()));
    }
    writeln!(w, "{PATH_HEADER}")?;
    for p in &run.path {
        writeln!(w, "{},{},{},{}", p.iter, p.source, p.position[0], p.position[1])?;
    }
    Ok(())
}

#[derive(Serialize)]
struct TaskVehicle {
    task: u32,
    etv: u8,
}

#[derive(Serialize)]
struct PortGroup<'a> {
    port: &'a str,
    kind: crate::scheduling::PortKind,
    tasks: Vec<u32>,
}

#[derive(Serialize)]
struct Timelines<'a> {
    etv1: &'a [Move],
    etv2: &'a [Move],
}

#[derive(Serialize)]
struct ScheduleReport<'a> {
    makespan: f64,
    completion: [f64; 2],
    sequence: &'a [u32],
    etv_assignment: Vec<TaskVehicle>,
    port_allocation: Vec<PortGroup<'a>>,
    timelines: Timelines<'a>,
}

/// Pretty JSON report: makespan, order, vehicle and port allocation, and both
/// timelines.
pub fn write_schedule_json<W: Write>(w: W, schedule: &Schedule, dataset: &Dataset) -> Result<()> {
    let port_allocation = schedule
        .port_allocation(dataset.ports.iter().map(|p| p.id.as_str()))
        .into_iter()
        .zip(&dataset.ports)
        .map(|((_, tasks), p)| PortGroup { port: &p.id, kind: p.kind, tasks })
        .collect();
    let report = ScheduleReport {
        makespan: schedule.makespan,
        completion: schedule.completion,
        sequence: &schedule.sequence,
        etv_assignment: schedule
            .etv_assignment
            .iter()
            .map(|(task, etv)| TaskVehicle { task: *task, etv: etv.number() })
            .collect(),
        port_allocation,
        timelines: Timelines {
            etv1: schedule.timeline(Etv::One),
            etv2: schedule.timeline(Etv::Two),
        },
    };
    serde_json::to_writer_pretty(w, &report).map_err(|e| Error::Io(e.to_string()))
}
