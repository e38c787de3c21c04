//! Dataset files.
//!
//! A dataset is a TOML document with two arrays of tables:
//!
//! ```toml
//! [[tasks]]
//! id = 1
//! kind = "inbound"      # or "outbound"
//! row = 1
//! layer = 5
//! column = 10
//!
//! [[ports]]
//! id = "R1"
//! kind = "entrance"     # or "exit"
//! row = 1
//! layer = 1
//! column = 5
//! side = "airside"      # or "landside"
//! ```

use std::collections::HashSet;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::{CellPosition, Port, PortKind, Side, Task, TaskKind};
use crate::error::{Error, Result};

/// The built-in 60-task, 16-port storage area.
pub const BUILTIN_DATASET_TOML: &str = include_str!("../../data/table3.toml");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dataset {
    pub tasks: Vec<Task>,
    pub ports: Vec<Port>,
}

#[derive(Serialize, Deserialize)]
struct TaskRecord {
    id: u32,
    kind: TaskKind,
    row: u32,
    layer: u32,
    column: u32,
}

#[derive(Serialize, Deserialize)]
struct PortRecord {
    id: String,
    kind: PortKind,
    row: u32,
    layer: u32,
    column: u32,
    side: Side,
}

#[derive(Serialize, Deserialize)]
struct DatasetFile {
    tasks: Vec<TaskRecord>,
    ports: Vec<PortRecord>,
}

impl Dataset {
    pub fn from_toml_str(text: &str) -> Result<Self> {
        let file: DatasetFile = toml::from_str(text).map_err(|e| Error::Dataset(e.to_string()))?;
        let dataset = Self {
            tasks: file
                .tasks
                .into_iter()
                .map(|t| Task {
                    id: t.id,
                    kind: t.kind,
                    cell: CellPosition::new(t.row, t.layer, t.column),
                })
                .collect(),
            ports: file
                .ports
                .into_iter()
                .map(|p| Port {
                    id: p.id,
                    kind: p.kind,
                    cell: CellPosition::new(p.row, p.layer, p.column),
                    side: p.side,
                })
                .collect(),
        };
        dataset.validate()?;
        Ok(dataset)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Dataset(format!("{}: {e}", path.display())))?;
        Self::from_toml_str(&text)
    }

    pub fn to_toml_string(&self) -> String {
        let file = DatasetFile {
            tasks: self
                .tasks
                .iter()
                .map(|t| TaskRecord {
                    id: t.id,
                    kind: t.kind,
                    row: t.cell.row,
                    layer: t.cell.layer,
                    column: t.cell.column,
                })
                .collect(),
            ports: self
                .ports
                .iter()
                .map(|p| PortRecord {
                    id: p.id.clone(),
                    kind: p.kind,
                    row: p.cell.row,
                    layer: p.cell.layer,
                    column: p.cell.column,
                    side: p.side,
                })
                .collect(),
        };
        toml::to_string(&file).expect("dataset serializes")
    }

    pub fn validate(&self) -> Result<()> {
        if self.tasks.is_empty() {
            return Err(Error::Dataset("dataset has no tasks".into()));
        }
        let mut ids = HashSet::new();
        for t in &self.tasks {
            if !ids.insert(t.id) {
                return Err(Error::Dataset(format!("duplicate task id {}", t.id)));
            }
        }
        let mut port_ids = HashSet::new();
        for p in &self.ports {
            if !port_ids.insert(p.id.as_str()) {
                return Err(Error::Dataset(format!("duplicate port id {}", p.id)));
            }
        }
        let cells = self.tasks.iter().map(|t| t.cell).chain(self.ports.iter().map(|p| p.cell));
        for c in cells {
            if c.column == 0 || c.layer == 0 || !(1..=2).contains(&c.row) {
                return Err(Error::Dataset(format!(
                    "cell {c} out of range (row in 1..=2, layer and column >= 1)"
                )));
            }
        }
        Ok(())
    }

    /// Highest column used by any task or port; the rail spans `1..=max`.
    pub fn max_column(&self) -> u32 {
        self.tasks
            .iter()
            .map(|t| t.cell.column)
            .chain(self.ports.iter().map(|p| p.cell.column))
            .max()
            .unwrap_or(1)
    }

    pub fn task(&self, id: u32) -> Option<&Task> {
        self.tasks.iter().find(|t| t.id == id)
    }

    pub fn port(&self, id: &str) -> Option<&Port> {
        self.ports.iter().find(|p| p.id == id)
    }
}

pub fn builtin_dataset() -> Dataset {
    Dataset::from_toml_str(BUILTIN_DATASET_TOML).expect("built-in dataset parses")
}
