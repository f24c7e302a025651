//! Text formats: processor CSV, netlist files, TOML scenarios and the CSV
//! tables every subcommand emits.
//!
//! Numbers are written with Rust's shortest round-trip formatting and a
//! `.` decimal separator regardless of locale.

mod netlist;
mod processors;
mod scenario;
mod tables;

use std::path::Path;

pub use netlist::{parse_netlist, write_netlist};
pub use processors::{parse_processor_csv, read_processor_csv, PROCESSOR_CSV_HEADER};
pub use scenario::{
    parse_bus_scenario, parse_distributed_scenario, read_bus_scenario, read_distributed_scenario,
    BusScenarioFile, DistributedScenarioFile,
};
pub use tables::{
    bus_timeline_table, distributed_table, gate_timeline_table, history_table, overlay_table,
    parse_overlay_points, surface_table, sweep_table, OverlayPoint, Table,
};

use crate::error::{Error, Result};

pub(crate) fn read_text(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|e| Error::io(path, e))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| Error::io(path, e))
}
