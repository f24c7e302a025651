//! TOML scenario files for the bus and distributed models.
//!
//! Bus:
//!
//! ```toml
//! word_transfer_time = 0.1
//! bus = { x = 0.0, y = 0.5 }
//!
//! [[cores]]
//! x = -0.3
//! y = 0.0
//! t_p = 1.0
//! ```
//!
//! Distributed:
//!
//! ```toml
//! dispatch_time = 0.1
//! collect_time = 0.1
//! closing_time = 0.5
//! orchestrator = { x = 0.0, y = 0.5, t_init = 0.5 }
//!
//! [[fellows]]
//! x = -0.5
//! y = 0.0
//! work = 2.0
//! ```
//!
//! Every point also accepts an optional `z`, and cores and fellows an
//! optional `id`.

use std::path::Path;

use serde::Deserialize;

use crate::bus::BusScenario;
use crate::distributed::DistributedScenario;
use crate::error::{Error, Result};
use crate::timespace::{ComputingElement, TimePoint};

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PointEntry {
    pub x: f64,
    pub y: f64,
    #[serde(default)]
    pub z: f64,
}

impl From<PointEntry> for TimePoint {
    fn from(p: PointEntry) -> Self {
        TimePoint::new3(p.x, p.y, p.z)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CoreEntry {
    #[serde(default)]
    pub id: Option<String>,
    pub x: f64,
    pub y: f64,
    #[serde(default)]
    pub z: f64,
    pub t_p: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BusScenarioFile {
    pub word_transfer_time: f64,
    pub bus: PointEntry,
    pub cores: Vec<CoreEntry>,
}

impl BusScenarioFile {
    pub fn into_scenario(self) -> Result<BusScenario> {
        let cores = self
            .cores
            .into_iter()
            .enumerate()
            .map(|(i, c)| {
                ComputingElement::new(
                    c.id.unwrap_or_else(|| format!("core{}", i + 1)),
                    TimePoint::new3(c.x, c.y, c.z),
                    c.t_p,
                )
            })
            .collect();
        let s = BusScenario {
            cores,
            bus_position: self.bus.into(),
            word_transfer_time: self.word_transfer_time,
        };
        s.validate()?;
        Ok(s)
    }
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OrchestratorEntry {
    pub x: f64,
    pub y: f64,
    #[serde(default)]
    pub z: f64,
    pub t_init: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FellowEntry {
    #[serde(default)]
    pub id: Option<String>,
    pub x: f64,
    pub y: f64,
    #[serde(default)]
    pub z: f64,
    pub work: f64,
}

#[derive(Debug, Clone, PartialEq, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DistributedScenarioFile {
    pub dispatch_time: f64,
    pub collect_time: f64,
    pub closing_time: f64,
    pub orchestrator: OrchestratorEntry,
    pub fellows: Vec<FellowEntry>,
}

impl DistributedScenarioFile {
    pub fn into_scenario(self) -> Result<DistributedScenario> {
        let o = self.orchestrator;
        let s = DistributedScenario {
            orchestrator: ComputingElement::new("orchestrator", TimePoint::new3(o.x, o.y, o.z), o.t_init),
            fellows: self
                .fellows
                .into_iter()
                .enumerate()
                .map(|(i, f)| {
                    ComputingElement::new(
                        f.id.unwrap_or_else(|| format!("fellow{}", i + 1)),
                        TimePoint::new3(f.x, f.y, f.z),
                        f.work,
                    )
                })
                .collect(),
            dispatch_time: self.dispatch_time,
            collect_time: self.collect_time,
            closing_time: self.closing_time,
        };
        s.validate()?;
        Ok(s)
    }
}

fn parse_toml<T: serde::de::DeserializeOwned>(text: &str, source_name: &str) -> Result<T> {
    toml::from_str(text).map_err(|e| {
        let line = e
            .span()
            .map(|s| text[..s.start.min(text.len())].lines().count().max(1))
            .unwrap_or(0);
        Error::Parse {
            source_name: source_name.to_string(),
            line,
            message: e.message().to_string(),
        }
    })
}

pub fn parse_bus_scenario(text: &str, source_name: &str) -> Result<BusScenario> {
    parse_toml::<BusScenarioFile>(text, source_name)?.into_scenario()
}

pub fn parse_distributed_scenario(text: &str, source_name: &str) -> Result<DistributedScenario> {
    parse_toml::<DistributedScenarioFile>(text, source_name)?.into_scenario()
}

pub fn read_bus_scenario(path: &Path) -> Result<BusScenario> {
    parse_bus_scenario(&super::read_text(path)?, &path.display().to_string())
}

pub fn read_distributed_scenario(path: &Path) -> Result<DistributedScenario> {
    parse_distributed_scenario(&super::read_text(path)?, &path.display().to_string())
}
