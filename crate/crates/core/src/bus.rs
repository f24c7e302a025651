//! Cores contending for one shared bus.
//!
//! Every core starts computing at t = 0 and wants to deliver one result when
//! it finishes. Its request travels to the arbiter, which sits at the bus and
//! grants requests one at a time in arrival order (ties go to the lower core
//! index). A grant is issued no earlier than the moment the previous message
//! finished on the bus. The grant travels back, the data travels to the bus
//! and occupies it for `word_transfer_time`.

use crate::error::{ensure_non_negative, Error, Result};
use crate::timespace::{transfer_time, ComputingElement, TimePoint};

#[derive(Debug, Clone, PartialEq)]
pub struct BusScenario {
    pub cores: Vec<ComputingElement>,
    pub bus_position: TimePoint,
    pub word_transfer_time: f64,
}

impl BusScenario {
    pub fn validate(&self) -> Result<()> {
        if self.cores.is_empty() {
            return Err(Error::invalid("bus scenario needs at least one core"));
        }
        for c in &self.cores {
            c.validate()?;
        }
        self.bus_position.validate()?;
        ensure_non_negative("word transfer time", self.word_transfer_time)?;
        Ok(())
    }

    /// `n` copies of `prototype`, all at its position.
    pub fn replicated(prototype: &ComputingElement, n: usize, bus_position: TimePoint, word_transfer_time: f64) -> Self {
        let cores = (0..n)
            .map(|i| ComputingElement {
                id: format!("{}#{i}", prototype.id),
                ..prototype.clone()
            })
            .collect();
        Self {
            cores,
            bus_position,
            word_transfer_time,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoreRecord {
    pub request_sent: f64,
    pub request_arrived: f64,
    pub grant_issued: f64,
    pub grant_arrived: f64,
    pub data_at_bus: f64,
    pub message_done: f64,
}

impl CoreRecord {
    /// The bus is reserved for this core from grant to end of transfer.
    pub fn occupancy(&self) -> (f64, f64) {
        (self.grant_issued, self.message_done)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BusTimeline {
    /// Indexed like `BusScenario::cores`.
    pub records: Vec<CoreRecord>,
    /// Core indices in the order the arbiter granted them.
    pub grant_order: Vec<usize>,
    pub total_completion: f64,
}

pub fn simulate_bus(scenario: &BusScenario) -> Result<BusTimeline> {
    scenario.validate()?;
    let distances = scenario
        .cores
        .iter()
        .map(|c| transfer_time(&c.position, &scenario.bus_position, &[]))
        .collect::<Result<Vec<_>>>()?;

    let arrivals: Vec<f64> = scenario
        .cores
        .iter()
        .zip(&distances)
        .map(|(c, d)| c.processing_time + d)
        .collect();
    let mut order: Vec<usize> = (0..scenario.cores.len()).collect();
    order.sort_by(|&a, &b| arrivals[a].total_cmp(&arrivals[b]).then(a.cmp(&b)));

    let mut records = vec![None; scenario.cores.len()];
    let mut bus_free = f64::NEG_INFINITY;
    for &i in &order {
        let d = distances[i];
        let request_sent = scenario.cores[i].processing_time;
        let request_arrived = arrivals[i];
        let grant_issued = request_arrived.max(bus_free);
        let grant_arrived = grant_issued + d;
        let data_at_bus = grant_arrived + d;
        let message_done = data_at_bus + scenario.word_transfer_time;
        bus_free = message_done;
        records[i] = Some(CoreRecord {
            request_sent,
            request_arrived,
            grant_issued,
            grant_arrived,
            data_at_bus,
            message_done,
        });
    }
    let records: Vec<CoreRecord> = records.into_iter().map(Option::unwrap).collect();
    let total_completion = records
        .iter()
        .map(|r| r.message_done)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(BusTimeline {
        records,
        grant_order: order,
        total_completion,
    })
}

/// Total completion for `n` replicas of the first core of `base`, per `n`.
pub fn sweep_cores(base: &BusScenario, n_list: &[usize]) -> Result<Vec<(usize, f64)>> {
    base.validate()?;
    if n_list.is_empty() {
        return Err(Error::invalid("core-count list is empty"));
    }
    let prototype = &base.cores[0];
    n_list
        .iter()
        .map(|&n| {
            if n == 0 {
                return Err(Error::invalid("core count must be >= 1"));
            }
            let s = BusScenario::replicated(prototype, n, base.bus_position, base.word_transfer_time);
            Ok((n, simulate_bus(&s)?.total_completion))
        })
        .collect()
}
