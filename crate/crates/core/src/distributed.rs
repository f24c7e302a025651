//! Parallelized-sequential processing and Amdahl efficiency.
//!
//! An orchestrator does its initial sequential work, sends start commands
//! to its fellows one after the other, receives their results one at a time
//! and finishes with a closing sequential step. Signal travel between the
//! orchestrator and each fellow is the time-space distance between them.

use crate::error::{ensure_finite, ensure_non_negative, Error, Result};
use crate::timespace::{transfer_time, ComputingElement};

#[derive(Debug, Clone, PartialEq)]
pub struct DistributedScenario {
    /// Its processing time is the initial sequential work.
    pub orchestrator: ComputingElement,
    /// Each processing time is that fellow's share of the parallel work.
    pub fellows: Vec<ComputingElement>,
    pub dispatch_time: f64,
    pub collect_time: f64,
    pub closing_time: f64,
}

impl DistributedScenario {
    pub fn validate(&self) -> Result<()> {
        if self.fellows.is_empty() {
            return Err(Error::invalid("distributed scenario needs at least one fellow"));
        }
        self.orchestrator.validate()?;
        for f in &self.fellows {
            f.validate()?;
        }
        ensure_non_negative("dispatch time", self.dispatch_time)?;
        ensure_non_negative("collect time", self.collect_time)?;
        ensure_non_negative("closing time", self.closing_time)?;
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FellowRecord {
    /// Distance to the orchestrator.
    pub distance: f64,
    /// The orchestrator finished issuing this fellow's start command.
    pub dispatched: f64,
    pub started: f64,
    pub finished: f64,
    /// Result reached the orchestrator.
    pub arrived: f64,
    pub reception_start: f64,
    pub reception_end: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DistributedRun {
    /// Indexed like `DistributedScenario::fellows`.
    pub fellows: Vec<FellowRecord>,
    pub init_done: f64,
    pub dispatch_done: f64,
    /// Fellow indices in the order their results were received.
    pub reception_order: Vec<usize>,
    pub join_done: f64,
    pub total_time: f64,
    /// The fellow whose result was received last.
    pub critical_fellow: usize,
}

/// Fellow `k` (0-based, list order) gets its start command at
/// `t_init + (k + 1) * dispatch_time` and begins after the signal travel
/// time. Results queue at the orchestrator, which takes them in arrival
/// order (ties in list order), `collect_time` each, and not before it has
/// finished dispatching.
pub fn simulate_distributed(s: &DistributedScenario) -> Result<DistributedRun> {
    s.validate()?;
    let init_done = s.orchestrator.processing_time;
    let mut fellows = Vec::with_capacity(s.fellows.len());
    for (k, f) in s.fellows.iter().enumerate() {
        let distance = transfer_time(&s.orchestrator.position, &f.position, &[])?;
        let dispatched = init_done + (k + 1) as f64 * s.dispatch_time;
        let started = dispatched + distance;
        let finished = started + f.processing_time;
        fellows.push(FellowRecord {
            distance,
            dispatched,
            started,
            finished,
            arrived: finished + distance,
            reception_start: f64::NAN,
            reception_end: f64::NAN,
        });
    }
    let dispatch_done = init_done + s.fellows.len() as f64 * s.dispatch_time;

    let mut order: Vec<usize> = (0..fellows.len()).collect();
    order.sort_by(|&a, &b| fellows[a].arrived.total_cmp(&fellows[b].arrived).then(a.cmp(&b)));
    let mut clock = dispatch_done;
    for &k in &order {
        let r = &mut fellows[k];
        r.reception_start = r.arrived.max(clock);
        r.reception_end = r.reception_start + s.collect_time;
        clock = r.reception_end;
    }

    Ok(DistributedRun {
        critical_fellow: *order.last().expect("at least one fellow"),
        fellows,
        init_done,
        dispatch_done,
        reception_order: order,
        join_done: clock,
        total_time: clock + s.closing_time,
    })
}

/// A point on the efficiency surface.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AmdahlPoint {
    pub n: u64,
    pub alpha: f64,
    pub efficiency: f64,
}

impl AmdahlPoint {
    pub fn at(alpha: f64, n: u64) -> Result<Self> {
        Ok(Self {
            n,
            alpha,
            efficiency: amdahl_efficiency(alpha, n)?,
        })
    }

    /// Places a measured efficiency on the surface by recovering its alpha.
    /// The recovered alpha is not clamped; values outside [0, 1] flag a
    /// measurement Amdahl's law cannot explain.
    pub fn from_measurement(efficiency: f64, n: u64) -> Result<Self> {
        Ok(Self {
            n,
            alpha: alpha_from_efficiency(efficiency, n)?,
            efficiency,
        })
    }
}

fn check_alpha(alpha: f64) -> Result<()> {
    ensure_finite("alpha", alpha)?;
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::invalid(format!("alpha must be in [0, 1], got {alpha}")));
    }
    Ok(())
}

pub fn amdahl_speedup(alpha: f64, n: u64) -> Result<f64> {
    Ok(amdahl_efficiency(alpha, n)? * n as f64)
}

/// `1 / (n (1 - alpha) + alpha)`.
pub fn amdahl_efficiency(alpha: f64, n: u64) -> Result<f64> {
    check_alpha(alpha)?;
    if n == 0 {
        return Err(Error::invalid("number of processing units must be >= 1"));
    }
    if n == 1 {
        return Ok(1.0);
    }
    Ok(1.0 / (n as f64 * (1.0 - alpha) + alpha))
}

/// Inverse of [`amdahl_efficiency`] in alpha.
pub fn alpha_from_efficiency(efficiency: f64, n: u64) -> Result<f64> {
    ensure_finite("efficiency", efficiency)?;
    if efficiency <= 0.0 {
        return Err(Error::invalid(format!("efficiency must be > 0, got {efficiency}")));
    }
    if n < 2 {
        return Err(Error::invalid("alpha is undetermined for fewer than 2 processing units"));
    }
    let n = n as f64;
    Ok((n - 1.0 / efficiency) / (n - 1.0))
}

/// Rows follow `alpha_grid`, columns follow `n_grid`.
pub fn efficiency_surface(alpha_grid: &[f64], n_grid: &[u64]) -> Result<Vec<Vec<f64>>> {
    if alpha_grid.is_empty() || n_grid.is_empty() {
        return Err(Error::invalid("efficiency surface needs non-empty grids"));
    }
    alpha_grid
        .iter()
        .map(|&a| n_grid.iter().map(|&n| amdahl_efficiency(a, n)).collect())
        .collect()
}
