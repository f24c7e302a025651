use crate::bus::{BusScenario, BusTimeline};
use crate::dispersion::HistoryRow;
use crate::distributed::{DistributedRun, DistributedScenario};
use crate::error::{Error, Result};
use crate::gates::Timeline;

/// A header plus string cells; the CSV shape of every emitted table.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    fn new(header: &[&str]) -> Self {
        Self {
            header: header.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    fn push(&mut self, row: Vec<String>) {
        debug_assert_eq!(row.len(), self.header.len());
        self.rows.push(row);
    }

    pub fn to_csv(&self) -> String {
        let mut w = csv::WriterBuilder::new()
            .terminator(csv::Terminator::Any(b'\n'))
            .from_writer(Vec::new());
        w.write_record(&self.header).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row).expect("in-memory write");
        }
        String::from_utf8(w.into_inner().expect("in-memory flush")).expect("utf-8 cells")
    }

    pub fn from_csv(text: &str) -> Result<Self> {
        let mut r = csv::ReaderBuilder::new().from_reader(text.as_bytes());
        let header = r
            .headers()
            .map_err(|e| Error::invalid(e.to_string()))?
            .iter()
            .map(str::to_string)
            .collect();
        let rows = r
            .records()
            .enumerate()
            .map(|(i, rec)| {
                rec.map(|rec| rec.iter().map(str::to_string).collect())
                    .map_err(|e| Error::Row {
                        row: i + 1,
                        column: String::new(),
                        message: e.to_string(),
                    })
            })
            .collect::<Result<_>>()?;
        Ok(Self { header, rows })
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.header.iter().position(|h| h == name)
    }

    /// Parses column `name` of every row as `f64`.
    pub fn numbers(&self, name: &str) -> Result<Vec<f64>> {
        let c = self
            .column(name)
            .ok_or_else(|| Error::invalid(format!("no column `{name}`")))?;
        self.rows
            .iter()
            .enumerate()
            .map(|(i, row)| {
                row[c].parse().map_err(|_| Error::Row {
                    row: i + 1,
                    column: name.to_string(),
                    message: format!("`{}` is not a number", row[c]),
                })
            })
            .collect()
    }
}

fn num(v: f64) -> String {
    v.to_string()
}

pub fn history_table(rows: &[HistoryRow]) -> Table {
    let mut t = Table::new(&["name", "year", "proc_transfer_rel", "cache_transfer_rel", "dispersion"]);
    for r in rows {
        t.push(vec![
            r.name.clone(),
            r.year.to_string(),
            num(r.proc_transfer_rel),
            num(r.cache_transfer_rel),
            num(r.dispersion),
        ]);
    }
    t
}

pub fn gate_timeline_table(timeline: &Timeline) -> Table {
    let mut t = Table::new(&["time", "gate", "net", "value", "provisional"]);
    for e in timeline.iter() {
        t.push(vec![
            num(e.time),
            e.gate_id.clone(),
            e.net.clone(),
            e.value.to_string(),
            e.provisional.to_string(),
        ]);
    }
    t
}

pub fn bus_timeline_table(scenario: &BusScenario, timeline: &BusTimeline) -> Table {
    let mut t = Table::new(&[
        "core",
        "request_sent",
        "request_arrived",
        "grant_issued",
        "grant_arrived",
        "data_at_bus",
        "message_done",
    ]);
    for &i in &timeline.grant_order {
        let r = &timeline.records[i];
        t.push(vec![
            scenario.cores[i].id.clone(),
            num(r.request_sent),
            num(r.request_arrived),
            num(r.grant_issued),
            num(r.grant_arrived),
            num(r.data_at_bus),
            num(r.message_done),
        ]);
    }
    t
}

pub fn sweep_table(sweep: &[(usize, f64)]) -> Table {
    let mut t = Table::new(&["n", "total_completion"]);
    for &(n, total) in sweep {
        t.push(vec![n.to_string(), num(total)]);
    }
    t
}

pub fn distributed_table(scenario: &DistributedScenario, run: &DistributedRun) -> Table {
    let mut t = Table::new(&[
        "fellow",
        "distance",
        "dispatched",
        "started",
        "finished",
        "arrived",
        "reception_start",
        "reception_end",
    ]);
    for (f, r) in scenario.fellows.iter().zip(&run.fellows) {
        t.push(vec![
            f.id.clone(),
            num(r.distance),
            num(r.dispatched),
            num(r.started),
            num(r.finished),
            num(r.arrived),
            num(r.reception_start),
            num(r.reception_end),
        ]);
    }
    t
}

/// Rows in `alpha_grid` order, each expanded over `n_grid`.
pub fn surface_table(alpha_grid: &[f64], n_grid: &[u64], surface: &[Vec<f64>]) -> Table {
    let mut t = Table::new(&["alpha", "n", "efficiency"]);
    for (a, row) in alpha_grid.iter().zip(surface) {
        for (n, e) in n_grid.iter().zip(row) {
            t.push(vec![num(*a), n.to_string(), num(*e)]);
        }
    }
    t
}

/// A measured system placed over the efficiency surface.
#[derive(Debug, Clone, PartialEq)]
pub struct OverlayPoint {
    pub label: String,
    pub n: u64,
    pub efficiency: f64,
}

/// Reads `label,n,efficiency` rows.
pub fn parse_overlay_points(text: &str) -> Result<Vec<OverlayPoint>> {
    let t = Table::from_csv(text)?;
    let label = t
        .column("label")
        .ok_or_else(|| Error::invalid("overlay CSV needs a `label` column"))?;
    let n = t
        .column("n")
        .ok_or_else(|| Error::invalid("overlay CSV needs an `n` column"))?;
    let eff = t.numbers("efficiency")?;
    t.rows
        .iter()
        .zip(eff)
        .enumerate()
        .map(|(i, (row, efficiency))| {
            let n = row[n].parse().map_err(|_| Error::Row {
                row: i + 1,
                column: "n".into(),
                message: format!("`{}` is not a positive integer", row[n]),
            })?;
            Ok(OverlayPoint {
                label: row[label].clone(),
                n,
                efficiency,
            })
        })
        .collect()
}

pub fn overlay_table(points: &[(OverlayPoint, f64)]) -> Table {
    let mut t = Table::new(&["label", "n", "efficiency", "alpha"]);
    for (p, alpha) in points {
        t.push(vec![p.label.clone(), p.n.to_string(), num(p.efficiency), num(*alpha)]);
    }
    t
}
