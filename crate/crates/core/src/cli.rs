//! The `tempograph` command line.
//!
//! Every subcommand is a thin adapter over the library: it reads its input,
//! calls one analysis, and writes CSV (to `--out` or stdout) and optionally
//! SVG. Human-readable summaries go to stderr.
//!
//! Exit codes: 0 on success, 1 for input or file errors, 2 for usage errors.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::bus::{simulate_bus, sweep_cores};
use crate::dispersion::{self, ProcessorSpec};
use crate::distributed::{alpha_from_efficiency, amdahl_efficiency, efficiency_surface, simulate_distributed};
use crate::error::{Error, Result};
use crate::gates::{
    adder_placement, build_one_bit_adder, completion_times, simulate, AdderLayout, Settlement, SimOptions,
};
use crate::io::{self, Table};
use crate::render::{self, PlotSpec, RenderSpec, Series};
use crate::timespace::InteractionSpeed;

/// Environment variable overriding the default interaction speed (m/s).
pub const SPEED_ENV: &str = "TEMPOGRAPH_SPEED";

#[derive(Debug, Parser)]
#[command(name = "tempograph", version, about = "Time-space temporal behaviour of computing systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Dispersion history table from a processor CSV.
    Dispersion(DispersionArgs),
    /// Simulate the one-bit full adder.
    Adder(AdderArgs),
    /// Simulate a netlist file.
    Gates(GatesArgs),
    /// Shared-bus contention from a scenario file.
    Bus(BusArgs),
    /// Orchestrated fork-join run from a scenario file.
    Distributed(DistributedArgs),
    /// Amdahl efficiency surface.
    Amdahl(AmdahlArgs),
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("source").required(true).multiple(true).args(["input", "edvac"])))]
struct DispersionArgs {
    /// CSV with header name,year,transistors,die_area_mm2,clock_mhz.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Interaction speed in m/s [default: $TEMPOGRAPH_SPEED or 3e8].
    #[arg(long)]
    speed: Option<f64>,
    /// Include the EDVAC calibration row.
    #[arg(long)]
    edvac: bool,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum LayoutArg {
    Zero,
    Left,
    Right,
}

impl From<LayoutArg> for AdderLayout {
    fn from(l: LayoutArg) -> Self {
        match l {
            LayoutArg::Zero => AdderLayout::Zero,
            LayoutArg::Left => AdderLayout::Left,
            LayoutArg::Right => AdderLayout::Right,
        }
    }
}

#[derive(Debug, Args)]
struct AdderArgs {
    #[arg(long, value_enum, default_value = "left")]
    layout: LayoutArg,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    a: u8,
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(0..=1))]
    b: u8,
    #[arg(long, default_value_t = 0, value_parser = clap::value_parser!(u8).range(0..=1))]
    cin: u8,
    /// Operating time of every gate.
    #[arg(long, default_value_t = 1.0)]
    op_time: f64,
    /// SVG diagram path.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Timeline CSV path [default: stdout].
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct GatesArgs {
    #[arg(long)]
    netlist: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    #[arg(long)]
    emit_undefined: bool,
}

#[derive(Debug, Args)]
struct BusArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Timeline CSV path [default: stdout unless --sweep is given].
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
    /// Core counts, as `1,2,4` or an inclusive range `1..16`. Every core is
    /// a copy of the scenario's first core.
    #[arg(long, value_parser = parse_counts)]
    sweep: Option<Counts>,
    /// Sweep CSV path [default: stdout].
    #[arg(long, requires = "sweep")]
    sweep_out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct DistributedArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct AmdahlArgs {
    /// Comma-separated parallel fractions.
    #[arg(long, value_delimiter = ',', required = true)]
    alpha: Vec<f64>,
    /// Comma-separated unit counts.
    #[arg(long, value_delimiter = ',', required = true)]
    n: Vec<u64>,
    #[arg(long)]
    out: Option<PathBuf>,
    /// Measured systems to place on the surface: CSV label,n,efficiency.
    #[arg(long)]
    points: Option<PathBuf>,
    /// Overlay CSV path [default: stderr].
    #[arg(long, requires = "points")]
    points_out: Option<PathBuf>,
    #[arg(long)]
    svg: Option<PathBuf>,
}

#[derive(Debug, Clone)]
struct Counts(Vec<usize>);

fn parse_counts(s: &str) -> std::result::Result<Counts, String> {
    let bad = || format!("`{s}` is not a list like 1,2,4 or a range like 1..16");
    if let Some((lo, hi)) = s.split_once("..") {
        let lo: usize = lo.trim().parse().map_err(|_| bad())?;
        let hi: usize = hi.trim().parse().map_err(|_| bad())?;
        if lo == 0 || hi < lo {
            return Err(bad());
        }
        return Ok(Counts((lo..=hi).collect()));
    }
    let v = s
        .split(',')
        .map(|p| p.trim().parse::<usize>().map_err(|_| bad()))
        .collect::<std::result::Result<Vec<_>, _>>()?;
    if v.contains(&0) {
        return Err(bad());
    }
    Ok(Counts(v))
}

/// Runs the CLI with the process's stdout and stderr.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let stdout = std::io::stdout();
    let stderr = std::io::stderr();
    run_with(args, &mut stdout.lock(), &mut stderr.lock())
}

pub fn run_with<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 {
                stdout.write_all(text.as_bytes())
            } else {
                stderr.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let env_speed = std::env::var(SPEED_ENV).ok();
    let mut ctx = Ctx {
        stdout,
        stderr,
        env_speed,
    };
    match ctx.dispatch(cli.command) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(ctx.stderr, "error: {e}");
            1
        }
    }
}

struct Ctx<'a> {
    stdout: &'a mut dyn Write,
    stderr: &'a mut dyn Write,
    env_speed: Option<String>,
}

impl Ctx<'_> {
    fn dispatch(&mut self, command: Command) -> Result<()> {
        match command {
            Command::Dispersion(a) => self.dispersion(a),
            Command::Adder(a) => self.adder(a),
            Command::Gates(a) => self.gates(a),
            Command::Bus(a) => self.bus(a),
            Command::Distributed(a) => self.distributed(a),
            Command::Amdahl(a) => self.amdahl(a),
        }
    }

    fn speed(&self, flag: Option<f64>) -> Result<InteractionSpeed> {
        if let Some(v) = flag {
            return InteractionSpeed::new(v);
        }
        match &self.env_speed {
            Some(s) => {
                let v: f64 = s
                    .trim()
                    .parse()
                    .map_err(|_| Error::InvalidInput(format!("{SPEED_ENV}=`{s}` is not a number")))?;
                InteractionSpeed::new(v)
            }
            None => Ok(InteractionSpeed::DEFAULT),
        }
    }

    fn emit(&mut self, table: &Table, path: Option<&Path>) -> Result<()> {
        let csv = table.to_csv();
        match path {
            Some(p) => io::write_text(p, &csv),
            None => self
                .stdout
                .write_all(csv.as_bytes())
                .map_err(|e| Error::io("<stdout>", e)),
        }
    }

    fn note(&mut self, line: &str) {
        let _ = writeln!(self.stderr, "{line}");
    }

    fn dispersion(&mut self, a: DispersionArgs) -> Result<()> {
        let speed = self.speed(a.speed)?;
        let mut specs = Vec::new();
        if a.edvac {
            specs.push(ProcessorSpec::edvac());
        }
        if let Some(path) = &a.input {
            specs.extend(io::read_processor_csv(path)?);
        }
        let rows = dispersion::history_table(&specs, speed)?;
        self.emit(&io::history_table(&rows), a.out.as_deref())?;
        if let Some(svg) = &a.svg {
            let series = |label: &str, f: fn(&dispersion::HistoryRow) -> f64| Series {
                label: label.into(),
                points: rows.iter().map(|r| (r.year as f64, f(r))).collect(),
                points_only: rows.len() == 1,
            };
            let doc = render::render_plot_svg(
                &[
                    series("proc_transfer_rel", |r| r.proc_transfer_rel),
                    series("cache_transfer_rel", |r| r.cache_transfer_rel),
                    series("dispersion", |r| r.dispersion),
                ],
                &PlotSpec {
                    width: 800,
                    height: 500,
                    title: "dispersion history".into(),
                    x_label: "year".into(),
                    y_label: "relative to processing time".into(),
                    log_x: false,
                    log_y: true,
                },
            )?;
            io::write_text(svg, &doc)?;
        }
        Ok(())
    }

    fn adder(&mut self, a: AdderArgs) -> Result<()> {
        let mut netlist = build_one_bit_adder(&adder_placement(a.layout.into()), a.op_time)?;
        netlist
            .set("a", 0.0, a.a == 1)
            .set("b", 0.0, a.b == 1)
            .set("cin", 0.0, a.cin == 1);
        let timeline = simulate(&netlist, SimOptions::default())?;
        self.emit(&io::gate_timeline_table(&timeline), a.csv.as_deref())?;
        self.settle_summary(&completion_times(&timeline, &netlist));
        if let Some(svg) = &a.out {
            let doc = render::render_timeline_svg(&netlist, &timeline, &RenderSpec::default())?;
            io::write_text(svg, &doc)?;
        }
        Ok(())
    }

    fn settle_summary(&mut self, settle: &BTreeMap<String, Settlement>) {
        for (name, s) in settle {
            let line = match s {
                Settlement::Settled { time, value } => format!("{name}: {value} settled at t={time}"),
                Settlement::Unsettled { last: Some((t, v)) } => {
                    format!("{name}: unsettled, last {v} at t={t}")
                }
                Settlement::Unsettled { last: None } => format!("{name}: no events"),
            };
            self.note(&line);
        }
    }

    fn gates(&mut self, a: GatesArgs) -> Result<()> {
        let text = io::read_text(&a.netlist)?;
        let netlist = io::parse_netlist(&text, &a.netlist.display().to_string())?;
        let timeline = simulate(
            &netlist,
            SimOptions {
                emit_undefined: a.emit_undefined,
            },
        )?;
        self.emit(&io::gate_timeline_table(&timeline), a.out.as_deref())?;
        self.settle_summary(&completion_times(&timeline, &netlist));
        if let Some(svg) = &a.svg {
            let doc = render::render_timeline_svg(&netlist, &timeline, &RenderSpec::default())?;
            io::write_text(svg, &doc)?;
        }
        Ok(())
    }

    fn bus(&mut self, a: BusArgs) -> Result<()> {
        let scenario = io::read_bus_scenario(&a.scenario)?;
        let timeline = simulate_bus(&scenario)?;
        if a.out.is_some() || a.sweep.is_none() {
            self.emit(&io::bus_timeline_table(&scenario, &timeline), a.out.as_deref())?;
        }
        self.note(&format!("total completion: {}", timeline.total_completion));
        if let Some(counts) = &a.sweep {
            let sweep = sweep_cores(&scenario, &counts.0)?;
            self.emit(&io::sweep_table(&sweep), a.sweep_out.as_deref())?;
        }
        if let Some(svg) = &a.svg {
            let doc = render::render_svg(&render::bus_diagram(&scenario, &timeline), &RenderSpec::default())?;
            io::write_text(svg, &doc)?;
        }
        Ok(())
    }

    fn distributed(&mut self, a: DistributedArgs) -> Result<()> {
        let scenario = io::read_distributed_scenario(&a.scenario)?;
        let run = simulate_distributed(&scenario)?;
        self.emit(&io::distributed_table(&scenario, &run), a.out.as_deref())?;
        self.note(&format!(
            "total time: {}; critical fellow: {}",
            run.total_time, scenario.fellows[run.critical_fellow].id
        ));
        if let Some(svg) = &a.svg {
            let doc = render::render_svg(&render::distributed_diagram(&scenario, &run), &RenderSpec::default())?;
            io::write_text(svg, &doc)?;
        }
        Ok(())
    }

    fn amdahl(&mut self, a: AmdahlArgs) -> Result<()> {
        let surface = efficiency_surface(&a.alpha, &a.n)?;
        self.emit(&io::surface_table(&a.alpha, &a.n, &surface), a.out.as_deref())?;

        let mut overlay = Vec::new();
        if let Some(path) = &a.points {
            for p in io::parse_overlay_points(&io::read_text(path)?)? {
                let alpha = alpha_from_efficiency(p.efficiency, p.n)?;
                overlay.push((p, alpha));
            }
            let table = io::overlay_table(&overlay);
            match &a.points_out {
                Some(p) => io::write_text(p, &table.to_csv())?,
                None => {
                    let _ = self.stderr.write_all(table.to_csv().as_bytes());
                }
            }
        }

        if let Some(svg) = &a.svg {
            let mut ns = a.n.clone();
            ns.sort_unstable();
            ns.dedup();
            let mut series = a
                .alpha
                .iter()
                .map(|&alpha| {
                    Ok(Series {
                        label: format!("alpha={alpha}"),
                        points: ns
                            .iter()
                            .map(|&n| Ok((n as f64, amdahl_efficiency(alpha, n)?)))
                            .collect::<Result<_>>()?,
                        points_only: ns.len() == 1,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            for (p, _) in &overlay {
                series.push(Series {
                    label: p.label.clone(),
                    points: vec![(p.n as f64, p.efficiency)],
                    points_only: true,
                });
            }
            let doc = render::render_plot_svg(
                &series,
                &PlotSpec {
                    width: 800,
                    height: 500,
                    title: "Amdahl efficiency".into(),
                    x_label: "number of processing units".into(),
                    y_label: "efficiency".into(),
                    log_x: true,
                    log_y: true,
                },
            )?;
            io::write_text(svg, &doc)?;
        }
        Ok(())
    }
}
