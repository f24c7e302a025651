//! SVG temporal dependence diagrams and simple line plots.
//!
//! A [`Diagram`] is a set of vertical lanes, one per element, with time
//! increasing upward. Processing is drawn as vertical arrows on a lane,
//! signal travel as slanted arrows between lanes, and idle waiting is either
//! left blank or drawn as a thin dashed line. Provisional gate outputs are
//! dashed.
//!
//! Output is plain text with fixed-precision coordinates, so identical
//! inputs give byte-identical documents.

use std::fmt::Write as _;

use crate::bus::{BusScenario, BusTimeline};
use crate::distributed::{DistributedRun, DistributedScenario};
use crate::error::{Error, Result};
use crate::gates::{Netlist, Timeline};
use crate::timespace::TimePoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ArrowClass {
    Payload,
    Transfer,
    Idle,
    Provisional,
}

impl ArrowClass {
    fn css(self) -> &'static str {
        match self {
            ArrowClass::Payload => "payload",
            ArrowClass::Transfer => "transfer",
            ArrowClass::Idle => "idle",
            ArrowClass::Provisional => "provisional",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Lane {
    pub label: String,
    pub position: TimePoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    pub class: ArrowClass,
    pub from: (usize, f64),
    pub to: (usize, f64),
    pub label: Option<String>,
}

impl Segment {
    fn new(class: ArrowClass, from: (usize, f64), to: (usize, f64)) -> Self {
        Self {
            class,
            from,
            to,
            label: None,
        }
    }

    fn labeled(mut self, label: impl Into<String>) -> Self {
        self.label = Some(label.into());
        self
    }

    pub fn is_vertical(&self) -> bool {
        self.from.0 == self.to.0
    }
}

/// A point event drawn as a dot, such as an input stimulus.
#[derive(Debug, Clone, PartialEq)]
pub struct Marker {
    pub lane: usize,
    pub time: f64,
    pub label: String,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Diagram {
    pub title: String,
    pub lanes: Vec<Lane>,
    pub segments: Vec<Segment>,
    pub markers: Vec<Marker>,
}

impl Diagram {
    pub fn end_time(&self) -> f64 {
        self.segments
            .iter()
            .flat_map(|s| [s.from.1, s.to.1])
            .chain(self.markers.iter().map(|m| m.time))
            .fold(0.0, f64::max)
    }

    pub fn count(&self, class: ArrowClass) -> usize {
        self.segments.iter().filter(|s| s.class == class).count()
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    pub time_label: String,
    pub lane_label: String,
    /// Lanes are ordered by `x + y_projection * y`.
    pub y_projection: f64,
}

impl Default for RenderSpec {
    fn default() -> Self {
        Self {
            width: 800,
            height: 600,
            time_label: "t".into(),
            lane_label: "x (time-space)".into(),
            y_projection: 0.5,
        }
    }
}

const MARGIN_LEFT: f64 = 70.0;
const MARGIN_RIGHT: f64 = 30.0;
const MARGIN_TOP: f64 = 40.0;
const MARGIN_BOTTOM: f64 = 70.0;

fn esc(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

/// Round tick step for a span.
fn nice_step(span: f64, ticks: f64) -> f64 {
    let raw = span / ticks;
    let mag = 10f64.powf(raw.log10().floor());
    let norm = raw / mag;
    let nice = if norm < 1.5 {
        1.0
    } else if norm < 3.5 {
        2.0
    } else if norm < 7.5 {
        5.0
    } else {
        10.0
    };
    nice * mag
}

fn svg_open(out: &mut String, width: u32, height: u32, title: &str) {
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, "<title>{}</title>", esc(title));
}

pub fn render_svg(diagram: &Diagram, spec: &RenderSpec) -> Result<String> {
    if spec.width == 0 || spec.height == 0 {
        return Err(Error::invalid("render size must be positive"));
    }
    if diagram.segments.is_empty() && diagram.markers.is_empty() {
        return Err(Error::invalid("nothing to draw: empty timeline"));
    }
    if diagram.lanes.is_empty() {
        return Err(Error::invalid("diagram has no lanes"));
    }
    let (w, h) = (spec.width as f64, spec.height as f64);
    let plot_w = (w - MARGIN_LEFT - MARGIN_RIGHT).max(1.0);
    let plot_h = (h - MARGIN_TOP - MARGIN_BOTTOM).max(1.0);

    let mut order: Vec<usize> = (0..diagram.lanes.len()).collect();
    let key = |i: usize| {
        let p = diagram.lanes[i].position;
        p.x + spec.y_projection * p.y
    };
    order.sort_by(|&a, &b| key(a).total_cmp(&key(b)).then(a.cmp(&b)));
    let mut slot = vec![0usize; order.len()];
    for (s, &lane) in order.iter().enumerate() {
        slot[lane] = s;
    }
    let gap = plot_w / order.len() as f64;
    let lane_x = |lane: usize| MARGIN_LEFT + gap * (slot[lane] as f64 + 0.5);

    let t_end = diagram.end_time();
    let t_span = if t_end > 0.0 { t_end } else { 1.0 };
    let ty = |t: f64| MARGIN_TOP + plot_h * (1.0 - t / t_span);

    let mut out = String::new();
    svg_open(&mut out, spec.width, spec.height, &diagram.title);
    out.push_str(concat!(
        "<defs>\n",
        "<marker id=\"head\" viewBox=\"0 0 10 10\" refX=\"10\" refY=\"5\" markerUnits=\"userSpaceOnUse\" markerWidth=\"9\" markerHeight=\"9\" orient=\"auto-start-reverse\">",
        "<path d=\"M 0 0 L 10 5 L 0 10 z\" fill=\"context-stroke\"/></marker>\n",
        "</defs>\n",
        "<style>\n",
        ".payload{stroke:#1a9641;stroke-width:3;fill:none}\n",
        ".transfer{stroke:#2c7bb6;stroke-width:1.5;stroke-dasharray:5 3;fill:none}\n",
        ".idle{stroke:#d7191c;stroke-width:1;stroke-dasharray:2 4;fill:none}\n",
        ".provisional{stroke:#fdae61;stroke-width:2;stroke-dasharray:6 4;fill:none}\n",
        ".lane{stroke:#dddddd;stroke-width:1}\n",
        ".axis{stroke:#000000;stroke-width:1}\n",
        "text{font-family:sans-serif;font-size:11px}\n",
        "</style>\n",
    ));
    let _ = writeln!(out, r#"<rect width="{w:.0}" height="{h:.0}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
        w / 2.0,
        esc(&diagram.title)
    );

    // time axis
    let _ = writeln!(
        out,
        r#"<line class="axis" x1="{0:.2}" y1="{1:.2}" x2="{0:.2}" y2="{2:.2}"/>"#,
        MARGIN_LEFT,
        ty(0.0),
        MARGIN_TOP
    );
    let step = nice_step(t_span, 5.0);
    let mut k = 0u32;
    loop {
        let t = step * k as f64;
        if t > t_span * (1.0 + 1e-9) {
            break;
        }
        let y = ty(t);
        let _ = writeln!(
            out,
            r#"<line class="axis" x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT - 4.0,
            MARGIN_LEFT,
            MARGIN_LEFT - 6.0,
            y + 4.0,
            format_tick(t)
        );
        k += 1;
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle" transform="rotate(-90 {:.2} {:.2})">{}</text>"#,
        MARGIN_LEFT - 45.0,
        MARGIN_TOP + plot_h / 2.0,
        MARGIN_LEFT - 45.0,
        MARGIN_TOP + plot_h / 2.0,
        esc(&spec.time_label)
    );

    for &lane in &order {
        let x = lane_x(lane);
        let l = &diagram.lanes[lane];
        let _ = writeln!(
            out,
            r#"<line class="lane" x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}"/>"#,
            ty(0.0),
            MARGIN_TOP
        );
        let _ = writeln!(
            out,
            r#"<text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text><text x="{x:.2}" y="{:.2}" text-anchor="middle" fill="gray">{}</text>"#,
            ty(0.0) + 18.0,
            esc(&l.label),
            ty(0.0) + 32.0,
            esc(&l.position.to_string())
        );
    }
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        h - 12.0,
        esc(&spec.lane_label)
    );

    for s in &diagram.segments {
        let (x1, y1) = (lane_x(s.from.0), ty(s.from.1));
        let (x2, y2) = (lane_x(s.to.0), ty(s.to.1));
        let head = if s.class == ArrowClass::Idle {
            ""
        } else {
            r#" marker-end="url(#head)""#
        };
        let _ = writeln!(
            out,
            r#"<line class="{}" x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}"{head}/>"#,
            s.class.css()
        );
        if let Some(label) = &s.label {
            let _ = writeln!(
                out,
                r#"<text x="{:.2}" y="{:.2}">{}</text>"#,
                (x1 + x2) / 2.0 + 5.0,
                (y1 + y2) / 2.0,
                esc(label)
            );
        }
    }
    for m in &diagram.markers {
        let (x, y) = (lane_x(m.lane), ty(m.time));
        let _ = writeln!(
            out,
            r#"<circle cx="{x:.2}" cy="{y:.2}" r="3" fill="black"/><text x="{:.2}" y="{:.2}">{}</text>"#,
            x + 5.0,
            y - 5.0,
            esc(&m.label)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}

fn format_tick(v: f64) -> String {
    let s = format!("{v:.6}");
    let s = s.trim_end_matches('0').trim_end_matches('.');
    if s == "-0" {
        "0".into()
    } else {
        s.into()
    }
}

/// Lanes for every input and gate; stimuli as markers with their wires,
/// gate events as vertical arrows with their fan-out wires.
pub fn gate_diagram(netlist: &Netlist, timeline: &Timeline) -> Result<Diagram> {
    netlist.validate()?;
    let mut d = Diagram {
        title: "temporal dependence diagram".into(),
        ..Default::default()
    };
    for i in &netlist.inputs {
        d.lanes.push(Lane {
            label: i.name.clone(),
            position: i.position,
        });
    }
    let gate_lane = |g: usize| netlist.inputs.len() + g;
    for g in &netlist.gates {
        d.lanes.push(Lane {
            label: g.id.clone(),
            position: g.position,
        });
    }
    let sinks = |net: &str| -> Vec<(usize, TimePoint)> {
        netlist
            .gates
            .iter()
            .enumerate()
            .filter(|(_, g)| g.inputs.iter().any(|i| i == net))
            .map(|(k, g)| (k, g.position))
            .collect()
    };

    let mut stimuli: Vec<_> = netlist.stimuli.iter().collect();
    stimuli.sort_by(|a, b| a.time.total_cmp(&b.time).then_with(|| a.input.cmp(&b.input)));
    for s in stimuli {
        let lane = netlist.inputs.iter().position(|i| i.name == s.input).unwrap();
        let from = netlist.inputs[lane].position;
        d.markers.push(Marker {
            lane,
            time: s.time,
            label: format!("{}={}", s.input, u8::from(s.value)),
        });
        for (g, pos) in sinks(&s.input) {
            d.segments.push(Segment::new(
                ArrowClass::Transfer,
                (lane, s.time),
                (gate_lane(g), s.time + from.distance(&pos)),
            ));
        }
    }

    for e in timeline.iter() {
        let g = netlist
            .gates
            .iter()
            .position(|g| g.id == e.gate_id)
            .ok_or_else(|| Error::invalid(format!("timeline names unknown gate `{}`", e.gate_id)))?;
        let gate = &netlist.gates[g];
        let lane = gate_lane(g);
        let class = if e.provisional {
            ArrowClass::Provisional
        } else {
            ArrowClass::Payload
        };
        d.segments.push(
            Segment::new(class, (lane, e.time - gate.operating_time), (lane, e.time))
                .labeled(format!("{}={}", e.net, e.value)),
        );
        let wire_class = if e.provisional {
            ArrowClass::Provisional
        } else {
            ArrowClass::Transfer
        };
        for (k, pos) in sinks(&e.net) {
            d.segments.push(Segment::new(
                wire_class,
                (lane, e.time),
                (gate_lane(k), e.time + gate.position.distance(&pos)),
            ));
        }
    }
    Ok(d)
}

pub fn render_timeline_svg(netlist: &Netlist, timeline: &Timeline, spec: &RenderSpec) -> Result<String> {
    if timeline.is_empty() {
        return Err(Error::invalid("nothing to draw: empty timeline"));
    }
    render_svg(&gate_diagram(netlist, timeline)?, spec)
}

/// One lane per core plus one for the bus.
pub fn bus_diagram(scenario: &BusScenario, timeline: &BusTimeline) -> Diagram {
    let mut d = Diagram {
        title: "shared bus".into(),
        ..Default::default()
    };
    for c in &scenario.cores {
        d.lanes.push(Lane {
            label: c.id.clone(),
            position: c.position,
        });
    }
    let bus = d.lanes.len();
    d.lanes.push(Lane {
        label: "bus".into(),
        position: scenario.bus_position,
    });
    for (i, r) in timeline.records.iter().enumerate() {
        let id = &scenario.cores[i].id;
        d.segments
            .push(Segment::new(ArrowClass::Payload, (i, 0.0), (i, r.request_sent)).labeled(id.clone()));
        if r.grant_arrived > r.request_sent {
            d.segments
                .push(Segment::new(ArrowClass::Idle, (i, r.request_sent), (i, r.grant_arrived)));
        }
        d.segments.push(
            Segment::new(ArrowClass::Transfer, (i, r.request_sent), (bus, r.request_arrived)).labeled("req"),
        );
        d.segments.push(
            Segment::new(ArrowClass::Transfer, (bus, r.grant_issued), (i, r.grant_arrived)).labeled("grant"),
        );
        d.segments.push(
            Segment::new(ArrowClass::Transfer, (i, r.grant_arrived), (bus, r.data_at_bus)).labeled("data"),
        );
        d.segments.push(
            Segment::new(ArrowClass::Payload, (bus, r.data_at_bus), (bus, r.message_done))
                .labeled(format!("{id} on bus")),
        );
    }
    d
}

/// Orchestrator lane first, then one lane per fellow.
pub fn distributed_diagram(scenario: &DistributedScenario, run: &DistributedRun) -> Diagram {
    let mut d = Diagram {
        title: "parallelized sequential processing".into(),
        ..Default::default()
    };
    d.lanes.push(Lane {
        label: scenario.orchestrator.id.clone(),
        position: scenario.orchestrator.position,
    });
    for f in &scenario.fellows {
        d.lanes.push(Lane {
            label: f.id.clone(),
            position: f.position,
        });
    }
    if run.init_done > 0.0 {
        d.segments
            .push(Segment::new(ArrowClass::Payload, (0, 0.0), (0, run.init_done)).labeled("init"));
    }
    for (k, r) in run.fellows.iter().enumerate() {
        let lane = k + 1;
        let cmd_start = r.dispatched - scenario.dispatch_time;
        if scenario.dispatch_time > 0.0 {
            d.segments
                .push(Segment::new(ArrowClass::Payload, (0, cmd_start), (0, r.dispatched)));
        }
        d.segments.push(
            Segment::new(ArrowClass::Transfer, (0, r.dispatched), (lane, r.started)).labeled("start"),
        );
        if r.started > 0.0 {
            d.segments.push(Segment::new(ArrowClass::Idle, (lane, 0.0), (lane, r.started)));
        }
        d.segments.push(
            Segment::new(ArrowClass::Payload, (lane, r.started), (lane, r.finished))
                .labeled(scenario.fellows[k].id.clone()),
        );
        d.segments.push(
            Segment::new(ArrowClass::Transfer, (lane, r.finished), (0, r.arrived)).labeled(format!("Res{}", k + 1)),
        );
        if r.reception_start > r.arrived {
            d.segments
                .push(Segment::new(ArrowClass::Idle, (0, r.arrived), (0, r.reception_start)));
        }
        if scenario.collect_time > 0.0 {
            d.segments
                .push(Segment::new(ArrowClass::Payload, (0, r.reception_start), (0, r.reception_end)));
        }
    }
    if let Some(first) = run.reception_order.first() {
        let first_rx = run.fellows[*first].reception_start;
        if first_rx > run.dispatch_done {
            d.segments
                .push(Segment::new(ArrowClass::Idle, (0, run.dispatch_done), (0, first_rx)));
        }
    }
    if scenario.closing_time > 0.0 {
        d.segments.push(
            Segment::new(ArrowClass::Payload, (0, run.join_done), (0, run.total_time)).labeled("closing"),
        );
    }
    d
}

/// A named polyline, or a scatter when `points_only`.
#[derive(Debug, Clone, PartialEq)]
pub struct Series {
    pub label: String,
    pub points: Vec<(f64, f64)>,
    pub points_only: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PlotSpec {
    pub width: u32,
    pub height: u32,
    pub title: String,
    pub x_label: String,
    pub y_label: String,
    pub log_x: bool,
    pub log_y: bool,
}

const PALETTE: [&str; 8] = [
    "#1a9641", "#2c7bb6", "#d7191c", "#fdae61", "#7b3294", "#008837", "#e66101", "#404040",
];

/// Line plot with optional log axes. Points that cannot be shown on a log
/// axis (non-positive) are an error.
pub fn render_plot_svg(series: &[Series], spec: &PlotSpec) -> Result<String> {
    if spec.width == 0 || spec.height == 0 {
        return Err(Error::invalid("render size must be positive"));
    }
    let all: Vec<(f64, f64)> = series.iter().flat_map(|s| s.points.iter().copied()).collect();
    if all.is_empty() {
        return Err(Error::invalid("nothing to plot"));
    }
    let tx = |v: f64| if spec.log_x { v.log10() } else { v };
    let ty = |v: f64| if spec.log_y { v.log10() } else { v };
    for &(x, y) in &all {
        if !(x.is_finite() && y.is_finite()) || (spec.log_x && x <= 0.0) || (spec.log_y && y <= 0.0) {
            return Err(Error::invalid(format!("point ({x}, {y}) cannot be plotted")));
        }
    }
    let range = |vals: Vec<f64>, log: bool| {
        let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
        let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        let (lo, hi) = if log { (lo.floor(), hi.ceil()) } else { (lo, hi) };
        if hi > lo {
            (lo, hi)
        } else {
            (lo - 0.5, hi + 0.5)
        }
    };
    let (x0, x1) = range(all.iter().map(|p| tx(p.0)).collect(), spec.log_x);
    let (y0, y1) = range(all.iter().map(|p| ty(p.1)).collect(), spec.log_y);
    let (w, h) = (spec.width as f64, spec.height as f64);
    let plot_w = (w - MARGIN_LEFT - MARGIN_RIGHT - 120.0).max(1.0);
    let plot_h = (h - MARGIN_TOP - MARGIN_BOTTOM).max(1.0);
    let px = |v: f64| MARGIN_LEFT + plot_w * (tx(v) - x0) / (x1 - x0);
    let py = |v: f64| MARGIN_TOP + plot_h * (1.0 - (ty(v) - y0) / (y1 - y0));

    let mut out = String::new();
    svg_open(&mut out, spec.width, spec.height, &spec.title);
    out.push_str("<style>text{font-family:sans-serif;font-size:11px}.axis{stroke:#000000;stroke-width:1}.grid{stroke:#eeeeee;stroke-width:1}</style>\n");
    let _ = writeln!(out, r#"<rect width="{w:.0}" height="{h:.0}" fill="white"/>"#);
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="20" text-anchor="middle" font-size="14">{}</text>"#,
        w / 2.0,
        esc(&spec.title)
    );

    let ticks = |lo: f64, hi: f64, log: bool| -> Vec<f64> {
        if log {
            (lo as i32..=hi as i32).map(|e| e as f64).collect()
        } else {
            let step = nice_step(hi - lo, 5.0);
            let first = (lo / step).ceil() as i64;
            let last = (hi / step).floor() as i64;
            (first..=last).map(|k| k as f64 * step).collect()
        }
    };
    let label = |v: f64, log: bool| if log { format!("1e{}", v as i32) } else { format_tick(v) };
    for t in ticks(x0, x1, spec.log_x) {
        let x = MARGIN_LEFT + plot_w * (t - x0) / (x1 - x0);
        let _ = writeln!(
            out,
            r#"<line class="grid" x1="{x:.2}" y1="{:.2}" x2="{x:.2}" y2="{:.2}"/><text x="{x:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
            MARGIN_TOP,
            MARGIN_TOP + plot_h,
            MARGIN_TOP + plot_h + 16.0,
            label(t, spec.log_x)
        );
    }
    for t in ticks(y0, y1, spec.log_y) {
        let y = MARGIN_TOP + plot_h * (1.0 - (t - y0) / (y1 - y0));
        let _ = writeln!(
            out,
            r#"<line class="grid" x1="{:.2}" y1="{y:.2}" x2="{:.2}" y2="{y:.2}"/><text x="{:.2}" y="{:.2}" text-anchor="end">{}</text>"#,
            MARGIN_LEFT,
            MARGIN_LEFT + plot_w,
            MARGIN_LEFT - 6.0,
            y + 4.0,
            label(t, spec.log_y)
        );
    }
    let _ = writeln!(
        out,
        r#"<rect class="axis" x="{MARGIN_LEFT:.2}" y="{MARGIN_TOP:.2}" width="{plot_w:.2}" height="{plot_h:.2}" fill="none"/>"#
    );
    let _ = writeln!(
        out,
        r#"<text x="{:.2}" y="{:.2}" text-anchor="middle">{}</text>"#,
        MARGIN_LEFT + plot_w / 2.0,
        h - 20.0,
        esc(&spec.x_label)
    );
    let _ = writeln!(
        out,
        r#"<text x="20" y="{0:.2}" text-anchor="middle" transform="rotate(-90 20 {0:.2})">{1}</text>"#,
        MARGIN_TOP + plot_h / 2.0,
        esc(&spec.y_label)
    );

    for (k, s) in series.iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        if s.points_only {
            for &(x, y) in &s.points {
                let _ = writeln!(
                    out,
                    r#"<circle cx="{:.2}" cy="{:.2}" r="4" fill="{color}"/>"#,
                    px(x),
                    py(y)
                );
            }
        } else if !s.points.is_empty() {
            let pts: Vec<String> = s
                .points
                .iter()
                .map(|&(x, y)| format!("{:.2},{:.2}", px(x), py(y)))
                .collect();
            let _ = writeln!(
                out,
                r#"<polyline points="{}" fill="none" stroke="{color}" stroke-width="2"/>"#,
                pts.join(" ")
            );
        }
        let ly = MARGIN_TOP + 10.0 + 16.0 * k as f64;
        let lx = MARGIN_LEFT + plot_w + 12.0;
        let _ = writeln!(
            out,
            r#"<rect x="{lx:.2}" y="{:.2}" width="10" height="10" fill="{color}"/><text x="{:.2}" y="{ly:.2}">{}</text>"#,
            ly - 9.0,
            lx + 14.0,
            esc(&s.label)
        );
    }
    out.push_str("</svg>\n");
    Ok(out)
}
