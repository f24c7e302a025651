//! C ABI over `tempograph`.
//!
//! Every function returns a [`TgStatus`] and writes results through out
//! pointers. On failure the out pointers are left untouched and
//! [`tg_last_error_message`] describes the error. Nothing unwinds across
//! the boundary: a panic is caught and reported as `TG_STATUS_PANIC`.
//!
//! Netlists and timelines are opaque handles created by this library and
//! released with their `_free` function.

#![allow(clippy::missing_safety_doc)]

use std::cell::RefCell;
use std::collections::BTreeMap;
use std::ffi::{c_char, CStr, CString};
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::ptr;

use tempograph::bus::{simulate_bus, BusScenario};
use tempograph::dispersion::{edvac_preset, DispersionInputs, DispersionReport};
use tempograph::distributed::{alpha_from_efficiency, amdahl_efficiency, simulate_distributed, DistributedScenario};
use tempograph::gates::{completion_times, simulate, LogicValue, Netlist, Settlement, SimOptions};
use tempograph::io::parse_netlist;
use tempograph::timespace::{apparent_time, chain_two, transfer_time};
use tempograph::{ComputingElement, Error, InteractionSpeed, TimePoint};

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TgStatus {
    Ok = 0,
    InvalidInput = 1,
    NullPointer = 2,
    Cycle = 3,
    Parse = 4,
    OutOfRange = 5,
    Panic = 6,
}

thread_local! {
    static LAST_ERROR: RefCell<Option<CString>> = const { RefCell::new(None) };
}

fn set_error(msg: &str) {
    let c = CString::new(msg.replace('\0', " ")).expect("interior NULs removed");
    LAST_ERROR.with(|e| *e.borrow_mut() = Some(c));
}

/// Message for the last failed call on this thread, or NULL. Valid until
/// the next call into this library on the same thread.
#[no_mangle]
pub extern "C" fn tg_last_error_message() -> *const c_char {
    LAST_ERROR.with(|e| e.borrow().as_ref().map_or(ptr::null(), |c| c.as_ptr()))
}

struct Failure(TgStatus, String);

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let status = match e {
            Error::Cycle { .. } => TgStatus::Cycle,
            Error::Parse { .. } => TgStatus::Parse,
            _ => TgStatus::InvalidInput,
        };
        Failure(status, e.to_string())
    }
}

fn null(what: &str) -> Failure {
    Failure(TgStatus::NullPointer, format!("`{what}` is NULL"))
}

fn guard(f: impl FnOnce() -> Result<(), Failure>) -> TgStatus {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(Ok(())) => {
            LAST_ERROR.with(|e| *e.borrow_mut() = None);
            TgStatus::Ok
        }
        Ok(Err(Failure(status, msg))) => {
            set_error(&msg);
            status
        }
        Err(p) => {
            let msg = p
                .downcast_ref::<&str>()
                .map(|s| s.to_string())
                .or_else(|| p.downcast_ref::<String>().cloned())
                .unwrap_or_else(|| "unknown panic".into());
            set_error(&format!("internal panic: {msg}"));
            TgStatus::Panic
        }
    }
}

unsafe fn out<'a, T>(p: *mut T, what: &str) -> Result<&'a mut T, Failure> {
    p.as_mut().ok_or_else(|| null(what))
}

unsafe fn slice<'a, T>(p: *const T, len: usize, what: &str) -> Result<&'a [T], Failure> {
    if len == 0 {
        Ok(&[])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts(p, len))
    }
}

unsafe fn slice_mut<'a, T>(p: *mut T, len: usize, what: &str) -> Result<&'a mut [T], Failure> {
    if len == 0 {
        Ok(&mut [])
    } else if p.is_null() {
        Err(null(what))
    } else {
        Ok(std::slice::from_raw_parts_mut(p, len))
    }
}

unsafe fn text<'a>(p: *const c_char, what: &str) -> Result<&'a str, Failure> {
    if p.is_null() {
        return Err(null(what));
    }
    CStr::from_ptr(p)
        .to_str()
        .map_err(|_| Failure(TgStatus::InvalidInput, format!("`{what}` is not UTF-8")))
}

/// A position in time units.
#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TgPoint {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl From<TgPoint> for TimePoint {
    fn from(p: TgPoint) -> Self {
        TimePoint::new3(p.x, p.y, p.z)
    }
}

/// Polyline length `from -> waypoints... -> to`. `waypoints` may be NULL
/// when `n_waypoints` is 0.
#[no_mangle]
pub unsafe extern "C" fn tg_transfer_time(
    from: TgPoint,
    to: TgPoint,
    waypoints: *const TgPoint,
    n_waypoints: usize,
    out_time: *mut f64,
) -> TgStatus {
    guard(|| {
        let w: Vec<TimePoint> = slice(waypoints, n_waypoints, "waypoints")?
            .iter()
            .map(|&p| p.into())
            .collect();
        let t = transfer_time(&from.into(), &to.into(), &w)?;
        *out(out_time, "out_time")? = t;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tg_apparent_time(t_p: f64, t_t: f64, out_time: *mut f64) -> TgStatus {
    guard(|| {
        let v = apparent_time(t_p, t_t)?;
        *out(out_time, "out_time")? = v;
        Ok(())
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TgChainTiming {
    pub t_t: f64,
    pub t_i: f64,
    pub completion: f64,
    pub apparent: f64,
    /// `t_t / t_p_source`, NaN when the source processing time is 0.
    pub ratio_r: f64,
}

#[no_mangle]
pub unsafe extern "C" fn tg_chain_two(
    source: TgPoint,
    t_p_source: f64,
    observer: TgPoint,
    t_p_observer: f64,
    out_timing: *mut TgChainTiming,
) -> TgStatus {
    guard(|| {
        let c = chain_two(
            &ComputingElement::new("source", source.into(), t_p_source),
            &ComputingElement::new("observer", observer.into(), t_p_observer),
            &[],
        )?;
        *out(out_timing, "out_timing")? = TgChainTiming {
            t_t: c.t_t,
            t_i: c.t_i,
            completion: c.completion,
            apparent: c.apparent,
            ratio_r: c.ratio_r.unwrap_or(f64::NAN),
        };
        Ok(())
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TgDispersionReport {
    pub t_t_min: f64,
    pub t_t_max: f64,
    pub t_p: f64,
    pub proc_transfer_rel: f64,
    pub cache_transfer_rel: f64,
    pub dispersion: f64,
}

impl From<DispersionReport> for TgDispersionReport {
    fn from(r: DispersionReport) -> Self {
        Self {
            t_t_min: r.t_t_min,
            t_t_max: r.t_t_max,
            t_p: r.t_p,
            proc_transfer_rel: r.proc_transfer_rel,
            cache_transfer_rel: r.cache_transfer_rel,
            dispersion: r.dispersion,
        }
    }
}

/// Distances in meters, clock period in seconds, speed in m/s.
#[no_mangle]
pub unsafe extern "C" fn tg_dispersion(
    d_min: f64,
    d_max: f64,
    clock_period: f64,
    speed: f64,
    out_report: *mut TgDispersionReport,
) -> TgStatus {
    guard(|| {
        let inputs = DispersionInputs {
            d_min,
            d_max,
            clock_period,
        };
        let r = inputs.report(InteractionSpeed::new(speed)?)?;
        *out(out_report, "out_report")? = r.into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tg_edvac_dispersion(out_report: *mut TgDispersionReport) -> TgStatus {
    guard(|| {
        *out(out_report, "out_report")? = edvac_preset().report().into();
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tg_amdahl_efficiency(alpha: f64, n: u64, out_efficiency: *mut f64) -> TgStatus {
    guard(|| {
        let e = amdahl_efficiency(alpha, n)?;
        *out(out_efficiency, "out_efficiency")? = e;
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tg_alpha_from_efficiency(efficiency: f64, n: u64, out_alpha: *mut f64) -> TgStatus {
    guard(|| {
        let a = alpha_from_efficiency(efficiency, n)?;
        *out(out_alpha, "out_alpha")? = a;
        Ok(())
    })
}

/// Opaque parsed netlist.
pub struct TgNetlist {
    inner: Netlist,
}

/// Opaque simulation result. Strings returned by its accessors live as
/// long as the handle.
pub struct TgTimeline {
    events: Vec<(f64, CString, CString, LogicValue, bool)>,
    settle: BTreeMap<String, Settlement>,
}

/// Parses the line-based netlist format and validates it.
#[no_mangle]
pub unsafe extern "C" fn tg_netlist_parse(source: *const c_char, out_netlist: *mut *mut TgNetlist) -> TgStatus {
    guard(|| {
        let slot = out(out_netlist, "out_netlist")?;
        let n = parse_netlist(text(source, "source")?, "<netlist>")?;
        n.validate()?;
        *slot = Box::into_raw(Box::new(TgNetlist { inner: n }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tg_netlist_free(netlist: *mut TgNetlist) {
    if !netlist.is_null() {
        drop(Box::from_raw(netlist));
    }
}

#[no_mangle]
pub unsafe extern "C" fn tg_netlist_simulate(
    netlist: *const TgNetlist,
    emit_undefined: bool,
    out_timeline: *mut *mut TgTimeline,
) -> TgStatus {
    guard(|| {
        let n = &netlist.as_ref().ok_or_else(|| null("netlist"))?.inner;
        let slot = out(out_timeline, "out_timeline")?;
        let tl = simulate(n, SimOptions { emit_undefined })?;
        let cstr = |s: &str| CString::new(s).map_err(|_| Failure(TgStatus::InvalidInput, "NUL in name".into()));
        let events = tl
            .iter()
            .map(|e| Ok((e.time, cstr(&e.gate_id)?, cstr(&e.net)?, e.value, e.provisional)))
            .collect::<Result<_, Failure>>()?;
        let settle = completion_times(&tl, n);
        *slot = Box::into_raw(Box::new(TgTimeline { events, settle }));
        Ok(())
    })
}

#[no_mangle]
pub unsafe extern "C" fn tg_timeline_free(timeline: *mut TgTimeline) {
    if !timeline.is_null() {
        drop(Box::from_raw(timeline));
    }
}

/// Number of events, or 0 for NULL.
#[no_mangle]
pub unsafe extern "C" fn tg_timeline_len(timeline: *const TgTimeline) -> usize {
    timeline.as_ref().map_or(0, |t| t.events.len())
}

/// -1 undefined, 0, 1.
fn logic(v: LogicValue) -> i8 {
    match v {
        LogicValue::Undefined => -1,
        LogicValue::Zero => 0,
        LogicValue::One => 1,
    }
}

#[repr(C)]
#[derive(Debug, Clone, Copy)]
pub struct TgEvent {
    pub time: f64,
    /// Owned by the timeline.
    pub gate_id: *const c_char,
    /// Owned by the timeline.
    pub net: *const c_char,
    /// -1 undefined, 0 or 1.
    pub value: i8,
    pub provisional: bool,
}

#[no_mangle]
pub unsafe extern "C" fn tg_timeline_event(
    timeline: *const TgTimeline,
    index: usize,
    out_event: *mut TgEvent,
) -> TgStatus {
    guard(|| {
        let t = timeline.as_ref().ok_or_else(|| null("timeline"))?;
        let slot = out(out_event, "out_event")?;
        let (time, gate, net, value, provisional) = t.events.get(index).ok_or_else(|| {
            Failure(
                TgStatus::OutOfRange,
                format!("event {index} out of range for {} events", t.events.len()),
            )
        })?;
        *slot = TgEvent {
            time: *time,
            gate_id: gate.as_ptr(),
            net: net.as_ptr(),
            value: logic(*value),
            provisional: *provisional,
        };
        Ok(())
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TgSettle {
    pub settled: bool,
    /// Settle time, or the time of the last value seen when unsettled; NaN
    /// if the output never changed.
    pub time: f64,
    /// -1 undefined, 0 or 1.
    pub value: i8,
}

/// Settlement of a declared output, by output name.
#[no_mangle]
pub unsafe extern "C" fn tg_timeline_settle(
    timeline: *const TgTimeline,
    output: *const c_char,
    out_settle: *mut TgSettle,
) -> TgStatus {
    guard(|| {
        let t = timeline.as_ref().ok_or_else(|| null("timeline"))?;
        let name = text(output, "output")?;
        let slot = out(out_settle, "out_settle")?;
        let s = t
            .settle
            .get(name)
            .ok_or_else(|| Failure(TgStatus::InvalidInput, format!("no output named `{name}`")))?;
        *slot = match *s {
            Settlement::Settled { time, value } => TgSettle {
                settled: true,
                time,
                value: logic(value),
            },
            Settlement::Unsettled { last: Some((time, value)) } => TgSettle {
                settled: false,
                time,
                value: logic(value),
            },
            Settlement::Unsettled { last: None } => TgSettle {
                settled: false,
                time: f64::NAN,
                value: -1,
            },
        };
        Ok(())
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TgElement {
    pub position: TgPoint,
    pub processing_time: f64,
}

fn elements(items: &[TgElement], prefix: &str) -> Vec<ComputingElement> {
    items
        .iter()
        .enumerate()
        .map(|(i, e)| ComputingElement::new(format!("{prefix}{}", i + 1), e.position.into(), e.processing_time))
        .collect()
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TgCoreRecord {
    pub request_sent: f64,
    pub request_arrived: f64,
    pub grant_issued: f64,
    pub grant_arrived: f64,
    pub data_at_bus: f64,
    pub message_done: f64,
}

/// Simulates `n_cores` cores sharing one bus. `out_records` and
/// `out_grant_order` must each hold `n_cores` entries; records are indexed
/// like `cores`.
#[no_mangle]
pub unsafe extern "C" fn tg_bus_simulate(
    cores: *const TgElement,
    n_cores: usize,
    bus: TgPoint,
    word_transfer_time: f64,
    out_records: *mut TgCoreRecord,
    out_grant_order: *mut usize,
    out_total: *mut f64,
) -> TgStatus {
    guard(|| {
        let s = BusScenario {
            cores: elements(slice(cores, n_cores, "cores")?, "core"),
            bus_position: bus.into(),
            word_transfer_time,
        };
        let records = slice_mut(out_records, n_cores, "out_records")?;
        let order = slice_mut(out_grant_order, n_cores, "out_grant_order")?;
        let total = out(out_total, "out_total")?;
        let tl = simulate_bus(&s)?;
        for (dst, r) in records.iter_mut().zip(&tl.records) {
            *dst = TgCoreRecord {
                request_sent: r.request_sent,
                request_arrived: r.request_arrived,
                grant_issued: r.grant_issued,
                grant_arrived: r.grant_arrived,
                data_at_bus: r.data_at_bus,
                message_done: r.message_done,
            };
        }
        order.copy_from_slice(&tl.grant_order);
        *total = tl.total_completion;
        Ok(())
    })
}

#[repr(C)]
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct TgFellowRecord {
    pub distance: f64,
    pub dispatched: f64,
    pub started: f64,
    pub finished: f64,
    pub arrived: f64,
    pub reception_start: f64,
    pub reception_end: f64,
}

/// Orchestrated fork-join run. The orchestrator's processing time is the
/// initial sequential work, each fellow's its share of the parallel work.
/// `out_records` must hold `n_fellows` entries.
#[no_mangle]
pub unsafe extern "C" fn tg_distributed_simulate(
    orchestrator: TgElement,
    fellows: *const TgElement,
    n_fellows: usize,
    dispatch_time: f64,
    collect_time: f64,
    closing_time: f64,
    out_records: *mut TgFellowRecord,
    out_total: *mut f64,
    out_critical: *mut usize,
) -> TgStatus {
    guard(|| {
        let s = DistributedScenario {
            orchestrator: ComputingElement::new(
                "orchestrator",
                orchestrator.position.into(),
                orchestrator.processing_time,
            ),
            fellows: elements(slice(fellows, n_fellows, "fellows")?, "fellow"),
            dispatch_time,
            collect_time,
            closing_time,
        };
        let records = slice_mut(out_records, n_fellows, "out_records")?;
        let total = out(out_total, "out_total")?;
        let critical = out(out_critical, "out_critical")?;
        let run = simulate_distributed(&s)?;
        for (dst, r) in records.iter_mut().zip(&run.fellows) {
            *dst = TgFellowRecord {
                distance: r.distance,
                dispatched: r.dispatched,
                started: r.started,
                finished: r.finished,
                arrived: r.arrived,
                reception_start: r.reception_start,
                reception_end: r.reception_end,
            };
        }
        *total = run.total_time;
        *critical = run.critical_fellow;
        Ok(())
    })
}
