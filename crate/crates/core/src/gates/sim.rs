//! Event-driven simulation of placed gates.
//!
//! Every signal carries a logic value and a `settled` flag. A stimulus is
//! settled once it is the last one scheduled for its input; a gate output is
//! settled once every input pin holds a settled signal. An output event is
//! emitted whenever either part of a gate's signal changes, so a gate that
//! already shows its final value early (a provisional event) emits a second,
//! settled event when the last influence reaches it.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet, BinaryHeap, HashMap};

use super::{Compiled, Driver, LogicValue, Netlist};
use crate::error::{Error, Result};
use crate::timespace::TimePoint;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SimOptions {
    /// Also emit events for gates whose evaluated output is `Undefined`.
    pub emit_undefined: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct TimedEvent {
    pub time: f64,
    pub gate_id: String,
    pub net: String,
    pub value: LogicValue,
    /// The gate had not yet seen every stimulus in its fan-in cone.
    pub provisional: bool,
}

/// Gate output events ordered by time, then `(gate_id, net)`.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Timeline {
    pub events: Vec<TimedEvent>,
}

impl Timeline {
    pub fn is_empty(&self) -> bool {
        self.events.is_empty()
    }

    pub fn len(&self) -> usize {
        self.events.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = &TimedEvent> {
        self.events.iter()
    }

    pub fn on_net<'a>(&'a self, net: &'a str) -> impl Iterator<Item = &'a TimedEvent> + 'a {
        self.events.iter().filter(move |e| e.net == net)
    }

    pub fn by_gate<'a>(&'a self, gate: &'a str) -> impl Iterator<Item = &'a TimedEvent> + 'a {
        self.events.iter().filter(move |e| e.gate_id == gate)
    }

    pub fn end_time(&self) -> Option<f64> {
        self.events.last().map(|e| e.time)
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Settlement {
    Settled { time: f64, value: LogicValue },
    /// Never reached a settled event; `last` is the latest value seen, if any.
    Unsettled { last: Option<(f64, LogicValue)> },
}

impl Settlement {
    pub fn time(&self) -> Option<f64> {
        match *self {
            Settlement::Settled { time, .. } => Some(time),
            Settlement::Unsettled { .. } => None,
        }
    }

    pub fn value(&self) -> Option<LogicValue> {
        match *self {
            Settlement::Settled { value, .. } => Some(value),
            Settlement::Unsettled { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
struct Signal {
    value: LogicValue,
    settled: bool,
}

#[derive(Debug, Clone, Copy)]
enum Pending {
    Drive { net: usize, signal: Signal },
    Arrive { gate: usize, pin: usize, signal: Signal },
}

#[derive(Debug)]
struct Queued {
    time: f64,
    seq: u64,
    what: Pending,
}

impl PartialEq for Queued {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Queued {}

impl PartialOrd for Queued {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Queued {
    // reversed: BinaryHeap is a max-heap
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .time
            .total_cmp(&self.time)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

struct Queue {
    heap: BinaryHeap<Queued>,
    seq: u64,
}

impl Queue {
    fn push(&mut self, time: f64, what: Pending) {
        self.heap.push(Queued {
            time,
            seq: self.seq,
            what,
        });
        self.seq += 1;
    }

    fn next_time(&self) -> Option<f64> {
        self.heap.peek().map(|q| q.time)
    }

    /// Removes everything scheduled exactly at `time`, in scheduling order.
    fn drain_at(&mut self, time: f64) -> Vec<Pending> {
        let mut out = Vec::new();
        while self.heap.peek().is_some_and(|q| q.time == time) {
            out.push(self.heap.pop().unwrap().what);
        }
        out
    }
}

pub fn simulate(netlist: &Netlist, options: SimOptions) -> Result<Timeline> {
    let c = Compiled::new(netlist)?;
    if netlist.stimuli.is_empty() {
        return Err(Error::invalid("netlist has no stimuli"));
    }

    let driver_pos = |net: usize| -> TimePoint {
        match c.driver[net] {
            Driver::Input(i) => netlist.inputs[i].position,
            Driver::Gate(g) => netlist.gates[g].position,
        }
    };
    // wire delay from each net's driver to each of its sinks
    let wire: Vec<Vec<f64>> = (0..c.net_names.len())
        .map(|n| {
            let from = driver_pos(n);
            c.sinks[n]
                .iter()
                .map(|&(g, _)| from.distance(&netlist.gates[g].position))
                .collect()
        })
        .collect();

    let mut queue = Queue {
        heap: BinaryHeap::new(),
        seq: 0,
    };
    let mut last_stimulus: HashMap<&str, f64> = HashMap::new();
    for s in &netlist.stimuli {
        let t = last_stimulus.entry(s.input.as_str()).or_insert(s.time);
        *t = t.max(s.time);
    }
    let mut stimuli: Vec<_> = netlist.stimuli.iter().collect();
    stimuli.sort_by(|a, b| a.time.total_cmp(&b.time).then_with(|| a.input.cmp(&b.input)));
    for s in stimuli {
        let signal = Signal {
            value: s.value.into(),
            settled: last_stimulus[s.input.as_str()] == s.time,
        };
        queue.push(
            s.time,
            Pending::Drive {
                net: c.net_index[&s.input],
                signal,
            },
        );
    }

    let mut pins: Vec<Vec<Signal>> = c
        .gate_inputs
        .iter()
        .map(|p| vec![Signal::default(); p.len()])
        .collect();
    let mut projected: Vec<Option<Signal>> = vec![None; netlist.gates.len()];
    let mut events = Vec::new();
    let mut arrivals = Vec::new();
    let mut touched = BTreeSet::new();

    while let Some(now) = queue.next_time() {
        // delta cycles: zero-delay gates and zero-length wires can schedule
        // more work at `now`
        loop {
            let batch = queue.drain_at(now);
            if batch.is_empty() {
                break;
            }
            arrivals.clear();
            let mut pending = batch;
            while !pending.is_empty() {
                for item in pending {
                    match item {
                        Pending::Drive { net, signal } => {
                            if let Driver::Gate(g) = c.driver[net] {
                                events.push(TimedEvent {
                                    time: now,
                                    gate_id: netlist.gates[g].id.clone(),
                                    net: c.net_names[net].clone(),
                                    value: signal.value,
                                    provisional: !signal.settled,
                                });
                            }
                            for (k, &(gate, pin)) in c.sinks[net].iter().enumerate() {
                                queue.push(now + wire[net][k], Pending::Arrive { gate, pin, signal });
                            }
                        }
                        arrive @ Pending::Arrive { .. } => arrivals.push(arrive),
                    }
                }
                pending = queue.drain_at(now);
            }

            touched.clear();
            for a in &arrivals {
                if let Pending::Arrive { gate, pin, signal } = *a {
                    if pins[gate][pin] != signal {
                        pins[gate][pin] = signal;
                        touched.insert(gate);
                    }
                }
            }

            for &g in &touched {
                let gate = &netlist.gates[g];
                let inputs: Vec<LogicValue> = pins[g].iter().map(|s| s.value).collect();
                let value = gate.kind.eval(&inputs);
                if !value.is_defined() && !options.emit_undefined {
                    continue;
                }
                let signal = Signal {
                    value,
                    settled: pins[g].iter().all(|s| s.settled),
                };
                if projected[g] == Some(signal) {
                    continue;
                }
                projected[g] = Some(signal);
                queue.push(
                    now + gate.operating_time,
                    Pending::Drive {
                        net: c.gate_output[g],
                        signal,
                    },
                );
            }
        }
    }

    events.sort_by(|a, b| {
        a.time
            .total_cmp(&b.time)
            .then_with(|| a.gate_id.cmp(&b.gate_id))
            .then_with(|| a.net.cmp(&b.net))
    });
    Ok(Timeline { events })
}

/// Settle time and value of every declared output, keyed by output name.
pub fn completion_times(timeline: &Timeline, netlist: &Netlist) -> BTreeMap<String, Settlement> {
    netlist
        .outputs
        .iter()
        .map(|out| {
            let settlement = if netlist.inputs.iter().any(|i| i.name == out.net) {
                netlist
                    .stimuli
                    .iter()
                    .filter(|s| s.input == out.net)
                    .max_by(|a, b| a.time.total_cmp(&b.time))
                    .map_or(Settlement::Unsettled { last: None }, |s| Settlement::Settled {
                        time: s.time,
                        value: s.value.into(),
                    })
            } else {
                match timeline.on_net(&out.net).last() {
                    Some(e) if !e.provisional => Settlement::Settled {
                        time: e.time,
                        value: e.value,
                    },
                    Some(e) => Settlement::Unsettled {
                        last: Some((e.time, e.value)),
                    },
                    None => Settlement::Unsettled { last: None },
                }
            };
            (out.name.clone(), settlement)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gates::{adder_placement, build_one_bit_adder, AdderLayout, GateKind};
    use LogicValue::*;

    fn single_buf() -> Netlist {
        let mut n = Netlist::default();
        n.add_input("src", TimePoint::ORIGIN)
            .add_gate("B", GateKind::Buf, TimePoint::new(1.0, 0.0), 0.5, "out", &["src"])
            .add_output("out", "out")
            .set("src", 0.0, true);
        n
    }

    fn zero_adder(a: bool, b: bool, cin: bool) -> Netlist {
        let mut n = build_one_bit_adder(&adder_placement(AdderLayout::Zero), 1.0).unwrap();
        n.set("a", 0.0, a).set("b", 0.0, b).set("cin", 0.0, cin);
        n
    }

    #[test]
    fn single_buffer_hop() {
        let n = single_buf();
        let tl = simulate(&n, SimOptions::default()).unwrap();
        assert_eq!(
            tl.events,
            vec![TimedEvent {
                time: 1.5,
                gate_id: "B".into(),
                net: "out".into(),
                value: One,
                provisional: false,
            }]
        );
        let done = completion_times(&tl, &n);
        assert_eq!(done["out"], Settlement::Settled { time: 1.5, value: One });
    }

    #[test]
    fn adder_one_plus_one() {
        let n = zero_adder(true, true, false);
        let tl = simulate(&n, SimOptions::default()).unwrap();
        let done = completion_times(&tl, &n);
        assert_eq!(done["sum"], Settlement::Settled { time: 2.0, value: Zero });
        assert_eq!(done["cout"], Settlement::Settled { time: 3.0, value: One });

        // OR1 shows the carry before its second operand has settled
        let or_events: Vec<_> = tl.by_gate("OR1").collect();
        assert!(or_events.len() >= 2);
        let first = or_events[0];
        assert!(first.provisional);
        assert_eq!(first.value, One);
        assert!(first.time < 3.0);
        let last = or_events.last().unwrap();
        assert_eq!((last.time, last.value, last.provisional), (3.0, One, false));
    }

    #[test]
    fn adder_all_zero() {
        let n = zero_adder(false, false, false);
        let tl = simulate(&n, SimOptions::default()).unwrap();
        let done = completion_times(&tl, &n);
        assert_eq!(done["sum"], Settlement::Settled { time: 2.0, value: Zero });
        assert_eq!(done["cout"], Settlement::Settled { time: 3.0, value: Zero });
    }

    #[test]
    fn undefined_outputs_are_suppressed() {
        let mut n = Netlist::default();
        n.add_input("a", TimePoint::ORIGIN)
            .add_input("b", TimePoint::ORIGIN)
            .add_gate("G", GateKind::And, TimePoint::ORIGIN, 1.0, "y", &["a", "b"])
            .add_output("y", "y")
            .set("a", 0.0, true);
        let tl = simulate(&n, SimOptions::default()).unwrap();
        assert!(tl.is_empty());
        assert_eq!(completion_times(&tl, &n)["y"], Settlement::Unsettled { last: None });

        let tl = simulate(&n, SimOptions { emit_undefined: true }).unwrap();
        assert_eq!(tl.len(), 1);
        assert_eq!(tl.events[0].value, Undefined);
        assert!(tl.events[0].provisional);
        assert_eq!(
            completion_times(&tl, &n)["y"],
            Settlement::Unsettled {
                last: Some((1.0, Undefined))
            }
        );
    }

    #[test]
    fn controlling_value_without_full_fan_in_stays_provisional() {
        let mut n = Netlist::default();
        n.add_input("a", TimePoint::ORIGIN)
            .add_input("b", TimePoint::ORIGIN)
            .add_gate("G", GateKind::And, TimePoint::ORIGIN, 1.0, "y", &["a", "b"])
            .add_output("y", "y")
            .set("a", 0.0, false);
        let tl = simulate(&n, SimOptions::default()).unwrap();
        assert_eq!(tl.len(), 1);
        assert!(tl.events[0].provisional);
        assert_eq!(tl.events[0].value, Zero);
        assert_eq!(
            completion_times(&tl, &n)["y"],
            Settlement::Unsettled {
                last: Some((1.0, Zero))
            }
        );
    }

    #[test]
    fn repeated_stimulus_settles_after_last() {
        let mut n = Netlist::default();
        n.add_input("a", TimePoint::ORIGIN)
            .add_gate("N", GateKind::Not, TimePoint::new(0.0, 1.0), 0.25, "y", &["a"])
            .add_output("y", "y")
            .set("a", 0.0, true)
            .set("a", 5.0, false);
        let tl = simulate(&n, SimOptions::default()).unwrap();
        let summary: Vec<_> = tl.iter().map(|e| (e.time, e.value, e.provisional)).collect();
        assert_eq!(summary, vec![(1.25, Zero, true), (6.25, One, false)]);
    }

    #[test]
    fn unchanged_value_and_state_is_suppressed() {
        let mut n = Netlist::default();
        n.add_input("a", TimePoint::ORIGIN)
            .add_gate("B", GateKind::Buf, TimePoint::ORIGIN, 1.0, "y", &["a"])
            .set("a", 0.0, true)
            .set("a", 1.0, true)
            .set("a", 2.0, true);
        let tl = simulate(&n, SimOptions::default()).unwrap();
        // provisional One at 1, settled One at 3; the middle stimulus changes nothing
        let summary: Vec<_> = tl.iter().map(|e| (e.time, e.provisional)).collect();
        assert_eq!(summary, vec![(1.0, true), (3.0, false)]);
    }

    #[test]
    fn zero_delay_chain_resolves_in_delta_cycles() {
        let mut n = Netlist::default();
        n.add_input("a", TimePoint::ORIGIN)
            .add_gate("N1", GateKind::Not, TimePoint::ORIGIN, 0.0, "x", &["a"])
            .add_gate("N2", GateKind::Not, TimePoint::ORIGIN, 0.0, "y", &["x"])
            .add_output("y", "y")
            .set("a", 2.0, true);
        let tl = simulate(&n, SimOptions::default()).unwrap();
        assert_eq!(tl.len(), 2);
        assert_eq!(
            completion_times(&tl, &n)["y"],
            Settlement::Settled { time: 2.0, value: One }
        );
    }

    #[test]
    fn no_stimuli_is_an_error() {
        let mut n = single_buf();
        n.stimuli.clear();
        assert!(simulate(&n, SimOptions::default()).is_err());
    }

    #[test]
    fn output_on_input_net() {
        let mut n = single_buf();
        n.add_output("echo", "src");
        let tl = simulate(&n, SimOptions::default()).unwrap();
        assert_eq!(
            completion_times(&tl, &n)["echo"],
            Settlement::Settled { time: 0.0, value: One }
        );
    }

    #[test]
    fn timeline_ordering_ties_by_gate_then_net() {
        let n = zero_adder(true, false, true);
        let tl = simulate(&n, SimOptions::default()).unwrap();
        for w in tl.events.windows(2) {
            let (a, b) = (&w[0], &w[1]);
            assert!(
                a.time < b.time || (a.time == b.time && (&a.gate_id, &a.net) <= (&b.gate_id, &b.net)),
                "{a:?} before {b:?}"
            );
        }
    }

    #[test]
    fn xor2_position_changes_sum_timing() {
        let run = |layout| {
            let mut n = build_one_bit_adder(&adder_placement(layout), 1.0).unwrap();
            n.set("a", 0.0, true).set("b", 0.0, false).set("cin", 0.0, true);
            let tl = simulate(&n, SimOptions::default()).unwrap();
            completion_times(&tl, &n)["sum"].time().unwrap()
        };
        let left = run(AdderLayout::Left);
        let right = run(AdderLayout::Right);
        assert_ne!(left, right);
    }

    #[test]
    fn moving_xor2_away_delays_sum() {
        let run = |x: f64| {
            let mut placement = adder_placement(AdderLayout::Zero);
            placement.insert("XOR2".into(), TimePoint::new(x, 0.0));
            let mut n = build_one_bit_adder(&placement, 1.0).unwrap();
            n.set("a", 0.0, false).set("b", 0.0, true).set("cin", 0.0, true);
            let tl = simulate(&n, SimOptions::default()).unwrap();
            completion_times(&tl, &n)["sum"].time().unwrap()
        };
        assert!(run(2.0) - run(1.0) >= 1.0 - 1e-12);
    }
}
