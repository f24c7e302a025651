//! Gate netlists placed in time-space and their event-driven simulation.

mod adder;
mod sim;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;

pub use adder::{adder_placement, build_one_bit_adder, AdderLayout, ADDER_GATES, ADDER_INPUTS};
pub use sim::{completion_times, simulate, SimOptions, Settlement, TimedEvent, Timeline};

use crate::error::{ensure_finite, ensure_non_negative, Error, Result};
use crate::timespace::TimePoint;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum GateKind {
    And,
    Or,
    Xor,
    Not,
    Buf,
}

impl GateKind {
    pub fn as_str(self) -> &'static str {
        match self {
            GateKind::And => "AND",
            GateKind::Or => "OR",
            GateKind::Xor => "XOR",
            GateKind::Not => "NOT",
            GateKind::Buf => "BUF",
        }
    }

    fn is_unary(self) -> bool {
        matches!(self, GateKind::Not | GateKind::Buf)
    }

    pub fn eval(self, inputs: &[LogicValue]) -> LogicValue {
        use LogicValue::*;
        match self {
            GateKind::Buf => inputs[0],
            GateKind::Not => inputs[0].not(),
            GateKind::And => {
                if inputs.contains(&Zero) {
                    Zero
                } else if inputs.contains(&Undefined) {
                    Undefined
                } else {
                    One
                }
            }
            GateKind::Or => {
                if inputs.contains(&One) {
                    One
                } else if inputs.contains(&Undefined) {
                    Undefined
                } else {
                    Zero
                }
            }
            GateKind::Xor => inputs
                .iter()
                .try_fold(false, |acc, v| v.to_bool().map(|b| acc ^ b))
                .map_or(Undefined, LogicValue::from),
        }
    }
}

impl fmt::Display for GateKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for GateKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "AND" => GateKind::And,
            "OR" => GateKind::Or,
            "XOR" => GateKind::Xor,
            "NOT" => GateKind::Not,
            "BUF" => GateKind::Buf,
            other => return Err(Error::invalid(format!("unknown gate kind `{other}`"))),
        })
    }
}

/// Three-valued logic level. `Undefined` is the state of a net nothing has
/// driven yet.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub enum LogicValue {
    #[default]
    Undefined,
    Zero,
    One,
}

impl LogicValue {
    pub fn to_bool(self) -> Option<bool> {
        match self {
            LogicValue::Undefined => None,
            LogicValue::Zero => Some(false),
            LogicValue::One => Some(true),
        }
    }

    pub fn is_defined(self) -> bool {
        self != LogicValue::Undefined
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(self) -> Self {
        match self {
            LogicValue::Undefined => LogicValue::Undefined,
            LogicValue::Zero => LogicValue::One,
            LogicValue::One => LogicValue::Zero,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            LogicValue::Undefined => "X",
            LogicValue::Zero => "0",
            LogicValue::One => "1",
        }
    }
}

impl From<bool> for LogicValue {
    fn from(b: bool) -> Self {
        if b {
            LogicValue::One
        } else {
            LogicValue::Zero
        }
    }
}

impl fmt::Display for LogicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for LogicValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "0" => Ok(LogicValue::Zero),
            "1" => Ok(LogicValue::One),
            "X" | "x" => Ok(LogicValue::Undefined),
            other => Err(Error::invalid(format!("bad logic value `{other}`"))),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Gate {
    pub id: String,
    pub kind: GateKind,
    pub position: TimePoint,
    pub operating_time: f64,
    pub inputs: Vec<String>,
    pub output_net: String,
}

/// A primary input. It drives the net of the same name.
#[derive(Debug, Clone, PartialEq)]
pub struct InputTerminal {
    pub name: String,
    pub position: TimePoint,
}

#[derive(Debug, Clone, PartialEq)]
pub struct OutputPort {
    pub name: String,
    pub net: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct StimulusEntry {
    pub input: String,
    pub time: f64,
    pub value: bool,
}

#[derive(Debug, Clone, PartialEq, Default)]
pub struct Netlist {
    pub gates: Vec<Gate>,
    pub inputs: Vec<InputTerminal>,
    pub outputs: Vec<OutputPort>,
    pub stimuli: Vec<StimulusEntry>,
}

impl Netlist {
    pub fn add_input(&mut self, name: impl Into<String>, position: TimePoint) -> &mut Self {
        self.inputs.push(InputTerminal {
            name: name.into(),
            position,
        });
        self
    }

    pub fn add_gate(
        &mut self,
        id: impl Into<String>,
        kind: GateKind,
        position: TimePoint,
        operating_time: f64,
        output_net: impl Into<String>,
        inputs: &[&str],
    ) -> &mut Self {
        self.gates.push(Gate {
            id: id.into(),
            kind,
            position,
            operating_time,
            inputs: inputs.iter().map(|s| s.to_string()).collect(),
            output_net: output_net.into(),
        });
        self
    }

    pub fn add_output(&mut self, name: impl Into<String>, net: impl Into<String>) -> &mut Self {
        self.outputs.push(OutputPort {
            name: name.into(),
            net: net.into(),
        });
        self
    }

    pub fn set(&mut self, input: impl Into<String>, time: f64, value: bool) -> &mut Self {
        self.stimuli.push(StimulusEntry {
            input: input.into(),
            time,
            value,
        });
        self
    }

    pub fn gate(&self, id: &str) -> Option<&Gate> {
        self.gates.iter().find(|g| g.id == id)
    }

    pub fn gate_mut(&mut self, id: &str) -> Option<&mut Gate> {
        self.gates.iter_mut().find(|g| g.id == id)
    }

    /// Position of the element driving `net`.
    pub fn driver_position(&self, net: &str) -> Option<TimePoint> {
        self.inputs
            .iter()
            .find(|i| i.name == net)
            .map(|i| i.position)
            .or_else(|| {
                self.gates
                    .iter()
                    .find(|g| g.output_net == net)
                    .map(|g| g.position)
            })
    }

    pub fn validate(&self) -> Result<()> {
        Compiled::new(self).map(|_| ())
    }

    /// Pure Boolean evaluation of every net given one value per input.
    /// Inputs missing from `assignment` stay `Undefined`.
    pub fn evaluate_static(&self, assignment: &HashMap<&str, bool>) -> Result<HashMap<String, LogicValue>> {
        let c = Compiled::new(self)?;
        let mut values: HashMap<String, LogicValue> = self
            .inputs
            .iter()
            .map(|i| {
                let v = assignment
                    .get(i.name.as_str())
                    .map_or(LogicValue::Undefined, |&b| b.into());
                (i.name.clone(), v)
            })
            .collect();
        for &g in &c.topo_order {
            let gate = &self.gates[g];
            let ins: Vec<_> = gate.inputs.iter().map(|n| values[n]).collect();
            values.insert(gate.output_net.clone(), gate.kind.eval(&ins));
        }
        Ok(values)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum Driver {
    Input(usize),
    Gate(usize),
}

/// Validated, index-based view of a netlist.
#[derive(Debug)]
pub(crate) struct Compiled {
    pub net_names: Vec<String>,
    pub net_index: HashMap<String, usize>,
    pub driver: Vec<Driver>,
    /// (gate, pin) pairs fed by each net.
    pub sinks: Vec<Vec<(usize, usize)>>,
    /// Net index of every gate input pin.
    pub gate_inputs: Vec<Vec<usize>>,
    pub gate_output: Vec<usize>,
    pub topo_order: Vec<usize>,
}

impl Compiled {
    pub fn new(netlist: &Netlist) -> Result<Self> {
        let mut ids: BTreeMap<&str, &str> = BTreeMap::new();
        let mut net_names = Vec::new();
        let mut net_index = HashMap::new();
        let mut driver = Vec::new();

        for (i, input) in netlist.inputs.iter().enumerate() {
            input.position.validate()?;
            if ids.insert(&input.name, "input").is_some() {
                return Err(Error::invalid(format!("duplicate element name `{}`", input.name)));
            }
            net_index.insert(input.name.clone(), net_names.len());
            net_names.push(input.name.clone());
            driver.push(Driver::Input(i));
        }
        for (g, gate) in netlist.gates.iter().enumerate() {
            gate.position.validate()?;
            ensure_non_negative("operating time", gate.operating_time)?;
            if ids.insert(&gate.id, "gate").is_some() {
                return Err(Error::invalid(format!("duplicate element name `{}`", gate.id)));
            }
            let arity_ok = if gate.kind.is_unary() {
                gate.inputs.len() == 1
            } else {
                gate.inputs.len() >= 2
            };
            if !arity_ok {
                return Err(Error::invalid(format!(
                    "gate `{}`: {} takes {} input(s), got {}",
                    gate.id,
                    gate.kind,
                    if gate.kind.is_unary() { "1" } else { "2 or more" },
                    gate.inputs.len()
                )));
            }
            if gate.inputs.contains(&gate.output_net) {
                return Err(Error::Cycle {
                    path: vec![gate.id.clone(), gate.id.clone()],
                });
            }
            if net_index.contains_key(&gate.output_net) {
                return Err(Error::invalid(format!(
                    "net `{}` has more than one driver",
                    gate.output_net
                )));
            }
            net_index.insert(gate.output_net.clone(), net_names.len());
            net_names.push(gate.output_net.clone());
            driver.push(Driver::Gate(g));
        }

        let mut sinks = vec![Vec::new(); net_names.len()];
        let mut gate_inputs = Vec::with_capacity(netlist.gates.len());
        for (g, gate) in netlist.gates.iter().enumerate() {
            let mut pins = Vec::with_capacity(gate.inputs.len());
            for (pin, net) in gate.inputs.iter().enumerate() {
                let &n = net_index.get(net).ok_or_else(|| {
                    Error::invalid(format!("gate `{}`: unknown net `{net}`", gate.id))
                })?;
                sinks[n].push((g, pin));
                pins.push(n);
            }
            gate_inputs.push(pins);
        }
        let gate_output = netlist
            .gates
            .iter()
            .map(|g| net_index[&g.output_net])
            .collect();

        for out in &netlist.outputs {
            if !net_index.contains_key(&out.net) {
                return Err(Error::invalid(format!(
                    "output `{}`: unknown net `{}`",
                    out.name, out.net
                )));
            }
        }
        for s in &netlist.stimuli {
            ensure_finite("stimulus time", s.time)?;
            if !netlist.inputs.iter().any(|i| i.name == s.input) {
                return Err(Error::invalid(format!("stimulus on unknown input `{}`", s.input)));
            }
        }
        let mut seen = std::collections::HashSet::new();
        for s in &netlist.stimuli {
            if !seen.insert((s.input.as_str(), s.time.to_bits())) {
                return Err(Error::invalid(format!(
                    "input `{}` is set twice at time {}",
                    s.input, s.time
                )));
            }
        }

        let mut compiled = Compiled {
            net_names,
            net_index,
            driver,
            sinks,
            gate_inputs,
            gate_output,
            topo_order: Vec::new(),
        };
        compiled.topo_order = compiled.topological_order(netlist)?;
        Ok(compiled)
    }

    /// Depth-first topological sort over gates; a back edge is reported as
    /// the cycle it closes.
    fn topological_order(&self, netlist: &Netlist) -> Result<Vec<usize>> {
        #[derive(Clone, Copy, PartialEq)]
        enum Mark {
            New,
            Open,
            Done,
        }
        let n = netlist.gates.len();
        let mut mark = vec![Mark::New; n];
        let mut order = Vec::with_capacity(n);
        let successors = |g: usize| self.sinks[self.gate_output[g]].iter().map(|&(s, _)| s);

        for root in 0..n {
            if mark[root] != Mark::New {
                continue;
            }
            // (gate, next successor index)
            let mut stack: Vec<(usize, usize)> = vec![(root, 0)];
            mark[root] = Mark::Open;
            while let Some(&mut (g, ref mut next)) = stack.last_mut() {
                if let Some(s) = successors(g).nth(*next) {
                    *next += 1;
                    match mark[s] {
                        Mark::New => {
                            mark[s] = Mark::Open;
                            stack.push((s, 0));
                        }
                        Mark::Open => {
                            let start = stack.iter().position(|&(x, _)| x == s).unwrap();
                            let mut path: Vec<String> = stack[start..]
                                .iter()
                                .map(|&(x, _)| netlist.gates[x].id.clone())
                                .collect();
                            path.push(netlist.gates[s].id.clone());
                            return Err(Error::Cycle { path });
                        }
                        Mark::Done => {}
                    }
                } else {
                    mark[g] = Mark::Done;
                    order.push(g);
                    stack.pop();
                }
            }
        }
        order.reverse();
        Ok(order)
    }
}
