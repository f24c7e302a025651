//! Line-based netlist format.
//!
//! ```text
//! # comment
//! INPUT <name> <x> <y>
//! GATE <id> <AND|OR|XOR|NOT|BUF> <x> <y> <op_time> <out_net> <in_net...>
//! OUTPUT <name> <net>
//! SET <input_name> <time> <0|1>
//! ```

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::gates::{GateKind, Netlist};
use crate::timespace::TimePoint;

pub fn parse_netlist(text: &str, source_name: &str) -> Result<Netlist> {
    let mut netlist = Netlist::default();
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let err = |message: String| Error::Parse {
            source_name: source_name.to_string(),
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        let num = |idx: usize, what: &str| -> Result<f64> {
            let tok = tokens[idx];
            let v: f64 = tok
                .parse()
                .map_err(|_| err(format!("{what}: `{tok}` is not a number")))?;
            if !v.is_finite() {
                return Err(err(format!("{what} must be finite")));
            }
            Ok(v)
        };
        match tokens[0] {
            "INPUT" => {
                if tokens.len() != 4 {
                    return Err(err("expected `INPUT <name> <x> <y>`".into()));
                }
                netlist.add_input(tokens[1], TimePoint::new(num(2, "x")?, num(3, "y")?));
            }
            "GATE" => {
                if tokens.len() < 8 {
                    return Err(err(
                        "expected `GATE <id> <kind> <x> <y> <op_time> <out_net> <in_net...>`".into(),
                    ));
                }
                let kind: GateKind = tokens[2].parse().map_err(|e: Error| err(e.to_string()))?;
                let op = num(5, "operating time")?;
                if op < 0.0 {
                    return Err(err("operating time must be >= 0".into()));
                }
                netlist.add_gate(
                    tokens[1],
                    kind,
                    TimePoint::new(num(3, "x")?, num(4, "y")?),
                    op,
                    tokens[6],
                    &tokens[7..],
                );
            }
            "OUTPUT" => {
                if tokens.len() != 3 {
                    return Err(err("expected `OUTPUT <name> <net>`".into()));
                }
                netlist.add_output(tokens[1], tokens[2]);
            }
            "SET" => {
                if tokens.len() != 4 {
                    return Err(err("expected `SET <input> <time> <0|1>`".into()));
                }
                let value = match tokens[3] {
                    "0" => false,
                    "1" => true,
                    other => return Err(err(format!("stimulus value must be 0 or 1, got `{other}`"))),
                };
                netlist.set(tokens[1], num(2, "time")?, value);
            }
            other => return Err(err(format!("unknown statement `{other}`"))),
        }
    }
    Ok(netlist)
}

/// Inverse of [`parse_netlist`]. The z coordinate has no representation in
/// the format and is dropped.
pub fn write_netlist(netlist: &Netlist) -> String {
    let mut s = String::new();
    for i in &netlist.inputs {
        let _ = writeln!(s, "INPUT {} {} {}", i.name, i.position.x, i.position.y);
    }
    for g in &netlist.gates {
        let _ = writeln!(
            s,
            "GATE {} {} {} {} {} {} {}",
            g.id,
            g.kind,
            g.position.x,
            g.position.y,
            g.operating_time,
            g.output_net,
            g.inputs.join(" ")
        );
    }
    for o in &netlist.outputs {
        let _ = writeln!(s, "OUTPUT {} {}", o.name, o.net);
    }
    for st in &netlist.stimuli {
        let _ = writeln!(s, "SET {} {} {}", st.input, st.time, u8::from(st.value));
    }
    s
}
