use std::collections::BTreeMap;

use super::{GateKind, Netlist};
use crate::error::{Error, Result};
use crate::timespace::TimePoint;

pub const ADDER_GATES: [&str; 5] = ["AND1", "XOR1", "AND2", "XOR2", "OR1"];
pub const ADDER_INPUTS: [&str; 3] = ["a", "b", "cin"];

/// Bundled placements for the one-bit adder.
///
/// `Left` and `Right` put the inputs on the y axis and the gates on the x
/// axis at unit-ish spacing, differing only in where XOR2 sits: (-1, 0) or
/// (+1, 0). The spacing is a demo choice. `Zero` puts everything at the
/// origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AdderLayout {
    Zero,
    Left,
    Right,
}

pub fn adder_placement(layout: AdderLayout) -> BTreeMap<String, TimePoint> {
    let p = TimePoint::new;
    let mut m: BTreeMap<String, TimePoint> = match layout {
        AdderLayout::Zero => ADDER_INPUTS
            .iter()
            .chain(ADDER_GATES.iter())
            .map(|id| (id.to_string(), TimePoint::ORIGIN))
            .collect(),
        AdderLayout::Left | AdderLayout::Right => [
            ("a", p(0.0, 1.0)),
            ("b", p(0.0, 2.0)),
            ("cin", p(0.0, 3.0)),
            ("XOR1", p(0.5, 0.0)),
            ("AND1", p(1.5, 0.0)),
            ("AND2", p(2.5, 0.0)),
            ("OR1", p(3.5, 0.0)),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_string(), v))
        .collect(),
    };
    match layout {
        AdderLayout::Left => {
            m.insert("XOR2".into(), p(-1.0, 0.0));
        }
        AdderLayout::Right => {
            m.insert("XOR2".into(), p(1.0, 0.0));
        }
        AdderLayout::Zero => {}
    }
    m
}

/// Full adder from five gates:
///
/// ```text
/// aANDb       = a & b
/// aXORb       = a ^ b
/// cinANDaXORb = cin & aXORb
/// sum         = aXORb ^ cin
/// cout        = aANDb | cinANDaXORb
/// ```
///
/// The netlist has no stimuli; add them with [`Netlist::set`].
pub fn build_one_bit_adder(
    placement: &BTreeMap<String, TimePoint>,
    operating_time: f64,
) -> Result<Netlist> {
    let at = |id: &str| {
        placement
            .get(id)
            .copied()
            .ok_or_else(|| Error::invalid(format!("adder placement is missing `{id}`")))
    };
    let mut n = Netlist::default();
    for input in ADDER_INPUTS {
        n.add_input(input, at(input)?);
    }
    let t = operating_time;
    n.add_gate("AND1", GateKind::And, at("AND1")?, t, "aANDb", &["a", "b"])
        .add_gate("XOR1", GateKind::Xor, at("XOR1")?, t, "aXORb", &["a", "b"])
        .add_gate("AND2", GateKind::And, at("AND2")?, t, "cinANDaXORb", &["cin", "aXORb"])
        .add_gate("XOR2", GateKind::Xor, at("XOR2")?, t, "sum", &["aXORb", "cin"])
        .add_gate("OR1", GateKind::Or, at("OR1")?, t, "cout", &["aANDb", "cinANDaXORb"])
        .add_output("sum", "sum")
        .add_output("cout", "cout");
    n.validate()?;
    Ok(n)
}
