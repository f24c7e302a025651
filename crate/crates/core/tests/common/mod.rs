#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_tempograph"));
    c.env_remove("TEMPOGRAPH_SPEED");
    c
}

pub fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data").join(name)
}

pub fn golden_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests").join("golden")
}

/// A CLI invocation whose outputs are pinned in `tests/golden`.
pub struct GoldenCase {
    pub name: &'static str,
    /// `{data}` expands to the data directory, `{out}` to the output directory.
    pub args: &'static [&'static str],
    /// Files written under `{out}`; stdout is always captured as `<name>.stdout`.
    pub files: &'static [&'static str],
}

pub const GOLDEN_CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "dispersion",
        args: &["dispersion", "--input", "{data}/processors.csv", "--edvac", "--svg", "{out}/dispersion.svg"],
        files: &["dispersion.svg"],
    },
    GoldenCase {
        name: "adder_left",
        args: &["adder", "--layout", "left", "--out", "{out}/adder_left.svg"],
        files: &["adder_left.svg"],
    },
    GoldenCase {
        name: "adder_zero",
        args: &["adder", "--layout", "zero", "--a", "1", "--b", "0", "--cin", "1", "--out", "{out}/adder_zero.svg"],
        files: &["adder_zero.svg"],
    },
    GoldenCase {
        name: "buffer",
        args: &["gates", "--netlist", "{data}/buffer.net", "--svg", "{out}/buffer.svg"],
        files: &["buffer.svg"],
    },
    GoldenCase {
        name: "bus",
        args: &[
            "bus",
            "--scenario",
            "{data}/bus_two_cores.toml",
            "--out",
            "{out}/bus.csv",
            "--svg",
            "{out}/bus.svg",
            "--sweep",
            "1..16",
        ],
        files: &["bus.csv", "bus.svg"],
    },
    GoldenCase {
        name: "distributed",
        args: &["distributed", "--scenario", "{data}/fork_join.toml", "--svg", "{out}/distributed.svg"],
        files: &["distributed.svg"],
    },
    GoldenCase {
        name: "amdahl",
        args: &[
            "amdahl",
            "--alpha",
            "0.5,0.9,0.99,0.999",
            "--n",
            "1,10,100,1000,10000,100000,1000000",
            "--points",
            "{data}/systems.csv",
            "--points-out",
            "{out}/overlay.csv",
            "--svg",
            "{out}/amdahl.svg",
        ],
        files: &["overlay.csv", "amdahl.svg"],
    },
];

pub fn run_case(case: &GoldenCase, out: &Path) -> Output {
    let data = data("");
    let args: Vec<String> = case
        .args
        .iter()
        .map(|a| {
            a.replace("{data}/", &data.display().to_string())
                .replace("{out}", &out.display().to_string())
        })
        .collect();
    let output = bin().args(&args).output().expect("spawn tempograph");
    assert!(
        output.status.success(),
        "{} failed: {}",
        case.name,
        String::from_utf8_lossy(&output.stderr)
    );
    output
}

/// Runs `case` in `out` and returns (file name, bytes) for stdout and every
/// declared file.
pub fn case_outputs(case: &GoldenCase, out: &Path) -> Vec<(String, Vec<u8>)> {
    let output = run_case(case, out);
    let mut v = vec![(format!("{}.stdout", case.name), output.stdout)];
    for f in case.files {
        v.push((f.to_string(), std::fs::read(out.join(f)).expect("declared output file")));
    }
    v
}
