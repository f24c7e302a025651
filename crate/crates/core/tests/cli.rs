mod common;

use common::{bin, data};
use tempograph::bus::sweep_cores;
use tempograph::distributed::amdahl_efficiency;
use tempograph::io::{read_bus_scenario, Table};

fn stdout_table(args: &[&str]) -> Table {
    let out = bin().args(args).output().unwrap();
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    Table::from_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap()
}

#[test]
fn amdahl_three_rows() {
    let t = stdout_table(&["amdahl", "--alpha", "0.99", "--n", "10,100,1000"]);
    assert_eq!(t.header, ["alpha", "n", "efficiency"]);
    let e = t.numbers("efficiency").unwrap();
    assert_eq!(e.len(), 3);
    for (got, want) in e.iter().zip([0.9174311926605504, 0.5025125628140703, 0.09099181073703368]) {
        assert!((got - want).abs() < 1e-15, "{got} vs {want}");
    }
}

#[test]
fn dispersion_to_file_then_reparse() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("report.csv");
    let status = bin()
        .args(["dispersion", "--input"])
        .arg(data("processors.csv"))
        .args(["--speed", "3e8", "--out"])
        .arg(&out)
        .status()
        .unwrap();
    assert!(status.success());
    let t = Table::from_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(t.rows.len(), 8);
    let years = t.numbers("year").unwrap();
    assert!(years.windows(2).all(|w| w[0] <= w[1]));
    let d = t.numbers("dispersion").unwrap();
    let p = t.numbers("proc_transfer_rel").unwrap();
    // dispersion is the geometric mean of the two relative transfer times,
    // the larger being twice the cache one
    let c = t.numbers("cache_transfer_rel").unwrap();
    for i in 0..d.len() {
        assert!((d[i] - (p[i] * 2.0 * c[i]).sqrt()).abs() <= 1e-12 * d[i]);
    }
}

#[test]
fn speed_flag_beats_env_beats_default() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut c = bin();
        c.args(["dispersion", "--edvac"]);
        if let Some(e) = env {
            c.env("TEMPOGRAPH_SPEED", e);
        }
        if let Some(f) = flag {
            c.args(["--speed", f]);
        }
        let out = c.output().unwrap();
        assert!(out.status.success());
        let t = Table::from_csv(std::str::from_utf8(&out.stdout).unwrap()).unwrap();
        t.numbers("dispersion").unwrap()[0]
    };
    let default = run(None, None);
    let half = run(Some("1.5e8"), None);
    assert!((half / default - 2.0).abs() < 1e-12);
    assert_eq!(run(Some("1.5e8"), Some("3e8")), default);

    let bad = bin()
        .args(["dispersion", "--edvac"])
        .env("TEMPOGRAPH_SPEED", "fast")
        .output()
        .unwrap();
    assert_eq!(bad.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&bad.stderr).contains("TEMPOGRAPH_SPEED"));
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| bin().args(args).output().unwrap().status.code();
    assert_eq!(code(&[]), Some(2));
    assert_eq!(code(&["nope"]), Some(2));
    assert_eq!(code(&["amdahl", "--alpha", "0.5", "--n", "2", "--bogus"]), Some(2));
    assert_eq!(code(&["gates", "--netlist", "/definitely/not/here.net"]), Some(1));
    assert_eq!(code(&["bus", "--scenario", "/definitely/not/here.toml"]), Some(1));
    assert_eq!(code(&["--help"]), Some(0));
}

#[test]
fn bad_rows_name_row_and_column() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("p.csv");
    std::fs::write(&csv, "name,year,transistors,die_area_mm2,clock_mhz\nok,1990,1000,10,1\nbad,1991,1000,-4,1\n").unwrap();
    let out = bin().args(["dispersion", "--input"]).arg(&csv).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("row 2"), "{err}");
    assert!(err.contains("die_area_mm2"), "{err}");
}

#[test]
fn netlist_errors_carry_path_and_line() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("loop.net");
    std::fs::write(&net, "INPUT a 0 0\nGATE g FROB 0 0 1 y a\n").unwrap();
    let out = bin().args(["gates", "--netlist"]).arg(&net).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("loop.net:2"), "{err}");

    std::fs::write(
        &net,
        "INPUT a 0 0\nGATE g1 AND 0 0 1 x a y\nGATE g2 BUF 0 0 1 y x\nSET a 0 1\n",
    )
    .unwrap();
    let out = bin().args(["gates", "--netlist"]).arg(&net).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("cycle"));
}

#[test]
fn bus_sweep_is_the_library_sweep() {
    let path = data("bus_two_cores.toml");
    let t = stdout_table(&["bus", "--scenario", path.to_str().unwrap(), "--sweep", "1..6"]);
    let lib = sweep_cores(&read_bus_scenario(&path).unwrap(), &[1, 2, 3, 4, 5, 6]).unwrap();
    let totals = t.numbers("total_completion").unwrap();
    assert_eq!(totals, lib.iter().map(|p| p.1).collect::<Vec<_>>());
}

#[test]
fn gates_emit_undefined_flag() {
    let dir = tempfile::tempdir().unwrap();
    let net = dir.path().join("late.net");
    // b arrives late, so the AND output is undefined until then
    std::fs::write(
        &net,
        "INPUT a 0 0\nINPUT b 0 0\nGATE g AND 0 0 1 y a b\nOUTPUT y y\nSET a 0 1\nSET b 5 1\n",
    )
    .unwrap();
    let plain = stdout_table(&["gates", "--netlist", net.to_str().unwrap()]);
    let all = stdout_table(&["gates", "--netlist", net.to_str().unwrap(), "--emit-undefined"]);
    let col = plain.column("value").unwrap();
    assert!(plain.rows.iter().all(|r| r[col] != "X"));
    assert!(all.rows.iter().any(|r| r[col] == "X"));
    assert_eq!(plain.rows.last(), all.rows.last());
}

#[test]
fn overlay_points_recover_alpha() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("overlay.csv");
    let status = bin()
        .args(["amdahl", "--alpha", "0.9", "--n", "2", "--points"])
        .arg(data("systems.csv"))
        .arg("--points-out")
        .arg(&out)
        .output()
        .unwrap()
        .status;
    assert!(status.success());
    let t = Table::from_csv(&std::fs::read_to_string(&out).unwrap()).unwrap();
    let n = t.numbers("n").unwrap();
    let e = t.numbers("efficiency").unwrap();
    for ((alpha, n), e) in t.numbers("alpha").unwrap().into_iter().zip(n).zip(e) {
        let back = amdahl_efficiency(alpha, n as u64).unwrap();
        assert!((back - e).abs() < 1e-9 * e);
    }
}

#[test]
fn svg_outputs_are_documents() {
    let dir = tempfile::tempdir().unwrap();
    let svg = dir.path().join("adder.svg");
    let csv = dir.path().join("adder.csv");
    let out = bin()
        .args(["adder", "--layout", "right", "--out"])
        .arg(&svg)
        .arg("--csv")
        .arg(&csv)
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let doc = std::fs::read_to_string(&svg).unwrap();
    assert!(doc.starts_with("<svg xmlns=\"http://www.w3.org/2000/svg\""));
    assert!(doc.ends_with("</svg>\n"));
    assert!(Table::from_csv(&std::fs::read_to_string(&csv).unwrap()).unwrap().rows.len() > 5);
}
