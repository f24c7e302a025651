//! CLI outputs pinned byte-for-byte. Set `UPDATE_GOLDEN=1` to rewrite them.

mod common;

use common::{case_outputs, golden_dir, GOLDEN_CASES};

#[test]
fn outputs_match_golden_files() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = golden_dir();
    let mut mismatches = Vec::new();
    for case in GOLDEN_CASES {
        let tmp = tempfile::tempdir().unwrap();
        for (name, bytes) in case_outputs(case, tmp.path()) {
            let path = dir.join(&name);
            if update {
                std::fs::write(&path, &bytes).unwrap();
                continue;
            }
            match std::fs::read(&path) {
                Ok(expected) if expected == bytes => {}
                Ok(_) => mismatches.push(format!("{name}: differs")),
                Err(_) => mismatches.push(format!("{name}: missing golden file")),
            }
        }
    }
    assert!(mismatches.is_empty(), "golden mismatches (UPDATE_GOLDEN=1 to refresh):\n{}", mismatches.join("\n"));
}

#[test]
fn consecutive_runs_are_identical() {
    for case in GOLDEN_CASES {
        let a = tempfile::tempdir().unwrap();
        let b = tempfile::tempdir().unwrap();
        assert_eq!(case_outputs(case, a.path()), case_outputs(case, b.path()), "{}", case.name);
    }
}
