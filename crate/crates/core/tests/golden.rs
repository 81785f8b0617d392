//! Every golden command reproduces its pinned output byte for byte.
//! Set `UPDATE_GOLDEN=1` to rewrite the files.

mod common;

use common::{golden_path, run_cli, CASES};

#[test]
fn golden_outputs_match() {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let mut mismatched = Vec::new();
    for case in CASES {
        let (code, stdout) = run_cli(case.args);
        assert_eq!(code, case.exit, "{}: exit code", case.name);
        let path = golden_path(case);
        if update {
            std::fs::write(&path, &stdout).unwrap();
            continue;
        }
        let expected = std::fs::read(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        if expected != stdout {
            mismatched.push(case.name);
        }
    }
    assert!(mismatched.is_empty(), "golden mismatch: {mismatched:?}");
}

#[test]
fn usage_errors_name_the_flag() {
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_fitt"))
        .args(["gb", "--vars", "x", "--bogus"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("--bogus") && err.contains("Usage: fitt gb"), "{err}");
}
