use std::process::Command;

use degen::cli::{run, SeriesDump, TableDump};

fn degen(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_degen"))
        .args(args)
        .output()
        .expect("binary runs");
    (
        out.status.code().expect("exit code"),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn binary_matches_library_entry_point() {
    let args = ["table", "s1", "--nmax", "4", "--lambda", "-3/7"];
    let (code, stdout, _) = degen(&args);
    let lib = run(std::iter::once("degen").chain(args));
    assert_eq!(code, lib.code);
    assert_eq!(stdout, lib.stdout);
}

#[test]
fn exit_codes() {
    assert_eq!(degen(&["check", "--id", "T15", "--nmax", "2"]).0, 0);
    assert_eq!(degen(&["check", "--id", "NOPE"]).0, 2);
    assert_eq!(degen(&["eval", "bell", "--n", "2"]).0, 2);
    assert_eq!(degen(&["table", "fubini", "--nmax", "2", "--r", "3"]).0, 3);
    assert_eq!(
        degen(&["check", "--id", "T9", "--nmax", "3", "--lambdas", "1/2", "--mutate-s2"]).0,
        1
    );
    assert_eq!(degen(&["--help"]).0, 0);
}

#[test]
fn check_timing_goes_to_stderr() {
    let (code, stdout, stderr) = degen(&["check", "--id", "T3", "--nmax", "3", "--lambdas", "0,1/2"]);
    assert_eq!(code, 0);
    assert!(!stdout.contains("elapsed"));
    assert!(stderr.starts_with("elapsed: "));
}

#[test]
fn table_json_round_trips() {
    for args in [
        vec!["table", "s2", "--nmax", "5", "--lambda", "2/3", "--format", "json"],
        vec!["table", "hyperharmonic", "--nmax", "4", "--r", "3", "--lambda", "-1/2", "--format", "json"],
        vec!["table", "euler", "--nmax", "4", "--lambda", "1/5", "--format", "json"],
    ] {
        let (code, stdout, _) = degen(&args);
        assert_eq!(code, 0);
        let dump: TableDump = serde_json::from_str(&stdout).unwrap();
        let again = serde_json::to_string_pretty(&dump).unwrap() + "\n";
        assert_eq!(again, stdout);
    }
}

#[test]
fn series_json_round_trips() {
    let (_, stdout, _) = degen(&["series", "dexp", "--lambda", "1/2", "--x", "3", "--order", "5", "--format", "json"]);
    let dump: SeriesDump = serde_json::from_str(&stdout).unwrap();
    assert_eq!(dump.order, 5);
    assert_eq!(dump.coeffs.len(), 6);
    assert_eq!(serde_json::to_string_pretty(&dump).unwrap() + "\n", stdout);
}

#[test]
fn output_file() {
    let path = std::env::temp_dir().join(format!("degen-cli-{}.csv", std::process::id()));
    let path_str = path.to_str().unwrap();
    let (code, stdout, _) = degen(&["table", "s2", "--nmax", "3", "--lambda", "1/2", "--format", "csv", "--output", path_str]);
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).ok();
    assert!(written.lines().any(|l| l == "3,2,3/2"));
}

#[test]
fn list_json_has_every_identity() {
    let (_, stdout, _) = degen(&["list", "--format", "json"]);
    let items: Vec<serde_json::Value> = serde_json::from_str(&stdout).unwrap();
    assert_eq!(items.len(), 25);
    assert_eq!(items[24]["id"], "E67");
    assert_eq!(items[24]["numeric"], true);
}
