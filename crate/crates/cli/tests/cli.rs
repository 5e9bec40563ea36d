use std::path::PathBuf;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_sumsetlab"));
    c.env_remove("SUMSETLAB_MAX_ORDER");
    c
}

fn scratch(name: &str, body: &str) -> PathBuf {
    let dir = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("cli");
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, body).unwrap();
    path
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn interval_file(name: &str, group: &str, k: i64) -> PathBuf {
    let mut body = format!("group: {group}\n");
    for i in 1..=k {
        body.push_str(&format!("{i}\n-{i}\n"));
    }
    scratch(name, &body)
}

#[test]
fn sigma_of_symmetric_interval() {
    let f = interval_file("i10.set", "Z223", 10);
    let o = bin().args(["sigma", "-f"]).arg(&f).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    assert_eq!(stdout(&o).lines().next(), Some("111"));

    let o = bin().args(["sigma", "-g", "Z223", "--format", "json", "-f"]).arg(&f).output().unwrap();
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["sigma_size"], 111);
    assert_eq!(v["card"], 20);
}

#[test]
fn olson_reports_missing_residue() {
    let units: String = (1..25).filter(|u| u % 5 != 0).map(|u| format!("{u}\n")).collect();
    let f = scratch("units25.set", &units);
    let o = bin().args(["olson", "-n", "25", "-f"]).arg(&f).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("covers=true"), "{out}");

    // {±1, ±2, ±3, ±4} misses 11
    let f = interval_file("psq5.set", "Z25", 4);
    let o = bin().args(["olson", "-n", "25", "-f"]).arg(&f).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    assert!(out.contains("covers=false"), "{out}");
    assert!(out.contains("missing=11"), "{out}");
}

#[test]
fn bounds_table_is_exact() {
    let o = bin().args(["bounds", "-k", "9..10"]).output().unwrap();
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.starts_with("k,n_k,alpha_k"));
    assert!(out.contains("9,1,1/64"));
    assert!(out.contains(",3/160"));
}

#[test]
fn usage_errors_exit_two() {
    let o = bin().args(["sigma", "-g", "Zx", "-f", "/nonexistent"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));

    let o = bin().args(["sigma", "-g", "Z7", "-f", "/nonexistent/file.set"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));

    let f = scratch("bad.set", "group: Z7\n1\n2\nfoo\n");
    let o = bin().args(["sigma", "-f"]).arg(&f).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("bad.set:4:"), "{}", stderr(&o));

    let o = bin().arg("no-such-command").output().unwrap();
    assert_eq!(o.status.code(), Some(2));

    let o = bin().arg("--help").output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn olson_refuses_non_units() {
    let f = scratch("nonunit.set", "1\n5\n");
    let o = bin().args(["olson", "-n", "25", "-f"]).arg(&f).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn grow_certificate_is_json() {
    let f = interval_file("grow.set", "Z61", 5);
    let o = bin().args(["grow", "--above", "30", "--schedule", "three-stage", "--format", "json", "-f"]).arg(&f).output().unwrap();
    assert!(o.status.success(), "{}", stderr(&o));
    let text = stdout(&o);
    let cert = sumsetlab::report::certificate_from_json(&text).unwrap();
    cert.verify().unwrap();
    assert!(cert.reached);
    assert!(cert.final_span > 30);
    let v: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(v["group"], "Z61");
    assert_eq!(v["stage_marks"].as_array().map(Vec::len), Some(3));
}

#[test]
fn max_order_from_environment() {
    let f = scratch("small.set", "1\n2\n");
    let o = bin().env("SUMSETLAB_MAX_ORDER", "50").args(["sigma", "-g", "Z101", "-f"]).arg(&f).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    let o = bin().env("SUMSETLAB_MAX_ORDER", "50").args(["sigma", "-g", "Z31", "-f"]).arg(&f).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("4"));
    let o = bin().env("SUMSETLAB_MAX_ORDER", "50").args(["--max-order", "200", "sigma", "-g", "Z101", "-f"]).arg(&f).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn scans_are_seeded() {
    let run = || {
        bin().args(["scan-min-ratio", "-g", "Z40", "--budget", "200", "--seed", "7", "--format", "json"]).output().unwrap()
    };
    let (a, b) = (run(), run());
    assert!(a.status.success(), "{}", stderr(&a));
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_str(&stdout(o)).unwrap();
        v["meta"]["wall_seconds"] = serde_json::Value::Null;
        v
    };
    assert_eq!(strip(&a), strip(&b));
    assert_eq!(strip(&a)["meta"]["seed"], 7);

    let o = bin().args(["witness-stab", "-g", "Z12"]).output().unwrap();
    assert!(stdout(&o).contains("A={6}"), "{}", stdout(&o));
}
