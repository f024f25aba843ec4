use std::path::PathBuf;
use std::process::{Command, Output};

fn kmink(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmink")).args(args).output().expect("run kmink")
}

fn kmink_env(args: &[&str], threads: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kmink")).args(args).env("KMINK_THREADS", threads).output().expect("run kmink")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn write_config(name: &str, text: &str) -> PathBuf {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join(name);
    std::fs::write(&path, text).unwrap();
    path
}

#[test]
fn parse_and_eval() {
    let o = kmink(&["parse", "x0 * x1 - x1 * x0"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "x0 * x1 - x1 * x0");

    let o = kmink(&["eval", "x0 * x1 - x1 * x0"]);
    assert_eq!(stdout(&o).trim(), "1i * kappa^-1 * x1");

    let o = kmink(&["eval", "act(del[0], x0^2)"]);
    assert_eq!(o.status.code(), Some(0));
    let again = kmink(&["eval", stdout(&o).trim()]);
    assert_eq!(stdout(&again), stdout(&o));

    let o = kmink(&["act", "del[1]", "x1^2"]);
    assert_eq!(stdout(&o).trim(), "2 * x1");

    let o = kmink(&["d", "x0 * x1"]);
    assert!(stdout(&o).contains("tau[1]"));
}

#[test]
fn input_errors_exit_with_two() {
    for args in [
        vec!["parse", "tau[9]"],
        vec!["parse", "x0 +"],
        vec!["eval", "foo"],
        vec!["eval", "wedge(x0, x1)"],
        vec!["verify", "--suite", "nope"],
        vec!["verify", "--suite", "dirac", "--gamma4", "half:1"],
        vec!["frobnicate"],
    ] {
        let o = kmink(&args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(!o.stderr.is_empty(), "{args:?}");
    }
    let o = kmink(&["parse", "tau[9]"]);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("out of range") && err.contains("1:5"), "{err}");
}

#[test]
fn verify_json_is_byte_identical_across_runs_and_threads() {
    let args = ["verify", "--suite", "dirac", "--seed", "1", "--max-degree", "2", "--gamma4", "zero", "--json", "-"];
    let a = kmink_env(&args, "1");
    let b = kmink_env(&args, "4");
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = stdout(&a);
    let square = text.lines().find(|l| l.contains("\"id\":\"dirac-square[zero]\"")).expect("D^2 record");
    assert!(square.contains("\"status\":\"pass\""), "{square}");
    assert!(!text.contains("wall_ms"));

    let timed = kmink(&["verify", "--suite", "limit", "--json", "-", "--timings"]);
    assert!(stdout(&timed).contains("wall_ms"));
}

#[test]
fn verify_table_and_json_file() {
    let path = PathBuf::from(env!("CARGO_TARGET_TMPDIR")).join("limit.jsonl");
    let path_str = path.to_str().unwrap();
    let o = kmink(&["verify", "--suite", "limit", "--seed", "3", "--max-degree", "1", "--json", path_str]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("0 failed"));
    let json = std::fs::read_to_string(&path).unwrap();
    assert_eq!(json.lines().count(), 3);
    for line in json.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["suite"], "limit");
        assert_eq!(v["tag"], "3.25");
    }
}

#[test]
fn gauge_commands() {
    let cfg = write_config("a1.cfg", "# fixture\nA1 = x0\nU = W[1]\n");
    let cfg = cfg.to_str().unwrap();

    let o = kmink(&["gauge", "fstrength", "--config", cfg]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).trim(), "F[0,1] = 1");

    let o = kmink(&["gauge", "transform", "--config", cfg]);
    assert_eq!(o.status.code(), Some(0));
    let transformed = stdout(&o);
    assert!(transformed.starts_with("# U = W[1]\ncharge = 1\nA0 = "));
    // the printed configuration is itself a valid config file
    let back = write_config("a1-transformed.cfg", &transformed);
    let o = kmink(&["gauge", "fstrength", "--config", back.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));

    let o = kmink(&["gauge", "verify", "--config", cfg]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let o = kmink(&["gauge", "limit", "--config", cfg]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("pass"));
}

#[test]
fn gauge_failures_and_errors() {
    // without the charge in the quadratic term covariance breaks at g = 2
    let cfg = write_config("g2.cfg", "charge = 2\nA0 = x1\nA2 = x0\nU = W[1]\n");
    let o = kmink(&["gauge", "verify", "--config", cfg.to_str().unwrap(), "--convention", "literal"]);
    assert_eq!(o.status.code(), Some(1));
    let o = kmink(&["gauge", "verify", "--config", cfg.to_str().unwrap(), "--convention", "charged"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));

    let bad = write_config("bad.cfg", "A1 = x0\nA7 = x1\n");
    let o = kmink(&["gauge", "fstrength", "--config", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8(o.stderr).unwrap().contains("line 2"));

    let o = kmink(&["gauge", "fstrength", "--config", "/nonexistent/kmink.cfg"]);
    assert_eq!(o.status.code(), Some(2));
}
