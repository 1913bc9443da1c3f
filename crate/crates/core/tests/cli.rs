use std::process::{Command, Output};

use swag::harness::SUMMARY_HEADER;

fn swagbench(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_swagbench"))
        .args(args)
        .output()
        .unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

#[test]
fn latency_run_writes_one_sample_per_round() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("samples.csv");
    let out = swagbench(&[
        "--algo",
        "daba",
        "--monoid",
        "sum",
        "--mode",
        "static",
        "--window-exp",
        "6",
        "--rounds",
        "2000",
        "--seed",
        "3",
        "--verify",
        "--latency",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let samples = std::fs::read_to_string(&path).unwrap();
    let mut lines = samples.lines();
    assert_eq!(lines.next(), Some("round,latency_ns"));
    assert_eq!(lines.count(), 2000);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let mut lines = stdout.lines();
    assert_eq!(lines.next(), Some(SUMMARY_HEADER));
    assert!(lines.next().unwrap().starts_with("daba,sum,64,"));
    assert!(String::from_utf8(out.stderr).unwrap().contains("p99.99="));
}

#[test]
fn throughput_run_writes_the_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("summary.csv");
    let out = swagbench(&[
        "--algo",
        "daba-lite",
        "--monoid",
        "maxcount",
        "--mode",
        "dynamic",
        "--window-exp",
        "5",
        "--rounds",
        "10000",
        "--throughput",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let text = std::fs::read_to_string(&path).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows[0], SUMMARY_HEADER);
    let fields: Vec<&str> = rows[1].split(',').collect();
    assert_eq!(&fields[..3], ["daba-lite", "maxcount", "32"]);
    assert_eq!(fields[5], "3");
    assert_eq!(fields[7], "2");
}

#[test]
fn event_mode_reads_csv_input() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("events.csv");
    std::fs::write(
        &input,
        "timestamp_ms,value\n1000,1\n1005,2\n1010,3\n1500,4\n",
    )
    .unwrap();
    let out = swagbench(&[
        "--algo",
        "two-stacks",
        "--monoid",
        "sum",
        "--mode",
        "event",
        "--tau-ms",
        "8",
        "--input",
        input.to_str().unwrap(),
        "--per-op",
    ]);
    assert_eq!(code(&out), 0, "{}", String::from_utf8_lossy(&out.stderr));
    let stdout = String::from_utf8(out.stdout).unwrap();
    assert!(stdout.starts_with("round,op,latency_ns\n"), "{stdout}");

    let bare = dir.path().join("bare.csv");
    std::fs::write(&bare, "1000,1\n1005,2\n").unwrap();
    let args = [
        "--algo",
        "daba",
        "--monoid",
        "sum",
        "--mode",
        "event",
        "--tau-ms",
        "8",
        "--throughput",
    ];
    let mut with_input = args.to_vec();
    with_input.extend(["--input", bare.to_str().unwrap(), "--no-header"]);
    assert_eq!(code(&swagbench(&with_input)), 0);
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        &["--algo", "flatfit", "--monoid", "sum"][..],
        &["--algo", "daba", "--monoid", "median"],
        &["--algo", "daba", "--monoid", "sum", "--window-exp", "31"],
        &["--algo", "daba", "--monoid", "sum", "--rounds", "0"],
        &["--algo", "daba", "--monoid", "sum", "--mode", "event"],
        &[
            "--algo",
            "daba",
            "--monoid",
            "sum",
            "--latency",
            "--throughput",
        ],
        &["--algo", "daba", "--monoid", "sum", "--input", "x.csv"],
        &["--monoid", "sum"],
    ] {
        let out = swagbench(args);
        assert_eq!(
            code(&out),
            2,
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
    }
}

#[test]
fn input_errors_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "t,v\n10,1\n20,2\n15,3\n").unwrap();
    let base = [
        "--algo",
        "daba",
        "--monoid",
        "sum",
        "--mode",
        "event",
        "--tau-ms",
        "5",
        "--throughput",
        "--input",
    ];
    let mut args = base.to_vec();
    args.push(bad.to_str().unwrap());
    let out = swagbench(&args);
    assert_eq!(code(&out), 3);
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 4"));

    let mut args = base.to_vec();
    args.push("/nonexistent/events.csv");
    assert_eq!(code(&swagbench(&args)), 3);

    // geomean is undefined for non-positive values
    std::fs::write(&bad, "t,v\n10,1\n20,0\n").unwrap();
    let mut args = base.to_vec();
    args[3] = "geomean";
    args.push(bad.to_str().unwrap());
    let out = swagbench(&args);
    assert_eq!(code(&out), 3, "{}", String::from_utf8_lossy(&out.stderr));
}

#[test]
fn help_exits_0() {
    let out = swagbench(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(String::from_utf8(out.stdout)
        .unwrap()
        .contains("--window-exp"));
}
