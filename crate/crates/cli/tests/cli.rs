use std::io::Write;
use std::process::{Command, Output, Stdio};

fn dfnrank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dfnrank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let o = dfnrank(args);
    assert!(o.status.success(), "{args:?}: {}", stderr(&o));
    stdout(&o).trim_end().to_string()
}

#[test]
fn count() {
    assert_eq!(ok(&["count", "--n", "5", "--m", "6"]), "3003");
    assert_eq!(
        ok(&["count", "--n", "10", "--m", "1000"]),
        "287161340351594889046352200"
    );
}

#[test]
fn unrank_and_rank() {
    assert_eq!(
        ok(&["unrank", "--order", "t-inc", "--n", "5", "--m", "6", "--index", "49"]),
        "6,6,6,3,2,2"
    );
    assert_eq!(
        ok(&[
            "rank",
            "--order",
            "t-inc",
            "--n",
            "5",
            "--m",
            "6",
            "--dfn",
            "6,6,6,2,1,1"
        ]),
        "54"
    );
    assert_eq!(
        ok(&[
            "unrank",
            "--n",
            "5",
            "--m",
            "6",
            "--index",
            "49",
            "--membership"
        ]),
        "{1/0, 1/1, 1/2, 0.4/3, 0.2/4, 0.2/5}"
    );
}

#[test]
fn out_of_range_index_exits_2() {
    let o = dfnrank(&["unrank", "--n", "5", "--m", "6", "--index", "3003"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(
        stderr(&o).contains("index out of range [0,3002]"),
        "{}",
        stderr(&o)
    );
    assert!(stdout(&o).is_empty());
}

#[test]
fn validation_errors_exit_2() {
    for args in [
        &["rank", "--n", "5", "--m", "6", "--dfn", "6,6,1,2,1,1"][..],
        &["rank", "--n", "5", "--m", "6", "--dfn", "6,6,6"],
        &["count", "--n", "5", "--m", "1"],
        &["unrank", "--n", "5", "--m", "6", "--index", "-1"],
        &[
            "unrank", "--n", "5", "--m", "6", "--index", "4", "--order", "nope",
        ],
        &[
            "unrank",
            "--n",
            "2",
            "--m",
            "3",
            "--index",
            "0",
            "--values",
            "0,0.7,0.5",
        ],
        &[
            "lift", "--n", "3", "--m", "3", "--impl", "negation", "--a", "3,3,3,3", "--b",
            "3,3,3,3",
        ],
    ] {
        let o = dfnrank(args);
        assert_eq!(o.status.code(), Some(2), "{args:?}");
        assert!(stderr(&o).starts_with("error:"), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn json_pipe_round_trip() {
    let json = ok(&[
        "unrank",
        "--n",
        "10",
        "--m",
        "1000",
        "--index",
        "123456789012345678901234567",
        "--json",
    ]);
    let mut child = Command::new(env!("CARGO_BIN_EXE_dfnrank"))
        .args(["rank", "--n", "10", "--m", "1000"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child
        .stdin
        .take()
        .unwrap()
        .write_all(json.as_bytes())
        .unwrap();
    let o = child.wait_with_output().unwrap();
    assert!(o.status.success());
    assert_eq!(stdout(&o).trim(), "123456789012345678901234567");
}

#[test]
fn json_on_wrong_chain_is_rejected() {
    let json = ok(&["unrank", "--n", "5", "--m", "6", "--index", "7", "--json"]);
    let o = dfnrank(&["rank", "--n", "5", "--m", "7", "--dfn", &json]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn custom_level_values() {
    assert_eq!(
        ok(&[
            "unrank",
            "--n",
            "2",
            "--m",
            "3",
            "--index",
            "1",
            "--values",
            "0,0.7,1",
            "--membership"
        ]),
        "{1/0, 1/1, 0.7/2}"
    );
}

#[test]
fn intervals_and_admissibility() {
    assert_eq!(
        ok(&["intervals", "--n", "2", "--order", "lex1"])
            .lines()
            .collect::<Vec<_>>(),
        ["[0,0]", "[0,1]", "[0,2]", "[1,1]", "[1,2]", "[2,2]"]
    );
    assert!(ok(&["admissible", "--n", "4", "--order", "lex2"]).contains("is admissible"));
    assert!(ok(&["admissible", "--n", "4", "--order", "t-inc"]).contains("not admissible"));
}

#[test]
fn trace_shows_the_level_tables() {
    let t = ok(&["trace", "--n", "5", "--m", "6", "--index", "49"]);
    assert!(t.contains("6,6,6,3,2,2"));
    assert!(t.contains("level 6: 21 candidates"));
    let j = ok(&[
        "trace",
        "--n",
        "5",
        "--m",
        "6",
        "--dfn",
        "6,6,6,2,1,1",
        "--json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&j).unwrap();
    assert_eq!(v["index"], "54");
    let counters: Vec<&str> = v["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["counter"].as_str().unwrap())
        .collect();
    assert_eq!(counters, ["22", "37", "47", "53", "55", "55"]);
}

#[test]
fn verify_reports_json() {
    let o = dfnrank(&["verify", "--n", "3", "--m", "3", "--order", "xu-yager"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["checked"], 35);
    assert_eq!(v["mismatches"].as_array().unwrap().len(), 0);
    let big = dfnrank(&["verify", "--n", "10", "--m", "100"]);
    assert_eq!(big.status.code(), Some(2));
}

#[test]
fn lift() {
    // on a two-element scale, negation swaps the ends
    let k = ok(&["count", "--n", "3", "--m", "3"]);
    assert_eq!(k, "35");
    let top = ok(&["unrank", "--n", "3", "--m", "3", "--index", "34"]);
    let bottom = ok(&["unrank", "--n", "3", "--m", "3", "--index", "0"]);
    assert_eq!(
        ok(&["lift", "--n", "3", "--m", "3", "--impl", "negation", "--a", &bottom]),
        top
    );
    assert_eq!(
        ok(&[
            "lift",
            "--n",
            "3",
            "--m",
            "3",
            "--impl",
            "lukasiewicz",
            "--a",
            &top,
            "--b",
            &bottom
        ]),
        bottom
    );
    assert_eq!(
        ok(&["lift", "--n", "3", "--m", "3", "--impl", "goedel", "--a", &bottom, "--b", &bottom]),
        top
    );
}

#[test]
fn bench_writes_csv_and_svg() {
    let dir = std::env::temp_dir().join(format!("dfnrank-bench-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let (csv, svg) = (dir.join("b.csv"), dir.join("b.svg"));
    let o = dfnrank(&[
        "bench",
        "--n",
        "4",
        "--m-list",
        "10,20,40",
        "--trials",
        "5",
        "--csv",
        csv.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    assert_eq!(text.lines().next(), Some("m,op,mean_ms,std_ms,trials"));
    assert_eq!(text.lines().count(), 7);
    assert!(std::fs::read_to_string(&svg).unwrap().starts_with("<svg"));
    assert!(stderr(&o).contains("slope"));
    std::fs::remove_dir_all(dir).ok();
}
