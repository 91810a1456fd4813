use std::process::{Command, Output};

use bipartite_sigma::format::{parse, Format};

fn bisigma(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bisigma"))
        .args(args)
        .env_remove("BISIGMA_JOBS")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn max_value() {
    let o = bisigma(&["max", "--n", "6", "--m", "7"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "38\n");
}

#[test]
fn infeasible_construct_exits_two() {
    let o = bisigma(&["construct", "--n", "6", "--m", "7", "--k", "5"]);
    assert_eq!(o.status.code(), Some(2));
    let err = String::from_utf8(o.stderr).unwrap();
    assert_eq!(err.lines().count(), 1, "{err}");
}

#[test]
fn bad_arguments_exit_two() {
    assert_eq!(
        bisigma(&["max", "--n", "6", "--m", "99"]).status.code(),
        Some(2)
    );
    assert_eq!(
        bisigma(&["max", "--n", "x", "--m", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(bisigma(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(bisigma(&["verify", "--n-max", "11"]).status.code(), Some(2));
}

#[test]
fn construct_output_parses_back() {
    for format in Format::ALL {
        for (n, m, k) in [(6, 7, 4), (9, 16, 3), (5, 0, 2), (12, 30, 7)] {
            let o = bisigma(&[
                "construct",
                "--n",
                &n.to_string(),
                "--m",
                &m.to_string(),
                "--k",
                &k.to_string(),
                "--format",
                format.name(),
            ]);
            assert_eq!(o.status.code(), Some(0));
            let g = parse(&stdout(&o), format).unwrap();
            assert_eq!((g.n(), g.m(), g.x_size()), (n, m, k));
        }
    }
}

#[test]
fn construct_edge_list_bytes() {
    let o = bisigma(&["construct", "--n", "6", "--m", "7", "--k", "4"]);
    assert_eq!(
        stdout(&o),
        "n=6 m=7 k=4\n0 4\n0 5\n1 4\n1 5\n2 4\n2 5\n3 4\n"
    );
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["classify", "--n", "9", "--m", "16", "--json"][..],
        &["table", "--n-from", "2", "--n-to", "7"],
        &["verify", "--n-max", "6"],
        &[
            "construct",
            "--n",
            "8",
            "--m",
            "9",
            "--k",
            "6",
            "--format",
            "dot",
        ],
    ] {
        assert_eq!(bisigma(args).stdout, bisigma(args).stdout, "{args:?}");
    }
}

#[test]
fn table_row_count() {
    let o = bisigma(&["table", "--n-from", "3", "--n-to", "9"]);
    assert_eq!(o.status.code(), Some(0));
    let expected: u64 = (3..=9u64).map(|n| (n / 2) * n.div_ceil(2) + 1).sum();
    assert_eq!(stdout(&o).lines().count() as u64, expected + 1);
}

#[test]
fn classify_json_record() {
    let o = bisigma(&["classify", "--n", "8", "--m", "9", "--json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["regime"], "case_c");
    assert_eq!(v["k0"], 6);
    assert_eq!(v["boundary"]["relation"], "<");
    assert_eq!(v["boundary"]["rhs"], 10);
    assert_eq!(v["max_sigma2"], 60);
    assert_eq!(v["constructions"].as_array().unwrap().len(), 1);
    assert_eq!(v["constructions"][0]["q"], 1);
    assert_eq!(v["constructions"][0]["r"], 3);
    assert_eq!(v["iso_classes"], 1);
}

#[test]
fn verify_default_depth_and_jobs_env() {
    let o = Command::new(env!("CARGO_BIN_EXE_bisigma"))
        .args(["verify"])
        .env("BISIGMA_JOBS", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    let expected: u64 = (2..=7u64).map(|n| (n / 2) * n.div_ceil(2) + 1).sum();
    assert!(
        out.ends_with(&format!(
            "instances={expected} agreements={expected} disagreements=0\n"
        )),
        "{out}"
    );
    assert!(out.contains("\n7 8 case_b 48 48 2 agree\n"));
}
