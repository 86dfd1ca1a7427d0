//! End-to-end runs of the `treelike` binary.

use std::process::{Command, Output};

fn treelike(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_treelike"))
        .args(args)
        .env_remove(treelike::cli::OUT_DIR_ENV)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = treelike(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn body(text: &str) -> Vec<&str> {
    text.lines()
        .filter(|l| !l.starts_with('#') && !l.starts_with("//"))
        .collect()
}

#[test]
fn grow_tgraph_dot_has_ten_vertices() {
    let out = stdout(&["grow", "--family", "tgraph", "-t", "2", "--format", "dot"]);
    assert_eq!(out.lines().filter(|l| l.contains("[gen=")).count(), 10);
    assert_eq!(out.lines().filter(|l| l.contains(" -- ")).count(), 9);
    assert!(out.starts_with("// family=tgraph seed=edge t=2; predicted |V|=10 |E|=9\n"));
}

#[test]
fn grow_cayley_edge_list_header() {
    let out = stdout(&[
        "grow", "--family", "cayley", "-n", "4", "-t", "3", "--format", "edges",
    ]);
    assert_eq!(body(&out)[0], "53 52");
    let tree = treelike::Tree::parse_edge_list(&out).unwrap();
    assert_eq!(tree.len(), 53);
}

#[test]
fn grow_subdivided_edge_is_p4() {
    let out = stdout(&[
        "grow",
        "--family",
        "subdivision",
        "-m",
        "2",
        "--seed",
        "edge",
        "-t",
        "1",
    ]);
    let tree = treelike::Tree::parse_edge_list(&out).unwrap();
    assert!(treelike::enumerate::is_isomorphic(
        &tree,
        &treelike::Tree::path(4).unwrap()
    ));
}

#[test]
fn wiener_tgraph_all_agree() {
    let out = stdout(&["wiener", "--family", "tgraph", "-t", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["oracle"], "117");
    let results = v["results"].as_array().unwrap();
    let closed: Vec<_> = results
        .iter()
        .filter(|r| r["formula"] == "t_graph_closed_form")
        .collect();
    assert_eq!(closed.len(), 2);
    for r in closed {
        assert_eq!(r["value"], "117");
        assert_eq!(r["verdict"], "match");
    }
}

#[test]
fn wiener_flags_expanded_step_inline() {
    let out = stdout(&[
        "wiener",
        "--family",
        "star_fractal",
        "-w",
        "1",
        "-m",
        "1",
        "-t",
        "1",
    ]);
    let line = out
        .lines()
        .find(|l| l.starts_with("wm_star_step_expanded"))
        .unwrap();
    assert!(line.contains("23/3") && line.contains("MISMATCH"), "{line}");
}

#[test]
fn wiener_cayley_verbose_intermediates() {
    let out = stdout(&[
        "wiener",
        "--family",
        "cayley",
        "-n",
        "3",
        "-t",
        "2",
        "--verbose",
        "--format",
        "json",
    ]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["oracle"], "117");
    assert_eq!(v["intermediates"]["theta"], "5");
    assert_eq!(v["intermediates"]["omega12"], "30");
    assert_eq!(v["intermediates"]["gamma"], "9");
}

#[test]
fn mfpt_tgraph_report() {
    let args = [
        "mfpt",
        "--family",
        "tgraph",
        "-t",
        "2",
        "--mc-trials",
        "100000",
        "--rng-seed",
        "7",
        "--format",
        "json",
    ];
    let out = stdout(&args);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["exact"], "117/5");
    assert_eq!(v["exact_over_lemma"], "2");
    let mean = v["mc"]["mean"].as_f64().unwrap();
    let se = v["mc"]["std_error"].as_f64().unwrap();
    assert!((mean - 23.4).abs() < 3.0 * se);
    // same flags, same bytes
    assert_eq!(stdout(&args), out);
}

#[test]
fn verify_writes_ledger_and_exits_zero() {
    let dir = std::env::temp_dir().join(format!("treelike-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_treelike"))
        .args(["verify", "--format", "json", "--output", "records.jsonl"])
        .env(treelike::cli::OUT_DIR_ENV, &dir)
        .output()
        .unwrap();
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let table = std::fs::read_to_string(dir.join("ledger.txt")).unwrap();
    assert!(table.starts_with("formula"));
    let records = std::fs::read_to_string(dir.join("records.jsonl")).unwrap();
    for line in records.lines() {
        let r: treelike::verify::AuditRecord = serde_json::from_str(line).unwrap();
        assert_eq!(
            r.verdict == treelike::verify::Verdict::Match,
            r.abs_diff == treelike::exact::parse_ratio("0")
        );
    }
}

#[test]
fn solve_dim_contains_three_four_two() {
    let out = stdout(&["solve-dim", "--max", "50", "--format", "csv"]);
    assert!(out.lines().any(|l| l.starts_with("3,4,2,")), "{out}");
}

#[test]
fn scale_plot_data_columns() {
    let out = stdout(&[
        "scale",
        "--family",
        "tgraph",
        "--t-from",
        "4",
        "--t-to",
        "12",
        "--plot-data",
    ]);
    assert_eq!(body(&out).len(), 9);
    for line in body(&out) {
        assert_eq!(line.split(' ').count(), 2);
    }
}

#[test]
fn config_file_with_flag_override() {
    let dir = std::env::temp_dir().join(format!("treelike-config-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("model.cfg");
    std::fs::write(&cfg, "family=cayley n=4\nt=1\n").unwrap();
    let out = stdout(&["grow", "--config", cfg.to_str().unwrap(), "-t", "3"]);
    assert_eq!(body(&out)[0], "53 52");
}

#[test]
fn exit_codes() {
    assert_eq!(
        treelike(&["grow", "--family", "tgraph", "-t", "40"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(treelike(&["grow", "--family", "nope"]).status.code(), Some(1));
    assert_eq!(treelike(&["grow", "-t", "2"]).status.code(), Some(1));
    assert_eq!(treelike(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(
        treelike(&["grow", "--family", "tgraph", "--format", "bogus"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(treelike(&["--help"]).status.code(), Some(0));
    assert_eq!(
        treelike(&["verify", "--formula", "no_such_formula"])
            .status
            .code(),
        Some(1)
    );
    assert_eq!(treelike::cli::CliError::VerificationFailed.exit_code(), 2);
}

#[test]
fn every_subcommand_speaks_json() {
    let runs: [&[&str]; 6] = [
        &[
            "grow",
            "--family",
            "exponential",
            "-m",
            "2",
            "-t",
            "2",
            "--format",
            "json",
        ],
        &[
            "wiener",
            "--family",
            "subdivision",
            "-m",
            "3",
            "-t",
            "2",
            "--format",
            "json",
        ],
        &[
            "mfpt", "--family", "cayley", "-n", "3", "-t", "3", "--format", "json",
        ],
        &[
            "verify",
            "--formula",
            "t_graph_closed_form",
            "--format",
            "json",
            "--ledger",
            "/dev/null",
        ],
        &["scale", "--family", "exponential", "-m", "1", "--format", "json"],
        &["solve-dim", "--max", "10", "--format", "json"],
    ];
    for args in runs {
        let out = stdout(args);
        for chunk in if args[0] == "verify" {
            out.lines().collect::<Vec<_>>()
        } else {
            vec![out.as_str()]
        } {
            let v: serde_json::Value =
                serde_json::from_str(chunk).unwrap_or_else(|e| panic!("{args:?}: {e}"));
            // re-serialising gives the same document
            assert_eq!(
                serde_json::from_str::<serde_json::Value>(&v.to_string()).unwrap(),
                v
            );
        }
    }
}
