use std::path::Path;
use std::process::{Command, Output};

fn closerank(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_closerank"))
        .args(args)
        .env_remove("CLOSERANK_THREADS")
        .output()
        .unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn fixture(dir: &Path, n: &str, m: &str, seed: &str) -> String {
    let path = dir.join(format!("ba-{n}-{m}-{seed}.txt"));
    let p = path.to_str().unwrap().to_string();
    stdout(&closerank(&[
        "gen-ba", "--n", n, "--m", m, "--seed", seed, &p,
    ]));
    p
}

#[test]
fn gen_ba_tree_has_one_line_per_edge() {
    let dir = tempfile::tempdir().unwrap();
    let path = fixture(dir.path(), "1000", "1", "3");
    let text = std::fs::read_to_string(path).unwrap();
    assert_eq!(text.lines().count(), 999);
}

#[test]
fn rank_prints_one_json_record() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture(dir.path(), "400", "2", "1");
    let out = stdout(&closerank(&[
        "rank",
        "--method",
        "heuristic",
        "--node",
        "42",
        &g,
    ]));
    assert_eq!(out.lines().count(), 1);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert_eq!(v["node"], "42");
    assert_eq!(v["method"], "heuristic");
    assert_eq!(v["traversals"], 3);
    assert!(v["estimated_rank"].as_f64().unwrap() >= 1.0);
    assert!(v["params"]["c_mid"].as_f64().is_some());
}

#[test]
fn randomized_rank_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture(dir.path(), "400", "2", "2");
    let args = [
        "rank",
        "--method",
        "randomized",
        "--k",
        "50",
        "--seed",
        "7",
        "--node",
        "5",
        &g,
    ];
    let a = stdout(&closerank(&args));
    assert_eq!(a, stdout(&closerank(&args)));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["samples_used"], 50);
    assert_eq!(v["traversals"], 51);
}

#[test]
fn exact_rank_is_an_integer_matching_ground_truth() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture(dir.path(), "300", "2", "4");
    let out = stdout(&closerank(&[
        "rank", "--method", "exact", "--node", "0", &g,
    ]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    let rank = v["estimated_rank"].as_f64().unwrap();
    assert_eq!(rank.fract(), 0.0);

    let graph = closerank::read_edge_list_file(&g).unwrap();
    let c = closerank::traversal::closeness_all(&graph).unwrap();
    let expected = closerank::ranking::exact_ranks(&c)[graph.node_by_label("0").unwrap()];
    assert_eq!(rank, expected as f64);
}

#[test]
fn unknown_node_is_a_data_error() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("g.txt");
    std::fs::write(&path, "a b\nb c\nx y\n").unwrap();
    let out = closerank(&["rank", "--node", "x", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("largest connected component"));
}

#[test]
fn eval_writes_three_method_csv_and_per_node_files() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture(dir.path(), "1500", "4", "5");
    let nodes = dir.path().join("nodes");
    let out = stdout(&closerank(&[
        "eval",
        "--repetitions",
        "10",
        "--per-node",
        nodes.to_str().unwrap(),
        &g,
    ]));
    let mut rdr = csv::Reader::from_reader(out.as_bytes());
    assert_eq!(
        rdr.headers().unwrap(),
        vec![
            "graph",
            "method",
            "p",
            "k",
            "repetitions",
            "seed",
            "paae",
            "wtd",
            "nodes_evaluated"
        ]
    );
    let rows: Vec<csv::StringRecord> = rdr.records().map(Result::unwrap).collect();
    let methods: Vec<&str> = rows.iter().map(|r| &r[1]).collect();
    assert_eq!(methods, ["bestfit", "heuristic", "randomized"]);
    let paae: Vec<f64> = rows.iter().map(|r| r[6].parse().unwrap()).collect();
    assert!(paae[0] <= paae[2] && paae[2] <= paae[1], "{paae:?}");

    for m in methods {
        let text = std::fs::read_to_string(nodes.join(format!("{m}.nodes.csv"))).unwrap();
        assert_eq!(
            text.lines().next().unwrap(),
            "node,c,rank_act,rank_est,err_abs,err_wtd"
        );
        assert_eq!(text.lines().count(), 1501);
    }
}

#[test]
fn eval_json_mirrors_csv() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture(dir.path(), "300", "2", "6");
    let csv_out = stdout(&closerank(&[
        "eval",
        "--methods",
        "randomized",
        "--repetitions",
        "3",
        &g,
    ]));
    let json_out = stdout(&closerank(&[
        "eval",
        "--methods",
        "randomized",
        "--repetitions",
        "3",
        "--format",
        "json",
        &g,
    ]));
    let v: serde_json::Value = serde_json::from_str(&json_out).unwrap();
    let row = &v[0];
    let fields: Vec<String> = csv_out
        .lines()
        .nth(1)
        .unwrap()
        .split(',')
        .map(String::from)
        .collect();
    assert_eq!(row["graph"], fields[0].as_str());
    assert_eq!(
        row["paae"].as_f64().unwrap(),
        fields[6].parse::<f64>().unwrap()
    );
    assert_eq!(row["k"], 50);
}

#[test]
fn unknown_method_is_a_usage_error() {
    let out = closerank(&["eval", "--methods", "psychic", "whatever.txt"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn fit_prints_parameters() {
    let dir = tempfile::tempdir().unwrap();
    let g = fixture(dir.path(), "800", "3", "7");
    let out = stdout(&closerank(&["fit", &g]));
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["c_mid", "p", "residual_norm", "iterations"] {
        assert!(v[key].is_number(), "{key} missing in {out}");
    }
    assert_eq!(v["converged"], true);
}

#[test]
fn study_emits_one_row_per_attachment_count() {
    let out = stdout(&closerank(&[
        "study", "--n", "600", "--m", "1..4", "--seed", "2",
    ]));
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), "m_attach,density,p,converged");
    assert_eq!(lines.count(), 4);
}

#[test]
fn env_var_sets_thread_count() {
    let out = Command::new(env!("CARGO_BIN_EXE_closerank"))
        .args(["study", "--n", "300", "--m", "2"])
        .env("CLOSERANK_THREADS", "lots")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}
