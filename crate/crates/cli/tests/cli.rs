//! End-to-end checks of the command-line interface: exit codes, output
//! formats, and trace reproducibility.

use std::path::PathBuf;
use std::process::{Command, Output};

fn decontam(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_decontam"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn generate_emits_edge_list() {
    let out = decontam(&["generate", "--topo", "mesh:2,3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next().unwrap(), "6 # mesh:2,3");
    assert_eq!(text.lines().count(), 1 + 7); // count line + edges
    for line in lines {
        let mut ends = line.split_whitespace();
        let u: usize = ends.next().unwrap().parse().unwrap();
        let v: usize = ends.next().unwrap().parse().unwrap();
        assert!(u < 6 && v < 6);
    }
}

#[test]
fn generate_rejects_bad_parameters() {
    let out = decontam(&["generate", "--topo", "cycle:2"]);
    assert_eq!(out.status.code(), Some(1));
    let out = decontam(&["generate", "--topo", "unknown:3"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_exit_codes_and_summary() {
    // Success path: paper τ resolves to 2 for the cycle sweep.
    let out = decontam(&[
        "simulate",
        "--topo",
        "cycle:7",
        "--strategy",
        "cycle-sweep",
        "--tau",
        "paper",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let line = stdout(&out);
    assert!(line.starts_with("result=fully_clean "), "{line}");
    assert!(line.contains("tau=2"), "{line}");
    assert!(line.contains("monotone=false"), "{line}");

    // Budget exhaustion exits 2.
    let out = decontam(&[
        "simulate",
        "--topo",
        "cycle:7",
        "--strategy",
        "cycle-sweep",
        "--tau",
        "1",
        "--budget",
        "70",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stdout(&out).starts_with("result=budget_exhausted "));

    // Applicability mismatch exits 1.
    let out = decontam(&["simulate", "--topo", "path:5", "--strategy", "cycle-sweep"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn simulate_mesh_at_explicit_tau() {
    let out = decontam(&[
        "simulate",
        "--topo",
        "mesh:4,6",
        "--strategy",
        "mesh-column",
        "--tau",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("result=fully_clean"));
}

#[test]
fn traces_are_bit_identical_and_frozen() {
    let dir = std::env::temp_dir();
    let run = |path: &PathBuf| {
        let out = decontam(&[
            "simulate",
            "--topo",
            "cycle:4",
            "--strategy",
            "cycle-sweep",
            "--tau",
            "2",
            "--trace",
            path.to_str().unwrap(),
        ]);
        assert!(out.status.success());
        std::fs::read_to_string(path).unwrap()
    };
    let a = run(&dir.join("decontam-trace-a.txt"));
    let b = run(&dir.join("decontam-trace-b.txt"));
    assert_eq!(a, b, "traces must be bit-identical across runs");

    let mut lines = a.lines();
    let header = lines.next().unwrap();
    assert!(header.starts_with("# graph="));
    assert!(header.contains("tau=2 variant=strict strategy=cycle-sweep"));
    // The walk around a 4-cycle: the start vertex flips at tick 2 and is
    // re-cleaned at tick 4.
    let records: Vec<&str> = lines.collect();
    assert_eq!(
        records,
        vec![
            "1 1 cleaned=1 recontaminated= clean_count=2",
            "2 2 cleaned=2 recontaminated=0 clean_count=2",
            "3 3 cleaned=3 recontaminated= clean_count=3",
            "4 0 cleaned=0 recontaminated= clean_count=4",
        ]
    );
}

#[test]
fn oracle_reports_scan_and_witness() {
    let out = decontam(&["oracle", "--topo", "cycle:5"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "tau=0 feasible=false states=5");
    assert!(lines[1].starts_with("tau=1 feasible=false"));
    assert!(lines[2].starts_with("tau=2 feasible=true"));
    assert_eq!(lines[3], "iota=2");
    assert!(lines[4].starts_with("placement="));
    assert!(lines[5].starts_with("moves="));
}

#[test]
fn oracle_lenient_variant() {
    // The lenient rule flips one step later, so the cycle value drops.
    let out = decontam(&["oracle", "--topo", "cycle:5", "--variant", "lenient"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("iota=1"), "{text}");
}

#[test]
fn oracle_respects_state_budget() {
    let out = decontam(&[
        "oracle",
        "--topo",
        "complete:6",
        "--state-budget",
        "100",
    ]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("state budget"));
}

#[test]
fn edge_list_round_trip() {
    let dir = std::env::temp_dir();
    let path = dir.join("decontam-roundtrip.edges");
    let out = decontam(&[
        "generate",
        "--topo",
        "kary:2,3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    // Generic strategies run straight off the edge-list file.
    let out = decontam(&[
        "simulate",
        "--edge-list",
        path.to_str().unwrap(),
        "--strategy",
        "dfs",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = decontam(&[
        "simulate",
        "--edge-list",
        path.to_str().unwrap(),
        "--strategy",
        "terminal",
    ]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn edge_list_parses_comments_and_rejects_loops() {
    use decontam_cli_test_support::parse_edge_list;
    let g = parse_edge_list("# sample\n3\n0 1 # inline\n\n1 2\n1 2\n").unwrap();
    assert_eq!(g.vertex_count(), 3);
    assert_eq!(g.edge_count(), 2); // duplicates collapse
    assert!(parse_edge_list("2\n0 0\n").is_err());
    assert!(parse_edge_list("2\n0 5\n").is_err());
    assert!(parse_edge_list("").is_err());
}

// Expose the format parser to this test without a separate lib target.
#[allow(dead_code)]
#[path = "../src/formats.rs"]
mod decontam_cli_test_support;

#[test]
fn verify_matching_reports() {
    let out = decontam(&["verify-matching", "--side", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("side=2"));
    assert!(text.contains("subsets=6"));
    assert!(text.contains("min_matching=2"));
    assert!(text.contains("pass=true"));

    let out = decontam(&[
        "verify-matching",
        "--side",
        "6",
        "--mode",
        "sampled",
        "--samples",
        "200",
        "--seed",
        "7",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("mode=sampled samples=200 seed=7"));
    assert!(text.contains("pass=true"));

    let out = decontam(&["verify-matching", "--side", "6"]);
    assert_eq!(out.status.code(), Some(1), "exhaustive beyond side 4");
}

#[test]
fn bounds_table_renders_tsv() {
    let out = decontam(&[
        "bounds-table",
        "--format",
        "tsv",
        "--tree-n",
        "60",
        "--no-oracle",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "topology\tupper\tlower\tstrategy\tmeasured\toracle_iota"
    );
    let rows: Vec<&str> = lines.collect();
    assert_eq!(rows.len(), 9);
    for label in [
        "path", "cycle", "complete", "bipartite", "star", "spider", "tree", "mesh", "general",
    ] {
        assert!(
            rows.iter().any(|r| r.to_lowercase().contains(label)),
            "missing row {label}"
        );
    }
}
