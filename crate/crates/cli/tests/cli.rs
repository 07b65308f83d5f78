use std::path::{Path, PathBuf};
use std::process::Command;

use logdeg::fixtures;
use logdeg::format::serialize_graph;
use logdeg::DecoratedGraph;
use serde_json::Value;
use tempfile::TempDir;

struct Run {
    code: i32,
    out: String,
    err: String,
}

fn run(args: &[&str]) -> Run {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("logdeg").chain(args.iter().copied());
    let code = logdeg_cli::run(argv, &mut out, &mut err);
    Run { code, out: String::from_utf8(out).unwrap(), err: String::from_utf8(err).unwrap() }
}

fn json(args: &[&str]) -> Value {
    let r = run(args);
    assert_eq!(r.code, 0, "{}", r.err);
    serde_json::from_str(&r.out).unwrap()
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    std::fs::write(&p, text).unwrap();
    p
}

fn write_graph(dir: &TempDir, name: &str, g: &DecoratedGraph) -> PathBuf {
    write(dir, name, &serialize_graph(g))
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn analyze_star() {
    let dir = TempDir::new().unwrap();
    let star = write_graph(&dir, "star.json", &fixtures::star());
    let v = json(&["analyze", "--input", s(&star), "--format", "json"]);
    assert_eq!(v["m"], "3");
    assert_eq!(v["extra_factor"], "1");
    assert_eq!(v["m_red"], "3");
    assert_eq!(v["aut_order"], "1");
    assert_eq!(v["coefficient"], "3");
    assert_eq!(v["is_main"], true);
    assert_eq!(v["modules"]["rank_d_bullet"], "5");
    assert_eq!(v["modules"]["rank_t_bullet"], "6");
    assert_eq!(v["modules"]["obstruction_group_dim"], "1");
    assert!(v.get("timing_ms").map_or(true, Value::is_null));

    let checked = json(&["--oracle", "analyze", "--input", s(&star), "--format", "json"]);
    for check in checked["oracle"].as_array().unwrap() {
        assert_eq!(check["status"], "agree", "{check}");
    }
}

#[test]
fn text_output() {
    let dir = TempDir::new().unwrap();
    let star = write_graph(&dir, "star.json", &fixtures::star());
    let r = run(&["coeff", "--input", s(&star)]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains('3'), "{}", r.out);
    let r = run(&["dim", "--closed", "--c1", "3", "--n", "2", "--g", "0", "--k", "2"]);
    assert_eq!(r.code, 0);
    assert!(r.out.contains("real dimension 8"), "{}", r.out);
}

#[test]
fn dim_json() {
    let v = json(&["--format", "json", "dim", "--closed", "--c1", "3", "--n", "2", "--g", "0", "--k", "2"]);
    assert_eq!(v["real_dimension"], "8");
    assert_eq!(v["complex_dimension"], "4");
    let v = json(&["--format", "json", "dim", "--log", "--c1", "24", "--n", "3", "--g", "4", "--k", "12", "--ad", "12"]);
    assert_eq!(v["complex_dimension"], "24");
}

#[test]
fn tropical_certificate_for_plane_cubic() {
    let dir = TempDir::new().unwrap();
    let bad = write_graph(&dir, "cubic.json", &fixtures::plane_cubic_break(false));
    let v = json(&["--format", "json", "analyze", "--input", s(&bad)]);
    assert_eq!(v["tropical"]["feasible"], false);
    assert!(v["tropical"]["certificate"].is_object());
    // Relative mode: no main-graph fields.
    assert!(v.get("is_main").map_or(true, Value::is_null));
    assert!(v.get("m").map_or(true, Value::is_null));
    assert_eq!(run(&["coeff", "--input", s(&bad)]).code, 1);

    // A valid degeneration graph that is not main: K• is nonzero.
    let deep = write_graph(&dir, "deep.json", &fixtures::single_vertex(2, &[0, 1]));
    let v = json(&["--format", "json", "analyze", "--input", s(&deep)]);
    assert_eq!(v["is_main"], false);
    assert_eq!(json(&["--format", "json", "main", "--input", s(&deep)])["is_main"], false);
    assert_eq!(run(&["coeff", "--input", s(&deep)]).code, 1);
}

#[test]
fn glue_and_formula() {
    let dir = TempDir::new().unwrap();
    let star = write_graph(&dir, "star.json", &fixtures::star());
    let bip = write_graph(&dir, "bip.json", &fixtures::bipartite(&[2, 2]));
    let v = json(&["--format", "json", "glue", "--input", s(&star)]);
    assert_eq!(v["relations"].as_array().unwrap().len(), 12);
    assert_eq!(v["component_count"], "1");
    assert_eq!(v["projection_degree"], "3");
    let v = json(&["--format", "json", "formula", s(&star), s(&bip)]);
    let terms = v["terms"].as_array().unwrap();
    assert_eq!(terms[0]["coefficient"], "3");
    assert_eq!(terms[1]["m"], "4");
    assert_eq!(terms[1]["aut_order"], "2");
    assert_eq!(terms[1]["coefficient"], "2");
    let v = json(&["--format", "json", "formula"]);
    assert_eq!(v["terms"].as_array().unwrap().len(), 0);
}

#[test]
fn enumerate_round_trips_through_the_file_format() {
    let v = json(&["--format", "json", "enumerate", "--labels", "1,2", "--max-vertices", "2", "--max-edges", "2", "--max-entry", "2"]);
    let graphs = v["graphs"].as_array().unwrap();
    assert_eq!(v["count"], graphs.len().to_string());
    let dir = TempDir::new().unwrap();
    for (i, entry) in graphs.iter().enumerate() {
        let p = write(&dir, &format!("g{i}.json"), &entry["graph"].to_string());
        assert_eq!(json(&["--format", "json", "main", "--input", s(&p)])["is_main"], true);
    }
    let threaded =
        json(&["--format", "json", "enumerate", "--labels", "1,2", "--max-vertices", "2", "--max-edges", "2", "--max-entry", "2", "--workers", "3"]);
    assert_eq!(threaded, v);
    assert_eq!(run(&["--oracle", "enumerate", "--labels", "1,2", "--max-vertices", "2", "--max-edges", "2"]).code, 0);
}

#[test]
fn json_output_is_deterministic() {
    let dir = TempDir::new().unwrap();
    let g = write_graph(&dir, "g.json", &fixtures::two_d_in_p3(3));
    for args in [
        vec!["--format", "json", "analyze", "--input", s(&g)],
        vec!["--format", "json", "glue", "--input", s(&g), "--lattice-ideal"],
        vec!["--format", "json", "enumerate", "--labels", "a,b,c", "--max-vertices", "2", "--max-edges", "2"],
    ] {
        let first = run(&args);
        assert_eq!(first.code, 0, "{}", first.err);
        assert_eq!(run(&args).out, first.out);
    }
}

#[test]
fn error_corpus_exit_codes() {
    let dir = TempDir::new().unwrap();
    let dangling = write(
        &dir,
        "dangling.json",
        r#"{"mode": "degeneration", "S": ["1"], "vertices": [{"id": "a", "depth": ["1"]}],
            "edges": [{"id": "e", "from": "a", "to": "nowhere"}]}"#,
    );
    let garbage = write(&dir, "garbage.json", "not json");
    let unknown_field = write(&dir, "unknown.json", r#"{"mode": "relative", "S": [], "vertices": [], "colour": 1}"#);
    let relative = write_graph(&dir, "rel.json", &fixtures::single_vertex(2, &[]));
    let missing = dir.path().join("missing.json");

    let r = run(&["validate", "--input", s(&dangling)]);
    assert_eq!(r.code, 2);
    assert!(r.err.contains("nowhere"), "{}", r.err);
    for (args, code) in [
        (vec!["analyze", "--input", s(&garbage)], 2),
        (vec!["analyze", "--input", s(&unknown_field)], 2),
        (vec!["analyze", "--input", s(&missing)], 2),
        (vec!["frobnicate"], 2),
        (vec!["analyze", "--input", s(&relative), "--bogus"], 2),
        (vec!["dim", "--log", "--c1", "1", "--n", "2", "--g", "0", "--k", "0"], 2),
        (vec!["enumerate", "--labels", "1", "--max-vertices", "two"], 2),
        (vec!["coeff", "--input", s(&relative)], 1),
        (vec!["main", "--input", s(&relative)], 1),
        (vec!["formula", s(&relative)], 1),
        (vec!["--help"], 0),
    ] {
        assert_eq!(run(&args).code, code, "{args:?}");
    }
    let r = run(&["formula", s(&relative)]);
    assert!(r.err.contains("rel.json"), "{}", r.err);
}

#[test]
fn binary_exit_codes() {
    let dir = TempDir::new().unwrap();
    let star = write_graph(&dir, "star.json", &fixtures::star());
    let bin = env!("CARGO_BIN_EXE_logdeg");
    let ok = Command::new(bin).args(["--format", "json", "analyze", "--input", s(&star)]).output().unwrap();
    assert_eq!(ok.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&ok.stdout).unwrap();
    assert_eq!(v["m"], "3");
    let bad = Command::new(bin).args(["analyze", "--nope"]).output().unwrap();
    assert_eq!(bad.status.code(), Some(2));
    assert!(!bad.stderr.is_empty());
}
