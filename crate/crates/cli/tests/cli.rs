use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn godeaux(args: &[&str], cache: Option<&Path>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_godeaux"));
    cmd.args(args).env_remove("GODEAUX_CACHE_DIR");
    if let Some(dir) = cache {
        cmd.env("GODEAUX_CACHE_DIR", dir);
    }
    cmd.output().expect("run godeaux")
}

fn json(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn markdown_tables_are_byte_identical_across_runs() {
    let a = godeaux(&["tables", "elliptic", "--format", "md"], None);
    let b = godeaux(&["tables", "elliptic", "--format", "md"], None);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let text = String::from_utf8(a.stdout).unwrap();
    assert_eq!(text.lines().filter(|l| l.starts_with("|---")).count(), 3);
    assert!(text.contains("| i≠k | 0 | 2 | 1 |"));
}

#[test]
fn line_table_json() {
    let out = godeaux(&["tables", "lines"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["values"].as_array().unwrap().len(), 15);
    assert_eq!(v["patterns"][0]["cells"][0][2]["expected"], 5);
}

#[test]
fn counting_modes() {
    for mode in ["verify", "eliminate"] {
        let out = godeaux(&["count-elliptic", "--mode", mode], None);
        assert_eq!(out.status.code(), Some(0), "{mode}");
        let v = json(&out);
        assert_eq!(v["checks"][0]["status"], "certified");
        assert_eq!(v["command"], format!("count-elliptic --mode {mode}"));
    }
    let out = godeaux(&["count-elliptic", "--mode", "eliminate", "--budget", "1"], None);
    assert_eq!(out.status.code(), Some(3));
    assert_eq!(json(&out)["checks"][0]["status"], "inconclusive-budget");
}

#[test]
fn verify_lines_is_certified() {
    let out = godeaux(&["verify", "lines", "--format", "md"], None);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("| lines.table | certified |"));
    assert!(text.ends_with("overall: certified\n"));
}

#[test]
fn bad_arguments_are_rejected() {
    assert_eq!(godeaux(&["verify", "nothing"], None).status.code(), Some(1));
    assert_eq!(godeaux(&["count-elliptic", "--budget", "0"], None).status.code(), Some(1));
    assert_eq!(godeaux(&["tables", "lines", "--frobnicate"], None).status.code(), Some(1));
    assert_eq!(godeaux(&["cache", "gc"], None).status.code(), Some(4));
}

#[test]
fn cache_gc_and_rerun() {
    let dir = tempfile::tempdir().unwrap();
    let empty = godeaux(&["cache", "gc"], Some(dir.path()));
    assert_eq!(json(&empty), serde_json::json!({ "kept": 0, "removed": 0 }));

    let first = godeaux(&["verify", "lines"], Some(dir.path()));
    assert_eq!(first.status.code(), Some(0));
    let entries = fs::read_dir(dir.path()).unwrap().count();
    assert!(entries > 0);

    fs::write(dir.path().join("0000.json"), "{ not json").unwrap();
    let mut victim = fs::read_dir(dir.path())
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.file_name().unwrap() != "0000.json")
        .collect::<Vec<_>>();
    victim.sort();
    let text = fs::read_to_string(&victim[0]).unwrap();
    fs::write(&victim[0], text.replacen("x1", "x2", 1)).unwrap();

    let gc = json(&godeaux(&["cache", "gc", "--format", "json"], Some(dir.path())));
    assert_eq!(gc["removed"], 2);
    assert_eq!(gc["kept"], entries - 1);

    let again = godeaux(&["verify", "lines"], Some(dir.path()));
    assert_eq!(again.stdout, first.stdout);
    let uncached = godeaux(&["verify", "lines"], None);
    assert_eq!(uncached.stdout, first.stdout);
}

#[test]
fn output_file_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let out = godeaux(&["audit", "a-infinity", "--output", path.to_str().unwrap()], None);
    assert!(matches!(out.status.code(), Some(0) | Some(2)));
    assert_eq!(fs::read(&path).unwrap(), out.stdout);
    assert_eq!(json(&out)["checks"][0]["id"], "audit.a-infinity");
}

#[test]
fn four_fibre_reduction_mode() {
    let out = godeaux(&["verify", "vanishing", "--mode", "reduction"], None);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["config"]["vanishing_mode"], "reduction");
    let check = v["checks"].as_array().unwrap().iter().find(|c| c["id"] == "vanishing.four-fibre").unwrap();
    assert_eq!(check["status"], "certified");
    assert_eq!(check["witness"]["mode"], "reduction");
    let case = &check["witness"]["cases"][0];
    assert!(case.get("rank").is_none() && case.get("residual_rank").is_some());
    assert_eq!(godeaux(&["verify", "vanishing", "--mode", "sideways"], None).status.code(), Some(1));
}
