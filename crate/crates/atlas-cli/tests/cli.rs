use std::path::Path;
use std::process::{Command, Output};

fn atlas(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_atlas"))
        .args(args)
        .env_remove("ATLAS_TABLE_CAP")
        .output()
        .expect("run atlas")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn schema(name: &str) -> serde_json::Value {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../docs/schema").join(name);
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn assert_valid(schema_name: &str, text: &str) {
    let instance: serde_json::Value = serde_json::from_str(text).unwrap();
    let validator = jsonschema::validator_for(&schema(schema_name)).unwrap();
    let errors: Vec<String> = validator.iter_errors(&instance).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{schema_name}: {errors:#?}");
}

#[test]
fn census_text_for_s3() {
    let out = atlas(&["census", "S3", "--no-cache"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("2 components"));
    assert!(text.contains("{3,2}") && text.contains("{4,2-3}"));
}

#[test]
fn census_csv_has_fixed_columns() {
    let out = atlas(&["census", "A4", "--format", "csv", "--no-cache"]);
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("genus,faces,n,lambda1,lambda2,vertices,edges,count"));
    assert_eq!(lines.count(), 3);
}

#[test]
fn census_json_validates() {
    let out = atlas(&["census", "PSL2(7)", "--format", "json", "--no-cache"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_valid("atlas-document.schema.json", &text);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["total_components"], 385);
}

#[test]
fn abelian_group_warns() {
    let out = atlas(&["census", "perm:(1 2)", "--no-cache"]);
    assert!(out.status.success());
    assert!(String::from_utf8_lossy(&out.stderr).contains("abelian"));
    assert!(stdout(&out).contains("0 components"));
}

#[test]
fn exit_codes() {
    assert_eq!(atlas(&["census", "X9"]).status.code(), Some(2));
    assert_eq!(atlas(&["census", "SL2(4)"]).status.code(), Some(2));
    assert_eq!(atlas(&["cover", "S4", "--kernel", "(1 2)"]).status.code(), Some(2));
    assert_eq!(atlas(&["cover", "S4", "--kernel", "(1 2)(3 4),(1 3)(2 4)", "--central"]).status.code(), Some(2));
    assert_eq!(atlas(&["export", "S3", "--component", "2"]).status.code(), Some(2));
    assert_eq!(atlas(&["bogus"]).status.code(), Some(2));
    let capped = Command::new(env!("CARGO_BIN_EXE_atlas"))
        .args(["census", "S3", "--no-cache"])
        .env("ATLAS_TABLE_CAP", "5")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
}

#[test]
fn diff_golden_identical_and_mismatched() {
    let out = atlas(&["diff-golden", "S4", "--no-cache"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("identical"));

    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.csv");
    let csv = stdout(&atlas(&["census", "S4", "--format", "csv", "--no-cache"]));
    std::fs::write(&path, &csv).unwrap();
    assert_eq!(atlas(&["diff-golden", "S4", path.to_str().unwrap(), "--no-cache"]).status.code(), Some(0));

    let edited = csv.replacen(",1\n", ",2\n", 1);
    std::fs::write(&path, edited).unwrap();
    let out = atlas(&["diff-golden", "S4", path.to_str().unwrap(), "--no-cache"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("mismatch"));

    std::fs::write(&path, "not,a,table\n").unwrap();
    assert_eq!(atlas(&["diff-golden", "S4", path.to_str().unwrap(), "--no-cache"]).status.code(), Some(2));
}

#[test]
fn export_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.json");
    let out = atlas(&["export", "S3", "--component", "0", "--out", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert_valid("export.schema.json", &text);
    let doc: atlas_core::complex::ExportDocument = serde_json::from_str(&text).unwrap();
    let inv = &doc.invariants;
    assert_eq!(doc.triangles.len() as u32, 2 * inv.edges);
    assert_eq!(doc.faces.len() as u32, inv.faces);
    assert_eq!(doc.vertices.len() as u32, inv.vertices);
    assert_eq!(doc.recompute_invariants().unwrap(), doc.invariants);
    let rows = atlas_core::golden::golden_table("S3").unwrap();
    assert!(rows
        .iter()
        .any(|r| (r.genus, r.faces, r.vertices, r.edges) == (inv.genus, inv.faces, inv.vertices, inv.edges)));
}

#[test]
fn cover_json_validates() {
    let out = atlas(&["cover", "S4", "--kernel", "(1 2)(3 4),(1 3)(2 4)", "--format", "json"]);
    assert!(out.status.success());
    assert_valid("cover-report.schema.json", &stdout(&out));
    let out = atlas(&["cover", "SL2(3)", "--central", "--format", "json"]);
    assert!(out.status.success());
    assert_valid("cover-report.schema.json", &stdout(&out));
}

#[test]
fn actions_outputs() {
    let out = atlas(&["actions", "D8"]);
    assert!(out.status.success());
    let text = stdout(&out);
    let row = text.lines().find(|l| l.contains("{4,2}")).unwrap();
    let fields: Vec<&str> = row.split_whitespace().collect();
    // genus faces symbol V E count |Q| orbits gbar hurwitz
    assert_eq!(fields[6], "4");
    assert_eq!(fields[4], "4");

    let out = atlas(&["actions", "ES(3)", "--aut", "--format", "json"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert_valid("atlas-document.schema.json", &text);
    let doc: serde_json::Value = serde_json::from_str(&text).unwrap();
    for r in doc["reports"]["components"].as_array().unwrap() {
        assert_eq!(r["q_order"], 18);
    }
}

#[test]
fn cache_hit_matches_fresh_output() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let fresh = stdout(&atlas(&["census", "S4", "--format", "json", "--no-cache"]));
    let first = stdout(&atlas(&["census", "S4", "--format", "json", "--cache-dir", cache]));
    let second = stdout(&atlas(&["census", "S4", "--format", "json", "--cache-dir", cache]));
    assert_eq!(fresh, first);
    assert_eq!(first, second);
    assert!(walk_json_files(dir.path()) >= 1);
}

fn walk_json_files(dir: &Path) -> usize {
    std::fs::read_dir(dir)
        .unwrap()
        .map(|e| {
            let path = e.unwrap().path();
            if path.is_dir() {
                walk_json_files(&path)
            } else {
                (path.extension().is_some_and(|x| x == "json")) as usize
            }
        })
        .sum()
}

#[test]
fn job_count_does_not_change_output() {
    let one = stdout(&atlas(&["--jobs", "1", "census", "S5", "--format", "csv", "--no-cache"]));
    let four = stdout(&atlas(&["--jobs", "4", "census", "S5", "--format", "csv", "--no-cache"]));
    assert_eq!(one, four);
}
