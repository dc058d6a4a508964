use std::process::{Command, Output};

use ibis_cli::report::flatten;
use serde_json::Value;

fn ibis(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ibis"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(args: &[&str]) -> i32 {
    ibis(args).status.code().expect("exited")
}

fn stdout(args: &[&str]) -> String {
    let out = ibis(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn json(args: &[&str]) -> Value {
    let mut a = args.to_vec();
    a.push("--json");
    serde_json::from_str(&stdout(&a)).unwrap()
}

fn klein_file() -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(".grp").tempfile().unwrap();
    std::io::Write::write_all(
        &mut f,
        b"# Klein four-group, regular\ndegree 4\ngen (1 2)(3 4)\ngen (1 3)(2 4)\n",
    )
    .unwrap();
    f
}

#[test]
fn exit_codes() {
    let k4 = klein_file();
    let k4 = k4.path().to_str().unwrap();
    let matrix: &[(&[&str], i32)] = &[
        (&["analyze", "--catalog", "sym:5"], 0),
        (&["analyze", "--group", k4], 0),
        (&["analyze", "--catalog", "diag:alt:5:2:top=sym", "--nodes", "3"], 2),
        (&["analyze", "--catalog", "no:such:group"], 1),
        (&["analyze", "--group", "/nonexistent/file.grp"], 1),
        (&["analyze", "--catalog", "sym:5", "--bogus"], 1),
        (&["analyze", "--catalog", "sym:5", "--workers", "0"], 1),
        (&["analyze"], 1),
        (&["ct", "--catalog", "alt:7"], 0),
        (&["ct", "--catalog", "alt:8", "--enumeration-cap", "100"], 1),
        (&["catalog"], 0),
        (&["verify", "--suite", "nope"], 1),
        (&["--help"], 0),
    ];
    for (args, want) in matrix {
        assert_eq!(code(args), *want, "{args:?}");
    }
}

#[test]
fn unparseable_group_file_is_an_error() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    std::io::Write::write_all(&mut f, b"degree 3\ngen (1 2 7)\n").unwrap();
    let out = ibis(&["analyze", "--group", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
}

#[test]
fn klein_group_is_a_single_point_base() {
    let k4 = klein_file();
    let v = json(&["analyze", "--group", k4.path().to_str().unwrap()]);
    assert_eq!(v["base_size"], 1);
    assert_eq!(v["spectrum"], serde_json::json!([1]));
    assert_eq!(v["ibis"], true);
    assert_eq!(v["order"], "4");
}

#[test]
fn analyze_reports() {
    let v = json(&["analyze", "--catalog", "sym:6:sets:2"]);
    assert_eq!((v["ibis"].as_bool(), v["degree"].as_u64()), (Some(true), Some(15)));
    let v = json(&["analyze", "--catalog", "diag:psl2:4:2"]);
    assert_eq!(v["ibis"], true);
    assert_eq!(v["base_size"], 3);
    assert_eq!(v["degree"], 60);
    assert_eq!(v["order"], "3600");
    assert_eq!(v["matroid"]["rank"], 3);

    let v = json(&["analyze", "--catalog", "prod:sym:5:2"]);
    assert_eq!(v["ibis"], false);
    let w = v["witnesses"].as_object().unwrap();
    assert!(w.len() >= 2);
    for (size, pts) in w {
        let pts = pts.as_array().unwrap();
        assert_eq!(pts.len(), size.parse::<usize>().unwrap());
        assert!(pts.iter().all(|p| (1..=25).contains(&p.as_u64().unwrap())));
    }
}

#[test]
fn required_json_fields() {
    let v = json(&["analyze", "--catalog", "agl:1:7"]);
    for key in [
        "group",
        "degree",
        "order",
        "primitive",
        "base_size",
        "spectrum",
        "ibis",
        "witnesses",
        "capped",
        "elapsed_ms",
    ] {
        assert!(v.get(key).is_some(), "{key}");
    }
    assert!(v["order"].is_string());
}

fn without_elapsed(pairs: Vec<(String, String)>) -> Vec<(String, String)> {
    pairs.into_iter().filter(|(k, _)| k != "elapsed_ms").collect()
}

fn text_pairs(text: &str) -> Vec<(String, String)> {
    text.lines()
        .map(|l| {
            let (k, v) = l.split_once(':').unwrap();
            (k.to_owned(), v.trim_start().to_owned())
        })
        .collect()
}

#[test]
fn text_and_json_agree() {
    for args in [
        &["analyze", "--catalog", "psl2:7"][..],
        &["analyze", "--catalog", "diag:alt:5:2:twist"],
        &["ct", "--catalog", "alt:7"],
        &["ct", "--catalog", "psl2:8"],
    ] {
        let text = text_pairs(&stdout(args));
        let from_json = flatten(&json(args));
        assert_eq!(without_elapsed(text), without_elapsed(from_json), "{args:?}");
    }
}

#[test]
fn reports_are_deterministic() {
    for args in [
        &["analyze", "--catalog", "diag:alt:5:2:top=sym", "--json"][..],
        &[
            "analyze",
            "--catalog",
            "diag:alt:5:2:top=sym",
            "--json",
            "--workers",
            "3",
        ],
        &["ct", "--catalog", "alt:6", "--json"],
    ] {
        let a = without_elapsed(flatten(&serde_json::from_str(&stdout(args)).unwrap()));
        let b = without_elapsed(flatten(&serde_json::from_str(&stdout(args)).unwrap()));
        assert_eq!(a, b, "{args:?}");
    }
    let one = json(&["analyze", "--catalog", "diag:alt:5:2:top=sym"]);
    let many = json(&["analyze", "--catalog", "diag:alt:5:2:top=sym", "--workers", "4"]);
    for key in ["spectrum", "witnesses", "base_size", "ibis"] {
        assert_eq!(one[key], many[key], "{key}");
    }
}

#[test]
fn catalog_listing() {
    let a = stdout(&["catalog"]);
    assert_eq!(a, stdout(&["catalog"]));
    let row = |name: &str| {
        a.lines()
            .find(|l| l.split_whitespace().next() == Some(name))
            .unwrap_or_else(|| panic!("{name} listed"))
            .to_owned()
    };
    assert!(row("agl:1:7").ends_with("IBIS, b=2"));
    assert!(row("alt7:15").ends_with("IBIS"));
    let v = json(&["catalog"]);
    let entries = v.as_array().unwrap();
    assert_eq!(entries.len(), a.lines().count() - 1);
    let agl = entries.iter().find(|e| e["name"] == "agl:1:7").unwrap();
    assert_eq!(agl["expected"], "IBIS, b=2");
    assert_eq!(agl["degree"], "7");
}

#[test]
fn ct_commands() {
    let v = json(&["ct", "--catalog", "psl2:8"]);
    assert_eq!(
        (v["ct"].as_bool(), v["methods_agree"].as_bool()),
        (Some(true), Some(true))
    );
    assert!(v["violation"].is_null());

    let v = json(&["ct", "--catalog", "alt:7"]);
    assert_eq!(v["ct"], false);
    assert_eq!(v["methods_agree"], true);
    for k in ["a", "t", "b"] {
        assert!(v["violation"][k].as_str().unwrap().starts_with('('), "{k}");
    }

    assert_eq!(json(&["ct", "--catalog", "psl2:4"])["ct"], true);
}

#[test]
fn capped_suite_reports_skips() {
    let out = ibis(&["verify", "--nodes", "10", "--json"]);
    assert_ne!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let claims = v["claims"].as_array().unwrap();
    let capped: Vec<_> = claims.iter().filter(|c| c["capped"] == true).collect();
    assert!(!capped.is_empty());
    for c in capped {
        assert_eq!(c["status"], "skipped");
        assert!(c["reason"].is_string());
    }
}

#[test]
fn small_suite_passes() {
    let out = ibis(&["verify"]);
    let table = String::from_utf8(out.stdout).unwrap();
    assert_eq!(out.status.code(), Some(0), "{table}");
    assert!(table.contains("11 passed, 0 failed, 2 skipped"), "{table}");
}
