use std::path::PathBuf;

use z2z2_cli::run;

fn call(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("z2z2").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("z2z2-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path
}

#[test]
fn verify_dmodule() {
    let (code, out, _) = call(&["verify", "--algebra", "g121", "--realization", "dmodule"]);
    assert_eq!(code, 0);
    assert!(out.ends_with("20 generators, 210 unordered pairs verified\n"), "{out}");
    let (code, out, _) = call(&["verify", "--algebra", "g22"]);
    assert_eq!(code, 0);
    assert!(out.contains("24 generators, 300 unordered pairs verified"));
}

#[test]
fn verify_vector_fields() {
    let (code, out, _) = call(&["verify", "--algebra", "n1", "--realization", "vf"]);
    assert_eq!(
        (code, out.trim_end()),
        (0, "13 generators, 91 unordered pairs verified")
    );
    let (code, _, _) = call(&["verify", "--algebra", "g121", "--realization", "vf"]);
    assert_eq!(code, 0);
    let (code, out, _) = call(&["verify", "--algebra", "g22", "--realization", "vf"]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL (K, F+)"));
    assert!(out.contains("5 discrepancies"));
}

#[test]
fn output_is_independent_of_jobs() {
    for args in [
        vec!["verify", "--algebra", "g22", "--realization", "vf", "--format", "json"],
        vec!["jacobi", "--algebra", "g121", "--verbose"],
        vec!["extract", "--algebra", "g22"],
    ] {
        let (c1, serial, _) = call(&[args.clone(), vec!["--jobs", "1"]].concat());
        let (c4, parallel, _) = call(&[args.clone(), vec!["--jobs", "4"]].concat());
        assert_eq!((c1, &serial), (c4, &parallel), "{args:?}");
    }
}

#[test]
fn jacobi_counts() {
    let (code, out, _) = call(&["jacobi", "--algebra", "g22"]);
    assert_eq!(code, 0);
    assert_eq!(out, "g22.table: 13824 triples satisfy the graded Jacobi identity\n");
    let (code, out, _) = call(&["jacobi", "--algebra", "n1"]);
    assert_eq!(code, 0);
    assert!(out.contains("2197 triples"));
}

#[test]
fn mutated_table_file() {
    let (_, text, _) = call(&["export", "--entry", "g121.table"]);
    let bad = text.replace("[H,K] = 2 D", "[H,K] = 3 D");
    assert_ne!(bad, text);
    let path = scratch("bad.z2", &bad);
    let (code, out, _) = call(&["jacobi", "--table-file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL ("));
    let (code, out, _) = call(&["verify", "--algebra", "g121", "--table-file", path.to_str().unwrap()]);
    assert_eq!(code, 1);
    assert!(out.contains("FAIL (H, K)"));
}

#[test]
fn json_table_file() {
    let (code, json, _) = call(&["export", "--entry", "g22.table", "--format", "json"]);
    assert_eq!(code, 0);
    let path = scratch("g22.json", &json);
    let (code, out, _) = call(&["verify", "--algebra", "g22", "--table-file", path.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn extract_prints_the_table() {
    let (code, out, _) = call(&["extract", "--algebra", "g121"]);
    assert_eq!(code, 0);
    let (_, reference, _) = call(&["export", "--entry", "g121.table"]);
    let brackets = |s: &str| {
        s.lines()
            .filter(|l| l.starts_with(['[', '{']))
            .map(String::from)
            .collect::<Vec<_>>()
    };
    assert_eq!(brackets(&out), brackets(&reference));
    let (code, out, _) = call(&["extract", "--algebra", "n1", "--format", "latex"]);
    assert_eq!(code, 0);
    assert!(out.contains("\\begin{align*}"));
}

#[test]
fn realization_file() {
    let (_, text, _) = call(&["export", "--entry", "n1.vf"]);
    let path = scratch("n1.vf.z2", &text);
    let p = path.to_str().unwrap();
    let (code, _, _) = call(&["verify", "--realization-file", p, "--algebra", "n1"]);
    assert_eq!(code, 0);
    let mutated = text.replace("Lam = x1*D(th2)", "Lam = 2*x1*D(th2)");
    assert_ne!(mutated, text);
    let bad = scratch("n1.bad.z2", &mutated);
    let (code, out, _) = call(&["verify", "--realization-file", bad.to_str().unwrap(), "--algebra", "n1"]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("Lam"));
    let (code, out, _) = call(&["extract", "--realization-file", p]);
    assert_eq!(code, 0);
    assert!(out.contains("{Q,S} = -2 D"), "{out}");
}

#[test]
fn weights_and_split() {
    let (code, out, _) = call(&["weights", "--algebra", "g121", "--basis", "pm"]);
    assert_eq!(code, 0);
    assert!(out.contains("S- (-1/2, -1)"));
    assert!(out.contains("Pi+ (1/2, 1)"));
    let (code, out, _) = call(&["split", "--algebra", "g22", "--basis", "pm"]);
    assert_eq!(code, 0);
    assert!(out.contains("0: D Rbar\n"));
    let (code, out, _) = call(&["weights", "--algebra", "n1", "--format", "json"]);
    assert_eq!(code, 0);
    assert!(out.contains("\"grading\""));
    let (code, _, err) = call(&["weights", "--algebra", "g121", "--basis", "real", "--grading", "D,R"]);
    assert_eq!(code, 2);
    assert!(err.contains("eigenvector"));
}

#[test]
fn export_entries() {
    let (code, out, _) = call(&["export", "--list"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().count(), 19);
    assert!(out.contains("g22.table.pm\ttable"));
    let (code, out, _) = call(&["export", "--entry", "g121.basis"]);
    assert_eq!(code, 0);
    assert_eq!(out.lines().filter(|l| l.starts_with("basis ")).count(), 20);
    let (code, _, err) = call(&["export", "--entry", "nope"]);
    assert_eq!(code, 2);
    assert!(err.contains("nope"));
}

#[test]
fn input_errors() {
    let (code, _, err) = call(&["verify", "--unknown"]);
    assert_eq!(code, 2);
    assert!(err.contains("--unknown"));
    let (code, _, _) = call(&[]);
    assert_eq!(code, 2);
    let path = scratch("broken.z2", "kind table\nname x\nbasis H (0,0)\n[H,H] = 2 Q\n");
    let (code, _, err) = call(&["jacobi", "--table-file", path.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("line 4"), "{err}");
    let (code, _, _) = call(&["verify", "--algebra", "n1", "--realization", "vf", "--basis", "pm"]);
    assert_eq!(code, 2);
    let (code, out, _) = call(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("verify"));
}
