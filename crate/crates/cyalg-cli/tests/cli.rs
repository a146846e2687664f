use std::path::PathBuf;
use std::process::{Command, Output};

fn corpus(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "corpus", name]
        .iter()
        .collect();
    p.display().to_string()
}

fn cyalg(args: &[&str]) -> Output {
    let args: Vec<String> = args
        .iter()
        .map(|a| {
            if a.ends_with(".quiver") || a.ends_with(".dimer") || a.ends_with(".complex") {
                corpus(a)
            } else {
                a.to_string()
            }
        })
        .collect();
    Command::new(env!("CARGO_BIN_EXE_cyalg"))
        .args(&args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exited normally")
}

#[test]
fn dims_of_the_plane() {
    let o = cyalg(&["dims", "kxy.quiver", "--max-degree", "4"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("totals: 1,2,3,4,5"));
    let w = cyalg(&["dims", "kxy.quiver", "--window", "-3..-1"]);
    assert_eq!(code(&w), 0);
    assert!(stdout(&w).contains("totals: 2,3,4"));
}

#[test]
fn plane_cy_check_needs_sigma() {
    assert_eq!(
        code(&cyalg(&["cy-check", "kxy.quiver", "--twist", "sigma"])),
        0
    );
    let bad = cyalg(&["cy-check", "kxy.quiver", "--twist", "id"]);
    assert_eq!(code(&bad), 1);
    assert!(stdout(&bad).contains("result: FAIL"));
}

#[test]
fn hexagon_has_three_matchings() {
    let o = cyalg(&["dimer", "matchings", "hex.dimer"]);
    assert_eq!(code(&o), 0);
    assert!(stdout(&o).contains("3 perfect matchings"));
}

/// Every corpus file through its designated subcommand, with the expected exit code.
#[test]
fn corpus_runs() {
    let cases: &[(&[&str], i32)] = &[
        (&["dims", "a2.quiver"], 0),
        (&["knit", "a2.quiver"], 0),
        (&["ig-check", "kronecker.quiver", "--d", "0"], 1),
        (&["qhat", "kronecker.quiver", "--n", "2"], 0),
        (&["qhat", "three_vertex.quiver", "--n", "1"], 0),
        (&["corpi", "three_vertex.quiver", "--n", "1"], 0),
        (&["cy-check", "kx.quiver"], 0),
        (&["verify-root", "kxy_23.quiver"], 0),
        (&["build-abc", "kxyz.quiver"], 0),
        (&["cy-check", "skew2.quiver"], 0),
        (&["cy-check", "skew3.quiver"], 0),
        (&["build-abc", "skew4.quiver", "--a", "2"], 0),
        (
            &[
                "cy-check",
                "kxy.quiver",
                "--twist",
                "sigma",
                "--complex",
                "kxy_koszul.complex",
            ],
            0,
        ),
        (
            &["complex", "kxy_koszul_dg.complex", "--over", "kxy.quiver"],
            0,
        ),
        (
            &["complex", "kxy_koszul_dual.complex", "--over", "kxy.quiver"],
            0,
        ),
        (&["dimer", "validate", "di.dimer"], 0),
        (&["dimer", "jacobian", "hex.dimer"], 0),
        (&["dimer", "consistency", "univalent.dimer"], 1),
        (&["dimer", "validate", "disk.dimer"], 1),
    ];
    for (args, expected) in cases {
        let o = cyalg(args);
        assert_eq!(
            code(&o),
            *expected,
            "{args:?}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
    }
}

#[test]
fn transported_dual_matches_the_corpus_dual() {
    let o = cyalg(&[
        "complex",
        "kxy_koszul.complex",
        "--over",
        "kxy.quiver",
        "--transport",
        "--dualize",
    ]);
    assert_eq!(code(&o), 0);
    let expected = cyalg(&["complex", "kxy_koszul_dual.complex", "--over", "kxy.quiver"]);
    let body = |s: String| {
        s.lines()
            .skip(4)
            .filter(|l| !l.starts_with('#'))
            .map(str::to_string)
            .collect::<Vec<_>>()
    };
    assert_eq!(body(stdout(&o)), body(stdout(&expected)));
}

#[test]
fn parse_errors_carry_file_and_line() {
    let dir = std::env::temp_dir().join(format!("cyalg-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let bad = dir.join("bad.quiver");
    std::fs::write(
        &bad,
        "[vertices]\n0\n[arrows]\nx 0 0 -1\n[relations]\nx*z\n",
    )
    .unwrap();
    let o = cyalg(&["dims", bad.to_str().unwrap()]);
    assert_eq!(code(&o), 2);
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.contains("bad.quiver:6:"), "{err}");
    assert_eq!(code(&cyalg(&["dims", "missing.quiver"])), 2);
    assert_eq!(
        code(&cyalg(&["dims", "kxy.quiver", "--window", "0..-2"])),
        2
    );
    assert_eq!(code(&cyalg(&["knit", "kxyz.quiver", "--a", "3"])), 1);
}

#[test]
fn twist_from_a_file() {
    let dir = std::env::temp_dir().join(format!("cyalg-twist-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let t = dir.join("minus.twist");
    std::fs::write(&t, "# x -> -x, y -> -y\nx -1\ny -1\n").unwrap();
    assert_eq!(
        code(&cyalg(&[
            "cy-check",
            "kxy.quiver",
            "--twist",
            t.to_str().unwrap()
        ])),
        0
    );
}

#[test]
fn json_reports_carry_conventions() {
    let o = cyalg(&[
        "--format",
        "json",
        "verify-root",
        "kxy.quiver",
        "--steps",
        "6",
    ]);
    assert_eq!(code(&o), 0);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["pass"], true);
    assert!(v["conventions"]["composition"]
        .as_str()
        .unwrap()
        .contains("left to right"));
    assert_eq!(v["result"]["checks"].as_array().unwrap().len(), 6);
}

#[test]
fn dot_output() {
    let o = cyalg(&[
        "--format",
        "dot",
        "knit",
        "kronecker.quiver",
        "--steps",
        "2",
    ]);
    assert_eq!(code(&o), 0);
    let s = stdout(&o);
    assert!(s.starts_with("digraph \"AR\" {"));
    assert!(s.contains("[label=\"2\"]"));
    assert_eq!(code(&cyalg(&["--format", "dot", "dims", "kx.quiver"])), 2);
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["--format", "json", "dimer", "consistency", "di.dimer"][..],
        &["build-abc", "kxy.quiver"][..],
        &["--format", "dot", "dimer", "qp", "di.dimer"][..],
    ] {
        assert_eq!(cyalg(args).stdout, cyalg(args).stdout, "{args:?}");
    }
}
