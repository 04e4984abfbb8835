use std::io::Write;
use std::process::{Command, Output, Stdio};

use pdepoly::{
    build_block, build_full, homogeneous_solutions, parse_point, parse_poly, parse_scalar, polys_span_equal,
    rhs_solve, ExactMatrix, MultiIndex, MultiPoly, ParseContext,
};
use serde_json::Value;

fn pdepoly(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pdepoly")).args(args).output().expect("binary runs")
}

fn pdepoly_stdin(args: &[&str], input: &[u8]) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_pdepoly"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("binary runs");
    child.stdin.take().unwrap().write_all(input).unwrap();
    child.wait_with_output().unwrap()
}

fn stdout(out: &Output) -> String {
    assert!(out.status.success(), "failed: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn poly(text: &str) -> MultiPoly {
    parse_poly(text, &ParseContext::symbols(2)).unwrap()
}

fn json_poly(v: &Value, dim: usize) -> MultiPoly {
    let terms = v["monomials"].as_array().unwrap().iter().map(|m| {
        let exponent = m[0].as_array().unwrap().iter().map(|e| e.as_u64().unwrap() as u32).collect();
        (MultiIndex::new(exponent), parse_scalar(m[1].as_str().unwrap()).unwrap())
    });
    MultiPoly::from_terms(dim, terms.collect::<Vec<_>>())
}

fn json_basis(doc: &Value) -> Vec<MultiPoly> {
    let d = doc["d"].as_u64().unwrap() as usize;
    doc["basis"].as_array().unwrap().iter().map(|b| json_poly(b, d)).collect()
}

#[test]
fn laplace_basis_through_json() {
    let out = pdepoly(&["solve", "-x^2-y^2", "--root", "(0,0)", "--degree", "3", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["version"], 1);
    assert_eq!(doc["d"], 2);
    assert_eq!(doc["vars"], serde_json::json!(["x", "y"]));
    assert_eq!(doc["root"], serde_json::json!(["0", "0"]));
    assert_eq!(doc["degree_cap"], 3);
    assert!(doc.get("particular").is_none());
    let basis = json_basis(&doc);
    let expected = homogeneous_solutions(&poly("-x^2-y^2"), &parse_point("(0,0)", 2).unwrap(), 3).unwrap();
    assert_eq!(basis, expected.basis());
    let harmonic: Vec<_> =
        ["1", "x", "y", "x y", "y^2-x^2", "3x y^2-x^3", "y^3-3x^2 y"].iter().map(|t| poly(t)).collect();
    assert!(polys_span_equal(&basis, &harmonic, 2, 3).unwrap());
}

#[test]
fn complex_root_has_exponential_prefix() {
    let out = stdout(&pdepoly(&["solve", "-x^2-y^2", "--root", "(1,i)", "--degree", "3", "--format", "latex"]));
    assert_eq!(out.lines().count(), 4);
    assert!(out.lines().all(|l| l.contains("e^{ix - y}")), "{out}");
    let plain = stdout(&pdepoly(&["solve", "-x^2-y^2", "--root", "(1,i)", "--degree", "3"]));
    assert!(plain.contains("factor: exp(i*x - y)"), "{plain}");
    assert!(plain.contains("dimension: 4"), "{plain}");
}

#[test]
fn nonvanishing_symbol_gives_trivial_space() {
    let out = pdepoly(&["solve", "1", "--root", "(0,0)", "--degree", "2", "--format", "json"]);
    let doc: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert!(doc["basis"].as_array().unwrap().is_empty());
    assert!(doc["notes"][0].as_str().unwrap().starts_with("trivial space"));
}

#[test]
fn rhs_examples() {
    let helmholtz = ["-x^2-y^2-1", "--rhs", "2+3x-2x y+y^2"];
    let off_root = stdout(&pdepoly(&[&["solve-rhs"], &helmholtz[..], &["--root", "(0,0)"]].concat()));
    assert!(off_root.contains("particular: -4 - 3*x + 2*x*y - y^2 (unique)"), "{off_root}");

    let at_root = pdepoly(&[&["solve-rhs"], &helmholtz[..], &["--root", "(i,0)", "--format", "json"]].concat());
    let doc: Value = serde_json::from_str(&stdout(&at_root)).unwrap();
    assert_eq!(doc["degree_cap"], 3);
    assert_eq!(json_basis(&doc).len(), 4);
    let library = rhs_solve(&poly("-x^2-y^2-1"), &poly("2+3x-2x y+y^2"), &parse_point("(i,0)", 2).unwrap(), None)
        .unwrap();
    assert_eq!(Some(&json_poly(&doc["particular"], 2)), library.particular());

    let poisson = stdout(&pdepoly(&["solve-rhs", "-x^2-y^2", "--rhs", "3+x-2y", "--root", "(1,1)"]));
    assert!(poisson.contains("degree cap: 1"), "{poisson}");
    assert!(poisson.contains("particular: (-3/2+1/2i) - 1/2*x + y (unique)"), "{poisson}");
}

#[test]
fn solutions_pass_verification() {
    let cases: [(&[&str], &[&str]); 5] = [
        (&["solve", "-x^2-y^2", "--root", "(1,i)", "--degree", "3"], &["-x^2-y^2"]),
        (&["solve", "Dx^2 - Dy", "--operator", "--root", "(0,0)", "--degree", "4"], &["--operator", "Dx^2 - Dy"]),
        (
            &["solve", "-x^2-y^2-z^2", "-x y-x z-y z", "--root", "(0,0,0)", "--degree", "3"],
            &["-x^2-y^2-z^2", "-x y-x z-y z"],
        ),
        (
            &["solve-rhs", "-x^2-y^2-1", "--rhs", "2+3x-2x y+y^2", "--root", "(i,0)"],
            &["-x^2-y^2-1", "--rhs", "2+3x-2x y+y^2"],
        ),
        (&["solve-rhs", "-x^2-y^2", "--rhs", "3+x-2y", "--root", "(1,1)"], &["-x^2-y^2", "--rhs", "3+x-2y"]),
    ];
    let dir = tempfile::tempdir().unwrap();
    for (n, (solve, check)) in cases.iter().enumerate() {
        let json = stdout(&pdepoly(&[solve, &["--format", "json"][..]].concat()));
        let path = dir.path().join(format!("solution{n}.json"));
        std::fs::write(&path, &json).unwrap();
        let from_file = pdepoly(&[&["verify", "--solution", path.to_str().unwrap()], *check].concat());
        assert_eq!(code(&from_file), 0, "{}", String::from_utf8_lossy(&from_file.stderr));
        let piped = pdepoly_stdin(&[&["verify", "--solution", "-"], *check].concat(), json.as_bytes());
        assert_eq!(code(&piped), 0, "{}", String::from_utf8_lossy(&piped.stderr));
    }
}

#[test]
fn verification_failure_exits_6() {
    let json = stdout(&pdepoly(&["solve", "-x^2-y^2", "--root", "(0,0)", "--degree", "2", "--format", "json"]));
    let out = pdepoly_stdin(&["verify", "--solution", "-", "-x^2-y^2-1"], json.as_bytes());
    assert_eq!(code(&out), 6);
    let rhs_json = stdout(&pdepoly(&[
        "solve-rhs", "-x^2-y^2-1", "--rhs", "2+3x", "--root", "(0,0)", "--format", "json",
    ]));
    let wrong_rhs = pdepoly_stdin(&["verify", "--solution", "-", "-x^2-y^2-1", "--rhs", "2+3y"], rhs_json.as_bytes());
    assert_eq!(code(&wrong_rhs), 6);
}

fn csv_matrix(text: &str) -> ExactMatrix {
    ExactMatrix::from_rows(
        text.lines().map(|l| l.split(',').map(|c| parse_scalar(c).unwrap()).collect()).collect(),
    )
    .unwrap()
}

#[test]
fn csv_dumps_reparse_exactly() {
    for root in ["(0,0)", "(1,i)", "(1/2,-2/3+i)"] {
        let out = stdout(&pdepoly(&["matrix", "-x^2-y^2", "--root", root, "--degree", "3", "--format", "csv"]));
        let built = build_full(&poly("-x^2-y^2"), &parse_point(root, 2).unwrap(), 3).unwrap();
        assert_eq!(csv_matrix(&out), built.matrix, "root {root}");
    }
    let block = stdout(&pdepoly(&[
        "matrix", "-x^2-y^2", "--root", "(1,1)", "--degree", "3", "--block", "3", "3", "--format", "csv",
    ]));
    let expected = build_block(&poly("-x^2-y^2"), &parse_point("(1,1)", 2).unwrap(), 3, 3).unwrap();
    assert_eq!(csv_matrix(&block), expected);
    assert_eq!(block, "-2,0,0,0\n0,-2,0,0\n0,0,-2,0\n0,0,0,-2\n");
}

#[test]
fn matrix_json_uses_exact_strings() {
    let out = stdout(&pdepoly(&["matrix", "-x^2-y^2", "--root", "(1,i)", "--degree", "1", "--format", "json"]));
    let doc: Value = serde_json::from_str(&out).unwrap();
    assert_eq!(doc["rows"], 3);
    assert_eq!(doc["entries"][0], serde_json::json!(["0", "2i", "-2"]));
}

#[test]
fn dimension_reports() {
    let helmholtz = stdout(&pdepoly(&["dim", "-x^2-y^2-1", "--root", "(i,0)", "--degree", "3"]));
    assert_eq!(helmholtz, "m=1, predicted=4, computed=4\n");
    let trivial = stdout(&pdepoly(&["dim", "-x^2-y^2", "--root", "(1,1)", "--degree", "3"]));
    assert_eq!(trivial, "m=0, predicted=0, computed=0\n");
}

#[test]
fn error_exit_codes() {
    let parse = pdepoly(&["solve", "-x^2+", "--root", "(0,0)", "--degree", "2"]);
    assert_eq!(code(&parse), 2);
    assert!(String::from_utf8_lossy(&parse.stderr).contains("column 6"));
    assert_eq!(code(&pdepoly(&["solve", "x^2 + w", "--root", "(0,0)", "--degree", "2"])), 2);
    assert_eq!(code(&pdepoly(&["solve", "x", "--root", "(0,0,0)", "--vars", "x,y", "--degree", "2"])), 3);
    let inconsistent = pdepoly(&[
        "solve-rhs", "-x^2-y^2-1", "--rhs", "2+3x-2x y+y^2", "--root", "(i,0)", "--degree", "2",
    ]);
    assert_eq!(code(&inconsistent), 4);
    assert_eq!(code(&pdepoly_stdin(&["verify", "--solution", "-", "x"], b"{not json")), 2);
}

#[test]
fn custom_variable_names() {
    let out = stdout(&pdepoly(&["solve", "-s^2 - t^2", "--vars", "s,t", "--root", "(0,0)", "--degree", "2"]));
    assert!(out.contains("  s*t\n"), "{out}");
    let op = stdout(&pdepoly(&[
        "solve", "Ds^2 + Dt^2", "--operator", "--vars", "s,t", "--root", "(0,0)", "--degree", "2",
    ]));
    assert_eq!(op, out);
}
