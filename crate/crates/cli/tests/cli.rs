use nilrigid_cli::report::{
    AnalyzeDocument, GeometryDocument, GradingDocument, PerturbDocument, ValidateDocument, VerdictReport,
};
use nilrigid_cli::{run, InputDocument, Outcome};
use serde::de::DeserializeOwned;
use std::io::Write;

fn cli(args: &[&str]) -> Outcome {
    run(std::iter::once("nilrigid").chain(args.iter().copied()))
}

fn file(ext: &str, text: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::Builder::new().suffix(ext).tempfile().unwrap();
    f.write_all(text.as_bytes()).unwrap();
    f
}

fn roundtrip<T: DeserializeOwned + serde::Serialize + PartialEq + std::fmt::Debug>(out: &Outcome) -> T {
    let doc: T = serde_json::from_str(&out.stdout).unwrap();
    assert_eq!(serde_json::to_string_pretty(&doc).unwrap() + "\n", out.stdout);
    doc
}

const DILATION: &str = r#"
name = "dilation"
dim = 3
basis = ["X", "Y", "Z"]
matrix = [["2", "0", "0"], ["0", "2", "0"], ["0", "0", "4"]]

[[brackets]]
left = "X"
right = "Y"
result = { Z = "1" }
"#;

#[test]
fn examples_load() {
    for name in ["smale", "free32", "heisenberg", "cat2"] {
        let out = cli(&["example", name]);
        assert_eq!(out.code, 0, "{}", out.stderr);
        let doc = InputDocument::parse(&out.stdout, nilrigid_cli::Format::Toml).unwrap();
        let json = cli(&["example", name, "--json"]);
        assert_eq!(InputDocument::parse(&json.stdout, nilrigid_cli::Format::Json).unwrap(), doc);
        assert_eq!(cli(&["validate", "--example", name]).code, 0);
    }
    assert_eq!(cli(&["example", "nope"]).code, 1);
}

#[test]
fn smale_example_is_verbatim() {
    let out = cli(&["example", "smale"]);
    let doc = InputDocument::parse(&out.stdout, nilrigid_cli::Format::Toml).unwrap();
    let row = |i: usize| doc.matrix[i][..4].iter().map(|v| format!("{v:?}")).collect::<Vec<_>>().join(",");
    assert_eq!(row(0), r#"Text("26"),Text("45"),Text("71"),Text("123")"#);
    assert_eq!(row(3), r#"Text("5042"),Text("8733"),Text("16686"),Text("28901")"#);
}

#[test]
fn written_example_round_trips() {
    let toml = cli(&["example", "free32"]).stdout;
    let f = file(".toml", &toml);
    let path = f.path().to_str().unwrap();
    let from_file = cli(&["verdict", path, "--json"]);
    let builtin = cli(&["verdict", "--example", "free32", "--json"]);
    let a: VerdictReport = roundtrip(&from_file);
    let b: VerdictReport = roundtrip(&builtin);
    assert_eq!(a.verdict, "NOT RIGID");
    assert_eq!((a.spectrum, a.grading), (b.spectrum, b.grading));
    let json = file(".json", &cli(&["example", "free32", "--json"]).stdout);
    assert_eq!(cli(&["grading", json.path().to_str().unwrap()]).code, 0);
}

#[test]
fn verdicts_and_exit_codes() {
    let smale = cli(&["verdict", "--example", "smale"]);
    assert_eq!(smale.code, 0);
    assert!(smale.stdout.starts_with("smale: RIGID"));
    let free = cli(&["verdict", "--example", "free32"]);
    assert!(free.stdout.starts_with("free32: NOT RIGID"));
    assert!(free.stdout.contains("stable spectrum unsorted"));
    assert!(cli(&["verdict", "--example", "heisenberg"]).stdout.contains("INAPPLICABLE"));

    let f = file(".toml", DILATION);
    let out = cli(&["verdict", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("lattice"), "{}", out.stderr);
    let out = cli(&["validate", f.path().to_str().unwrap(), "--json"]);
    assert_eq!(out.code, 2);
    let v: ValidateDocument = roundtrip(&out);
    let m = v.validation.automorphism.unwrap();
    assert_eq!(m.determinant, "16");
    assert!(m.bracket_preserving && !m.unimodular && !v.validation.valid);
}

#[test]
fn parse_failures_exit_one() {
    let bad = DILATION.replace(r#"["2", "0", "0"]"#, r#"["1/0", "0", "0"]"#);
    let f = file(".toml", &bad);
    let out = cli(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("matrix[0][0]"), "{}", out.stderr);

    let f = file(".toml", &DILATION.replace("Z = ", "W = "));
    assert_eq!(cli(&["validate", f.path().to_str().unwrap()]).code, 1);
    let f = file(".toml", "dim = [");
    let out = cli(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 1"), "{}", out.stderr);
    let f = file(".json", "{\"dim\": 1, \"basis\": [\"a\"], \"matrix\": [[1]], \"extra\": 0}");
    assert_eq!(cli(&["validate", f.path().to_str().unwrap()]).code, 1);
    assert_eq!(cli(&["validate", "/nonexistent/input.toml"]).code, 1);
    assert_eq!(cli(&["verdict"]).code, 1);
    assert_eq!(cli(&["verdict", "--example", "smale", "--tol", "-1"]).code, 1);
    assert_eq!(cli(&["frobnicate"]).code, 1);
}

#[test]
fn invalid_algebra_exits_two() {
    let text = r#"
dim = 3
basis = ["a", "b", "c"]
matrix = [[1, 0, 0], [0, 1, 0], [0, 0, 1]]
[[brackets]]
left = "a"
right = "b"
result = { a = 1 }
"#;
    let f = file(".toml", text);
    let out = cli(&["validate", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stdout.contains("not nilpotent"));
    let swap = DILATION.replace(r#"[["2", "0", "0"], ["0", "2", "0"], ["0", "0", "4"]]"#, r#"[[0, 1, 0], [1, 0, 0], [0, 0, 1]]"#);
    let f = file(".toml", &swap);
    let out = cli(&["verdict", f.path().to_str().unwrap()]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("A[X, Y] != [AX, AY]"), "{}", out.stderr);
}

#[test]
fn json_reports_round_trip() {
    for name in ["smale", "free32", "heisenberg", "cat2"] {
        let _: VerdictReport = roundtrip(&cli(&["verdict", "--example", name, "--json"]));
        let _: GradingDocument = roundtrip(&cli(&["grading", "--example", name, "--json"]));
        let _: AnalyzeDocument = roundtrip(&cli(&["analyze", "--example", name, "--json"]));
        let _: ValidateDocument = roundtrip(&cli(&["validate", "--example", name, "--json"]));
    }
    let g: GeometryDocument = roundtrip(&cli(&["geometry-check", "--example", "smale", "--json"]));
    assert!(g.passed && g.scaling.len() == 3);
    let p: PerturbDocument = roundtrip(&cli(&["perturb-witness", "--example", "free32", "--json"]));
    assert!(p.witness);
    let value: serde_json::Value = serde_json::from_str(&cli(&["verdict", "--example", "smale", "--json"]).stdout).unwrap();
    let mut extra = value.clone();
    extra["unexpected"] = serde_json::Value::Bool(true);
    assert!(serde_json::from_value::<VerdictReport>(extra).is_err());
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["verdict", "--example", "free32", "--json"][..],
        &["analyze", "--example", "smale"][..],
        &["perturb-witness", "--example", "free32", "--invert", "--json"][..],
    ] {
        assert_eq!(cli(args), cli(args));
    }
}

#[test]
fn eigenvalues_carry_radius_and_decimal() {
    let r: VerdictReport = roundtrip(&cli(&["verdict", "--example", "smale", "--json", "--tol", "1e-20"]));
    for e in r.spectrum.unwrap().eigenvalues {
        // certified radius plus the rounding of the centre to a double
        assert!(e.modulus.radius <= 1e-20 + 3e-16 * e.modulus.value);
        let parsed: f64 = e.value.re.decimal.parse().unwrap();
        assert!((parsed - e.value.re.value).abs() <= e.value.re.value.abs() * 1e-15);
    }
}

#[test]
fn perturb_witness_modes() {
    let out = cli(&["perturb-witness", "--example", "free32", "--invert", "--mode", "1,-1,0", "--K", "3", "--json"]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    let p: PerturbDocument = roundtrip(&out);
    assert_eq!(p.mode, Some(vec![1, -1, 0]));
    assert_eq!(p.k, 3);
    assert!(p.witness);
    assert_eq!(cli(&["perturb-witness", "--example", "free32", "--mode", "1,0"]).code, 1);
    assert_eq!(cli(&["perturb-witness", "--example", "cat2"]).code, 2);
    let none: PerturbDocument = roundtrip(&cli(&["perturb-witness", "--example", "smale", "--json"]));
    assert!(none.shear_data.is_none() && !none.witness);
}

#[test]
fn help_and_version() {
    assert_eq!(cli(&["--help"]).code, 0);
    assert!(cli(&["--version"]).stdout.contains("nilrigid"));
}
