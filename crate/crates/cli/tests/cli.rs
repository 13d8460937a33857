use std::io::Write;
use std::process::{Command, Output, Stdio};

use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

fn tps(args: &[&str], stdin: &str) -> Output {
    let mut child = Command::new(env!("CARGO_BIN_EXE_tps"))
        .args(args)
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped())
        .spawn()
        .expect("spawn tps");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn ok_json(args: &[&str], stdin: &str) -> Value {
    let out = tps(args, stdin);
    assert!(out.status.success(), "stderr: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).unwrap()
}

fn error_of(out: &Output) -> (i32, String, String) {
    let diag: Value = serde_json::from_slice(&out.stderr).expect("diagnostic is JSON");
    let err = &diag["error"];
    assert!(err["message"].is_string());
    (
        out.status.code().unwrap(),
        err["code"].as_str().unwrap().to_string(),
        err["path"].as_str().unwrap().to_string(),
    )
}

fn num(v: &Value) -> f64 {
    v.as_f64().unwrap()
}

fn state_doc(amps: &[[f64; 2]]) -> Value {
    json!({"kind": "state", "dim": amps.len(), "amplitudes": amps})
}

fn tailor_request(amps: &[[f64; 2]], factors: [usize; 2], lambdas: Value) -> String {
    json!({"kind": "tailor", "version": 1, "state": state_doc(amps), "factors": factors, "lambdas": lambdas})
        .to_string()
}

fn spin_generators(dim: usize) -> Value {
    let rep = ok_json(&["spin"], &json!({"kind": "spin", "version": 1, "dim": dim}).to_string());
    json!([rep["s_x"], rep["s_y"], rep["s_z"]])
}

#[test]
fn tailor_example_bell_weights_on_e0() {
    let h = 0.7071067811865476;
    let req = tailor_request(&[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]], [2, 2], json!([h, h]));
    let doc = ok_json(&["tailor"], &req);
    assert_eq!(doc["kind"], "tailor-result");
    assert_eq!(doc["version"], 1);
    let coeffs = doc["schmidt_coefficients"].as_array().unwrap();
    assert_eq!(coeffs.len(), 2);
    for c in coeffs {
        assert!((num(c) - h).abs() < 1e-12);
    }
    assert_eq!(doc["report"]["complete"], true);
    assert_eq!(doc["report"]["independent"], true);
    assert_eq!(doc["report"]["generated_dim"], 16);
    assert_eq!(doc["generators"]["A"].as_array().unwrap().len(), 3);
    assert_eq!(doc["generators"]["B"].as_array().unwrap().len(), 3);
    assert_eq!(doc["u"]["rows"], 4);
}

#[test]
fn spin_half_s_z() {
    let doc = ok_json(&["spin"], r#"{"kind":"spin","version":1,"dim":2}"#);
    let data = &doc["s_z"]["data"];
    let expect = [[0.5, 0.0], [0.0, -0.5]];
    for r in 0..2 {
        for c in 0..2 {
            assert_eq!(num(&data[r][c][0]), expect[r][c]);
            assert_eq!(num(&data[r][c][1]), 0.0);
        }
    }
    assert_eq!(doc["spin_twice"], 1);
}

#[test]
fn closure_of_spin_two_is_full_matrix_algebra() {
    let req = json!({"kind": "closure", "version": 1, "generators": spin_generators(5)});
    let doc = ok_json(&["closure"], &req.to_string());
    assert_eq!(doc["dimension"], 25);
    assert_eq!(doc["basis"].as_array().unwrap().len(), 25);

    let doc = ok_json(&["commutant"], &json!({"kind": "commutant", "version": 1, "generators": spin_generators(5)}).to_string());
    assert_eq!(doc["algebra_dimension"], 25);
    assert_eq!(doc["dimension"], 1);
}

#[test]
fn commutant_of_diagonal_generator() {
    let diag = json!({"kind": "matrix", "rows": 3, "cols": 3,
        "data": [[[1,0],[0,0],[0,0]], [[0,0],[2,0],[0,0]], [[0,0],[0,0],[3,0]]]});
    let doc = ok_json(&["commutant"], &json!({"kind": "commutant", "version": 1, "generators": [diag]}).to_string());
    assert_eq!(doc["algebra_dimension"], 3);
    assert_eq!(doc["dimension"], 3);
}

#[test]
fn output_is_byte_identical_across_runs() {
    let raw = [[0.48, 0.0], [0.36, 0.1], [0.6, -0.2], [0.1, 0.3]];
    let n = raw.iter().map(|z: &[f64; 2]| z[0] * z[0] + z[1] * z[1]).sum::<f64>().sqrt();
    let amps: Vec<[f64; 2]> = raw.iter().map(|z| [z[0] / n, z[1] / n]).collect();
    let req = tailor_request(&amps, [2, 2], json!([[0.8, 0.0], [0.0, 0.6]]));

    let a = tps(&["tailor"], &req);
    let b = tps(&["tailor"], &req);
    assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
    assert_eq!(a.stdout, b.stdout);

    let p = tps(&["example-d4", "0.6"], "");
    let q = tps(&["example-d4", "0.6"], "");
    assert_eq!(p.stdout, q.stdout);
}

#[test]
fn example_d4_golden_coefficients() {
    let doc = ok_json(&["example-d4", "0.6"], "");
    assert_eq!(doc["kind"], "example-d4-result");
    assert!((num(&doc["lambda2"]) - 0.8).abs() < 1e-15);
    let ax = doc["decompositions"]["A"]["x"].as_object().unwrap();
    assert_eq!(ax.len(), 2);
    assert!((num(&ax["XI"][0]) - 0.6).abs() < 1e-12);
    assert!((num(&ax["ZX"][0]) - 0.8).abs() < 1e-12);
    let bz = doc["decompositions"]["B"]["z"].as_object().unwrap();
    assert!(!bz.is_empty());
}

#[test]
fn d6_state_round_trips_bitwise() {
    use tps_cli::codec;
    use tps_core::{Complex64, StateVector};
    let mut rng = StdRng::seed_from_u64(6);
    for _ in 0..20 {
        let amps: Vec<Complex64> =
            (0..6).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
        let psi = StateVector::new(amps).unwrap().normalized();
        let text = codec::to_text(&codec::state(&psi).unwrap(), false);
        let back = codec::read_state(&codec::parse(&text).unwrap(), "state").unwrap();
        for (a, b) in psi.amplitudes().iter().zip(back.amplitudes()) {
            assert_eq!((a.re.to_bits(), a.im.to_bits()), (b.re.to_bits(), b.im.to_bits()));
        }
    }
}

#[test]
fn schmidt_and_tailor_multi_on_d6() {
    let mut rng = StdRng::seed_from_u64(66);
    let raw: Vec<[f64; 2]> = (0..6).map(|_| [rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0)]).collect();
    let n = raw.iter().map(|z| z[0] * z[0] + z[1] * z[1]).sum::<f64>().sqrt();
    let amps: Vec<[f64; 2]> = raw.iter().map(|z| [z[0] / n, z[1] / n]).collect();

    let req = json!({"kind": "schmidt", "version": 1, "state": state_doc(&amps), "factors": [2, 3]});
    let doc = ok_json(&["schmidt"], &req.to_string());
    let lambdas: Vec<f64> = doc["coefficients"].as_array().unwrap().iter().map(num).collect();
    assert_eq!(lambdas.len(), 2);
    assert!((lambdas.iter().map(|x| x * x).sum::<f64>() - 1.0).abs() < 1e-12);
    assert!(num(&doc["entropy"]) > 0.0 && num(&doc["entropy"]) <= 1.0 + 1e-12);
    assert_eq!(doc["right_basis"].as_array().unwrap().len(), 3);

    let target = json!([[0.6, 0], [0, 0], [0, 0], [0, 0], [0, 0.8], [0, 0]]);
    let req = json!({"kind": "tailor-multi", "version": 1, "state": state_doc(&amps),
        "factors": [2, 3], "coefficients": target});
    let doc = ok_json(&["tailor-multi"], &req.to_string());
    assert_eq!(doc["report"]["complete"], true);
    assert_eq!(doc["generators"].as_array().unwrap().len(), 2);
    let got = doc["coefficients"].as_array().unwrap();
    for (z, t) in got.iter().zip(target.as_array().unwrap()) {
        assert!((num(&z[0]) - num(&t[0])).abs() < 1e-12 && (num(&z[1]) - num(&t[1])).abs() < 1e-12);
    }
}

#[test]
fn written_floats_parse_back_bitwise() {
    let mut rng = StdRng::seed_from_u64(61);
    for _ in 0..200 {
        let x: f64 = rng.random_range(-1.0..1.0) * 10f64.powi(rng.random_range(-300..300));
        let text = tps_cli::codec::to_text(&tps_cli::codec::float(x).unwrap(), false);
        let back: f64 = text.trim().parse().unwrap();
        assert_eq!(back.to_bits(), x.to_bits(), "{x} -> {text}");
    }
}

#[test]
fn non_finite_and_huge_values_are_rejected_with_path() {
    let req = r#"{"kind":"pauli","version":1,"operator":{"kind":"matrix","rows":2,"cols":2,
        "data":[[[1,0],[0,0]],[[0,1e400],[1,0]]]}}"#;
    let (code, kind, path) = error_of(&tps(&["pauli"], req));
    assert_eq!((code, kind.as_str(), path.as_str()), (1, "non_finite", "operator.data[1][0][1]"));

    let req = r#"{"kind":"pauli","version":1,"operator":{"kind":"matrix","rows":1,"cols":1,"data":[[[NaN,0]]]}}"#;
    let (code, kind, _) = error_of(&tps(&["pauli"], req));
    assert_eq!((code, kind.as_str()), (1, "malformed_json"));
}

#[test]
fn empty_amplitudes_are_a_schema_violation() {
    let req = r#"{"kind":"schmidt","version":1,"state":{"kind":"state","dim":0,"amplitudes":[]},"factors":[2,2]}"#;
    let (code, kind, path) = error_of(&tps(&["schmidt"], req));
    assert_eq!((code, kind.as_str(), path.as_str()), (1, "schema", "state.amplitudes"));
}

#[test]
fn validation_errors_exit_one() {
    let cases: Vec<(Vec<&str>, String, &str, &str)> = vec![
        (vec!["spin"], "{".into(), "malformed_json", ""),
        (vec!["spin"], r#"{"kind":"spin","version":1}"#.into(), "schema", "dim"),
        (vec!["spin"], r#"{"kind":"closure","version":1,"dim":2}"#.into(), "schema", "kind"),
        (vec!["spin"], r#"{"kind":"spin","version":2,"dim":2}"#.into(), "schema", "version"),
        (vec!["spin"], r#"{"kind":"spin","version":1,"dim":1}"#.into(), "invalid_input", "dim"),
        (
            vec!["tailor"],
            tailor_request(&[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]], [2, 2], json!([0.5, 0.5])),
            "norm",
            "lambdas",
        ),
        (
            vec!["tailor"],
            tailor_request(&[[1.0, 0.0], [0.0, 0.0], [0.0, 0.0], [0.0, 0.0]], [2, 3], json!([1, 0])),
            "dimension",
            "factors",
        ),
        (vec!["pauli"], r#"{"kind":"pauli","version":1,"operator":{"kind":"matrix","rows":3,"cols":3,"data":[[[1,0],[0,0],[0,0]],[[0,0],[1,0],[0,0]],[[0,0],[0,0],[1,0]]]}}"#.into(), "dimension", "operator"),
        (vec!["example-d4", "1.5"], String::new(), "usage", ""),
        (vec!["frobnicate"], String::new(), "usage", ""),
        (vec!["spin", "--tol", "-1"], r#"{"kind":"spin","version":1,"dim":2}"#.into(), "usage", ""),
    ];
    for (args, input, want_code, want_path) in cases {
        let out = tps(&args, &input);
        assert!(out.stdout.is_empty(), "{args:?} wrote a result");
        let (status, code, path) = error_of(&out);
        assert_eq!((status, code.as_str(), path.as_str()), (1, want_code, want_path), "{args:?}");
    }
}

#[test]
fn internal_verification_failure_exits_two() {
    let req = tailor_request(&[[0.6, 0.0], [0.0, 0.8], [0.0, 0.0], [0.0, 0.0]], [2, 2], json!([0.6, 0.8]));
    let (status, code, _) = error_of(&tps(&["tailor", "--tol", "1e-300"], &req));
    assert_eq!((status, code.as_str()), (2, "verification"));
}

#[test]
fn verify_reports_failure_without_alarming() {
    let full = spin_generators(2);
    let req = json!({"kind": "verify", "version": 1, "algebras": [full, full]});
    let doc = ok_json(&["verify"], &req.to_string());
    assert_eq!(doc["report"]["independent"], false);
    assert_eq!(doc["dims"], json!([4, 4]));
}

#[test]
fn verify_accepts_a_genuine_factorization() {
    let tailored = ok_json(
        &["tailor"],
        &tailor_request(&[[0.0, 0.0], [1.0, 0.0], [0.0, 0.0], [0.0, 0.0]], [2, 2], json!([0.8, 0.6])),
    );
    let req = json!({"kind": "verify", "version": 1,
        "algebras": [tailored["generators"]["A"], tailored["generators"]["B"]]});
    let doc = ok_json(&["verify"], &req.to_string());
    assert_eq!(doc["report"]["independent"], true);
    assert_eq!(doc["report"]["complete"], true);
    assert_eq!(doc["dims"], json!([4, 4]));
}

#[test]
fn files_and_pretty_output() {
    let dir = std::env::temp_dir().join(format!("tps-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let input = dir.join("req.json");
    let output = dir.join("out.json");
    std::fs::write(&input, r#"{"kind":"pauli","version":1,"operator":{"kind":"matrix","rows":2,"cols":2,"data":[[[0,0],[1,0]],[[1,0],[0,0]]]}}"#).unwrap();
    let out = tps(
        &["pauli", "--in", input.to_str().unwrap(), "--out", output.to_str().unwrap(), "--pretty"],
        "",
    );
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let text = std::fs::read_to_string(&output).unwrap();
    assert!(text.contains('\n') && text.ends_with("}\n"));
    let doc: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(doc["qubits"], 1);
    assert_eq!(doc["coefficients"].as_object().unwrap().keys().collect::<Vec<_>>(), ["X"]);

    let missing = dir.join("absent.json");
    let (status, code, path) = error_of(&tps(&["pauli", "--in", missing.to_str().unwrap()], ""));
    assert_eq!((status, code.as_str(), path.as_str()), (1, "io", missing.to_str().unwrap()));
    std::fs::remove_dir_all(&dir).unwrap();
}
