//! Acceptance: the CLI contract on the bundled example specs — exit
//! codes per the declared table, self-verification residuals zero, and
//! bit-exact parse/print round trips of every polynomial in the outputs.

use std::path::{Path, PathBuf};
use std::process::Command;

use serde_json::Value;

use folcoh_core::polyring::parse_polynomial;
use folcoh_core::williamson::WilliamsonBasis;
use folcoh_core::{CoordinateSystem, RegularModel};

fn specs_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../../specs")
}

fn run(command: &str, spec: &str, out: &Path) -> (i32, Value) {
    let status = Command::new(env!("CARGO_BIN_EXE_folcoh"))
        .arg(command)
        .arg("--spec")
        .arg(specs_dir().join(spec))
        .arg("--out")
        .arg(out)
        .status()
        .expect("binary runs");
    let payload = std::fs::read_to_string(out)
        .ok()
        .and_then(|s| serde_json::from_str(&s).ok())
        .unwrap_or(Value::Null);
    (status.code().expect("exit code"), payload)
}

/// parse(print(x)) must reprint identically against the given system.
fn assert_round_trip(text: &str, coords: &std::sync::Arc<CoordinateSystem>) {
    let p = parse_polynomial(text, coords).expect("output text parses");
    assert_eq!(p.to_string(), text, "parse/print round trip not bit-exact");
}

#[test]
fn criterion_8_cli_contract() {
    let dir = tempfile::tempdir().unwrap();
    let out = |name: &str| dir.path().join(name);

    // cohomology with oracle: exit 0 iff all cross-checks pass
    let (code, v) = run("cohomology", "cohomology_hyperbolic.json", &out("c1.json"));
    assert_eq!(code, 0);
    assert_eq!(v["verified"], Value::Bool(true));
    assert_eq!(v["slices"][0]["dimH"], 1);
    assert_eq!(v["slices"][0]["oracle"], 1);
    let h = WilliamsonBasis::from_labels(&["h"]).unwrap();
    let gen = v["slices"][0]["generators"][0]["components"]["1"].as_str().unwrap();
    assert_round_trip(gen, h.coords());
    assert_eq!(gen, "x1*y1");

    // all odd degrees vanish
    let (code, v) = run("cohomology", "cohomology_elliptic_pair_odd.json", &out("c2.json"));
    assert_eq!(code, 0);
    for slice in v["slices"].as_array().unwrap() {
        assert_eq!(slice["dimH"], 0, "odd degree slice must vanish");
    }

    // focus-focus report-only mode: no oracle, still exit 0
    let (code, v) = run("cohomology", "cohomology_focus_focus.json", &out("c3.json"));
    assert_eq!(code, 0);
    assert_eq!(v["oracle_checked"], Value::Bool(false));
    for slice in v["slices"].as_array().unwrap() {
        assert!(slice["oracle"].is_null());
    }

    // focus-focus with oracle requested: declared restriction, exit 1
    let (code, v) = run("cohomology", "error_cohomology_ff_oracle.json", &out("c4.json"));
    assert_eq!(code, 1);
    assert!(v["error"]["message"].as_str().unwrap().contains("no oracle"));

    // decompose: residual zero, outputs round-trip
    let (code, v) = run("decompose", "decompose_elliptic.json", &out("d1.json"));
    assert_eq!(code, 0);
    assert_eq!(v["residual"], "0");
    assert_eq!(v["kernel_residual"], "0");
    assert_eq!(v["verified"], Value::Bool(true));
    let e = WilliamsonBasis::from_labels(&["e"]).unwrap();
    assert_eq!(v["kernel_part"], "x1^2 + y1^2");
    assert_eq!(v["potential"], "1/2*y1");
    for key in ["f", "kernel_part", "potential"] {
        assert_round_trip(v[key].as_str().unwrap(), e.coords());
    }

    // deformation: G = y1, basic parts zero, residuals zero
    let (code, v) = run("deformation", "deformation_hyperbolic_pair.json", &out("d2.json"));
    assert_eq!(code, 0);
    assert_eq!(v["G"], "y1");
    assert_eq!(v["f"].as_array().unwrap().len(), 2);
    assert_eq!(v["f"][0], "0");
    assert_eq!(v["f"][1], "0");
    for r in v["residuals"].as_array().unwrap() {
        assert_eq!(r, "0");
    }

    // deformation on a non-cocycle: exit 2 with the violating pair
    let (code, v) = run("deformation", "error_deformation_non_cocycle.json", &out("d3.json"));
    assert_eq!(code, 2);
    assert_eq!(v["error"]["kind"], "not_cocycle");
    assert_eq!(v["error"]["details"]["pair"][0], 1);
    assert_eq!(v["error"]["details"]["pair"][1], 2);

    // invalid polynomial: exit 1 with the fault location
    let (code, v) = run("decompose", "error_bad_polynomial.json", &out("d4.json"));
    assert_eq!(code, 1);
    let msg = v["error"]["message"].as_str().unwrap();
    assert!(msg.contains("spec.f") && msg.contains("byte 5"), "got: {msg}");

    // primitive: I(alpha) with d(I alpha) = alpha
    let (code, v) = run("primitive", "primitive_leaf_linear.json", &out("p1.json"));
    assert_eq!(code, 0);
    let md = RegularModel::new(2, 1).unwrap();
    let prim = v["primitive"]["components"]["" ].as_str().unwrap();
    assert_eq!(prim, "1/2*p1^2");
    assert_round_trip(prim, md.coords());
    assert!(v["residual"]["components"].as_object().unwrap().is_empty());

    // homotopy identity: residual identically zero
    let (code, v) = run("homotopy-check", "homotopy_check_mixed.json", &out("p2.json"));
    assert_eq!(code, 0);
    assert!(v["residual"]["components"].as_object().unwrap().is_empty());
    assert_eq!(v["verified"], Value::Bool(true));

    // kostant flat sections: anchor coefficient and residual zero
    let (code, v) = run("kostant-flat", "kostant_flat_anchor.json", &out("k1.json"));
    assert_eq!(code, 0);
    assert_eq!(v["f"], "1/2*p1^2");
    assert_eq!(v["coefficient"], "1/8*p1^4 - 1/2*p1^2 + 1");
    assert_eq!(v["residual"], "0");
    assert_round_trip(v["coefficient"].as_str().unwrap(), md.coords());

    let (code, v) = run("kostant-flat", "kostant_flat_zero.json", &out("k2.json"));
    assert_eq!(code, 0);
    assert_eq!(v["coefficient"], "1");
    assert_eq!(v["residual"], "0");

    println!("ACCEPTANCE criterion 8: PASS (CLI contract on 12 bundled specs; exit codes and round trips verified)");
}

#[test]
fn missing_spec_file_is_invalid_input() {
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_folcoh"))
        .arg("cohomology")
        .arg("--spec")
        .arg(dir.path().join("nope.json"))
        .arg("--out")
        .arg(dir.path().join("out.json"))
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(1));
}

#[test]
fn out_path_falls_back_to_spec_field() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("fallback.json");
    let spec = serde_json::json!({
        "command": "decompose",
        "type": ["h"],
        "i": 1,
        "f": "x1",
        "out": out.to_str().unwrap(),
    });
    let spec_path = dir.path().join("spec.json");
    std::fs::write(&spec_path, serde_json::to_string(&spec).unwrap()).unwrap();
    let status = Command::new(env!("CARGO_BIN_EXE_folcoh"))
        .arg("decompose")
        .arg("--spec")
        .arg(&spec_path)
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["potential"], "-x1");
}
