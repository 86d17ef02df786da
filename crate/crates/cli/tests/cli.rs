use std::process::{Command, Output};

fn bergman(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bergman")).args(args).output().expect("binary runs")
}

fn json(out: &Output) -> serde_json::Value {
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

#[test]
fn reproducible_output_is_byte_identical() {
    for args in [
        &["hardy", "--mode", "random", "--count", "12", "--seed", "7", "--reproducible"][..],
        &["mult-norm", "--symbol", "g0", "--alpha", "0", "--beta", "4", "--trunc", "64", "--reproducible"],
        &["asymptotics", "--lambda", "1.6", "--output", "csv", "--reproducible"],
    ] {
        let a = bergman(args);
        let b = bergman(args);
        assert!(a.status.success(), "{}", String::from_utf8_lossy(&a.stderr));
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn report_shape() {
    let v = json(&bergman(&["g0-table", "--alpha", "0", "--beta", "4"]));
    assert_eq!(v["command"], "g0-table");
    assert!(v["meta"]["runtime_ms"].is_number());
    assert!(v["meta"]["source"].as_str().unwrap().contains("Gamma"));
    let row = &v["values"][0];
    assert!((row["norm_sq"].as_f64().unwrap() - 1.875).abs() < 1e-12);

    let v = json(&bergman(&["mult-norm", "--symbol", "one", "--alpha", "0", "--beta", "0", "--trunc", "64", "--reproducible"]));
    assert!(v["meta"]["runtime_ms"].is_null());
    assert!((v["values"][0]["lower_bound_sq"].as_f64().unwrap() - 1.0).abs() < 1e-9);
}

#[test]
fn csv_has_header_and_rows() {
    let out = bergman(&["koebe-table", "--alpha", "0,-0.5", "--output", "csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "alpha,norm_sq");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("0.0000000000000000e0,6.75"));
}

#[test]
fn exit_codes() {
    // domain: β < α
    let out = bergman(&["mult-norm", "--symbol", "g0", "--alpha", "4", "--beta", "0"]);
    assert_eq!(out.status.code(), Some(2), "{}", String::from_utf8_lossy(&out.stderr));
    // invalid input: unparsable literal
    assert_eq!(bergman(&["schwarzian", "--function", "poly: 1 +"]).status.code(), Some(2));
    // clap usage errors also exit with 2
    assert_eq!(bergman(&["norm"]).status.code(), Some(2));
    // a Möbius map has S = 0, so there is no pole to expand at
    assert_eq!(bergman(&["laurent", "--function", "identity", "--z0", "1"]).status.code(), Some(2));
}

#[test]
fn map_commands() {
    let v = json(&bergman(&["critical-points", "--function", "koebe"]));
    assert_eq!(v["values"].as_array().unwrap().len(), 1);
    assert!((v["values"][0]["re"].as_f64().unwrap() + 1.0).abs() < 1e-12);

    let v = json(&bergman(&["laurent", "--function", "koebe", "--z0", "-1"]));
    assert!((v["values"][0]["re"].as_f64().unwrap() + 1.5).abs() < 1e-5);

    let v = json(&bergman(&["norm", "--function", "poly: 1 1", "--alpha", "0"]));
    // |1|^2 + |1|^2 / 2
    assert!((v["values"][0]["value_sq"].as_f64().unwrap() - 1.5).abs() < 1e-12);
}
