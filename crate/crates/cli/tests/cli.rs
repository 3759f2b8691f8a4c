use std::process::Command;

fn meixner(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_meixner"))
        .args(args)
        .output()
        .expect("run meixner");
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8_lossy(&out.stdout).into_owned(),
        String::from_utf8_lossy(&out.stderr).into_owned(),
    )
}

fn tmp(name: &str) -> std::path::PathBuf {
    let d = std::env::temp_dir().join(format!("meixner-cli-{}", std::process::id()));
    std::fs::create_dir_all(&d).unwrap();
    d.join(name)
}

fn data_lines(csv: &str) -> Vec<Vec<String>> {
    csv.lines()
        .filter(|l| !l.starts_with('#'))
        .skip(1)
        .map(|l| l.split(',').map(str::to_string).collect())
        .collect()
}

#[test]
fn eval_minus_one() {
    let (code, out, _) = meixner(&[
        "eval", "--c", "0.5", "--beta", "1.5", "--n", "100", "--z", "-1", "--method", "both",
    ]);
    assert_eq!(code, 0);
    assert!(out.contains("exact        1.99529e233"), "{out}");
    assert!(out.contains("asym         1.99473e233"), "{out}");
    assert!(out.contains("rel_err      2.80"), "{out}");
}

#[test]
fn degree_zero() {
    let (code, out, _) = meixner(&["eval", "--z", "0", "--n", "0", "--method", "exact"]);
    assert_eq!(code, 0);
    assert!(out.contains("exact        1.00000e0"), "{out}");
}

#[test]
fn complex_point_is_frozen() {
    let (code, out, _) = meixner(&[
        "eval", "--z", "2,0.5", "--method", "asym", "--format", "json",
    ]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    let row = &j["rows"][0];
    assert_eq!(row["region"], "Outer(upper)");
    assert_eq!(row["formula"], "O4");
    assert_eq!(row["asym"]["kind"], "complex");
    assert_eq!(row["asym"]["re"]["exponent"], 210);
    assert_eq!(row["asym"]["im"]["exponent"], 212);
    let re = row["asym"]["re"]["mantissa"].as_f64().unwrap();
    let im = row["asym"]["im"]["mantissa"].as_f64().unwrap();
    assert!((re - 9.20440).abs() < 1e-4, "{re}");
    assert!((im - 1.16031).abs() < 1e-4, "{im}");
    assert_eq!(row["asym"]["re"]["sign"], -1);
    assert_eq!(row["asym"]["im"]["sign"], -1);
}

#[test]
fn complex_exact_matches_asym() {
    let (code, out, _) = meixner(&["eval", "--z", "-1,0.5", "--format", "json"]);
    assert_eq!(code, 0);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(j["rows"][0]["rel_err"].as_f64().unwrap() < 5e-3);
}

#[test]
fn json_has_every_field() {
    let (_, out, _) = meixner(&["eval", "--z", "0.05", "--format", "json"]);
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    let row = j["rows"][0].as_object().unwrap();
    for k in [
        "z",
        "region",
        "formula",
        "exact",
        "asym",
        "rel_err",
        "err_estimate",
        "warnings",
    ] {
        assert!(row.contains_key(k), "missing {k}");
    }
    assert_eq!(j["rows"][0]["exact"]["re"]["exponent"], 180);
}

#[test]
fn parse_errors_exit_2() {
    assert_eq!(meixner(&["eval", "--z", "x"]).0, 2);
    assert_eq!(meixner(&["eval", "--z", "1", "--c", "1.2"]).0, 2);
    assert_eq!(
        meixner(&["eval", "--z", "1", "--epsilon", "0.1", "--delta", "0.05"]).0,
        2
    );
    assert_eq!(meixner(&["eval"]).0, 2);
    assert_eq!(meixner(&["frobnicate"]).0, 2);
}

#[test]
fn pole_exits_3() {
    let (code, _, err) = meixner(&["eval", "--z", "0"]);
    assert_eq!(code, 3, "{err}");
}

#[test]
fn io_error_exits_4() {
    let (code, _, _) = meixner(&[
        "scan",
        "--from",
        "1",
        "--to",
        "2",
        "--points",
        "2",
        "--out",
        "/nonexistent/dir/x.csv",
    ]);
    assert_eq!(code, 4);
    assert_eq!(meixner(&["table", "--config", "/nonexistent/run.cfg"]).0, 4);
}

#[test]
fn table_rows() {
    let (code, out, _) = meixner(&["table", "--format", "csv"]);
    assert_eq!(code, 0);
    let rows = data_lines(&out);
    assert_eq!(rows.len(), 10);
    let zs: Vec<&str> = rows.iter().map(|r| r[0].as_str()).collect();
    assert_eq!(
        zs,
        ["-1", "-0.001", "0.001", "0.05", "0.171", "0.172", "2", "5.828", "5.829", "100"]
    );
    for r in &rows {
        let rel: f64 = r[8].parse().unwrap();
        assert!(rel <= 5e-3, "{r:?}");
    }
}

#[test]
fn table_text_matches_printed_pairs() {
    let (code, out, _) = meixner(&["table"]);
    assert_eq!(code, 0);
    let line = out.lines().find(|l| l.starts_with("0.172 ")).unwrap();
    assert!(
        line.contains("-1.22035e175") && line.contains("-1.22003e175"),
        "{line}"
    );
    let line = out.lines().find(|l| l.starts_with("5.828 ")).unwrap();
    assert!(line.contains("2.78146e259"), "{line}");
}

#[test]
fn scan_near_origin() {
    let (code, out, _) = meixner(&["scan", "--from", "0.01", "--to", "0.16", "--points", "16"]);
    assert_eq!(code, 0);
    assert!(out.lines().any(|l| l == "z_re,z_im,region,formula,exact_sign,exact_log10,asym_sign,asym_log10,rel_err,err_estimate"));
    let rows = data_lines(&out);
    assert_eq!(rows.len(), 16);
    for r in &rows {
        assert!(
            r[2].starts_with("StripLeft")
                || r[2].starts_with("OriginRight")
                || r[2].starts_with("AiryA"),
            "{r:?}"
        );
        assert!(!r[4].is_empty());
    }
    let before_a = rows
        .iter()
        .filter(|r| r[0].parse::<f64>().unwrap() < 0.171573 - 0.0429);
    for r in before_a {
        assert!(
            r[2].starts_with("StripLeft") || r[2].starts_with("OriginRight"),
            "{r:?}"
        );
    }
}

#[test]
fn scan_in_band() {
    let (code, out, _) = meixner(&[
        "scan", "--from", "0.271573", "--to", "5.728427", "--points", "25",
    ]);
    assert_eq!(code, 0);
    let rows = data_lines(&out);
    assert_eq!(rows.len(), 25);
    for r in &rows {
        let rel: f64 = r[8].parse().unwrap();
        let est: f64 = r[9].parse().unwrap();
        assert!(rel <= est, "{r:?}");
        if est <= 0.035 {
            assert!(rel <= 1e-2, "{r:?}");
        }
    }
}

#[test]
fn scan_crossing_b() {
    let (code, out, _) = meixner(&["scan", "--from", "5.7", "--to", "5.95", "--points", "26"]);
    assert_eq!(code, 0);
    let formulas: Vec<String> = data_lines(&out).iter().map(|r| r[3].clone()).collect();
    let mut seen: Vec<&str> = Vec::new();
    for f in &formulas {
        if seen.last() != Some(&f.as_str()) {
            seen.push(f);
        }
    }
    assert_eq!(seen, ["O3", "Ob", "O4"]);
}

#[test]
fn scan_writes_file_deterministically() {
    let p1 = tmp("a.csv");
    let p2 = tmp("b.csv");
    for p in [&p1, &p2] {
        let (code, out, _) = meixner(&[
            "scan",
            "--from",
            "-2",
            "--to",
            "-1",
            "--points",
            "5",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert_eq!(code, 0);
        assert!(out.is_empty());
    }
    let a = std::fs::read(&p1).unwrap();
    assert_eq!(a, std::fs::read(&p2).unwrap());
    assert!(String::from_utf8(a).unwrap().starts_with('#'));
}

#[test]
fn config_file_precedence() {
    let p = tmp("run.cfg");
    std::fs::write(&p, "n = 30\nformat = csv\n").unwrap();
    let cfg = p.to_str().unwrap();
    let (_, out, _) = meixner(&["eval", "--z", "-1", "--config", cfg]);
    assert!(out.contains("# c=0.5 beta=1.5 n=30"), "{out}");
    let (_, out, _) = meixner(&[
        "eval", "--z", "-1", "--config", cfg, "--n", "40", "--format", "text",
    ]);
    assert!(out.contains("exact"), "{out}");
    assert!(!out.contains("n=30"));
}

#[test]
fn verify_passes() {
    let (code, out, _) = meixner(&["verify"]);
    assert_eq!(code, 0, "{out}");
    assert!(out.lines().filter(|l| l.starts_with("PASS")).count() >= 10);
}

#[test]
fn verify_fault_fails() {
    let (code, out, _) = meixner(&["verify", "--fault", "flip-phi-tilde"]);
    assert_eq!(code, 5);
    assert!(
        out.lines()
            .any(|l| l.starts_with("FAIL") && l.contains("JoT00")),
        "{out}"
    );
}

#[test]
fn verify_d_convergence_over_given_degrees() {
    let (code, out, _) = meixner(&["verify", "--n", "10", "--n", "100", "--format", "json"]);
    assert_eq!(code, 0, "{out}");
    let j: serde_json::Value = serde_json::from_str(&out).unwrap();
    let suite = j["suites"]
        .as_array()
        .unwrap()
        .iter()
        .find(|s| s["name"] == "D-to-one")
        .unwrap();
    assert_eq!(suite["passed"], true);
}
