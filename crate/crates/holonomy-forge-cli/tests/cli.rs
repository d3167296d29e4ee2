//! End-to-end tests of the binary: exit codes, bundled asset resolution,
//! JSON determinism, and the asset-directory override.

use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_holonomy-forge"))
        .args(args)
        .env_remove("HOLONOMY_FORGE_ASSETS")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn verify_structures_passes() {
    let out = run(&["verify-structures"]);
    assert!(out.status.success(), "{}", stdout(&out));
    assert!(stdout(&out).contains("14 signed terms"));
}

#[test]
fn orbifold_analyze_bundled_example() {
    let out = run(&["orbifold-analyze", "joyce_example.orb"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("12 orbit classes"));
    assert!(text.contains("48 components total"));
    assert!(text.contains("C^2/Z2"));
    assert!(!text.contains("FAIL"));
}

#[test]
fn orbifold_betti_bundled_example() {
    let out = run(&["orbifold-betti", "joyce_example.orb"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("(12, 43)"));
    assert!(text.contains("(1, 0, 0, 7, 7, 0, 0, 1)"));
}

#[test]
fn estimates_check_defaults() {
    let out = run(&["estimates-check"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("5/5 pass"));
    assert!(text.contains("minimum positive t-margin 1/2"));
}

#[test]
fn spin7_demo_passes() {
    let out = run(&["spin7-demo"]);
    assert!(out.status.success(), "{}", stdout(&out));
    let text = stdout(&out);
    assert!(text.contains("1 of 8 choices"));
    assert!(text.contains("3 points with local quotient orders [4, 4, 4]"));
}

#[test]
fn json_output_is_byte_identical_across_runs() {
    let dir = std::env::temp_dir().join(format!("hf-json-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let p1 = dir.join("r1.json");
    let p2 = dir.join("r2.json");
    for p in [&p1, &p2] {
        let out = run(&["report", "--json", p.to_str().unwrap()]);
        assert!(out.status.success());
    }
    let a = std::fs::read(&p1).unwrap();
    let b = std::fs::read(&p2).unwrap();
    assert!(!a.is_empty());
    assert_eq!(a, b, "JSON reports must be byte-identical for identical inputs");
    let parsed: serde_json::Value = serde_json::from_slice(&a).unwrap();
    assert_eq!(parsed["schema"], 1);
    assert_eq!(parsed["command"], "report");
    assert!(parsed["inputs_digest"].as_str().unwrap().starts_with("sha256:"));
    assert!(parsed["findings"].as_array().unwrap().len() >= 40);
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn json_to_stdout_suppresses_human_output() {
    let out = run(&["estimates-check", "--json", "-"]);
    assert!(out.status.success());
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["command"], "estimates-check");
}

#[test]
fn missing_input_exits_two() {
    let out = run(&["orbifold-analyze", "does-not-exist.orb"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["orbifold-analyze", "Cargo.toml"]);
    assert_eq!(out.status.code(), Some(2), "malformed input is an input error");
}

#[test]
fn failing_finding_exits_one() {
    // A coordinate swap generates a group that does not preserve the form.
    let dir = std::env::temp_dir().join(format!("hf-fail-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("swap.orb");
    let mut text = String::from("dim 7\nstructure g2\ngenerator\n");
    let rows = [
        "0 1 0 0 0 0 0",
        "1 0 0 0 0 0 0",
        "0 0 1 0 0 0 0",
        "0 0 0 1 0 0 0",
        "0 0 0 0 1 0 0",
        "0 0 0 0 0 1 0",
        "0 0 0 0 0 0 1",
        "0 0 0 0 0 0 0",
    ];
    text.push_str(&rows.join("\n"));
    text.push('\n');
    std::fs::write(&path, text).unwrap();
    let out = run(&["orbifold-analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL"));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn unsupported_model_exits_three() {
    // The quarter-turn on T^8 preserves the Spin(7) form but its fixed
    // points have 8-dimensional normal spaces: outside the supported local
    // models.
    let dir = std::env::temp_dir().join(format!("hf-unsup-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("quarter.orb");
    let text = "dim 8\nstructure spin7\ngenerator\n\
                0 -1 0 0 0 0 0 0\n\
                1 0 0 0 0 0 0 0\n\
                0 0 0 -1 0 0 0 0\n\
                0 0 1 0 0 0 0 0\n\
                0 0 0 0 0 -1 0 0\n\
                0 0 0 0 1 0 0 0\n\
                0 0 0 0 0 0 0 -1\n\
                0 0 0 0 0 0 1 0\n\
                0 0 0 0 0 0 0 0\n";
    std::fs::write(&path, text).unwrap();
    let out = run(&["orbifold-analyze", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3), "{}", stdout(&out));
    let _ = std::fs::remove_dir_all(&dir);
}

#[test]
fn assets_env_overrides_bundled_inputs() {
    let dir = std::env::temp_dir().join(format!("hf-assets-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    // An override with a weakened curvature profile: the hypothesis check
    // must fail, exit code 1.
    let text = "psi_L2 = A1 * t^3\n\
                psi_C0 = A1 * t^3\n\
                dpsi_L14 = A1 * t^(16/7)\n\
                inj_lower = A2 * t\n\
                curv_upper = A3 * t^(-2)\n\
                rule dEta_L2 <= psi_L2\n\
                rule nabla_dEta_L14 <= C2 * dpsi_L14\n\
                rule dEta_C0 <= C3 * t^(1/2) * nabla_dEta_L14\n\
                assume dEta_L2 <= C4 * t^4\n\
                assume nabla_dEta_L14 <= C5\n\
                assume dEta_C0 <= K * t^(1/2)\n";
    std::fs::write(dir.join("estimates_default.est"), text).unwrap();
    let out = Command::new(env!("CARGO_BIN_EXE_holonomy-forge"))
        .args(["estimates-check"])
        .env("HOLONOMY_FORGE_ASSETS", &dir)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "{}", stdout(&out));
    assert!(stdout(&out).contains("FAIL"));
    assert!(stdout(&out).contains("modified from defaults"));
    let _ = std::fs::remove_dir_all(&dir);
}
