use std::path::PathBuf;
use std::process::{Command, Output};

fn kasw(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_kasw"))
        .args(args)
        .env_remove("KASW_SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn tmp(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("kasw-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

#[test]
fn kernel_s1_is_y0_equal_one() {
    let o = kasw(&["kernel", "--p", "2", "--s", "1"]);
    assert!(o.status.success());
    assert_eq!(stdout(&o), "Y_0 = 1\n");
    let j = kasw(&["kernel", "--p", "2", "--s", "1", "--format", "json"]);
    assert_eq!(stdout(&j), "[[[\"1/1\"]]]\n");
}

#[test]
fn generate_2_2_table() {
    let o = kasw(&["generate", "--p", "2", "--s", "2", "--degree", "8"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["p"], 2);
    assert_eq!(v["D"], 8);
    assert_eq!(v["G"].as_array().unwrap().len(), 2);
    assert_eq!(v["H"].as_array().unwrap().len(), 2);
    // G_2 = 1 + 2ζ_4 X_0 - 52 X_0^4
    assert_eq!(
        v["G"][1],
        serde_json::json!([[[0, 0], ["1/1", "0/1"]], [[1, 0], ["0/1", "2/1"]], [[4, 0], ["-52/1", "0/1"]]])
    );
}

#[test]
fn output_is_byte_identical() {
    let a = kasw(&["generate", "--p", "3", "--s", "2"]);
    let b = kasw(&["generate", "--p", "3", "--s", "2"]);
    assert_eq!(a.stdout, b.stdout);
    let a = kasw(&["verify", "--p", "2", "--s", "2", "--suite", "group", "--format", "json"]);
    let b = kasw(&["verify", "--p", "2", "--s", "2", "--suite", "group", "--format", "json"]);
    // timings differ between runs; everything else must not
    let strip = |o: &Output| {
        let mut v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        for c in v["checks"].as_array_mut().unwrap() {
            c["millis"] = serde_json::Value::Null;
        }
        v.to_string()
    };
    assert_eq!(strip(&a), strip(&b));
}

#[test]
fn reduce_2_2_prints_special_equation() {
    let o = kasw(&["reduce", "--p", "2", "--s", "2"]);
    assert!(o.status.success());
    let out = stdout(&o);
    assert!(out.contains("y_1 - y_1^2 + (y0^2 + y0^3 + y0^4 + y0^8) = x_1"), "{}", out);
}

#[test]
fn verify_p3_exits_zero() {
    let o = kasw(&["verify", "--p", "3", "--s", "2", "--samples", "30"]);
    assert!(o.status.success(), "{}", stdout(&o));
    assert!(stdout(&o).contains("all gated checks passed"));
}

#[test]
fn verify_p2_fails_with_bound_witness() {
    let o = kasw(&["verify", "--p", "2", "--s", "2", "--suite", "artin-hasse", "--format", "json"]);
    assert_eq!(o.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let bound = v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "g_monomial_bound")
        .unwrap();
    assert_eq!(bound["passed"], false);
    assert!(bound["witness"].as_str().unwrap().contains("a0^8: ν = 3 < 4"));
}

#[test]
fn diagnostics_never_fail_the_run() {
    let o = kasw(&["verify", "--p", "2", "--s", "2", "--suite", "diagnostics"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("ν(series - example) = 5/2"));
}

#[test]
fn add_and_isogeny_from_files() {
    let table = tmp("t22.json");
    let o = kasw(&["generate", "--p", "2", "--s", "2", "--output", table.to_str().unwrap()]);
    assert!(o.status.success());
    let pts = tmp("pts.json");
    std::fs::write(&pts, "[[[\"1/1\",\"0/1\"],[\"0/1\",\"0/1\"]],[[\"1/1\",\"0/1\"],[\"0/1\",\"0/1\"]]]").unwrap();
    let t = table.to_str().unwrap();
    let p = pts.to_str().unwrap();
    // (1,0) ⊕ (1,0) reduces to the Witt vector (0,1) over F_2
    let sum = kasw(&["add", "--p", "2", "--s", "2", "--table", t, "--points", p, "--format", "json"]);
    assert!(sum.status.success());
    let v: Vec<Vec<Vec<String>>> = serde_json::from_slice(&sum.stdout).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0][0], vec!["-2/1", "0/1"]);
    let k = kasw(&["kernel", "--p", "2", "--s", "2", "--table", t, "--format", "json"]);
    std::fs::write(&pts, &k.stdout).unwrap();
    let img = kasw(&["isogeny", "--p", "2", "--s", "2", "--table", t, "--points", p]);
    assert!(img.status.success());
    assert_eq!(stdout(&img), "X_0 = 0, X_1 = 0\n");
}

#[test]
fn bad_inputs_are_errors() {
    let table = tmp("t21.json");
    kasw(&["generate", "--p", "2", "--s", "1", "--output", table.to_str().unwrap()]);
    let o = kasw(&["kernel", "--p", "2", "--s", "2", "--table", table.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let bad = tmp("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let o = kasw(&["kernel", "--p", "2", "--s", "1", "--table", bad.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    let o = kasw(&["generate", "--p", "7", "--s", "1"]);
    assert_eq!(o.status.code(), Some(2));
    let o = kasw(&["generate", "--p", "7", "--s", "1", "--allow-large"]);
    assert!(o.status.success());
}

#[test]
fn seed_changes_samples_not_verdict() {
    let run = |seed: &str| {
        Command::new(env!("CARGO_BIN_EXE_kasw"))
            .args(["verify", "--p", "3", "--s", "1", "--suite", "group", "--samples", "20"])
            .env("KASW_SEED", seed)
            .output()
            .unwrap()
    };
    assert!(run("1").status.success());
    assert!(run("12345").status.success());
    assert_eq!(run("x").status.code(), Some(2));
}
