//! End-to-end checks of the binary: flag surface, exit codes, and output
//! determinism.

use std::process::{Command, Output};

fn landau(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_landau"))
        .args(args)
        .env_remove("LANDAU_CACHE_DIR")
        .output()
        .expect("spawn landau")
}

#[test]
fn gtable_factorization_of_215() {
    let out = landau(&["--n-max", "300", "gtable", "215", "--factor"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.contains("2^3*3^2*5*7*11*13*17*19*23*29*31*43"),
        "{text}"
    );
}

#[test]
fn gtable_range_row_count() {
    let out = landau(&["--n-max", "300", "gtable", "1..10"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.lines().count(), 11); // header + 10 rows
}

#[test]
fn identical_flags_identical_bytes() {
    let a = landau(&["--n-max", "400", "gtable", "2..100", "--format", "csv"]);
    let b = landau(&["--n-max", "400", "gtable", "2..100", "--format", "csv"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);

    let a = landau(&["champions", "eta", "3"]);
    let b = landau(&["champions", "eta", "3"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn champions_first_rows() {
    let out = landau(&["champions", "eta", "3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().nth(1).unwrap().starts_with("5,3/11"), "{text}");

    let out = landau(&["champions", "thmin"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(
        text.lines().nth(1).unwrap().starts_with("2,0.2310"),
        "{text}"
    );

    let out = landau(&["champions", "delta3"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("58897,0.1714"), "{text}");
}

#[test]
fn counts_at_1000() {
    let out = landau(&["--n-max", "1000", "counts", "1000"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert_eq!(text.trim(), "N(1000) = 972");
}

#[test]
fn gseq_short_run_and_bad_y() {
    let out = landau(&["gseq", "4703.39", "3"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("1,0.2426,0.2500,0.621326,0,"), "{text}");

    let out = landau(&["gseq", "not-a-number", "3"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_subset_passes_and_bad_id_is_usage_error() {
    let out = landau(&["--n-max", "2000", "verify", "t4", "prime_power_caps"]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("t4: PASS"));
    assert!(text.contains("prime_power_caps: PASS"));

    let out = landau(&["--n-max", "2000", "verify", "no_such_claim"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn verify_json_format() {
    let out = landau(&["--n-max", "2000", "--format", "json", "verify", "t4"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v[0]["claim_id"], "t4");
    assert_eq!(v[0]["pass"], true);
}

#[test]
fn cache_round_trip_through_cli() {
    let dir = std::env::temp_dir().join(format!("landau-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let d = dir.to_str().unwrap();
    let a = landau(&["--n-max", "500", "--cache-dir", d, "gtable", "2..400"]);
    assert!(a.status.success());
    assert!(dir.join("landau_500.ldau").exists());
    // Second run loads the cache and must produce identical bytes.
    let b = landau(&["--n-max", "500", "--cache-dir", d, "gtable", "2..400"]);
    assert_eq!(a.stdout, b.stdout);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn superchampions_includes_p5() {
    let out = landau(&["superchampions", "50"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.lines().any(|l| l.starts_with("5,12,")), "{text}");
}
