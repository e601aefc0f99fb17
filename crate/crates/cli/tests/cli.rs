use std::fs;
use std::path::Path;
use std::process::{Command, Output};

const BIN: &str = env!("CARGO_BIN_EXE_signed-grid");

fn run(cache: Option<&Path>, args: &[&str]) -> Output {
    let mut cmd = Command::new(BIN);
    cmd.env_remove("SIGNED_GRID_CACHE_DIR");
    match cache {
        Some(dir) => cmd.arg("--cache-dir").arg(dir),
        None => cmd.arg("--no-cache"),
    };
    cmd.args(args).output().unwrap()
}

fn stdout(out: &Output) -> &str {
    std::str::from_utf8(&out.stdout).unwrap()
}

fn stderr(out: &Output) -> &str {
    std::str::from_utf8(&out.stderr).unwrap()
}

#[test]
fn documented_examples() {
    let out = run(None, &["enumerate", "--perm", "-2 1 3"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "[1, 1/2, 1/2]\n");

    let out = run(None, &["downset", "--perm", "-2 1 3"]);
    assert_eq!(stdout(&out), "\n1\n-1\n-1 2\n-2 1\n-2 1 3\n");

    let out = run(None, &["compactify", "--perm", "-3 -2 -1 4 5 6"]);
    assert_eq!(stdout(&out), "core: -1 2\nvector: 3 3\n");

    let out = run(None, &["compactify", "--perm", "1"]);
    assert_eq!(stdout(&out), "core: 1\nvector: 1\n");

    let out = run(None, &["--format", "json", "pancake", "--k", "3"]);
    assert_eq!(
        stdout(&out),
        "{\"basis\":\"monomial\",\"coeffs\":[\"1\",\"1\",\"-1\",\"1\"],\"valid_for\":\"n>=1\"}\n"
    );

    let out = run(None, &["--format", "latex", "reversal", "--k", "1"]);
    assert_eq!(stdout(&out), "\\frac{1}{2}n^{2} + \\frac{1}{2}n + 1\n");

    let out = run(None, &["pancake", "--k", "5", "--eval", "6"]);
    assert_eq!(stdout(&out), "3202\n");
}

#[test]
fn input_files() {
    let dir = tempfile::tempdir().unwrap();
    let good = dir.path().join("pi.perms");
    fs::write(&good, "# generators\n-2 1 3\n1 2\n").unwrap();
    let out = run(None, &["enumerate", "--input", good.to_str().unwrap()]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(stdout(&out), "[1, 1/2, 1/2]\n");

    let bad = dir.path().join("bad.perms");
    fs::write(&bad, "1 2\n2 2\n").unwrap();
    let out = run(None, &["enumerate", "--input", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 2"), "{}", stderr(&out));

    let missing = dir.path().join("missing.perms");
    let out = run(None, &["enumerate", "--input", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn errors_exit_with_status_two() {
    for args in [
        &["enumerate", "--perm", "1 0"][..],
        &["enumerate", "--perm", "1 3"],
        &["enumerate", "--perm", "x"],
        &["pancake", "--k", "11"],
        &["reversal", "--k", "6"],
        &[
            "verify", "--family", "pancake", "--k-max", "2", "--n-max", "8",
        ],
        &["pancake", "--k", "2", "--eval", "0"],
    ] {
        let out = run(None, args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(
            stderr(&out).starts_with("error: "),
            "{args:?}: {}",
            stderr(&out)
        );
        assert!(stdout(&out).is_empty());
    }
}

#[test]
fn ceilings_are_configurable() {
    let out = run(None, &["--max-reversal-k", "1", "reversal", "--k", "2"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("ceiling of 1"));
}

#[test]
fn repeated_runs_are_byte_identical() {
    for args in [
        &["pancake", "--k", "6", "--verbose"][..],
        &["reversal", "--k", "3"],
        &["downset", "--perm", "3 -1 4 -2"],
        &[
            "verify", "--family", "reversal", "--k-max", "2", "--n-max", "4",
        ],
    ] {
        let a = run(None, args);
        let b = run(None, args);
        assert!(a.status.success());
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}

#[test]
fn warm_cache_matches_cold_run() {
    let dir = tempfile::tempdir().unwrap();
    let commands: [&[&str]; 5] = [
        &["pancake", "--k", "6"],
        &["pancake", "--k", "6", "--exact", "--verbose"],
        &["reversal", "--k", "3", "--verbose"],
        &[
            "--format", "json", "verify", "--family", "pancake", "--k-max", "6", "--n-max", "5",
        ],
        &["pancake", "--k", "4", "--eval", "9"],
    ];
    for args in commands {
        let uncached = run(None, args);
        let cold = run(Some(dir.path()), args);
        let warm = run(Some(dir.path()), args);
        assert!(cold.status.success(), "{args:?}: {}", stderr(&cold));
        assert_eq!(cold.stdout, uncached.stdout, "{args:?}");
        assert_eq!(warm.stdout, cold.stdout, "{args:?}");
    }
    let pancake = dir.path().join("pancake");
    for k in 0..=6 {
        assert!(pancake.join(format!("pi_{k}.perms")).exists());
    }
    let hist = fs::read_to_string(pancake.join("S_6.hist")).unwrap();
    assert!(hist.starts_with("# signed-grid histogram v1\n0 1\n"));
}

#[test]
fn cache_directory_from_environment() {
    let dir = tempfile::tempdir().unwrap();
    let out = Command::new(BIN)
        .env("SIGNED_GRID_CACHE_DIR", dir.path())
        .args(["reversal", "--k", "2"])
        .output()
        .unwrap();
    assert!(out.status.success());
    assert!(dir.path().join("reversal").join("pi_2.perms").exists());
}

#[test]
fn verify_reports_table() {
    let out = run(
        None,
        &[
            "verify", "--family", "pancake", "--k-max", "4", "--n-max", "4",
        ],
    );
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("20 pairs checked, 0 mismatches"), "{text}");
    assert!(text.contains("diameter(n = 4) = "));
}
