use std::path::PathBuf;
use std::process::Command;

fn corpus(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus").join(name)
}

fn hocolim(args: &[&str]) -> (i32, String, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_hocolim")).args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn circle_from_span() {
    let f = corpus("span.toml");
    let (code, out, _) = hocolim(&["hocolim", f.to_str().unwrap(), "--diagram", "S0span", "--homology", "0,1,2"]);
    assert_eq!(code, 0);
    assert!(out.contains("H_0 = Z"), "{out}");
    assert!(out.contains("H_1 = Z"), "{out}");
    assert!(out.contains("H_2 = 0"), "{out}");
}

#[test]
fn nerve_of_terminal_is_a_point() {
    let f = corpus("one.toml");
    let (code, out, _) = hocolim(&["nerve", f.to_str().unwrap(), "--cat", "terminal"]);
    assert_eq!(code, 0, "{out}");
}

#[test]
fn verify_reports_one_line_per_instance() {
    let f = corpus("span.toml");
    let (code, out, _) = hocolim(&["--max-dim", "3", "verify", "loc=bar", f.to_str().unwrap()]);
    assert_eq!(code, 0, "{out}");
    let lines: Vec<&str> = out.lines().filter(|l| l.starts_with("loc=bar")).collect();
    assert!(!lines.is_empty());
    for l in lines {
        let cols: Vec<&str> = l.split('\t').collect();
        assert!(cols.len() >= 5, "{l}");
        assert_eq!(cols[2], "verified", "{l}");
        assert!(cols[4].ends_with("ms"), "{l}");
    }
}

#[test]
fn stricter_witness_fails_homology_claims() {
    let f = corpus("span.toml");
    let (code, out, _) = hocolim(&["--max-dim", "3", "--witness", "iso", "verify", "homotopy-invariance", f.to_str().unwrap()]);
    assert_eq!(code, 1, "{out}");
    assert!(out.contains("failed"));
}

#[test]
fn unknown_claim_is_an_error() {
    let f = corpus("span.toml");
    let (code, _, err) = hocolim(&["verify", "no-such-claim", f.to_str().unwrap()]);
    assert_eq!(code, 2);
    assert!(err.contains("no-such-claim"), "{err}");
}

#[test]
fn parse_errors_carry_positions() {
    let dir = tempdir();
    let bad = dir.join("bad.toml");
    std::fs::write(&bad, "cap = 3\n[[category]\nid = \"x\"\n").unwrap();
    let (code, _, err) = hocolim(&["nerve", bad.to_str().unwrap(), "--cat", "x"]);
    assert_eq!(code, 2);
    assert!(err.contains("line 2"), "{err}");
}

#[test]
fn out_directory_round_trips() {
    let dir = tempdir();
    let f = corpus("arrow.toml");
    let (code, _, err) = hocolim(&[
        "--out",
        dir.to_str().unwrap(),
        "hocolim",
        f.to_str().unwrap(),
        "--diagram",
        "collapse",
    ]);
    assert_eq!(code, 0, "{err}");
    let written: Vec<PathBuf> = std::fs::read_dir(&dir).unwrap().map(|e| e.unwrap().path()).collect();
    assert!(!written.is_empty());
    for p in written.iter().filter(|p| p.extension().is_some_and(|x| x == "toml")) {
        hocolim::cli::load(p, None).unwrap();
    }
}

fn tempdir() -> PathBuf {
    let dir = std::env::temp_dir().join(format!("hocolim-cli-{}-{:?}", std::process::id(), std::thread::current().id()));
    let _ = std::fs::remove_dir_all(&dir);
    std::fs::create_dir_all(&dir).unwrap();
    dir
}

#[test]
fn documented_fixture_loads() {
    let f = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../docs/fixtures/explicit.toml");
    let ws = hocolim::cli::load(&f, None).unwrap();
    assert_eq!(ws.cap, 1);
    let (code, out, err) = hocolim(&["hocolim", f.to_str().unwrap(), "--diagram", "loops", "--homology", "0"]);
    assert_eq!(code, 0, "{err}");
    assert!(out.contains("H_0 = Z"), "{out}");
}
