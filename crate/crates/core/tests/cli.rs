use std::process::Command;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_bassfree"))
}

fn run(args: &[&str]) -> (i32, String, String) {
    let out = bin().args(args).output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn check_exhaustive() {
    let (code, out, _) = run(&["check", "--q", "13", "--p", "7", "--exhaustive"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["fraction"], "1078/1078");
    assert_eq!(v["mode"], "EXHAUSTIVE");
}

#[test]
fn check_rejects_inadmissible() {
    let (code, _, err) = run(&["check", "--q", "19", "--p", "5"]);
    assert_eq!(code, 2);
    assert!(err.contains("inadmissible"), "{err}");
}

#[test]
fn classify_with_brute_force() {
    let (code, out, _) = run(&["classify", "--q", "13", "--p", "7", "--brute-force"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["predicate"], true);
    assert_eq!(v["witnessed"], true);
}

#[test]
fn spectral_verdicts() {
    // find an h outside D from a check record
    let (_, out, _) = run(&["check", "--q", "13", "--p", "7", "--seed", "3"]);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    let h: Vec<String> = v["h"].as_array().unwrap().iter().map(|x| x.to_string()).collect();
    let (code, out, _) = run(&["spectral", "--q", "13", "--p", "7", "--k", "2", "--m", "21", "--h", &h.join(","), "--numeric"]);
    assert_eq!(code, 0);
    let v: serde_json::Value = serde_json::from_str(out.trim()).unwrap();
    assert_eq!(v["exact"]["verdict"], true);
    assert_eq!((v["exact"]["b_plus"].as_u64(), v["exact"]["b_minus"].as_u64()), (Some(1), Some(3)));
    assert_eq!(v["agree"], true);

    let (code, _, err) = run(&["spectral", "--q", "13", "--p", "7", "--k", "2", "--m", "21", "--h", "1,0,0,1"]);
    assert_eq!(code, 2);
    assert!(err.contains("dihedralizer"), "{err}");
}

#[test]
fn sweep_and_resume() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("s.jsonl");
    let o = out.to_str().unwrap();
    let (code, _, err) = run(&["sweep", "--q-min", "7", "--q-max", "100", "--samples", "200", "--seed", "1", "--jobs", "2", "--out", o]);
    assert_eq!(code, 0, "{err}");
    let first = std::fs::read_to_string(&out).unwrap();
    for want in ["\"q\":13,", "\"q\":27,", "\"q\":41,", "\"q\":97,"] {
        assert!(first.contains(want), "{want}");
    }
    // drop the last two records and their journal lines, as if killed
    let keep = |s: &str, n: usize| s.lines().take(n).map(|l| format!("{l}\n")).collect::<String>();
    let total = first.lines().count();
    std::fs::write(&out, keep(&first, total - 2)).unwrap();
    let jp = dir.path().join("s.jsonl.journal");
    let journal = std::fs::read_to_string(&jp).unwrap();
    std::fs::write(&jp, keep(&journal, total - 2)).unwrap();
    let (code, _, err) = run(&["sweep", "--q-min", "7", "--q-max", "100", "--samples", "200", "--seed", "1", "--out", o, "--resume"]);
    assert_eq!(code, 0, "{err}");
    let strip = |s: &str| -> Vec<serde_json::Value> {
        s.lines()
            .map(|l| {
                let mut v: serde_json::Value = serde_json::from_str(l).unwrap();
                v["elapsed_ms"] = 0.into();
                v
            })
            .collect()
    };
    assert_eq!(strip(&first), strip(&std::fs::read_to_string(&out).unwrap()));
}
