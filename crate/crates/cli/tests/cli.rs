use std::io::Write;
use std::process::{Command, Output, Stdio};

use slocc_cli::records::VerdictRecord;

fn slocc(args: &[&str], stdin: &str, env: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_slocc"));
    cmd.args(args)
        .env_remove("SLOCC_EPS2")
        .env_remove("SLOCC_EPS4")
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .stderr(Stdio::piped());
    for (k, v) in env {
        cmd.env(k, v);
    }
    let mut child = cmd.spawn().expect("binary runs");
    child.stdin.take().unwrap().write_all(stdin.as_bytes()).unwrap();
    child.wait_with_output().unwrap()
}

fn verdicts(out: &Output) -> Vec<VerdictRecord> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(|l| serde_json::from_str(l).expect("verdict line parses"))
        .collect()
}

fn exact_record(id: &str, amps: &[i64]) -> String {
    let a: Vec<String> = amps.iter().map(|x| format!(r#"["{x}/1","0/1"]"#)).collect();
    let n = if amps.len() == 8 { 3 } else { 4 };
    format!(r#"{{"id":"{id}","n_qubits":{n},"mode":"exact","amplitudes":[{}]}}"#, a.join(","))
}

fn basis(n: usize, idx: &[usize]) -> Vec<i64> {
    (0..n).map(|i| i64::from(idx.contains(&i))).collect()
}

const GHZ_FLOAT: &str = r#"{"id":"ghz","n_qubits":3,"mode":"float","amplitudes":[[0.7071067811865476,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0,0],[0.7071067811865476,0]]}"#;

#[test]
fn classify_ghz_and_c4() {
    let input = format!("{GHZ_FLOAT}\n{}\n", exact_record("c4", &basis(16, &[3, 5, 6, 9, 10, 12])));
    let out = slocc(&["classify", "-"], &input, &[]);
    assert_eq!(out.status.code(), Some(0));
    let v = verdicts(&out);
    assert_eq!(v[0].verdict.as_deref(), Some("GHZ"));
    assert!(v[0].tolerance.is_some());
    assert_eq!(v[1].verdict.as_deref(), Some("GenuineOther"));
    assert!(v[1].tolerance.is_none());
    let failed: Vec<_> = v[1].flags.iter().filter(|f| !f.value).map(|f| f.name.as_str()).collect();
    assert!(failed.contains(&"TripleGHZ(ABC|D)"));
    assert!(failed.contains(&"ghz4.equality1"));
    assert!(failed.contains(&"w4.equality1"));
}

#[test]
fn errors_are_per_record_and_order_is_kept() {
    let input = [
        exact_record("first", &basis(8, &[1, 2, 4])),
        exact_record("zero", &[0; 8]),
        "not json".to_string(),
        r#"{"id":"short","n_qubits":3,"mode":"exact","amplitudes":[["1","0"]]}"#.to_string(),
        String::new(),
        exact_record("last", &basis(8, &[2])),
    ]
    .join("\n");
    let out = slocc(&["classify", "-"], &input, &[]);
    assert_eq!(out.status.code(), Some(2));
    let v = verdicts(&out);
    let ids: Vec<_> = v.iter().map(|r| r.id.as_str()).collect();
    assert_eq!(ids, ["first", "zero", "line3", "short", "last"]);
    assert_eq!(v[0].verdict.as_deref(), Some("W"));
    assert_eq!(v[1].error.as_deref(), Some("zero state"));
    assert!(v[2].error.as_deref().unwrap().starts_with("malformed record"));
    assert!(v[3].error.as_deref().unwrap().contains("expected 8"));
    assert_eq!(v[4].verdict.as_deref(), Some("A_B_C"));
}

#[test]
fn output_file_and_mode_override() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("in.jsonl");
    let output = dir.path().join("out.jsonl");
    std::fs::write(&input, format!("{GHZ_FLOAT}\n")).unwrap();
    let out = slocc(
        &["classify", input.to_str().unwrap(), "--mode", "exact", "-o", output.to_str().unwrap()],
        "",
        &[],
    );
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let v: VerdictRecord = serde_json::from_str(std::fs::read_to_string(&output).unwrap().trim()).unwrap();
    assert_eq!(v.verdict.as_deref(), Some("GHZ"));
    assert_eq!(v.mode, Some(slocc_cli::records::Mode::Exact));
}

#[test]
fn env_overrides_tolerance() {
    let out = slocc(&["classify", "-"], GHZ_FLOAT, &[("SLOCC_EPS2", "1e-8"), ("SLOCC_EPS4", "1e-7")]);
    let v = verdicts(&out);
    let t = v[0].tolerance.as_ref().unwrap();
    assert_eq!((t.eps2, t.eps4), (1e-8, 1e-7));
    // The flag wins over the environment.
    let out = slocc(&["classify", "-", "--eps2", "1e-9"], GHZ_FLOAT, &[("SLOCC_EPS2", "1e-8")]);
    assert_eq!(verdicts(&out)[0].tolerance.as_ref().unwrap().eps2, 1e-9);
    for bad in ["--eps2=-1", "--eps2=0"] {
        let out = slocc(&["classify", "-", bad], GHZ_FLOAT, &[]);
        assert_eq!(out.status.code(), Some(1));
    }
    let out = slocc(&["classify", "-"], GHZ_FLOAT, &[("SLOCC_EPS4", "nan")]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn orbit_pipes_into_classify() {
    let orbit = slocc(&["orbit", "--class", "ghz3", "--seed", "1", "--count", "3"], "", &[]);
    assert_eq!(orbit.status.code(), Some(0));
    let text = String::from_utf8(orbit.stdout).unwrap();
    assert_eq!(text.lines().count(), 3);
    let out = slocc(&["classify", "-"], &text, &[]);
    assert!(verdicts(&out).iter().all(|v| v.verdict.as_deref() == Some("GHZ")));
}

#[test]
fn orbit_is_deterministic() {
    for mode in ["exact", "float"] {
        let args = ["orbit", "--class", "w4", "--seed", "9", "--count", "5", "--mode", mode];
        let a = slocc(&args, "", &[]);
        let b = slocc(&args, "", &[]);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
    let args = ["orbit", "--class", "c4", "--seed", "9", "--count", "5"];
    let a = slocc(&args, "", &[]).stdout;
    let b = slocc(&["classify", "-"], std::str::from_utf8(&a).unwrap(), &[]).stdout;
    let c = slocc(&["classify", "-"], std::str::from_utf8(&a).unwrap(), &[]).stdout;
    assert_eq!(b, c);
}

#[test]
fn orbit_edge_cases() {
    let out = slocc(&["orbit", "--class", "ghz3", "--count", "0"], "", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    let out = slocc(&["orbit", "--class", "ghz5"], "", &[]);
    assert_ne!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("unknown class"));
}

#[test]
fn verify_suites() {
    let out = slocc(&["verify", "--suite", "appendixB", "--trials", "100000", "--seed", "3"], "", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains("violations 0"));

    let out = slocc(&["verify", "--suite", "c4-properties"], "", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));

    let out = slocc(&["verify", "--suite", "table1", "--trials", "1"], "", &[]);
    assert_eq!(out.status.code(), Some(0));

    let out = slocc(&["verify", "--suite", "appendixZ"], "", &[]);
    assert_ne!(out.status.code(), Some(0));
}
