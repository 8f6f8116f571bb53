//! End-to-end tests of the `sscode` binary: file formats, exit codes, and
//! determinism contracts.

use std::path::Path;
use std::process::{Command, Output};

use sscode_core::{
    apply_channel, min_distance, ChannelConfig, FieldParams, Message, RsCode, Subspace,
};

fn sscode(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sscode"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn sscode_in(dir: &Path, args: &[&str], envs: &[(&str, &str)]) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_sscode"));
    cmd.current_dir(dir).args(args);
    for (k, v) in envs {
        cmd.env(k, v);
    }
    cmd.output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn encode_decode_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let msg_path = dir.path().join("msg.txt");
    let cw_path = dir.path().join("cw.txt");
    let out_path = dir.path().join("decoded.txt");
    std::fs::write(&msg_path, "6\n").unwrap();
    let out = sscode(&[
        "encode", "--q", "2", "--m", "3", "--l", "3", "--k", "1",
        "--message", msg_path.to_str().unwrap(),
        "--output", cw_path.to_str().unwrap(),
    ]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    // The codeword file round-trips through the subspace parser.
    let cw_text = std::fs::read_to_string(&cw_path).unwrap();
    let cw = Subspace::parse_text(&cw_text).unwrap();
    assert_eq!(cw.to_text(), cw_text);
    assert_eq!((cw.ambient_dim(), cw.dim()), (6, 3));

    let out = sscode(&[
        "decode", "--q", "2", "--m", "3", "--l", "3", "--k", "1",
        "--input", cw_path.to_str().unwrap(),
        "--output", out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), "6\n");
}

#[test]
fn decode_recovers_from_corruption_within_guarantee() {
    let dir = tempfile::tempdir().unwrap();
    let fp = FieldParams::with_default_modulus(2, 3).unwrap();
    let code = RsCode::with_default_eval_set(fp.clone(), 3, 1).unwrap();
    let msg = Message::new(vec![fp.element_from_index(3).unwrap()]);
    let sent = code.encode(&msg).unwrap();
    let corrupted = apply_channel(
        &sent,
        &ChannelConfig {
            erasures: 1,
            errors: 1,
            seed: 77,
        },
    )
    .unwrap()
    .received;
    let in_path = dir.path().join("received.txt");
    let out_path = dir.path().join("decoded.txt");
    std::fs::write(&in_path, corrupted.to_text()).unwrap();
    let out = sscode(&[
        "decode", "--q", "2", "--m", "3", "--l", "3", "--k", "1",
        "--input", in_path.to_str().unwrap(),
        "--output", out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), msg.to_text());
}

#[test]
fn decode_failure_writes_token_and_exit_code() {
    let dir = tempfile::tempdir().unwrap();
    let in_path = dir.path().join("received.txt");
    let out_path = dir.path().join("decoded.txt");
    // A subspace far from every codeword of the k=3 (distance-2) code.
    std::fs::write(&in_path, "2 6 3\n1 0 0 0 0 0\n0 1 0 0 0 0\n0 0 0 1 0 0\n").unwrap();
    let out = sscode(&[
        "decode", "--q", "2", "--m", "3", "--l", "3", "--k", "3",
        "--input", in_path.to_str().unwrap(),
        "--output", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(5));
    assert_eq!(std::fs::read_to_string(&out_path).unwrap(), "FAILURE\n");
}

#[test]
fn decode_distinguishes_parse_errors_from_failure() {
    let dir = tempfile::tempdir().unwrap();
    let in_path = dir.path().join("received.txt");
    let out_path = dir.path().join("decoded.txt");
    std::fs::write(&in_path, "not a subspace\n").unwrap();
    let out = sscode(&[
        "decode",
        "--input", in_path.to_str().unwrap(),
        "--output", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    // No partial output file.
    assert!(!out_path.exists());
    // Missing input file is an I/O error, not a parse error.
    let out = sscode(&[
        "decode",
        "--input", dir.path().join("nope.txt").to_str().unwrap(),
        "--output", out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn bounds_table_and_csv() {
    let out = sscode(&["bounds", "--q", "2", "--N", "6", "--l", "3", "--D", "6"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let last = text.lines().last().unwrap();
    let cells: Vec<&str> = last.split_whitespace().collect();
    assert_eq!(cells, ["6", "3", "2", "6", "14", "2", "15"]);
    assert!(text.contains("155"), "D=4 Singleton row present");
    assert!(text.contains("1395"));

    let dir = tempfile::tempdir().unwrap();
    let csv_path = dir.path().join("bounds.csv");
    let out = sscode(&[
        "bounds", "--q", "2", "--N", "6", "--l", "3", "--D", "6",
        "--csv", csv_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let csv = std::fs::read_to_string(&csv_path).unwrap();
    let lines: Vec<&str> = csv.lines().collect();
    assert_eq!(lines[0], "N,l,q,D,packing,covering,singleton");
    assert_eq!(lines[1], "6,3,2,2,1395,1395,1395");
    assert_eq!(lines[2], "6,3,2,4,1395,15,155");
    assert_eq!(lines[3], "6,3,2,6,14,2,15");

    // Odd distance rejected loudly.
    let out = sscode(&["bounds", "--q", "2", "--N", "6", "--l", "3", "--D", "5"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_asymptotic_csv() {
    let out = sscode(&["bounds", "--asymptotic", "--lambda", "0.25"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "delta,packing,covering,singleton");
    assert_eq!(lines[1], "0,0.75,0.75,0.75");
    assert_eq!(lines.len(), 102);
    // Out-of-range lambda is a usage error.
    let out = sscode(&["bounds", "--asymptotic", "--lambda", "0.8"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn bounds_requires_flags() {
    let out = sscode(&["bounds"]);
    assert_eq!(out.status.code(), Some(2));
    let out = sscode(&["nonsense-subcommand"]);
    assert_ne!(out.status.code(), Some(0));
}

#[test]
fn enumerate_blocks() {
    let out = sscode(&["enumerate", "--q", "2", "--N", "2", "--l", "1"]);
    assert!(out.status.success());
    let text = stdout_of(&out);
    let blocks: Vec<&str> = text.split("\n\n").collect();
    assert_eq!(blocks.len(), 3);
    for b in &blocks {
        let s = Subspace::parse_text(b).unwrap();
        assert_eq!((s.ambient_dim(), s.dim()), (2, 1));
    }
    // l = 0 produces the single zero-space block.
    let out = sscode(&["enumerate", "--q", "2", "--N", "3", "--l", "0"]);
    let text = stdout_of(&out);
    assert_eq!(text, "2 3 0\n");
}

#[test]
fn enumerate_cap_and_env_override() {
    let dir = tempfile::tempdir().unwrap();
    let out = sscode(&["enumerate", "--q", "2", "--N", "30", "--l", "15"]);
    assert_eq!(out.status.code(), Some(4));
    // Tightening the cap via the environment makes a small case fail too.
    let out = sscode_in(
        dir.path(),
        &["enumerate", "--q", "2", "--N", "4", "--l", "2"],
        &[("SSCODE_ENUM_CAP", "3")],
    );
    assert_eq!(out.status.code(), Some(4));
    let out = sscode_in(
        dir.path(),
        &["enumerate", "--q", "2", "--N", "4", "--l", "2"],
        &[("SSCODE_ENUM_CAP", "10000")],
    );
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn gvcode_meets_covering_bound_and_distance() {
    let dir = tempfile::tempdir().unwrap();
    let out_path = dir.path().join("gv.txt");
    let out = sscode(&[
        "gvcode", "--q", "2", "--N", "6", "--l", "3", "--t", "2",
        "--seed", "5",
        "--output", out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    let words: Vec<Subspace> = text
        .split("\n\n")
        .map(|b| Subspace::parse_text(b).unwrap())
        .collect();
    assert!(words.len() >= 15, "got {}", words.len());
    assert!(min_distance(&words).unwrap() >= 4);
}

#[test]
fn simulate_is_deterministic_and_meets_guarantee() {
    let dir = tempfile::tempdir().unwrap();
    let csv1 = dir.path().join("t1.csv");
    let csv2 = dir.path().join("t2.csv");
    let args = |csv: &str| {
        vec![
            "simulate".to_string(), "--q".into(), "2".into(), "--m".into(), "3".into(),
            "--l".into(), "3".into(), "--k".into(), "1".into(),
            "--rho".into(), "1".into(), "--t".into(), "1".into(),
            "--trials".into(), "60".into(), "--seed".into(), "42".into(),
            "--csv".into(), csv.into(),
        ]
    };
    let run = |csv: &Path| {
        let argv = args(csv.to_str().unwrap());
        let argv: Vec<&str> = argv.iter().map(|s| s.as_str()).collect();
        sscode(&argv)
    };
    let out1 = run(&csv1);
    let out2 = run(&csv2);
    assert!(out1.status.success());
    assert_eq!(stdout_of(&out1), stdout_of(&out2), "summary is reproducible");
    assert_eq!(
        std::fs::read_to_string(&csv1).unwrap(),
        std::fs::read_to_string(&csv2).unwrap(),
        "trial log is reproducible"
    );
    // Every cell in this grid is within the guarantee: rate 1.0000.
    let summary = stdout_of(&out1);
    let rates: Vec<&str> = summary
        .lines()
        .skip(2)
        .map(|l| l.split_whitespace().last().unwrap())
        .collect();
    assert_eq!(rates, vec!["1.0000"; 4]);
    // CSV rows: header + 4 cells x 60 trials.
    let csv = std::fs::read_to_string(&csv1).unwrap();
    assert_eq!(csv.lines().count(), 241);
    assert!(csv.starts_with("seed,rho_target,t_target,rho_actual,t_actual,distance,decode_ok"));
    for line in csv.lines().skip(1) {
        assert_eq!(line.split(',').next_back(), Some("1"));
    }
}
