use std::process::{Command, Output};

use macdlab::almost_sym::AlmostSym;
use macdlab::cli_verify::Report;
use macdlab::stable_limit::{e_tilde_pair, StableIndex};

fn macdlab(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_macdlab")).args(args).env_remove("MACDLAB_CAPS").output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn compute_examples() {
    for (args, want) in [
        (&["compute", "Etilde", "--mu", "1,1,1"][..], "x1*x2*x3\n"),
        (&["compute", "kappa", "--mu", "0"][..], "t/(1 - t)\n"),
        (&["compute", "weight", "--mu", "2", "--lambda", ""][..], "(q^2*t, 0, ...)\n"),
        (&["compute", "EtildePair", "--mu", "1,1", "--lambda", "1"][..], "x1*x2*P[1](x3+...)\n"),
        (&["compute", "E", "--mu", "0,1"][..], "((q - q*t)/(q - t))*x1 + x2\n"),
    ] {
        let o = macdlab(args);
        assert!(o.status.success(), "{args:?}");
        assert_eq!(stdout(&o), want, "{args:?}");
    }
}

#[test]
fn json_output_reparses() {
    let o = macdlab(&["compute", "EtildePair", "--mu", "0,1", "--lambda", "1", "--format", "json"]);
    assert!(o.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let back: AlmostSym = serde_json::from_value(v["value"].clone()).unwrap();
    assert_eq!(back, *e_tilde_pair(&StableIndex::new(vec![0, 1], vec![1]).unwrap()));
}

#[test]
fn bad_input_exits_nonzero() {
    let o = macdlab(&["compute", "EtildePair", "--mu", "1,0"]);
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("not reduced"));
    assert!(!macdlab(&["compute", "HL", "--lambda", "1,x"]).status.success());
    assert!(!macdlab(&["verify", "no-such-suite"]).status.success());
}

#[test]
fn caps_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_macdlab"))
        .args(["compute", "Etilde", "--mu", "2,1"])
        .env("MACDLAB_CAPS", "max_degree=2")
        .output()
        .unwrap();
    assert!(!o.status.success());
    assert!(String::from_utf8_lossy(&o.stderr).contains("cap"));
}

#[test]
fn verify_emits_sorted_json_lines() {
    let o = macdlab(&["verify", "daha-relations", "--n", "3", "--degree", "3"]);
    assert!(o.status.success());
    let o = macdlab(&["verify", "hhl-oracle", "--max-size", "2"]);
    assert!(o.status.success());
    let reports: Vec<Report> = stdout(&o).lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert!(!reports.is_empty() && reports.iter().all(Report::passed));
    assert!(reports.windows(2).all(|w| w[0] <= w[1]));
    let o = macdlab(&["verify", "stable-weights", "--max", "1"]);
    assert!(o.status.success());
    assert!(stdout(&o).contains("min_valuation_margin"));
}

#[test]
fn reports_are_deterministic() {
    let args = ["verify", "basis-rank", "--degree", "4", "--n", "2", "--seed", "11"];
    let (a, b) = (macdlab(&args), macdlab(&args));
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = std::env::temp_dir().join(format!("macdlab-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("r.txt");
    let o = macdlab(&["verify", "recurrences", "--max", "1", "--format", "text", "--out", path.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(&path).unwrap();
    assert!(text.lines().all(|l| l.starts_with("PASS recurrences")), "{text}");
    std::fs::remove_dir_all(dir).unwrap();
}
