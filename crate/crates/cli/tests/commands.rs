use std::fs;
use std::path::Path;
use std::process::{Command, Output};

fn rangeread(args: &[&str], cwd: &Path) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rangeread")).args(args).current_dir(cwd).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn simulate_is_deterministic_and_report_matches() {
    let dir = tempfile::tempdir().unwrap();
    for out in ["a", "b"] {
        let o = rangeread(&["simulate", "--hands", "100", "--seed", "11", "--trace", "--out", out], dir.path());
        assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    }
    for f in ["history.txt", "report.txt", "report.csv", "trace.txt"] {
        let a = fs::read(dir.path().join("a").join(f)).unwrap();
        assert_eq!(a, fs::read(dir.path().join("b").join(f)).unwrap(), "{f}");
    }
    let o = rangeread(&["report", "a/history.txt", "--out", "r"], dir.path());
    assert!(o.status.success());
    for f in ["report.txt", "report.csv"] {
        assert_eq!(fs::read(dir.path().join("r").join(f)).unwrap(), fs::read(dir.path().join("a").join(f)).unwrap());
    }
    assert_eq!(stdout(&o), fs::read_to_string(dir.path().join("a/report.txt")).unwrap());
}

#[test]
fn zero_hands_gives_empty_history_and_zeroed_report() {
    let dir = tempfile::tempdir().unwrap();
    let o = rangeread(&["simulate", "--hands", "0", "--out", "z"], dir.path());
    assert!(o.status.success());
    let history = fs::read_to_string(dir.path().join("z/history.txt")).unwrap();
    assert_eq!(history.lines().count(), 1);
    let csv = fs::read_to_string(dir.path().join("z/report.csv")).unwrap();
    assert!(csv.lines().nth(1).unwrap().starts_with("0,100,0,0,0,0,0,0,"));
}

#[test]
fn report_rejects_empty_and_malformed_histories() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("empty.txt"), "").unwrap();
    let o = rangeread(&["report", "empty.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    fs::write(dir.path().join("bad.txt"), "#rangeread-history 1\nHAND 1 2\n").unwrap();
    let o = rangeread(&["report", "bad.txt"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("line 2"));
}

#[test]
fn bad_config_is_an_input_error() {
    let dir = tempfile::tempdir().unwrap();
    fs::write(dir.path().join("c.ini"), "[table]\nante = 1\n").unwrap();
    let o = rangeread(&["simulate", "--config", "c.ini", "--hands", "1"], dir.path());
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn hand6_replay_prints_steps_and_snapshots() {
    let dir = tempfile::tempdir().unwrap();
    let o = rangeread(&["replay", "--out", "snaps"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    let rets: Vec<&str> = text
        .lines()
        .filter(|l| l.contains(" seat 5 "))
        .filter_map(|l| l.split_whitespace().find(|w| w.starts_with("RET")))
        .collect();
    assert_eq!(rets, ["RET11", "RET18", "RET33", "RET11", "RET73"]);
    assert!(!text.contains("FAIL"));
    let turn = fs::read_to_string(dir.path().join("snaps/turn-seat5.range")).unwrap();
    assert!(turn.lines().any(|l| l.starts_with("4d3d")));
}

#[test]
fn failed_expectation_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let scn = rangeread::scenario::HAND6.replace("expect winner 0", "expect winner 5");
    fs::write(dir.path().join("h.scn"), scn).unwrap();
    let o = rangeread(&["replay", "h.scn"], dir.path());
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("winner 5"));
}

#[test]
fn scenario_without_actions_has_only_preflop_grids() {
    let dir = tempfile::tempdir().unwrap();
    let scn: String = rangeread::scenario::HAND6
        .lines()
        .filter(|l| !l.starts_with("act ") && !l.starts_with("expect"))
        .map(|l| format!("{l}\n"))
        .collect();
    fs::write(dir.path().join("h.scn"), scn).unwrap();
    let o = rangeread(&["replay", "h.scn", "--out", "s"], dir.path());
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.lines().all(|l| l.starts_with("preflop")));
    let names: Vec<String> = fs::read_dir(dir.path().join("s"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .collect();
    assert!(!names.is_empty() && names.iter().all(|n| n.starts_with("preflop")));
}

#[test]
fn heatmaps_render_and_unknown_format_fails() {
    let dir = tempfile::tempdir().unwrap();
    let o = rangeread(&["heatmap", "--scenario", "-", "--seat", "5", "--street", "flop", "--out", "x.svg"], dir.path());
    assert_eq!(o.status.code(), Some(2));
    fs::write(dir.path().join("h.scn"), rangeread::scenario::HAND6).unwrap();
    let o = rangeread(
        &["heatmap", "--scenario", "h.scn", "--seat", "5", "--street", "flop", "--out", "w.svg"],
        dir.path(),
    );
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let svg = fs::read_to_string(dir.path().join("w.svg")).unwrap();
    assert!(svg.starts_with("<svg") && svg.contains("legend"));
    let o = rangeread(
        &[
            "heatmap",
            "--scenario",
            "h.scn",
            "--seat",
            "5",
            "--grid",
            "1326",
            "--format",
            "ppm",
            "--cell",
            "2",
            "--out",
            "w.ppm",
        ],
        dir.path(),
    );
    assert!(o.status.success());
    assert!(fs::read(dir.path().join("w.ppm")).unwrap().starts_with(b"P6\n104 108\n255\n"));
    let o = rangeread(
        &["heatmap", "--scenario", "h.scn", "--seat", "5", "--format", "bmp", "--out", "w.bmp"],
        dir.path(),
    );
    assert_eq!(o.status.code(), Some(2));
}
