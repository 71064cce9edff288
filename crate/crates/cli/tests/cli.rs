use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use tempfile::TempDir;

fn btforge(dir: &Path, args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_btforge"))
        .current_dir(dir)
        .args(args)
        .output()
        .unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn fixture() -> (TempDir, PathBuf) {
    let dir = TempDir::new().unwrap();
    let p = dir.path().to_path_buf();
    fs::write(p.join("ref.txt"), "the cat sat on the mat .\na dog ran in the park .\n").unwrap();
    fs::write(p.join("hyp.txt"), "the cat sits on mat .\na dog ran into the park .\n").unwrap();
    (dir, p)
}

#[test]
fn identity_eval_rows() {
    let (_d, p) = fixture();
    let o = btforge(&p, &["eval", "--metric", "all", "--hyp", "ref.txt", "--ref", "ref.txt"]);
    assert!(o.status.success());
    let out = stdout(&o);
    let rows: Vec<Vec<&str>> = out.lines().map(|l| l.split('\t').collect()).collect();
    let value = |name: &str| rows.iter().find(|r| r[0] == name).unwrap()[1];
    assert_eq!(value("BLEU"), "100.00");
    assert_eq!(value("TER"), "0.00");
    assert_eq!(value("CHRF1"), "100.00");
    // 14 tokens in 2 one-chunk lines
    let meteor = 100.0 * (1.0 - 0.5 * (2.0f64 / 14.0).powi(3));
    assert_eq!(value("METEOR"), format!("{meteor:.2}"));
}

#[test]
fn eval_json_matches_tsv() {
    let (_d, p) = fixture();
    let o = btforge(&p, &["eval", "--metric", "bleu", "--hyp", "hyp.txt", "--ref", "ref.txt", "--json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let json_value = v[0]["value"].as_f64().unwrap();
    let t = stdout(&btforge(&p, &["eval", "--metric", "bleu", "--hyp", "hyp.txt", "--ref", "ref.txt"]));
    assert_eq!(t.split('\t').nth(1).unwrap(), format!("{json_value:.2}"));
}

#[test]
fn missing_file_is_a_data_error() {
    let (_d, p) = fixture();
    let o = btforge(&p, &["eval", "--hyp", "absent.txt", "--ref", "ref.txt"]);
    assert_eq!(o.status.code(), Some(2));
    let e = stderr(&o);
    assert!(e.contains("absent.txt"));
    assert_eq!(e.trim_end().lines().count(), 1);
}

#[test]
fn usage_errors_exit_one() {
    let (_d, p) = fixture();
    for args in [
        vec!["frobnicate"],
        vec!["eval", "--hyp", "hyp.txt"],
        vec!["lrsched", "--k", "0"],
        vec!["tok", "--threads", "0"],
        vec!["bpe", "--apply", "--in", "hyp.txt"],
        vec!["truecase", "--in", "hyp.txt"],
        vec!["report", "--ref", "ref.txt", "--sys", "nolabel"],
    ] {
        let o = btforge(&p, &args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert_eq!(stderr(&o).trim_end().lines().count(), 1, "{args:?}");
    }
    assert_eq!(btforge(&p, &["--help"]).status.code(), Some(0));
    assert_eq!(btforge(&p, &["eval", "--help"]).status.code(), Some(0));
}

#[test]
fn malformed_lines_are_numbered() {
    let (_d, p) = fixture();
    fs::write(p.join("bad.tsv"), "a\tb\tx\nonly two\tfields\n").unwrap();
    let o = btforge(&p, &["sample", "-k", "1", "--in", "bad.tsv"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
    fs::write(p.join("bad.tag"), "the_DET dog_NOUN\ncat_FOO\n").unwrap();
    let o = btforge(&p, &["variety", "--tagged", "--in", "bad.tag"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("line 2"));
}

#[test]
fn failed_run_leaves_output_alone() {
    let (_d, p) = fixture();
    fs::write(p.join("short.txt"), "one line\n").unwrap();
    fs::write(p.join("out.tsv"), "keep me\n").unwrap();
    let o = btforge(&p, &["eval", "--hyp", "hyp.txt", "--ref", "short.txt", "--out", "out.tsv"]);
    assert_eq!(o.status.code(), Some(2));
    assert_eq!(fs::read_to_string(p.join("out.tsv")).unwrap(), "keep me\n");
    let leftovers = fs::read_dir(&p).unwrap().count();
    assert_eq!(leftovers, 4);

    let o = btforge(&p, &["eval", "--hyp", "hyp.txt", "--ref", "ref.txt", "--out", "out.tsv"]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    assert!(fs::read_to_string(p.join("out.tsv")).unwrap().starts_with("BLEU\t"));
}

#[test]
fn inputs_are_not_modified() {
    let (_d, p) = fixture();
    let before = (fs::read(p.join("hyp.txt")).unwrap(), fs::read(p.join("ref.txt")).unwrap());
    for args in [
        vec!["tok", "--in", "hyp.txt", "--out", "tok.txt"],
        vec!["errors", "--hyp", "hyp.txt", "--ref", "ref.txt"],
        vec!["signif", "--hyp-a", "hyp.txt", "--hyp-b", "ref.txt", "--ref", "ref.txt", "--B", "50"],
    ] {
        assert!(btforge(&p, &args).status.success(), "{args:?}");
    }
    let after = (fs::read(p.join("hyp.txt")).unwrap(), fs::read(p.join("ref.txt")).unwrap());
    assert_eq!(before, after);
}

#[test]
fn preprocessing_round_trip() {
    let (_d, p) = fixture();
    fs::write(p.join("raw.txt"), "Hello, world! (Test) \"quoted\".\nThe cat's mat.\n").unwrap();
    let tok = stdout(&btforge(&p, &["tok", "--in", "raw.txt"]));
    assert_eq!(tok, "Hello , world ! ( Test ) \" quoted \" .\nThe cat's mat .\n");
    fs::write(p.join("tok.txt"), &tok).unwrap();
    assert!(btforge(&p, &["bpe", "--learn", "30", "--in", "tok.txt", "--joint", "ref.txt", "--out", "m.bpe"])
        .status
        .success());
    assert!(fs::read_to_string(p.join("m.bpe")).unwrap().starts_with("#btforge-bpe v1\n"));
    let seg = btforge(&p, &["bpe", "--apply", "--model", "m.bpe", "--in", "tok.txt", "--out", "seg.txt"]);
    assert!(seg.status.success());
    assert_eq!(stdout(&btforge(&p, &["bpe", "--undo", "--in", "seg.txt"])), tok);
}

#[test]
fn truecase_learn_and_apply() {
    let (_d, p) = fixture();
    fs::write(p.join("c.txt"), "The Paris trip\nwe saw Paris and the tower\nThe end\n").unwrap();
    assert!(btforge(&p, &["truecase", "--learn", "--in", "c.txt", "--out", "tc"]).status.success());
    let model = fs::read_to_string(p.join("tc")).unwrap();
    assert!(model.lines().any(|l| l == "Paris\t2"));
    fs::write(p.join("d.txt"), "PARIS is big\nthe paris\n").unwrap();
    let out = stdout(&btforge(&p, &["truecase", "--apply", "--model", "tc", "--in", "d.txt"]));
    assert_eq!(out, "Paris is big\nthe paris\n");
}

#[test]
fn stdin_to_stdout() {
    let (_d, p) = fixture();
    let mut child = Command::new(env!("CARGO_BIN_EXE_btforge"))
        .current_dir(&p)
        .arg("tok")
        .stdin(std::process::Stdio::piped())
        .stdout(std::process::Stdio::piped())
        .spawn()
        .unwrap();
    use std::io::Write;
    child.stdin.take().unwrap().write_all(b"(a)\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o), "( a )\n");
}

#[test]
fn mix_sample_and_lenstats() {
    let (_d, p) = fixture();
    let tgt: String = (0..6).map(|i| format!("target {i}\n")).collect();
    let a: String = (0..6).map(|i| format!("nmt {i}\n")).collect();
    let b: String = (0..6).map(|i| format!("smt {i}\n")).collect();
    fs::write(p.join("t"), tgt).unwrap();
    fs::write(p.join("a"), a).unwrap();
    fs::write(p.join("b"), b).unwrap();
    let common = ["--a-src", "a", "--a-tgt", "t", "--b-src", "b", "--b-tgt", "t"];
    let alt = btforge(&p, &[&["mix", "--mode", "alt", "--block", "2", "--order", "b-first"][..], &common].concat());
    let prov: Vec<String> = stdout(&alt).lines().map(|l| l.rsplit('\t').next().unwrap().to_owned()).collect();
    assert_eq!(prov, ["b", "b", "a", "a", "b", "b"]);
    let full = btforge(&p, &[&["mix", "--mode", "full", "--out", "full.tsv"][..], &common].concat());
    assert!(full.status.success());
    assert_eq!(fs::read_to_string(p.join("full.tsv")).unwrap().lines().count(), 12);

    let s1 = btforge(&p, &["sample", "-k", "5", "--seed", "9", "--in", "full.tsv", "--rest", "rest.tsv"]);
    let s2 = btforge(&p, &["sample", "-k", "5", "--seed", "9", "--in", "full.tsv", "--threads", "3"]);
    assert_eq!(s1.stdout, s2.stdout);
    assert_eq!(fs::read_to_string(p.join("rest.tsv")).unwrap().lines().count(), 7);

    let ls = stdout(&btforge(&p, &["lenstats", "--in", "a"]));
    assert_eq!(ls, "sentences\t6\ntokens\t12\nmean\t2.0000\nlength\tcount\n2\t6\n");
}

#[test]
fn analysis_commands() {
    let (_d, p) = fixture();
    let e = stdout(&btforge(&p, &["errors", "--hyp", "ref.txt", "--ref", "ref.txt", "--label", "same"]));
    assert_eq!(e.lines().nth(1).unwrap(), "same\t0.0\t0.0\t0.0\t0.0\t0.0");
    let pr = stdout(&btforge(&p, &["pr4", "--hyp", "hyp.txt", "--ref", "hyp.txt"]));
    assert_eq!(pr.lines().nth(1).unwrap(), "word\tmultiset\t4\t1.0000\t1.0000\t7\t7\t7");
    let v = stdout(&btforge(&p, &["variety", "--in", "ref.txt", "--n-max", "2"]));
    assert!(v.starts_with("measure\tvalue\nvocab\t11\npos1\t"));
    assert_eq!(v.lines().count(), 5);
    let s = stdout(&btforge(&p, &["signif", "--hyp-a", "hyp.txt", "--hyp-b", "hyp.txt", "--ref", "ref.txt"]));
    assert_eq!(s, "delta\tp_value\tflag\n0.0000\t1.0000\tno_difference\n");
    let l = stdout(&btforge(&p, &["lrsched", "--k", "3"]));
    let lines: Vec<&str> = l.lines().collect();
    assert_eq!(lines[0], "decay_start_epoch\t22");
    assert!(lines[1].starts_with("decay_factor\t0.79370"));
    assert_eq!(lines[2], "epochs\t39");
    assert_eq!(lines.len(), 4 + 39);
    let r = stdout(&btforge(&p, &["report", "--ref", "ref.txt", "--sys", "A=hyp.txt", "--sys", "B=ref.txt", "--errors"]));
    assert_eq!(r.lines().count(), 3);
    assert!(r.lines().nth(2).unwrap().starts_with("B\t100.00\t0.00\t"));
}
