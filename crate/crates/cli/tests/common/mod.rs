#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

pub fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_angsupp"))
}

pub fn run(args: &[&str]) -> Output {
    bin().args(args).output().expect("spawn angsupp")
}

pub fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

pub fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

pub fn face_csv(dir: &Path, n: usize, seed: u64) -> PathBuf {
    let path = dir.join(format!("face_{seed}.csv"));
    let out = run(&["simulate", "-o", path.to_str().unwrap(), "face", "-n", &n.to_string(), "--seed", &seed.to_string()]);
    assert!(out.status.success(), "{}", stderr(&out));
    path
}
