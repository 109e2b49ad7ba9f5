use std::path::Path;
use std::process::{Command, Output};

fn minterval(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_minterval"))
        .args(args)
        .current_dir(env!("CARGO_MANIFEST_DIR"))
        .output()
        .expect("binary runs")
}

fn figure_index(dir: &Path) -> String {
    let index = dir.join("figure1.ivx").to_string_lossy().into_owned();
    let out = minterval(&["index", "tests/data/figure1.txt", "-o", &index]);
    assert!(out.status.success(), "{}", String::from_utf8_lossy(&out.stderr));
    index
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let index = figure_index(dir.path());
    let unknown = minterval(&["query", &index, "zebra"]);
    assert_eq!(unknown.status.code(), Some(0));
    assert!(unknown.stdout.is_empty());
    let syntax = minterval(&["query", &index, "a &"]);
    assert_eq!(syntax.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&syntax.stderr).contains("offset 3"));
    let missing = dir.path().join("missing.ivx");
    assert_eq!(
        minterval(&["query", missing.to_str().unwrap(), "a"]).status.code(),
        Some(2)
    );
    assert_eq!(
        minterval(&["index", "tests/data/absent.txt", "-o", &index])
            .status
            .code(),
        Some(2)
    );
    let corrupt = dir.path().join("corrupt.ivx");
    std::fs::write(&corrupt, "IVX1 1\nD zero\n").unwrap();
    let parse = minterval(&["query", corrupt.to_str().unwrap(), "a"]);
    assert_eq!(parse.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&parse.stderr).contains("line 2"));
}

#[test]
fn show_rho_lists_root_reads() {
    let dir = tempfile::tempdir().unwrap();
    let index = figure_index(dir.path());
    let out = minterval(&["query", &index, "\"pease porridge\"", "--show-rho"]);
    let stdout = String::from_utf8(out.stdout).unwrap();
    let rho: Vec<&str> = stdout.lines().filter(|l| l.starts_with("\trho")).collect();
    assert_eq!(rho[0], "\trho\t[0..1]\t1 1");
    assert_eq!(rho.last().copied(), Some("\trho\tend\t6 5"));
    assert_eq!(rho.len(), 6);
}
