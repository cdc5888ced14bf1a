//! Runs every case in corpus/expected/cases.txt and diffs stdout against
//! corpus/expected/<name>.out. Set LPA_BLESS=1 to rewrite the expected files.

use std::path::PathBuf;
use std::process::Command;

fn corpus() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus")
}

/// Whitespace split honoring double quotes.
fn split_args(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut any = false;
    for ch in s.chars() {
        match ch {
            '"' => {
                quoted = !quoted;
                any = true;
            }
            c if c.is_whitespace() && !quoted => {
                if any {
                    out.push(std::mem::take(&mut cur));
                    any = false;
                }
            }
            c => {
                cur.push(c);
                any = true;
            }
        }
    }
    if any {
        out.push(cur);
    }
    out
}

struct Case {
    name: String,
    exit: i32,
    env: Vec<(String, String)>,
    args: Vec<String>,
}

fn cases() -> Vec<Case> {
    let text = std::fs::read_to_string(corpus().join("expected/cases.txt")).unwrap();
    text.lines()
        .filter(|l| !l.trim().is_empty() && !l.starts_with('#'))
        .map(|l| {
            let parts: Vec<&str> = l.splitn(3, '|').map(str::trim).collect();
            let mut env = Vec::new();
            let mut args = Vec::new();
            for a in split_args(parts[2]) {
                match a.strip_prefix("env:").and_then(|kv| kv.split_once('=')) {
                    Some((k, v)) => env.push((k.to_string(), v.to_string())),
                    None => args.push(a),
                }
            }
            Case {
                name: parts[0].to_string(),
                exit: parts[1].parse().unwrap(),
                env,
                args,
            }
        })
        .collect()
}

fn run(case: &Case) -> (i32, String, String) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_lpa"));
    cmd.current_dir(corpus()).args(&case.args).env_remove("LPA_LIMITS");
    for (k, v) in &case.env {
        cmd.env(k, v);
    }
    let out = cmd.output().unwrap();
    (
        out.status.code().unwrap_or(-1),
        String::from_utf8(out.stdout).unwrap(),
        String::from_utf8(out.stderr).unwrap(),
    )
}

#[test]
fn golden_outputs() {
    let bless = std::env::var_os("LPA_BLESS").is_some();
    let mut failures = Vec::new();
    for case in cases() {
        let (code, stdout, stderr) = run(&case);
        if code != case.exit {
            failures.push(format!("{}: exit {code}, expected {} ({stderr})", case.name, case.exit));
            continue;
        }
        if code != 0 && stderr.is_empty() {
            failures.push(format!("{}: failed without a diagnostic", case.name));
        }
        let path = corpus().join("expected").join(format!("{}.out", case.name));
        if bless {
            std::fs::write(&path, &stdout).unwrap();
            continue;
        }
        match std::fs::read_to_string(&path) {
            Ok(want) if want == stdout => {}
            Ok(want) => failures.push(format!("{}: output differs\n--- want\n{want}--- got\n{stdout}", case.name)),
            Err(_) => failures.push(format!("{}: missing {}", case.name, path.display())),
        }
    }
    assert!(failures.is_empty(), "{}", failures.join("\n"));
}

#[test]
fn output_is_deterministic() {
    for case in cases().iter().filter(|c| c.exit == 0) {
        assert_eq!(run(case).1, run(case).1, "{}", case.name);
    }
}

#[test]
fn parse_errors_name_the_line() {
    let case = cases().into_iter().find(|c| c.name == "duplicate-vertex").unwrap();
    let (_, _, stderr) = run(&case);
    assert!(stderr.contains("line 4"), "{stderr}");
}

#[test]
fn sever_output_parses_back() {
    let case = cases().into_iter().find(|c| c.name == "sever-complex-F5").unwrap();
    let (_, stdout, _) = run(&case);
    let g = lpa_core::io::parse_digraph(&stdout).unwrap();
    assert_eq!((g.vertex_count(), g.arrow_count()), (2, 0));
}
