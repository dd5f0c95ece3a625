use std::process::{Command, Output};

fn gon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

/// Integer, "a/b", "lo..hi" of those, or a word; never a decimal float.
fn exact_cell(c: &str) -> bool {
    let num = |s: &str| {
        let s = s.strip_prefix('-').unwrap_or(s);
        let mut it = s.split('/');
        let ok = |p: Option<&str>| {
            p.is_some_and(|p| !p.is_empty() && p.bytes().all(|b| b.is_ascii_digit()))
        };
        ok(it.next()) && it.next().is_none_or(|d| ok(Some(d))) && it.next().is_none()
    };
    let word = |s: &str| {
        s.starts_with(|ch: char| ch.is_ascii_alphabetic())
            && s.bytes().all(|b| b.is_ascii_alphanumeric() || b == b'-')
    };
    if c.contains('.') && !c.contains("..") {
        return false;
    }
    match c.split_once("..") {
        Some((a, b)) => num(a) && num(b),
        None => num(c) || word(c) || c.split(' ').all(num),
    }
}

#[test]
fn csv_cells_are_exact() {
    for suite in ["circle", "hermite", "second", "packing", "pick"] {
        let o = gon(&[
            "--format",
            "csv",
            "run-suite",
            suite,
            "-p",
            "count=6",
            "-p",
            "max=60",
        ]);
        assert!(
            o.status.success(),
            "{suite}: {}",
            String::from_utf8_lossy(&o.stderr)
        );
        let text = stdout(&o);
        let mut rd = csv::Reader::from_reader(text.as_bytes());
        for rec in rd.records() {
            for cell in rec.unwrap().iter() {
                assert!(exact_cell(cell), "{suite}: cell {cell:?}");
            }
        }
    }
}

#[test]
fn threads_do_not_change_bytes() {
    let run = |t: &str| {
        gon(&[
            "--format",
            "csv",
            "--seed",
            "11",
            "--threads",
            t,
            "run-suite",
            "minkowski",
            "-p",
            "count=25",
        ])
    };
    let a = run("1");
    assert!(a.status.success());
    assert_eq!(a.stdout, run("3").stdout);
    assert_eq!(a.stdout, run("1").stdout);
}

#[test]
fn config_file_and_out_path() {
    let dir = std::env::temp_dir().join(format!("gon-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cfg = dir.join("c.json");
    let out = dir.join("r.csv");
    std::fs::write(
        &cfg,
        format!(
            r#"{{"suite": "divisor-exact", "params": {{"max": "50"}}, "format": "csv", "out": {:?}}}"#,
            out.display().to_string()
        ),
    )
    .unwrap();
    let o = gon(&["run-suite", "--config", cfg.to_str().unwrap()]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let text = std::fs::read_to_string(&out).unwrap();
    assert!(text.starts_with("x,hyperbola,naive,equal\n"));
    assert_eq!(text.lines().count(), 51);
    std::fs::write(&cfg, r#"{"suite": "pick", "colour": 1}"#).unwrap();
    assert_eq!(
        gon(&["run-suite", "--config", cfg.to_str().unwrap()])
            .status
            .code(),
        Some(2)
    );
    std::fs::remove_dir_all(&dir).unwrap();
}

#[test]
fn exit_codes() {
    assert_eq!(gon(&["thm", "twosquare", "13"]).status.code(), Some(0));
    assert_eq!(gon(&["thm", "twosquare", "15"]).status.code(), Some(2));
    assert_eq!(gon(&["lat", "preset", "leech"]).status.code(), Some(2));
    assert_eq!(gon(&["no-such-command"]).status.code(), Some(2));
    assert_eq!(gon(&["--help"]).status.code(), Some(0));
    let o = gon(&["--budget", "3", "count", "r", "100"]);
    assert_eq!(o.status.code(), Some(3));
    let err: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(err["error"], "budget");
}

#[test]
fn presets_and_reports() {
    let o = gon(&["lat", "preset", "even-sum-2d"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["basis"],
        serde_json::json!([["2/1", "0/1"], ["1/1", "1/1"]])
    );
    let o = gon(&["lat", "preset", "hexagonal"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(
        v["gram"],
        serde_json::json!([["1/1", "1/2"], ["1/2", "1/1"]])
    );
    let o = gon(&["pack", "report", "--preset", "fcc"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["kissing"], 12);
}

#[test]
fn helpers_classify_cells() {
    assert!(exact_cell("12") && exact_cell("-3/4") && exact_cell("1/3..1/2") && exact_cell("ok"));
    assert!(exact_cell("1 -2 0") && exact_cell("axisbox") && exact_cell("z2"));
    assert!(!exact_cell("0.5") && !exact_cell("1e-3.2"));
}
