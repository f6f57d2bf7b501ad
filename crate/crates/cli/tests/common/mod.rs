//! Fixture suite for the `dtcsp` binary, shared by the CLI tests and the
//! acceptance run.

use std::path::{Path, PathBuf};
use std::process::Command;

use dtcsp_cli::{RunReport, Status};

pub fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

pub fn fixture(name: &str) -> String {
    fixtures().join(name).display().to_string()
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn dtcsp(args: &[&str]) -> Output {
    let out = Command::new(env!("CARGO_BIN_EXE_dtcsp"))
        .args(args)
        .output()
        .expect("binary runs");
    Output {
        code: out.status.code().unwrap_or(-1),
        stdout: String::from_utf8_lossy(&out.stdout).into_owned(),
        stderr: String::from_utf8_lossy(&out.stderr).into_owned(),
    }
}

/// `(language, instance, expected exit code of solve --method auto)`.
pub const SOLVE_CASES: &[(&str, &str, i32)] = &[
    ("F.dtl", "chain.dti", 0),
    ("F.dtl", "chain_unsat.dti", 1),
    ("dist.dtl", "triangle.dti", 1),
    ("dist.dtl", "square.dti", 0),
    ("dist15.dtl", "dist15.dti", 0),
    ("maxrel.dtl", "maxrel.dti", 0),
    ("t2.dtl", "t2.dti", 0),
    ("congruence.dtl", "congruence.dti", 0),
    ("F.dtl", "bad.dti", 2),
];

/// `(language, expected exit code, expected first line)`.
pub const CLASSIFY_CASES: &[(&str, i32, &str)] = &[
    ("F.dtl", 0, "HORN_TRACTABLE"),
    ("dist15.dtl", 0, "NP_HARD (Dist1/Dist5 rule)"),
    ("maxrel.dtl", 0, "MAX_CLOSED"),
    ("t2.dtl", 0, "MODMAX_CLOSED(2)"),
    ("blowup.dtl", 3, "DEGENERATE_OR_UNKNOWN"),
    ("bad.dtl", 2, ""),
];

fn parse_reports(stdout: &str) -> Result<Vec<RunReport>, String> {
    stdout
        .lines()
        .map(|line| {
            let r: RunReport = serde_json::from_str(line).map_err(|e| format!("{e}: {line}"))?;
            let again = serde_json::to_string(&r).map_err(|e| e.to_string())?;
            let back: RunReport = serde_json::from_str(&again).map_err(|e| e.to_string())?;
            if back != r || again != line {
                return Err(format!("JSON does not round-trip: {line}"));
            }
            Ok(r)
        })
        .collect()
}

fn status_of(code: i32) -> Option<Status> {
    match code {
        0 => Some(Status::Sat),
        1 => Some(Status::Unsat),
        _ => None,
    }
}

/// Runs every fixture check; returns the number of checks and the failures.
pub fn run_suite() -> (usize, Vec<String>) {
    let mut checks = 0;
    let mut failures = Vec::new();
    let mut expect = |ok: bool, what: String| {
        checks += 1;
        if !ok {
            failures.push(what);
        }
    };

    for &(lang, code, first) in CLASSIFY_CASES {
        let out = dtcsp(&["classify", &fixture(lang)]);
        expect(
            out.code == code,
            format!("classify {lang}: exit {} != {code}", out.code),
        );
        let line = out.stdout.lines().next().unwrap_or("");
        expect(
            line == first,
            format!("classify {lang}: printed `{line}`, want `{first}`"),
        );
        let json = dtcsp(&["classify", "--json", &fixture(lang)]);
        expect(
            json.code == code,
            format!("classify --json {lang}: exit {}", json.code),
        );
        if code != 2 {
            match parse_reports(&json.stdout) {
                Ok(rs) => expect(
                    rs.len() == 1
                        && rs[0].verdict.as_ref().map(|v| v.to_string()) == Some(first.to_string()),
                    format!("classify --json {lang}: wrong verdict"),
                ),
                Err(e) => expect(false, format!("classify --json {lang}: {e}")),
            }
        }
    }

    for &(lang, inst, code) in SOLVE_CASES {
        let (l, i) = (fixture(lang), fixture(inst));
        let auto = dtcsp(&["solve", "--json", "--seed", "1", &l, &i]);
        expect(
            auto.code == code,
            format!("solve {lang} {inst}: exit {} != {code}", auto.code),
        );
        let reports = match parse_reports(&auto.stdout) {
            Ok(r) => r,
            Err(e) => {
                expect(false, format!("solve {lang} {inst}: {e}"));
                continue;
            }
        };
        expect(
            reports.len() == 1,
            format!("solve {lang} {inst}: {} reports", reports.len()),
        );
        let Some(report) = reports.first() else {
            continue;
        };
        expect(
            report.status == status_of(code).or(Some(Status::Error)),
            format!("solve {lang} {inst}: status {:?}", report.status),
        );
        expect(
            report.seed == Some(1),
            format!("solve {lang} {inst}: seed not echoed"),
        );
        if code > 1 {
            continue;
        }
        let brute = dtcsp(&["solve", "--method", "brute", "--json", &l, &i]);
        expect(
            brute.code == auto.code,
            format!(
                "solve {lang} {inst}: brute exit {} vs auto {}",
                brute.code, auto.code
            ),
        );
        if let Some(a) = &report.assignment {
            let dir = tempfile::tempdir().unwrap();
            let path = dir.path().join("report.json");
            std::fs::write(&path, auto.stdout.trim()).unwrap();
            let ok = dtcsp(&["check", &l, &i, path.to_str().unwrap()]);
            expect(
                ok.code == 0,
                format!("check {lang} {inst}: exit {}", ok.code),
            );
            let plain = dir.path().join("plain.json");
            std::fs::write(&plain, serde_json::to_string(a).unwrap()).unwrap();
            let ok = dtcsp(&["check", &l, &i, plain.to_str().unwrap()]);
            expect(
                ok.code == 0,
                format!("check {lang} {inst} (plain map): exit {}", ok.code),
            );
        }
    }

    // human-readable output names the method
    let out = dtcsp(&["solve", &fixture("F.dtl"), &fixture("chain.dti")]);
    expect(
        out.stdout.contains("SAT (method horn"),
        "solve F chain: method horn not reported".into(),
    );
    let out = dtcsp(&["solve", &fixture("dist15.dtl"), &fixture("dist15.dti")]);
    expect(
        out.stdout.contains("method backtracking"),
        "solve dist15: method backtracking not reported".into(),
    );

    // a perturbed witness fails the tight unit constraint b = a + 1
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("perturbed.json");
    std::fs::write(&bad, r#"{"a":0,"b":2,"c":0,"d":1,"e":0,"f":1}"#).unwrap();
    let out = dtcsp(&[
        "check",
        &fixture("F.dtl"),
        &fixture("chain.dti"),
        bad.to_str().unwrap(),
    ]);
    expect(out.code == 1, format!("check perturbed: exit {}", out.code));
    let malformed = dir.path().join("malformed.json");
    std::fs::write(&malformed, r#"{"a": "#).unwrap();
    let out = dtcsp(&[
        "check",
        &fixture("F.dtl"),
        &fixture("chain.dti"),
        malformed.to_str().unwrap(),
    ]);
    expect(out.code == 2, format!("check malformed: exit {}", out.code));
    let missing = dir.path().join("missing.json");
    std::fs::write(&missing, r#"{"a": 0}"#).unwrap();
    let out = dtcsp(&[
        "check",
        &fixture("F.dtl"),
        &fixture("chain.dti"),
        missing.to_str().unwrap(),
    ]);
    expect(
        out.code == 2,
        format!("check with missing variable: exit {}", out.code),
    );

    // forced methods
    let out = dtcsp(&[
        "solve",
        "--method",
        "horn",
        &fixture("dist.dtl"),
        &fixture("square.dti"),
    ]);
    expect(
        out.code == 2 && out.stdout.contains("no Horn definition"),
        format!("forced horn on non-Horn language: exit {}", out.code),
    );
    let out = dtcsp(&[
        "solve",
        "--json",
        "--method",
        "bt",
        &fixture("F.dtl"),
        &fixture("chain.dti"),
    ]);
    let forced_note = parse_reports(&out.stdout)
        .map(|r| r[0].notes.iter().any(|n| n.contains("forced")))
        .unwrap_or(false);
    expect(
        out.code == 0 && forced_note,
        "forced bt: note missing".into(),
    );
    let out = dtcsp(&[
        "solve",
        "--method",
        "brute",
        "--window",
        "100000",
        &fixture("dist.dtl"),
        &fixture("triangle.dti"),
    ]);
    expect(
        out.code == 3,
        format!("brute over a huge window: exit {}", out.code),
    );
    let out = dtcsp(&[
        "solve",
        "--window",
        "0",
        &fixture("F.dtl"),
        &fixture("chain.dti"),
    ]);
    expect(out.code == 2, format!("zero window: exit {}", out.code));

    // several instances: one report each, worst exit code wins
    let out = dtcsp(&[
        "solve",
        "--json",
        &fixture("F.dtl"),
        &fixture("chain.dti"),
        &fixture("chain_unsat.dti"),
    ]);
    let statuses: Vec<_> = parse_reports(&out.stdout)
        .unwrap_or_default()
        .iter()
        .map(|r| r.status)
        .collect();
    expect(
        out.code == 1 && statuses == [Some(Status::Sat), Some(Status::Unsat)],
        format!("two instances: exit {}, statuses {statuses:?}", out.code),
    );

    // gen is deterministic and its output parses
    let g1 = tempfile::tempdir().unwrap();
    let g2 = tempfile::tempdir().unwrap();
    for g in [&g1, &g2] {
        let out = dtcsp(&["gen", "--seed", "7", "--out", g.path().to_str().unwrap()]);
        expect(out.code == 0, format!("gen: exit {}", out.code));
    }
    for f in ["gen-7.dtl", "gen-7.dti"] {
        let a = std::fs::read(g1.path().join(f)).unwrap_or_default();
        let b = std::fs::read(g2.path().join(f)).unwrap_or_default();
        expect(
            !a.is_empty() && a == b,
            format!("gen --seed 7: {f} differs between runs"),
        );
    }
    let l = g1.path().join("gen-7.dtl");
    let i = g1.path().join("gen-7.dti");
    let auto = dtcsp(&["solve", l.to_str().unwrap(), i.to_str().unwrap()]);
    let brute = dtcsp(&[
        "solve",
        "--method",
        "brute",
        l.to_str().unwrap(),
        i.to_str().unwrap(),
    ]);
    expect(
        auto.code <= 1 && auto.code == brute.code,
        format!(
            "generated pair: auto exit {} vs brute {}",
            auto.code, brute.code
        ),
    );

    let out = dtcsp(&["classify", &fixture("missing.dtl")]);
    expect(
        out.code == 2 && !out.stderr.is_empty(),
        "missing file: exit 2".into(),
    );

    (checks, failures)
}
