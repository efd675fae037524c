//! The `.ck` corpus under `tests/fixtures`: expected verdicts, golden printer
//! output, certificate replay and parser robustness.
//!
//! Set `CICERT_BLESS=1` to rewrite the `.printed` goldens.

use std::fs;
use std::path::{Path, PathBuf};

use proptest::prelude::*;

use cicert_core::dsl::{aggregate_exit_code, replay_json, ParseError};
use cicert_core::{parse_session, run_session, PipelineConfig};

fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures")
}

fn sessions(dir: &Path) -> Vec<(PathBuf, String)> {
    let mut out: Vec<(PathBuf, String)> = fs::read_dir(dir)
        .unwrap()
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "ck"))
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no fixtures in {}", dir.display());
    out
}

/// `# expect: <verdict>` trailing each check, in order.
fn expectations(text: &str) -> Vec<String> {
    text.lines()
        .filter_map(|l| l.split_once("# expect:"))
        .map(|(_, v)| v.trim().to_string())
        .collect()
}

#[test]
fn verdicts_match_annotations() {
    for (path, text) in sessions(&fixture_dir()) {
        let s = parse_session(&text).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let want = expectations(&text);
        assert_eq!(want.len(), s.checks().count(), "{}: one annotation per check", path.display());
        let runs = run_session(&s, &PipelineConfig::default()).unwrap();
        for (run, want) in runs.iter().zip(&want) {
            let cert = run.result.as_ref().unwrap_or_else(|e| panic!("{}: {}: {e}", path.display(), run.command));
            assert_eq!(&cert.verdict.to_string(), want, "{}: {}", path.display(), run.command);
        }
        let worst = runs.iter().map(|r| r.exit_code()).max().unwrap();
        assert_eq!(aggregate_exit_code(&runs), worst);
    }
}

#[test]
fn certificates_replay() {
    for (path, text) in sessions(&fixture_dir()) {
        let s = parse_session(&text).unwrap();
        for run in run_session(&s, &PipelineConfig { seed: 5, ..Default::default() }).unwrap() {
            let cert = run.result.unwrap();
            let json = cert.to_json();
            let verdict = replay_json(&json).unwrap_or_else(|e| panic!("{}: {}: {e}", path.display(), run.command));
            assert_eq!(verdict, cert.verdict);
            // the certificate carries its own session
            let inner = parse_session(&format!("{}{}", cert.session, cert.command)).unwrap();
            assert_eq!(inner.checks().count(), 1);
        }
    }
}

#[test]
fn printer_matches_goldens_and_round_trips() {
    let bless = std::env::var_os("CICERT_BLESS").is_some();
    for (path, text) in sessions(&fixture_dir()) {
        let printed = parse_session(&text).unwrap().to_string();
        let reparsed = parse_session(&printed).unwrap();
        assert_eq!(reparsed.to_string(), printed, "{}", path.display());
        let golden = path.with_extension("printed");
        if bless {
            fs::write(&golden, &printed).unwrap();
        }
        let want = fs::read_to_string(&golden).unwrap_or_else(|_| panic!("missing golden {}", golden.display()));
        assert_eq!(printed, want, "{} differs from its golden", path.display());
    }
}

#[test]
fn invalid_sessions_report_kind_and_position() {
    for (path, text) in sessions(&fixture_dir().join("invalid")) {
        let header = text.lines().next().unwrap().strip_prefix("# error: ").unwrap();
        let (kind, at) = header.split_once(" at ").unwrap();
        let err = parse_session(&text).expect_err(&path.display().to_string());
        let got = match err {
            ParseError::Syntax { .. } => "syntax",
            ParseError::Undeclared { .. } => "undeclared",
            ParseError::Duplicate { .. } => "duplicate",
            ParseError::Arity { .. } => "arity",
            ParseError::Semantic { .. } => "semantic",
        };
        assert_eq!(got, kind, "{}: {err}", path.display());
        assert_eq!(err.pos().to_string(), at, "{}", path.display());
    }
}

fn in_range(text: &str, e: &ParseError) -> bool {
    let pos = e.pos();
    let lines: Vec<&str> = text.split('\n').collect();
    pos.line >= 1 && pos.line <= lines.len() && pos.col >= 1 && pos.col <= lines[pos.line - 1].chars().count() + 1
}

#[derive(Debug, Clone)]
enum Mutation {
    Delete(usize, usize),
    Insert(usize, String),
    Swap(usize, usize),
}

fn mutation() -> impl Strategy<Value = Mutation> {
    let piece = prop::sample::select(vec![
        "(", ")", ",", ";", "^", "*", "-", "/", "0", "99999999999999999999", "x", "I", "check", "ring", "with",
        "in", "mod", "#", "\n", " ", "QQ", "[", "]", "=", "order", "−", "é",
    ]);
    prop_oneof![
        (any::<usize>(), 1usize..6).prop_map(|(a, n)| Mutation::Delete(a, n)),
        (any::<usize>(), piece).prop_map(|(a, s)| Mutation::Insert(a, s.to_string())),
        (any::<usize>(), any::<usize>()).prop_map(|(a, b)| Mutation::Swap(a, b)),
    ]
}

fn apply(text: &str, muts: &[Mutation]) -> String {
    let mut chars: Vec<char> = text.chars().collect();
    for m in muts {
        let n = chars.len().max(1);
        match m {
            Mutation::Delete(a, k) => {
                let a = a % n;
                let b = (a + k).min(chars.len());
                chars.drain(a.min(chars.len())..b);
            }
            Mutation::Insert(a, s) => {
                let a = a % (chars.len() + 1);
                chars.splice(a..a, s.chars());
            }
            Mutation::Swap(a, b) => {
                let len = chars.len();
                if len > 0 {
                    chars.swap(a % len, b % len);
                }
            }
        }
    }
    chars.into_iter().collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn mutated_sessions_never_panic(idx in 0usize..64, muts in prop::collection::vec(mutation(), 1..5)) {
        let corpus = sessions(&fixture_dir());
        let text = apply(&corpus[idx % corpus.len()].1, &muts);
        match parse_session(&text) {
            Ok(s) => {
                let printed = s.to_string();
                prop_assert_eq!(parse_session(&printed).unwrap().to_string(), printed);
            }
            Err(e) => prop_assert!(in_range(&text, &e), "{} out of range", e),
        }
    }
}
